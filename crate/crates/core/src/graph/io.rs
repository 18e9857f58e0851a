use std::io::{Read, Write};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, MobilityGraph};
use crate::ingest::flow::{check_width, csv_parse_error, read_header, reader, row_line};
use crate::ingest::TimeWindow;

pub const EDGE_LIST_HEADER: [&str; 3] = ["origin_id", "destination_id", "weight"];

/// JSON metadata written next to an edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSidecar {
    pub window_start: DateTime<Utc>,
    pub window_end: DateTime<Utc>,
    pub node_count: usize,
}

impl GraphSidecar {
    pub fn of(graph: &MobilityGraph) -> Self {
        Self {
            window_start: graph.window().start(),
            window_end: graph.window().end(),
            node_count: graph.node_count(),
        }
    }
}

/// Writes the edge list and returns the matching sidecar.
pub fn write_edge_list<W: Write>(graph: &MobilityGraph, out: W) -> Result<GraphSidecar> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(EDGE_LIST_HEADER)?;
    for e in graph.edges() {
        wtr.write_record([
            graph.node_id(e.source),
            graph.node_id(e.target),
            &e.weight.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<edge list output>", e))?;
    Ok(GraphSidecar::of(graph))
}

/// Reads an edge list. Nodes are numbered in order of first appearance and
/// their count must match the sidecar.
pub fn read_edge_list<R: Read>(input: R, sidecar: &GraphSidecar) -> Result<MobilityGraph> {
    let window = TimeWindow::new(sidecar.window_start, sidecar.window_end)?;
    let mut rdr = reader(input);
    read_header(&mut rdr, &EDGE_LIST_HEADER)?;

    let mut ids: Vec<String> = Vec::new();
    let mut index = std::collections::HashMap::new();
    let mut intern = |id: &str| -> usize {
        *index.entry(id.to_owned()).or_insert_with(|| {
            ids.push(id.to_owned());
            ids.len() - 1
        })
    };
    let mut edges = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_parse_error(e, "row"))?;
        check_width(&row, &EDGE_LIST_HEADER)?;
        let weight: f64 = row[2].parse().map_err(|_| {
            Error::parse(row_line(&row), "weight", format!("`{}` is not a number", &row[2]))
        })?;
        edges.push(Edge {
            source: intern(&row[0]),
            target: intern(&row[1]),
            weight,
        });
    }
    if ids.len() != sidecar.node_count {
        return Err(Error::Validation(format!(
            "edge list spans {} nodes but sidecar declares {}",
            ids.len(),
            sidecar.node_count
        )));
    }
    MobilityGraph::from_edges(ids, edges, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::graph_of;

    #[test]
    fn round_trip_preserves_edges_and_window() {
        let g = graph_of(
            &["A", "B", "C"],
            &[("A", "B", 0.25), ("C", "A", 7.0), ("B", "C", 1.0 / 3.0)],
        );
        let mut buf = Vec::new();
        let sidecar = write_edge_list(&g, &mut buf).unwrap();
        let json = serde_json::to_string(&sidecar).unwrap();
        let back: GraphSidecar = serde_json::from_str(&json).unwrap();
        let h = read_edge_list(buf.as_slice(), &back).unwrap();
        assert_eq!(h.window(), g.window());
        assert_eq!(h.edge_count(), 3);
        for e in g.edges() {
            let (a, b) = (g.node_id(e.source), g.node_id(e.target));
            let w = h.edge_weight(h.node_index(a).unwrap(), h.node_index(b).unwrap());
            assert_eq!(w, Some(e.weight));
        }
    }

    #[test]
    fn node_count_mismatch_is_rejected() {
        let g = graph_of(&["A", "B"], &[("A", "B", 1.0)]);
        let mut buf = Vec::new();
        let mut sidecar = write_edge_list(&g, &mut buf).unwrap();
        sidecar.node_count = 3;
        assert!(matches!(
            read_edge_list(buf.as_slice(), &sidecar),
            Err(Error::Validation(_))
        ));
    }
}
