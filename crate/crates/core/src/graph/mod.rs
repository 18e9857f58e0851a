//! Weighted directed mobility graphs and weak connectivity.

mod components;
mod io;

use std::collections::{BTreeMap, HashMap};

use chrono::NaiveDate;

pub use components::{weak_components, ComponentLabeling, UnionFind};
pub(crate) use components::label_components;
pub use io::{read_edge_list, write_edge_list, GraphSidecar, EDGE_LIST_HEADER};

use crate::error::{Error, Result};
use crate::ingest::{FlowRecord, NodeRegistry, TimeWindow};

/// A directed edge between node indices of one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Weighted directed graph aggregating the flows of one window.
///
/// Holds at most one edge per ordered pair, no self-loops and only strictly
/// positive weights. Edges are stored sorted by `(source, target)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MobilityGraph {
    node_ids: Vec<String>,
    index: HashMap<String, usize>,
    lex_rank: Vec<usize>,
    edges: Vec<Edge>,
    out_offsets: Vec<usize>,
    window: TimeWindow,
}

impl MobilityGraph {
    /// Builds a graph over an explicit node list. Nodes without edges are
    /// kept; use [`MobilityGraph::support`] to drop them.
    pub fn from_edges(node_ids: Vec<String>, mut edges: Vec<Edge>, window: TimeWindow) -> Result<Self> {
        let n = node_ids.len();
        let mut index = HashMap::with_capacity(n);
        for (i, id) in node_ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate node `{id}`")));
            }
        }
        for e in &edges {
            if e.source >= n || e.target >= n {
                return Err(Error::Argument(format!(
                    "edge {} -> {} references a node outside 0..{n}",
                    e.source, e.target
                )));
            }
            if e.source == e.target {
                return Err(Error::Validation(format!(
                    "self-loop on `{}`",
                    node_ids[e.source]
                )));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::Validation(format!(
                    "edge `{}` -> `{}` has non-positive weight {}",
                    node_ids[e.source], node_ids[e.target], e.weight
                )));
            }
        }
        edges.sort_by_key(|e| (e.source, e.target));
        if let Some(pair) = edges
            .windows(2)
            .find(|p| (p[0].source, p[0].target) == (p[1].source, p[1].target))
        {
            return Err(Error::Validation(format!(
                "more than one edge `{}` -> `{}`",
                node_ids[pair[0].source], node_ids[pair[0].target]
            )));
        }

        let mut by_name: Vec<usize> = (0..n).collect();
        by_name.sort_by(|&a, &b| node_ids[a].cmp(&node_ids[b]));
        let mut lex_rank = vec![0; n];
        for (rank, &node) in by_name.iter().enumerate() {
            lex_rank[node] = rank;
        }

        let mut out_offsets = vec![0; n + 1];
        for e in &edges {
            out_offsets[e.source + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }

        Ok(Self {
            node_ids,
            index,
            lex_rank,
            edges,
            out_offsets,
            window,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_id(&self, node: usize) -> &str {
        &self.node_ids[node]
    }

    pub fn node_index(&self, region_id: &str) -> Option<usize> {
        self.index.get(region_id).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, node: usize) -> &[Edge] {
        &self.edges[self.out_offsets[node]..self.out_offsets[node + 1]]
    }

    pub fn edge_weight(&self, source: usize, target: usize) -> Option<f64> {
        let out = self.out_edges(source);
        out.binary_search_by_key(&target, |e| e.target)
            .ok()
            .map(|i| out[i].weight)
    }

    pub fn window(&self) -> &TimeWindow {
        &self.window
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |a, e| a + e.weight)
    }

    pub(crate) fn lex_ranks(&self) -> &[usize] {
        &self.lex_rank
    }

    /// Same node set, only the edges for which `keep` holds.
    pub fn retain_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> MobilityGraph {
        let edges = self.edges.iter().copied().filter(|e| keep(e)).collect();
        Self::from_edges(self.node_ids.clone(), edges, self.window)
            .expect("subset of a valid graph is valid")
    }

    /// Same node set, keeping edge `i` (in stored order) iff `mask[i]`.
    pub(crate) fn with_edge_mask(&self, mask: &[bool]) -> MobilityGraph {
        let mut keep = mask.iter();
        self.retain_edges(|_| *keep.next().expect("mask covers every edge"))
    }

    /// The subgraph induced by nodes with at least one incident edge.
    pub fn support(&self) -> MobilityGraph {
        let mut touched = vec![false; self.node_count()];
        for e in &self.edges {
            touched[e.source] = true;
            touched[e.target] = true;
        }
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut ids = Vec::new();
        for (i, id) in self.node_ids.iter().enumerate() {
            if touched[i] {
                remap[i] = ids.len();
                ids.push(id.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                source: remap[e.source],
                target: remap[e.target],
                weight: e.weight,
            })
            .collect();
        Self::from_edges(ids, edges, self.window).expect("support of a valid graph is valid")
    }
}

/// Aggregates the in-window records of `records` into one graph.
///
/// Each edge weight is the sum of its records' weights, accumulated in
/// ascending value order so the result does not depend on record order.
/// Self-loops and zero-total pairs are dropped; the node set is the
/// registry-ordered support of the surviving edges.
pub fn build_graph(records: &[FlowRecord], window: &TimeWindow, registry: &NodeRegistry) -> Result<MobilityGraph> {
    let mut contributions: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for r in records {
        let origin = lookup(registry, &r.origin_id)?;
        let destination = lookup(registry, &r.destination_id)?;
        if origin == destination || !window.contains(r.window_start) {
            continue;
        }
        contributions
            .entry((origin, destination))
            .or_default()
            .push(r.weight);
    }

    let mut totals = Vec::with_capacity(contributions.len());
    let mut touched = vec![false; registry.len()];
    for ((o, d), mut weights) in contributions {
        weights.sort_by(f64::total_cmp);
        let total: f64 = weights.iter().sum();
        if total > 0.0 {
            touched[o] = true;
            touched[d] = true;
            totals.push((o, d, total));
        }
    }

    let mut remap = vec![usize::MAX; registry.len()];
    let mut ids = Vec::new();
    for (i, site) in registry.iter().enumerate() {
        if touched[i] {
            remap[i] = ids.len();
            ids.push(site.region_id.clone());
        }
    }
    let edges = totals
        .into_iter()
        .map(|(o, d, weight)| Edge {
            source: remap[o],
            target: remap[d],
            weight,
        })
        .collect();
    MobilityGraph::from_edges(ids, edges, *window)
}

fn lookup(registry: &NodeRegistry, id: &str) -> Result<usize> {
    registry
        .position(id)
        .ok_or_else(|| Error::Validation(format!("record references unknown region `{id}`")))
}

/// One graph per UTC calendar day that has at least one record, ascending.
pub fn daily_series(records: &[FlowRecord], registry: &NodeRegistry) -> Result<Vec<(NaiveDate, MobilityGraph)>> {
    let mut by_day: BTreeMap<NaiveDate, Vec<FlowRecord>> = BTreeMap::new();
    for r in records {
        by_day
            .entry(r.window_start.date_naive())
            .or_default()
            .push(r.clone());
    }
    by_day
        .into_iter()
        .map(|(day, recs)| Ok((day, build_graph(&recs, &TimeWindow::day(day), registry)?)))
        .collect()
}

/// How a residual graph is compared to its reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidualMode {
    /// Ratio of edge counts.
    #[default]
    Edges,
    /// Ratio of total edge weight.
    WeightMass,
}

pub fn residual_edge_fraction(graph: &MobilityGraph, baseline: &MobilityGraph) -> Result<f64> {
    residual_fraction(graph, baseline, ResidualMode::Edges)
}

pub fn residual_fraction(graph: &MobilityGraph, baseline: &MobilityGraph, mode: ResidualMode) -> Result<f64> {
    if baseline.edge_count() == 0 {
        return Err(Error::Argument("baseline graph has no edges".into()));
    }
    Ok(match mode {
        ResidualMode::Edges => graph.edge_count() as f64 / baseline.edge_count() as f64,
        ResidualMode::WeightMass => graph.total_weight() / baseline.total_weight(),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use chrono::{TimeZone, Utc};

    use crate::ingest::NodeSite;

    pub(crate) fn test_window() -> TimeWindow {
        TimeWindow::day(NaiveDate::from_ymd_opt(2020, 3, 1).unwrap())
    }

    /// Graph over `nodes` (kept even if isolated) with edges given by id.
    pub(crate) fn graph_of(nodes: &[&str], edges: &[(&str, &str, f64)]) -> MobilityGraph {
        let ids: Vec<String> = nodes.iter().map(|s| s.to_string()).collect();
        let pos = |id: &str| nodes.iter().position(|n| *n == id).unwrap();
        let edges = edges
            .iter()
            .map(|&(a, b, w)| Edge {
                source: pos(a),
                target: pos(b),
                weight: w,
            })
            .collect();
        MobilityGraph::from_edges(ids, edges, test_window()).unwrap()
    }

    fn registry(ids: &[&str]) -> NodeRegistry {
        NodeRegistry::new(
            ids.iter()
                .enumerate()
                .map(|(i, id)| NodeSite {
                    region_id: id.to_string(),
                    name: id.to_string(),
                    latitude: i as f64,
                    longitude: i as f64,
                })
                .collect(),
        )
        .unwrap()
    }

    fn rec(o: &str, d: &str, day: u32, hour: u32, w: f64) -> FlowRecord {
        FlowRecord {
            origin_id: o.into(),
            destination_id: d.into(),
            window_start: Utc.with_ymd_and_hms(2020, 3, day, hour, 0, 0).unwrap(),
            weight: w,
        }
    }

    #[test]
    fn windows_of_one_day_are_summed() {
        let reg = registry(&["A", "B"]);
        let g = build_graph(
            &[rec("A", "B", 1, 0, 3.0), rec("A", "B", 1, 8, 4.0)],
            &test_window(),
            &reg,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight(0, 1), Some(7.0));
    }

    #[test]
    fn self_loops_are_dropped() {
        let reg = registry(&["A", "B"]);
        let g = build_graph(&[rec("A", "A", 1, 0, 5.0)], &test_window(), &reg).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.node_count(), 0);
    }

    #[test]
    fn direction_is_kept() {
        let reg = registry(&["A", "B"]);
        let g = build_graph(
            &[rec("A", "B", 1, 0, 5.0), rec("B", "A", 1, 0, 2.0)],
            &test_window(),
            &reg,
        )
        .unwrap();
        assert_eq!(g.edge_weight(0, 1), Some(5.0));
        assert_eq!(g.edge_weight(1, 0), Some(2.0));
    }

    #[test]
    fn zero_totals_and_out_of_window_records_are_dropped() {
        let reg = registry(&["A", "B", "C"]);
        let g = build_graph(
            &[
                rec("A", "B", 1, 0, 0.0),
                rec("B", "C", 1, 16, 1.0),
                rec("C", "A", 2, 0, 9.0),
            ],
            &test_window(),
            &reg,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_ids(), ["B", "C"]);
    }

    #[test]
    fn unknown_region_is_named() {
        let reg = registry(&["A"]);
        let err = build_graph(&[rec("A", "Nowhere", 1, 0, 1.0)], &test_window(), &reg).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("`Nowhere`")), "{err}");
    }

    #[test]
    fn daily_series_groups_by_day() {
        let reg = registry(&["A", "B"]);
        let records = vec![
            rec("A", "B", 2, 0, 1.0),
            rec("A", "B", 1, 0, 1.0),
            rec("A", "B", 1, 8, 2.0),
            rec("A", "B", 1, 16, 3.0),
        ];
        let series = daily_series(&records, &reg).unwrap();
        assert_eq!(series.len(), 2);
        assert_eq!(series[0].0, NaiveDate::from_ymd_opt(2020, 3, 1).unwrap());
        assert_eq!(series[0].1.edge_weight(0, 1), Some(6.0));
        assert!(daily_series(&[], &reg).unwrap().is_empty());
    }

    #[test]
    fn residual_fractions() {
        let ids = ["A", "B", "C", "D", "E"];
        let all: Vec<(&str, &str, f64)> = vec![
            ("A", "B", 1.0),
            ("B", "A", 1.0),
            ("B", "C", 1.0),
            ("C", "B", 1.0),
            ("C", "D", 1.0),
            ("D", "C", 1.0),
            ("D", "E", 1.0),
            ("E", "D", 1.0),
            ("E", "A", 1.0),
            ("A", "E", 3.0),
        ];
        let baseline = graph_of(&ids, &all);
        let six = graph_of(&ids, &all[..6]);
        assert_eq!(residual_edge_fraction(&baseline, &baseline).unwrap(), 1.0);
        assert_eq!(residual_edge_fraction(&six, &baseline).unwrap(), 0.6);
        let empty = graph_of(&ids, &[]);
        assert_eq!(residual_edge_fraction(&empty, &baseline).unwrap(), 0.0);
        assert!(matches!(
            residual_edge_fraction(&baseline, &empty),
            Err(Error::Argument(_))
        ));
        assert_eq!(
            residual_fraction(&six, &baseline, ResidualMode::WeightMass).unwrap(),
            0.5
        );
    }

    #[test]
    fn support_drops_isolated_nodes() {
        let g = graph_of(&["A", "B", "C"], &[("C", "A", 2.0)]);
        let s = g.support();
        assert_eq!(s.node_ids(), ["A", "C"]);
        assert_eq!(s.edge_weight(1, 0), Some(2.0));
    }

    #[test]
    fn from_edges_rejects_invariant_violations() {
        let ids = vec!["A".to_string(), "B".to_string()];
        let e = |s, t, w| Edge { source: s, target: t, weight: w };
        assert!(MobilityGraph::from_edges(ids.clone(), vec![e(0, 0, 1.0)], test_window()).is_err());
        assert!(MobilityGraph::from_edges(ids.clone(), vec![e(0, 1, 0.0)], test_window()).is_err());
        assert!(MobilityGraph::from_edges(
            ids.clone(),
            vec![e(0, 1, 1.0), e(0, 1, 2.0)],
            test_window()
        )
        .is_err());
        assert!(MobilityGraph::from_edges(ids, vec![e(0, 2, 1.0)], test_window()).is_err());
    }
}
