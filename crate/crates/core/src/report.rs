//! CSV writers for every tabular output of the pipeline.

use std::io::Write;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::graph::MobilityGraph;
use crate::metrics::EfficiencyReport;
use crate::percolation::{OverlayPoint, PercolationTrace, PersistenceMap};

pub const CONNECTIVITY_HEADER: [&str; 3] = ["date", "num_wcc", "lwcc_size"];
pub const EFFICIENCY_HEADER: [&str; 4] = [
    "date",
    "global_efficiency",
    "normalized_efficiency",
    "gini_nodal_efficiency",
];
pub const NODAL_EFFICIENCY_HEADER: [&str; 2] = ["region_id", "nodal_efficiency"];
pub const TRACE_HEADER: [&str; 7] = [
    "direction",
    "iteration",
    "threshold",
    "residual_edge_fraction",
    "lwcc_size",
    "num_wcc",
    "global_efficiency",
];
pub const PERSISTENCE_HEADER: [&str; 2] = ["region_id", "persistence"];
pub const OVERLAY_HEADER: [&str; 5] = [
    "period",
    "week_start",
    "residual_edge_fraction",
    "lwcc_size",
    "normalized_efficiency",
];
pub const AGGREGATE_HEADER: [&str; 5] = ["period", "num_wcc", "lwcc_size", "num_edges", "global_efficiency"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectivityRow {
    pub date: NaiveDate,
    pub num_wcc: usize,
    pub lwcc_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyRow {
    pub date: NaiveDate,
    pub global_efficiency: f64,
    pub normalized_efficiency: f64,
    /// `None` for days whose graph has no efficiency to spread.
    pub gini_nodal_efficiency: Option<f64>,
}

/// Connectivity and efficiency of an aggregate window.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub period: String,
    pub num_wcc: usize,
    pub lwcc_size: usize,
    pub num_edges: usize,
    pub global_efficiency: f64,
}

fn finish<W: Write>(mut wtr: csv::Writer<W>) -> Result<()> {
    wtr.flush().map_err(|e| Error::io("<csv output>", e))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_connectivity<W: Write>(rows: &[ConnectivityRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(CONNECTIVITY_HEADER)?;
    for r in rows {
        wtr.write_record([r.date.to_string(), r.num_wcc.to_string(), r.lwcc_size.to_string()])?;
    }
    finish(wtr)
}

pub fn write_efficiency<W: Write>(rows: &[EfficiencyRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(EFFICIENCY_HEADER)?;
    for r in rows {
        wtr.write_record([
            r.date.to_string(),
            r.global_efficiency.to_string(),
            r.normalized_efficiency.to_string(),
            opt(r.gini_nodal_efficiency),
        ])?;
    }
    finish(wtr)
}

pub fn write_nodal_efficiency<W: Write>(graph: &MobilityGraph, report: &EfficiencyReport, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(NODAL_EFFICIENCY_HEADER)?;
    for (id, e) in graph.node_ids().iter().zip(&report.nodal) {
        wtr.write_record([id.clone(), e.to_string()])?;
    }
    finish(wtr)
}

pub fn write_trace<W: Write>(trace: &PercolationTrace, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(TRACE_HEADER)?;
    for s in &trace.steps {
        wtr.write_record([
            trace.direction.to_string(),
            s.iteration.to_string(),
            opt(s.threshold),
            s.residual_edge_fraction.to_string(),
            s.lwcc_size.to_string(),
            s.component_count.to_string(),
            opt(s.global_efficiency),
        ])?;
    }
    finish(wtr)
}

pub fn write_persistence<W: Write>(map: &PersistenceMap, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(PERSISTENCE_HEADER)?;
    for (id, rho) in map.entries() {
        wtr.write_record([id.clone(), rho.to_string()])?;
    }
    finish(wtr)
}

pub fn write_overlay<W: Write>(points: &[OverlayPoint], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(OVERLAY_HEADER)?;
    for p in points {
        wtr.write_record([
            p.period.to_string(),
            p.week_start.to_string(),
            p.residual_edge_fraction.to_string(),
            p.lwcc_size.to_string(),
            p.global_efficiency_normalized.to_string(),
        ])?;
    }
    finish(wtr)
}

pub fn write_aggregates<W: Write>(rows: &[AggregateRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(AGGREGATE_HEADER)?;
    for r in rows {
        wtr.write_record([
            r.period.clone(),
            r.num_wcc.to_string(),
            r.lwcc_size.to_string(),
            r.num_edges.to_string(),
            r.global_efficiency.to_string(),
        ])?;
    }
    finish(wtr)
}

/// Reads `region_id,persistence` rows back into a map.
pub fn read_persistence<R: std::io::Read>(input: R) -> Result<PersistenceMap> {
    use crate::ingest::flow::{check_width, csv_parse_error, read_header, reader, row_line};

    let mut rdr = reader(input);
    read_header(&mut rdr, &PERSISTENCE_HEADER)?;
    let mut entries = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_parse_error(e, "row"))?;
        check_width(&row, &PERSISTENCE_HEADER)?;
        let rho: f64 = row[1].parse().map_err(|_| {
            Error::parse(row_line(&row), "persistence", format!("`{}` is not a number", &row[1]))
        })?;
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::Validation(format!(
                "persistence {rho} of `{}` outside [0, 1]",
                &row[0]
            )));
        }
        entries.push((row[0].to_owned(), rho));
    }
    Ok(PersistenceMap::from_entries(entries))
}
