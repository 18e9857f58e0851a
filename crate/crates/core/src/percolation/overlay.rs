use std::collections::BTreeMap;
use std::fmt;

use chrono::{Datelike, Duration, NaiveDate};

use crate::error::{Error, Result};
use crate::graph::{build_graph, residual_edge_fraction, weak_components};
use crate::ingest::{midnight, FlowRecord, NodeRegistry, TimeWindow};
use crate::metrics::efficiency;

/// Position of a week relative to the lockdown date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Period {
    Before,
    During,
    After,
}

impl Period {
    /// Label of the ISO week starting on `week_start`.
    pub fn of_week(week_start: NaiveDate, lockdown: NaiveDate) -> Self {
        let week_end = week_start + Duration::days(7);
        if lockdown < week_start {
            Period::After
        } else if lockdown < week_end {
            Period::During
        } else {
            Period::Before
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Period::Before => "before",
            Period::During => "during",
            Period::After => "after",
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One real weekly network placed on the percolation plane.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlayPoint {
    pub period: Period,
    /// Monday of the ISO week.
    pub week_start: NaiveDate,
    pub residual_edge_fraction: f64,
    pub lwcc_size: usize,
    /// Weekly global efficiency per day of flow over the baseline's.
    pub global_efficiency_normalized: f64,
}

pub fn week_start(date: NaiveDate) -> NaiveDate {
    date - Duration::days(i64::from(date.weekday().num_days_from_monday()))
}

/// Compares each ISO week of `records` with the aggregate over
/// `baseline_window`, which must end no later than the lockdown date.
pub fn empirical_overlay(
    records: &[FlowRecord],
    registry: &NodeRegistry,
    lockdown_date: NaiveDate,
    baseline_window: &TimeWindow,
) -> Result<Vec<OverlayPoint>> {
    if baseline_window.end() > midnight(lockdown_date) {
        return Err(Error::Argument(format!(
            "baseline window {baseline_window} extends past lockdown date {lockdown_date}"
        )));
    }
    let baseline = build_graph(records, baseline_window, registry)?;
    if baseline.edge_count() == 0 {
        return Err(Error::Argument(format!(
            "baseline window {baseline_window} contains no flows"
        )));
    }
    // Efficiency grows linearly with weight, so windows of different length
    // are compared through their efficiency per day of flow.
    let per_day = |e: f64, w: &TimeWindow| e * 86_400.0 / w.duration().num_seconds() as f64;
    let baseline_rate = per_day(efficiency(&baseline)?.global, baseline_window);

    let mut weeks: BTreeMap<NaiveDate, Vec<FlowRecord>> = BTreeMap::new();
    for r in records {
        weeks
            .entry(week_start(r.window_start.date_naive()))
            .or_default()
            .push(r.clone());
    }

    weeks
        .into_iter()
        .map(|(monday, recs)| {
            let week = TimeWindow::days(monday, 7)?;
            let graph = build_graph(&recs, &week, registry)?;
            let weekly_efficiency = if graph.node_count() >= 2 {
                efficiency(&graph)?.global
            } else {
                0.0
            };
            Ok(OverlayPoint {
                period: Period::of_week(monday, lockdown_date),
                week_start: monday,
                residual_edge_fraction: residual_edge_fraction(&graph, &baseline)?,
                lwcc_size: weak_components(&graph).lwcc_size(),
                global_efficiency_normalized: per_day(weekly_efficiency, &week) / baseline_rate,
            })
        })
        .collect()
}
