use std::collections::HashMap;

use crate::error::Result;
use crate::graph::MobilityGraph;
use crate::percolation::{Sweep, SweepDirection, SweepOptions};

/// Per-node persistence in `[0, 1]`, in graph node order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceMap {
    entries: Vec<(String, f64)>,
    index: HashMap<String, usize>,
}

impl PersistenceMap {
    pub fn from_entries(entries: Vec<(String, f64)>) -> Self {
        let index = entries
            .iter()
            .enumerate()
            .map(|(i, (id, _))| (id.clone(), i))
            .collect();
        Self { entries, index }
    }

    pub fn get(&self, region_id: &str) -> Option<f64> {
        self.index.get(region_id).map(|&i| self.entries[i].1)
    }

    /// Persistence of `region_id`, or 0 for nodes the map does not cover.
    pub fn value_or_zero(&self, region_id: &str) -> f64 {
        self.get(region_id).unwrap_or(0.0)
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Fraction of sweep iterations each node stays in the LWCC.
///
/// `M_v` counts the iterations `1..=M_v` after which `v` is still in the
/// LWCC without interruption since the untouched graph. With `K` distinct
/// weights the last iteration empties the graph, so `rho = M_v / (K - 1)`.
/// A single weight class gives 1 to the initial LWCC and 0 elsewhere.
pub fn node_persistence(graph: &MobilityGraph, direction: SweepDirection) -> Result<PersistenceMap> {
    let mut sweep = Sweep::new(graph, direction, SweepOptions::connectivity_only())?;
    let k = sweep.thresholds().len();
    let n = graph.node_count();

    let (_, initial) = sweep.next_with_components().expect("initial snapshot");
    let mut member: Vec<bool> = (0..n).map(|v| initial.in_lwcc(v)).collect();
    let mut last = vec![0usize; n];
    while let Some((step, labeling)) = sweep.next_with_components() {
        for v in 0..n {
            if member[v] {
                if labeling.in_lwcc(v) {
                    last[v] = step.iteration;
                } else {
                    member[v] = false;
                }
            }
        }
    }

    let entries = (0..n)
        .map(|v| {
            let rho = if k == 1 {
                if initial.in_lwcc(v) {
                    1.0
                } else {
                    0.0
                }
            } else {
                last[v] as f64 / (k - 1) as f64
            };
            (graph.node_id(v).to_owned(), rho)
        })
        .collect();
    Ok(PersistenceMap::from_entries(entries))
}
