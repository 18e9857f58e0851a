use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{label_components, ComponentLabeling, MobilityGraph};
use crate::metrics::{dijkstra, pair_mean, reciprocal_sum};

/// Order in which weight classes are deleted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SweepDirection {
    /// Weakest edges first.
    Increasing,
    /// Strongest edges first.
    Decreasing,
}

impl SweepDirection {
    pub const ALL: [SweepDirection; 2] = [SweepDirection::Increasing, SweepDirection::Decreasing];

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepDirection::Increasing => "increasing",
            SweepDirection::Decreasing => "decreasing",
        }
    }
}

impl fmt::Display for SweepDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "increasing" => Ok(SweepDirection::Increasing),
            "decreasing" => Ok(SweepDirection::Decreasing),
            other => Err(Error::Argument(format!("unknown sweep direction `{other}`"))),
        }
    }
}

/// Node set over which the residual graph's global efficiency is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EfficiencyBasis {
    /// Every node of the input graph, including those left without edges.
    /// Efficiency can then only fall as edges are deleted.
    #[default]
    OriginalNodes,
    /// Only nodes that still have an incident edge.
    ResidualSupport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// `None` skips efficiency tracking, which is by far the costliest part
    /// of a sweep.
    pub efficiency: Option<EfficiencyBasis>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            efficiency: Some(EfficiencyBasis::OriginalNodes),
        }
    }
}

impl SweepOptions {
    pub fn connectivity_only() -> Self {
        Self { efficiency: None }
    }
}

/// Statistics of the residual graph after one sweep iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepStep {
    /// 0 for the untouched graph, then 1..=K.
    pub iteration: usize,
    /// Weight class deleted at this iteration; `None` for iteration 0.
    pub threshold: Option<f64>,
    pub residual_edges: usize,
    pub residual_edge_fraction: f64,
    pub lwcc_size: usize,
    pub component_count: usize,
    pub global_efficiency: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PercolationTrace {
    pub direction: SweepDirection,
    /// `steps[0]` is the full graph; `steps[i]` follows iteration `i`.
    pub steps: Vec<SweepStep>,
}

impl PercolationTrace {
    pub fn initial(&self) -> &SweepStep {
        &self.steps[0]
    }

    pub fn iterations(&self) -> &[SweepStep] {
        &self.steps[1..]
    }

    /// Number of distinct weights, which is the number of iterations.
    pub fn iteration_count(&self) -> usize {
        self.steps.len() - 1
    }

    /// Residual edge fraction of the first step whose LWCC is smaller than
    /// `fraction` times the initial LWCC.
    pub fn residual_fraction_at_lwcc_below(&self, fraction: f64) -> Option<f64> {
        let limit = fraction * self.initial().lwcc_size as f64;
        self.steps
            .iter()
            .find(|s| (s.lwcc_size as f64) < limit)
            .map(|s| s.residual_edge_fraction)
    }
}

/// Cached all-pairs distances of the residual graph. A row is recomputed
/// only when a deleted edge was tight for it.
struct DistanceCache {
    rows: Vec<Vec<f64>>,
    sums: Vec<f64>,
}

impl DistanceCache {
    fn new(graph: &MobilityGraph) -> Self {
        let n = graph.node_count();
        let mut rows = Vec::with_capacity(n);
        let mut sums = Vec::with_capacity(n);
        for s in 0..n {
            let mut row = Vec::with_capacity(n);
            dijkstra(graph, s, &mut row);
            sums.push(reciprocal_sum(&row, s));
            rows.push(row);
        }
        Self { rows, sums }
    }

    fn update(&mut self, residual: &MobilityGraph, removed: &[(usize, usize, f64)]) {
        for s in 0..self.rows.len() {
            let row = &self.rows[s];
            let tight = removed.iter().any(|&(u, v, w)| {
                let du = row[u];
                du.is_finite() && du + 1.0 / w <= row[v]
            });
            if tight {
                dijkstra(residual, s, &mut self.rows[s]);
                self.sums[s] = reciprocal_sum(&self.rows[s], s);
            }
        }
    }

    fn total(&self) -> f64 {
        self.sums.iter().fold(0.0, |a, b| a + b)
    }
}

/// Lazy weight-ordered bond percolation over one graph.
///
/// With `K` distinct weights, iteration `i` deletes every edge in the `i`-th
/// weight class of the sweep order, so after iteration `i` of an increasing
/// sweep no edge of weight `<= w_i` remains. Yields the untouched graph
/// first, then one step per iteration; the last step is edgeless.
///
/// Efficiency tracking keeps an `n x n` distance matrix in memory.
pub struct Sweep<'g> {
    graph: &'g MobilityGraph,
    direction: SweepDirection,
    basis: Option<EfficiencyBasis>,
    order: Vec<usize>,
    levels: Vec<f64>,
    cursor: usize,
    next_iteration: usize,
    alive: Vec<bool>,
    alive_count: usize,
    cache: Option<DistanceCache>,
}

impl<'g> Sweep<'g> {
    pub fn new(graph: &'g MobilityGraph, direction: SweepDirection, options: SweepOptions) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::Argument("percolation needs at least one edge".into()));
        }
        let edges = graph.edges();
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| {
            let by_weight = edges[a].weight.total_cmp(&edges[b].weight);
            match direction {
                SweepDirection::Increasing => by_weight,
                SweepDirection::Decreasing => by_weight.reverse(),
            }
            .then(a.cmp(&b))
        });
        let mut levels: Vec<f64> = order.iter().map(|&e| edges[e].weight).collect();
        levels.dedup();

        Ok(Self {
            graph,
            direction,
            basis: options.efficiency,
            order,
            levels,
            cursor: 0,
            next_iteration: 0,
            alive: vec![true; edges.len()],
            alive_count: edges.len(),
            cache: None,
        })
    }

    pub fn direction(&self) -> SweepDirection {
        self.direction
    }

    /// Distinct weights in deletion order.
    pub fn thresholds(&self) -> &[f64] {
        &self.levels
    }

    /// Advances one step and also returns the residual graph's components.
    pub fn next_with_components(&mut self) -> Option<(SweepStep, ComponentLabeling)> {
        let iteration = self.next_iteration;
        if iteration > self.levels.len() {
            return None;
        }
        self.next_iteration += 1;

        let edges = self.graph.edges();
        let mut removed = Vec::new();
        let threshold = if iteration == 0 {
            None
        } else {
            let level = self.levels[iteration - 1];
            while self.cursor < self.order.len() && edges[self.order[self.cursor]].weight == level {
                let e = self.order[self.cursor];
                self.alive[e] = false;
                removed.push((edges[e].source, edges[e].target, edges[e].weight));
                self.cursor += 1;
            }
            self.alive_count -= removed.len();
            Some(level)
        };

        let alive = &self.alive;
        let labeling = label_components(
            self.graph.node_count(),
            self.graph.lex_ranks(),
            edges
                .iter()
                .enumerate()
                .filter(|(i, _)| alive[*i])
                .map(|(_, e)| (e.source, e.target)),
        );

        let global_efficiency = self.basis.map(|basis| {
            let total = if iteration == 0 {
                let cache = DistanceCache::new(self.graph);
                let total = cache.total();
                self.cache = Some(cache);
                total
            } else {
                let residual = self.graph.with_edge_mask(alive);
                let cache = self.cache.as_mut().expect("cache built at iteration 0");
                cache.update(&residual, &removed);
                cache.total()
            };
            let n = match basis {
                EfficiencyBasis::OriginalNodes => self.graph.node_count(),
                EfficiencyBasis::ResidualSupport => labeling.sizes().iter().sum(),
            };
            pair_mean(total, n)
        });

        let step = SweepStep {
            iteration,
            threshold,
            residual_edges: self.alive_count,
            residual_edge_fraction: self.alive_count as f64 / edges.len() as f64,
            lwcc_size: labeling.lwcc_size(),
            component_count: labeling.component_count(),
            global_efficiency,
        };
        Some((step, labeling))
    }
}

impl Iterator for Sweep<'_> {
    type Item = SweepStep;

    fn next(&mut self) -> Option<SweepStep> {
        self.next_with_components().map(|(step, _)| step)
    }
}

pub fn percolation_sweep(graph: &MobilityGraph, direction: SweepDirection) -> Result<PercolationTrace> {
    percolation_sweep_with(graph, direction, SweepOptions::default())
}

pub fn percolation_sweep_with(
    graph: &MobilityGraph,
    direction: SweepDirection,
    options: SweepOptions,
) -> Result<PercolationTrace> {
    let steps = Sweep::new(graph, direction, options)?.collect();
    Ok(PercolationTrace { direction, steps })
}
