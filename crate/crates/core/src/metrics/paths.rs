use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::MobilityGraph;

/// Single-source distances where traversing an edge of weight `w` costs
/// `1 / w`. Unreachable nodes are `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceRow {
    pub source: usize,
    pub distances: Vec<f64>,
}

impl DistanceRow {
    /// Sum of `1 / d` over all other nodes; unreachable nodes add nothing.
    pub fn reciprocal_sum(&self) -> f64 {
        reciprocal_sum(&self.distances, self.source)
    }
}

pub(crate) fn reciprocal_sum(distances: &[f64], source: usize) -> f64 {
    distances
        .iter()
        .enumerate()
        .filter(|&(j, d)| j != source && d.is_finite())
        .fold(0.0, |acc, (_, d)| acc + 1.0 / d)
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortest_paths_from(graph: &MobilityGraph, source: usize) -> Result<DistanceRow> {
    if source >= graph.node_count() {
        return Err(Error::Argument(format!(
            "source {source} is not a node index (graph has {} nodes)",
            graph.node_count()
        )));
    }
    let mut distances = Vec::new();
    dijkstra(graph, source, &mut distances);
    Ok(DistanceRow { source, distances })
}

/// Fills `dist` with reciprocal-weight distances from `source`.
pub(crate) fn dijkstra(graph: &MobilityGraph, source: usize, dist: &mut Vec<f64>) {
    dist.clear();
    dist.resize(graph.node_count(), f64::INFINITY);
    dist[source] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Entry {
        dist: 0.0,
        node: source,
    });
    while let Some(Entry { dist: d, node }) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        for e in graph.out_edges(node) {
            let candidate = d + 1.0 / e.weight;
            if candidate < dist[e.target] {
                dist[e.target] = candidate;
                heap.push(Entry {
                    dist: candidate,
                    node: e.target,
                });
            }
        }
    }
}
