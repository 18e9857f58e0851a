#![allow(dead_code)]

use chrono::NaiveDate;
use mobnet::graph::{Edge, MobilityGraph};
use mobnet::TimeWindow;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn window() -> TimeWindow {
    TimeWindow::day(NaiveDate::from_ymd_opt(2020, 3, 2).unwrap())
}

pub fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("N{i:02}")).collect()
}

/// Directed graph where each ordered pair carries an edge with probability
/// `p` and a weight uniform in `(0, max_weight]`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_weight: f64) -> MobilityGraph {
    let mut edges = Vec::new();
    for source in 0..n {
        for target in 0..n {
            if source != target && rng.random_bool(p) {
                let weight = max_weight * (1.0 - rng.random::<f64>());
                edges.push(Edge { source, target, weight });
            }
        }
    }
    MobilityGraph::from_edges(ids(n), edges, window()).unwrap()
}

/// Like [`random_graph`] but weights come from a small integer palette, so
/// weight classes hold several edges.
pub fn random_graph_with_ties(rng: &mut ChaCha8Rng, n: usize, p: f64, levels: u32) -> MobilityGraph {
    let mut edges = Vec::new();
    for source in 0..n {
        for target in 0..n {
            if source != target && rng.random_bool(p) {
                let weight = f64::from(rng.random_range(1..=levels));
                edges.push(Edge { source, target, weight });
            }
        }
    }
    MobilityGraph::from_edges(ids(n), edges, window()).unwrap()
}

/// All-pairs distances by repeated relaxation of every edge until nothing
/// changes, with edge length `1 / w`.
pub fn relaxation_distances(g: &MobilityGraph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    loop {
        let mut changed = false;
        for row in d.iter_mut() {
            for e in g.edges() {
                let via = row[e.source] + 1.0 / e.weight;
                if via < row[e.target] {
                    row[e.target] = via;
                    changed = true;
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

/// Weak components as node lists by breadth-first search over undirected
/// adjacency, ignoring nodes with no live edge.
pub fn bfs_components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].is_empty() {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            k += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Largest component, ties broken by the smallest member id.
pub fn largest_component(g: &MobilityGraph, comps: &[Vec<usize>]) -> Vec<usize> {
    comps
        .iter()
        .max_by(|a, b| {
            a.len().cmp(&b.len()).then_with(|| {
                let min_a = a.iter().map(|&v| g.node_id(v)).min().unwrap();
                let min_b = b.iter().map(|&v| g.node_id(v)).min().unwrap();
                min_b.cmp(min_a)
            })
        })
        .cloned()
        .unwrap_or_default()
}

/// Gini index as half the relative mean absolute difference over all pairs.
pub fn gini_pairs(y: &[f64]) -> f64 {
    let n = y.len() as f64;
    let mean = y.iter().sum::<f64>() / n;
    let mut total = 0.0;
    for a in y {
        for b in y {
            total += (a - b).abs();
        }
    }
    total / (n * n) / (2.0 * mean)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}
