//! Efficiency over reciprocal-weight shortest paths, and the Gini index.

mod gini;
mod paths;

pub use gini::gini;
pub use paths::{shortest_paths_from, DistanceRow};
pub(crate) use paths::{dijkstra, reciprocal_sum};

use crate::error::{Error, Result};
use crate::graph::MobilityGraph;

/// Global and nodal efficiency of one graph.
///
/// `nodal[i]` is the mean of `1 / d(i, j)` over all `j != i`, and `global` is
/// the mean over ordered pairs, so `global` equals the mean of `nodal`.
/// Values are raw: with reciprocal-weight distances they may exceed 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyReport {
    pub global: f64,
    pub nodal: Vec<f64>,
}

pub fn efficiency(graph: &MobilityGraph) -> Result<EfficiencyReport> {
    let n = graph.node_count();
    if n < 2 {
        return Err(Error::Argument(format!(
            "efficiency needs at least 2 nodes, graph has {n}"
        )));
    }
    let mut dist = Vec::with_capacity(n);
    let row_sums: Vec<f64> = (0..n)
        .map(|s| {
            dijkstra(graph, s, &mut dist);
            reciprocal_sum(&dist, s)
        })
        .collect();
    Ok(report_from_row_sums(&row_sums))
}

pub(crate) fn report_from_row_sums(row_sums: &[f64]) -> EfficiencyReport {
    let pairs = row_sums.len() - 1;
    let global = pair_mean(row_sums.iter().sum(), row_sums.len());
    EfficiencyReport {
        global,
        nodal: row_sums.iter().map(|s| s / pairs as f64).collect(),
    }
}

/// `total / (n (n - 1))`, or 0 when fewer than two nodes remain.
pub(crate) fn pair_mean(total: f64, n: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        total / (n as f64 * (n - 1) as f64)
    }
}

/// Divides each value by the series maximum.
pub fn normalize_series(values: &[f64]) -> Result<Vec<f64>> {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0 && max.is_finite()) {
        return Err(Error::Argument(
            "normalization needs at least one strictly positive value".into(),
        ));
    }
    Ok(values.iter().map(|v| v / max).collect())
}

/// Global efficiency and Gini index of nodal efficiency for one graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyGini {
    pub global_efficiency: f64,
    pub gini_nodal_efficiency: f64,
}

pub fn efficiency_gini(graph: &MobilityGraph) -> Result<EfficiencyGini> {
    let report = efficiency(graph)?;
    Ok(EfficiencyGini {
        global_efficiency: report.global,
        gini_nodal_efficiency: gini(&report.nodal)?,
    })
}

pub fn efficiency_gini_series<'a>(
    series: impl IntoIterator<Item = &'a MobilityGraph>,
) -> Result<Vec<EfficiencyGini>> {
    series.into_iter().map(efficiency_gini).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::graph_of;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn mutual_unit_pair() {
        let g = graph_of(&["A", "B"], &[("A", "B", 1.0), ("B", "A", 1.0)]);
        assert_eq!(efficiency(&g).unwrap().global, 1.0);
    }

    #[test]
    fn disconnected_pair() {
        let g = graph_of(&["A", "B"], &[]);
        let r = efficiency(&g).unwrap();
        assert_eq!(r.global, 0.0);
        assert_eq!(r.nodal, vec![0.0, 0.0]);
    }

    #[test]
    fn chain_of_three() {
        // Pair efficiencies 1/0.5 + 1/0.25 + 1/0.75, all other pairs unreachable.
        let g = graph_of(&["A", "B", "C"], &[("A", "B", 2.0), ("B", "C", 4.0)]);
        let r = efficiency(&g).unwrap();
        let expected = (2.0 + 4.0 + 4.0 / 3.0) / 6.0;
        assert!(close(r.global, expected), "{} vs {expected}", r.global);
        assert!(close(r.global, 1.222_222_222_222_222));
    }

    #[test]
    fn too_few_nodes() {
        let g = graph_of(&["A"], &[]);
        assert!(matches!(efficiency(&g), Err(Error::Argument(_))));
    }

    #[test]
    fn normalize() {
        assert_eq!(normalize_series(&[2.0, 4.0, 1.0]).unwrap(), vec![0.5, 1.0, 0.25]);
        assert_eq!(normalize_series(&[3.0, 3.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(normalize_series(&[3.0]).unwrap(), vec![1.0]);
        assert!(normalize_series(&[0.0, -1.0]).is_err());
        assert!(normalize_series(&[]).is_err());
    }

    #[test]
    fn star_nodal_efficiency_and_gini() {
        let g = graph_of(
            &["A", "B", "C", "D"],
            &[
                ("A", "B", 1.0),
                ("B", "A", 1.0),
                ("A", "C", 1.0),
                ("C", "A", 1.0),
                ("A", "D", 1.0),
                ("D", "A", 1.0),
            ],
        );
        let r = efficiency(&g).unwrap();
        assert!(close(r.nodal[0], 1.0));
        for leaf in 1..4 {
            assert!(close(r.nodal[leaf], 2.0 / 3.0));
        }
        let series = efficiency_gini_series([&g]).unwrap();
        assert!(close(series[0].gini_nodal_efficiency, 1.0 / 12.0));
    }

    #[test]
    fn series_of_complete_pair() {
        let g = graph_of(&["A", "B"], &[("A", "B", 1.0), ("B", "A", 1.0)]);
        assert_eq!(
            efficiency_gini_series([&g]).unwrap(),
            vec![EfficiencyGini {
                global_efficiency: 1.0,
                gini_nodal_efficiency: 0.0
            }]
        );
    }

    #[test]
    fn removing_an_edge_does_not_raise_efficiency() {
        let day1 = graph_of(
            &["A", "B", "C"],
            &[("A", "B", 1.0), ("B", "A", 1.0), ("B", "C", 2.0), ("C", "B", 2.0), ("A", "C", 0.5)],
        );
        let day2 = day1.retain_edges(|e| !(e.source == 0 && e.target == 2));
        let s = efficiency_gini_series([&day1, &day2]).unwrap();
        assert!(s[1].global_efficiency <= s[0].global_efficiency);
    }
}
