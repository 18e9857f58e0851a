//! Weight-ordered bond percolation, node persistence and the comparison of
//! real weekly networks against percolation curves.

mod overlay;
mod persistence;
mod sweep;

pub use overlay::{empirical_overlay, week_start, OverlayPoint, Period};
pub use persistence::{node_persistence, PersistenceMap};
pub use sweep::{
    percolation_sweep, percolation_sweep_with, EfficiencyBasis, PercolationTrace, Sweep,
    SweepDirection, SweepOptions, SweepStep,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::tests::graph_of;
    use crate::graph::MobilityGraph;

    use chrono::{NaiveDate, TimeZone, Utc};

    use crate::ingest::{FlowRecord, NodeRegistry, NodeSite, TimeWindow};

    fn triangle() -> MobilityGraph {
        graph_of(
            &["A", "B", "C"],
            &[("A", "B", 1.0), ("B", "C", 2.0), ("C", "A", 3.0)],
        )
    }

    fn lwcc_sizes(trace: &PercolationTrace) -> Vec<usize> {
        trace.steps.iter().map(|s| s.lwcc_size).collect()
    }

    #[test]
    fn triangle_increasing() {
        let t = percolation_sweep(&triangle(), SweepDirection::Increasing).unwrap();
        assert_eq!(lwcc_sizes(&t), vec![3, 3, 2, 0]);
        let residual: Vec<usize> = t.steps.iter().map(|s| s.residual_edges).collect();
        assert_eq!(residual, vec![3, 2, 1, 0]);
        let thresholds: Vec<Option<f64>> = t.steps.iter().map(|s| s.threshold).collect();
        assert_eq!(thresholds, vec![None, Some(1.0), Some(2.0), Some(3.0)]);
        assert_eq!(t.steps[3].component_count, 0);
        assert_eq!(t.steps[3].global_efficiency, Some(0.0));
    }

    #[test]
    fn triangle_decreasing() {
        let t = percolation_sweep(&triangle(), SweepDirection::Decreasing).unwrap();
        assert_eq!(lwcc_sizes(&t), vec![3, 3, 2, 0]);
        let thresholds: Vec<Option<f64>> = t.steps.iter().map(|s| s.threshold).collect();
        assert_eq!(thresholds, vec![None, Some(3.0), Some(2.0), Some(1.0)]);
    }

    #[test]
    fn equal_weights_take_one_iteration() {
        let g = graph_of(
            &["A", "B", "C"],
            &[("A", "B", 2.0), ("B", "C", 2.0), ("C", "A", 2.0)],
        );
        let t = percolation_sweep(&g, SweepDirection::Increasing).unwrap();
        assert_eq!(t.iteration_count(), 1);
        assert_eq!(t.steps[1].residual_edges, 0);
    }

    #[test]
    fn edgeless_graph_is_rejected() {
        let g = graph_of(&["A", "B"], &[]);
        assert!(matches!(
            percolation_sweep(&g, SweepDirection::Increasing),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            node_persistence(&g, SweepDirection::Increasing),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn triangle_persistence() {
        let p = node_persistence(&triangle(), SweepDirection::Increasing).unwrap();
        assert_eq!(p.get("A"), Some(1.0));
        assert_eq!(p.get("B"), Some(0.5));
        assert_eq!(p.get("C"), Some(1.0));
    }

    #[test]
    fn single_weight_class_persistence() {
        let g = graph_of(&["A", "B"], &[("A", "B", 4.0)]);
        let p = node_persistence(&g, SweepDirection::Increasing).unwrap();
        assert_eq!(p.get("A"), Some(1.0));
        assert_eq!(p.get("B"), Some(1.0));
    }

    #[test]
    fn nodes_outside_initial_lwcc_have_zero_persistence() {
        // {A,B,C} is the LWCC; {D,E} is not, even after the LWCC shrinks.
        let g = graph_of(
            &["A", "B", "C", "D", "E"],
            &[("A", "B", 1.0), ("B", "C", 2.0), ("D", "E", 5.0)],
        );
        let p = node_persistence(&g, SweepDirection::Increasing).unwrap();
        assert_eq!(p.get("D"), Some(0.0));
        assert_eq!(p.get("E"), Some(0.0));
        assert_eq!(p.value_or_zero("missing"), 0.0);
    }

    #[test]
    fn support_basis_differs_from_original_nodes() {
        let g = graph_of(
            &["A", "B", "C"],
            &[("A", "B", 1.0), ("B", "A", 1.0), ("B", "C", 0.1), ("C", "B", 0.1)],
        );
        let fixed = percolation_sweep(&g, SweepDirection::Increasing).unwrap();
        let support = percolation_sweep_with(
            &g,
            SweepDirection::Increasing,
            SweepOptions {
                efficiency: Some(EfficiencyBasis::ResidualSupport),
            },
        )
        .unwrap();
        // After the weak pair goes, only A<->B remains: 2 / 6 on all nodes,
        // 2 / 2 on the support.
        assert_eq!(fixed.steps[1].global_efficiency, Some(2.0 / 6.0));
        assert_eq!(support.steps[1].global_efficiency, Some(1.0));
    }

    #[test]
    fn lwcc_drop_lookup() {
        let t = percolation_sweep(&triangle(), SweepDirection::Increasing).unwrap();
        assert_eq!(t.residual_fraction_at_lwcc_below(0.5), Some(0.0));
        assert_eq!(t.residual_fraction_at_lwcc_below(1.0), Some(1.0 / 3.0));
    }

    fn registry(ids: &[&str]) -> NodeRegistry {
        NodeRegistry::new(
            ids.iter()
                .map(|id| NodeSite {
                    region_id: id.to_string(),
                    name: id.to_string(),
                    latitude: 0.0,
                    longitude: 0.0,
                })
                .collect(),
        )
        .unwrap()
    }

    fn flow(o: &str, d: &str, month: u32, day: u32, w: f64) -> FlowRecord {
        FlowRecord {
            origin_id: o.into(),
            destination_id: d.into(),
            window_start: Utc.with_ymd_and_hms(2020, month, day, 8, 0, 0).unwrap(),
            weight: w,
        }
    }

    #[test]
    fn overlay_labels_and_ratios() {
        let reg = registry(&["A", "B", "C"]);
        let date = |m, d| NaiveDate::from_ymd_opt(2020, m, d).unwrap();
        let lockdown = date(3, 11);
        let mut records = Vec::new();
        // Week of Mon 2 Mar: full network; baseline is that same week.
        for (o, d) in [("A", "B"), ("B", "A"), ("B", "C"), ("C", "B")] {
            records.push(flow(o, d, 3, 3, 1.0));
        }
        // Week of Mon 9 Mar holds the lockdown; half the edges survive.
        records.push(flow("A", "B", 3, 10, 1.0));
        records.push(flow("B", "A", 3, 12, 1.0));
        // Week of Mon 16 Mar.
        records.push(flow("B", "C", 3, 17, 2.0));

        let baseline = TimeWindow::days(date(3, 2), 7).unwrap();
        let points = empirical_overlay(&records, &reg, lockdown, &baseline).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(
            points.iter().map(|p| p.period).collect::<Vec<_>>(),
            vec![Period::Before, Period::During, Period::After]
        );
        assert_eq!(points[0].residual_edge_fraction, 1.0);
        assert_eq!(points[0].global_efficiency_normalized, 1.0);
        assert_eq!(points[0].lwcc_size, 3);
        assert_eq!(points[1].residual_edge_fraction, 0.5);
        assert_eq!(points[1].lwcc_size, 2);
        assert_eq!(points[2].residual_edge_fraction, 0.25);
    }

    #[test]
    fn overlay_compares_daily_rates_across_window_lengths() {
        let reg = registry(&["A", "B"]);
        let date = |m, d| NaiveDate::from_ymd_opt(2020, m, d).unwrap();
        let records = vec![flow("A", "B", 3, 3, 2.0), flow("A", "B", 3, 10, 2.0), flow("A", "B", 3, 17, 1.0)];
        let baseline = TimeWindow::days(date(3, 2), 14).unwrap();
        let points = empirical_overlay(&records, &reg, date(3, 16), &baseline).unwrap();
        let ratios: Vec<f64> = points.iter().map(|p| p.global_efficiency_normalized).collect();
        assert_eq!(ratios, vec![1.0, 1.0, 0.5]);
    }

    #[test]
    fn overlay_rejects_bad_baselines() {
        let reg = registry(&["A", "B"]);
        let date = |m, d| NaiveDate::from_ymd_opt(2020, m, d).unwrap();
        let records = vec![flow("A", "B", 3, 20, 1.0)];
        let empty = TimeWindow::days(date(3, 2), 7).unwrap();
        assert!(matches!(
            empirical_overlay(&records, &reg, date(3, 16), &empty),
            Err(Error::Argument(_))
        ));
        let late = TimeWindow::days(date(3, 15), 7).unwrap();
        assert!(matches!(
            empirical_overlay(&records, &reg, date(3, 16), &late),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn period_of_week() {
        let d = |day| NaiveDate::from_ymd_opt(2020, 3, day).unwrap();
        assert_eq!(Period::of_week(d(16), d(17)), Period::During);
        assert_eq!(Period::of_week(d(16), d(16)), Period::During);
        assert_eq!(Period::of_week(d(16), d(22)), Period::During);
        assert_eq!(Period::of_week(d(16), d(23)), Period::Before);
        assert_eq!(Period::of_week(d(16), d(15)), Period::After);
        assert_eq!(week_start(d(22)), d(16));
    }
}
