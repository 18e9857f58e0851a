//! Increasing and decreasing weight sweeps on a rich-club network.
//!
//! cargo run --example percolation_sweep

use mobnet::graph::build_graph;
use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams, TimeWindow};
use mobnet::percolation::{percolation_sweep, SweepDirection};

fn main() -> mobnet::Result<()> {
    let mut params = ArchetypeParams::new(Archetype::CorePeriphery { core_size: 10 }, 80, 42);
    params.days = 7;
    let data = generate_synthetic(&params)?;
    let window = TimeWindow::days(params.start_date, params.days)?;
    let graph = build_graph(&data.records, &window, &data.registry)?;

    for direction in SweepDirection::ALL {
        let trace = percolation_sweep(&graph, direction)?;
        let collapse = trace.residual_fraction_at_lwcc_below(0.5).unwrap_or(0.0);
        println!(
            "{direction}: {} iterations, LWCC halves at {:.1}% residual edges",
            trace.iteration_count(),
            100.0 * collapse
        );
        let stride = (trace.steps.len() / 8).max(1);
        for step in trace.steps.iter().step_by(stride) {
            println!(
                "  iter {:>4}  residual {:>6.3}  lwcc {:>3}  wcc {:>3}  efficiency {:.4}",
                step.iteration,
                step.residual_edge_fraction,
                step.lwcc_size,
                step.component_count,
                step.global_efficiency.unwrap_or(0.0)
            );
        }
    }
    Ok(())
}
