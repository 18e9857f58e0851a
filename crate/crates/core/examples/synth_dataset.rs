//! Generate each synthetic archetype and summarise its first day.
//!
//! cargo run --example synth_dataset

use mobnet::graph::{build_graph, weak_components};
use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams, TimeWindow};

fn main() -> mobnet::Result<()> {
    let archetypes = [
        Archetype::Star { hub_count: 8 },
        Archetype::MultiCluster { cluster_count: 4 },
        Archetype::CorePeriphery { core_size: 15 },
    ];
    for archetype in archetypes {
        let mut params = ArchetypeParams::new(archetype, 200, 42);
        params.days = 7;
        let data = generate_synthetic(&params)?;
        let day = build_graph(&data.records, &TimeWindow::day(params.start_date), &data.registry)?;
        let components = weak_components(&day);
        println!(
            "{:<15} {} sites, {} records, day 1: {} edges, {} components, LWCC {}",
            archetype.name(),
            data.registry.len(),
            data.records.len(),
            day.edge_count(),
            components.component_count(),
            components.lwcc_size()
        );
    }
    Ok(())
}
