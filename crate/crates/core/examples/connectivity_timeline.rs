//! Daily weak connectivity of a synthetic network thinned by a lockdown.
//!
//! cargo run --example connectivity_timeline

use chrono::NaiveDate;
use mobnet::graph::{daily_series, weak_components};
use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams, SyntheticLockdown};

fn main() -> mobnet::Result<()> {
    let mut params = ArchetypeParams::new(Archetype::Star { hub_count: 8 }, 300, 7);
    params.days = 21;
    params.lockdown = Some(SyntheticLockdown {
        date: NaiveDate::from_ymd_opt(2020, 3, 9).unwrap(),
        removed_fraction: 0.5,
    });
    let data = generate_synthetic(&params)?;

    println!("date        num_wcc  lwcc_size  edges");
    for (date, graph) in daily_series(&data.records, &data.registry)? {
        let c = weak_components(&graph);
        println!("{date}  {:>7}  {:>9}  {:>5}", c.component_count(), c.lwcc_size(), graph.edge_count());
    }
    Ok(())
}
