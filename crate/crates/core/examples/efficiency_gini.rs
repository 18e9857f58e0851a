//! Global efficiency, normalised series and Gini of nodal efficiency.
//!
//! cargo run --example efficiency_gini

use chrono::NaiveDate;
use mobnet::graph::daily_series;
use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams, SyntheticLockdown};
use mobnet::metrics::{efficiency_gini_series, normalize_series};

fn main() -> mobnet::Result<()> {
    let mut params = ArchetypeParams::new(Archetype::MultiCluster { cluster_count: 4 }, 120, 3);
    params.days = 14;
    params.lockdown = Some(SyntheticLockdown {
        date: NaiveDate::from_ymd_opt(2020, 3, 2).unwrap(),
        removed_fraction: 0.4,
    });
    let data = generate_synthetic(&params)?;
    let series = daily_series(&data.records, &data.registry)?;
    let stats = efficiency_gini_series(series.iter().map(|(_, g)| g))?;
    let normalized = normalize_series(&stats.iter().map(|s| s.global_efficiency).collect::<Vec<_>>())?;

    println!("date        global    normalized  gini");
    for (((date, _), s), n) in series.iter().zip(&stats).zip(&normalized) {
        println!("{date}  {:.5}  {:.4}      {:.4}", s.global_efficiency, n, s.gini_nodal_efficiency);
    }
    Ok(())
}
