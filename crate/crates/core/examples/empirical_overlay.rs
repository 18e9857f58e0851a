//! Weekly networks placed against the pre-lockdown baseline.
//!
//! cargo run --example empirical_overlay

use chrono::NaiveDate;
use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams, SyntheticLockdown, TimeWindow};
use mobnet::percolation::empirical_overlay;

fn main() -> mobnet::Result<()> {
    let lockdown = NaiveDate::from_ymd_opt(2020, 3, 11).unwrap();
    let mut params = ArchetypeParams::new(Archetype::CorePeriphery { core_size: 12 }, 100, 5);
    params.days = 35;
    params.lockdown = Some(SyntheticLockdown {
        date: lockdown,
        removed_fraction: 0.35,
    });
    let data = generate_synthetic(&params)?;
    let baseline = TimeWindow::days_before(lockdown, 14)?;

    println!("period  week_start  residual  lwcc  efficiency");
    for p in empirical_overlay(&data.records, &data.registry, lockdown, &baseline)? {
        println!(
            "{:<7} {}  {:>8.3}  {:>4}  {:.3}",
            p.period, p.week_start, p.residual_edge_fraction, p.lwcc_size, p.global_efficiency_normalized
        );
    }
    Ok(())
}
