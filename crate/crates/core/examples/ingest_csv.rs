//! Parse flow and registry CSVs, reject malformed input and window records.
//!
//! cargo run --example ingest_csv

use mobnet::ingest::{filter_window, parse_flow_records, parse_node_registry, TimeWindow};

const REGISTRY: &str = "\
region_id,name,lat,lon
R1,Lyon,45.76,4.84
R2,Paris,48.86,2.35
R3,Lille,50.63,3.06
";

const FLOWS: &str = "\
origin_id,destination_id,window_start,weight
R1,R2,2020-03-01T00:00:00Z,12.5
R2,R1,2020-03-01T08:00:00Z,10
R2,R3,2020-03-01T16:00:00Z,0
R3,R2,2020-03-02T00:00:00Z,4.25
";

fn main() -> mobnet::Result<()> {
    let registry = parse_node_registry(REGISTRY.as_bytes())?;
    let records = parse_flow_records(FLOWS.as_bytes())?;
    println!("{} sites, {} records", registry.len(), records.len());

    let day = TimeWindow::day(chrono::NaiveDate::from_ymd_opt(2020, 3, 1).unwrap());
    for r in filter_window(&records, &day) {
        println!("  {} -> {} at {}: {}", r.origin_id, r.destination_id, r.window_start, r.weight);
    }

    let broken = "origin_id,destination_id,window_start,weight\nR1,R2,yesterday,3\n";
    match parse_flow_records(broken.as_bytes()) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
