//! Node persistence of a star network exported as a Voronoi GeoJSON map.
//!
//! cargo run --example node_persistence_map [output.geojson]

use std::fs::File;

use mobnet::geo::{export_persistence_geojson, voronoi, write_geojson, BoundingBox};
use mobnet::graph::build_graph;
use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams, TimeWindow};
use mobnet::percolation::{node_persistence, SweepDirection};

fn main() -> mobnet::Result<()> {
    let mut params = ArchetypeParams::new(Archetype::Star { hub_count: 6 }, 120, 7);
    params.days = 7;
    let data = generate_synthetic(&params)?;
    let window = TimeWindow::days(params.start_date, params.days)?;
    let graph = build_graph(&data.records, &window, &data.registry)?;

    let rho = node_persistence(&graph, SweepDirection::Increasing)?;
    let mut ranked = rho.entries().to_vec();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    for (id, r) in ranked.iter().take(5) {
        println!("{id}: {r:.3}");
    }

    let cells = voronoi(&data.registry, &BoundingBox::around(&data.registry)?)?;
    let doc = export_persistence_geojson(&cells, &rho)?;
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("persistence.geojson").display().to_string());
    let file = File::create(&path).map_err(|e| mobnet::Error::Io { path: path.clone().into(), source: e })?;
    write_geojson(&doc, file)?;
    println!("wrote {} cells to {path}", cells.len());
    Ok(())
}
