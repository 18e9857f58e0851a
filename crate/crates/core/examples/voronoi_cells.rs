//! Voronoi cells of a small registry clipped to an explicit box.
//!
//! cargo run --example voronoi_cells

use mobnet::geo::{voronoi, BoundingBox};
use mobnet::ingest::parse_node_registry;

const REGISTRY: &str = "\
region_id,name,lat,lon
R1,Lyon,45.76,4.84
R2,Paris,48.86,2.35
R3,Lille,50.63,3.06
R4,Bordeaux,44.84,-0.58
R5,Marseille,43.30,5.37
";

fn main() -> mobnet::Result<()> {
    let registry = parse_node_registry(REGISTRY.as_bytes())?;
    let bounds = BoundingBox::new(-5.0, 42.0, 8.5, 51.5)?;
    let cells = voronoi(&registry, &bounds)?;
    let total: f64 = cells.iter().map(|c| c.area()).sum();
    for c in &cells {
        println!("{}: {} vertices, {:.2} sq deg", c.region_id, c.polygon.len() - 1, c.area());
    }
    println!("cells cover {total:.6} of {:.6} sq deg", bounds.area());
    Ok(())
}
