//! Voronoi tessellation of sites and GeoJSON export.

mod voronoi;

use std::io::Write;

use serde_json::{json, Value};

pub use voronoi::{voronoi, BoundingBox, Equirectangular, VoronoiCell};

use crate::error::{Error, Result};
use crate::percolation::PersistenceMap;

/// RFC 7946 FeatureCollection with one Polygon per cell, carrying
/// `region_id` and `persistence` (0 for regions the map does not cover).
pub fn export_persistence_geojson(cells: &[VoronoiCell], persistence: &PersistenceMap) -> Result<Value> {
    cells_to_geojson(cells, Some(persistence))
}

/// Like [`export_persistence_geojson`]; without a map, features carry only
/// `region_id`.
pub fn cells_to_geojson(cells: &[VoronoiCell], persistence: Option<&PersistenceMap>) -> Result<Value> {
    let features = cells
        .iter()
        .map(|cell| {
            check_ring(cell)?;
            let ring: Vec<[f64; 2]> = cell.polygon.iter().map(|&(lon, lat)| [lon, lat]).collect();
            let mut properties = json!({ "region_id": cell.region_id });
            if let Some(map) = persistence {
                properties["persistence"] = json!(map.value_or_zero(&cell.region_id));
            }
            Ok(json!({
                "type": "Feature",
                "properties": properties,
                "geometry": { "type": "Polygon", "coordinates": [ring] },
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    Ok(json!({ "type": "FeatureCollection", "features": features }))
}

fn check_ring(cell: &VoronoiCell) -> Result<()> {
    let ring = &cell.polygon;
    let closed = ring.len() >= 4 && ring.first() == ring.last();
    let finite = ring.iter().all(|(x, y)| x.is_finite() && y.is_finite());
    if closed && finite {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "cell `{}` is not a closed ring of at least 3 finite vertices",
            cell.region_id
        )))
    }
}

pub fn write_geojson<W: Write>(doc: &Value, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, doc)?;
    writeln!(out).map_err(|e| Error::io("<geojson output>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(id: &str, x: f64) -> VoronoiCell {
        VoronoiCell {
            region_id: id.into(),
            polygon: vec![(x, 0.0), (x + 1.0, 0.0), (x + 1.0, 1.0), (x, 1.0), (x, 0.0)],
        }
    }

    #[test]
    fn features_carry_persistence() {
        let map = PersistenceMap::from_entries(vec![("A".into(), 1.0), ("B".into(), 0.5)]);
        let doc = export_persistence_geojson(&[square("A", 0.0), square("B", 1.0)], &map).unwrap();
        assert_eq!(doc["type"], "FeatureCollection");
        let features = doc["features"].as_array().unwrap();
        assert_eq!(features.len(), 2);
        assert_eq!(features[0]["properties"]["persistence"], 1.0);
        assert_eq!(features[1]["properties"]["persistence"], 0.5);
        assert_eq!(features[1]["geometry"]["type"], "Polygon");
        assert_eq!(features[1]["geometry"]["coordinates"][0][1][0], 2.0);
    }

    #[test]
    fn empty_collection() {
        let doc = export_persistence_geojson(&[], &PersistenceMap::default()).unwrap();
        assert_eq!(doc["features"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn missing_entry_defaults_to_zero() {
        let doc = export_persistence_geojson(&[square("Z", 0.0)], &PersistenceMap::default()).unwrap();
        assert_eq!(doc["features"][0]["properties"]["persistence"], 0.0);
    }

    #[test]
    fn open_ring_is_an_invariant_failure() {
        let mut cell = square("A", 0.0);
        cell.polygon.pop();
        assert!(matches!(
            export_persistence_geojson(&[cell], &PersistenceMap::default()),
            Err(Error::Invariant(_))
        ));
    }
}
