use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ingest::NodeRegistry;

/// Axis-aligned longitude/latitude box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min_lon: f64,
    pub min_lat: f64,
    pub max_lon: f64,
    pub max_lat: f64,
}

impl BoundingBox {
    pub fn new(min_lon: f64, min_lat: f64, max_lon: f64, max_lat: f64) -> Result<Self> {
        let finite = [min_lon, min_lat, max_lon, max_lat].iter().all(|v| v.is_finite());
        if !finite || min_lon >= max_lon || min_lat >= max_lat {
            return Err(Error::Argument(format!(
                "degenerate bounding box [{min_lon}, {max_lon}] x [{min_lat}, {max_lat}]"
            )));
        }
        Ok(Self {
            min_lon,
            min_lat,
            max_lon,
            max_lat,
        })
    }

    /// The sites' coordinate extent padded by 5% on every side (half a degree
    /// along an axis where all sites coincide).
    pub fn around(registry: &NodeRegistry) -> Result<Self> {
        if registry.is_empty() {
            return Err(Error::Argument("cannot bound an empty registry".into()));
        }
        let (mut min_lon, mut min_lat) = (f64::INFINITY, f64::INFINITY);
        let (mut max_lon, mut max_lat) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for s in registry {
            min_lon = min_lon.min(s.longitude);
            max_lon = max_lon.max(s.longitude);
            min_lat = min_lat.min(s.latitude);
            max_lat = max_lat.max(s.latitude);
        }
        let pad = |lo: f64, hi: f64| if hi > lo { 0.05 * (hi - lo) } else { 0.5 };
        let (pad_lon, pad_lat) = (pad(min_lon, max_lon), pad(min_lat, max_lat));
        Self::new(
            (min_lon - pad_lon).max(-180.0),
            (min_lat - pad_lat).max(-90.0),
            (max_lon + pad_lon).min(180.0),
            (max_lat + pad_lat).min(90.0),
        )
    }

    pub fn contains(&self, lon: f64, lat: f64) -> bool {
        (self.min_lon..=self.max_lon).contains(&lon) && (self.min_lat..=self.max_lat).contains(&lat)
    }

    /// Area in square degrees.
    pub fn area(&self) -> f64 {
        (self.max_lon - self.min_lon) * (self.max_lat - self.min_lat)
    }

    /// Equirectangular projection centred on the box's middle latitude.
    pub fn projection(&self) -> Equirectangular {
        let mid = 0.5 * (self.min_lat + self.max_lat);
        Equirectangular {
            lon_scale: mid.to_radians().cos().max(1e-6),
        }
    }
}

/// Planar projection `(lon, lat) -> (lon * cos(lat0), lat)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equirectangular {
    pub lon_scale: f64,
}

impl Equirectangular {
    pub fn project(&self, lon: f64, lat: f64) -> (f64, f64) {
        (lon * self.lon_scale, lat)
    }

    pub fn unproject(&self, x: f64, y: f64) -> (f64, f64) {
        (x / self.lon_scale, y)
    }
}

/// The Voronoi cell of one site clipped to the bounding box.
#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiCell {
    pub region_id: String,
    /// Closed counter-clockwise ring of `(lon, lat)` vertices.
    pub polygon: Vec<(f64, f64)>,
}

impl VoronoiCell {
    /// Shoelace area in square degrees.
    pub fn area(&self) -> f64 {
        0.5 * self
            .polygon
            .windows(2)
            .map(|w| w[0].0 * w[1].1 - w[1].0 * w[0].1)
            .sum::<f64>()
    }

    /// Point-in-convex-polygon test with boundary counted as inside.
    pub fn contains(&self, lon: f64, lat: f64) -> bool {
        let scale = self
            .polygon
            .iter()
            .fold(1.0f64, |m, &(x, y)| m.max(x.abs()).max(y.abs()));
        self.polygon.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            (b.0 - a.0) * (lat - a.1) - (b.1 - a.1) * (lon - a.0) >= -1e-12 * scale * scale
        })
    }
}

type Point = (f64, f64);

/// Voronoi tessellation of the registry's sites, one cell per site in
/// registry order, computed in an equirectangular projection and clipped to
/// `bounds`.
///
/// Each cell starts as the box and is cut by the bisector half-plane of every
/// other site, nearest first, until the remaining sites lie too far away to
/// reach it.
pub fn voronoi(registry: &NodeRegistry, bounds: &BoundingBox) -> Result<Vec<VoronoiCell>> {
    if registry.is_empty() {
        return Err(Error::Argument("voronoi needs at least one site".into()));
    }
    let mut seen = HashSet::with_capacity(registry.len());
    for s in registry {
        if !bounds.contains(s.longitude, s.latitude) {
            return Err(Error::Validation(format!(
                "site `{}` ({}, {}) lies outside the bounding box",
                s.region_id, s.longitude, s.latitude
            )));
        }
        if !seen.insert((s.longitude.to_bits(), s.latitude.to_bits())) {
            return Err(Error::Validation(format!(
                "site `{}` shares its coordinates with another site",
                s.region_id
            )));
        }
    }

    let proj = bounds.projection();
    let sites: Vec<Point> = registry
        .iter()
        .map(|s| proj.project(s.longitude, s.latitude))
        .collect();
    let (x0, y0) = proj.project(bounds.min_lon, bounds.min_lat);
    let (x1, y1) = proj.project(bounds.max_lon, bounds.max_lat);
    let frame = vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let tolerance = 1e-12 * (x1 - x0).abs().max((y1 - y0).abs()).max(1.0);

    registry
        .iter()
        .enumerate()
        .map(|(i, site)| {
            let polygon = cell_of(i, &sites, frame.clone(), tolerance);
            if polygon.len() < 3 {
                return Err(Error::Invariant(format!(
                    "voronoi cell of `{}` collapsed to {} vertices",
                    site.region_id,
                    polygon.len()
                )));
            }
            let mut ring: Vec<Point> = polygon.iter().map(|&(x, y)| proj.unproject(x, y)).collect();
            ring.push(ring[0]);
            Ok(VoronoiCell {
                region_id: site.region_id.clone(),
                polygon: ring,
            })
        })
        .collect()
}

fn cell_of(i: usize, sites: &[Point], mut polygon: Vec<Point>, tolerance: f64) -> Vec<Point> {
    let si = sites[i];
    let dist2 = |p: Point| (p.0 - si.0).powi(2) + (p.1 - si.1).powi(2);
    let mut others: Vec<(f64, usize)> = sites
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(j, &p)| (dist2(p), j))
        .collect();
    others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut reach2 = polygon.iter().map(|&p| dist2(p)).fold(0.0, f64::max);
    for (d2, j) in others {
        // A bisector at distance sqrt(d2)/2 cannot cut a cell of radius sqrt(reach2).
        if d2 > 4.0 * reach2 {
            break;
        }
        polygon = clip(&polygon, si, sites[j], tolerance);
        if polygon.is_empty() {
            break;
        }
        reach2 = polygon.iter().map(|&p| dist2(p)).fold(0.0, f64::max);
    }
    polygon
}

/// Keeps the part of convex `polygon` closer to `keep` than to `other`.
fn clip(polygon: &[Point], keep: Point, other: Point, tolerance: f64) -> Vec<Point> {
    let (dx, dy) = (other.0 - keep.0, other.1 - keep.1);
    let (mx, my) = (0.5 * (keep.0 + other.0), 0.5 * (keep.1 + other.1));
    let side = |p: Point| (p.0 - mx) * dx + (p.1 - my) * dy;

    let mut out: Vec<Point> = Vec::with_capacity(polygon.len() + 1);
    for (k, &a) in polygon.iter().enumerate() {
        let b = polygon[(k + 1) % polygon.len()];
        let (va, vb) = (side(a), side(b));
        if va <= 0.0 {
            push_distinct(&mut out, a, tolerance);
        }
        if (va <= 0.0) != (vb <= 0.0) {
            let t = va / (va - vb);
            push_distinct(&mut out, (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)), tolerance);
        }
    }
    if out.len() > 1 && near(out[0], out[out.len() - 1], tolerance) {
        out.pop();
    }
    out
}

fn near(a: Point, b: Point, tolerance: f64) -> bool {
    (a.0 - b.0).abs() <= tolerance && (a.1 - b.1).abs() <= tolerance
}

fn push_distinct(out: &mut Vec<Point>, p: Point, tolerance: f64) {
    if out.last().is_none_or(|&q| !near(p, q, tolerance)) {
        out.push(p);
    }
}
