//! Deterministic synthetic mobility datasets.
//!
//! Three archetypes reproduce the qualitative national structures the
//! toolkit is meant to study:
//!
//! - [`Archetype::Star`]: one national hub joined to satellite hubs by heavy
//!   long-range trunks. Each satellite anchors small localities through a
//!   class of minimal-flow links that all share one floor weight, and the
//!   members of a locality hang off its centre with light local links.
//! - [`Archetype::MultiCluster`]: dense regional blocks joined by a few
//!   moderate bridges.
//! - [`Archetype::CorePeriphery`]: a complete core carrying the heaviest
//!   flows (a rich club) with every periphery node tied to two or three core
//!   nodes by light links.
//!
//! Every undirected link is emitted in both directions with independent
//! weights. Weights are log-normal around a per-class median and clamped to
//! a per-class band, so classes never overlap. Each simulated day yields one
//! record per edge and 8-hour window.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use chrono::{Datelike, Duration, NaiveDate, Weekday};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};

use crate::error::{Error, Result};
use crate::ingest::window::midnight;
use crate::ingest::{FlowRecord, NodeRegistry, NodeSite};

const CENTER_LAT: f64 = 46.0;
const CENTER_LON: f64 = 2.0;

/// Share of a day's flow observed in the 00:00, 08:00 and 16:00 windows.
const WINDOW_SHARES: [(u32, f64); 3] = [(0, 0.2), (8, 0.5), (16, 0.3)];
const WEEKEND_FACTOR: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Archetype {
    Star { hub_count: usize },
    MultiCluster { cluster_count: usize },
    CorePeriphery { core_size: usize },
}

impl Archetype {
    pub fn name(&self) -> &'static str {
        match self {
            Archetype::Star { .. } => "star",
            Archetype::MultiCluster { .. } => "multi_cluster",
            Archetype::CorePeriphery { .. } => "core_periphery",
        }
    }

    /// Smallest node count the archetype can be laid out on.
    pub fn minimum_nodes(&self) -> usize {
        match *self {
            Archetype::Star { hub_count } => hub_count + 1,
            Archetype::MultiCluster { cluster_count } => cluster_count,
            Archetype::CorePeriphery { core_size } => core_size,
        }
    }

    fn group_count(&self) -> usize {
        match *self {
            Archetype::Star { hub_count: g }
            | Archetype::MultiCluster { cluster_count: g }
            | Archetype::CorePeriphery { core_size: g } => g,
        }
    }
}

/// Post-lockdown behaviour of a synthetic dataset: from `date` on, the
/// weakest `removed_fraction` of edges disappear and the survivors keep
/// `1 - removed_fraction` of their flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticLockdown {
    pub date: NaiveDate,
    pub removed_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchetypeParams {
    pub archetype: Archetype,
    pub node_count: usize,
    pub weight_scale: f64,
    pub seed: u64,
    pub start_date: NaiveDate,
    pub days: u32,
    pub lockdown: Option<SyntheticLockdown>,
}

impl ArchetypeParams {
    /// Four weeks starting Monday 2020-02-24, unit weight scale, no lockdown.
    pub fn new(archetype: Archetype, node_count: usize, seed: u64) -> Self {
        Self {
            archetype,
            node_count,
            weight_scale: 1.0,
            seed,
            start_date: NaiveDate::from_ymd_opt(2020, 2, 24).expect("valid date"),
            days: 28,
            lockdown: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.archetype.group_count() == 0 {
            return Err(Error::Argument(format!(
                "{}: group count must be positive",
                self.archetype.name()
            )));
        }
        if self.node_count < self.archetype.minimum_nodes() {
            return Err(Error::Argument(format!(
                "{}: node_count {} below structural minimum {}",
                self.archetype.name(),
                self.node_count,
                self.archetype.minimum_nodes()
            )));
        }
        if !(self.weight_scale.is_finite() && self.weight_scale > 0.0) {
            return Err(Error::Argument(format!(
                "weight_scale {} must be positive",
                self.weight_scale
            )));
        }
        if self.days == 0 {
            return Err(Error::Argument("days must be at least 1".into()));
        }
        if let Some(l) = self.lockdown {
            if !(0.0..1.0).contains(&l.removed_fraction) {
                return Err(Error::Argument(format!(
                    "lockdown removed_fraction {} outside [0, 1)",
                    l.removed_fraction
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticDataset {
    pub registry: NodeRegistry,
    pub records: Vec<FlowRecord>,
}

#[derive(Debug, Clone, Copy)]
enum WeightClass {
    Fixed(f64),
    LogNormal {
        median: f64,
        sigma: f64,
        lo: f64,
        hi: f64,
    },
}

impl WeightClass {
    fn draw(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            WeightClass::Fixed(w) => w,
            WeightClass::LogNormal {
                median,
                sigma,
                lo,
                hi,
            } => {
                let dist = LogNormal::new(median.ln(), sigma).expect("valid log-normal");
                dist.sample(rng).clamp(lo, hi)
            }
        }
    }
}

const TRUNK: WeightClass = WeightClass::LogNormal {
    median: 10.0,
    sigma: 0.3,
    lo: 5.0,
    hi: 50.0,
};
const LOCAL: WeightClass = WeightClass::LogNormal {
    median: 1.0,
    sigma: 0.4,
    lo: 0.3,
    hi: 4.0,
};
const FLOOR: WeightClass = WeightClass::Fixed(0.1);
const INTRA: WeightClass = WeightClass::LogNormal {
    median: 3.0,
    sigma: 0.5,
    lo: 1.0,
    hi: 10.0,
};
const BRIDGE: WeightClass = WeightClass::LogNormal {
    median: 1.5,
    sigma: 0.4,
    lo: 0.5,
    hi: 5.0,
};
const CORE: WeightClass = WeightClass::LogNormal {
    median: 20.0,
    sigma: 0.3,
    lo: 10.0,
    hi: 100.0,
};
const PERIPHERY: WeightClass = WeightClass::LogNormal {
    median: 1.0,
    sigma: 0.5,
    lo: 0.1,
    hi: 5.0,
};

struct Layout {
    rng: ChaCha8Rng,
    coords: Vec<(f64, f64)>,
    names: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
    pairs: BTreeSet<(usize, usize)>,
}

impl Layout {
    fn new(seed: u64, node_count: usize) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            coords: vec![(CENTER_LAT, CENTER_LON); node_count],
            names: vec![String::new(); node_count],
            edges: Vec::new(),
            pairs: BTreeSet::new(),
        }
    }

    /// Adds `a <-> b` unless the pair already exists.
    fn link(&mut self, a: usize, b: usize, class: WeightClass) {
        if a == b || !self.pairs.insert((a.min(b), a.max(b))) {
            return;
        }
        let forward = class.draw(&mut self.rng);
        let backward = class.draw(&mut self.rng);
        self.edges.push((a, b, forward));
        self.edges.push((b, a, backward));
    }

    fn place(&mut self, node: usize, around: (f64, f64), angle: f64, radius: f64) {
        self.coords[node] = (around.0 + radius * angle.sin(), around.1 + radius * angle.cos());
    }

    fn jitter(&mut self, node: usize, around: (f64, f64), sd: f64) {
        let noise = Normal::new(0.0, sd).expect("valid normal");
        let dlat = noise.sample(&mut self.rng);
        let dlon = noise.sample(&mut self.rng);
        self.coords[node] = (around.0 + dlat, around.1 + dlon);
    }
}

pub fn generate_synthetic(params: &ArchetypeParams) -> Result<SyntheticDataset> {
    params.validate()?;
    let n = params.node_count;
    let mut layout = Layout::new(params.seed, n);

    match params.archetype {
        Archetype::Star { hub_count } => star(&mut layout, n, hub_count),
        Archetype::MultiCluster { cluster_count } => multi_cluster(&mut layout, n, cluster_count),
        Archetype::CorePeriphery { core_size } => core_periphery(&mut layout, n, core_size),
    }

    let width = n.to_string().len().max(4);
    let sites = layout
        .coords
        .iter()
        .zip(&layout.names)
        .enumerate()
        .map(|(i, (&(lat, lon), name))| NodeSite {
            region_id: format!("R{i:0width$}"),
            name: name.clone(),
            latitude: lat.clamp(-89.9, 89.9),
            longitude: lon.clamp(-179.9, 179.9),
        })
        .collect();
    let registry = NodeRegistry::new(sites)?;

    let edges: Vec<(usize, usize, f64)> = layout
        .edges
        .iter()
        .map(|&(a, b, w)| (a, b, w * params.weight_scale))
        .collect();
    let records = emit_records(&registry, &edges, params);
    Ok(SyntheticDataset { registry, records })
}

fn star(layout: &mut Layout, n: usize, hubs: usize) {
    let centre = (CENTER_LAT, CENTER_LON);
    layout.names[0] = "Hub".into();
    for s in 1..=hubs {
        layout.names[s] = format!("Satellite {s}");
        let angle = TAU * (s - 1) as f64 / hubs as f64;
        layout.place(s, centre, angle, 3.0);
        layout.link(0, s, TRUNK);
    }

    // Leaves are dealt round-robin to satellites; within a satellite, every
    // third leaf opens a new locality and the next two join it.
    for k in 0..n - hubs - 1 {
        let node = hubs + 1 + k;
        let satellite = 1 + k % hubs;
        let rank = k / hubs;
        if rank.is_multiple_of(3) {
            layout.names[node] = format!("Locality {node}");
            let angle = layout.rng.random_range(0.0..TAU);
            let radius = layout.rng.random_range(0.6..1.2);
            let anchor = layout.coords[satellite];
            layout.place(node, anchor, angle, radius);
            layout.link(satellite, node, FLOOR);
        } else {
            let centre_node = hubs + 1 + (rank - rank % 3) * hubs + k % hubs;
            layout.names[node] = format!("Village {node}");
            let anchor = layout.coords[centre_node];
            layout.jitter(node, anchor, 0.1);
            layout.link(centre_node, node, LOCAL);
        }
    }
}

fn multi_cluster(layout: &mut Layout, n: usize, clusters: usize) {
    let radius = if clusters == 1 {
        0.0
    } else {
        2.0 + 0.5 * clusters as f64
    };
    let mut members: Vec<Vec<usize>> = Vec::with_capacity(clusters);
    let mut next = 0;
    for c in 0..clusters {
        let size = n / clusters + usize::from(c < n % clusters);
        let centre = (
            CENTER_LAT + radius * (TAU * c as f64 / clusters as f64).sin(),
            CENTER_LON + radius * (TAU * c as f64 / clusters as f64).cos(),
        );
        let block: Vec<usize> = (next..next + size).collect();
        next += size;
        for (rank, &node) in block.iter().enumerate() {
            layout.names[node] = format!("Cluster {} site {}", c + 1, rank + 1);
            layout.jitter(node, centre, 0.35);
        }
        for pair in block.windows(2) {
            layout.link(pair[0], pair[1], INTRA);
        }
        for i in 0..block.len() {
            for j in i + 2..block.len() {
                if layout.rng.random_bool(0.3) {
                    layout.link(block[i], block[j], INTRA);
                }
            }
        }
        members.push(block);
    }

    for a in 0..clusters {
        for b in a + 1..clusters {
            for _ in 0..2 {
                let u = members[a][layout.rng.random_range(0..members[a].len())];
                let v = members[b][layout.rng.random_range(0..members[b].len())];
                layout.link(u, v, BRIDGE);
            }
        }
    }
}

fn core_periphery(layout: &mut Layout, n: usize, core: usize) {
    let centre = (CENTER_LAT, CENTER_LON);
    for i in 0..core {
        layout.names[i] = format!("Core {}", i + 1);
        let angle = TAU * i as f64 / core as f64;
        let radius = layout.rng.random_range(0.3..0.8);
        layout.place(i, centre, angle, radius);
    }
    for i in 0..core {
        for j in i + 1..core {
            layout.link(i, j, CORE);
        }
    }
    for p in core..n {
        layout.names[p] = format!("Periphery {}", p - core + 1);
        let angle = layout.rng.random_range(0.0..TAU);
        let radius = 1.5 + 3.5 * layout.rng.random::<f64>().sqrt();
        layout.place(p, centre, angle, radius);
        let ties = core.min(layout.rng.random_range(2..=3));
        let anchors = sample(&mut layout.rng, core, ties).into_vec();
        for anchor in anchors {
            layout.link(anchor, p, PERIPHERY);
        }
    }
}

fn emit_records(
    registry: &NodeRegistry,
    edges: &[(usize, usize, f64)],
    params: &ArchetypeParams,
) -> Vec<FlowRecord> {
    let mut dropped = vec![false; edges.len()];
    if let Some(lockdown) = params.lockdown {
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by(|&a, &b| edges[a].2.total_cmp(&edges[b].2).then(a.cmp(&b)));
        let cut = (lockdown.removed_fraction * edges.len() as f64).floor() as usize;
        for &e in &order[..cut] {
            dropped[e] = true;
        }
    }

    let sites = registry.sites();
    let mut records = Vec::with_capacity(edges.len() * 3 * params.days as usize);
    for d in 0..params.days {
        let date = params.start_date + Duration::days(i64::from(d));
        let mut factor = match date.weekday() {
            Weekday::Sat | Weekday::Sun => WEEKEND_FACTOR,
            _ => 1.0,
        };
        let locked = params.lockdown.filter(|l| date >= l.date);
        if let Some(l) = locked {
            factor *= 1.0 - l.removed_fraction;
        }
        for (hour, share) in WINDOW_SHARES {
            let window_start = midnight(date) + Duration::hours(i64::from(hour));
            for (e, &(a, b, w)) in edges.iter().enumerate() {
                if locked.is_some() && dropped[e] {
                    continue;
                }
                records.push(FlowRecord {
                    origin_id: sites[a].region_id.clone(),
                    destination_id: sites[b].region_id.clone(),
                    window_start,
                    weight: w * factor * share,
                });
            }
        }
    }
    records
}
