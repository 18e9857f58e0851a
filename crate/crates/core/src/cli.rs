//! Command-line orchestration of the full pipeline.
//!
//! Every subcommand reads its inputs, runs the library operations and writes
//! the CSV / GeoJSON contracts into an output directory. Options come from
//! flags and, for the analysis commands, from an optional JSON config file
//! whose values the flags override.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geo::{cells_to_geojson, export_persistence_geojson, voronoi, write_geojson, BoundingBox};
use crate::graph::{build_graph, daily_series, weak_components, write_edge_list, MobilityGraph};
use crate::ingest::{
    generate_synthetic, read_flow_file, read_registry_file, write_flow_records, write_node_registry,
    Archetype, ArchetypeParams, FlowRecord, NodeRegistry, SyntheticLockdown, TimeWindow,
};
use crate::metrics::{efficiency, gini, normalize_series};
use crate::percolation::{empirical_overlay, node_persistence, percolation_sweep, SweepDirection};
use crate::report::{
    read_persistence, write_aggregates, write_connectivity, write_efficiency, write_overlay,
    write_persistence, write_trace, AggregateRow, ConnectivityRow, EfficiencyRow,
};

const DEFAULT_WINDOW_DAYS: u32 = 14;

#[derive(Debug, Parser)]
#[command(name = "mobnet", version, about = "Mobility-network connectivity, efficiency and percolation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Daily connectivity and efficiency time series.
    Metrics(RunArgs),
    /// Percolation sweeps, node persistence, overlay and persistence map.
    Percolate(RunArgs),
    /// Weekly networks against the pre-lockdown aggregate.
    Overlay(RunArgs),
    /// Write a synthetic flow dataset and registry.
    Synth(SynthArgs),
    /// Voronoi cells of the registry as GeoJSON.
    Voronoi(VoronoiArgs),
    /// Validate a flow file against a registry and print a summary.
    IngestCheck(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionArg {
    Increasing,
    Decreasing,
    Both,
}

impl DirectionArg {
    fn directions(self) -> Vec<SweepDirection> {
        match self {
            DirectionArg::Increasing => vec![SweepDirection::Increasing],
            DirectionArg::Decreasing => vec![SweepDirection::Decreasing],
            DirectionArg::Both => SweepDirection::ALL.to_vec(),
        }
    }
}

/// Countries with a known pre/post lockdown window length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Country {
    France,
    Italy,
    Uk,
}

impl Country {
    pub fn window_days(self) -> u32 {
        match self {
            Country::France => 12,
            Country::Uk => 13,
            Country::Italy => 14,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub flows: Option<PathBuf>,
    #[arg(long)]
    pub registry: Option<PathBuf>,
    /// ISO date, interpreted in UTC.
    #[arg(long)]
    pub lockdown_date: Option<NaiveDate>,
    #[arg(long)]
    pub pre_days: Option<u32>,
    #[arg(long)]
    pub post_days: Option<u32>,
    /// Sets the default window length when --pre-days/--post-days are absent.
    #[arg(long, value_enum)]
    pub country: Option<Country>,
    #[arg(long, value_enum)]
    pub direction: Option<DirectionArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON file with any of the options above (snake_case keys).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    flows: Option<PathBuf>,
    registry: Option<PathBuf>,
    lockdown_date: Option<NaiveDate>,
    pre_days: Option<u32>,
    post_days: Option<u32>,
    country: Option<Country>,
    direction: Option<DirectionArg>,
    out: Option<PathBuf>,
    seed: Option<u64>,
}

/// Fully resolved options of an analysis run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub flows: Option<PathBuf>,
    pub registry: Option<PathBuf>,
    pub lockdown_date: Option<NaiveDate>,
    pub pre_days: u32,
    pub post_days: u32,
    pub directions: Vec<SweepDirection>,
    pub out: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(args: &RunArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                serde_json::from_str::<ConfigFile>(&text)?
            }
            None => ConfigFile::default(),
        };
        let country = args.country.or(file.country);
        let default_days = country.map_or(DEFAULT_WINDOW_DAYS, Country::window_days);
        let config = Self {
            flows: args.flows.clone().or(file.flows),
            registry: args.registry.clone().or(file.registry),
            lockdown_date: args.lockdown_date.or(file.lockdown_date),
            pre_days: args.pre_days.or(file.pre_days).unwrap_or(default_days),
            post_days: args.post_days.or(file.post_days).unwrap_or(default_days),
            directions: args
                .direction
                .or(file.direction)
                .unwrap_or(DirectionArg::Both)
                .directions(),
            out: args.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from("out")),
            seed: args.seed.or(file.seed).unwrap_or(0),
        };
        if config.pre_days == 0 || config.post_days == 0 {
            return Err(Error::Argument("window lengths must be at least one day".into()));
        }
        Ok(config)
    }

    fn inputs(&self) -> Result<(NodeRegistry, Vec<FlowRecord>)> {
        let registry_path = self
            .registry
            .as_ref()
            .ok_or_else(|| Error::Argument("missing --registry".into()))?;
        let flows_path = self
            .flows
            .as_ref()
            .ok_or_else(|| Error::Argument("missing --flows".into()))?;
        Ok((read_registry_file(registry_path)?, read_flow_file(flows_path)?))
    }

    fn lockdown(&self) -> Result<NaiveDate> {
        self.lockdown_date
            .ok_or_else(|| Error::Argument("missing --lockdown-date".into()))
    }

    pub fn pre_window(&self) -> Result<TimeWindow> {
        TimeWindow::days_before(self.lockdown()?, self.pre_days)
    }

    pub fn post_window(&self) -> Result<TimeWindow> {
        TimeWindow::days(self.lockdown()?, self.post_days)
    }

    fn output(&self, name: &str) -> Result<(PathBuf, BufWriter<File>)> {
        fs::create_dir_all(&self.out).map_err(|e| Error::io(&self.out, e))?;
        create(&self.out.join(name))
    }
}

fn create(path: &Path) -> Result<(PathBuf, BufWriter<File>)> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok((path.to_owned(), BufWriter::new(file)))
}

fn written(path: &Path, mut w: BufWriter<File>) -> Result<PathBuf> {
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(path.to_owned())
}

/// Writes `connectivity.csv` and `efficiency.csv`, plus
/// `lockdown_aggregates.csv` when a lockdown date is configured.
pub fn cmd_metrics(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let (registry, records) = config.inputs()?;
    let series = daily_series(&records, &registry)?;
    if series.is_empty() {
        return Err(Error::Validation("flow file holds no records".into()));
    }

    let mut connectivity = Vec::with_capacity(series.len());
    let mut measured = Vec::with_capacity(series.len());
    for (date, graph) in &series {
        let components = weak_components(graph);
        connectivity.push(ConnectivityRow {
            date: *date,
            num_wcc: components.component_count(),
            lwcc_size: components.lwcc_size(),
        });
        measured.push(if graph.node_count() >= 2 {
            let report = efficiency(graph)?;
            let spread = gini(&report.nodal)?;
            (report.global, Some(spread))
        } else {
            (0.0, None)
        });
    }
    let globals: Vec<f64> = measured.iter().map(|m| m.0).collect();
    let normalized = normalize_series(&globals)?;
    let efficiency_rows: Vec<EfficiencyRow> = series
        .iter()
        .zip(measured.iter().zip(&normalized))
        .map(|((date, _), (&(global, gini), &norm))| EfficiencyRow {
            date: *date,
            global_efficiency: global,
            normalized_efficiency: norm,
            gini_nodal_efficiency: gini,
        })
        .collect();

    let mut files = Vec::new();
    let (path, mut w) = config.output("connectivity.csv")?;
    write_connectivity(&connectivity, &mut w)?;
    files.push(written(&path, w)?);
    let (path, mut w) = config.output("efficiency.csv")?;
    write_efficiency(&efficiency_rows, &mut w)?;
    files.push(written(&path, w)?);

    if config.lockdown_date.is_some() {
        let rows = [
            aggregate("pre", &records, &config.pre_window()?, &registry)?,
            aggregate("post", &records, &config.post_window()?, &registry)?,
        ];
        let (path, mut w) = config.output("lockdown_aggregates.csv")?;
        write_aggregates(&rows, &mut w)?;
        files.push(written(&path, w)?);
    }
    Ok(files)
}

fn aggregate(period: &str, records: &[FlowRecord], window: &TimeWindow, registry: &NodeRegistry) -> Result<AggregateRow> {
    let graph = build_graph(records, window, registry)?;
    let components = weak_components(&graph);
    let global_efficiency = if graph.node_count() >= 2 {
        efficiency(&graph)?.global
    } else {
        0.0
    };
    Ok(AggregateRow {
        period: period.to_owned(),
        num_wcc: components.component_count(),
        lwcc_size: components.lwcc_size(),
        num_edges: graph.edge_count(),
        global_efficiency,
    })
}

fn baseline(config: &RunConfig, registry: &NodeRegistry, records: &[FlowRecord]) -> Result<(TimeWindow, MobilityGraph)> {
    let window = config.pre_window()?;
    let graph = build_graph(records, &window, registry)?;
    if graph.edge_count() == 0 {
        return Err(Error::Argument(format!(
            "pre-lockdown window {window} holds no flows; check --lockdown-date and --pre-days"
        )));
    }
    Ok((window, graph))
}

/// Writes one `trace_<direction>.csv` per sweep direction, the increasing
/// sweep's `persistence.csv` and `persistence.geojson`, `overlay.csv`, and the
/// pre-lockdown aggregate as `baseline_edges.csv` / `baseline_edges.json`.
pub fn cmd_percolate(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let (registry, records) = config.inputs()?;
    let lockdown = config.lockdown()?;
    let (window, graph) = baseline(config, &registry, &records)?;
    let mut files = Vec::new();

    for &direction in &config.directions {
        let trace = percolation_sweep(&graph, direction)?;
        let (path, mut w) = config.output(&format!("trace_{direction}.csv"))?;
        write_trace(&trace, &mut w)?;
        files.push(written(&path, w)?);
    }

    let persistence = node_persistence(&graph, SweepDirection::Increasing)?;
    let (path, mut w) = config.output("persistence.csv")?;
    write_persistence(&persistence, &mut w)?;
    files.push(written(&path, w)?);

    let overlay = empirical_overlay(&records, &registry, lockdown, &window)?;
    let (path, mut w) = config.output("overlay.csv")?;
    write_overlay(&overlay, &mut w)?;
    files.push(written(&path, w)?);

    let cells = voronoi(&registry, &BoundingBox::around(&registry)?)?;
    let doc = export_persistence_geojson(&cells, &persistence)?;
    let (path, mut w) = config.output("persistence.geojson")?;
    write_geojson(&doc, &mut w)?;
    files.push(written(&path, w)?);

    let (path, mut w) = config.output("baseline_edges.csv")?;
    let sidecar = write_edge_list(&graph, &mut w)?;
    files.push(written(&path, w)?);
    let (path, mut w) = config.output("baseline_edges.json")?;
    serde_json::to_writer_pretty(&mut w, &sidecar)?;
    files.push(written(&path, w)?);

    Ok(files)
}

pub fn cmd_overlay(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let (registry, records) = config.inputs()?;
    let (window, _) = baseline(config, &registry, &records)?;
    let overlay = empirical_overlay(&records, &registry, config.lockdown()?, &window)?;
    let (path, mut w) = config.output("overlay.csv")?;
    write_overlay(&overlay, &mut w)?;
    Ok(vec![written(&path, w)?])
}

/// Summary of a validated input pair.
#[derive(Debug, Clone, PartialEq)]
pub struct IngestSummary {
    pub sites: usize,
    pub records: usize,
    pub zero_weight_records: usize,
    pub first_window: Option<String>,
    pub last_window: Option<String>,
    pub days: usize,
}

pub fn cmd_ingest_check(config: &RunConfig) -> Result<IngestSummary> {
    let (registry, records) = config.inputs()?;
    if let Some(r) = records
        .iter()
        .find(|r| !registry.contains(&r.origin_id) || !registry.contains(&r.destination_id))
    {
        let id = if registry.contains(&r.origin_id) {
            &r.destination_id
        } else {
            &r.origin_id
        };
        return Err(Error::Validation(format!("record references unknown region `{id}`")));
    }
    let first = records.iter().map(|r| r.window_start).min();
    let last = records.iter().map(|r| r.window_start).max();
    let days: std::collections::BTreeSet<NaiveDate> =
        records.iter().map(|r| r.window_start.date_naive()).collect();
    Ok(IngestSummary {
        sites: registry.len(),
        records: records.len(),
        zero_weight_records: records.iter().filter(|r| r.weight == 0.0).count(),
        first_window: first.map(crate::ingest::format_timestamp),
        last_window: last.map(crate::ingest::format_timestamp),
        days: days.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArchetypeArg {
    Star,
    #[value(name = "multi_cluster", alias = "multi-cluster")]
    MultiCluster,
    #[value(name = "core_periphery", alias = "core-periphery")]
    CorePeriphery,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub archetype: ArchetypeArg,
    #[arg(long = "nodes")]
    pub node_count: usize,
    /// Satellite hubs of the star archetype.
    #[arg(long, default_value_t = 8)]
    pub hub_count: usize,
    #[arg(long, default_value_t = 4)]
    pub cluster_count: usize,
    #[arg(long, default_value_t = 15)]
    pub core_size: usize,
    #[arg(long, default_value_t = 1.0)]
    pub weight_scale: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value = "2020-02-24")]
    pub start_date: NaiveDate,
    #[arg(long, default_value_t = 28)]
    pub days: u32,
    /// From this date on, thin the network as a lockdown would.
    #[arg(long)]
    pub lockdown_date: Option<NaiveDate>,
    /// Share of weakest edges removed after the lockdown date.
    #[arg(long, default_value_t = 0.3)]
    pub removed_fraction: f64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

impl SynthArgs {
    pub fn params(&self) -> ArchetypeParams {
        let archetype = match self.archetype {
            ArchetypeArg::Star => Archetype::Star {
                hub_count: self.hub_count,
            },
            ArchetypeArg::MultiCluster => Archetype::MultiCluster {
                cluster_count: self.cluster_count,
            },
            ArchetypeArg::CorePeriphery => Archetype::CorePeriphery {
                core_size: self.core_size,
            },
        };
        ArchetypeParams {
            archetype,
            node_count: self.node_count,
            weight_scale: self.weight_scale,
            seed: self.seed,
            start_date: self.start_date,
            days: self.days,
            lockdown: self.lockdown_date.map(|date| SyntheticLockdown {
                date,
                removed_fraction: self.removed_fraction,
            }),
        }
    }
}

/// Writes `flows.csv` and `registry.csv` into `out`.
pub fn cmd_synth(params: &ArchetypeParams, out: &Path) -> Result<Vec<PathBuf>> {
    let dataset = generate_synthetic(params)?;
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let (flows, mut w) = create(&out.join("flows.csv"))?;
    write_flow_records(&dataset.records, &mut w)?;
    let flows = written(&flows, w)?;
    let (registry, mut w) = create(&out.join("registry.csv"))?;
    write_node_registry(&dataset.registry, &mut w)?;
    let registry = written(&registry, w)?;
    Ok(vec![flows, registry])
}

#[derive(Debug, Clone, Args)]
pub struct VoronoiArgs {
    #[arg(long)]
    pub registry: PathBuf,
    /// Optional `region_id,persistence` CSV to attach to the cells.
    #[arg(long)]
    pub persistence: Option<PathBuf>,
    /// `min_lon,min_lat,max_lon,max_lat`; defaults to the padded site extent.
    #[arg(long, value_delimiter = ',', num_args = 4, allow_negative_numbers = true)]
    pub bbox: Option<Vec<f64>>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// Writes `voronoi.geojson`.
pub fn cmd_voronoi(args: &VoronoiArgs) -> Result<PathBuf> {
    let registry = read_registry_file(&args.registry)?;
    let bounds = match args.bbox.as_deref() {
        Some(&[a, b, c, d]) => BoundingBox::new(a, b, c, d)?,
        Some(_) => return Err(Error::Argument("--bbox takes four numbers".into())),
        None => BoundingBox::around(&registry)?,
    };
    let persistence = args
        .persistence
        .as_ref()
        .map(|p| read_persistence(crate::ingest::open(p)?))
        .transpose()?;
    let cells = voronoi(&registry, &bounds)?;
    let doc = cells_to_geojson(&cells, persistence.as_ref())?;
    fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let (path, mut w) = create(&args.out.join("voronoi.geojson"))?;
    write_geojson(&doc, &mut w)?;
    written(&path, w)
}

fn report(files: Vec<PathBuf>) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Metrics(args) => report(cmd_metrics(&RunConfig::resolve(&args)?)?),
        Command::Percolate(args) => report(cmd_percolate(&RunConfig::resolve(&args)?)?),
        Command::Overlay(args) => report(cmd_overlay(&RunConfig::resolve(&args)?)?),
        Command::Synth(args) => report(cmd_synth(&args.params(), &args.out)?),
        Command::Voronoi(args) => report(vec![cmd_voronoi(&args)?]),
        Command::IngestCheck(args) => {
            let s = cmd_ingest_check(&RunConfig::resolve(&args)?)?;
            println!("sites: {}", s.sites);
            println!("records: {} ({} zero-weight)", s.records, s.zero_weight_records);
            println!("days: {}", s.days);
            if let (Some(first), Some(last)) = (s.first_window, s.last_window) {
                println!("windows: {first} .. {last}");
            }
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
