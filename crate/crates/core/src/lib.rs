//! Mobility-network analysis over origin-destination flows.
//!
//! The pipeline turns 8-hour flow records into weighted directed graphs,
//! tracks their weak connectivity and shortest-path efficiency over time,
//! and models mobility restrictions as weight-ordered bond percolation:
//!
//! - [`ingest`]: flow and registry CSVs, time windows, synthetic datasets.
//! - [`graph`]: graph aggregation, weakly connected components.
//! - [`metrics`]: reciprocal-weight shortest paths, global and nodal
//!   efficiency, Gini index.
//! - [`percolation`]: increasing/decreasing sweeps, node persistence,
//!   weekly overlay points.
//! - [`geo`]: Voronoi cells and GeoJSON export.
//! - [`report`]: CSV writers for every output table.
//! - [`cli`]: the `mobnet` command-line front end.
//!
//! ```
//! use mobnet::ingest::{generate_synthetic, Archetype, ArchetypeParams};
//! use mobnet::graph::{build_graph, weak_components};
//! use mobnet::ingest::TimeWindow;
//! use mobnet::percolation::{node_persistence, SweepDirection};
//!
//! let mut params = ArchetypeParams::new(Archetype::Star { hub_count: 3 }, 13, 7);
//! params.days = 1;
//! let data = generate_synthetic(&params).unwrap();
//! let day = TimeWindow::day(params.start_date);
//! let graph = build_graph(&data.records, &day, &data.registry).unwrap();
//! assert_eq!(graph.edge_count(), 24);
//! assert_eq!(weak_components(&graph).lwcc_size(), 13);
//!
//! let rho = node_persistence(&graph, SweepDirection::Increasing).unwrap();
//! assert_eq!(rho.len(), 13);
//! ```

pub mod cli;
pub mod error;
pub mod geo;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod percolation;
pub mod report;

pub use error::{Error, Result};
pub use graph::{build_graph, daily_series, weak_components, MobilityGraph};
pub use ingest::{FlowRecord, NodeRegistry, NodeSite, TimeWindow};
pub use metrics::{efficiency, gini, EfficiencyReport};
pub use percolation::{node_persistence, percolation_sweep, PercolationTrace, PersistenceMap, SweepDirection};
