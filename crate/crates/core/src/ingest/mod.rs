//! Flow records, node registries and synthetic datasets.

pub(crate) mod flow;
mod registry;
pub mod synth;
mod window;

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

pub use flow::{
    parse_flow_records, parse_window_start, write_flow_records, FlowRecord, FLOW_HEADER,
    OBSERVATION_HOURS,
};
pub(crate) use flow::format_timestamp;
pub use registry::{parse_node_registry, write_node_registry, NodeRegistry, NodeSite, REGISTRY_HEADER};
pub use synth::{generate_synthetic, Archetype, ArchetypeParams, SyntheticDataset, SyntheticLockdown};
pub use window::{filter_window, TimeWindow};
pub(crate) use window::midnight;

use crate::error::{Error, Result};

pub(crate) fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

pub fn read_flow_file(path: impl AsRef<Path>) -> Result<Vec<FlowRecord>> {
    parse_flow_records(open(path.as_ref())?)
}

pub fn read_registry_file(path: impl AsRef<Path>) -> Result<NodeRegistry> {
    parse_node_registry(open(path.as_ref())?)
}
