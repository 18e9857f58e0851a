use std::collections::HashMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::ingest::flow::{check_width, csv_parse_error, read_header, reader, row_line};

pub const REGISTRY_HEADER: [&str; 4] = ["region_id", "name", "lat", "lon"];

/// A geographic site: one node of the mobility network.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSite {
    pub region_id: String,
    pub name: String,
    /// Degrees in `[-90, 90]`.
    pub latitude: f64,
    /// Degrees in `[-180, 180]`.
    pub longitude: f64,
}

/// Sites in file order with unique region identifiers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NodeRegistry {
    sites: Vec<NodeSite>,
    index: HashMap<String, usize>,
}

impl NodeRegistry {
    pub fn new(sites: Vec<NodeSite>) -> Result<Self> {
        let mut index = HashMap::with_capacity(sites.len());
        for (i, site) in sites.iter().enumerate() {
            validate_site(site)?;
            if index.insert(site.region_id.clone(), i).is_some() {
                return Err(Error::Validation(format!(
                    "duplicate region_id `{}`",
                    site.region_id
                )));
            }
        }
        Ok(Self { sites, index })
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &[NodeSite] {
        &self.sites
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NodeSite> {
        self.sites.iter()
    }

    pub fn position(&self, region_id: &str) -> Option<usize> {
        self.index.get(region_id).copied()
    }

    pub fn get(&self, region_id: &str) -> Option<&NodeSite> {
        self.position(region_id).map(|i| &self.sites[i])
    }

    pub fn contains(&self, region_id: &str) -> bool {
        self.index.contains_key(region_id)
    }
}

impl<'a> IntoIterator for &'a NodeRegistry {
    type Item = &'a NodeSite;
    type IntoIter = std::slice::Iter<'a, NodeSite>;

    fn into_iter(self) -> Self::IntoIter {
        self.sites.iter()
    }
}

fn validate_site(site: &NodeSite) -> Result<()> {
    if site.region_id.is_empty() {
        return Err(Error::Validation("empty region_id".into()));
    }
    if !(-90.0..=90.0).contains(&site.latitude) {
        return Err(Error::Validation(format!(
            "region `{}`: latitude {} outside [-90, 90]",
            site.region_id, site.latitude
        )));
    }
    if !(-180.0..=180.0).contains(&site.longitude) {
        return Err(Error::Validation(format!(
            "region `{}`: longitude {} outside [-180, 180]",
            site.region_id, site.longitude
        )));
    }
    Ok(())
}

pub fn parse_node_registry<R: Read>(input: R) -> Result<NodeRegistry> {
    let mut rdr = reader(input);
    read_header(&mut rdr, &REGISTRY_HEADER)?;

    let mut sites = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| csv_parse_error(e, "row"))?;
        check_width(&row, &REGISTRY_HEADER)?;
        let line = row_line(&row);
        let coord = |i: usize| -> Result<f64> {
            row[i].parse::<f64>().map_err(|_| {
                Error::parse(
                    line,
                    REGISTRY_HEADER[i],
                    format!("`{}` is not a number", &row[i]),
                )
            })
        };
        sites.push(NodeSite {
            region_id: row[0].to_owned(),
            name: row[1].to_owned(),
            latitude: coord(2)?,
            longitude: coord(3)?,
        });
    }
    NodeRegistry::new(sites)
}

pub fn write_node_registry<W: Write>(registry: &NodeRegistry, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(REGISTRY_HEADER)?;
    for s in registry {
        wtr.write_record([
            s.region_id.as_str(),
            s.name.as_str(),
            &s.latitude.to_string(),
            &s.longitude.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<registry output>", e))?;
    Ok(())
}
