//! Strict JSON input documents.

use std::fs;
use std::path::Path;

use galmod_core::{BranchOrbit, CoverData, GroupData, ValidationError};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub group: GroupInput,
    pub cover: CoverInput,
    #[serde(default)]
    pub m: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub p: u64,
    pub n: u32,
    pub c: u64,
    pub chi: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverInput {
    pub genus_z: u64,
    pub orbits: Vec<OrbitInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitInput {
    #[serde(default)]
    pub e: Option<Integer>,
    pub jumps: Vec<u64>,
    pub tame_order: u64,
    pub phi: u64,
    #[serde(default)]
    pub ord_ky: Option<Integer>,
}

/// An integer given as a JSON number or, beyond 64 bits, as a decimal string.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Integer {
    Number(i64),
    Text(String),
}

impl Integer {
    fn to_bigint(&self, field: &str, index: usize) -> Result<BigInt, CliError> {
        match self {
            Integer::Number(v) => Ok(BigInt::from(*v)),
            Integer::Text(s) => s.trim().parse().map_err(|_| {
                CliError::Parse(format!("orbit {index}: {field} = {s:?} is not an integer"))
            }),
        }
    }
}

impl InputDocument {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<(GroupData, CoverData), CliError> {
        let g = &self.group;
        let group = GroupData::new(g.p, g.n, g.c, g.chi).map_err(invalid)?;
        let mut orbits = Vec::with_capacity(self.cover.orbits.len());
        for (index, o) in self.cover.orbits.iter().enumerate() {
            let mut orbit = BranchOrbit::tame(o.tame_order, o.phi).with_jumps(o.jumps.clone());
            if let Some(e) = &o.e {
                orbit = orbit.with_e(e.to_bigint("e", index)?);
            }
            if let Some(ord) = &o.ord_ky {
                orbit = orbit.with_ord_ky(ord.to_bigint("ord_ky", index)?);
            }
            orbits.push(orbit);
        }
        Ok((group, CoverData { genus_z: self.cover.genus_z, orbits }))
    }
}

fn invalid(e: ValidationError) -> CliError {
    CliError::Failed(format!("{}: {e}", e.name()))
}
