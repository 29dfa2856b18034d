//! JSON file formats.
//!
//! ```text
//! space:       {"dim": n, "norm": "sup"|"l1", "weights": [..]}
//! operator:    {"matrix": [[..], ..]}
//! filtration:  {"space": {..}, "operators": [{"matrix": ..}, ..]}
//! sequence:    {"vectors": [[..], ..]}
//! instance:    {"space": {..}, "filtration": {..}?, "sequence": {..}?}
//! ```
//!
//! Floats are written in shortest round-trip form and parsed exactly, so a
//! written instance reloads bit for bit.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::filtration::Filtration;
use crate::lattice::LatticeSpace;
use crate::martingale::MartingaleSeq;
use crate::operator::Operator;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
    #[error("inconsistent instance")]
    Invalid(#[from] Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationJson {
    /// Optional inside an instance file, where the top-level space applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<LatticeSpace>,
    pub operators: Vec<OperatorJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceJson {
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub space: LatticeSpace,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceJson>,
}

/// A parsed and dimension-checked instance.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub space: Arc<LatticeSpace>,
    pub filtration: Option<Filtration>,
    pub sequence: Option<MartingaleSeq>,
}

impl FiltrationJson {
    pub fn from_filtration(f: &Filtration) -> Self {
        FiltrationJson {
            space: Some((**f.space()).clone()),
            operators: f.operators().iter().map(|e| OperatorJson { matrix: e.rows() }).collect(),
        }
    }

    pub fn into_filtration(self, space: &Arc<LatticeSpace>) -> Result<Filtration, Error> {
        if let Some(own) = &self.space {
            if own != &**space {
                return Err(Error::SpaceMismatch);
            }
        }
        let ops = self.operators.iter().map(|o| Operator::from_rows(space, &o.matrix)).collect::<Result<Vec<_>, _>>()?;
        Filtration::new(space, ops)
    }
}

impl InstanceFile {
    pub fn new(space: &LatticeSpace, filtration: Option<&Filtration>, sequence: Option<&MartingaleSeq>) -> Self {
        InstanceFile {
            space: space.clone(),
            filtration: filtration.map(|f| FiltrationJson { space: None, ..FiltrationJson::from_filtration(f) }),
            sequence: sequence.map(|s| SequenceJson { vectors: s.coords() }),
        }
    }

    pub fn into_instance(self) -> Result<Instance, Error> {
        let space = Arc::new(self.space);
        let filtration = self.filtration.map(|f| f.into_filtration(&space)).transpose()?;
        let sequence = self.sequence.map(|s| MartingaleSeq::from_coords(&space, s.vectors)).transpose()?;
        if let (Some(f), Some(s)) = (&filtration, &sequence) {
            if f.horizon() != s.horizon() {
                return Err(Error::HorizonMismatch { sequence: s.horizon(), filtration: f.horizon() });
            }
        }
        Ok(Instance { space, filtration, sequence })
    }
}

impl Instance {
    pub fn to_file(&self) -> InstanceFile {
        InstanceFile::new(&self.space, self.filtration.as_ref(), self.sequence.as_ref())
    }
}

/// Parses an instance file, or a bare filtration object
/// (`{"space": .., "operators": ..}`) as an instance without a sequence.
pub fn parse_instance(text: &str) -> Result<Instance, LoadError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("operators").is_some() {
        let bare: FiltrationJson = serde_json::from_value(value)?;
        let space = bare
            .space
            .clone()
            .ok_or_else(|| Error::InvalidFiltration("a bare filtration needs a \"space\" entry".into()))?;
        let space = Arc::new(space);
        let filtration = bare.into_filtration(&space)?;
        return Ok(Instance { space, filtration: Some(filtration), sequence: None });
    }
    let file: InstanceFile = serde_json::from_value(value)?;
    Ok(file.into_instance()?)
}

pub fn read_instance(path: &Path) -> Result<Instance, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_instance(&text)
}

pub fn instance_to_json(instance: &Instance) -> String {
    serde_json::to_string_pretty(&instance.to_file()).expect("instances always serialize")
}
