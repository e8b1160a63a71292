//! JSON input formats and bundled presets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cartan::{CartanError, CartanTriple};
use crate::linalg::Field;
use crate::path::PathPoly;
use crate::presentation::{Presentation, PresentationError};
use crate::quiver::{GroupAction, Quiver, QuiverAutomorphism, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("cannot tell what kind of object this file describes")]
    UnknownShape,
    #[error("expected a {expected} file")]
    WrongShape { expected: &'static str },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("quiver has no group action")]
    MissingAction,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub vertex_map: BTreeMap<String, String>,
    #[serde(default)]
    pub arrow_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
}

impl QuiverFile {
    pub fn quiver(&self) -> Result<Quiver, InputError> {
        let arrows = self.arrows.iter().map(|a| (a.id.clone(), a.from.clone(), a.to.clone()));
        Ok(Quiver::new(self.vertices.clone(), arrows)?)
    }

    /// The quiver and the group generated by the listed automorphisms
    /// (trivial when no action is given).
    pub fn build(&self) -> Result<(Quiver, GroupAction), InputError> {
        let q = self.quiver()?;
        let action = match &self.action {
            None => GroupAction::trivial(&q),
            Some(spec) => {
                let gens = spec
                    .generators
                    .iter()
                    .map(|g| {
                        QuiverAutomorphism::from_maps(
                            &q,
                            g.vertex_map.iter().map(|(a, b)| (a.as_str(), b.as_str())),
                            g.arrow_map.iter().map(|(a, b)| (a.as_str(), b.as_str())),
                        )
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                GroupAction::generate(&q, gens)?
            }
        };
        Ok((q, action))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanFile {
    pub index: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    pub d: Vec<i64>,
    #[serde(rename = "Omega")]
    pub omega: Vec<(String, String)>,
}

impl CartanFile {
    pub fn build(&self) -> Result<CartanTriple, InputError> {
        Ok(CartanTriple::from_names(self.index.clone(), self.c.clone(), self.d.clone(), &self.omega)?)
    }

    pub fn from_triple(t: &CartanTriple) -> Self {
        CartanFile {
            index: t.index().to_vec(),
            c: t.matrix().to_vec(),
            d: t.symmetrizer().to_vec(),
            omega: t.omega_names(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coeff: i64,
    #[serde(default)]
    pub path: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub quiver: QuiverFile,
    pub relations: Vec<Vec<TermSpec>>,
}

impl PresentationFile {
    pub fn build<F: Field>(&self, field: F) -> Result<Presentation<F>, InputError> {
        let q = self.quiver.quiver()?;
        let relations = self
            .relations
            .iter()
            .map(|terms| {
                let terms: Vec<_> = terms.iter().map(|t| (t.coeff, t.path.clone(), t.vertex.clone())).collect();
                Presentation::relation_from_ids(&field, &q, &terms)
            })
            .collect::<Result<Vec<PathPoly<F>>, _>>()?;
        Ok(Presentation::new(field, q, relations)?)
    }
}

/// A parsed input file, classified by its top-level keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputFile {
    Quiver(QuiverFile),
    Cartan(CartanFile),
    Presentation(PresentationFile),
}

impl InputFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let value: Value = serde_json::from_str(text)?;
        let obj = value.as_object().ok_or(InputError::UnknownShape)?;
        if obj.contains_key("relations") {
            Ok(InputFile::Presentation(serde_json::from_value(value)?))
        } else if obj.contains_key("index") {
            Ok(InputFile::Cartan(serde_json::from_value(value)?))
        } else if obj.contains_key("vertices") {
            Ok(InputFile::Quiver(serde_json::from_value(value)?))
        } else {
            Err(InputError::UnknownShape)
        }
    }

    pub fn into_quiver(self) -> Result<QuiverFile, InputError> {
        match self {
            InputFile::Quiver(q) => Ok(q),
            _ => Err(InputError::WrongShape { expected: "quiver" }),
        }
    }
}

pub const PRESET_NAMES: [&str; 4] = ["a3_swap", "d4_rot3", "pi_a2", "pi_b2"];

pub fn preset(name: &str) -> Result<&'static str, InputError> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    match name {
        "a3_swap" => Ok(include_str!("../presets/a3_swap.json")),
        "d4_rot3" => Ok(include_str!("../presets/d4_rot3.json")),
        "pi_a2" => Ok(include_str!("../presets/pi_a2.json")),
        "pi_b2" => Ok(include_str!("../presets/pi_b2.json")),
        _ => Err(InputError::UnknownPreset(name.to_string())),
    }
}
