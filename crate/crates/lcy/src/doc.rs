//! JSON document types and the canonical serialization mode.
//!
//! Every document is UTF-8 JSON carrying exact integers only. Canonical form
//! (sorted keys, no insignificant whitespace) is what the golden tests and
//! the round-trip guarantees are stated against; `serde_json`'s default map
//! is ordered, so serializing through a `Value` sorts keys for free.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fan::Vec2;
use crate::fibration::{CurveClass, Fibration};
use crate::model::{ModelError, ToricModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("validation error at `{path}`: {msg}")]
    Validation { path: String, msg: String },
}

fn syntax(e: serde_json::Error) -> DocError {
    DocError::Syntax {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    }
}

/// Serialize in canonical form: keys sorted, compact whitespace.
pub fn canonical_json<T: Serialize>(x: &T) -> String {
    let value = serde_json::to_value(x).expect("document types serialize infallibly");
    serde_json::to_string(&value).expect("JSON value prints infallibly")
}

/// Parse any document type, reporting the error position.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, DocError> {
    serde_json::from_str(text).map_err(syntax)
}

/// Input document for a toric model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub rays: Vec<Vec2>,
    /// Defaults to all-zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_blowups: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SurfaceSpec {
    pub fn from_model(model: &ToricModel) -> SurfaceSpec {
        SurfaceSpec {
            rays: model.fan().rays().to_vec(),
            interior_blowups: Some(model.m().to_vec()),
            labels: None,
        }
    }

    pub fn to_model(&self) -> Result<ToricModel, DocError> {
        let m = self
            .interior_blowups
            .clone()
            .unwrap_or_else(|| vec![0; self.rays.len()]);
        ToricModel::new(&self.rays, m).map_err(|e| {
            let path = match &e {
                ModelError::Fan(_) => "rays",
                _ => "interior_blowups",
            };
            DocError::Validation {
                path: path.into(),
                msg: e.to_string(),
            }
        })
    }
}

/// Parse a surface document into a validated model.
pub fn parse_surface(text: &str) -> Result<ToricModel, DocError> {
    from_json::<SurfaceSpec>(text)?.to_model()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub r: i64,
    pub d: Vec<i64>,
    pub label: String,
}

/// Output document for a fibration: `k` and the ordered vanishing cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDoc {
    pub k: usize,
    pub cycles: Vec<CycleDoc>,
}

/// Lossless: labels default to the empty string and survive byte-exact.
pub fn emit_fibration_doc(f: &Fibration) -> FibrationDoc {
    let labels = f
        .labels
        .clone()
        .unwrap_or_else(|| vec![String::new(); f.cycles.len()]);
    FibrationDoc {
        k: f.k,
        cycles: f
            .cycles
            .iter()
            .zip(labels)
            .map(|(c, label)| CycleDoc {
                r: c.r,
                d: c.d.clone(),
                label,
            })
            .collect(),
    }
}

pub fn fibration_from_doc(doc: &FibrationDoc) -> Result<Fibration, DocError> {
    let cycles: Vec<CurveClass> = doc
        .cycles
        .iter()
        .map(|c| CurveClass {
            r: c.r,
            d: c.d.clone(),
        })
        .collect();
    let mut f = Fibration::new(doc.k, cycles).map_err(|e| DocError::Validation {
        path: "cycles".into(),
        msg: e.to_string(),
    })?;
    if doc.cycles.iter().any(|c| !c.label.is_empty()) {
        f.labels = Some(doc.cycles.iter().map(|c| c.label.clone()).collect());
    }
    Ok(f)
}

/// Certificate document: a named check, a verdict, and the exact witness
/// data that was compared, so a failing run is self-explanatory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub check: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub witness: serde_json::Value,
}

impl CertificateDoc {
    pub fn new<T: Serialize>(
        check: &str,
        pass: bool,
        counterexample: Option<String>,
        witness: &T,
    ) -> CertificateDoc {
        CertificateDoc {
            check: check.into(),
            pass,
            counterexample,
            witness: serde_json::to_value(witness).expect("witness serializes infallibly"),
        }
    }
}
