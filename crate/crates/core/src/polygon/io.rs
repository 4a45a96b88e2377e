use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FiniteGeometry, GeometryError};

/// Element ids may be written as strings or integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Int(i64),
    Str(String),
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Int(v) => write!(f, "{v}"),
            Id::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id::Str(s.to_string())
    }
}

/// A number written either as a JSON integer or as a string like `"3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValuationEntries {
    #[serde(default)]
    pub points: Vec<(Id, Id, Scalar)>,
    #[serde(default)]
    pub lines: Vec<(Id, Id, Scalar)>,
}

/// Either the literal `"euclidean"` or an explicit list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsSpec {
    Named(String),
    List(Vec<Scalar>),
}

/// On-disk form of a finite geometry, optionally carrying a valuation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub points: Vec<Id>,
    pub lines: Vec<Id>,
    pub incidence: Vec<(Id, Id)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<ValuationEntries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsSpec>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {msg} (line {line}, column {column})")]
pub struct ParseError {
    /// JSON path of the offending value, e.g. `incidence[3][1]`.
    pub path: String,
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

impl GeometryFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            ParseError { path, line: inner.line(), column: inner.column(), msg: strip_position(&inner) }
        })
    }

    pub fn from_geometry(g: &FiniteGeometry, n: Option<usize>) -> Self {
        GeometryFile {
            n,
            points: g.point_ids().iter().map(|s| Id::Str(s.clone())).collect(),
            lines: g.line_ids().iter().map(|s| Id::Str(s.clone())).collect(),
            incidence: g.incidence_pairs().into_iter().map(|(p, l)| (Id::Str(p), Id::Str(l))).collect(),
            valuation: None,
            weights: None,
        }
    }

    pub fn to_geometry(&self) -> Result<FiniteGeometry, GeometryError> {
        if self.points.is_empty() && self.lines.is_empty() {
            return Err(GeometryError::Empty);
        }
        FiniteGeometry::new(
            self.points.iter().map(Id::to_string).collect(),
            self.lines.iter().map(Id::to_string).collect(),
            self.incidence.iter().map(|(p, l)| (p.to_string(), l.to_string())),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("geometry files serialize")
    }
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}
