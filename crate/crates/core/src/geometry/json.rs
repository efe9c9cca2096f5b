//! `{"dim": m, "vertices": [["p/q", ...], ...]}`; facets are rederived on load.

use serde::{Deserialize, Serialize};

use super::{Polytope, Validity};
use crate::error::{GeometryError, ParseError};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl From<&Polytope<Rational>> for PolytopeJson {
    fn from(p: &Polytope<Rational>) -> Self {
        PolytopeJson {
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl PolytopeJson {
    pub fn into_polytope(self, validity: Validity) -> Result<Polytope<Rational>, GeometryError> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Polytope::from_vertices(self.dim, pts, validity)
    }
}

pub fn from_json(text: &str, validity: Validity) -> Result<Polytope<Rational>, GeometryError> {
    let raw: PolytopeJson = serde_json::from_str(text)
        .map_err(|e| GeometryError::Parse(ParseError::Malformed(e.to_string())))?;
    raw.into_polytope(validity)
}

pub fn to_json(p: &Polytope<Rational>) -> String {
    serde_json::to_string(&PolytopeJson::from(p)).expect("plain strings serialize")
}
