//! The JSON V-representation format. Coordinates are strings `"p/q"` or `"p"`
//! so that every rational survives a round trip.

use std::path::Path;
use std::str::FromStr;

use polysep::{Point, Polytope, Rational, VertexPolicy};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connectivity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplicial: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VRepDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub points: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

pub fn parse_rational(token: &str) -> Result<Rational> {
    Rational::from_str(token.trim()).map_err(|e| CliError::BadRational {
        token: token.to_string(),
        reason: e.to_string(),
    })
}

impl VRepDocument {
    pub fn from_polytope(name: Option<String>, p: &Polytope) -> Self {
        let points = p
            .vertices()
            .iter()
            .map(|v| v.coords().iter().map(|c| c.to_string()).collect())
            .collect();
        Self {
            name,
            ambient_dim: p.dim(),
            points,
            expected: None,
        }
    }

    /// Parses every coordinate, checking that each point has `ambient_dim` entries.
    pub fn to_points(&self) -> Result<Vec<Point>> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != self.ambient_dim {
                    return Err(CliError::Format(format!(
                        "point {i} has {} coordinates, expected ambient_dim = {}",
                        row.len(),
                        self.ambient_dim
                    )));
                }
                let coords = row
                    .iter()
                    .map(|t| parse_rational(t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Point::new(coords))
            })
            .collect()
    }

    /// Builds the polytope; the second value lists indices dropped in lenient mode.
    pub fn to_polytope(&self, policy: VertexPolicy) -> Result<(Polytope, Vec<usize>)> {
        Ok(Polytope::with_policy(self.to_points()?, policy)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("V-representation serializes")
    }

    pub fn read(path: &Path) -> Result<(Self, Vec<u8>)> {
        let bytes = crate::read_file(path)?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|e| CliError::Format(format!("{}: {e}", path.display())))?;
        let doc = Self::from_json(&text).map_err(|e| match e {
            CliError::Format(m) => CliError::Format(format!("{}: {m}", path.display())),
            other => other,
        })?;
        Ok((doc, bytes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("3").unwrap(),
            Rational::from_integer(3.into())
        );
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            Rational::new((-3).into(), 2.into())
        );
        let err = parse_rational("1/0").unwrap_err();
        assert!(err.to_string().contains("\"1/0\""), "{err}");
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn ragged_points_are_rejected() {
        let doc =
            VRepDocument::from_json(r#"{"ambient_dim": 2, "points": [["0","0"],["1"]]}"#).unwrap();
        assert!(doc.to_points().unwrap_err().to_string().contains("point 1"));
    }

    #[test]
    fn json_errors_carry_position() {
        let err =
            VRepDocument::from_json("{\n  \"ambient_dim\": 2,\n  \"points\": [[\"0\" \"1\"]]\n}")
                .unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn optional_fields_are_omitted() {
        let doc = VRepDocument {
            name: None,
            ambient_dim: 1,
            points: vec![vec!["0".into()], vec!["1/2".into()]],
            expected: None,
        };
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"ambient_dim":1,"points":[["0"],["1/2"]]}"#
        );
    }
}
