//! Scenario files and inline flags.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use starph_core::model::normalize_lengths;
use starph_core::{EdgeLengthVector, Rational, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Svg,
    Ascii,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Svg => "svg",
            Format::Ascii => "txt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub r: Rational,
    #[serde(rename = "L")]
    pub l: Rational,
}

/// Restricts reports to some bands and sides. Missing lists mean "all".
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub bands: Option<Vec<usize>>,
    pub sides: Option<Vec<Side>>,
}

impl Sweep {
    pub fn admits(&self, band: usize, side: Side) -> bool {
        self.bands.as_ref().is_none_or(|b| b.contains(&band)) && self.sides.as_ref().is_none_or(|s| s.contains(&side))
    }
}

/// Lengths are given in user order, `L` first.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub k: usize,
    pub lengths: Vec<Rational>,
    #[serde(default)]
    pub queries: Vec<Query>,
    #[serde(default)]
    pub sweep: Sweep,
    pub format: Option<Format>,
}

#[derive(Debug)]
pub struct ScenarioError(pub String);

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Scenario {
    pub fn from_file(path: &Path) -> Result<Scenario, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError(format!("{}: {e}", path.display())))?;
        Scenario::from_json(&text).map_err(|e| ScenarioError(format!("{}:{}", path.display(), e.0)))
    }

    pub fn from_json(text: &str) -> Result<Scenario, ScenarioError> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| {
            // serde_json appends its own "at line .. column .." suffix
            let msg = e.to_string();
            let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m);
            ScenarioError(format!("{}:{}: {msg}", e.line(), e.column()))
        })?;
        s.check()?;
        Ok(s)
    }

    pub fn from_flags(k: Option<usize>, lengths: &str) -> Result<Scenario, ScenarioError> {
        let parsed = lengths
            .split(',')
            .map(|t| t.trim().parse::<Rational>().map_err(|e| ScenarioError(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let s = Scenario {
            k: k.unwrap_or(parsed.len()),
            lengths: parsed,
            queries: Vec::new(),
            sweep: Sweep::default(),
            format: None,
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> Result<(), ScenarioError> {
        if self.lengths.len() != self.k {
            return Err(ScenarioError(format!(
                "k = {} but {} lengths were given",
                self.k,
                self.lengths.len()
            )));
        }
        self.edge_lengths().map(|_| ())
    }

    pub fn edge_lengths(&self) -> Result<EdgeLengthVector, ScenarioError> {
        normalize_lengths(&self.lengths).map_err(|e| ScenarioError(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_scenario() {
        let s = Scenario::from_json(
            r#"{"k": 4, "lengths": ["10", "3", "2", "1/2"],
                "queries": [{"r": "1/3", "L": "5"}],
                "sweep": {"sides": ["above"]}, "format": "ascii"}"#,
        )
        .unwrap();
        assert_eq!(s.lengths[3], starph_core::foundation::q(1, 2));
        assert_eq!(s.format, Some(Format::Ascii));
        assert!(s.sweep.admits(7, Side::Above));
        assert!(!s.sweep.admits(0, Side::Below));
    }

    #[test]
    fn rejects_unknown_fields_with_position() {
        let err = Scenario::from_json("{\"k\": 3,\n \"lengths\": [\"3\",\"2\",\"1\"],\n \"colour\": 1}").unwrap_err();
        assert!(err.0.starts_with("3:"), "{}", err.0);
        assert!(err.0.contains("colour"));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(Scenario::from_flags(None, "10,3/0,1").is_err());
        assert!(Scenario::from_json(r#"{"k": 3, "lengths": ["10", "3/0", "1"]}"#).is_err());
    }

    #[test]
    fn k_must_match() {
        assert!(Scenario::from_flags(Some(5), "10,3,2,1").is_err());
        assert_eq!(Scenario::from_flags(None, "10,3,2,1").unwrap().k, 4);
    }
}
