//! Mould JSON and report JSON.

use std::collections::BTreeMap;

use moulde_core::kernel::parse::parse_ratfun;
use moulde_core::{Error, Mould, Rational, RationalFunction, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MouldFile {
    pub name: String,
    pub weight: Option<i64>,
    pub max_depth: usize,
    pub depth0: String,
    pub components: BTreeMap<String, String>,
}

impl MouldFile {
    /// Nonzero components only; missing depths read back as zero.
    pub fn from_mould(name: &str, m: &Mould) -> Self {
        let components = (1..=m.max_depth())
            .filter(|&r| !m.get(r).is_zero())
            .map(|r| (r.to_string(), m.get(r).to_string()))
            .collect();
        MouldFile {
            name: name.to_string(),
            weight: m.weight(),
            max_depth: m.max_depth(),
            depth0: m.depth0().to_string(),
            components,
        }
    }

    pub fn to_mould(&self) -> Result<Mould, FormatError> {
        let depth0: Rational = self.depth0.parse().map_err(|e: Error| FormatError::Value("depth0".into(), e))?;
        let mut components = vec![RationalFunction::zero(); self.max_depth];
        for (key, text) in &self.components {
            let r: usize = key.parse().map_err(|_| FormatError::Key(key.clone()))?;
            if r == 0 || r > self.max_depth {
                return Err(FormatError::Key(key.clone()));
            }
            components[r - 1] = parse_ratfun(text).map_err(|e| FormatError::Value(key.clone(), e))?;
        }
        let m = Mould::from_components(depth0, components).map_err(|e| FormatError::Value("components".into(), e))?;
        Ok(m.with_weight(self.weight))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("component key `{0}` is not a depth between 1 and max_depth")]
    Key(String),
    #[error("bad value for `{0}`: {1}")]
    Value(String, Error),
}

pub fn mould_from_json(text: &str) -> Result<Mould, FormatError> {
    serde_json::from_str::<MouldFile>(text)?.to_mould()
}

pub fn mould_to_json(name: &str, m: &Mould) -> String {
    serde_json::to_string_pretty(&MouldFile::from_mould(name, m)).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub r: usize,
    pub i: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub law: String,
    pub passed: bool,
    pub instances: Vec<InstanceJson>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(report: &VerificationReport) -> Self {
        ReportJson {
            law: report.law.clone(),
            passed: report.passed(),
            instances: report
                .instances
                .iter()
                .map(|x| InstanceJson { r: x.r, i: x.i, ok: x.ok, witness: x.witness.clone() })
                .collect(),
            notes: report.notes.clone(),
        }
    }
}

/// Human-readable listing of a mould.
pub fn mould_to_text(name: &str, m: &Mould) -> String {
    let weight = m.weight().map_or_else(|| "none".to_string(), |w| w.to_string());
    let mut out = format!("{name} (weight {weight}, max depth {})\n", m.max_depth());
    out.push_str(&format!("  0: {}\n", m.depth0()));
    for r in 1..=m.max_depth() {
        out.push_str(&format!("  {r}: {}\n", m.get(r)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use moulde_core::solutions::seed;

    #[test]
    fn round_trip_keeps_every_field() {
        let m = seed(-2, 3);
        let text = mould_to_json("seed:-2", &m);
        assert_eq!(mould_from_json(&text).unwrap(), m);
    }

    #[test]
    fn missing_depths_are_zero() {
        let m = mould_from_json(r#"{"name":"t","weight":null,"max_depth":3,"depth0":"0","components":{"2":"x1 - x2"}}"#)
            .unwrap();
        assert!(m.get(1).is_zero() && m.get(3).is_zero());
        assert_eq!(m.get(2).to_string(), "x1 - x2");
    }

    #[test]
    fn bad_input_is_rejected() {
        let bad = [
            r#"{"name":"t","weight":null,"max_depth":2,"depth0":"0","components":{"3":"x1"}}"#,
            r#"{"name":"t","weight":null,"max_depth":2,"depth0":"0","components":{"1":"x2"}}"#,
            r#"{"name":"t","weight":null,"max_depth":2,"depth0":"1/0","components":{}}"#,
            r#"{"name":"t"}"#,
        ];
        for text in bad {
            assert!(mould_from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn report_omits_empty_witnesses() {
        let mut report = VerificationReport::new("ls");
        report.push(moulde_core::Instance::pass(2, 1));
        let json = serde_json::to_string(&ReportJson::from(&report)).unwrap();
        assert_eq!(json, r#"{"law":"ls","passed":true,"instances":[{"r":2,"i":1,"ok":true}]}"#);
    }
}
