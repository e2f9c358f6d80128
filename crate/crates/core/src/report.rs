//! Structured outcome of a verification run.
//!
//! JSON shape:
//!
//! ```text
//! {
//!   "experiment": "main",
//!   "params": { "k": "3", "r": "3", ... },        // all values strings
//!   "measured": { "instances": 2000, "ratio": "1/5", "holds": true },
//!   "verdict": "PASS" | "FAIL" | "SKIPPED",       // absent for probes
//!   "seed": 42 | null,
//!   "counterexample": "<hgr text>",               // optional
//!   "failures": ["..."],                          // optional
//!   "notes": ["..."]                              // optional
//! }
//! ```
//!
//! Measured rationals are `"P/Q"` strings; integers and booleans are plain
//! JSON values.

use std::collections::BTreeMap;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::hgr;
use crate::hypergraph::Hypergraph;
use crate::rational;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Int(i64),
    Flag(bool),
    Ratio(Rational),
    Text(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(v) => write!(f, "{v}"),
            Quantity::Flag(v) => write!(f, "{v}"),
            Quantity::Ratio(v) => f.write_str(&rational::format(v)),
            Quantity::Text(v) => f.write_str(v),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Int(v) => s.serialize_i64(*v),
            Quantity::Flag(v) => s.serialize_bool(*v),
            Quantity::Ratio(v) => s.serialize_str(&rational::format(v)),
            Quantity::Text(v) => s.serialize_str(v),
        }
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Bool(b) => Ok(Quantity::Flag(b)),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Quantity::Int)
                .ok_or_else(|| de::Error::custom(format!("{n} is not an integer"))),
            serde_json::Value::String(s) if s.contains('/') => match rational::parse(&s) {
                Ok(r) => Ok(Quantity::Ratio(r)),
                Err(_) => Ok(Quantity::Text(s)),
            },
            serde_json::Value::String(s) => Ok(Quantity::Text(s)),
            other => Err(de::Error::custom(format!("unsupported measured value {other}"))),
        }
    }
}

macro_rules! int_quantity {
    ($($t:ty),*) => {$(
        impl From<$t> for Quantity {
            fn from(v: $t) -> Self {
                Quantity::Int(i64::try_from(v).expect("measured integer exceeds i64"))
            }
        }
    )*};
}
int_quantity!(usize, u64, u32, i64, i32);

impl From<bool> for Quantity {
    fn from(v: bool) -> Self {
        Quantity::Flag(v)
    }
}

impl From<Rational> for Quantity {
    fn from(v: Rational) -> Self {
        Quantity::Ratio(v)
    }
}

impl From<&Rational> for Quantity {
    fn from(v: &Rational) -> Self {
        Quantity::Ratio(v.clone())
    }
}

impl From<String> for Quantity {
    fn from(v: String) -> Self {
        Quantity::Text(v)
    }
}

impl From<&str> for Quantity {
    fn from(v: &str) -> Self {
        Quantity::Text(v.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub params: BTreeMap<String, String>,
    pub measured: BTreeMap<String, Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(experiment: impl Into<String>) -> Self {
        Report {
            experiment: experiment.into(),
            params: BTreeMap::new(),
            measured: BTreeMap::new(),
            verdict: None,
            seed: None,
            counterexample: None,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn measure(&mut self, key: impl Into<String>, value: impl Into<Quantity>) {
        self.measured.insert(key.into(), value.into());
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Records a failed assertion unless `ok`. Returns `ok`.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.failures.push(what());
        }
        ok
    }

    /// Records a failure together with the offending hypergraph; only the
    /// first counterexample is kept.
    pub fn counterexample(&mut self, what: impl Into<String>, h: &Hypergraph) {
        self.failures.push(what.into());
        if self.counterexample.is_none() {
            self.counterexample = Some(hgr::serialize(h));
        }
    }

    /// PASS when nothing failed, FAIL otherwise.
    pub fn conclude(&mut self) {
        self.verdict = Some(if self.failures.is_empty() { Verdict::Pass } else { Verdict::Fail });
    }

    /// Like [`Report::conclude`], but a run that examined no instances is
    /// SKIPPED rather than PASS.
    pub fn conclude_over(&mut self, instances: usize) {
        self.measure("instances", instances);
        if instances == 0 && self.failures.is_empty() {
            self.skip("no instance satisfied the hypothesis");
        } else {
            self.conclude();
        }
    }

    pub fn skip(&mut self, reason: impl Into<String>) {
        self.notes.push(reason.into());
        self.verdict = Some(Verdict::Skipped);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Some(Verdict::Pass)
    }

    pub fn get(&self, key: &str) -> Option<&Quantity> {
        self.measured.get(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = self.verdict.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        writeln!(f, "{} [{}]", self.experiment, verdict)?;
        for (k, v) in &self.params {
            writeln!(f, "  param {k} = {v}")?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "  seed = {seed}")?;
        }
        for (k, v) in &self.measured {
            writeln!(f, "  {k} = {v}")?;
        }
        for msg in &self.failures {
            writeln!(f, "  FAILED: {msg}")?;
        }
        for msg in &self.notes {
            writeln!(f, "  note: {msg}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn json_round_trip_keeps_kinds() {
        let mut r = Report::new("demo").with_param("k", 3).with_seed(7);
        r.measure("ratio", ratio(4, 2));
        r.measure("count", 12usize);
        r.measure("holds", true);
        r.measure("label", "12");
        r.conclude();
        let json = r.to_json();
        assert!(json.contains("\"ratio\": \"2/1\""));
        assert!(json.contains("\"verdict\": \"PASS\""));
        assert_eq!(Report::from_json(&json).unwrap(), r);
    }

    #[test]
    fn fail_carries_description() {
        let mut r = Report::new("demo");
        r.check(false, || "boom".into());
        r.conclude();
        assert_eq!(r.verdict, Some(Verdict::Fail));
        assert_eq!(r.failures, vec!["boom".to_string()]);
    }

    #[test]
    fn zero_instances_is_skipped() {
        let mut r = Report::new("demo");
        r.conclude_over(0);
        assert_eq!(r.verdict, Some(Verdict::Skipped));
    }

    #[test]
    fn probe_without_verdict_omits_field() {
        let r = Report::new("probe");
        let json = r.to_json();
        assert!(!json.contains("verdict"));
        assert!(json.contains("\"seed\": null"));
    }
}
