use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::exact::Rational;
use crate::poly::MultiPoly;

/// Terms shown when a witness polynomial is rendered.
pub const WITNESS_DISPLAY_TERMS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Rat(Rational),
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(n) => serializer.serialize_i64(*n),
            ParamValue::Rat(q) => q.serialize(serializer),
        }
    }
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Rat(q) => write!(f, "{q}"),
        }
    }
}

/// Named parameter values of one instance, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(Vec<(&'static str, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn int(mut self, key: &'static str, value: i64) -> Self {
        self.0.push((key, ParamValue::Int(value)));
        self
    }

    pub fn rat(mut self, key: &'static str, value: Rational) -> Self {
        self.0.push((key, ParamValue::Rat(value)));
        self
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    /// Integer parameter; panics if absent, which is a registry bug.
    pub fn get_int(&self, key: &str) -> i64 {
        match self.get(key) {
            Some(ParamValue::Int(n)) => *n,
            other => panic!("parameter `{key}` is not an integer: {other:?}"),
        }
    }

    pub fn get_rat(&self, key: &str) -> Rational {
        match self.get(key) {
            Some(ParamValue::Rat(q)) => q.clone(),
            Some(ParamValue::Int(n)) => Rational::from(*n),
            None => panic!("parameter `{key}` missing"),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(&'static str, ParamValue)> {
        self.0.iter()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Evidence attached to a failing instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `lhs - rhs` of the named sub-identity, which should have vanished.
    Difference { label: String, difference: MultiPoly },
    /// A scalar or structural failure described in words.
    Message { label: String, detail: String },
}

impl Witness {
    pub fn label(&self) -> &str {
        match self {
            Witness::Difference { label, .. } | Witness::Message { label, .. } => label,
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Witness::Difference { label, difference } => {
                let (display, truncated) = difference.display_truncated(WITNESS_DISPLAY_TERMS);
                let mut s = serializer.serialize_struct("Witness", 5)?;
                s.serialize_field("label", label)?;
                s.serialize_field("total_terms", &difference.len())?;
                s.serialize_field("truncated", &truncated)?;
                s.serialize_field("difference", &display)?;
                s.end()
            }
            Witness::Message { label, detail } => {
                let mut s = serializer.serialize_struct("Witness", 2)?;
                s.serialize_field("label", label)?;
                s.serialize_field("detail", detail)?;
                s.end()
            }
        }
    }
}

/// Outcome of one instance of one check. `status` is `Pass` exactly when
/// `witness` is `None`.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: Option<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn new(check: &str, params: Params, verdict: Verdict, note: Option<&str>, elapsed: Duration) -> Self {
        let (status, witness) = match verdict {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        CheckReport { check: check.to_string(), params, status, witness, note: note.map(str::to_string), elapsed }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CheckReport", 6)?;
        s.serialize_field("check", &self.check)?;
        s.serialize_field("params", &self.params)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("witness", &self.witness)?;
        if let Some(note) = &self.note {
            s.serialize_field("note", note)?;
        }
        s.serialize_field("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        s.end()
    }
}

pub type Verdict = Result<(), Witness>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub pass: usize,
    pub fail: usize,
}

/// Counts over a finished run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub max_n: usize,
    pub checks: usize,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub per_check: BTreeMap<String, CheckCounts>,
    pub wall_ms: u64,
}

impl SuiteSummary {
    pub fn from_reports(max_n: usize, reports: &[CheckReport], wall: Duration) -> Self {
        let mut per_check: BTreeMap<String, CheckCounts> = BTreeMap::new();
        for r in reports {
            let entry = per_check.entry(r.check.clone()).or_default();
            if r.passed() {
                entry.pass += 1;
            } else {
                entry.fail += 1;
            }
        }
        let passed = reports.iter().filter(|r| r.passed()).count();
        SuiteSummary {
            max_n,
            checks: per_check.len(),
            instances: reports.len(),
            passed,
            failed: reports.len() - passed,
            per_check,
            wall_ms: wall.as_millis() as u64,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let params = Params::new().int("m", 1).int("n", 2);
        let ok = CheckReport::new("thm2.7", params.clone(), Ok(()), None, Duration::from_millis(3));
        assert_eq!(
            serde_json::to_string(&ok).unwrap(),
            r#"{"check":"thm2.7","params":{"m":1,"n":2},"status":"pass","witness":null,"elapsed_ms":3}"#
        );
        let diff = MultiPoly::x().scale_int(3);
        let bad = CheckReport::new(
            "thm2.7",
            params,
            Err(Witness::Difference { label: "lhs-rhs".into(), difference: diff }),
            Some("verified on closure"),
            Duration::ZERO,
        );
        assert_eq!(bad.status, Status::Fail);
        let json = serde_json::to_value(&bad).unwrap();
        assert_eq!(json["witness"]["difference"], "3x");
        assert_eq!(json["witness"]["total_terms"], 1);
        assert_eq!(json["note"], "verified on closure");
    }

    #[test]
    fn witness_display_is_truncated() {
        let p: MultiPoly = (0..30).map(|k| MultiPoly::x().pow(k)).sum();
        let w = Witness::Difference { label: "big".into(), difference: p };
        let json = serde_json::to_value(&w).unwrap();
        assert_eq!(json["total_terms"], 30);
        assert_eq!(json["truncated"], true);
        let shown = json["difference"].as_str().unwrap();
        assert!(shown.starts_with("x^29+x^28"));
        assert!(shown.ends_with("x^10+..."));
    }

    #[test]
    fn summary_counts() {
        let mk = |name: &str, ok: bool| {
            let verdict = if ok { Ok(()) } else { Err(Witness::Message { label: "v".into(), detail: "d".into() }) };
            CheckReport::new(name, Params::new(), verdict, None, Duration::ZERO)
        };
        let reports = vec![mk("a", true), mk("a", false), mk("b", true)];
        let s = SuiteSummary::from_reports(4, &reports, Duration::from_millis(10));
        assert_eq!((s.checks, s.instances, s.passed, s.failed), (2, 3, 2, 1));
        assert_eq!(s.per_check["a"], CheckCounts { pass: 1, fail: 1 });
        assert!(!s.all_passed());
    }
}
