use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::{fmt_rat, BigRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Euler,
    Lifting,
    Globalinv,
    LocalDensity,
    Tnc,
    ShaBk,
}

/// A real number with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Real {
    pub value: f64,
    pub abs_err: f64,
}

impl Real {
    pub fn new(value: f64, abs_err: f64) -> Self {
        Real { value, abs_err }
    }
}

/// Serializes any `Display` value as a string (big integers, groups).
pub fn ser_display<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn rat_value(x: &BigRat) -> Value {
    Value::String(fmt_rat(x))
}

pub fn real_value(x: Real) -> Value {
    json!({ "value": x.value, "abs_err": x.abs_err })
}

/// One identity check: its inputs, intermediate values (each with a
/// provenance label), the verdict and, unless PASS, a machine-readable cause.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    pub torus: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(flatten)]
    pub fields: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(identity: Identity, torus: impl Into<String>) -> Self {
        VerificationReport {
            identity,
            torus: torus.into(),
            verdict: Verdict::Pass,
            cause: None,
            tolerance: None,
            fields: BTreeMap::new(),
            provenance: BTreeMap::new(),
            timing_ms: None,
        }
    }

    pub fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), v.into());
        self
    }

    /// Adds a value together with where it came from.
    pub fn value(mut self, key: &str, v: impl Into<Value>, provenance: &str) -> Self {
        self.fields.insert(key.to_string(), v.into());
        self.provenance.insert(key.to_string(), provenance.to_string());
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = Some(tol);
        self
    }

    pub fn verdict(mut self, verdict: Verdict, cause: Option<String>) -> Self {
        self.verdict = verdict;
        self.cause = if verdict == Verdict::Pass { None } else { cause.or_else(|| Some("unspecified".into())) };
        self
    }

    /// PASS when `ok`, otherwise FAIL with `cause`.
    pub fn check(self, ok: bool, cause: impl Into<String>) -> Self {
        if ok {
            self.verdict(Verdict::Pass, None)
        } else {
            self.verdict(Verdict::Fail, Some(cause.into()))
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_order_is_severity() {
        assert!(Verdict::Pass < Verdict::Inconclusive && Verdict::Inconclusive < Verdict::Fail);
    }

    #[test]
    fn non_pass_carries_cause() {
        let r = VerificationReport::new(Identity::Euler, "norm1:-1").verdict(Verdict::Fail, None);
        assert_eq!(r.cause.as_deref(), Some("unspecified"));
        let r = VerificationReport::new(Identity::Euler, "norm1:-1").check(true, "x");
        assert_eq!(r.cause, None);
        let s = serde_json::to_string(&r.field("p", 5)).unwrap();
        assert_eq!(s, r#"{"identity":"euler","torus":"norm1:-1","verdict":"PASS","p":5}"#);
    }
}
