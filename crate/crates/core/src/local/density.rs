use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, BigRat};
use crate::lattice::{point_count_fp, TorusSpec};
use crate::local::lifting::Lifter;
use crate::local::model::AffineModel;
use crate::report::record::{rat_value, Identity, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityMethod {
    GoodFormula,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub k: u32,
    pub count: u64,
    #[serde(serialize_with = "ser_rat")]
    pub ratio: BigRat,
}

fn ser_rat<S: serde::Serializer>(x: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(x))
}

/// A local measure value mod p with the evidence behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalDensity {
    pub p: u64,
    pub value: BigRat,
    pub method: DensityMethod,
    pub trace: Vec<TraceEntry>,
    pub stabilized: bool,
}

impl LocalDensity {
    pub fn trace_json(&self) -> Value {
        serde_json::to_value(&self.trace).unwrap()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "value": fmt_rat(&self.value),
            "method": self.method,
            "stabilized": self.stabilized,
            "trace": self.trace_json(),
        })
    }

    /// The value, or `NotStabilized` when the trace never settled.
    pub fn stable_value(&self) -> Result<&BigRat> {
        if self.stabilized {
            Ok(&self.value)
        } else {
            Err(Error::NotStabilized { levels: self.trace.len() as u32 })
        }
    }
}

fn ratio(count: u64, p: u64, k: u32, d: usize) -> BigRat {
    BigRat::new(BigInt::from(count), BigInt::from(p).pow(k * d as u32))
}

/// p^{-d}·|T(F_p)| at a good prime.
pub fn local_density_good(t: &TorusSpec, p: u64) -> Result<LocalDensity> {
    if !t.is_good_prime(p) {
        return Err(Error::NotGood { p, torus: t.label() });
    }
    let count = point_count_fp(t, p)?;
    Ok(LocalDensity {
        p,
        value: ratio(count, p, 1, t.dim()),
        method: DensityMethod::GoodFormula,
        trace: vec![],
        stabilized: true,
    })
}

fn trace_of(counts: &[u64], p: u64, d: usize) -> Vec<TraceEntry> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &c)| TraceEntry { k: i as u32 + 1, count: c, ratio: ratio(c, p, i as u32 + 1, d) })
        .collect()
}

/// count(p^k)/p^{kd} for k = 1..=k_max; stabilized when the last two ratios agree.
pub fn brute_force_density(model: &AffineModel, p: u64, k_max: u32, budget: u64) -> Result<LocalDensity> {
    let mut lifter = Lifter::new(model, p, budget)?;
    for k in 1..=k_max {
        lifter.next_level(k < k_max)?;
    }
    let trace = trace_of(&lifter.counts, p, model.dim);
    let n = trace.len();
    let stabilized = n >= 2 && trace[n - 1].ratio == trace[n - 2].ratio;
    Ok(LocalDensity { p, value: trace[n - 1].ratio.clone(), method: DensityMethod::BruteForce, trace, stabilized })
}

/// Density at a bad prime from the norm-form model.
///
/// Lifts until two consecutive ratios agree and, if the budget allows one
/// more level, that level agrees as well. Gives up (unstabilized) after
/// `k_max` levels or when the budget runs out.
pub fn bad_prime_density(t: &TorusSpec, p: u64, k_max: u32, budget: u64) -> Result<LocalDensity> {
    let model = t
        .model()
        .ok_or_else(|| Error::Unsupported(format!("no integral model for {}", t.label())))?;
    let mut lifter = Lifter::new(model, p, budget)?;
    let mut stabilized = false;
    let mut value_at = None;
    while lifter.level() < k_max && lifter.can_advance() {
        lifter.next_level(true)?;
        let trace = trace_of(&lifter.counts, p, model.dim);
        let n = trace.len();
        if n >= 2 && trace[n - 1].ratio == trace[n - 2].ratio {
            match value_at {
                None => {
                    value_at = Some(n - 1);
                    stabilized = true;
                }
                Some(_) => break,
            }
        } else if value_at.is_some() {
            // the confirming level disagreed; keep looking
            value_at = None;
            stabilized = false;
        }
    }
    if lifter.level() == 0 {
        return Err(Error::BudgetExceeded { needed: lifter.next_cost(), budget: budget as u128 });
    }
    let trace = trace_of(&lifter.counts, p, model.dim);
    let value = trace[value_at.unwrap_or(trace.len() - 1)].ratio.clone();
    Ok(LocalDensity { p, value, method: DensityMethod::BruteForce, trace, stabilized })
}

/// Good-formula value against the brute-force count on the model.
pub fn cross_validate_density(t: &TorusSpec, p: u64, k_max: u32, budget: u64) -> Result<VerificationReport> {
    let good = local_density_good(t, p)?;
    let model = t
        .model()
        .ok_or_else(|| Error::Unsupported(format!("no integral model for {}", t.label())))?;
    let brute = brute_force_density(model, p, k_max, budget)?;
    let report = VerificationReport::new(Identity::LocalDensity, t.label())
        .field("p", p)
        .value("good_formula", rat_value(&good.value), "point count over F_p")
        .value("brute_force", rat_value(&brute.value), "lifting enumeration")
        .field("trace", brute.trace_json());
    if !brute.stabilized {
        return Ok(report.verdict(
            crate::report::record::Verdict::Inconclusive,
            Some(format!("not stabilized within {k_max} levels")),
        ));
    }
    Ok(report.check(good.value == brute.value, "good formula and brute force disagree"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::quadfield::QuadField;

    const BUDGET: u64 = 100_000_000;

    fn torus(s: &str) -> TorusSpec {
        TorusSpec::parse(s).unwrap()
    }

    #[test]
    fn good_formula_values() {
        assert_eq!(local_density_good(&torus("norm1:-1"), 5).unwrap().value, rat(4, 5));
        assert_eq!(local_density_good(&torus("norm1:-1"), 3).unwrap().value, rat(4, 3));
        assert_eq!(local_density_good(&torus("res:-1"), 3).unwrap().value, rat(8, 9));
        assert!(local_density_good(&torus("res:-1"), 2).is_err());
    }

    #[test]
    fn gaussian_trace_at_two() {
        let m = AffineModel::norm_one_quadratic(&QuadField::new(-1).unwrap());
        let d = brute_force_density(&m, 2, 3, BUDGET).unwrap();
        assert_eq!((d.trace[2].count, d.trace[2].ratio.clone()), (16, rat(2, 1)));
        let d = brute_force_density(&m, 2, 4, BUDGET).unwrap();
        assert_eq!(d.trace[3].count, 32);
        assert!(d.stabilized);
        assert_eq!(d.value, rat(2, 1));
        let d = brute_force_density(&m, 5, 2, BUDGET).unwrap();
        assert_eq!((d.trace[1].count, d.value.clone(), d.stabilized), (20, rat(4, 5), true));
    }

    #[test]
    fn bad_primes() {
        let d = bad_prime_density(&torus("norm1:-1"), 2, 10, BUDGET).unwrap();
        assert!(d.stabilized);
        assert_eq!(d.value, rat(2, 1));
        let d = bad_prime_density(&torus("norm1:-3"), 3, 6, BUDGET).unwrap();
        assert!(d.stabilized);
        assert_eq!(d.value, rat(2, 1));
        let d = bad_prime_density(&torus("norm1:5"), 5, 6, BUDGET).unwrap();
        assert!(d.stabilized);
        assert_eq!(d.value, rat(2, 1));
    }

    #[test]
    fn cross_validation() {
        for (s, p) in [("norm1:-1", 5), ("norm1:-1", 3), ("res:-1", 3)] {
            let r = cross_validate_density(&torus(s), p, 2, BUDGET).unwrap();
            assert!(r.passed(), "{s} at {p}: {r:?}");
        }
        let r = cross_validate_density(&torus("res:-1"), 3, 2, BUDGET).unwrap();
        assert_eq!(r.fields["trace"][1]["count"], 72);
    }
}
