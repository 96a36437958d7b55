use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::kronecker_symbol;
use crate::exact::primes::primes_below_million;
use crate::lattice::{q_rank, TorusSpec};
use crate::quadfield::is_fundamental_discriminant;
use crate::report::record::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    CharacterSum,
    EulerProduct,
}

/// L(1, χ_D) by the finite character sum, with the truncated Euler
/// product as an independent cross-check.
#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    pub disc: i64,
    pub value: Real,
    pub method: LMethod,
    pub euler_product: Real,
    pub methods_agree: bool,
}

/// Closed-form character sum.
pub fn l_value_character_sum(disc: i64) -> Real {
    let q = disc.unsigned_abs() as f64;
    if disc < 0 {
        let s: i64 = (1..disc.abs()).map(|a| kronecker_symbol(disc, a) as i64 * a).sum();
        let v = -PI * s as f64 / q.powf(1.5);
        Real::new(v, 8.0 * f64::EPSILON * v.abs())
    } else {
        let mut s = 0.0;
        let mut scale = 0.0f64;
        for a in 1..disc {
            let c = kronecker_symbol(disc, a);
            if c != 0 {
                let l = (PI * a as f64 / q).sin().ln();
                s += c as f64 * l;
                scale += l.abs();
            }
        }
        let v = -s / q.sqrt();
        Real::new(v, 8.0 * f64::EPSILON * (scale + 1.0) / q.sqrt())
    }
}

/// ∏_{p < 10^6} (1 − χ(p)/p)^{-1} with a tail bound.
///
/// The bound on the tail Σ_{p ≥ P} χ(p)/p assumes the Riemann hypothesis
/// for L(s, χ_D); the prime-square terms add at most 1/P.
pub fn l_value_euler_product(disc: i64) -> Real {
    let primes = primes_below_million();
    let mut log = 0.0;
    for &p in primes {
        let c = kronecker_symbol(disc, p as i64);
        if c != 0 {
            log -= (1.0 - c as f64 / p as f64).ln();
        }
    }
    let big_p = 1e6f64;
    let lp = big_p.ln();
    let lq = (disc.unsigned_abs() as f64).ln();
    let c = 1.0 / (8.0 * PI);
    let tail = c * (1.0 + 1.0 / lp) * 2.0 * (lp + 2.0 + 2.0 * lq) / big_p.sqrt()
        + c * (lp + 2.0 * lq) / big_p.sqrt()
        + 1.0 / big_p;
    let v = log.exp();
    Real::new(v, v * (tail.exp() - 1.0) + primes.len() as f64 * f64::EPSILON * v)
}

pub fn l_value(disc: i64, tol: f64) -> Result<LValue> {
    if disc == 1 || !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let value = l_value_character_sum(disc);
    if value.abs_err > tol {
        return Err(Error::ToleranceUnreachable { tol, evaluations: disc.unsigned_abs() as usize });
    }
    let euler_product = l_value_euler_product(disc);
    let methods_agree = (value.value - euler_product.value).abs() <= value.abs_err + euler_product.abs_err;
    Ok(LValue { disc, value, method: LMethod::CharacterSum, euler_product, methods_agree })
}

/// L(G, 1) for a Q-rank-0 torus: the product of L(1, χ) over the
/// nontrivial quadratic characters occurring in X_* ⊗ Q.
pub fn torus_l_value(t: &TorusSpec, tol: f64) -> Result<Real> {
    let r = q_rank(t);
    if r > 0 {
        return Err(Error::AssumptionViolated(r));
    }
    let mut v = 1.0;
    let mut rel = 0.0;
    for d in t.field().quadratic_discriminants() {
        let l = l_value(d, tol)?;
        v *= l.value.value;
        rel += l.value.abs_err / l.value.value;
    }
    Ok(Real::new(v, v * rel))
}

/// E_p(G, 1) = ∏ (1 − χ(p)/p) over the characters of X_* ⊗ Q, with
/// χ(p) = 0 where χ is ramified.
pub fn euler_factor_by_characters(t: &TorusSpec, p: u64) -> f64 {
    t.field()
        .quadratic_discriminants()
        .iter()
        .map(|&d| 1.0 - kronecker_symbol(d, p as i64) as f64 / p as f64)
        .product()
}

/// L_S(G, 1) = L(G, 1)·∏_{p∈S} E_p(G, 1). `s` lists the finite places of S;
/// ∞ is always included.
pub fn partial_l_value(t: &TorusSpec, s: &[u64], tol: f64) -> Result<Real> {
    for p in t.bad_primes() {
        if !s.contains(&p) {
            return Err(Error::MissingBadPrime(p));
        }
    }
    let l = torus_l_value(t, tol)?;
    let mut places = s.to_vec();
    places.sort_unstable();
    places.dedup();
    let factor: f64 = places.iter().map(|&p| euler_factor_by_characters(t, p)).product();
    Ok(Real::new(l.value * factor, l.abs_err * factor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let l = l_value(-4, 1e-10).unwrap();
        assert!((l.value.value - PI / 4.0).abs() < 1e-12);
        assert!(l.methods_agree);
        assert!((l_value(5, 1e-10).unwrap().value.value - 0.430409).abs() < 1e-6);
        assert!((l_value(-3, 1e-10).unwrap().value.value - 0.604600).abs() < 1e-6);
        // analytic class number formula at D = 5
        let reg = 0.48121182505960347;
        assert!((l_value(5, 1e-10).unwrap().value.value - 2.0 * reg / 5f64.sqrt()).abs() < 1e-12);
        assert!(l_value(20, 1e-6).is_err());
    }

    #[test]
    fn character_sum_agrees_with_euler_product() {
        for d in -200i64..=200 {
            if d == 1 || !is_fundamental_discriminant(d) {
                continue;
            }
            let l = l_value(d, 1e-6).unwrap();
            assert!(l.methods_agree, "D={d}: {:?} vs {:?}", l.value, l.euler_product);
        }
    }

    #[test]
    fn partial_values() {
        let t = TorusSpec::parse("norm1:-1").unwrap();
        let v = partial_l_value(&t, &[2], 1e-10).unwrap().value;
        assert!((v - PI / 4.0).abs() < 1e-12);
        let v = partial_l_value(&t, &[2, 5], 1e-10).unwrap().value;
        assert!((v - PI / 5.0).abs() < 1e-12);
        assert!(matches!(partial_l_value(&t, &[5], 1e-10), Err(Error::MissingBadPrime(2))));
    }
}
