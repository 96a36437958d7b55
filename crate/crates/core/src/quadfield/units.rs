//! Fundamental units of real quadratic fields by continued fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadfield::field::QuadField;

#[derive(Clone, Debug, PartialEq)]
pub struct UnitData {
    pub disc: i64,
    /// Coordinates of the unit x + yω in the integral basis (1, ω).
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i32,
    /// ln of the unit (its larger real embedding).
    pub regulator: f64,
}

impl UnitData {
    /// The smallest unit > 1 of norm +1: the unit itself or its square.
    pub fn norm_one_generator(&self, field: &QuadField) -> (BigInt, BigInt) {
        if self.norm == 1 {
            return (self.x.clone(), self.y.clone());
        }
        square(field, &self.x, &self.y)
    }

    pub fn norm_one_regulator(&self) -> f64 {
        if self.norm == 1 {
            self.regulator
        } else {
            2.0 * self.regulator
        }
    }
}

/// (x + yω)² in the basis (1, ω), using ω² = Tr(ω)ω − N(ω).
pub fn square(field: &QuadField, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    multiply(field, (x, y), (x, y))
}

pub fn multiply(field: &QuadField, a: (&BigInt, &BigInt), b: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    let t = BigInt::from(field.omega_trace());
    let n = BigInt::from(field.omega_norm());
    let yy = a.1 * b.1;
    (a.0 * b.0 - &n * &yy, a.0 * b.1 + a.1 * b.0 + &t * &yy)
}

pub fn norm_big(field: &QuadField, x: &BigInt, y: &BigInt) -> BigInt {
    x * x + BigInt::from(field.omega_trace()) * x * y + BigInt::from(field.omega_norm()) * y * y
}

// sign of alpha + sqrt(n), n > 0 not a square
fn surd_sign(alpha: &BigInt, n: &BigInt) -> i32 {
    if !alpha.is_negative() {
        1
    } else if &(alpha * alpha) < n {
        1
    } else {
        -1
    }
}

// floor((p + sqrt(n)) / q) for q != 0
fn surd_floor(p: &BigInt, n: &BigInt, q: &BigInt) -> BigInt {
    let s = n.sqrt();
    let mut a = (p + &s).div_floor(q);
    // x >= a  <=>  (p - a q) + sqrt(n) has the sign of q (or is zero)
    let ge = |a: &BigInt| {
        let sgn = surd_sign(&(p - a * q), n);
        if q.is_positive() {
            sgn >= 0
        } else {
            sgn <= 0
        }
    };
    while !ge(&a) {
        a -= 1;
    }
    while ge(&(&a + 1)) {
        a += 1;
    }
    a
}

/// ln of a positive big integer, valid beyond the f64 range.
pub fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Fundamental unit of the real quadratic field of discriminant `disc`.
///
/// Expands θ = −ω' (the negated conjugate of ω) as a continued fraction and
/// returns the first convergent x/y with N(x + yω) = ±1.
pub fn fundamental_unit(disc: i64) -> Result<UnitData> {
    if disc <= 0 {
        return Err(Error::NotFundamental(disc));
    }
    let field = QuadField::from_discriminant(disc)?;
    let n = BigInt::from(field.d());
    // θ = (P + √d)/Q
    let (mut p, mut q) = if field.omega_trace() == 1 {
        (BigInt::from(-1), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    // period length is O(√D log D); the cap only guards against bugs
    let cap = 10_000 + 50 * (disc as usize);
    for _ in 0..cap {
        let a = surd_floor(&p, &n, &q);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if k.is_positive() {
            let nm = norm_big(&field, &h, &k);
            if nm.abs().is_one() {
                let norm = if nm.is_one() { 1 } else { -1 };
                let trace = BigInt::from(2) * &h + BigInt::from(field.omega_trace()) * &k;
                let regulator = regulator_from_trace(&trace, norm);
                return Ok(UnitData { disc, x: h, y: k, norm, regulator });
            }
        }
        let p_next = &a * &q - &p;
        let q_next = (&n - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
    Err(Error::Unsupported(format!("no unit found for discriminant {disc}")))
}

// ε = (tr + sqrt(tr² − 4N))/2
fn regulator_from_trace(trace: &BigInt, norm: i32) -> f64 {
    if trace.bits() < 50 {
        let t = trace.to_f64().unwrap();
        ((t + (t * t - 4.0 * norm as f64).sqrt()) / 2.0).ln()
    } else {
        ln_big(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::field::is_fundamental_discriminant;

    #[test]
    fn small_units() {
        let u = fundamental_unit(5).unwrap();
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (BigInt::zero(), BigInt::one(), -1));
        assert!((u.regulator - 0.481211825).abs() < 1e-8);
        let u = fundamental_unit(8).unwrap();
        assert_eq!((u.x, u.y, u.norm), (BigInt::one(), BigInt::one(), -1));
        let u = fundamental_unit(12).unwrap();
        assert_eq!((u.x, u.y, u.norm), (BigInt::from(2), BigInt::one(), 1));
        assert!(fundamental_unit(-4).is_err());
    }

    #[test]
    fn known_large_unit() {
        // d = 94: 2143295 + 221064 √94
        let u = fundamental_unit(4 * 94).unwrap();
        assert_eq!(u.x, BigInt::from(2_143_295));
        assert_eq!(u.y, BigInt::from(221_064));
        assert_eq!(u.norm, 1);
    }

    #[test]
    fn units_are_minimal() {
        for disc in (5..300).filter(|&d| is_fundamental_discriminant(d)) {
            let field = QuadField::from_discriminant(disc).unwrap();
            let u = fundamental_unit(disc).unwrap();
            assert!(norm_big(&field, &u.x, &u.y).abs().is_one());
            let (ux, uy) = (u.x.to_i64().unwrap_or(i64::MAX), u.y.to_i64().unwrap_or(i64::MAX));
            if uy > 2000 {
                continue;
            }
            // any unit > 1 is x + yω with y >= 1 and x >= 0 (or x = 0); none smaller
            for y in 1..=uy {
                for x in 0..=ux.max(0) + 1 {
                    if (x, y) == (ux, uy) {
                        continue;
                    }
                    let smaller = y < uy || x < ux;
                    if smaller && field.norm(x as i128, y as i128).abs() == 1 {
                        panic!("disc {disc}: smaller unit {x} + {y}ω than {ux} + {uy}ω");
                    }
                }
            }
        }
    }
}
