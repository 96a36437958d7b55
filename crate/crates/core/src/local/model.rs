use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::exact::IntMatrix;
use crate::quadfield::{BiquadField, QuadField};

/// Multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl MPoly {
    pub fn zero(vars: usize) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: i64) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, 1);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: i64) {
        let v = self.terms.entry(e.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, &c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> MPoly {
        let mut out = Self::zero(self.vars);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = Self::zero(self.vars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = Self::zero(self.vars);
        for (e, &c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * e[i] as i64);
            }
        }
        out
    }

    pub fn eval(&self, x: &[i64]) -> i128 {
        self.terms
            .iter()
            .map(|(e, &c)| {
                e.iter().zip(x).fold(c as i128, |acc, (&k, &xi)| acc * (xi as i128).pow(k))
            })
            .sum()
    }

    /// Value mod m of the polynomial at residues `x` (each in [0, m)).
    pub fn eval_mod(&self, x: &[u64], m: u64) -> u64 {
        let m = m as u128;
        let mut acc = 0u128;
        for (e, &c) in &self.terms {
            let mut t = (c as i128).rem_euclid(m as i128) as u128;
            for (&k, &xi) in e.iter().zip(x) {
                for _ in 0..k {
                    t = t * xi as u128 % m;
                }
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let n = NAMES.get(i).map(|s| s.to_string()).unwrap_or(format!("x{i}"));
                    if k == 1 {
                        n
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{}", mono.join("*"))?,
                _ => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// An affine Z-model of a torus: the solutions of `equations` on which every
/// `unit_conditions` polynomial is a p-adic unit, with a gauge form
/// dx_{i1}∧…/`gauge_denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineModel {
    pub name: String,
    pub vars: usize,
    pub equations: Vec<MPoly>,
    pub unit_conditions: Vec<MPoly>,
    pub dim: usize,
    pub gauge_denominator: MPoly,
    pub base_point: Vec<i64>,
}

fn norm_form(field: &QuadField) -> MPoly {
    let (x, y) = (MPoly::var(2, 0), MPoly::var(2, 1));
    x.mul(&x).add(&x.mul(&y).scale(field.omega_trace())).add(&y.mul(&y).scale(field.omega_norm()))
}

/// Norm form of Z[√d1, √d2] in the basis (1, √d1, √d2, √(d1 d2)).
pub fn biquadratic_norm_form(d1: i64, d2: i64) -> MPoly {
    let v = |i| MPoly::var(4, i);
    let (a, b, c, e) = (v(0), v(1), v(2), v(3));
    let big_a = a.mul(&a).add(&b.mul(&b).scale(d1)).sub(&c.mul(&c).scale(d2)).sub(&e.mul(&e).scale(d1 * d2));
    let big_b = a.mul(&b).scale(2).sub(&c.mul(&e).scale(2 * d2));
    big_a.mul(&big_a).sub(&big_b.mul(&big_b).scale(d1))
}

impl AffineModel {
    /// x² + Tr(ω)xy + N(ω)y² = 1 with ω = dx/(∂F/∂y).
    pub fn norm_one_quadratic(field: &QuadField) -> Self {
        let f = norm_form(field).sub(&MPoly::constant(2, 1));
        AffineModel {
            name: format!("norm-one model of {field}"),
            vars: 2,
            gauge_denominator: f.derivative(1),
            equations: vec![f],
            unit_conditions: vec![],
            dim: 1,
            base_point: vec![1, 0],
        }
    }

    /// Pairs (x, y) with x + yω a unit; ω = dx∧dy/N(x + yω).
    pub fn res_quadratic(field: &QuadField) -> Self {
        let n = norm_form(field);
        AffineModel {
            name: format!("unit group model of {field}"),
            vars: 2,
            equations: vec![],
            gauge_denominator: n.clone(),
            unit_conditions: vec![n],
            dim: 2,
            base_point: vec![1, 0],
        }
    }

    pub fn norm_one_biquadratic(field: &BiquadField) -> Self {
        let f = biquadratic_norm_form(field.d1(), field.d2()).sub(&MPoly::constant(4, 1));
        AffineModel {
            name: format!("norm-one model of {field}"),
            vars: 4,
            gauge_denominator: f.derivative(0),
            equations: vec![f],
            unit_conditions: vec![],
            dim: 3,
            base_point: vec![1, 0, 0, 0],
        }
    }

    pub fn res_biquadratic(field: &BiquadField) -> Self {
        let n = biquadratic_norm_form(field.d1(), field.d2());
        AffineModel {
            name: format!("unit group model of {field}"),
            vars: 4,
            equations: vec![],
            gauge_denominator: n.clone(),
            unit_conditions: vec![n],
            dim: 4,
            base_point: vec![1, 0, 0, 0],
        }
    }

    /// The Jacobian of the equations at the base point has full rank and the
    /// base point satisfies the model.
    pub fn base_point_is_smooth(&self) -> bool {
        let x = &self.base_point;
        if self.equations.iter().any(|f| f.eval(x) != 0) || self.unit_conditions.iter().any(|u| u.eval(x) == 0) {
            return false;
        }
        if self.equations.is_empty() {
            return true;
        }
        let rows: Vec<Vec<BigInt>> = self
            .equations
            .iter()
            .map(|f| (0..self.vars).map(|i| BigInt::from(f.derivative(i).eval(x))).collect())
            .collect();
        let flat = rows.into_iter().flatten().collect();
        let j = IntMatrix::from_vec(self.equations.len(), self.vars, flat).unwrap();
        j.rank() == self.equations.len() && self.vars - self.equations.len() == self.dim
    }

    pub fn is_solution_mod(&self, x: &[u64], m: u64, p: u64) -> bool {
        self.equations.iter().all(|f| f.eval_mod(x, m) == 0) && self.units_ok(x, p)
    }

    /// Unit conditions depend only on x mod p.
    pub fn units_ok(&self, x: &[u64], p: u64) -> bool {
        let r: Vec<u64> = x.iter().map(|v| v % p).collect();
        self.unit_conditions.iter().all(|u| u.eval_mod(&r, p) != 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_arithmetic() {
        let k = QuadField::new(-1).unwrap();
        let m = AffineModel::norm_one_quadratic(&k);
        assert_eq!(m.equations[0].to_string(), "x^2 + y^2 - 1");
        assert_eq!(m.gauge_denominator.to_string(), "2*y");
        assert!(m.base_point_is_smooth());
        assert_eq!(m.equations[0].eval_mod(&[3, 4], 5), 4);
        let k = QuadField::new(5).unwrap();
        assert_eq!(AffineModel::norm_one_quadratic(&k).equations[0].to_string(), "x^2 + x*y - y^2 - 1");
    }

    #[test]
    fn biquadratic_norm_is_multiplicative_on_samples() {
        let n = biquadratic_norm_form(2, 3);
        // N(√2) = (√2)^4 = 4, N(1 + √2) = (-1)^2 = 1
        assert_eq!(n.eval(&[0, 1, 0, 0]), 4);
        assert_eq!(n.eval(&[1, 1, 0, 0]), 1);
        assert_eq!(n.eval(&[2, 0, 0, 0]), 16);
        let b = BiquadField::new(2, 3).unwrap();
        assert!(AffineModel::norm_one_biquadratic(&b).base_point_is_smooth());
        assert!(AffineModel::res_biquadratic(&b).base_point_is_smooth());
    }
}
