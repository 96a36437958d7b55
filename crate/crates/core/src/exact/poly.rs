//! Univariate polynomials over Z and over F_p, with factorization mod p.
//!
//! Factoring is square-free decomposition, then distinct-degree splitting via
//! `gcd(f, x^(p^k) - x)`, then equal-degree splitting by trying the shifts
//! `(x + a)^((p^k - 1)/2) - 1` for `a = 0, 1, 2, ...` in order (exhaustive
//! search over monic candidates when `p = 2`). Everything is deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::primes::{is_prime, pow_mod};

/// Polynomial over Z, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = ZPoly { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        let m = BigInt::from(p);
        FpPoly::new(p, self.coeffs.iter().map(|c| c.mod_floor(&m).to_u64().unwrap()).collect())
    }
}

/// Polynomial over F_p (`p < 2^32`), coefficients lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (self.mulm(acc, x) + c) % self.p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + self.p
                    - o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulm(a, b)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = self.inv(lead);
                FpPoly::new(self.p, self.coeffs.iter().map(|&c| self.mulm(c, inv)).collect())
            }
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lead_inv = self.inv(*d.coeffs.last().unwrap());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = self.mulm(r[i + dd], lead_inv);
            q[i] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    let t = self.mulm(c, b);
                    r[i + j] = (r[i + j] + self.p - t) % self.p;
                }
            }
        }
        (FpPoly::new(self.p, q), FpPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::one(self.p).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    /// Roots in F_p by exhaustive search.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.p).filter(|&a| self.eval(a) == 0).collect()
    }

    // p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }
}

fn square_free(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0.monic();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0.monic();
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() && !c.is_zero() && c.degree() > Some(0) {
        for (g, j) in square_free(&c.monic().pth_root()) {
            out.push((g, j * p as u32));
        }
    }
    out
}

// Splits a square-free monic polynomial into parts whose irreducible factors
// all have the same degree.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut k = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        k += 1;
        if 2 * k > rest.degree().unwrap() {
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        h = h.pow_mod(p as u128, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            out.push((g.clone(), k));
            rest = rest.div_rem(&g).0.monic();
            h = h.rem(&rest);
        }
    }
    out
}

fn all_monic(p: u64, deg: usize) -> impl Iterator<Item = FpPoly> {
    let total = p.pow(deg as u32);
    (0..total).map(move |mut n| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(n % p);
            n /= p;
        }
        c.push(1);
        FpPoly::new(p, c)
    })
}

fn equal_degree(f: &FpPoly, k: usize) -> Vec<FpPoly> {
    let p = f.modulus();
    let d = f.degree().unwrap();
    if d == k {
        return vec![f.clone()];
    }
    if d == 0 {
        return Vec::new();
    }
    if k == 1 {
        return f.roots().into_iter().map(|r| FpPoly::new(p, vec![(p - r) % p, 1])).collect();
    }
    let g = if p == 2 {
        all_monic(p, k).find(|cand| f.rem(cand).is_zero()).unwrap()
    } else {
        let e = (p as u128).pow(k as u32).saturating_sub(1) / 2;
        let mut found = None;
        for a in 0..p {
            let shift = FpPoly::new(p, vec![a, 1]);
            let t = shift.pow_mod(e, f).sub(&FpPoly::one(p));
            let g = f.gcd(&t);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < d {
                found = Some(g);
                break;
            }
        }
        // every proper split has been tried; fall back to candidate search
        found.unwrap_or_else(|| {
            all_monic(p, k).find(|cand| f.rem(cand).is_zero() && cand.degree() < f.degree()).unwrap()
        })
    };
    let h = f.div_rem(&g).0.monic();
    let mut out = equal_degree(&g, k);
    out.extend(equal_degree(&h, k));
    out
}

/// Factors `f` over F_p into monic irreducibles with multiplicities, sorted by
/// (degree, coefficients).
pub fn factor_poly_mod_p(f: &ZPoly, p: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !is_prime(p) || p >= 1 << 32 {
        return Err(Error::NotPrime(p));
    }
    let fp = f.reduce_mod(p);
    if fp.is_zero() {
        return Err(Error::Dimension("polynomial vanishes mod p".into()));
    }
    let mut out = Vec::new();
    for (part, mult) in square_free(&fp.monic()) {
        for (group, k) in distinct_degree(&part) {
            for irr in equal_degree(&group, k) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, m)| {
            (0..*m).fold(acc, |a, _| a.mul(g))
        })
    }

    #[test]
    fn x2_plus_1() {
        let f = ZPoly::from_i64(&[1, 0, 1]);
        let f5 = factor_poly_mod_p(&f, 5).unwrap();
        assert_eq!(f5.len(), 2);
        assert_eq!(f5[0].0.coeffs(), &[2, 1]); // x + 2
        assert_eq!(f5[1].0.coeffs(), &[3, 1]); // x + 3
        let f3 = factor_poly_mod_p(&f, 3).unwrap();
        assert_eq!(f3, vec![(FpPoly::new(3, vec![1, 0, 1]), 1)]);
        assert_eq!(factor_poly_mod_p(&f, 2).unwrap(), vec![(FpPoly::new(2, vec![1, 1]), 2)]);
    }

    #[test]
    fn linear_and_bad_prime() {
        let x = ZPoly::from_i64(&[0, 1]);
        for p in [2, 3, 7, 101] {
            assert_eq!(factor_poly_mod_p(&x, p).unwrap(), vec![(FpPoly::x(p), 1)]);
        }
        assert_eq!(factor_poly_mod_p(&x, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn pth_power_input() {
        // x^3 - x^0 over F_3 is (x - 1)^3
        let f = ZPoly::from_i64(&[-1, 0, 0, 1]);
        let fs = factor_poly_mod_p(&f, 3).unwrap();
        assert_eq!(fs, vec![(FpPoly::new(3, vec![2, 1]), 3)]);
    }

    #[test]
    fn product_of_two_quadratics() {
        // (x^2 + 1)(x^2 + x + 3) over F_7; both irreducible mod 7
        let f = ZPoly::from_i64(&[3, 1, 4, 1, 1]);
        let fs = factor_poly_mod_p(&f, 7).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(2) && *m == 1));
        assert_eq!(product(&fs, 7), f.reduce_mod(7));
    }

    proptest! {
        #[test]
        fn factors_multiply_back(
            coeffs in proptest::collection::vec(-30i64..30, 1..5),
            lead in 1i64..5,
            pi in 0usize..8,
        ) {
            let p = [2u64, 3, 5, 7, 11, 13, 97, 9973][pi];
            let mut c = coeffs.clone();
            c.push(lead);
            let f = ZPoly::from_i64(&c);
            let fp = f.reduce_mod(p);
            prop_assume!(!fp.is_zero());
            let fs = factor_poly_mod_p(&f, p).unwrap();
            prop_assert_eq!(product(&fs, p), fp.monic());
            for (i, (g, _)) in fs.iter().enumerate() {
                prop_assert_eq!(g.coeffs().last(), Some(&1));
                for (h, _) in &fs[i + 1..] {
                    prop_assert_ne!(g, h);
                }
            }
        }
    }
}
