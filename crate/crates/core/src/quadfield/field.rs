use std::fmt;

use crate::error::{Error, Result};
use crate::exact::primes::{is_prime, is_squarefree, prime_factors};
use crate::exact::{kronecker_symbol, ZPoly};

/// Quadratic field Q(√d) with integral basis (1, ω), where ω = (1 + √d)/2 for
/// d ≡ 1 mod 4 and ω = √d otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: i64,
    disc: i64,
    omega_trace: i64,
    omega_norm: i64,
}

pub fn is_fundamental_discriminant(disc: i64) -> bool {
    if disc == 0 || disc == 1 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => is_squarefree(disc),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

impl QuadField {
    /// Field for a squarefree integer `d ∉ {0, 1}`.
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!("{d} is not a squarefree integer other than 0, 1")));
        }
        Ok(if d.rem_euclid(4) == 1 {
            QuadField { d, disc: d, omega_trace: 1, omega_norm: (1 - d) / 4 }
        } else {
            QuadField { d, disc: 4 * d, omega_trace: 0, omega_norm: -d }
        })
    }

    pub fn from_discriminant(disc: i64) -> Result<Self> {
        if !is_fundamental_discriminant(disc) {
            return Err(Error::NotFundamental(disc));
        }
        Self::new(if disc.rem_euclid(4) == 0 { disc / 4 } else { disc })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Fundamental discriminant D.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Tr(ω).
    pub fn omega_trace(&self) -> i64 {
        self.omega_trace
    }

    /// N(ω).
    pub fn omega_norm(&self) -> i64 {
        self.omega_norm
    }

    pub fn is_imaginary(&self) -> bool {
        self.d < 0
    }

    /// Minimal polynomial X² − Tr(ω)X + N(ω) of ω.
    pub fn min_poly(&self) -> ZPoly {
        ZPoly::from_i64(&[self.omega_norm, -self.omega_trace, 1])
    }

    /// N(x + yω) = x² + Tr(ω)xy + N(ω)y².
    pub fn norm(&self, x: i128, y: i128) -> i128 {
        x * x + self.omega_trace as i128 * x * y + self.omega_norm as i128 * y * y
    }

    /// The quadratic character χ_D(n) = (D/n).
    pub fn chi(&self, n: i64) -> i32 {
        kronecker_symbol(self.disc, n)
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        prime_factors(self.disc)
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.disc % p as i64 == 0
    }

    /// Number of roots of unity in the ring of integers.
    pub fn roots_of_unity(&self) -> u32 {
        match self.disc {
            -4 => 4,
            -3 => 6,
            _ => 2,
        }
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{})", self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

/// How a rational prime decomposes in a quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingData {
    pub p: u64,
    pub kind: SplitKind,
    /// `(e_i, f_i)` for each prime above p.
    pub factors: Vec<(u32, u32)>,
}

pub fn splitting_type(field: &QuadField, p: u64) -> Result<SplittingData> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (kind, factors) = match field.chi(p as i64) {
        1 => (SplitKind::Split, vec![(1, 1), (1, 1)]),
        -1 => (SplitKind::Inert, vec![(1, 2)]),
        _ => (SplitKind::Ramified, vec![(2, 1)]),
    };
    Ok(SplittingData { p, kind, factors })
}

/// Q(√d₁, √d₂), carried as its three quadratic subfields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiquadField {
    subfields: [QuadField; 3],
}

fn squarefree_part(n: i64) -> i64 {
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    sign * (out * m) as i64
}

impl BiquadField {
    pub fn new(d1: i64, d2: i64) -> Result<Self> {
        let k1 = QuadField::new(d1)?;
        let k2 = QuadField::new(d2)?;
        let d3 = squarefree_part(d1 * d2);
        if d1 == d2 || d3 == 1 {
            return Err(Error::InvalidField(format!("Q(√{d1}, √{d2}) is not biquadratic")));
        }
        let k3 = QuadField::new(d3)?;
        Ok(BiquadField { subfields: [k1, k2, k3] })
    }

    pub fn subfields(&self) -> &[QuadField; 3] {
        &self.subfields
    }

    pub fn d1(&self) -> i64 {
        self.subfields[0].d()
    }

    pub fn d2(&self) -> i64 {
        self.subfields[1].d()
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.subfields.iter().any(|k| k.is_ramified(p))
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.subfields.iter().flat_map(|k| k.ramified_primes()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }
}

impl fmt::Display for BiquadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{}, √{})", self.d1(), self.d2())
    }
}

/// A supported Galois splitting field: quadratic or biquadratic.
///
/// Galois group elements are indexed by sign patterns: for a quadratic field
/// `0 = id`, `1 = σ`; for a biquadratic field bit `i` of the index records
/// whether √d_{i+1} changes sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Quadratic(QuadField),
    Biquadratic(BiquadField),
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Result<Self> {
        Ok(FieldSpec::Quadratic(QuadField::new(d)?))
    }

    pub fn biquadratic(d1: i64, d2: i64) -> Result<Self> {
        Ok(FieldSpec::Biquadratic(BiquadField::new(d1, d2)?))
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Quadratic(_) => 2,
            FieldSpec::Biquadratic(_) => 4,
        }
    }

    /// Fundamental discriminants of the quadratic subfields.
    pub fn quadratic_discriminants(&self) -> Vec<i64> {
        match self {
            FieldSpec::Quadratic(k) => vec![k.disc()],
            FieldSpec::Biquadratic(b) => b.subfields().iter().map(QuadField::disc).collect(),
        }
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        match self {
            FieldSpec::Quadratic(k) => k.is_ramified(p),
            FieldSpec::Biquadratic(b) => b.is_ramified(p),
        }
    }

    pub fn ramified_primes(&self) -> Vec<u64> {
        match self {
            FieldSpec::Quadratic(k) => k.ramified_primes(),
            FieldSpec::Biquadratic(b) => b.ramified_primes(),
        }
    }

    /// Value of the i-th quadratic character of the Galois group at element `g`.
    pub fn character_on_element(&self, i: usize, g: usize) -> i32 {
        let bit = |b: usize| if (g >> b) & 1 == 1 { -1 } else { 1 };
        match (self, i) {
            (FieldSpec::Quadratic(_), 0) => bit(0),
            (FieldSpec::Biquadratic(_), 0) => bit(0),
            (FieldSpec::Biquadratic(_), 1) => bit(1),
            (FieldSpec::Biquadratic(_), 2) => bit(0) * bit(1),
            _ => panic!("character index out of range"),
        }
    }

    /// Frobenius element at an unramified prime.
    pub fn frobenius(&self, p: u64) -> Result<usize> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if self.is_ramified(p) {
            return Err(Error::Ramified { p });
        }
        let flip = |k: &QuadField| usize::from(k.chi(p as i64) == -1);
        Ok(match self {
            FieldSpec::Quadratic(k) => flip(k),
            FieldSpec::Biquadratic(b) => flip(&b.subfields()[0]) | (flip(&b.subfields()[1]) << 1),
        })
    }

    /// Decomposition group at p: the common kernel of the quadratic
    /// characters that take the value +1 at p.
    pub fn decomposition_group(&self, p: u64) -> Result<Vec<usize>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let discs = self.quadratic_discriminants();
        let split: Vec<usize> =
            (0..discs.len()).filter(|&i| kronecker_symbol(discs[i], p as i64) == 1).collect();
        Ok((0..self.degree())
            .filter(|&g| split.iter().all(|&i| self.character_on_element(i, g) == 1))
            .collect())
    }

    /// Complex conjugation (the identity for totally real fields).
    pub fn complex_conjugation(&self) -> usize {
        let neg = |k: &QuadField| usize::from(k.d() < 0);
        match self {
            FieldSpec::Quadratic(k) => neg(k),
            FieldSpec::Biquadratic(b) => neg(&b.subfields()[0]) | (neg(&b.subfields()[1]) << 1),
        }
    }

    pub fn decomposition_group_at_infinity(&self) -> Vec<usize> {
        let c = self.complex_conjugation();
        if c == 0 {
            vec![0]
        } else {
            vec![0, c]
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Quadratic(k) => k.fmt(f),
            FieldSpec::Biquadratic(b) => b.fmt(f),
        }
    }
}
