use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::primes::is_prime;
use crate::exact::{BigRat, IntMatrix};
use crate::lattice::galois::GaloisLattice;
use crate::lattice::group::FiniteGroup;
use crate::local::model::AffineModel;
use crate::quadfield::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Restriction of scalars of G_m.
    #[serde(rename = "res")]
    Res,
    /// Kernel of the norm.
    #[serde(rename = "norm1")]
    NormOne,
    /// Restriction of scalars modulo the diagonal G_m.
    #[serde(rename = "quot")]
    Quot,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Res => "res",
            Family::NormOne => "norm1",
            Family::Quot => "quot",
        }
    }

    pub const ALL: [Family; 3] = [Family::Res, Family::NormOne, Family::Quot];
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "res" | "res-scalars" => Ok(Family::Res),
            "norm1" | "norm-one" => Ok(Family::NormOne),
            "quot" | "quotient-by-gm" => Ok(Family::Quot),
            _ => Err(Error::Config(format!("unknown torus family '{s}' (expected res, norm1 or quot)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A torus over Q from one of the three families, split by a quadratic or
/// biquadratic field.
#[derive(Clone, Debug)]
pub struct TorusSpec {
    family: Family,
    field: FieldSpec,
    x_star: GaloisLattice,
    x_lower: GaloisLattice,
    model: Option<AffineModel>,
}

pub fn build_torus(family: Family, field: FieldSpec) -> Result<TorusSpec> {
    let group = FiniteGroup::galois(&field);
    let perm = GaloisLattice::regular(group);
    let ones = perm.all_ones();
    let x_star = match family {
        Family::Res => perm,
        Family::NormOne => perm.quotient_by_invariant(&ones)?,
        Family::Quot => perm.kernel_of_functional(&ones)?,
    };
    let x_lower = x_star.dual();
    let model = match (family, &field) {
        (Family::Res, FieldSpec::Quadratic(k)) => Some(AffineModel::res_quadratic(k)),
        // t ↦ t/σ(t) identifies the quotient torus with the norm-one torus
        (Family::NormOne | Family::Quot, FieldSpec::Quadratic(k)) => Some(AffineModel::norm_one_quadratic(k)),
        (Family::Res, FieldSpec::Biquadratic(b)) => Some(AffineModel::res_biquadratic(b)),
        (Family::NormOne, FieldSpec::Biquadratic(b)) => Some(AffineModel::norm_one_biquadratic(b)),
        (Family::Quot, FieldSpec::Biquadratic(_)) => None,
    };
    Ok(TorusSpec { family, field, x_star, x_lower, model })
}

impl TorusSpec {
    /// Parses `family:d` or `family:d1,d2`.
    pub fn parse(s: &str) -> Result<Self> {
        let (fam, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("torus '{s}' must look like family:d or family:d1,d2")))?;
        let family: Family = fam.trim().parse()?;
        let ds: Vec<i64> = rest
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("torus '{s}': field must be one or two integers")))?;
        let field = match ds[..] {
            [d] => FieldSpec::quadratic(d),
            [d1, d2] => FieldSpec::biquadratic(d1, d2),
            _ => Err(Error::Config(format!("torus '{s}': expected one or two integers"))),
        }
        .map_err(|e| match e {
            Error::Config(m) => Error::Config(m),
            other => Error::Config(format!("torus '{s}': {other}")),
        })?;
        build_torus(family, field)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn group(&self) -> &FiniteGroup {
        self.x_star.group()
    }

    pub fn dim(&self) -> usize {
        self.x_star.rank()
    }

    pub fn character_lattice(&self) -> &GaloisLattice {
        &self.x_star
    }

    pub fn cocharacter_lattice(&self) -> &GaloisLattice {
        &self.x_lower
    }

    pub fn model(&self) -> Option<&AffineModel> {
        self.model.as_ref()
    }

    /// Field integers as written in the torus grammar.
    pub fn field_integers(&self) -> Vec<i64> {
        match &self.field {
            FieldSpec::Quadratic(k) => vec![k.d()],
            FieldSpec::Biquadratic(b) => vec![b.d1(), b.d2()],
        }
    }

    pub fn label(&self) -> String {
        let ds: Vec<String> = self.field_integers().iter().map(|d| d.to_string()).collect();
        format!("{}:{}", self.family.tag(), ds.join(","))
    }

    /// Odd and unramified in the splitting field.
    pub fn is_good_prime(&self, p: u64) -> bool {
        is_prime(p) && p != 2 && !self.field.is_ramified(p)
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        let mut ps = self.field.ramified_primes();
        if !ps.contains(&2) {
            ps.insert(0, 2);
        }
        ps
    }

    pub fn good_primes_up_to(&self, pmax: u64) -> Vec<u64> {
        crate::exact::primes_up_to(pmax).into_iter().filter(|&p| self.is_good_prime(p)).collect()
    }
}

impl fmt::Display for TorusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn q_rank(t: &TorusSpec) -> usize {
    t.character_lattice().invariant_rank()
}

/// Action of the chosen Frobenius element on X_*.
pub fn frobenius_matrix(t: &TorusSpec, p: u64) -> Result<IntMatrix> {
    let g = t.field().frobenius(p)?;
    Ok(t.cocharacter_lattice().action(g).clone())
}

fn inverse_frobenius(t: &TorusSpec, p: u64) -> Result<IntMatrix> {
    let g = t.field().frobenius(p)?;
    Ok(t.cocharacter_lattice().action(t.group().inverse(g)).clone())
}

/// det(1 − Fr⁻¹/p) on X_*, from the characteristic polynomial of Fr⁻¹.
pub fn euler_factor_at_one(t: &TorusSpec, p: u64) -> Result<BigRat> {
    let f = inverse_frobenius(t, p)?;
    let cp = f.charpoly();
    let pb = BigInt::from(p);
    // det(1 − F/p) = p^{-d} det(p − F) = p^{-d} cp(p)
    let mut value = BigInt::zero();
    for c in cp.iter().rev() {
        value = value * &pb + c;
    }
    Ok(BigRat::new(value, pb.pow(t.dim() as u32)))
}

/// |T(F_p)| = det(p − Fr⁻¹) on X_*, by fraction-free elimination.
pub fn point_count_fp(t: &TorusSpec, p: u64) -> Result<u64> {
    let f = inverse_frobenius(t, p)?;
    let mut scaled = IntMatrix::zeros(t.dim(), t.dim());
    for i in 0..t.dim() {
        scaled.set(i, i, BigInt::from(p));
    }
    let det = scaled.sub(&f).determinant();
    det.to_u64().ok_or_else(|| Error::Dimension(format!("point count {det} out of range")))
}

/// |T(F_p)| by direct enumeration over F_p, independent of the lattice data.
///
/// The work is p² (quadratic) or p⁴ (biquadratic) norm evaluations.
pub fn brute_force_point_count(t: &TorusSpec, p: u64, budget: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if t.field().is_ramified(p) || p == 2 {
        return Err(Error::NotGood { p, torus: t.label() });
    }
    let vars = t.field().degree() as u32;
    let needed = (p as u128).pow(vars);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: budget as u128 });
    }
    let pi = p as i128;
    let mut nonzero = 0u64;
    let mut ones = 0u64;
    match t.field() {
        FieldSpec::Quadratic(k) => {
            let (tr, nm) = (k.omega_trace() as i128, k.omega_norm() as i128);
            for x in 0..pi {
                for y in 0..pi {
                    let n = (x * x + tr * x * y + nm * y * y).rem_euclid(pi);
                    nonzero += u64::from(n != 0);
                    ones += u64::from(n == 1);
                }
            }
        }
        FieldSpec::Biquadratic(b) => {
            let (d1, d2) = (b.d1() as i128, b.d2() as i128);
            for a in 0..pi {
                for bb in 0..pi {
                    for c in 0..pi {
                        for e in 0..pi {
                            let big_a = (a * a + d1 * bb * bb - d2 * c * c - d1 * d2 * e * e).rem_euclid(pi);
                            let big_b = (2 * a * bb - 2 * d2 * c * e).rem_euclid(pi);
                            let n = (big_a * big_a - d1 * big_b * big_b).rem_euclid(pi);
                            nonzero += u64::from(n != 0);
                            ones += u64::from(n == 1);
                        }
                    }
                }
            }
        }
    }
    Ok(match t.family() {
        Family::Res => nonzero,
        Family::NormOne => ones,
        // H^1(F_p, G_m) = 0, so the quotient's points are units modulo F_p^*
        Family::Quot => nonzero / (p - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn torus(s: &str) -> TorusSpec {
        TorusSpec::parse(s).unwrap()
    }

    #[test]
    fn gaussian_lattices() {
        let r = torus("res:-1");
        assert_eq!(r.dim(), 2);
        assert_eq!(r.character_lattice().action(1), &IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        let n = torus("norm1:-1");
        assert_eq!(n.character_lattice().action(1), &IntMatrix::from_rows(&[[-1]]));
        let q = torus("quot:-1");
        assert_eq!(q.character_lattice().action(1), &IntMatrix::from_rows(&[[-1]]));
        assert_eq!((q_rank(&r), q_rank(&n), q_rank(&q)), (1, 0, 0));
    }

    #[test]
    fn frobenius_and_euler_factors() {
        let r = torus("res:-1");
        assert_eq!(frobenius_matrix(&r, 5).unwrap(), IntMatrix::identity(2));
        assert_eq!(frobenius_matrix(&r, 3).unwrap(), IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert!(matches!(frobenius_matrix(&r, 2), Err(Error::Ramified { p: 2 })));
        let n = torus("norm1:-1");
        assert_eq!(frobenius_matrix(&n, 3).unwrap(), IntMatrix::from_rows(&[[-1]]));
        assert_eq!(euler_factor_at_one(&r, 5).unwrap(), rat(16, 25));
        assert_eq!(euler_factor_at_one(&r, 3).unwrap(), rat(8, 9));
        assert_eq!(euler_factor_at_one(&n, 3).unwrap(), rat(4, 3));
        assert_eq!(point_count_fp(&r, 5).unwrap(), 16);
        assert_eq!(point_count_fp(&n, 5).unwrap(), 4);
        assert_eq!(point_count_fp(&n, 3).unwrap(), 4);
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(torus("norm1:13,17").dim(), 3);
        assert_eq!(torus("res:13,17").dim(), 4);
        assert_eq!(torus("quot:2,3").dim(), 3);
        assert_eq!(torus("quot:-23").label(), "quot:-23");
        for bad in ["norm1", "foo:-1", "norm1:4", "norm1:1", "norm1:2,2", "norm1:a"] {
            assert!(matches!(TorusSpec::parse(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn biquadratic_ranks() {
        for s in ["norm1:13,17", "quot:13,17", "norm1:-1,2", "quot:-1,-3"] {
            assert_eq!(q_rank(&torus(s)), 0, "{s}");
        }
        assert_eq!(q_rank(&torus("res:-1,2")), 1);
    }
}
