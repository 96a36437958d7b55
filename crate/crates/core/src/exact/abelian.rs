use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exact::matrix::{snf_diagonal, IntMatrix};

/// Invariant-factor presentation `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    pub fn trivial() -> Self {
        AbelianGroupInvariants { free_rank: 0, torsion: Vec::new() }
    }

    /// From a list of cyclic orders in any order; zero entries count as free
    /// summands and unit entries are dropped.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            m.set(i, i, o.clone());
        }
        Self::from_snf_diagonal(&snf_diagonal(&m), 0)
    }

    /// From Smith invariant factors of a relation matrix, plus generators not
    /// touched by any relation.
    pub fn from_snf_diagonal(d: &[BigInt], extra_free: usize) -> Self {
        let free_rank = extra_free + d.iter().filter(|x| x.is_zero()).count();
        let torsion = d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect();
        AbelianGroupInvariants { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

impl Serialize for AbelianGroupInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalizes_to_divisibility_chain() {
        let g = AbelianGroupInvariants::from_cyclic_orders(&b(&[2, 3]));
        assert_eq!(g.torsion(), &b(&[6])[..]);
        let g = AbelianGroupInvariants::from_cyclic_orders(&b(&[4, 2, 1, 0]));
        assert_eq!(g.torsion(), &b(&[2, 4])[..]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), None);
        assert_eq!(g.to_string(), "Z ⊕ Z/2 ⊕ Z/4");
    }

    #[test]
    fn trivial_renders_as_zero() {
        assert_eq!(AbelianGroupInvariants::trivial().to_string(), "0");
        assert_eq!(AbelianGroupInvariants::trivial().order(), Some(BigInt::one()));
    }
}
