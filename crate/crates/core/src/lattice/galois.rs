use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::matrix::{snf_full, Track};
use crate::exact::IntMatrix;
use crate::lattice::group::FiniteGroup;

/// A free Z-module of rank r with a left action of a finite group, one
/// matrix per group element acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisLattice {
    group: FiniteGroup,
    action: Vec<IntMatrix>,
    rank: usize,
}

impl GaloisLattice {
    pub fn new(group: FiniteGroup, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction("one matrix per group element required".into()));
        }
        let rank = action[0].rows();
        if action.iter().any(|a| a.rows() != rank || a.cols() != rank) {
            return Err(Error::InvalidAction("matrices must be square of equal size".into()));
        }
        if action[group.identity()] != IntMatrix::identity(rank) {
            return Err(Error::InvalidAction("identity must act trivially".into()));
        }
        for g in group.elements() {
            if !action[g].determinant().abs().is_one() && rank > 0 {
                return Err(Error::InvalidAction(format!("action of {} is not unimodular", group.label(g))));
            }
            for h in group.elements() {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({}, {})",
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(GaloisLattice { group, action, rank })
    }

    pub fn trivial(group: FiniteGroup, rank: usize) -> Self {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GaloisLattice { group, action, rank }
    }

    /// Z with the generator of Z/2 acting by −1.
    pub fn sign() -> Self {
        let g = FiniteGroup::cyclic(2);
        GaloisLattice::new(g, vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[-1]])]).unwrap()
    }

    /// The permutation module Z[G]: g sends e_h to e_{gh}.
    pub fn regular(group: FiniteGroup) -> Self {
        let n = group.order();
        let action = group
            .elements()
            .map(|g| {
                let mut m = IntMatrix::zeros(n, n);
                for h in group.elements() {
                    m.set(group.mul(g, h), h, BigInt::one());
                }
                m
            })
            .collect();
        GaloisLattice { group, action, rank: n }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Hom(M, Z) with the contragredient action g ↦ (g⁻¹)ᵀ.
    pub fn dual(&self) -> GaloisLattice {
        let action = self.group.elements().map(|g| self.action[self.group.inverse(g)].transpose()).collect();
        GaloisLattice { group: self.group.clone(), action, rank: self.rank }
    }

    /// The same module viewed over a subgroup, given by its embedding.
    pub fn restrict(&self, sub: &FiniteGroup, embedding: &[usize]) -> GaloisLattice {
        let action = embedding.iter().map(|&g| self.action[g].clone()).collect();
        GaloisLattice { group: sub.clone(), action, rank: self.rank }
    }

    /// The matrices (g − 1) stacked vertically.
    pub fn stacked_augmentation(&self) -> IntMatrix {
        let id = IntMatrix::identity(self.rank);
        let blocks: Vec<IntMatrix> = self.action.iter().map(|a| a.sub(&id)).collect();
        IntMatrix::vstack(&blocks)
    }

    /// Rank of the sublattice of invariants.
    pub fn invariant_rank(&self) -> usize {
        if self.rank == 0 {
            return 0;
        }
        self.rank - self.stacked_augmentation().rank()
    }

    /// M / Z·v for a primitive invariant vector v.
    pub fn quotient_by_invariant(&self, v: &[BigInt]) -> Result<GaloisLattice> {
        if v.len() != self.rank {
            return Err(Error::Dimension(format!("vector of length {} in rank {}", v.len(), self.rank)));
        }
        for a in &self.action {
            if a.mul_vec(v) != v {
                return Err(Error::InvalidAction("quotient vector is not invariant".into()));
            }
        }
        let col = IntMatrix::from_vec(self.rank, 1, v.to_vec())?;
        let snf = snf_full(&col, Track { left: true, right: false });
        if !snf.d[0].is_one() {
            return Err(Error::InvalidAction("quotient vector is not primitive".into()));
        }
        // in the coordinates y = u·x the submodule is Z·e_0
        let (u, u_inv) = (snf.u.unwrap(), snf.u_inv.unwrap());
        let r = self.rank;
        let action = self
            .action
            .iter()
            .map(|a| u.mul(a).mul(&u_inv).submatrix(1, r, 1, r))
            .collect();
        Ok(GaloisLattice { group: self.group.clone(), action, rank: r - 1 })
    }

    /// The kernel of a primitive invariant functional w: M → Z.
    pub fn kernel_of_functional(&self, w: &[BigInt]) -> Result<GaloisLattice> {
        if w.len() != self.rank {
            return Err(Error::Dimension(format!("functional of length {} in rank {}", w.len(), self.rank)));
        }
        let row = IntMatrix::from_vec(1, self.rank, w.to_vec())?;
        for a in &self.action {
            if row.mul(a) != row {
                return Err(Error::InvalidAction("functional is not invariant".into()));
            }
        }
        let snf = snf_full(&row, Track { left: false, right: true });
        if !snf.d[0].is_one() {
            return Err(Error::InvalidAction("functional is not primitive".into()));
        }
        // kernel basis: columns 1.. of v
        let (v, v_inv) = (snf.v.unwrap(), snf.v_inv.unwrap());
        let r = self.rank;
        let action = self
            .action
            .iter()
            .map(|a| v_inv.mul(a).mul(&v).submatrix(1, r, 1, r))
            .collect();
        Ok(GaloisLattice { group: self.group.clone(), action, rank: r - 1 })
    }

    /// Sum of the standard basis vectors (for permutation modules).
    pub fn all_ones(&self) -> Vec<BigInt> {
        vec![BigInt::one(); self.rank]
    }
}

/// Builds a lattice from small integer matrices.
pub fn lattice_from_i64(group: FiniteGroup, mats: &[Vec<Vec<i64>>]) -> Result<GaloisLattice> {
    let action = mats.iter().map(|m| IntMatrix::from_rows(m)).collect();
    GaloisLattice::new(group, action)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_module_is_homomorphism() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::klein_four(), FiniteGroup::cyclic(4)] {
            let m = GaloisLattice::regular(g.clone());
            let checked = GaloisLattice::new(g, m.actions().to_vec()).unwrap();
            assert_eq!(checked.invariant_rank(), 1);
        }
    }

    #[test]
    fn rejects_non_homomorphism() {
        let g = FiniteGroup::cyclic(2);
        let bad = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[[2]])];
        assert!(GaloisLattice::new(g.clone(), bad).is_err());
        let bad = vec![IntMatrix::identity(2), IntMatrix::from_rows(&[[1, 1], [0, 1]])];
        assert!(GaloisLattice::new(g, bad).is_err());
    }

    #[test]
    fn dual_is_inverse_transpose() {
        let m = GaloisLattice::regular(FiniteGroup::cyclic(3));
        let d = m.dual();
        for g in m.group().elements() {
            assert_eq!(d.action(g).transpose().mul(m.action(g)), IntMatrix::identity(3));
        }
    }

    #[test]
    fn quotient_and_kernel_of_swap_module() {
        let m = GaloisLattice::regular(FiniteGroup::cyclic(2));
        let q = m.quotient_by_invariant(&m.all_ones()).unwrap();
        assert_eq!(q.action(1), &IntMatrix::from_rows(&[[-1]]));
        let k = m.kernel_of_functional(&m.all_ones()).unwrap();
        assert_eq!(k.action(1), &IntMatrix::from_rows(&[[-1]]));
        assert_eq!(q.invariant_rank() + k.invariant_rank(), 0);
        assert!(m.quotient_by_invariant(&[BigInt::from(1), BigInt::from(0)]).is_err());
    }

    #[test]
    fn sign_module() {
        let s = GaloisLattice::sign();
        assert_eq!(s.invariant_rank(), 0);
        assert_eq!(s.dual(), s);
        let t = lattice_from_i64(FiniteGroup::cyclic(2), &[vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 1]]]).unwrap();
        assert_eq!(t.invariant_rank(), 2);
    }
}
