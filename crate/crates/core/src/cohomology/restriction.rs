use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{snf_diagonal, IntMatrix};
use crate::cohomology::complex::{cohomology_group, CohomologyGroup};
use crate::lattice::{FiniteGroup, GaloisLattice};

/// Restriction H^n(G, M) → H^n(H, M) in class coordinates: column j is the
/// image of the j-th generator of the source.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub matrix: IntMatrix,
    pub subgroup: Vec<usize>,
}

impl RestrictionMap {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(self.source.orders.len())
    }
}

/// Restricts an n-cochain on G to the tuples drawn from `embedding`.
pub fn restrict_cochain(x: &[BigInt], g: usize, embedding: &[usize], rank: usize, n: usize) -> Vec<BigInt> {
    let h = embedding.len();
    let mut out = Vec::with_capacity(h.pow(n as u32) * rank);
    for hi in 0..h.pow(n as u32) {
        let mut idx = hi;
        let mut digits = vec![0; n];
        for d in digits.iter_mut().rev() {
            *d = embedding[idx % h];
            idx /= h;
        }
        let gi = digits.iter().fold(0, |acc, &x| acc * g + x);
        out.extend_from_slice(&x[gi * rank..(gi + 1) * rank]);
    }
    out
}

pub fn restriction(group: &FiniteGroup, sub: &[usize], m: &GaloisLattice, n: usize) -> Result<RestrictionMap> {
    if m.group() != group {
        return Err(Error::InvalidAction("module is over a different group".into()));
    }
    let (h, embedding) = group.subgroup(sub)?;
    let source = cohomology_group(m, n)?;
    let mh = m.restrict(&h, &embedding);
    let target = cohomology_group(&mh, n)?;
    let cols: Vec<Vec<BigInt>> = source
        .generators
        .iter()
        .map(|x| target.classify(&restrict_cochain(x, group.order(), &embedding, m.rank(), n)))
        .collect();
    let (rows, k) = (target.orders.len(), cols.len());
    let mut matrix = IntMatrix::zeros(rows, k);
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            matrix.set(i, j, v.clone());
        }
    }
    Ok(RestrictionMap { source, target, matrix, subgroup: embedding })
}

/// Order of the kernel of a map of finite groups ⊕Z/a_j → ⊕Z/b_i given in
/// coordinates.
pub fn kernel_order(phi: &IntMatrix, a: &[BigInt], b: &[BigInt]) -> Result<BigInt> {
    if a.iter().chain(b).any(Zero::is_zero) {
        return Err(Error::Unsupported("kernel order of a map between infinite groups".into()));
    }
    let (rows, k) = (b.len(), a.len());
    let source: BigInt = a.iter().product();
    if rows == 0 {
        return Ok(source);
    }
    // coker [phi | diag b] is the cokernel of the map
    let mut big = IntMatrix::zeros(rows, k + rows);
    for i in 0..rows {
        for j in 0..k {
            big.set(i, j, phi.get(i, j).clone());
        }
        big.set(i, k + i, b[i].clone());
    }
    let coker: BigInt = snf_diagonal(&big).into_iter().product();
    let target: BigInt = b.iter().product();
    let image = target / coker;
    let (q, r) = source.div_rem(&image);
    debug_assert!(r.is_zero());
    Ok(if q.is_zero() { BigInt::one() } else { q })
}

/// Order of the kernel of H^n(G, M) → ⊕ H^n(D, M) over the given subgroups.
pub fn joint_kernel_order(group: &FiniteGroup, m: &GaloisLattice, n: usize, subgroups: &[Vec<usize>]) -> Result<BigInt> {
    let source = cohomology_group(m, n)?;
    let k = source.orders.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut b = Vec::new();
    for s in subgroups {
        let r = restriction(group, s, m, n)?;
        for i in 0..r.target.orders.len() {
            rows.push((0..k).map(|j| r.matrix.get(i, j).clone()).collect());
            b.push(r.target.orders[i].clone());
        }
    }
    let mut phi = IntMatrix::zeros(rows.len(), k);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            phi.set(i, j, v.clone());
        }
    }
    kernel_order(&phi, &source.orders, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::complex::coboundary;

    #[test]
    fn restriction_examples() {
        let z = GaloisLattice::trivial(FiniteGroup::klein_four(), 1);
        let g = z.group().clone();
        for n in 1..=3 {
            assert!(restriction(&g, &[0], &z, n).unwrap().is_zero());
        }
        let r = restriction(&g, &[0, 1], &z, 3).unwrap();
        assert_eq!(r.source.invariants.to_string(), "Z/2");
        assert_eq!(r.target.invariants.to_string(), "0");
        assert!(r.is_zero());
        let s = GaloisLattice::sign();
        let r = restriction(s.group(), &[0, 1], &s, 1).unwrap();
        assert!(r.is_identity());
        assert!(matches!(restriction(&g, &[1, 2], &z, 1), Err(Error::NotSubgroup(_))));
    }

    #[test]
    fn restriction_to_whole_group_is_identity() {
        let g = FiniteGroup::klein_four();
        let z = GaloisLattice::trivial(g.clone(), 1);
        for n in 1..=3 {
            assert!(restriction(&g, &[0, 1, 2, 3], &z, n).unwrap().is_identity());
        }
        assert_eq!(joint_kernel_order(&g, &z, 3, &[vec![0, 1, 2, 3]]).unwrap(), BigInt::one());
        assert_eq!(joint_kernel_order(&g, &z, 3, &[vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap(), BigInt::from(2));
        assert_eq!(joint_kernel_order(&g, &z, 2, &[vec![0, 1], vec![0, 2]]).unwrap(), BigInt::one());
    }

    #[test]
    fn functoriality_on_cocycles() {
        // G = Z/4 ⊃ H = {0, 2} ⊃ K = {0}; and Klein four ⊃ {0,3} ⊃ {0}
        for (g, h) in [(FiniteGroup::cyclic(4), vec![0, 2]), (FiniteGroup::klein_four(), vec![0, 3])] {
            let m = GaloisLattice::regular(g.clone());
            for n in 1..=2 {
                let src = cohomology_group(&m, n).unwrap();
                let d = coboundary(&g, &m, n).unwrap();
                for x in &src.generators {
                    assert!(d.mul_vec(x).iter().all(Zero::is_zero));
                    let via_h = restrict_cochain(x, g.order(), &h, m.rank(), n);
                    let pos: Vec<usize> = vec![0];
                    let two_step = restrict_cochain(&via_h, h.len(), &pos, m.rank(), n);
                    let direct = restrict_cochain(x, g.order(), &[0], m.rank(), n);
                    assert_eq!(two_step, direct);
                }
            }
        }
    }

    #[test]
    fn functoriality_of_maps() {
        // (Z/2)^3 ⊃ H = {0,1,2,3} ⊃ K = {0,3}
        let g = FiniteGroup::elementary_abelian_2(3);
        let (h, emb_h) = g.subgroup(&[0, 1, 2, 3]).unwrap();
        let z = GaloisLattice::trivial(g.clone(), 1);
        let zh = z.restrict(&h, &emb_h);
        for n in 1..=2 {
            let gh = restriction(&g, &emb_h, &z, n).unwrap();
            let hk = restriction(&h, &[0, 3], &zh, n).unwrap();
            let gk = restriction(&g, &[0, 3], &z, n).unwrap();
            let composed = hk.matrix.mul(&gh.matrix);
            for i in 0..gk.matrix.rows() {
                for j in 0..gk.matrix.cols() {
                    let o = &gk.target.orders[i];
                    assert_eq!(composed.get(i, j).mod_floor(o), gk.matrix.get(i, j).mod_floor(o));
                }
            }
        }
    }

    #[test]
    fn kernel_order_of_small_maps() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        // Z/4 → Z/2, 1 ↦ 1: kernel of order 2
        let phi = IntMatrix::from_rows(&[[1]]);
        assert_eq!(kernel_order(&phi, &b(&[4]), &b(&[2])).unwrap(), BigInt::from(2));
        // Z/2 → Z/4, 1 ↦ 2: injective
        let phi = IntMatrix::from_rows(&[[2]]);
        assert_eq!(kernel_order(&phi, &b(&[2]), &b(&[4])).unwrap(), BigInt::one());
        assert_eq!(kernel_order(&IntMatrix::zeros(0, 1), &b(&[6]), &[]).unwrap(), BigInt::from(6));
    }
}
