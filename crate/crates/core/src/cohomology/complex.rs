use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{snf_full, Track};
use crate::exact::{AbelianGroupInvariants, IntMatrix};
use crate::lattice::{FiniteGroup, GaloisLattice};

/// Largest cochain space (columns) the complex builder accepts.
pub const MATRIX_BUDGET: usize = 20_000;

/// Inhomogeneous cochains C^n(G, M) = Maps(G^n, M) with the standard
/// coboundary; a cochain is a vector indexed by (tuple, coordinate) with the
/// tuple (g_1, …, g_n) read as a base-|G| number, g_1 most significant.
pub struct CochainComplex {
    pub group: FiniteGroup,
    pub module: GaloisLattice,
    /// d^0 … d^{n_max}
    pub boundaries: Vec<IntMatrix>,
}

fn dim(g: usize, r: usize, n: usize) -> usize {
    g.pow(n as u32) * r
}

fn tuple(mut idx: usize, g: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for i in (0..n).rev() {
        t[i] = idx % g;
        idx /= g;
    }
    t
}

fn index(t: &[usize], g: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * g + x)
}

/// The coboundary C^n → C^{n+1}.
pub fn coboundary(group: &FiniteGroup, m: &GaloisLattice, n: usize) -> Result<IntMatrix> {
    let (g, r) = (group.order(), m.rank());
    let (cols, rows) = (dim(g, r, n), dim(g, r, n + 1));
    if rows > MATRIX_BUDGET * 4 || cols > MATRIX_BUDGET {
        return Err(Error::BudgetExceeded { needed: rows as u128, budget: MATRIX_BUDGET as u128 });
    }
    let mut d = IntMatrix::zeros(rows, cols);
    let add = |d: &mut IntMatrix, i: usize, j: usize, v: &BigInt| {
        let cur = d.get(i, j) + v;
        d.set(i, j, cur);
    };
    for ti in 0..g.pow(n as u32 + 1) {
        let t = tuple(ti, g, n + 1);
        // g_1 · f(g_2, …, g_{n+1})
        let src = index(&t[1..], g);
        let a = m.action(t[0]);
        for i in 0..r {
            for j in 0..r {
                if !a.get(i, j).is_zero() {
                    add(&mut d, ti * r + i, src * r + j, a.get(i, j));
                }
            }
        }
        // Σ (−1)^i f(…, g_i g_{i+1}, …)
        for i in 0..n {
            let mut s = Vec::with_capacity(n);
            s.extend_from_slice(&t[..i]);
            s.push(group.mul(t[i], t[i + 1]));
            s.extend_from_slice(&t[i + 2..]);
            let src = index(&s, g);
            let sign = if (i + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for c in 0..r {
                add(&mut d, ti * r + c, src * r + c, &sign);
            }
        }
        // (−1)^{n+1} f(g_1, …, g_n)
        let src = index(&t[..n], g);
        let sign = if (n + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for c in 0..r {
            add(&mut d, ti * r + c, src * r + c, &sign);
        }
    }
    Ok(d)
}

impl CochainComplex {
    pub fn new(module: &GaloisLattice, n_max: usize) -> Result<Self> {
        let group = module.group().clone();
        let boundaries = (0..=n_max).map(|n| coboundary(&group, module, n)).collect::<Result<_>>()?;
        Ok(CochainComplex { group, module: module.clone(), boundaries })
    }

    /// d^{n+1} ∘ d^n = 0 for every n.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}

/// H^n with the data needed to name classes: generators as cocycles and a
/// map from cocycles to coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub invariants: AbelianGroupInvariants,
    /// Order (0 for Z) of each coordinate in `classify`.
    pub orders: Vec<BigInt>,
    /// One cocycle per coordinate.
    pub generators: Vec<Vec<BigInt>>,
    // coordinate rows of the cocycle basis, composed with SNF transforms
    kernel_coords: IntMatrix,
    quotient_u: IntMatrix,
    quotient_rows: Vec<usize>,
}

impl CohomologyGroup {
    /// Coordinates of the class of a cocycle, reduced mod each order.
    pub fn classify(&self, x: &[BigInt]) -> Vec<BigInt> {
        let w = self.kernel_coords.mul_vec(x);
        let z = self.quotient_u.mul_vec(&w);
        self.quotient_rows
            .iter()
            .zip(&self.orders)
            .map(|(&i, o)| if o.is_zero() { z[i].clone() } else { z[i].mod_floor(o) })
            .collect()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.invariants.order()
    }
}

/// ker(b) / im(a) for a: C^{n−1} → C^n, b: C^n → C^{n+1}.
fn homology(a: &IntMatrix, b: &IntMatrix) -> CohomologyGroup {
    let c = b.cols();
    let sb = snf_full(b, Track { left: false, right: true });
    let rho = sb.d.iter().filter(|x| !x.is_zero()).count();
    let (v, v_inv) = (sb.v.unwrap(), sb.v_inv.unwrap());
    let k = c - rho;
    // x in ker b  <=>  x = V[:, rho..]·w, w = (V⁻¹x)[rho..]
    let kernel_coords = v_inv.submatrix(rho, c, 0, c);
    let kernel_basis = v.submatrix(0, c, rho, c);
    let img = kernel_coords.mul(a);
    let sc = snf_full(&img, Track { left: true, right: false });
    let (u, u_inv) = (sc.u.unwrap(), sc.u_inv.unwrap());
    let mut orders = Vec::new();
    let mut rows = Vec::new();
    for i in 0..k {
        let d = sc.d.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_one() {
            continue;
        }
        orders.push(d.abs());
        rows.push(i);
    }
    let generators = rows
        .iter()
        .map(|&i| kernel_basis.mul_vec(&u_inv.column(i)))
        .collect();
    let free = orders.iter().filter(|o| o.is_zero()).count();
    let torsion: Vec<BigInt> = orders.iter().filter(|o| !o.is_zero()).cloned().collect();
    let invariants = AbelianGroupInvariants::from_snf_diagonal(&torsion, free);
    CohomologyGroup { invariants, orders, generators, kernel_coords, quotient_u: u, quotient_rows: rows }
}

/// H^n(G, M) with class coordinates, 0 ≤ n ≤ 3.
pub fn cohomology_group(m: &GaloisLattice, n: usize) -> Result<CohomologyGroup> {
    if n > 3 {
        return Err(Error::Unsupported(format!("cohomology in degree {n}")));
    }
    let g = m.group().order();
    let needed = g.pow(n as u32 + 1) * m.rank();
    if needed > MATRIX_BUDGET {
        return Err(Error::BudgetExceeded { needed: needed as u128, budget: MATRIX_BUDGET as u128 });
    }
    let b = coboundary(m.group(), m, n)?;
    let a = if n == 0 { IntMatrix::zeros(m.rank(), 0) } else { coboundary(m.group(), m, n - 1)? };
    Ok(homology(&a, &b))
}

pub fn cohomology(group: &FiniteGroup, m: &GaloisLattice, n: usize) -> Result<AbelianGroupInvariants> {
    if m.group() != group {
        return Err(Error::InvalidAction("module is over a different group".into()));
    }
    Ok(cohomology_group(m, n)?.invariants)
}

/// (M ⊗ Q/Z)^G from the invariant factors of the stacked (g − 1).
pub fn h0_torsion_dual(group: &FiniteGroup, m: &GaloisLattice) -> Result<AbelianGroupInvariants> {
    if m.group() != group {
        return Err(Error::InvalidAction("module is over a different group".into()));
    }
    let rank = m.invariant_rank();
    if rank > 0 {
        return Err(Error::AssumptionViolated(rank));
    }
    let d = crate::exact::snf_diagonal(&m.stacked_augmentation());
    Ok(AbelianGroupInvariants::from_cyclic_orders(&d))
}
