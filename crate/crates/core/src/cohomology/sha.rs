use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::cohomology::complex::cohomology_group;
use crate::cohomology::restriction::joint_kernel_order;
use crate::error::{Error, Result};
use crate::exact::AbelianGroupInvariants;
use crate::lattice::{build_torus, Family, FiniteGroup, GaloisLattice, TorusSpec};
use crate::quadfield::FieldSpec;
use crate::report::record::ser_display;

/// Unramified primes checked on top of the ramified ones and ∞.
pub const SAMPLED_PRIMES: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct PlaceGroup {
    pub place: String,
    pub subgroup: Vec<usize>,
    pub cyclic: bool,
}

/// The knot group ker(H^3(G, Z) → ⊕_v H^3(G_v, Z)) and how it was found.
#[derive(Clone, Debug, Serialize)]
pub struct ShaEvidence {
    pub h3: AbelianGroupInvariants,
    pub places: Vec<PlaceGroup>,
    /// Kernel over the ramified primes and ∞.
    #[serde(serialize_with = "ser_display")]
    pub order_required_places: BigInt,
    /// Kernel after also restricting to the sampled unramified primes.
    #[serde(serialize_with = "ser_display")]
    pub order: BigInt,
}

fn is_cyclic_subgroup(g: &FiniteGroup, h: &[usize]) -> bool {
    h.iter().any(|&x| g.generated_by(x).len() == h.len())
}

/// #Sha(T) for a norm-one torus, as the knot group of its splitting field.
pub fn sha_order(t: &TorusSpec) -> Result<ShaEvidence> {
    if t.family() != Family::NormOne {
        return Err(Error::Unsupported(format!("Sha via the knot group needs a norm-one torus, got {}", t.label())));
    }
    let field = t.field();
    let g = t.group().clone();
    let z = GaloisLattice::trivial(g.clone(), 1);
    let h3 = cohomology_group(&z, 3)?.invariants;
    let mut places = Vec::new();
    for p in field.ramified_primes() {
        places.push(PlaceGroup { place: p.to_string(), subgroup: field.decomposition_group(p)?, cyclic: false });
    }
    places.push(PlaceGroup { place: "inf".into(), subgroup: field.decomposition_group_at_infinity(), cyclic: false });
    let required = places.len();
    let mut p = 2u64;
    while places.len() < required + SAMPLED_PRIMES {
        p += 1;
        if crate::exact::is_prime(p) && !field.is_ramified(p) {
            places.push(PlaceGroup { place: p.to_string(), subgroup: field.decomposition_group(p)?, cyclic: false });
        }
    }
    for pl in &mut places {
        pl.cyclic = is_cyclic_subgroup(&g, &pl.subgroup);
    }
    let subgroups: Vec<Vec<usize>> = places.iter().map(|pl| pl.subgroup.clone()).collect();
    let order_required_places = joint_kernel_order(&g, &z, 3, &subgroups[..required])?;
    let order = joint_kernel_order(&g, &z, 3, &subgroups)?;
    Ok(ShaEvidence { h3, places, order_required_places, order })
}

/// Ono's constant i(T).
pub fn ono_constant(t: &TorusSpec) -> Result<BigInt> {
    match (t.family(), t.field()) {
        (Family::NormOne, _) => Ok(sha_order(t)?.order),
        // isomorphic over Q to the norm-one torus via t ↦ t/σ(t)
        (Family::Quot, FieldSpec::Quadratic(_)) => Ok(sha_order(&build_torus(Family::NormOne, *t.field())?)?.order),
        // Sha embeds in the kernel of Br(Q) → ⊕ Br(Q_v), which vanishes
        (Family::Quot, FieldSpec::Biquadratic(_)) => Ok(BigInt::one()),
        // H^1(Q, Res G_m) = 0 by Shapiro and Hilbert 90
        (Family::Res, _) => Ok(BigInt::one()),
    }
}

/// #H^1(Gal, X^*); infinite groups are reported as an error.
pub fn h1_order(t: &TorusSpec) -> Result<BigInt> {
    let x = t.character_lattice();
    cohomology_group(x, 1)?
        .order()
        .ok_or_else(|| Error::Unsupported(format!("H^1 of {} is infinite", t.label())))
}

/// #Sha_BK(h_1(T)) = c_Γ · i(T).
pub fn sha_bk_order(c_gamma: &BigInt, ono: &BigInt) -> BigInt {
    c_gamma * ono
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::complex::h0_torsion_dual;

    fn torus(s: &str) -> TorusSpec {
        TorusSpec::parse(s).unwrap()
    }

    #[test]
    fn quadratic_knot_groups_are_trivial() {
        for d in [-1, -3, -5, 5, 13] {
            let e = sha_order(&torus(&format!("norm1:{d}"))).unwrap();
            assert_eq!(e.h3.to_string(), "0");
            assert_eq!(e.order, BigInt::one());
        }
        assert_eq!(ono_constant(&torus("quot:-23")).unwrap(), BigInt::one());
    }

    #[test]
    fn thirteen_seventeen() {
        let e = sha_order(&torus("norm1:13,17")).unwrap();
        assert_eq!(e.h3.to_string(), "Z/2");
        assert!(e.places.iter().all(|p| p.cyclic));
        assert_eq!(e.order, BigInt::from(2));
        assert_eq!(e.order_required_places, BigInt::from(2));
        // Q(i, √2): 2 has the full group as decomposition group
        let e = sha_order(&torus("norm1:-1,2")).unwrap();
        assert_eq!(e.order, BigInt::one());
        assert!(sha_order(&torus("res:-1")).is_err());
    }

    #[test]
    fn h1_matches_torsion_dual() {
        for s in ["norm1:-1", "quot:-1", "norm1:13,17", "quot:13,17", "norm1:-1,2", "quot:5,-3"] {
            let t = torus(s);
            let h1 = h1_order(&t).unwrap();
            let h0 = h0_torsion_dual(t.group(), t.character_lattice()).unwrap().order().unwrap();
            assert_eq!(h1, h0, "{s}");
        }
        assert_eq!(h1_order(&torus("norm1:13,17")).unwrap(), BigInt::from(4));
        assert_eq!(h1_order(&torus("norm1:-1")).unwrap(), BigInt::from(2));
    }
}
