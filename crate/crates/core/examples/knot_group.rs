//! Group cohomology of Galois lattices, the knot group of a biquadratic
//! field, and Ono's constant i(T).

use tamagawa::cohomology::{cohomology, h0_torsion_dual, h1_order, sha_order};
use tamagawa::lattice::{FiniteGroup, GaloisLattice, TorusSpec};

fn main() -> tamagawa::Result<()> {
    let klein = FiniteGroup::klein_four();
    let z = GaloisLattice::trivial(klein.clone(), 1);
    for n in 0..=3 {
        println!("H^{n}((Z/2)², Z) = {}", cohomology(&klein, &z, n)?);
    }
    let c2 = FiniteGroup::cyclic(2);
    for n in 0..=3 {
        println!("H^{n}(Z/2, Z⁻) = {}", cohomology(&c2, &GaloisLattice::sign(), n)?);
    }

    for s in ["norm1:-1", "norm1:5", "norm1:13,17", "norm1:-1,2", "quot:-1,3"] {
        let t = TorusSpec::parse(s)?;
        let h1 = h1_order(&t)?;
        let dual = h0_torsion_dual(t.group(), t.character_lattice())?;
        print!("\n{s}: #H^1 = {h1}, H^0 torsion dual = {dual}");
        if let Ok(ev) = sha_order(&t) {
            let cyclic = ev.places.iter().filter(|p| p.cyclic).count();
            print!(", i(T) = {} ({cyclic}/{} decomposition groups cyclic)", ev.order, ev.places.len());
        }
    }
    println!();
    Ok(())
}
