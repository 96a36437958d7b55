//! Splitting of primes in quadratic and biquadratic fields and the
//! Frobenius elements that drive the Euler factors.

use tamagawa::exact::kronecker_symbol;
use tamagawa::quadfield::{splitting_type, FieldSpec, QuadField};

fn main() -> tamagawa::Result<()> {
    let k = QuadField::new(-5)?;
    println!("{k}, discriminant {}", k.disc());
    for p in [2u64, 3, 5, 7, 11, 13, 29, 41] {
        let s = splitting_type(&k, p)?;
        println!("  p = {p:>2}: ({}/{p}) = {:>2}, {:?} {:?}", k.disc(), kronecker_symbol(k.disc(), p as i64), s.kind, s.factors);
    }

    let f = FieldSpec::biquadratic(13, 17)?;
    println!("\nQ(√13, √17), ramified at {:?}", f.ramified_primes());
    for p in [2u64, 3, 13, 17, 19, 53] {
        let dec = f.decomposition_group(p)?;
        let frob = if f.is_ramified(p) { "-".to_string() } else { f.frobenius(p)?.to_string() };
        println!("  p = {p:>2}: decomposition group {dec:?}, Frobenius {frob}");
    }
    println!("  ∞: {:?}", f.decomposition_group_at_infinity());
    Ok(())
}
