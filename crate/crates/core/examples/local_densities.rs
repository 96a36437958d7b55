//! Local densities: the good-prime formula, brute-force lifting, and the
//! stabilization trace at a bad prime.

use tamagawa::exact::fmt_rat;
use tamagawa::lattice::TorusSpec;
use tamagawa::local::{bad_prime_density, brute_force_density, count_solutions, local_density_good};

const BUDGET: u64 = 100_000_000;

fn main() -> tamagawa::Result<()> {
    let t = TorusSpec::parse("norm1:-1")?;
    let model = t.model().expect("quadratic tori have a model");

    for p in [3, 5, 7] {
        let good = local_density_good(&t, p)?;
        let brute = brute_force_density(model, p, 3, BUDGET)?;
        let counts = count_solutions(model, p, 4, BUDGET)?;
        println!("p = {p}: formula {}, lifting {}, counts {counts:?}", fmt_rat(&good.value), fmt_rat(&brute.value));
    }

    let d = bad_prime_density(&t, 2, 12, BUDGET)?;
    println!("\nx² + y² = 1 at p = 2 (stabilized: {})", d.stabilized);
    for e in &d.trace {
        println!("  mod 2^{:<2} {:>6} solutions, ratio {}", e.k, e.count, fmt_rat(&e.ratio));
    }
    println!("μ_2 = {}", fmt_rat(&d.value));

    // a bigger ramified prime needs more levels before the ratio settles
    let t = TorusSpec::parse("res:-3")?;
    let d = bad_prime_density(&t, 3, 6, BUDGET)?;
    let ratios: Vec<String> = d.trace.iter().map(|e| fmt_rat(&e.ratio)).collect();
    println!("\n{} at 3: {}", t.label(), ratios.join(", "));
    Ok(())
}
