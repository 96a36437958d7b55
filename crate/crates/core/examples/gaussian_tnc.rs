//! The Tamagawa number of the norm-one torus of Q(i), from its pieces.

use tamagawa::exact::fmt_rat;
use tamagawa::global::{c_gamma, ono_rhs, tau_coh, verify_tnc, TncOptions};
use tamagawa::lattice::TorusSpec;

fn main() -> tamagawa::Result<()> {
    let t = TorusSpec::parse("norm1:-1")?;
    let opts = TncOptions::default();
    let tc = tau_coh(&t, 1e-9, &opts)?;
    println!("S = {:?}", tc.places);
    println!("L_S(1)   = {:.12} ± {:.1e}  (π/4 = {:.12})", tc.partial_l.value, tc.partial_l.abs_err, std::f64::consts::FRAC_PI_4);
    for d in &tc.densities {
        println!("μ_{}      = {}", d.p, fmt_rat(&d.value));
    }
    println!("vol      = {:.12} ± {:.1e}", tc.volume.value.value, tc.volume.value.abs_err);
    println!("τ^coh    = {:.12}", tc.value.value);
    println!("good primes checked: {}", tc.good_primes_checked.len());

    let c = c_gamma(&t)?;
    println!("c_Γ      = {} ({}, heuristic: {})", c.value, c.method, c.heuristic);
    println!("#H^1/i   = {}", fmt_rat(&ono_rhs(&t)?));

    let rep = verify_tnc(&t, 1e-6, &opts)?;
    println!("verdict  = {}", rep.verdict);
    Ok(())
}
