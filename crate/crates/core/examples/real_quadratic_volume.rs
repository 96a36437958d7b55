//! Archimedean volume of norm-one tori of real quadratic fields: the
//! fundamental unit sets the length of T(R)/Γ.

use tamagawa::global::{archimedean_volume, c_gamma, l_value, verify_tnc, TncOptions};
use tamagawa::lattice::TorusSpec;
use tamagawa::quadfield::fundamental_unit;

fn main() -> tamagawa::Result<()> {
    for d in [2i64, 3, 5, 13, 94] {
        let t = TorusSpec::parse(&format!("norm1:{d}"))?;
        let disc = t.field().quadratic_discriminants()[0];
        let u = fundamental_unit(disc)?;
        let vol = archimedean_volume(&t, 1e-9)?;
        let l = l_value(disc, 1e-10)?;
        let c = c_gamma(&t)?;
        let tnc = verify_tnc(&t, 1e-6, &TncOptions::default())?;
        let tau = tnc.tau_tam.map(|r| format!("{:.8}", r.value)).unwrap_or_else(|| "-".into());
        println!(
            "d = {d:>3}: ε = {} + {}ω (N = {:>2}), vol = {:.10}, L(1) = {:.10}, c_Γ = {}, τ = {tau} [{}]",
            u.x, u.y, u.norm, vol.value.value, l.value.value, c.value, tnc.verdict
        );
    }
    Ok(())
}
