//! Euler factors at good primes against point counts over F_p.
//!
//!     cargo run --example euler_factors -- norm1:-7 50

use num_bigint::BigInt;
use tamagawa::exact::{fmt_rat, BigRat};
use tamagawa::lattice::{brute_force_point_count, euler_factor_at_one, frobenius_matrix, point_count_fp, TorusSpec};

fn main() -> tamagawa::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let t = TorusSpec::parse(args.first().map(String::as_str).unwrap_or("norm1:-7"))?;
    let pmax: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(50);

    println!("{} (dimension {}), bad primes {:?}", t.label(), t.dim(), t.bad_primes());
    println!("{:>4} {:>8} {:>12} {:>8} {:>8}", "p", "frob", "E_p(1)", "#T(F_p)", "enum");
    for p in t.good_primes_up_to(pmax) {
        let e = euler_factor_at_one(&t, p)?;
        let n = point_count_fp(&t, p)?;
        let scaled = &e * BigRat::from_integer(BigInt::from(p).pow(t.dim() as u32));
        assert_eq!(scaled, BigRat::from_integer(n.into()));
        // Frobenius is ±1 on a rank-one lattice, a permutation otherwise
        let f = frobenius_matrix(&t, p)?;
        let trace: BigInt = (0..t.dim()).map(|i| f.get(i, i).clone()).sum();
        let brute = if p <= 13 { brute_force_point_count(&t, p, 1 << 20)?.to_string() } else { "-".into() };
        println!("{p:>4} {:>8} {:>12} {n:>8} {brute:>8}", format!("tr {trace}"), fmt_rat(&e));
    }
    Ok(())
}
