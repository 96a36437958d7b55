use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use tamagawa::cohomology::cohomology;
use tamagawa::exact::{kronecker_symbol, smith_normal_form, snf_diagonal, IntMatrix};
use tamagawa::global::l_value;
use tamagawa::lattice::{euler_factor_at_one, point_count_fp, FiniteGroup, GaloisLattice, TorusSpec};
use tamagawa::quadfield::{class_group, is_fundamental_discriminant};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, rows * cols)
        .prop_map(move |v| IntMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

fn permute_rows(m: &IntMatrix, perm: &[usize]) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for (i, &src) in perm.iter().enumerate() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(src, j).clone());
        }
    }
    out
}

proptest! {
    #[test]
    fn smith_form_is_a_factorization((m, rot) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (matrix(r, c), 0..r))) {
        let s = smith_normal_form(&m);
        let prod = s.u.mul(&m).mul(&s.v);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let want = if i == j && i < s.d.len() { s.d[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(prod.get(i, j), &want);
            }
        }
        for w in s.d.windows(2) {
            prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
        }
        let perm: Vec<usize> = (0..m.rows()).map(|i| (i + rot) % m.rows()).collect();
        prop_assert_eq!(snf_diagonal(&permute_rows(&m, &perm)), s.d.clone());
        prop_assert_eq!(snf_diagonal(&m.transpose()), s.d);
    }

    #[test]
    fn kronecker_is_multiplicative(a in -200i64..200, m in -60i64..60, n in -60i64..60) {
        prop_assert_eq!(kronecker_symbol(a, m * n), kronecker_symbol(a, m) * kronecker_symbol(a, n));
    }

    #[test]
    fn kronecker_is_multiplicative_on_top(a in -60i64..60, b in -60i64..60, n in 1i64..200) {
        prop_assume!(n % 2 == 1);
        prop_assert_eq!(kronecker_symbol(a * b, n), kronecker_symbol(a, n) * kronecker_symbol(b, n));
    }

    #[test]
    fn euler_factor_counts_points(d in -60i64..60, fam in 0usize..3, p_idx in 0usize..20) {
        let fam = ["res", "norm1", "quot"][fam];
        let t = match TorusSpec::parse(&format!("{fam}:{d}")) {
            Ok(t) => t,
            Err(_) => return Ok(()),
        };
        let primes = t.good_primes_up_to(200);
        let p = primes[p_idx % primes.len()];
        let e = euler_factor_at_one(&t, p).unwrap();
        let n = point_count_fp(&t, p).unwrap();
        let scale = BigInt::from(p).pow(t.dim() as u32);
        prop_assert_eq!(e * num_rational::BigRational::from_integer(scale), num_rational::BigRational::from_integer(n.into()));
    }

    #[test]
    fn analytic_class_number_matches_forms(n in 3i64..600) {
        let disc = -n;
        prop_assume!(is_fundamental_discriminant(disc));
        let w = match disc { -3 => 6.0, -4 => 4.0, _ => 2.0 };
        let l = l_value(disc, 1e-9).unwrap().value.value;
        let h = class_group(disc).unwrap().h as f64;
        prop_assert!((l * (n as f64).sqrt() * w / (2.0 * std::f64::consts::PI) - h).abs() < 1e-5);
    }
}

#[test]
fn induced_modules_are_acyclic() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::klein_four()] {
        let m = GaloisLattice::regular(g.clone());
        for n in 1..=2 {
            assert_eq!(cohomology(&g, &m, n).unwrap().to_string(), "0");
        }
    }
}
