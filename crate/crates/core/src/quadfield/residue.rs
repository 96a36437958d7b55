use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::primes::is_prime;
use crate::quadfield::field::QuadField;

/// Number of units a + bω of O/p^k with N(a + bω) ≡ target mod p^k.
///
/// Enumerates all p^(2k) pairs; the sum over `a` is split across rayon
/// workers and is independent of the partition.
pub fn residue_ring_norm_count(field: &QuadField, p: u64, k: u32, target: i64, budget: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = p.checked_pow(k).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: budget as u128 })?;
    let needed = (m as u128) * (m as u128);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: budget as u128 });
    }
    let mi = m as i128;
    let target = (target as i128).rem_euclid(mi);
    let (t, n) = (field.omega_trace() as i128, field.omega_norm() as i128);
    let pi = p as i128;
    Ok((0..m)
        .into_par_iter()
        .map(|a| {
            let a = a as i128;
            let mut count = 0u64;
            for b in 0..mi {
                let nm = (a * a + t * a * b + n * b * b).rem_euclid(mi);
                if nm % pi != 0 && nm == target {
                    count += 1;
                }
            }
            count
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 100_000_000;

    #[test]
    fn gaussian_examples() {
        let k = QuadField::new(-1).unwrap();
        assert_eq!(residue_ring_norm_count(&k, 3, 1, 1, BUDGET).unwrap(), 4);
        assert_eq!(residue_ring_norm_count(&k, 5, 1, 1, BUDGET).unwrap(), 4);
        assert_eq!(residue_ring_norm_count(&k, 5, 2, 1, BUDGET).unwrap(), 20);
        assert!(matches!(
            residue_ring_norm_count(&k, 101, 4, 1, BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn smooth_lifting() {
        for d in [-1, -3, -5, -7, 2, 5, 13] {
            let k = QuadField::new(d).unwrap();
            for p in [3u64, 5, 7, 11, 13] {
                if k.is_ramified(p) {
                    continue;
                }
                for e in 1..=2 {
                    if p.pow(2 * (e + 1)) > BUDGET {
                        continue;
                    }
                    let lo = residue_ring_norm_count(&k, p, e, 1, BUDGET).unwrap();
                    let hi = residue_ring_norm_count(&k, p, e + 1, 1, BUDGET).unwrap();
                    assert_eq!(hi, p * lo, "d={d} p={p} k={e}");
                }
            }
        }
    }
}
