use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::primes::is_prime;
use crate::local::model::AffineModel;

/// Level-by-level count of solutions of an affine model mod p^k.
///
/// Level k is found by trying every lift s + p^(k−1)·t of every solution s
/// mod p^(k−1). The budget bounds the total number of candidates tried.
pub struct Lifter<'a> {
    model: &'a AffineModel,
    p: u64,
    level: u32,
    solutions: Vec<u64>,
    pub counts: Vec<u64>,
    pub work: u128,
    budget: u128,
}

impl<'a> Lifter<'a> {
    pub fn new(model: &'a AffineModel, p: u64, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Lifter { model, p, level: 0, solutions: Vec::new(), counts: Vec::new(), work: 0, budget: budget as u128 })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    fn candidates_per_solution(&self) -> u128 {
        (self.p as u128).pow(self.model.vars as u32)
    }

    /// Work needed for the next level.
    pub fn next_cost(&self) -> u128 {
        if self.level == 0 {
            self.candidates_per_solution()
        } else {
            self.counts[self.level as usize - 1] as u128 * self.candidates_per_solution()
        }
    }

    /// Whether `next_level` would stay within the budget.
    pub fn can_advance(&self) -> bool {
        self.work + self.next_cost() <= self.budget && (self.p as u128).pow(self.level + 1) < 1 << 62
    }

    /// Counts solutions mod p^(level+1). `keep` retains them for further lifting.
    pub fn next_level(&mut self, keep: bool) -> Result<u64> {
        let cost = self.next_cost();
        if !self.can_advance() {
            return Err(Error::BudgetExceeded { needed: self.work + cost, budget: self.budget });
        }
        let vars = self.model.vars;
        let p = self.p;
        let k = self.level + 1;
        let m = p.pow(k);
        let step = m / p;
        let per = self.candidates_per_solution() as u64;
        let model = self.model;
        let bases: Vec<u64> = if self.level == 0 { vec![0; vars] } else { std::mem::take(&mut self.solutions) };
        let free = self.level > 0 && model.equations.is_empty();
        let results: Vec<(u64, Vec<u64>)> = bases
            .par_chunks(vars * 256)
            .map(|chunk| {
                let mut count = 0u64;
                let mut kept = Vec::new();
                let mut x = vec![0u64; vars];
                for s in chunk.chunks(vars) {
                    if free {
                        // unit conditions only see the residue mod p, shared by all lifts
                        count += per;
                        if !keep {
                            continue;
                        }
                    }
                    for idx in 0..per {
                        let mut r = idx;
                        for (i, xi) in x.iter_mut().enumerate() {
                            *xi = s[i] + step * (r % p);
                            r /= p;
                        }
                        if free || model.is_solution_mod(&x, m, p) {
                            if !free {
                                count += 1;
                            }
                            if keep {
                                kept.extend_from_slice(&x);
                            }
                        }
                    }
                }
                (count, kept)
            })
            .collect();
        let mut total = 0;
        for (c, kept) in results {
            total += c;
            if keep {
                self.solutions.extend(kept);
            }
        }
        self.work += cost;
        self.level = k;
        self.counts.push(total);
        Ok(total)
    }
}

/// Solution counts mod p^k for k = 1..=k_max.
pub fn count_solutions(model: &AffineModel, p: u64, k_max: u32, budget: u64) -> Result<Vec<u64>> {
    let mut lifter = Lifter::new(model, p, budget)?;
    for k in 1..=k_max {
        lifter.next_level(k < k_max)?;
    }
    Ok(lifter.counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::QuadField;

    fn naive(model: &AffineModel, p: u64, k: u32) -> u64 {
        let m = p.pow(k);
        let mut count = 0;
        for x in 0..m {
            for y in 0..m {
                count += u64::from(model.is_solution_mod(&[x, y], m, p));
            }
        }
        count
    }

    #[test]
    fn gaussian_norm_one_counts() {
        let k = QuadField::new(-1).unwrap();
        let m = AffineModel::norm_one_quadratic(&k);
        assert_eq!(count_solutions(&m, 2, 4, 1_000_000).unwrap(), vec![2, 8, 16, 32]);
        assert_eq!(count_solutions(&m, 5, 2, 1_000_000).unwrap(), vec![4, 20]);
    }

    #[test]
    fn lifting_matches_naive_enumeration() {
        for d in [-1, -3, -5, 2, 5] {
            let k = QuadField::new(d).unwrap();
            for m in [AffineModel::norm_one_quadratic(&k), AffineModel::res_quadratic(&k)] {
                for (p, kmax) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
                    let counts = count_solutions(&m, p, kmax, u64::MAX).unwrap();
                    for (i, &c) in counts.iter().enumerate() {
                        assert_eq!(c, naive(&m, p, i as u32 + 1), "d={d} p={p} k={}", i + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let k = QuadField::new(-1).unwrap();
        let m = AffineModel::norm_one_quadratic(&k);
        assert!(matches!(count_solutions(&m, 101, 3, 10_000), Err(Error::BudgetExceeded { .. })));
    }
}
