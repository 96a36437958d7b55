use std::fmt;

use crate::error::{Error, Result};
use crate::quadfield::FieldSpec;

/// A finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {:?})", self.order(), self.labels)
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not n×n over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverses, labels })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|a| if a == 0 { "e".to_string() } else { format!("s^{a}") }).collect();
        FiniteGroup::new(table, labels).expect("cyclic group table")
    }

    /// (Z/2)^k with elements indexed by bit patterns.
    pub fn elementary_abelian_2(k: u32) -> Self {
        let n = 1usize << k;
        let table = (0..n).map(|a| (0..n).map(|b| a ^ b).collect()).collect();
        let labels = (0..n).map(|a| format!("{a:0w$b}", w = k as usize)).collect();
        FiniteGroup::new(table, labels).expect("elementary abelian table")
    }

    pub fn klein_four() -> Self {
        Self::elementary_abelian_2(2)
    }

    /// Galois group of a supported field, indexed as in [`FieldSpec`].
    pub fn galois(field: &FieldSpec) -> Self {
        match field {
            FieldSpec::Quadratic(_) => Self::elementary_abelian_2(1),
            FieldSpec::Biquadratic(_) => Self::elementary_abelian_2(2),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        !h.is_empty()
            && h.iter().all(|&x| x < self.order())
            && h.iter().all(|&a| h.iter().all(|&b| h.contains(&self.mul(a, self.inverse(b)))))
    }

    /// The subgroup on `elements` as a group in its own right, with the
    /// embedding into `self` (sorted, so the identity need not come first).
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut h = elements.to_vec();
        h.sort_unstable();
        h.dedup();
        if !self.is_subgroup(&h) {
            return Err(Error::NotSubgroup(format!("{elements:?}")));
        }
        let pos = |x: usize| h.iter().position(|&y| y == x).unwrap();
        let table = h.iter().map(|&a| h.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let labels = h.iter().map(|&a| self.labels[a].clone()).collect();
        Ok((FiniteGroup::new(table, labels)?, h))
    }

    /// Cyclic subgroup generated by `g`.
    pub fn generated_by(&self, g: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = g;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, g);
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::new(vec![vec![0, 1], vec![1, 1]], vec!["a".into(), "b".into()]).is_err());
        // a Latin square without associativity
        let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::new(t, vec!["a".into(), "b".into(), "c".into()]).is_err());
    }

    #[test]
    fn subgroups() {
        let g = FiniteGroup::klein_four();
        assert!(g.is_subgroup(&[0, 3]));
        assert!(!g.is_subgroup(&[0, 1, 2]));
        let (h, emb) = g.subgroup(&[3, 0]).unwrap();
        assert_eq!((h.order(), emb), (2, vec![0, 3]));
        assert_eq!(FiniteGroup::cyclic(6).generated_by(2), vec![0, 2, 4]);
        assert!(matches!(g.subgroup(&[1, 2]), Err(Error::NotSubgroup(_))));
    }
}
