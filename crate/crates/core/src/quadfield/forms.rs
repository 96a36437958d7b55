//! Positive definite binary quadratic forms and the class group of an
//! imaginary quadratic field.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::abelian::AbelianGroupInvariants;
use crate::exact::primes::prime_factors;
use crate::quadfield::field::is_fundamental_discriminant;

/// The form ax² + bxy + cy².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryForm { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The principal form of discriminant `disc`.
    pub fn principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        BinaryForm { a: 1, b, c: (b * b - disc) / 4 }
    }

    pub fn is_reduced(&self) -> bool {
        let BinaryForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Reduces a positive definite form to the unique reduced form in its
    /// proper equivalence class.
    pub fn reduce(self) -> Self {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            if b > a || b <= -a {
                // normalize b into (-a, a]
                let r = Integer::div_floor(&(a - b), &(2 * a));
                let nb = b + 2 * a * r;
                c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        BinaryForm { a: a as i64, b: b as i64, c: c as i64 }
    }

    pub fn inverse(&self) -> Self {
        BinaryForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }

    /// Gauss composition through united forms.
    pub fn compose(&self, other: &BinaryForm) -> BinaryForm {
        let disc = self.discriminant() as i128;
        let (mut f1, mut f2) = (*self, *other);
        if f1.a > f2.a {
            std::mem::swap(&mut f1, &mut f2);
        }
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, d) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let e = a2.extended_gcd(&a1);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).mod_floor(&v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (b3 * b3 - disc) / (4 * a3);
        BinaryForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
    }

    pub fn pow(&self, mut e: u64) -> BinaryForm {
        let mut result = BinaryForm::principal(self.discriminant());
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }
}

/// All reduced primitive forms of negative discriminant `disc`.
pub fn reduced_forms(disc: i64) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = BinaryForm { a, b, c: num / (4 * a) };
            if f.is_reduced() && a.gcd(&b).gcd(&f.c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
pub struct ClassGroupData {
    pub disc: i64,
    pub forms: Vec<BinaryForm>,
    pub h: usize,
    pub structure: AbelianGroupInvariants,
}

impl ClassGroupData {
    pub fn principal(&self) -> BinaryForm {
        BinaryForm::principal(self.disc)
    }
}

/// Class group of the imaginary quadratic field of discriminant `disc`.
pub fn class_group(disc: i64) -> Result<ClassGroupData> {
    if disc >= 0 || !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let forms = reduced_forms(disc);
    let h = forms.len();
    // p-primary parts from n_k = #{x : x^(p^k) = 1}; the number of cyclic
    // factors of order >= p^k is log_p(n_k / n_{k-1})
    let principal = BinaryForm::principal(disc);
    let mut orders = Vec::new();
    for p in prime_factors(h as i64) {
        let mut part = 1usize;
        while h % (part * p as usize) == 0 {
            part *= p as usize;
        }
        let mut counts = vec![1usize];
        let mut pk = 1u64;
        while *counts.last().unwrap() < part {
            pk *= p;
            counts.push(forms.iter().filter(|f| f.pow(pk) == principal).count());
        }
        let log_p = |mut x: usize| {
            let mut e = 0;
            while x > 1 {
                x /= p as usize;
                e += 1;
            }
            e
        };
        let at_least: Vec<usize> = counts.windows(2).map(|w| log_p(w[1] / w[0])).collect();
        for (k, &m) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in next..m {
                orders.push(BigInt::from(p.pow(k as u32 + 1)));
            }
        }
    }
    let structure = AbelianGroupInvariants::from_cyclic_orders(&orders);
    Ok(ClassGroupData { disc, forms, h, structure })
}

/// Full composition table of the class group.
pub fn composition_table(data: &ClassGroupData) -> HashMap<(BinaryForm, BinaryForm), BinaryForm> {
    let mut table = HashMap::new();
    for f in &data.forms {
        for g in &data.forms {
            table.insert((*f, *g), f.compose(g));
        }
    }
    table
}
