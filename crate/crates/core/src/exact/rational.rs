//! Exact rationals. Values are always reduced with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRat {
    BigRational::from_integer(n.into())
}

/// Canonical `"num/den"` rendering, also for integers (`"2/1"`).
pub fn fmt_rat(x: &BigRat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Option<BigRat> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn rat_to_f64(x: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn is_power_of(x: &BigInt, p: u64) -> bool {
    let mut x = x.clone();
    let p = BigInt::from(p);
    while x > BigInt::one() {
        if &x % &p != BigInt::from(0) {
            return false;
        }
        x /= &p;
    }
    x.is_one()
}
