//! The Kronecker symbol `(a/n)`, extending the Jacobi symbol to all integers `n`.

/// Kronecker symbol `(a/n)` in `{-1, 0, 1}`.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k: i32 = 1;
    // strip factors of two from n: (a/2) = 0, 1, -1 for a even, a = ±1, ±3 mod 8
    let mut v = 0u32;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            k = -k;
        }
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // Jacobi symbol (a/n) with n odd positive
    a = a.rem_euclid(n);
    while a != 0 {
        let mut t = 0u32;
        while a % 2 == 0 {
            a /= 2;
            t += 1;
        }
        if t % 2 == 1 {
            let r = n % 8;
            if r == 3 || r == 5 {
                k = -k;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        let r = n % a;
        n = a;
        a = r;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::primes::is_prime;

    // Euler's criterion for odd primes, independent of the reciprocity loop.
    fn legendre_euler(a: i64, p: i64) -> i32 {
        let r = a.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        let e = crate::exact::primes::pow_mod(r as u64, ((p - 1) / 2) as u64, p as u64);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(kronecker_symbol(-4, 3), -1);
        assert_eq!(kronecker_symbol(-4, 5), 1);
        assert_eq!(kronecker_symbol(-4, 2), 0);
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(17, 2), 1);
        for a in -50..50 {
            assert_eq!(kronecker_symbol(a, 1), 1);
        }
        assert_eq!(kronecker_symbol(-3, -1), -1);
        assert_eq!(kronecker_symbol(3, -1), 1);
    }

    #[test]
    fn agrees_with_euler_criterion() {
        for p in (3..200).filter(|&p| is_prime(p as u64)) {
            for a in -60..60 {
                assert_eq!(kronecker_symbol(a, p), legendre_euler(a, p), "a={a} p={p}");
            }
        }
    }
}
