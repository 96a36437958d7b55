use crate::error::{Error, Result};

/// Result of an adaptive Simpson integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of the per-interval Richardson error estimates.
    pub abs_err: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

struct Piece {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
}

/// Adaptive Simpson on [a, b]. Intervals are accepted when the two-half
/// estimate differs from the whole by at most 15·tol (tol halves with
/// each split); the accepted pieces are summed left to right.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, max_evals: usize) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature { value: 0.0, abs_err: 0.0, intervals: 0, evaluations: 0 });
    }
    let simpson = |a: f64, b: f64, fa: f64, fm: f64, fb: f64| (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let (fa, fb, fm) = (f(a), f(b), f((a + b) / 2.0));
    let mut evaluations = 3;
    let mut stack = vec![Piece { a, b, fa, fm, fb, whole: simpson(a, b, fa, fm, fb), tol, depth: 0 }];
    let mut accepted: Vec<(f64, f64, f64)> = Vec::new();
    while let Some(pc) = stack.pop() {
        let m = (pc.a + pc.b) / 2.0;
        let (lm, rm) = ((pc.a + m) / 2.0, (m + pc.b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        evaluations += 2;
        if evaluations > max_evals {
            return Err(Error::ToleranceUnreachable { tol, evaluations });
        }
        let left = simpson(pc.a, m, pc.fa, flm, pc.fm);
        let right = simpson(m, pc.b, pc.fm, frm, pc.fb);
        let delta = left + right - pc.whole;
        if delta.abs() <= 15.0 * pc.tol || pc.depth >= 50 {
            accepted.push((pc.a, left + right + delta / 15.0, delta.abs() / 15.0));
        } else {
            let t = pc.tol / 2.0;
            let d = pc.depth + 1;
            stack.push(Piece { a: m, b: pc.b, fa: pc.fm, fm: frm, fb: pc.fb, whole: right, tol: t, depth: d });
            stack.push(Piece { a: pc.a, b: m, fa: pc.fa, fm: flm, fb: pc.fm, whole: left, tol: t, depth: d });
        }
    }
    let intervals = accepted.len();
    let value = accepted.iter().map(|x| x.1).sum();
    let abs_err = accepted.iter().map(|x| x.2).sum::<f64>() + f64::EPSILON * intervals as f64;
    Ok(Quadrature { value, abs_err, intervals, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn known_integrals() {
        let q = adaptive_simpson(|x| x.sin(), 0.0, PI, 1e-10, 1 << 20).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10);
        let q = adaptive_simpson(|x| 1.0 / (1.0 - x * x).sqrt(), -0.9, 0.9, 1e-10, 1 << 20).unwrap();
        assert!((q.value - 2.0 * 0.9f64.asin()).abs() < 1e-9);
        assert!(q.abs_err < 1e-9);
    }

    #[test]
    fn evaluation_budget() {
        let r = adaptive_simpson(|x| (1.0 / x).sin(), 1e-6, 1.0, 1e-14, 100);
        assert!(matches!(r, Err(Error::ToleranceUnreachable { .. })));
    }
}
