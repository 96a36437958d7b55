use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::global::quadrature::adaptive_simpson;
use crate::lattice::{q_rank, Family, TorusSpec};
use crate::quadfield::{fundamental_unit, FieldSpec, QuadField};
use crate::report::record::Real;

const MAX_EVALS: usize = 2_000_000;

/// vol(T(R)/Γ) for the gauge form dx/(∂F/∂y) on the norm-form model.
#[derive(Clone, Debug, Serialize)]
pub struct ArchVolume {
    pub value: Real,
    /// Order of the torsion subgroup of Γ (the norm-one roots of unity).
    pub torsion: u32,
    pub intervals: usize,
    pub evaluations: usize,
    /// Coordinates (x, y) of the norm-one fundamental unit (real fields).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<(String, String)>,
}

fn quadratic_field(t: &TorusSpec) -> Result<QuadField> {
    match (t.family(), t.field()) {
        (Family::NormOne | Family::Quot, FieldSpec::Quadratic(k)) => Ok(*k),
        _ => Err(Error::Unsupported(format!("archimedean volume of {}", t.label()))),
    }
}

pub fn archimedean_volume(t: &TorusSpec, tol: f64) -> Result<ArchVolume> {
    let k = quadratic_field(t)?;
    let r = q_rank(t);
    if r > 0 {
        return Err(Error::AssumptionViolated(r));
    }
    if k.is_imaginary() {
        imaginary_volume(&k, tol)
    } else {
        real_volume(&k, tol)
    }
}

// The ellipse x² + txy + ny² = 1. Near |x| = x₀, where ∂F/∂y vanishes, the
// x-chart is singular, so the two caps |x| > x₁ are integrated in the
// y-chart with |ω| = dy/|∂F/∂x|.
fn imaginary_volume(k: &QuadField, tol: f64) -> Result<ArchVolume> {
    let (t, n, d) = (k.omega_trace() as f64, k.omega_norm() as f64, k.disc() as f64);
    let ad = -d;
    let x0 = (4.0 * n / ad).sqrt();
    let x1 = (t.abs() / ad.sqrt() + x0) / 2.0;
    let fx = |x: f64| 1.0 / (4.0 * n + d * x * x).sqrt();
    let fy = |y: f64| 1.0 / (4.0 + d * y * y).sqrt();
    let disc_y = (4.0 * n + d * x1 * x1).sqrt();
    let (y_lo, y_hi) = ((-t * x1 - disc_y) / (2.0 * n), (-t * x1 + disc_y) / (2.0 * n));
    let qx = adaptive_simpson(fx, -x1, x1, tol / 8.0, MAX_EVALS)?;
    let qy = adaptive_simpson(fy, y_lo, y_hi, tol / 8.0, MAX_EVALS)?;
    let w = k.roots_of_unity();
    let total = 2.0 * (qx.value + qy.value) / w as f64;
    let err = 2.0 * (qx.abs_err + qy.abs_err) / w as f64;
    if err > tol {
        return Err(Error::ToleranceUnreachable { tol, evaluations: qx.evaluations + qy.evaluations });
    }
    Ok(ArchVolume {
        value: Real::new(total, err),
        torsion: w,
        intervals: qx.intervals + qy.intervals,
        evaluations: qx.evaluations + qy.evaluations,
        unit: None,
    })
}

// The hyperbola x² + txy + ny² = 1 modulo Γ = ±ε₁^Z: −1 swaps the two
// branches, so one period of the identity branch, from 1 to ε₁ = a + bω,
// is a fundamental domain. On that branch |ω| = dy/√(4 + Dy²).
fn real_volume(k: &QuadField, tol: f64) -> Result<ArchVolume> {
    let unit = fundamental_unit(k.disc())?;
    let (a, b) = unit.norm_one_generator(k);
    let d = k.disc() as f64;
    let bf = b.to_f64().ok_or_else(|| Error::Unsupported("unit too large for quadrature".into()))?;
    let f = |y: f64| 1.0 / (4.0 + d * y * y).sqrt();
    // for large units integrate in s = asinh(y√D/2), where the integrand is flat
    let s_max = (bf * d.sqrt() / 2.0).asinh();
    let g = |s: f64| {
        let y = 2.0 * s.sinh() / d.sqrt();
        f(y) * 2.0 * s.cosh() / d.sqrt()
    };
    let q = if bf < 1e6 {
        adaptive_simpson(f, 0.0, bf, tol / 2.0, MAX_EVALS)?
    } else {
        adaptive_simpson(g, 0.0, s_max, tol / 2.0, MAX_EVALS)?
    };
    if q.abs_err > tol {
        return Err(Error::ToleranceUnreachable { tol, evaluations: q.evaluations });
    }
    Ok(ArchVolume {
        value: Real::new(q.value, q.abs_err),
        torsion: 2,
        intervals: q.intervals,
        evaluations: q.evaluations,
        unit: Some((a.to_string(), b.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn vol(s: &str) -> ArchVolume {
        archimedean_volume(&TorusSpec::parse(s).unwrap(), 1e-10).unwrap()
    }

    #[test]
    fn imaginary_volumes_match_ellipse_perimeter_form() {
        assert!((vol("norm1:-1").value.value - PI / 4.0).abs() < 1e-9);
        // total Leray length 2π/√|D|, divided by w
        for (d, disc, w) in [(-3, 3.0f64, 6.0), (-5, 20.0, 2.0), (-7, 7.0, 2.0), (-23, 23.0, 2.0), (-2, 8.0, 2.0)] {
            let v = vol(&format!("norm1:{d}"));
            assert!((v.value.value - 2.0 * PI / disc.sqrt() / w).abs() < 1e-9, "d={d}");
            assert!(v.value.abs_err < 1e-10);
        }
        assert_eq!(vol("norm1:-3").torsion, 6);
        assert!((vol("quot:-1").value.value - PI / 4.0).abs() < 1e-9);
    }

    #[test]
    fn real_volumes_are_regulators() {
        // norm-one unit of Q(√5) is ε² with log ε = 0.4812118...
        let v = vol("norm1:5");
        assert!((v.value.value - 2.0 * 0.48121182505960347 / 5f64.sqrt()).abs() < 1e-9);
        // d = 94: unit 2143295 + 221064√94, norm +1
        let v = vol("norm1:94");
        let log_eps = (2143295.0f64 + 221064.0 * 94f64.sqrt()).ln();
        assert!((v.value.value - log_eps / 376f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn gates() {
        let r = TorusSpec::parse("res:-1").unwrap();
        assert!(archimedean_volume(&r, 1e-6).is_err());
        let b = TorusSpec::parse("norm1:13,17").unwrap();
        assert!(matches!(archimedean_volume(&b, 1e-6), Err(Error::Unsupported(_))));
    }
}
