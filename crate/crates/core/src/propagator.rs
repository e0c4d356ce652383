//! Euclidean two-point functions.
//!
//! The Schwinger function in dimension D is
//! `G = (2π)^{−D/2} r^{1−D/2} ∫₀^∞ ρ^{D/2} J_{D/2−1}(ρr)/(ρ²+m²) dρ = (2π)^{−D/2}(m/r)^{D/2−1}K_{D/2−1}(mr)`.
//! Multifractal propagators solve `G'' + ((1−2μ)/r)G' − m²G = 0` with
//! `μ = (2 + D_t|α|)/2` for a single measure exponent α < 0.

use crate::error::{Error, Result};
use crate::measure::surface_area;
use crate::quad::oscillatory;
use crate::specfun::{bessel_i, bessel_j, bessel_k, gauss_2f1, rgamma, Dimension};
use crate::tol::{EvalResult, Status};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

/// Two-point query on a (D_t, D_f) fractal spacetime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorQuery {
    /// Embedding dimension D_t.
    pub topological_dimension: u32,
    /// Continued dimension D_f ≤ D_t.
    pub continuation_dimension: Dimension,
    /// r = |x − y| > 0.
    pub separation: f64,
    /// m ≥ 0.
    pub mass: f64,
}

/// Real part α of a measure exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureExponent {
    /// α.
    pub alpha: f64,
}

impl MeasureExponent {
    /// Negative-branch exponent; α < 0.
    pub fn negative(alpha: f64) -> Result<Self> {
        if !(alpha < 0.0) {
            return Err(Error::Domain(format!("measure exponent must be negative, got {alpha}")));
        }
        Ok(MeasureExponent { alpha })
    }

    /// Any finite α, for the boundary classification cases.
    pub fn raw(alpha: f64) -> Self {
        MeasureExponent { alpha }
    }

    /// μ = (2 + D_t|α|)/2.
    pub fn mu(&self, dt: u32) -> f64 {
        0.5 * (2.0 + dt as f64 * self.alpha.abs())
    }
}

fn check_rm(r: f64, m: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("separation must be positive, got {r}")));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok(())
}

/// (2π)^{−D/2}(m/r)^{D/2−1}K_{D/2−1}(mr).
pub fn schwinger(dim: Dimension, r: f64, m: f64) -> Result<EvalResult> {
    check_rm(r, m)?;
    let d = dim.re();
    let nu = 0.5 * d - 1.0;
    let k = bessel_k(nu, m * r)?;
    let v = (2.0 * PI).powf(-0.5 * d) * (m / r).powf(nu) * k;
    Ok(EvalResult::converged(v, 1e-14 * v.abs(), 1))
}

/// Massless limit Γ(D/2−1)/(4π^{D/2} r^{D−2}); divergent for D ≤ 2.
fn schwinger_massless(d: f64, r: f64) -> EvalResult {
    if d <= 2.0 {
        return EvalResult::converged(f64::INFINITY, f64::INFINITY, 0).with_status(Status::Divergent);
    }
    let v = crate::specfun::gamma_unchecked(0.5 * d - 1.0) / (4.0 * PI.powf(0.5 * d) * r.powf(d - 2.0));
    EvalResult::converged(v, 1e-14 * v, 1)
}

/// (D_t, D_f) two-point function; equal to `schwinger(D_f, r, m)`, D_t is metadata.
///
/// m = 0 returns the massless limit, flagged divergent for D_f ≤ 2.
pub fn schwinger_fractional(q: &PropagatorQuery) -> Result<EvalResult> {
    let df = q.continuation_dimension.re();
    if df > q.topological_dimension as f64 {
        return Err(Error::PreconditionViolated(format!("D_f = {df} exceeds D_t = {}", q.topological_dimension)));
    }
    if q.mass == 0.0 {
        if !(q.separation > 0.0) {
            return Err(Error::Domain(format!("separation must be positive, got {}", q.separation)));
        }
        return Ok(schwinger_massless(df, q.separation));
    }
    schwinger(q.continuation_dimension, q.separation, q.mass)
}

/// Direct quadrature of the radial Bessel integral, segmented at the zeros of J and
/// accelerated with Wynn's epsilon. Needs D < 5 for the tail to converge.
pub fn schwinger_quadrature(dim: Dimension, r: f64, m: f64, rel_tol: f64) -> Result<EvalResult> {
    check_rm(r, m)?;
    let d = dim.re();
    if !(d > 0.0 && d < 5.0) {
        return Err(Error::Domain(format!("radial integral needs 0 < D < 5, got {d}")));
    }
    let nu = 0.5 * d - 1.0;
    let f = |rho: f64| {
        if rho == 0.0 {
            return 0.0;
        }
        rho.powf(0.5 * d) * bessel_j(nu, rho * r).unwrap_or(f64::NAN) / (rho * rho + m * m)
    };
    // McMahon zeros of J_ν
    let breaks: Vec<f64> = (1..=48).map(|k| (k as f64 + 0.5 * nu - 0.25) * PI / r).collect();
    let res = oscillatory(&f, 0.0, &breaks, rel_tol)?;
    let pre = (2.0 * PI).powf(-0.5 * d) * r.powf(1.0 - 0.5 * d);
    Ok(EvalResult::converged(pre * res.value, pre.abs() * res.abs_err, res.work))
}

/// −r^{2μ}/(Ω_{D_t}·2μ) with Ω_{D_t} = 2π^{D_t/2}/Γ(D_t/2).
pub fn multifractal_massless(dt: u32, alpha: MeasureExponent, r: f64) -> f64 {
    let mu = alpha.mu(dt);
    -r.powf(2.0 * mu) / (surface_area(dt as f64) * 2.0 * mu)
}

/// (2r/m)^μ K_μ(mr)/(Ω_{D_t}Γ(1−μ)); vanishes at integer μ.
pub fn multifractal_massive(dt: u32, alpha: MeasureExponent, r: f64, m: f64) -> Result<f64> {
    check_rm(r, m)?;
    let mu = alpha.mu(dt);
    let c = rgamma(1.0 - mu) / surface_area(dt as f64);
    if c == 0.0 {
        return Ok(0.0);
    }
    Ok(c * (2.0 * r / m).powf(mu) * bessel_k(mu, m * r)?)
}

/// The r^{2μ}-led part of the massive solution, −Γ(μ)(2r/m)^μ I_μ(mr)/(2Ω_{D_t});
/// tends to [`multifractal_massless`] as mr → 0.
pub fn multifractal_massive_nonanalytic(dt: u32, alpha: MeasureExponent, r: f64, m: f64) -> Result<f64> {
    check_rm(r, m)?;
    let mu = alpha.mu(dt);
    let g = crate::specfun::gamma_unchecked(mu);
    Ok(-0.5 * g * (2.0 * r / m).powf(mu) * bessel_i(mu, m * r)? / surface_area(dt as f64))
}

/// Momentum-space propagator.
///
/// m > 0: m^{−2}·2F1(D_t α/2, 1; D_t/2; −k²/m²) carrying the boundary class of
/// γ = D_t α/2 − D_t/2 + 1. m = 0: −(D_t−2)/(Ω_{D_t}(2+D_t|α|))·k^{−2}.
pub fn momentum_propagator(dt: u32, alpha: MeasureExponent, k: f64, m: f64) -> Result<EvalResult> {
    let a = 0.5 * dt as f64 * alpha.alpha;
    if a < 0.0 && (a - a.round()).abs() < 1e-12 {
        return Err(Error::ForbiddenExponent(alpha.alpha));
    }
    if !(k >= 0.0) || !(m >= 0.0) {
        return Err(Error::Domain(format!("k and m must be non-negative, got ({k}, {m})")));
    }
    if m == 0.0 {
        if k == 0.0 {
            return Err(Error::Domain(String::from("massless propagator at k = 0")));
        }
        let dtf = dt as f64;
        let v = -(dtf - 2.0) / (surface_area(dtf) * (2.0 + dtf * alpha.alpha.abs())) / (k * k);
        return Ok(EvalResult::converged(v, 1e-15 * v.abs(), 1).with_status(Status::Exact));
    }
    let z = Complex64::new(-(k * k) / (m * m), 0.0);
    let c = |x: f64| Complex64::new(x, 0.0);
    let r = gauss_2f1(c(a), c(1.0), c(0.5 * dt as f64), z)?;
    let s = 1.0 / (m * m);
    Ok(EvalResult { value: s * r.value.re, abs_err: s * r.abs_err, status: r.status, work: r.work, phase: r.phase })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_unchecked;
    use crate::tol::SeriesClass;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn integer_dimension_closed_forms() {
        for i in 0..20 {
            let m = 0.3 + 0.25 * (i % 5) as f64;
            let r = 0.4 + 0.6 * (i / 5) as f64;
            let x = m * r;
            let g2 = schwinger(Dimension::real(2.0), r, m).unwrap().value;
            assert!(rel(g2, bessel_k(0.0, x).unwrap() / (2.0 * PI)) < 1e-8);
            let g3 = schwinger(Dimension::real(3.0), r, m).unwrap().value;
            assert!(rel(g3, (-x).exp() / (4.0 * PI * r)) < 1e-8);
            let g4 = schwinger(Dimension::real(4.0), r, m).unwrap().value;
            assert!(rel(g4, m / r * bessel_k(1.0, x).unwrap() / (4.0 * PI * PI)) < 1e-8);
            let g1 = schwinger(Dimension::real(1.0), r, m).unwrap().value;
            assert!(rel(g1, (-x).exp() / (2.0 * m)) < 1e-8);
        }
        let v = schwinger(Dimension::real(4.0), 1.0, 1.0).unwrap().value;
        assert!(rel(v, 0.6019072301972346 / (4.0 * PI * PI)) < 1e-12, "{v}");
    }

    #[test]
    fn fractional_embedding() {
        let q = |dt, df: f64, m| PropagatorQuery {
            topological_dimension: dt,
            continuation_dimension: Dimension::real(df),
            separation: 1.0,
            mass: m,
        };
        let a = schwinger_fractional(&q(4, 4.0, 1.3)).unwrap().value;
        assert_eq!(a, schwinger(Dimension::real(4.0), 1.0, 1.3).unwrap().value);
        let b = schwinger_fractional(&q(4, 2.0, 1.0)).unwrap().value;
        assert!(rel(b, 0.42102443824070834 / (2.0 * PI)) < 1e-12);
        assert_eq!(schwinger_fractional(&q(4, 2.0, 0.0)).unwrap().status, Status::Divergent);
        assert!(schwinger_fractional(&q(3, 3.5, 1.0)).is_err());
    }

    #[test]
    fn quadrature_matches_bessel_form() {
        for df in [3.0, 2.0, 1.0, 2.5] {
            let q = schwinger_quadrature(Dimension::real(df), 1.2, 0.8, 1e-8).unwrap().value;
            let c = schwinger(Dimension::real(df), 1.2, 0.8).unwrap().value;
            assert!(rel(q, c) < 1e-5, "D={df}: {q} vs {c}");
        }
    }

    fn ode_residual<G: Fn(f64) -> f64>(g: &G, r: f64, c1: f64, m: f64) -> f64 {
        let h = 1e-3 * r;
        let (gm, g0, gp) = (g(r - h), g(r), g(r + h));
        let d1 = (gp - gm) / (2.0 * h);
        let d2 = (gp - 2.0 * g0 + gm) / (h * h);
        (d2 + c1 / r * d1 - m * m * g0).abs() / (d2.abs() + (c1 / r * d1).abs() + (m * m * g0).abs())
    }

    #[test]
    fn radial_equation() {
        let m = 0.9;
        for d in [1.5, 2.0, 3.0, 4.0] {
            let g = |r: f64| schwinger(Dimension::real(d), r, m).unwrap().value;
            for i in 0..6 {
                let r = 0.5 + 0.5 * i as f64;
                assert!(ode_residual(&g, r, d - 1.0, m) < 1e-4, "D={d} r={r}");
            }
        }
    }

    #[test]
    fn multifractal_forms() {
        let a = MeasureExponent::negative(-0.5).unwrap();
        assert!((multifractal_massless(4, a, 1.0) + 1.0 / (8.0 * PI * PI)).abs() < 1e-15);
        let slope = (multifractal_massless(4, a, 2.0) / multifractal_massless(4, a, 1.0)).ln() / 2f64.ln();
        assert!((slope - 4.0).abs() < 1e-12);
        assert_eq!(multifractal_massless(4, a, 0.0), 0.0);
        // μ = 2 is integral
        assert_eq!(multifractal_massive(4, a, 1.0, 1.0).unwrap(), 0.0);
        let b = MeasureExponent::negative(-0.5).unwrap();
        let nm = multifractal_massive_nonanalytic(3, b, 1.0, 1e-4).unwrap();
        assert!(rel(nm, multifractal_massless(3, b, 1.0)) < 1e-3);
        // the full massive form is dominated by its analytic constant at small mr
        let full = multifractal_massive(3, b, 1.0, 1e-4).unwrap();
        assert!(rel(full, multifractal_massless(3, b, 1.0)) > 1.0);
        let far = multifractal_massive(3, b, 20.0, 1.0).unwrap() / multifractal_massive(3, b, 19.0, 1.0).unwrap();
        assert!(far < 1.0 && far > 0.3);
        assert!(MeasureExponent::negative(0.1).is_err());
    }

    #[test]
    fn multifractal_radial_equation() {
        let m = 0.7;
        for (dt, al) in [(3u32, -0.5), (4, -0.3), (2, -0.8)] {
            let a = MeasureExponent::negative(al).unwrap();
            let c1 = 1.0 - 2.0 * a.mu(dt);
            let g = |r: f64| multifractal_massive(dt, a, r, m).unwrap();
            let gn = |r: f64| multifractal_massive_nonanalytic(dt, a, r, m).unwrap();
            for i in 0..5 {
                let r = 0.6 + 0.5 * i as f64;
                assert!(ode_residual(&g, r, c1, m) < 1e-3, "D_t={dt} r={r}");
                assert!(ode_residual(&gn, r, c1, m) < 1e-3);
            }
        }
    }

    #[test]
    fn momentum_space() {
        let a = MeasureExponent::negative(-0.3).unwrap();
        assert!((momentum_propagator(3, a, 0.0, 1.0).unwrap().value - 1.0).abs() < 1e-15);
        for dt in 3..7 {
            assert!(momentum_propagator(dt, a, 1.0, 0.0).unwrap().value < 0.0);
        }
        let r = momentum_propagator(3, MeasureExponent::raw(2.0 / 3.0), 1.0, 1.0).unwrap();
        assert_eq!(r.status, Status::Series(SeriesClass::ConvergesExceptAtOne));
        assert!(matches!(momentum_propagator(3, a, 2.0, 1.0), Err(Error::OutsideDisk(_))));
        assert!(matches!(momentum_propagator(4, MeasureExponent::raw(-0.5), 0.5, 1.0), Err(Error::ForbiddenExponent(_))));
        // diverging class on the circle
        assert!(momentum_propagator(1, MeasureExponent::raw(2.0), 1.0, 1.0).is_err());
    }

    #[test]
    fn momentum_series_brute_force() {
        for (dt, al, k, m) in [(3u32, -0.4, 0.6, 1.0), (5, -0.7, 1.1, 2.0), (4, -0.15, 0.3, 0.5)] {
            let v = momentum_propagator(dt, MeasureExponent::raw(al), k, m).unwrap().value;
            let (a, c) = (0.5 * dt as f64 * al, 0.5 * dt as f64);
            let z = -(k * k) / (m * m);
            let mut s = 0.0;
            for n in 0..120 {
                let t = gamma_unchecked(a + n as f64) / gamma_unchecked(a) * gamma_unchecked(c)
                    / gamma_unchecked(c + n as f64)
                    * z.powi(n);
                s += t;
            }
            assert!(rel(v, s / (m * m)) < 1e-10, "{v} vs {}", s / (m * m));
        }
    }
}
