//! Radial Hausdorff measures in positive and negative dimension.
//!
//! The positive branch integrates against S_D r^{D−1}. The negative branch uses the
//! ε-family prefactor·Re(1/(r^{|D|+1} + iε)) and extrapolates ε → 0.

use crate::error::{Error, Result};
use crate::quad::{half_line, oscillatory, LadderOpts};
use crate::specfun::gamma::{gamma, near_pole, rgamma};
use crate::specfun::{bessel_i, bessel_j, DimClass, Dimension};
use crate::tol::{EvalResult, Status, ToleranceConfig};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

/// Which half of the dimension axis a measure lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Re D > 0.
    Positive,
    /// Re D < 0.
    Negative,
}

/// A radial measure: dimension, branch and regulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMeasureSpec {
    /// D.
    pub dimension: Dimension,
    /// Branch; must match the sign of Re D.
    pub branch: Branch,
    /// Regulator for the negative branch.
    pub eps: f64,
}

impl RadialMeasureSpec {
    /// Builds and validates a spec for a real dimension, choosing the branch from its sign.
    pub fn new(d: f64, eps: f64) -> Result<Self> {
        let branch = if d > 0.0 { Branch::Positive } else { Branch::Negative };
        RadialMeasureSpec { dimension: Dimension::real(d), branch, eps }.validated()
    }

    /// Checks the branch invariants.
    pub fn validated(self) -> Result<Self> {
        let d = self.dimension.re();
        match self.branch {
            Branch::Positive if d > 0.0 => {}
            Branch::Negative if d < 0.0 => {
                if let DimClass::NearPole { pole } = self.dimension.classify() {
                    return Err(Error::PoleAtDimension {
                        what: format!("negative-branch measure excludes D = {pole}"),
                        dim: d,
                    });
                }
            }
            _ => {
                return Err(Error::PoleAtDimension { what: format!("branch {:?} needs matching sign of D", self.branch), dim: d })
            }
        }
        if !(self.eps > 0.0) {
            return Err(Error::PreconditionViolated(format!("regulator must be positive, got {}", self.eps)));
        }
        Ok(self)
    }

    fn d(&self) -> f64 {
        self.dimension.re()
    }
}

/// S_D = 2π^{D/2}/Γ(D/2); vanishes at D ∈ {0, −2, −4, …}.
pub fn surface_area(d: f64) -> f64 {
    2.0 * PI.powf(0.5 * d) * rgamma(0.5 * d)
}

/// Negative-branch prefactor 2π^{−|D|/2}/Γ(−|D|/2).
pub fn negative_prefactor(d: f64) -> f64 {
    surface_area(-d.abs())
}

/// Measure density at radius r.
pub fn radial_weight(spec: &RadialMeasureSpec, r: f64) -> Result<f64> {
    let spec = spec.validated()?;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(weight_at(spec.d(), spec.branch, spec.eps, r))
}

fn weight_at(d: f64, branch: Branch, eps: f64, r: f64) -> f64 {
    match branch {
        Branch::Positive => surface_area(d) * r.powf(d - 1.0),
        Branch::Negative => {
            let a = d.abs() + 1.0;
            let ra = r.powf(a);
            // Re 1/(r^a + iε), written to stay finite when r^a overflows
            let w = if ra > 1e150 { 1.0 / ra } else { ra / (ra * ra + eps * eps) };
            negative_prefactor(d) * w
        }
    }
}

/// Geometric regulator ladder ε₀·2^{−k}, k = 0..levels.
pub fn eps_ladder(eps0: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|k| eps0 * 0.5f64.powi(k as i32)).collect()
}

/// ∫₀^∞ w_ε(r) f(r) dr at one regulator value.
pub fn radial_integral_at<F: Fn(f64) -> f64>(spec: &RadialMeasureSpec, f: &F, eps: f64) -> Result<f64> {
    let spec = spec.validated()?;
    let d = spec.d();
    let g = |r: f64| {
        let v = f(r);
        if v == 0.0 {
            0.0
        } else {
            weight_at(d, spec.branch, eps, r) * v
        }
    };
    Ok(half_line(&g, 1.0, LadderOpts::default())?.value)
}

/// Radial integral of f; the negative branch extrapolates a six-level ε ladder starting at `tol.eps_reg`.
pub fn radial_integral<F: Fn(f64) -> f64>(spec: &RadialMeasureSpec, f: &F, tol: &ToleranceConfig) -> Result<EvalResult> {
    let spec = spec.validated()?;
    let tol = tol.validated()?;
    match spec.branch {
        Branch::Positive => {
            let d = spec.d();
            let g = |r: f64| {
                let v = f(r);
                if v == 0.0 {
                    0.0
                } else {
                    r.powf(d - 1.0) * v
                }
            };
            let opts = LadderOpts { rel_tol: tol.rel_tol.min(1e-10), abs_tol: 1e-300, max_panels: 3000 };
            let r = half_line(&g, 1.0, opts)?;
            let s = surface_area(d);
            Ok(EvalResult::converged(s * r.value, s.abs() * r.abs_err, r.work))
        }
        Branch::Negative => {
            let f0 = f(0.0);
            if f0.abs() > 1e-12 {
                return Err(Error::PreconditionViolated(format!("negative branch needs f(0) = 0, got {f0}")));
            }
            let mut samples = Vec::new();
            for eps in eps_ladder(tol.eps_reg, 6) {
                samples.push((eps, radial_integral_at(&spec, f, eps)?));
            }
            eps_extrapolate(&samples)
        }
    }
}

/// Extrapolates samples (ε, v) to ε = 0 by iterated Aitken Δ²; the error is the spread of the last two extrapolants.
pub fn eps_extrapolate(samples: &[(f64, f64)]) -> Result<EvalResult> {
    if samples.len() < 3 {
        return Err(Error::InsufficientSamples(samples.len()));
    }
    if samples.windows(2).any(|w| !(w[1].0 < w[0].0)) {
        return Err(Error::PreconditionViolated("regulators must strictly decrease".into()));
    }
    let mut col: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let mut prev_last = col[col.len() - 2];
    while col.len() >= 3 {
        let mut next = Vec::with_capacity(col.len() - 2);
        for w in col.windows(3) {
            let d1 = w[1] - w[0];
            let d2 = w[2] - w[1];
            let den = d2 - d1;
            if den == 0.0 || d2 == 0.0 {
                next.push(w[2]);
            } else {
                next.push(w[2] - d2 * d2 / den);
            }
        }
        prev_last = if next.len() >= 2 { next[next.len() - 2] } else { col[col.len() - 1] };
        col = next;
    }
    let v = col[col.len() - 1];
    let err = (v - prev_last).abs();
    Ok(EvalResult::converged(v, err, samples.len()))
}

/// Coefficients c_n of the dimensional expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficients {
    /// c₀ … c_N.
    pub c: Vec<Complex64>,
    /// N.
    pub order: usize,
}

impl ExpansionCoefficients {
    /// Truncated series π^{D/2}/Γ(1+D/2) · Σ c_n Dⁿ/n!.
    pub fn integral(&self, d: f64) -> f64 {
        let mut s = 0.0;
        let mut p = 1.0;
        for (n, c) in self.c.iter().enumerate() {
            if n > 0 {
                p *= d / n as f64;
            }
            s += c.re * p;
        }
        PI.powf(0.5 * d) * rgamma(1.0 + 0.5 * d) * s
    }
}

/// c_n = −∫₀^∞ Lⁿ f′(r) dr with L = ln r (positive) or ln(r + iε) (negative).
pub fn expansion_coefficients<F, G>(f: &F, f_prime: &G, order: usize, branch: Branch, eps: f64) -> Result<ExpansionCoefficients>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let f0 = f(0.0);
    if branch == Branch::Negative && f0.abs() > 1e-12 {
        return Err(Error::PreconditionViolated(format!("negative branch needs f(0) = 0, got {f0}")));
    }
    let mut c = alloc::vec![Complex64::new(f0, 0.0)];
    let log = |r: f64| match branch {
        Branch::Positive => Complex64::new(r.ln(), 0.0),
        Branch::Negative => Complex64::new(r, eps).ln(),
    };
    let opts = LadderOpts { rel_tol: 1e-12, abs_tol: 1e-300, max_panels: 3000 };
    for n in 1..=order {
        let re = |r: f64| -log(r).powi(n as i32).re * f_prime(r);
        let im = |r: f64| -log(r).powi(n as i32).im * f_prime(r);
        let vr = half_line(&re, 1.0, opts).map_err(|e| Error::NotConverged(format!("log moment {n}: {e}")))?;
        let vi = if branch == Branch::Negative {
            half_line(&im, 1.0, opts)?.value
        } else {
            0.0
        };
        c.push(Complex64::new(vr.value, vi));
    }
    Ok(ExpansionCoefficients { c, order })
}

/// Fourier transform of r^λ in D dimensions: (C, −λ−D) with C = 2^{λ+D}π^{D/2}Γ((λ+D)/2)/Γ(−λ/2).
pub fn power_law_fourier(lambda: f64, dimension: Dimension) -> Result<(f64, f64)> {
    let d = dimension.re();
    let h = 0.5 * (lambda + d);
    if near_pole(h, dimension.pole_tolerance) {
        return Err(Error::ForbiddenExponent(lambda));
    }
    let c = 2f64.powf(lambda + d) * PI.powf(0.5 * d) * gamma(h)? * rgamma(-0.5 * lambda);
    Ok((c, -lambda - d))
}

/// Hankel-transform quadrature of r^λ: (2π)^{D/2} k^{1−D/2} ∫₀^∞ r^{D/2+λ} J_{D/2−1}(kr) dr.
///
/// Needs 0 < λ + D and λ + (D+1)/2 < 1 for the oscillatory integral to converge.
pub fn hankel_power_law(lambda: f64, d: f64, k: f64) -> Result<EvalResult> {
    let nu = 0.5 * d - 1.0;
    let f = |r: f64| {
        if r == 0.0 {
            0.0
        } else {
            r.powf(0.5 * d + lambda) * bessel_j(nu, k * r).unwrap_or(0.0)
        }
    };
    // approximate zero spacing of J_ν
    let breaks: Vec<f64> = (1..80).map(|n| ((n as f64 + 0.5 * nu - 0.25) * PI).max(0.5) / k).collect();
    let r = oscillatory(&f, 0.0, &breaks, 1e-11)?;
    let pre = (2.0 * PI).powf(0.5 * d) * k.powf(1.0 - 0.5 * d);
    Ok(EvalResult::converged(pre * r.value, pre * r.abs_err, r.work))
}

/// ∫ d^Dx (x² + l²)^{−n} = π^{D/2} l^{D−2n} Γ(n − D/2)/Γ(n).
pub fn weyl_power(d: f64, n: f64, l: f64) -> Result<f64> {
    Ok(PI.powf(0.5 * d) * l.powf(d - 2.0 * n) * gamma(n - 0.5 * d)? * rgamma(n))
}

/// ∫ d^Dx e^{−δx²} = π^{D/2} δ^{−D/2}.
pub fn weyl_gauss(d: f64, delta: f64) -> f64 {
    PI.powf(0.5 * d) * delta.powf(-0.5 * d)
}

/// ∫ d^Dx e^{−δx² + γ·x} = π^{D/2} δ^{−D/2} e^{γ²/4δ}.
pub fn weyl_shifted_gauss(d: f64, delta: f64, g: f64) -> f64 {
    weyl_gauss(d, delta) * (g * g / (4.0 * delta)).exp()
}

/// Radial quadrature of the shifted Gaussian: the angular average of e^{γ r cos θ}
/// is Γ(D/2)(γr/2)^{1−D/2} I_{D/2−1}(γr).
pub fn weyl_shifted_gauss_quadrature(d: f64, delta: f64, g: f64) -> Result<EvalResult> {
    if !(d > 0.0) {
        return Err(Error::Domain(format!("shifted Gaussian quadrature needs D > 0, got {d}")));
    }
    let nu = 0.5 * d - 1.0;
    let f = |r: f64| {
        if g == 0.0 || r == 0.0 {
            r.powf(d - 1.0) * (-delta * r * r).exp() * if r == 0.0 { 0.0 } else { 1.0 }
        } else {
            let z = g * r;
            let i = if z > 600.0 { 0.0 } else { bessel_i(nu, z).unwrap_or(0.0) };
            r.powf(d - 1.0) * (0.5 * z).powf(-nu) * i * (-delta * r * r).exp() * gamma(0.5 * d).unwrap_or(f64::NAN)
        }
    };
    let r = half_line(&f, 1.0, LadderOpts::default())?;
    let s = surface_area(d);
    Ok(EvalResult::converged(s * r.value, s.abs() * r.abs_err, r.work).with_status(Status::Converged))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;

    fn spec(d: f64) -> RadialMeasureSpec {
        RadialMeasureSpec::new(d, 1e-2).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn weights() {
        assert!(rel(radial_weight(&spec(3.0), 2.0).unwrap(), 16.0 * PI) < 1e-14);
        assert!(rel(radial_weight(&spec(1.0), 7.3).unwrap(), 2.0) < 1e-14);
        assert!(rel(negative_prefactor(-1.0), -1.0 / PI) < 1e-14);
        let tiny = RadialMeasureSpec { eps: 1e-14, ..spec(-1.0) };
        assert!(rel(radial_weight(&tiny, 1.0).unwrap(), -1.0 / PI) < 1e-12);
        assert!(matches!(RadialMeasureSpec::new(-2.0, 1e-2), Err(Error::PoleAtDimension { .. })));
        let bad = RadialMeasureSpec { branch: Branch::Positive, ..spec(-1.0) };
        assert!(bad.validated().is_err());
    }

    #[test]
    fn integrals() {
        let tol = ToleranceConfig::default();
        let v = radial_integral(&spec(2.0), &|r: f64| (-r * r).exp(), &tol).unwrap();
        assert!(rel(v.value, PI) < 1e-10);
        let v = radial_integral(&spec(-1.0), &|r: f64| r * r * (-r * r).exp(), &tol).unwrap();
        assert!(rel(v.value, -0.282_094_791_773_878_1) < 5e-6, "{}", v.value);
        let v = radial_integral(&spec(-1.0), &|_r: f64| 0.0, &tol).unwrap();
        assert_eq!(v.value, 0.0);
        let e = radial_integral(&spec(-1.0), &|r: f64| (-r).exp(), &tol);
        assert!(matches!(e, Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn gaussian_closed_form() {
        let tol = ToleranceConfig::default();
        for &d in &[0.5, 1.0, 2.0, 3.0] {
            let v = radial_integral(&spec(d), &|r: f64| (-1.7 * r * r).exp(), &tol).unwrap();
            assert!(rel(v.value, weyl_gauss(d, 1.7)) < 1e-6);
        }
    }

    #[test]
    fn scaling() {
        let tol = ToleranceConfig::default();
        for &d in &[0.5, 1.7, 3.0] {
            let base = radial_integral(&spec(d), &|r: f64| (-r * r).exp() / (1.0 + r), &tol).unwrap().value;
            for &a in &[0.5, 2.0] {
                let v = radial_integral(&spec(d), &|r: f64| (-a * a * r * r).exp() / (1.0 + a * r), &tol).unwrap().value;
                assert!(rel(v, a.powf(-d) * base) < 1e-6);
            }
        }
        let d = -0.7;
        let f = |r: f64| r * r * (-r * r).exp();
        let base = radial_integral(&spec(d), &f, &tol).unwrap().value;
        for &a in &[0.5, 2.0] {
            let v = radial_integral(&spec(d), &|r: f64| f(a * r), &tol).unwrap().value;
            assert!(rel(v, a.powf(d.abs()) * base) < 1e-5, "a={a}: {v} vs {}", a.powf(d.abs()) * base);
        }
    }

    #[test]
    fn extrapolation() {
        let c: Vec<(f64, f64)> = eps_ladder(0.1, 4).into_iter().map(|e| (e, 3.5)).collect();
        assert_eq!(eps_extrapolate(&c).unwrap().value, 3.5);
        let s: Vec<(f64, f64)> = [0.1, 0.05, 0.025].iter().map(|&e| (e, 1.0 / (1.0 + e * e))).collect();
        assert!((eps_extrapolate(&s).unwrap().value - 1.0).abs() < 1e-4);
        assert!(matches!(eps_extrapolate(&s[..2]), Err(Error::InsufficientSamples(2))));
    }

    #[test]
    fn expansion() {
        let f = |r: f64| (-r).exp();
        let fp = |r: f64| -(-r).exp();
        let c = expansion_coefficients(&f, &fp, 4, Branch::Positive, 0.0).unwrap();
        assert!((c.c[0].re - 1.0).abs() < 1e-15);
        assert!((c.c[1].re + EULER_GAMMA).abs() < 1e-10);
        // I_D for e^{-r} is S_D Γ(D)
        let d = 0.1;
        let exact = surface_area(d) * gamma(d).unwrap();
        assert!(rel(c.integral(d), exact) < 1e-3);

        let g = |r: f64| r * (-r).exp();
        let gp = |r: f64| (1.0 - r) * (-r).exp();
        let c = expansion_coefficients(&g, &gp, 4, Branch::Negative, 1e-8).unwrap();
        assert_eq!(c.c[0].re, 0.0);
        let d = -0.1;
        let exact = surface_area(d) * gamma(1.0 + d).unwrap();
        assert!(rel(c.integral(d), exact) < 1e-3, "{} vs {exact}", c.integral(d));
        let direct = radial_integral(&spec(d), &g, &ToleranceConfig::default()).unwrap().value;
        assert!(rel(direct, exact) < 1e-3);
    }

    #[test]
    fn fourier() {
        let (c, e) = power_law_fourier(-2.0, Dimension::real(4.0)).unwrap();
        assert!(rel(c, 4.0 * PI * PI) < 1e-13);
        assert_eq!(e, -2.0);
        let (_, e) = power_law_fourier(-1.5, Dimension::real(3.0)).unwrap();
        assert_eq!(e, -1.5);
        assert!(matches!(power_law_fourier(-3.0, Dimension::real(3.0)), Err(Error::ForbiddenExponent(_))));
        assert!(matches!(power_law_fourier(-5.0, Dimension::real(3.0)), Err(Error::ForbiddenExponent(_))));
        let q = hankel_power_law(-2.0, 4.0, 1.3).unwrap();
        assert!(rel(q.value, 4.0 * PI * PI * 1.3f64.powi(-2)) < 1e-6, "{}", q.value);
        let (c, _) = power_law_fourier(-1.5, Dimension::real(2.0)).unwrap();
        let q = hankel_power_law(-1.5, 2.0, 0.7).unwrap();
        assert!(rel(q.value, c * 0.7f64.powf(-0.5)) < 1e-6, "{} vs {}", q.value, c * 0.7f64.powf(-0.5));
    }

    #[test]
    fn weyl_forms() {
        let tol = ToleranceConfig::default();
        let v = radial_integral(&spec(2.6), &|r: f64| (r * r + 0.49).powf(-2.5), &tol).unwrap();
        assert!(rel(v.value, weyl_power(2.6, 2.5, 0.7).unwrap()) < 1e-8);
        let q = weyl_shifted_gauss_quadrature(2.6, 1.3, 0.8).unwrap();
        assert!(rel(q.value, weyl_shifted_gauss(2.6, 1.3, 0.8)) < 1e-8, "{}", q.value);
    }
}
