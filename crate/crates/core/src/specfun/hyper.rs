//! Gauss 2F1 inside the closed unit disk and Appell F4 inside √|x| + √|y| < 1.

use super::gamma::{gamma_c, near_pole, POLE_TOL};
use crate::error::{Error, Result};
use crate::quad::wynn_epsilon;
use crate::tol::{EvalResult, SeriesClass, Status, ToleranceConfig};
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

type C = Complex64;

fn pole_parameter(c: C) -> bool {
    c.im.abs() < POLE_TOL && near_pole(c.re, POLE_TOL)
}

/// Boundary class of 2F1(a, b; c; z) from γ = Re(a + b − c).
pub fn gauss_class(a: C, b: C, c: C) -> SeriesClass {
    SeriesClass::from_gamma((a + b - c).re)
}

/// 2F1 with the default tolerance profile.
pub fn gauss_2f1(a: C, b: C, c: C, z: C) -> Result<EvalResult<C>> {
    gauss_2f1_with(a, b, c, z, &ToleranceConfig::default())
}

/// 2F1(a, b; c; z) by its defining series; the result carries the boundary class.
pub fn gauss_2f1_with(a: C, b: C, c: C, z: C, tol: &ToleranceConfig) -> Result<EvalResult<C>> {
    let class = gauss_class(a, b, c);
    let r = z.norm();
    if r > 1.0 + 1e-15 {
        return Err(Error::OutsideDisk(r));
    }
    let terminating = |p: C| p.im == 0.0 && p.re <= 0.0 && p.re == p.re.round();
    if pole_parameter(c) && !(terminating(a) && a.re > c.re || terminating(b) && b.re > c.re) {
        return Err(Error::PoleAtArgument { what: format!("2F1 lower parameter c = {c}"), at: c.re });
    }
    let on_circle = (r - 1.0).abs() <= 1e-15;
    let polynomial = terminating(a) || terminating(b);
    if on_circle && !polynomial {
        match class {
            SeriesClass::Diverges => {
                return Err(Error::DivergentSeries(format!("2F1 on |z| = 1 with class {}", class.label())))
            }
            SeriesClass::ConvergesExceptAtOne if (z - 1.0).norm() < 1e-15 => {
                return Err(Error::DivergentSeries("2F1 at z = 1 with 0 <= gamma < 1".into()))
            }
            _ => {}
        }
        if (z - 1.0).norm() < 1e-15 {
            // Gauss summation
            let v = gamma_c(c)? * gamma_c(c - a - b)? / (gamma_c(c - a)? * gamma_c(c - b)?);
            return Ok(EvalResult::exact(v).with_status(Status::Series(class)));
        }
    }
    let mut t = C::new(1.0, 0.0);
    let mut s = t;
    let mut partial: Vec<C> = Vec::new();
    let big = (a.norm() + b.norm() + c.norm()) as usize + 2;
    for k in 0..tol.max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        t *= ratio;
        s += t;
        if on_circle {
            partial.push(s);
        }
        if t.norm() == 0.0 {
            return Ok(EvalResult::converged(s, 0.0, k + 1).with_status(Status::Series(class)));
        }
        if !on_circle && k > big {
            let q = ratio.norm();
            if q < 1.0 {
                let tail = t.norm() * q / (1.0 - q);
                if tail <= tol.abs_tol.max(1e-16 * s.norm()) {
                    return Ok(EvalResult::converged(s, tail, k + 1).with_status(Status::Series(class)));
                }
            }
        }
        if on_circle && partial.len() >= 400 {
            break;
        }
    }
    if on_circle {
        let re: Vec<f64> = partial.iter().map(|p| p.re).collect();
        let im: Vec<f64> = partial.iter().map(|p| p.im).collect();
        let (vr, er) = wynn_epsilon(&re);
        let (vi, ei) = wynn_epsilon(&im);
        let v = C::new(vr, vi);
        let err = er.hypot(ei);
        if err <= 1e-8 * v.norm().max(1.0) {
            return Ok(EvalResult::converged(v, err, partial.len()).with_status(Status::Series(class)));
        }
    }
    Err(Error::NotConverged(format!("2F1({a}, {b}; {c}; {z}) after {} terms", tol.max_terms)))
}

/// Appell F4 with the default tolerance profile.
pub fn appell_f4(alpha: C, beta: C, gamma1: C, gamma2: C, x: C, y: C) -> Result<EvalResult<C>> {
    appell_f4_with(alpha, beta, gamma1, gamma2, x, y, &ToleranceConfig::default())
}

/// F4(α, β; γ₁, γ₂; x, y) = Σ (α)_{m+n}(β)_{m+n} / ((γ₁)_m (γ₂)_n m! n!) x^m y^n,
/// summed diagonal by diagonal with term recurrences.
pub fn appell_f4_with(
    alpha: C,
    beta: C,
    gamma1: C,
    gamma2: C,
    x: C,
    y: C,
    tol: &ToleranceConfig,
) -> Result<EvalResult<C>> {
    let reach = x.norm().sqrt() + y.norm().sqrt();
    if reach >= 1.0 {
        return Err(Error::OutsideDomain(format!("sqrt|x| + sqrt|y| = {reach} >= 1")));
    }
    if pole_parameter(gamma1) || pole_parameter(gamma2) {
        return Err(Error::PoleAtArgument { what: "F4 lower parameter".into(), at: gamma1.re.min(gamma2.re) });
    }
    if y.norm() == 0.0 {
        return gauss_2f1_with(alpha, beta, gamma1, x, tol).map(|r| r.with_status(Status::Converged));
    }
    if x.norm() == 0.0 {
        return gauss_2f1_with(alpha, beta, gamma2, y, tol).map(|r| r.with_status(Status::Converged));
    }
    // diag[m] holds t(m, N − m)
    let mut diag: Vec<C> = alloc::vec![C::new(1.0, 0.0)];
    let mut total = C::new(1.0, 0.0);
    let mut mags: Vec<f64> = alloc::vec![1.0];
    let mut work = 1;
    let budget = (tol.max_terms / 4).max(64);
    let big = (alpha.norm() + beta.norm() + gamma1.norm() + gamma2.norm()) as usize + 4;
    for n_diag in 1..budget {
        let nf = n_diag as f64;
        let lift = (alpha + nf - 1.0) * (beta + nf - 1.0);
        let mut next: Vec<C> = Vec::with_capacity(n_diag + 1);
        for (m, &t) in diag.iter().enumerate() {
            let n_new = (n_diag - m) as f64;
            next.push(t * lift * y / ((gamma2 + n_new - 1.0) * n_new));
        }
        let last = diag[n_diag - 1];
        next.push(last * lift * x / ((gamma1 + nf - 1.0) * nf));
        let sum: C = next.iter().sum();
        let mag: f64 = next.iter().map(|t| t.norm()).sum();
        total += sum;
        work += next.len();
        mags.push(mag);
        diag = next;
        if mag == 0.0 && n_diag > big {
            return Ok(EvalResult::converged(total, 0.0, work));
        }
        if n_diag > big {
            let k = mags.len();
            let rho = mags[k - 1] / mags[k - 2];
            if rho < 1.0 && mags[k - 2] / mags[k - 3] < 1.0 {
                let tail = mag * rho / (1.0 - rho);
                if tail <= tol.abs_tol.max(1e-16 * total.norm()) {
                    return Ok(EvalResult::converged(total, tail, work));
                }
            }
        }
    }
    Err(Error::NotConverged(format!("F4 after {budget} diagonals")))
}
