//! Feynman-parameter quadratures used to certify the engine.

use crate::error::{Error, Result};
use crate::quad::tanh_sinh;
use crate::specfun::{gamma, near_pole, rgamma};
use crate::tol::ToleranceConfig;
use alloc::format;
use num_traits::Float;

/// Euclidean bubble Γ(ν−h)/(Γ(v₁)Γ(v₂)) ∫₀¹ x^{v₁−1}(1−x)^{v₂−1}[x(1−x)Q² + xM₁² + (1−x)M₂²]^{h−ν} dx.
///
/// Massless lines fall back to [`massless_bubble_continued`].
pub fn bubble_feynman(d: f64, v1: f64, v2: f64, q2: f64, m1_2: f64, m2_2: f64, tol: &ToleranceConfig) -> Result<f64> {
    if !(v1 > 0.0 && v2 > 0.0) {
        return Err(Error::EndpointSingularity(format!("needs v1, v2 > 0, got ({v1}, {v2})")));
    }
    if m1_2 == 0.0 && m2_2 == 0.0 {
        return massless_bubble_continued(d, v1, v2, q2, tol);
    }
    let h = 0.5 * d;
    let nu = v1 + v2;
    if (m1_2 == 0.0 && h - v2 <= 0.0) || (m2_2 == 0.0 && h - v1 <= 0.0) {
        return Err(Error::EndpointSingularity(format!("one-mass integrand not integrable at D = {d}")));
    }
    let pre = gamma(nu - h)? * rgamma(v1) * rgamma(v2);
    let f = |_x: f64, xa: f64, xb: f64| {
        xa.powf(v1 - 1.0) * xb.powf(v2 - 1.0) * (xa * xb * q2 + xa * m1_2 + xb * m2_2).powf(h - nu)
    };
    let r = tanh_sinh(&f, 0.0, 1.0, 0.0, tol.rel_tol.max(1e-14))?;
    Ok(pre * r.value)
}

/// ∫₀^{1/2} x^{a−1}(1−x)^{b−1} dx continued to a ≤ 0 by subtracting the Taylor polynomial of
/// (1−x)^{b−1} through order K−1, K = ⌊−a⌋ + 1, and integrating it analytically.
fn half_beta(a: f64, b: f64, tol: &ToleranceConfig) -> Result<f64> {
    if near_pole(a, 1e-10) {
        return Err(Error::PoleAtArgument { what: format!("Beta argument {a}"), at: a });
    }
    let k_sub = if a > 0.0 { 0 } else { (-a).floor() as usize + 1 };
    // c_k = (1−b)_k / k!
    let coef = |k: usize| -> f64 {
        let mut c = 1.0;
        for j in 0..k {
            c *= (1.0 - b + j as f64) / (j + 1) as f64;
        }
        c
    };
    let mut analytic = 0.0;
    for k in 0..k_sub {
        let p = a + k as f64;
        analytic += coef(k) * 0.5f64.powf(p) / p;
    }
    let ck: alloc::vec::Vec<f64> = (0..k_sub).map(coef).collect();
    let c_start = coef(k_sub);
    // remainder divided by x^K
    let rem = |x: f64| -> f64 {
        if x < 0.25 {
            let (mut t, mut s) = (c_start, 0.0);
            let mut k = k_sub;
            loop {
                s += t;
                if t.abs() <= 1e-18 * s.abs() || k > k_sub + 400 {
                    break s;
                }
                t *= (1.0 - b + k as f64) / (k + 1) as f64 * x;
                k += 1;
            }
        } else {
            let mut poly = 0.0;
            for c in ck.iter().rev() {
                poly = poly * x + c;
            }
            ((1.0 - x).powf(b - 1.0) - poly) / x.powi(k_sub as i32)
        }
    };
    let f = |_x: f64, xa: f64, _xb: f64| xa.powf(a - 1.0 + k_sub as f64) * rem(xa);
    let r = tanh_sinh(&f, 0.0, 0.5, 0.0, tol.rel_tol.max(1e-14))?;
    Ok(analytic + r.value)
}

/// Beta integral ∫₀¹ x^{a−1}(1−x)^{b−1} dx continued to negative non-integer a, b.
pub fn continued_beta(a: f64, b: f64, tol: &ToleranceConfig) -> Result<f64> {
    Ok(half_beta(a, b, tol)? + half_beta(b, a, tol)?)
}

/// Massless bubble Γ(ν−h)/(Γ(v₁)Γ(v₂))·B(h−v₂, h−v₁)·(Q²)^{h−ν} with the Beta integral continued.
pub fn massless_bubble_continued(d: f64, v1: f64, v2: f64, q2: f64, tol: &ToleranceConfig) -> Result<f64> {
    let h = 0.5 * d;
    let nu = v1 + v2;
    let pre = gamma(nu - h)? * rgamma(v1) * rgamma(v2);
    Ok(pre * continued_beta(h - v2, h - v1, tol)? * q2.powf(h - nu))
}
