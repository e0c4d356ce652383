//! Bessel functions J, I, K of real order and positive real argument.

use super::gamma::{ln_gamma, rgamma, sin_pi};
use crate::error::{Error, Result};
use crate::quad::adaptive;
use alloc::format;
use core::f64::consts::{FRAC_PI_2, PI};
use num_traits::Float;

/// Largest supported |order|.
pub const MAX_ORDER: f64 = 20.0;

/// Which Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// First kind J_ν.
    J,
    /// Modified first kind I_ν.
    I,
    /// Modified second kind K_ν.
    K,
}

fn check(order: f64, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be positive, got {x}")));
    }
    if !(order.abs() <= MAX_ORDER) {
        return Err(Error::OrderOutOfRange(order));
    }
    Ok(())
}

/// Evaluates J, I or K.
pub fn bessel(kind: BesselKind, order: f64, x: f64) -> Result<f64> {
    match kind {
        BesselKind::J => bessel_j(order, x),
        BesselKind::I => bessel_i(order, x),
        BesselKind::K => bessel_k(order, x),
    }
}

fn negative_integer(nu: f64) -> Option<i64> {
    if nu < 0.0 && nu == nu.round() {
        Some(nu as i64)
    } else {
        None
    }
}

/// Ascending series Σ s^k (x/2)^{2k+ν}/(k! Γ(k+ν+1)) with s = ∓1.
fn ascending(nu: f64, x: f64, alternate: bool) -> f64 {
    let h = 0.5 * x;
    let q = if alternate { -h * h } else { h * h };
    let mut t = h.powf(nu) * rgamma(nu + 1.0);
    let mut s = t;
    for k in 1..2000 {
        let k = k as f64;
        t *= q / (k * (k + nu));
        s += t;
        if t.abs() <= 1e-17 * s.abs() && k > h {
            break;
        }
    }
    s
}

/// J_ν(x): series for x ≤ 12, Hankel expansion for x ≥ max(25, ν²), Schläfli integral between.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    if let Some(n) = negative_integer(nu) {
        let v = bessel_j(-nu, x)?;
        return Ok(if n % 2 == 0 { v } else { -v });
    }
    if x <= 12.0 {
        Ok(ascending(nu, x, true))
    } else if x >= 25f64.max(nu * nu) {
        Ok(hankel_j(nu, x))
    } else {
        Ok(schlafli_j(nu, x))
    }
}

fn hankel_j(nu: f64, x: f64) -> f64 {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut t = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let m = 2.0 * kf - 1.0;
        t *= (mu - m * m) / (kf * 8.0 * x);
        if t.abs() > last {
            break;
        }
        last = t.abs();
        // k odd → Q, k even → P, with alternating signs in pairs
        match k % 4 {
            1 => q += t,
            2 => p -= t,
            3 => q -= t,
            _ => p += t,
        }
        if t.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn schlafli_j(nu: f64, x: f64) -> f64 {
    let f = |th: f64| (nu * th - x * th.sin()).cos();
    let first = adaptive(&f, 0.0, PI, 1e-16, 1e-15, 500).value / PI;
    let s = sin_pi(nu);
    if s == 0.0 {
        return first;
    }
    let cut = (800.0 / x).asinh() + 1.0;
    let g = |t: f64| (-x * t.sinh() - nu * t).exp();
    let second = adaptive(&g, 0.0, cut, 1e-300, 1e-15, 500).value;
    first - s / PI * second
}

/// I_ν(x) by its ascending series.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    if negative_integer(nu).is_some() {
        return Ok(ascending(-nu, x, false));
    }
    Ok(ascending(nu, x, false))
}

/// K_ν(x) from ∫₀^∞ e^{−x cosh t} cosh(νt) dt, evaluated in scaled form around its peak.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    let a = nu.abs();
    // log of the integrand: −x cosh t + ln cosh(a t)
    let lncosh = |u: f64| u + (-2.0 * u).exp().ln_1p() - core::f64::consts::LN_2;
    let g = |t: f64| -x * t.cosh() + lncosh(a * t);
    let tpk = if a > 0.0 { (a / x).asinh() } else { 0.0 };
    let gpk = g(tpk);
    let mut hi = tpk + 1.0;
    while g(hi) > gpk - 45.0 {
        hi += 0.5 + 0.5 * (hi - tpk);
    }
    let f = |t: f64| (g(t) - gpk).exp();
    let mut s = adaptive(&f, tpk, hi, 1e-300, 1e-15, 500).value;
    if tpk > 0.0 {
        s += adaptive(&f, 0.0, tpk, 1e-300, 1e-15, 500).value;
    }
    Ok(s * gpk.exp())
}

/// K_ν through π/(2 sin νπ)(I_{−ν} − I_ν); integer orders via symmetric offsets
/// ±1e−6 with one Richardson step. Accurate only for small x.
pub fn bessel_k_series(nu: f64, x: f64) -> Result<f64> {
    check(nu, x)?;
    let raw = |v: f64| PI / (2.0 * sin_pi(v)) * (ascending(-v, x, false) - ascending(v, x, false));
    if (nu - nu.round()).abs() > 1e-4 {
        return Ok(raw(nu));
    }
    let n = nu.round();
    let d = 1e-6;
    let sym = |h: f64| 0.5 * (raw(n + h) + raw(n - h));
    Ok((4.0 * sym(d) - sym(2.0 * d)) / 3.0)
}

/// Leading small-x behaviour of K_ν: Γ(ν)/2 · (2/x)^ν for ν > 0, −ln(x/2) − γ for ν = 0.
pub fn bessel_k_small(nu: f64, x: f64) -> f64 {
    let a = nu.abs();
    if a == 0.0 {
        -(0.5 * x).ln() - super::gamma::EULER_GAMMA
    } else {
        0.5 * (ln_gamma(a) + a * (2.0 / x).ln()).exp()
    }
}

/// Closed form of K_{n+1/2}(x) = √(π/2x) e^{−x} Σ_k (n+k)!/(k!(n−k)!(2x)^k).
pub fn bessel_k_half_integer(n: u32, x: f64) -> f64 {
    let mut s = 0.0;
    let mut c = 1.0;
    for k in 0..=n {
        if k > 0 {
            let kf = k as f64;
            let nf = n as f64;
            c *= (nf + kf) * (nf - kf + 1.0) / (kf * 2.0 * x);
        }
        s += c;
    }
    (FRAC_PI_2 / x).sqrt() * (-x).exp() * s
}
