//! Gamma family on the real line and on horizontal strips of the complex plane.

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

/// Distance to a non-positive integer below which Gamma reports a pole.
pub const POLE_TOL: f64 = 1e-8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

/// `cos(pi x)` with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn nonpositive_integer_distance(x: f64) -> Option<f64> {
    if x > 0.5 {
        None
    } else {
        Some((x - x.round()).abs())
    }
}

/// True when `x` lies within `tol` of 0, −1, −2, …
pub fn near_pole(x: f64, tol: f64) -> bool {
    nonpositive_integer_distance(x).is_some_and(|d| d < tol)
}

fn lanczos_sum(z: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    a
}

fn gamma_positive(x: f64) -> f64 {
    // x >= 0.5
    if x == x.floor() && x <= 24.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return f;
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    let lead = ((z + 0.5) * t.ln() - t).exp();
    (2.0 * PI).sqrt() * lead * lanczos_sum(z)
}

/// Gamma without pole checks; infinite at the poles.
pub fn gamma_unchecked(x: f64) -> f64 {
    if x >= 0.5 {
        gamma_positive(x)
    } else {
        let s = sin_pi(x);
        if s == 0.0 {
            return f64::INFINITY;
        }
        PI / (s * gamma_positive(1.0 - x))
    }
}

/// Γ(x), refusing arguments within [`POLE_TOL`] of a pole.
pub fn gamma(x: f64) -> Result<f64> {
    gamma_tol(x, POLE_TOL)
}

/// Γ(x) with an explicit pole tolerance.
pub fn gamma_tol(x: f64, tol: f64) -> Result<f64> {
    if near_pole(x, tol) {
        return Err(Error::PoleAtArgument { what: format!("Gamma({x})"), at: x });
    }
    Ok(gamma_unchecked(x))
}

/// 1/Γ(x); entire, exactly zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if x >= 0.5 {
        1.0 / gamma_positive(x)
    } else {
        sin_pi(x) * gamma_positive(1.0 - x) / PI
    }
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x >= 0.5 {
        if x < 20.0 {
            return gamma_positive(x).ln();
        }
        let z = x - 1.0;
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
    } else {
        (PI / sin_pi(x).abs()).ln() - ln_gamma(1.0 - x)
    }
}

fn lanczos_sum_c(z: Complex64) -> Complex64 {
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        a += *c / (z + k as f64);
    }
    a
}

fn sin_pi_c(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let s = (r * PI).sin();
    if (n as i64).rem_euclid(2) == 0 {
        s
    } else {
        -s
    }
}

fn gamma_c_right(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let t = zm + LANCZOS_G + 0.5;
    let lead = ((zm + 0.5) * t.ln() - t).exp();
    lead * lanczos_sum_c(zm) * (2.0 * PI).sqrt()
}

/// Γ(z) for complex z; real arguments route through the real kernel.
pub fn gamma_c(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return gamma(z.re).map(|g| Complex64::new(g, 0.0));
    }
    Ok(gamma_c_unchecked(z))
}

/// Complex Γ without pole checks.
pub fn gamma_c_unchecked(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(gamma_unchecked(z.re), 0.0);
    }
    if z.re >= 0.5 {
        gamma_c_right(z)
    } else {
        Complex64::new(PI, 0.0) / (sin_pi_c(z) * gamma_c_right(Complex64::new(1.0, 0.0) - z))
    }
}

/// 1/Γ(z) for complex z; zero at the poles.
pub fn rgamma_c(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(rgamma(z.re), 0.0);
    }
    if z.re >= 0.5 {
        gamma_c_right(z).inv()
    } else {
        sin_pi_c(z) * gamma_c_right(Complex64::new(1.0, 0.0) - z) / PI
    }
}

/// Pochhammer symbol (x, n) = Γ(x+n)/Γ(x) for any integer n.
///
/// Negative n uses (x, −k) = (−1)^k / (1−x, k); a vanishing denominator is a pole.
pub fn pochhammer(x: f64, n: i64) -> Result<f64> {
    if n >= 0 {
        let mut p = 1.0;
        for k in 0..n {
            p *= x + k as f64;
        }
        Ok(p)
    } else {
        let k = -n;
        let mut d = 1.0;
        for j in 0..k {
            d *= 1.0 - x + j as f64;
        }
        if d == 0.0 {
            return Err(Error::PoleAtArgument { what: format!("Gamma({})", x + n as f64), at: x + n as f64 });
        }
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        Ok(s / d)
    }
}

/// Complex Pochhammer symbol.
pub fn pochhammer_c(z: Complex64, n: i64) -> Result<Complex64> {
    if n >= 0 {
        let mut p = Complex64::new(1.0, 0.0);
        for k in 0..n {
            p *= z + k as f64;
        }
        Ok(p)
    } else {
        let k = -n;
        let mut d = Complex64::new(1.0, 0.0);
        for j in 0..k {
            d *= Complex64::new(1.0, 0.0) - z + j as f64;
        }
        if d.norm() == 0.0 {
            let at = z.re + n as f64;
            return Err(Error::PoleAtArgument { what: format!("Gamma({at})"), at });
        }
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        Ok(Complex64::new(s, 0.0) / d)
    }
}

/// Result of flipping a Gamma ratio Π Γ(α_i) / Π Γ(β_j) into Π Γ(1−β_j) / Π Γ(1−α_i).
#[derive(Debug, Clone, PartialEq)]
pub struct Flip {
    /// The symbolic sign (−1)^Θ = exp(iπΘ).
    pub sign: Complex64,
    /// Θ = Σβ − Σα as recomputed from the arguments.
    pub theta: Complex64,
    /// Exact reflection factor Π sin(πβ_j) / Π sin(πα_i); equals `sign` whenever the
    /// arguments pair off up to integers, which is the negative-even-dimension regime.
    pub reflection: Complex64,
    /// New numerator arguments 1 − β_j.
    pub numerator: Vec<Complex64>,
    /// New denominator arguments 1 − α_i.
    pub denominator: Vec<Complex64>,
}

/// Flips every Gamma of a ratio across the reflection formula.
///
/// `theta` must equal Σβ − Σα to relative 1e−9.
pub fn gamma_ratio_flip(
    numerator_args: &[Complex64],
    denominator_args: &[Complex64],
    theta: Complex64,
) -> Result<Flip> {
    let sa: Complex64 = numerator_args.iter().sum();
    let sb: Complex64 = denominator_args.iter().sum();
    let found = sb - sa;
    let scale = theta.norm().max(1.0);
    if (found - theta).norm() > 1e-9 * scale {
        return Err(Error::InconsistentTheta { expected: theta.re, found: found.re });
    }
    let one = Complex64::new(1.0, 0.0);
    let mut reflection = one;
    for b in denominator_args {
        reflection *= sin_pi_c(*b);
    }
    for a in numerator_args {
        reflection /= sin_pi_c(*a);
    }
    let sign = (Complex64::new(0.0, PI) * found).exp();
    Ok(Flip {
        sign,
        theta: found,
        reflection,
        numerator: denominator_args.iter().map(|b| one - b).collect(),
        denominator: numerator_args.iter().map(|a| one - a).collect(),
    })
}

/// Riemann zeta at integer s ≥ 2 by Borwein's alternating-series acceleration.
pub fn zeta_int(s: u32) -> f64 {
    assert!(s >= 2, "zeta_int needs s >= 2");
    const N: usize = 40;
    let n = N as f64;
    let mut d = [0.0f64; N + 1];
    let mut term = 1.0;
    let mut acc = 0.0;
    for (i, slot) in d.iter_mut().enumerate() {
        acc += term;
        *slot = acc;
        let fi = i as f64;
        term *= 4.0 * (n + fi) * (n - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    let dn = d[N];
    let mut sum = 0.0;
    for (k, dk) in d.iter().take(N).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dk - dn) / ((k + 1) as f64).powi(s as i32);
    }
    let eta = -sum / dn;
    eta / (1.0 - 2f64.powi(1 - s as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_anchors() {
        assert!(rel(gamma(0.5).unwrap(), 1.772_453_850_905_516) < 1e-14);
        assert!(rel(gamma(-0.5).unwrap(), -3.544_907_701_811_032) < 1e-14);
        assert_eq!(gamma(4.0).unwrap(), 6.0);
        assert!(gamma(-2.0).is_err());
        assert!(gamma(1e-10).is_err());
    }

    #[test]
    fn gamma_large_argument() {
        // 30! = 2.6525285981219107e32
        assert!(rel(gamma(31.0).unwrap(), 2.652_528_598_121_910_6e32) < 1e-13);
        assert!(rel(gamma(50.5).unwrap(), gamma(49.5).unwrap() * 49.5) < 1e-13);
    }

    #[test]
    fn rgamma_is_zero_at_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(rel(rgamma(2.5), 1.0 / gamma(2.5).unwrap()) < 1e-14);
    }

    #[test]
    fn complex_gamma_matches_real_and_recurrence() {
        let z = Complex64::new(0.3, 1e-300);
        assert!((gamma_c_unchecked(z).re - gamma(0.3).unwrap()).abs() < 1e-12);
        let w = Complex64::new(-1.7, 2.3);
        let lhs = gamma_c(w + 1.0).unwrap();
        let rhs = gamma_c(w).unwrap() * w;
        assert!((lhs - rhs).norm() / lhs.norm() < 1e-12);
        // |Γ(iy)|² = π / (y sinh πy)
        let y = 1.5;
        let g = gamma_c(Complex64::new(0.0, y)).unwrap();
        assert!(rel(g.norm_sqr(), PI / (y * (PI * y).sinh())) < 1e-12);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(7.3, 0).unwrap(), 1.0);
        assert_eq!(pochhammer(3.0, 4).unwrap(), 360.0);
        assert!(rel(pochhammer(5.0, -2).unwrap(), 1.0 / 12.0) < 1e-15);
        assert!(pochhammer(2.0, -3).is_err());
    }

    #[test]
    fn flip_examples() {
        let f = gamma_ratio_flip(&[], &[], Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(f.sign, Complex64::new(1.0, 0.0));
        assert!(f.numerator.is_empty() && f.denominator.is_empty());
        let (v, d) = (0.3, -1.0);
        let a = Complex64::new(1.0 - v, 0.0);
        let b = Complex64::new(v - d / 2.0 + 1.0, 0.0);
        let f = gamma_ratio_flip(&[a], &[b], b - a).unwrap();
        let direct = gamma(a.re).unwrap() / gamma(b.re).unwrap();
        let flipped = f.reflection.re * gamma(f.numerator[0].re).unwrap() / gamma(f.denominator[0].re).unwrap();
        assert!(rel(flipped, direct) < 1e-12);
        assert!(gamma_ratio_flip(&[a], &[b], Complex64::new(0.5, 0.0)).is_err());
    }

    #[test]
    fn zeta_values() {
        assert!(rel(zeta_int(2), PI * PI / 6.0) < 1e-14);
        assert!(rel(zeta_int(4), PI.powi(4) / 90.0) < 1e-14);
        assert!(rel(zeta_int(3), 1.202_056_903_159_594_2) < 1e-14);
        assert!(rel(zeta_int(12), 1.000_246_086_553_308) < 1e-14);
    }
}
