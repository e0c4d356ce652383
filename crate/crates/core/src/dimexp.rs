//! Dimensional expansions of free energies and the A₁ constant, and the radial
//! eigenvalue problem continued to negative dimension.

use crate::error::{Error, Result};
use crate::specfun::gamma::{gamma, ln_gamma, near_pole, rgamma, zeta_int, EULER_GAMMA, POLE_TOL};
use crate::specfun::{bessel_j, Dimension};
use crate::tol::{EvalResult, Status};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

/// Taylor series in x = −D = |D| about D = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesExpansion {
    /// a₀ … a_K.
    pub coefficients: Vec<f64>,
    /// Expansion point in D.
    pub expansion_point: f64,
    /// Radius of convergence in D.
    pub radius_estimate: f64,
}

impl SeriesExpansion {
    /// Σ_{j ≤ k} a_j x^j.
    pub fn partial_sum(&self, k: usize, x: f64) -> f64 {
        self.coefficients.iter().take(k + 1).rev().fold(0.0, |acc, a| acc * x + a)
    }

    /// Partial sum at dimension D (x = −D).
    pub fn partial_sum_at(&self, k: usize, d: f64) -> f64 {
        self.partial_sum(k, -(d - self.expansion_point))
    }
}

/// A₁(D) = (2π)^{−D/2} Γ(1 − D/2).
pub fn a1_exact(dim: Dimension) -> Result<f64> {
    let d = dim.re();
    if d >= 2.0 {
        return Err(Error::Domain(format!("A1 needs D < 2, got {d}")));
    }
    if near_pole(1.0 - 0.5 * d, POLE_TOL) {
        return Err(Error::PoleAtDimension { what: "Gamma(1 - D/2)".into(), dim: d });
    }
    Ok((2.0 * PI).powf(-0.5 * d) * gamma(1.0 - 0.5 * d)?)
}

/// Coefficients of A₁ in x = −D: exponentiates ln A₁ = (x/2)(ln 2π − γ) + Σ_{k≥2} ζ(k)(−x/2)^k/k.
pub fn a1_series(order: usize) -> SeriesExpansion {
    let mut b = alloc::vec![0.0; order + 1];
    if order >= 1 {
        b[1] = 0.5 * ((2.0 * PI).ln() - EULER_GAMMA);
    }
    for (k, bk) in b.iter_mut().enumerate().skip(2) {
        *bk = zeta_int(k as u32) * (-0.5f64).powi(k as i32) / k as f64;
    }
    let mut a = alloc::vec![1.0];
    for n in 1..=order {
        let s: f64 = (1..=n).map(|k| k as f64 * b[k] * a[n - k]).sum();
        a.push(s / n as f64);
    }
    SeriesExpansion { coefficients: a, expansion_point: 0.0, radius_estimate: 2.0 }
}

/// Free energy F(D) for the φ^{2N} theory: exact for N = 1, first two Laurent terms for N ≥ 2.
pub fn free_energy(dim: Dimension, g: f64, n_field: u32) -> Result<EvalResult> {
    let d = dim.re();
    if d.abs() <= dim.pole_tolerance.max(POLE_TOL) {
        return Err(Error::ZeroDimension);
    }
    if !(g > 0.0) || n_field == 0 {
        return Err(Error::Domain(format!("free energy needs g > 0 and N >= 1, got g = {g}, N = {n_field}")));
    }
    if n_field == 1 {
        if d.abs() >= 2.0 {
            return Err(Error::Domain(format!("N = 1 branch needs |D| < 2, got {d}")));
        }
        let v = (g / (2.0 * PI)).powf(0.5 * d) * gamma(1.0 - 0.5 * d)? / d;
        return Ok(EvalResult::exact(v));
    }
    let nf = n_field as f64;
    let scale = g.powf(d / (2.0 * nf - d * (nf - 1.0)));
    let bracket = 1.0 / d + 0.5 * (EULER_GAMMA - (4.0 * PI).ln()) - zero_dim_log(nf);
    Ok(EvalResult { abs_err: (scale * d).abs(), ..EvalResult::converged(scale * bracket, 0.0, 0) }.with_status(Status::Truncated))
}

/// ln[(2/π)^{1/2} Γ(1 + 1/2N)].
fn zero_dim_log(nf: f64) -> f64 {
    0.5 * (2.0 / PI).ln() + ln_gamma(1.0 + 0.5 / nf)
}

/// g ∂F/∂g for N = 1: ½(g/2π)^{D/2} Γ(1 − D/2).
pub fn free_energy_log_derivative(dim: Dimension, g: f64) -> Result<f64> {
    let d = dim.re();
    Ok(0.5 * (g / (2.0 * PI)).powf(0.5 * d) * gamma(1.0 - 0.5 * d)?)
}

/// A_N(D) = 2Ng(1 − D/(2N − D(N−1))) ∂F/∂g, using the exact F for N = 1 and the two-term F otherwise.
pub fn an_constant(dim: Dimension, n_field: u32) -> Result<f64> {
    let d = dim.re();
    let nf = n_field as f64;
    let den = 2.0 * nf - d * (nf - 1.0);
    // g ∂F/∂g at g = 1
    let gdf = if n_field == 1 {
        free_energy_log_derivative(dim, 1.0)?
    } else {
        let bracket = 1.0 / d + 0.5 * (EULER_GAMMA - (4.0 * PI).ln()) - zero_dim_log(nf);
        d / den * bracket
    };
    Ok(2.0 * nf * (1.0 - d / den) * gdf)
}

/// Radial eigenvalue request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueQuery {
    /// D (real part used).
    pub dimension: Dimension,
    /// Level n ≥ 0.
    pub level: u32,
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// E = z² with z the (level+1)-th positive zero of J_{D/2−1}.
pub fn qm_eigenvalue(query: EigenvalueQuery) -> Result<f64> {
    let nu = 0.5 * query.dimension.re() - 1.0;
    let f = |z: f64| bessel_j(nu, z).unwrap_or(f64::NAN);
    bessel_j(nu, 1.0)?;
    let want = query.level as usize + 1;
    let mut found = 0;
    let mut grid: Vec<f64> = (0..=60).map(|k| 1e-6 * 10f64.powf(k as f64 / 10.0)).collect();
    let zmax = (want as f64 + 2.0) * PI + nu.abs() + 10.0;
    let mut z = 1.0 + 0.02;
    while z < zmax {
        grid.push(z);
        z += 0.02;
    }
    let mut prev = grid[0];
    let mut fprev = f(prev);
    for &x in &grid[1..] {
        let fx = f(x);
        if fprev == 0.0 || (fx < 0.0) != (fprev < 0.0) {
            found += 1;
            if found == want {
                let root = if fprev == 0.0 { prev } else { bisect(&f, prev, x, 1e-12 * x.max(1.0)) };
                return Ok(root * root);
            }
        }
        prev = x;
        fprev = fx;
    }
    Err(Error::RootNotBracketed(format!("zero {want} of J_{nu} below {zmax}")))
}

/// Σ_{j<K} (−E/4)^j/(j! Γ(j − n + ε/2)).
fn threshold_series(n: u32, eps: f64, e: f64, terms: u32) -> f64 {
    let mut s = 0.0;
    let mut p = 1.0;
    for j in 0..terms {
        if j > 0 {
            p *= -e / (4.0 * j as f64);
        }
        s += p * rgamma(j as f64 - n as f64 + 0.5 * eps);
    }
    s
}

fn threshold_root(n: u32, eps: f64) -> Result<f64> {
    let terms = n + 8;
    let f = |e: f64| threshold_series(n, eps, e, terms);
    let mut lo = 1e-14;
    let mut flo = f(lo);
    for k in 1..=300 {
        let hi = 1e-14 * 10f64.powf(k as f64 * 0.05);
        let fh = f(hi);
        if (fh < 0.0) != (flo < 0.0) {
            return Ok(bisect(&f, lo, hi, 1e-15 * hi));
        }
        lo = hi;
        flo = fh;
    }
    Err(Error::NotConverged(format!("no threshold root for n = {n}, offset {eps}")))
}

/// Threshold eigenvalue at D = −2n + offset from the truncated small-E Bessel series, and the
/// log-log slope of E against the offset over the decade [offset/10, offset].
pub fn qm_threshold(n: u32, d_offset: f64) -> Result<(f64, f64)> {
    if d_offset == 0.0 {
        return Ok((0.0, f64::NAN));
    }
    if !(d_offset > 0.0 && d_offset <= 0.5) {
        return Err(Error::PreconditionViolated(format!("offset must lie in (0, 0.5], got {d_offset}")));
    }
    let e = threshold_root(n, d_offset)?;
    let e_low = threshold_root(n, 0.1 * d_offset)?;
    Ok((e, (e / e_low).log10()))
}

/// One row of the A₁ partial-sum table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    /// D.
    pub d: f64,
    /// A_{1,k}(D), k = 1..=order.
    pub partial: Vec<f64>,
    /// Published partial sums for k = 1, 2.
    pub published: Vec<f64>,
    /// Whether each computed partial sum differs from the published one by more than 0.005.
    pub deviates: Vec<bool>,
    /// A₁(D).
    pub exact: f64,
}

/// Partial sums vs exact A₁ at D = −1 and D = −2.
#[derive(Debug, Clone, PartialEq)]
pub struct Table1 {
    /// Column names.
    pub header: Vec<String>,
    /// Rows; empty when order is 0.
    pub rows: Vec<Table1Row>,
}

const PUBLISHED: [(f64, [f64; 2]); 2] = [(-1.0, [1.63, 2.0]), (-2.0, [2.261, 3.739])];

/// Table with partial sums up to order 2.
pub fn table1_report() -> Table1 {
    table1_report_orders(2)
}

/// Table with partial sums up to `order`.
pub fn table1_report_orders(order: usize) -> Table1 {
    let mut header = alloc::vec!["D".to_string()];
    for k in 1..=order {
        header.push(format!("A1_{k}"));
        if k <= 2 {
            header.push(format!("A1_{k}_published"));
            header.push(format!("A1_{k}_deviates"));
        }
    }
    header.push("exact".to_string());
    if order == 0 {
        return Table1 { header, rows: Vec::new() };
    }
    let series = a1_series(order);
    let rows = PUBLISHED
        .iter()
        .map(|&(d, pubs)| {
            let partial: Vec<f64> = (1..=order).map(|k| series.partial_sum_at(k, d)).collect();
            let published: Vec<f64> = pubs.iter().take(order).copied().collect();
            let deviates = published.iter().zip(&partial).map(|(p, c)| (p - c).abs() > 0.005).collect();
            let exact = a1_exact(Dimension::real(d)).unwrap_or(f64::NAN);
            Table1Row { d, partial, published, deviates, exact }
        })
        .collect();
    Table1 { header, rows }
}
