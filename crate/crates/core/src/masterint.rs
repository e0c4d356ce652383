//! One-loop master integrals continued in D.
//!
//! All values are Euclidean magnitudes normalized as (2π)^{−D}∫d^Dp, which equals the
//! radial form (4π)^{−D/2}·(Gamma ratio). Minkowski phases ride in [`PhaseTag`].

use crate::error::{Error, Result};
use crate::quad::{outward, tanh_sinh, LadderOpts};
use crate::specfun::gamma::{gamma, near_pole, pochhammer, rgamma, POLE_TOL};
use crate::specfun::Dimension;
use crate::tol::{EvalResult, PhaseTag, ToleranceConfig};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

/// Euclidean magnitude with phase tag and pole proximity flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterResult {
    /// Euclidean magnitude.
    pub value: Complex64,
    /// Minkowski phase.
    pub phase: PhaseTag,
    /// Some Gamma argument sat within the dimension's pole tolerance.
    pub pole_flag: bool,
}

impl MasterResult {
    fn real(v: f64, phase: PhaseTag, pole_flag: bool) -> Self {
        MasterResult { value: Complex64::new(v, 0.0), phase, pole_flag }
    }
}

/// Gamma with the raising tolerance fixed at [`POLE_TOL`] and proximity reported against `dim`.
struct Gam<'a> {
    dim: &'a Dimension,
    flag: bool,
}

impl<'a> Gam<'a> {
    fn new(dim: &'a Dimension) -> Self {
        Gam { dim, flag: false }
    }

    fn g(&mut self, x: f64, what: &str) -> Result<f64> {
        if near_pole(x, POLE_TOL) {
            return Err(Error::PoleAtDimension { what: format!("Gamma({what}) = Gamma({x})"), dim: self.dim.re() });
        }
        if near_pole(x, self.dim.pole_tolerance) {
            self.flag = true;
        }
        gamma(x)
    }
}

/// 2π^{D/2}/Γ(D/2).
pub fn sphere_area(dim: Dimension) -> Result<f64> {
    let d = dim.re();
    let mut g = Gam::new(&dim);
    Ok(2.0 * PI.powf(0.5 * d) / g.g(0.5 * d, "D/2")?)
}

/// (2π)^{−D}∫d^Dp e^{−p²} = (4π)^{−D/2}.
pub fn gaussian_integral(dim: Dimension) -> f64 {
    (4.0 * PI).powf(-0.5 * dim.re())
}

/// Tadpole (2π)^{−D}∫d^Dp (p² + 2p·q + m²)^{−n}: the scalar and the coefficient of q_μ
/// in the vector integral with p_μ in the numerator.
pub fn tadpole(dim: Dimension, n: f64, m2: f64, q2: f64) -> Result<(MasterResult, MasterResult)> {
    let d = dim.re();
    let delta = m2 - q2;
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("tadpole needs m^2 - q^2 > 0, got {delta}")));
    }
    if !(n > 0.0) {
        return Err(Error::Domain(format!("tadpole needs n > 0, got {n}")));
    }
    let mut g = Gam::new(&dim);
    let v = gaussian_integral(dim) * g.g(n - 0.5 * d, "n - D/2")? * rgamma(n) * delta.powf(0.5 * d - n);
    let s = MasterResult::real(v, PhaseTag::ONE, g.flag);
    // shifting p → p − q leaves −q_μ times the scalar
    let vec = MasterResult::real(-v, PhaseTag::ONE, g.flag);
    Ok((s, vec))
}

/// (2π)^{−D}∫d^Dp (p²)^m/(p² + Δ)^n; the Minkowski version carries i(−1)^{m−n}.
pub fn moment_integral(dim: Dimension, n: f64, m: u32, delta: f64) -> Result<MasterResult> {
    let d = dim.re();
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("moment integral needs Delta > 0, got {delta}")));
    }
    let mut g = Gam::new(&dim);
    // Γ(m + D/2)/Γ(D/2) = (D/2)_m stays finite where Γ(D/2) has poles
    let ratio = pochhammer(0.5 * d, m as i64)?;
    let v = gaussian_integral(dim) * ratio * g.g(n - m as f64 - 0.5 * d, "n - m - D/2")? * rgamma(n)
        * delta.powf(0.5 * d + m as f64 - n);
    let phase = if n == n.round() { PhaseTag::minkowski(m as i64 - n as i64) } else { PhaseTag::ONE };
    Ok(MasterResult::real(v, phase, g.flag))
}

/// Constant symmetric metric, optionally of the Lorentz-violating form δ + a·e₀e₀.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    /// Number of index values.
    pub dimension_count: usize,
    /// Row-major entries.
    pub entries: Vec<f64>,
    /// Lorentz-violating parameter a (0 for a generic metric).
    pub liv_parameter: f64,
}

impl MetricSpec {
    /// Identity metric.
    pub fn identity(n: usize) -> Self {
        Self::liv(n, 0.0)
    }

    /// g_{μν} = δ_{μν} + a δ_{μ0}δ_{ν0}.
    pub fn liv(n: usize, a: f64) -> Self {
        let mut entries = alloc::vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        if n > 0 {
            entries[0] += a;
        }
        MetricSpec { dimension_count: n, entries, liv_parameter: a }
    }

    /// Generic metric from row-major entries; rejects asymmetric input.
    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::PreconditionViolated(format!("metric needs {} entries", n * n)));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::PreconditionViolated("metric must be symmetric".into()));
                }
            }
        }
        Ok(MetricSpec { dimension_count: n, entries, liv_parameter: 0.0 })
    }

    /// g_{μν}.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dimension_count + j]
    }

    /// Inverse metric by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Vec<f64>> {
        let n = self.dimension_count;
        let mut a = self.entries.clone();
        let mut inv = MetricSpec::identity(n).entries;
        for c in 0..n {
            let p = (c..n)
                .max_by(|&x, &y| a[x * n + c].abs().partial_cmp(&a[y * n + c].abs()).unwrap_or(core::cmp::Ordering::Equal))
                .unwrap_or(c);
            if a[p * n + c] == 0.0 {
                return Err(Error::PreconditionViolated("singular metric".into()));
            }
            for k in 0..n {
                a.swap(c * n + k, p * n + k);
                inv.swap(c * n + k, p * n + k);
            }
            let piv = a[c * n + c];
            for k in 0..n {
                a[c * n + k] /= piv;
                inv[c * n + k] /= piv;
            }
            for r in 0..n {
                if r != c {
                    let f = a[r * n + c];
                    for k in 0..n {
                        a[r * n + k] -= f * a[c * n + k];
                        inv[r * n + k] -= f * inv[c * n + k];
                    }
                }
            }
        }
        Ok(inv)
    }
}

/// Dense tensor of Euclidean magnitudes sharing one phase.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    /// Index range.
    pub dimension_count: usize,
    /// 2 or 4.
    pub rank: usize,
    /// Row-major values.
    pub values: Vec<f64>,
    /// Minkowski phase.
    pub phase: PhaseTag,
    /// Pole proximity flag.
    pub pole_flag: bool,
}

impl Tensor {
    /// Entry at a multi-index.
    pub fn get(&self, idx: &[usize]) -> f64 {
        let mut k = 0;
        for &i in idx {
            k = k * self.dimension_count + i;
        }
        self.values[k]
    }
}

/// (2π)^{−D}∫d^Dk k_μ k_ν [k_ρ k_σ]/(k² + Δ)^n for a constant metric.
pub fn tensor_integral(dim: Dimension, n: f64, delta: f64, rank: usize, metric: &MetricSpec) -> Result<Tensor> {
    let d = dim.re();
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("tensor integral needs Delta > 0, got {delta}")));
    }
    let mut g = Gam::new(&dim);
    let nd = metric.dimension_count;
    let (values, phase) = match rank {
        2 => {
            let c = 0.5 * gaussian_integral(dim) * g.g(n - 1.0 - 0.5 * d, "n - 1 - D/2")? * rgamma(n) * delta.powf(0.5 * d + 1.0 - n);
            (metric.entries.iter().map(|x| c * x).collect::<Vec<_>>(), PhaseTag::ONE)
        }
        4 => {
            let c = 0.25 * gaussian_integral(dim) * g.g(n - 2.0 - 0.5 * d, "n - 2 - D/2")? * rgamma(n) * delta.powf(0.5 * d + 2.0 - n);
            let mut v = Vec::with_capacity(nd.pow(4));
            for a in 0..nd {
                for b in 0..nd {
                    for r in 0..nd {
                        for s in 0..nd {
                            let m = metric;
                            v.push(c * (m.at(a, b) * m.at(r, s) + m.at(a, r) * m.at(b, s) + m.at(a, s) * m.at(b, r)));
                        }
                    }
                }
            }
            let phase = if n == n.round() { PhaseTag::minkowski(n as i64) } else { PhaseTag::ONE };
            (v, phase)
        }
        _ => return Err(Error::Unsupported(format!("tensor rank {rank}"))),
    };
    Ok(Tensor { dimension_count: nd, rank, values, phase, pole_flag: g.flag })
}

/// Two-propagator integral (2π)^{−D}∫d^Dp (p²+m²)^{−n}((p−k)²+m²)^{−k} through its Feynman parameter:
/// (4π)^{−D/2} Γ(n+k−D/2)/(Γ(n)Γ(k)) ∫₀¹ (1−x)^{n−1}x^{k−1}[m² + K²x(1−x)]^{D/2−n−k} dx.
pub fn feynman_param_bubble(dim: Dimension, n: f64, k: f64, m2: f64, k2: f64, tol: &ToleranceConfig) -> Result<EvalResult> {
    let d = dim.re();
    if !(n > 0.0 && k > 0.0) {
        return Err(Error::EndpointSingularity(format!("x-integrand needs n, k > 0, got ({n}, {k})")));
    }
    if m2 < 0.0 || k2 < 0.0 || (m2 == 0.0 && k2 == 0.0) {
        return Err(Error::Domain(format!("bubble needs m^2 >= 0, K^2 >= 0 not both zero, got ({m2}, {k2})")));
    }
    let e = 0.5 * d - n - k;
    if m2 == 0.0 && (e + n <= 0.0 || e + k <= 0.0) {
        return Err(Error::EndpointSingularity(format!("massless x-integrand not integrable at D = {d}")));
    }
    let mut g = Gam::new(&dim);
    let pre = gaussian_integral(dim) * g.g(n + k - 0.5 * d, "n + k - D/2")? * rgamma(n) * rgamma(k);
    let f = |_x: f64, xa: f64, xb: f64| xb.powf(n - 1.0) * xa.powf(k - 1.0) * (m2 + k2 * xa * xb).powf(e);
    let r = tanh_sinh(&f, 0.0, 1.0, tol.abs_tol, tol.rel_tol * 1e-2)?;
    Ok(EvalResult::converged(pre * r.value, pre.abs() * r.abs_err, r.work).with_status(r.status))
}

/// Taylor coefficients f^{(j)}(0)/j!, j = 0..=l, in u = p², by central differences (h = 1e−3)
/// with one Richardson step.
pub fn taylor_coefficients<F: Fn(f64) -> f64>(f: &F, l: u32) -> Vec<f64> {
    let h = 1e-3;
    let deriv = |j: u32, h: f64| -> f64 {
        // j-th central difference
        let mut s = 0.0;
        let mut binom = 1.0;
        for i in 0..=j {
            let x = (0.5 * j as f64 - i as f64) * h;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binom * f(x);
            binom *= (j - i) as f64 / (i + 1) as f64;
        }
        s / h.powi(j as i32)
    };
    let mut out = alloc::vec![f(0.0)];
    let mut fact = 1.0;
    for j in 1..=l {
        fact *= j as f64;
        let a = deriv(j, h);
        let b = deriv(j, 0.5 * h);
        out.push((4.0 * b - a) / 3.0 / fact);
    }
    out
}

/// ∫₀^a p^{D−1}[f(p²) − Σ_{j≤l} c_j p^{2j}] dp over an inward ladder whose contributions
/// scale as 4^{−k(l+1)}2^{−kD}; the tail is removed by Richardson on the known ratios.
fn subtracted_core<F: Fn(f64) -> f64>(f: &F, c: &[f64], d: f64, a: f64) -> Result<f64> {
    let l = c.len() as i32 - 1;
    let g = |p: f64| {
        let u = p * p;
        let mut t = 0.0;
        for cj in c.iter().rev() {
            t = t * u + cj;
        }
        p.powf(d - 1.0) * (f(u) - t)
    };
    let rho0 = 2f64.powf(-(d + 2.0 * (l as f64) + 2.0));
    let mut partial = 0.0;
    let mut hi = a;
    let mut estimates: Vec<f64> = Vec::new();
    let mut contributions: Vec<f64> = Vec::new();
    let levels = 4;
    let mut best = f64::NAN;
    let mut best_spread = f64::INFINITY;
    for _k in 0..60 {
        let lo = 0.5 * hi;
        let r = crate::quad::adaptive(&g, lo, hi, 1e-300, 1e-14, 400);
        partial += r.value;
        contributions.push(r.value);
        hi = lo;
        let last = *contributions.last().unwrap_or(&0.0);
        estimates.push(partial + last * rho0 / (1.0 - rho0));
        // Richardson columns remove ρ0·4^{−i} error components
        let mut col = estimates.clone();
        let mut ratio = rho0;
        for _ in 0..levels {
            ratio *= 0.25;
            if col.len() < 2 {
                break;
            }
            col = col.windows(2).map(|w| (w[1] - ratio * w[0]) / (1.0 - ratio)).collect();
        }
        if estimates.len() > levels + 1 && col.len() >= 2 {
            let spread = (col[col.len() - 1] - col[col.len() - 2]).abs();
            if spread < best_spread {
                best_spread = spread;
                best = col[col.len() - 1];
            }
            if spread <= 1e-15 * best.abs().max(1e-300) {
                break;
            }
            if estimates.len() > levels + 8 && spread > 1e3 * best_spread {
                break;
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::NotConverged("subtracted core integral".into()))
    }
}

/// Gelfand–Collins continuation of (2π)^{−D}∫d^Dp f(p²) with l Taylor subtractions and split a:
/// 2(4π)^{−D/2}/Γ(D/2)·[∫_a^∞ p^{D−1}f + ∫₀^a p^{D−1}(f − T_l) + Σ_j c_j a^{D+2j}/(D+2j)].
pub fn gelfand_collins<F: Fn(f64) -> f64>(f: &F, dim: Dimension, l: u32, a: f64, tol: &ToleranceConfig) -> Result<EvalResult> {
    let d = dim.re();
    let lf = l as f64;
    let in_window = if l == 0 { d > -2.0 } else { d > -2.0 * lf - 2.0 && d < -2.0 * lf };
    if !in_window {
        return Err(Error::WrongWindow { subtractions: l, dim: d });
    }
    if !(a > 0.0) {
        return Err(Error::PreconditionViolated(format!("split must be positive, got {a}")));
    }
    let c = taylor_coefficients(f, l);
    let outer_f = |p: f64| p.powf(d - 1.0) * f(p * p);
    let opts = LadderOpts { rel_tol: tol.rel_tol.min(1e-12), abs_tol: 1e-300, max_panels: 4000 };
    let outer = outward(&outer_f, a, opts)?;
    let core = subtracted_core(f, &c, d, a)?;
    // 2 rgamma(D/2)/(D+2j), with the j = 0 term written as 1/Γ(1+D/2) to stay finite at D = 0
    let mut boundary = c[0] * a.powf(d) * rgamma(1.0 + 0.5 * d);
    for (j, cj) in c.iter().enumerate().skip(1) {
        boundary += 2.0 * rgamma(0.5 * d) * cj * a.powf(d + 2.0 * j as f64) / (d + 2.0 * j as f64);
    }
    let pre = gaussian_integral(dim);
    let v = pre * (2.0 * rgamma(0.5 * d) * (outer.value + core) + boundary);
    let err = pre * 2.0 * rgamma(0.5 * d).abs() * outer.abs_err + 1e-12 * v.abs();
    Ok(EvalResult::converged(v, err, outer.work))
}

/// Weyl closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeylKind {
    /// (x² + l²)^{−n}.
    Power {
        /// n.
        n: f64,
        /// l.
        l: f64,
    },
    /// e^{−δx²}.
    Gauss {
        /// δ.
        delta: f64,
    },
    /// e^{−δx² + γ·x}.
    GaussDrift {
        /// δ.
        delta: f64,
        /// |γ|.
        gamma: f64,
    },
}

/// ∫d^Dx of the chosen profile.
pub fn weyl_closed(kind: WeylKind, dim: Dimension) -> Result<f64> {
    let d = dim.re();
    match kind {
        WeylKind::Power { n, l } => {
            let mut g = Gam::new(&dim);
            Ok(PI.powf(0.5 * d) * l.powf(d - 2.0 * n) * g.g(n - 0.5 * d, "n - D/2")? * rgamma(n))
        }
        WeylKind::Gauss { delta } => Ok(crate::measure::weyl_gauss(d, delta)),
        WeylKind::GaussDrift { delta, gamma } => Ok(crate::measure::weyl_shifted_gauss(d, delta, gamma)),
    }
}

/// One-loop (1/D)(m²/4π)^{D/2}Γ(1−D/2) and two-loop −(g/8)(m²)^{D−2}(4π)^{−D}Γ²(1−D/2) vacuum diagrams.
pub fn vacuum_diagrams(dim: Dimension, m2: f64, coupling: f64) -> Result<(MasterResult, MasterResult)> {
    let d = dim.re();
    if d.abs() <= dim.pole_tolerance.max(POLE_TOL) {
        return Err(Error::ZeroDimension);
    }
    let mut g = Gam::new(&dim);
    let g1 = g.g(1.0 - 0.5 * d, "1 - D/2")?;
    let one = (m2 / (4.0 * PI)).powf(0.5 * d) * g1 / d;
    let two = -coupling / 8.0 * m2.powf(d - 2.0) * (4.0 * PI).powf(-d) * g1 * g1;
    Ok((MasterResult::real(one, PhaseTag::ONE, g.flag), MasterResult::real(two, PhaseTag::ONE, g.flag)))
}
