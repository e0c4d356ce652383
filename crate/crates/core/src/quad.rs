//! Quadrature kernels: Gauss–Legendre panels, adaptive Gauss–Kronrod (7/15),
//! tanh-sinh for endpoint singularities, geometric panel ladders for radial
//! integrals over (0, ∞), and Wynn's epsilon for oscillatory tails.

use crate::error::{Error, Result};
use crate::tol::{EvalResult, Status};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;
use num_traits::Float;

const GL20_X: [f64; 10] = [
    0.993_128_599_185_094_9,
    0.963_971_927_277_913_8,
    0.912_234_428_251_325_9,
    0.839_116_971_822_218_8,
    0.746_331_906_460_150_8,
    0.636_053_680_726_515,
    0.510_867_001_950_827_1,
    0.373_706_088_715_419_56,
    0.227_785_851_141_645_08,
    0.076_526_521_133_497_33,
];
const GL20_W: [f64; 10] = [
    0.017_614_007_139_152_118,
    0.040_601_429_800_386_94,
    0.062_672_048_334_109_06,
    0.083_276_741_576_704_75,
    0.101_930_119_817_240_44,
    0.118_194_531_961_518_42,
    0.131_688_638_449_176_63,
    0.142_096_109_318_382_05,
    0.149_172_986_472_603_75,
    0.152_753_387_130_725_85,
];

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 20-point Gauss–Legendre panel on [a, b].
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..10 {
        let dx = h * GL20_X[i];
        s += GL20_W[i] * (f(c - dx) + f(c + dx));
    }
    s * h
}

/// Composite 20-point Gauss–Legendre with `panels` equal panels.
pub fn gauss_legendre_composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(1);
    let w = (b - a) / n as f64;
    (0..n).map(|k| gauss_legendre(f, a + k as f64 * w, a + (k + 1) as f64 * w)).sum()
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        rk += WGK[j] * s;
        if j % 2 == 1 {
            rg += WG[j / 2] * s;
        }
    }
    let err = ((rk - rg) * h).abs();
    (rk * h, err)
}

/// Adaptive Gauss–Kronrod (7/15) with global bisection of the worst interval.
///
/// Exhausting `max_intervals` yields `Status::Truncated` with the current error estimate.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> EvalResult {
    let (v, e) = gk15(f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = alloc::vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    let mut evals = 15;
    loop {
        if !total.is_finite() {
            return EvalResult::converged(total, f64::INFINITY, evals).with_status(Status::Divergent);
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return EvalResult::converged(total, err, evals);
        }
        if parts.len() >= max_intervals {
            return EvalResult::converged(total, err, evals).with_status(Status::Truncated);
        }
        let (imax, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, pv, pe) = parts.swap_remove(imax);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            // cannot split further; freeze this interval's contribution
            parts.push((lo, hi, pv, 0.0));
            err -= pe;
            if parts.iter().all(|p| p.3 == 0.0) {
                return EvalResult::converged(total, err.max(0.0), evals).with_status(Status::Truncated);
            }
            continue;
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        evals += 30;
        total += v1 + v2 - pv;
        err += e1 + e2 - pe;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
        if evals % 3000 == 0 {
            // refresh accumulated sums against drift
            total = parts.iter().map(|p| p.2).sum();
            err = parts.iter().map(|p| p.3).sum();
        }
    }
}

/// Tanh-sinh quadrature on [a, b].
///
/// `f` receives `(x, x − a, b − x)` so integrands singular at an endpoint can use the
/// accurately computed distance.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<EvalResult> {
    let half = 0.5 * (b - a);
    let eval_pair = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cu * cu);
        // distance from the nearer endpoint: half * (1 - tanh u) = (b-a)/(1+e^{2u})
        let d = (b - a) / (1.0 + (2.0 * u).exp());
        if d <= 0.0 || w == 0.0 {
            return 0.0;
        }
        let right = f(b - d, b - a - d, d);
        let left = f(a + d, d, b - a - d);
        w * (right + left)
    };
    let mut h = 1.0;
    let mut sum = FRAC_PI_2 * f(a + half, half, half);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let v = eval_pair(t);
        sum += v;
        if (v == 0.0 && t > 3.0) || t > 6.5 {
            break;
        }
        k += 1;
    }
    let mut prev = sum * h * half;
    let mut evals = 2 * k + 1;
    for level in 1..=10 {
        h *= 0.5;
        let mut add = 0.0;
        let mut j = 1;
        loop {
            let t = j as f64 * h;
            if t > 6.5 {
                break;
            }
            let v = eval_pair(t);
            add += v;
            evals += 2;
            if v == 0.0 && t > 3.0 {
                break;
            }
            j += 2;
        }
        sum += add;
        let cur = sum * h * half;
        if !cur.is_finite() {
            return Err(Error::NotConverged(format!("tanh-sinh produced {cur}")));
        }
        let diff = (cur - prev).abs();
        if level >= 3 && diff <= abs_tol.max(rel_tol * cur.abs()) {
            return Ok(EvalResult::converged(cur, diff, evals));
        }
        prev = cur;
    }
    let est = prev;
    Ok(EvalResult::converged(est, f64::NAN, evals).with_status(Status::Truncated))
}

/// Settings for geometric panel ladders.
#[derive(Debug, Clone, Copy)]
pub struct LadderOpts {
    /// Relative tolerance on the full integral.
    pub rel_tol: f64,
    /// Absolute tolerance on the full integral.
    pub abs_tol: f64,
    /// Maximum number of panels per direction.
    pub max_panels: usize,
}

impl Default for LadderOpts {
    fn default() -> Self {
        LadderOpts { rel_tol: 1e-13, abs_tol: 1e-300, max_panels: 3000 }
    }
}

fn ladder<F: Fn(f64) -> f64>(f: &F, start: f64, factor: f64, opts: LadderOpts) -> Result<EvalResult> {
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    let mut lo = start;
    let mut contributions: Vec<f64> = Vec::new();
    for k in 0..opts.max_panels {
        let hi = lo * factor;
        let (x0, x1) = if factor > 1.0 { (lo, hi) } else { (hi, lo) };
        let r = adaptive(f, x0, x1, opts.abs_tol * 1e-3, opts.rel_tol * 1e-2, 400);
        evals += r.work;
        err += r.abs_err;
        let c = r.value;
        if !c.is_finite() {
            return Err(Error::NotConverged(format!("non-finite panel on [{x0}, {x1}]")));
        }
        total += c;
        contributions.push(c);
        lo = hi;
        if !lo.is_finite() || lo == 0.0 {
            break;
        }
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        let n = contributions.len();
        if k >= 4 && contributions[n - 3..].iter().all(|c| c.abs() <= 1e-3 * target) {
            return Ok(EvalResult::converged(total, err + target * 1e-3, evals));
        }
        if k >= 6 {
            let (c2, c1, c0) = (contributions[n - 3], contributions[n - 2], contributions[n - 1]);
            if c1 != 0.0 && c2 != 0.0 {
                let rho = c0 / c1;
                let rho_prev = c1 / c2;
                if rho.abs() < 0.995 && rho * rho_prev > 0.0 {
                    let tail = c0 * rho / (1.0 - rho);
                    let tail_err = tail.abs() * (rho - rho_prev).abs() / (1.0 - rho).abs() + c0.abs() * 1e-15;
                    if tail_err <= target {
                        return Ok(EvalResult::converged(total + tail, err + tail_err, evals));
                    }
                }
            }
        }
    }
    Err(Error::NotConverged(format!("panel ladder from {start} did not settle")))
}

/// ∫_0^a f by panels [a/2, a], [a/4, a/2], … with a geometric tail.
pub fn inward<F: Fn(f64) -> f64>(f: &F, a: f64, opts: LadderOpts) -> Result<EvalResult> {
    ladder(f, a, 0.5, opts)
}

/// ∫_a^∞ f by panels [a, 2a], [2a, 4a], … with a geometric tail.
pub fn outward<F: Fn(f64) -> f64>(f: &F, a: f64, opts: LadderOpts) -> Result<EvalResult> {
    ladder(f, a, 2.0, opts)
}

/// ∫_0^∞ f split at `pivot`.
pub fn half_line<F: Fn(f64) -> f64>(f: &F, pivot: f64, opts: LadderOpts) -> Result<EvalResult> {
    let i = inward(f, pivot, opts)?;
    let o = outward(f, pivot, opts)?;
    Ok(EvalResult::converged(i.value + o.value, i.abs_err + o.abs_err, i.work + o.work))
}

/// Wynn's epsilon algorithm on a sequence of partial sums; returns (limit, error estimate).
pub fn wynn_epsilon(partial: &[f64]) -> (f64, f64) {
    let n = partial.len();
    if n < 3 {
        let last = partial.last().copied().unwrap_or(0.0);
        return (last, f64::INFINITY);
    }
    let mut prev: Vec<f64> = alloc::vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut best = partial[n - 1];
    let mut best_err = (partial[n - 1] - partial[n - 2]).abs();
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            let v = if d == 0.0 { f64::INFINITY } else { prev[i + 1] + 1.0 / d };
            next.push(v);
        }
        col += 1;
        if col % 2 == 0 && next.len() >= 2 {
            let m = next.len();
            let e = (next[m - 1] - next[m - 2]).abs();
            if next[m - 1].is_finite() && e < best_err {
                best = next[m - 1];
                best_err = e;
            }
        }
        prev = cur;
        cur = next;
        if cur.iter().any(|v| !v.is_finite()) {
            break;
        }
    }
    (best, best_err)
}

/// Integral of an oscillatory integrand over [a, ∞) summed between consecutive
/// `breaks` and accelerated with Wynn's epsilon on the partial sums.
pub fn oscillatory<F: Fn(f64) -> f64>(f: &F, a: f64, breaks: &[f64], rel_tol: f64) -> Result<EvalResult> {
    let mut partial = Vec::with_capacity(breaks.len());
    let mut lo = a;
    let mut s = 0.0;
    let mut evals = 0;
    for &b in breaks {
        if b <= lo {
            continue;
        }
        let r = adaptive(f, lo, b, 1e-300, rel_tol * 1e-3, 200);
        evals += r.work;
        s += r.value;
        partial.push(s);
        lo = b;
    }
    let (v, e) = wynn_epsilon(&partial);
    if !v.is_finite() {
        return Err(Error::NotConverged(format!("oscillatory tail: {v}")));
    }
    Ok(EvalResult::converged(v, e, evals))
}
