//! Diffusion with a minimal length and the negative box dimension.
//!
//! With signed D_f both branches share `K = [4π(s+l²)]^{−D_f/2} e^{−|x−y|²/(4(s+l²))}`;
//! for D_f < 0 the prefactor grows with s.

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Diffusion parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionConfig {
    /// Signed D_f.
    pub topological_df: f64,
    /// l > 0.
    pub minimal_length: f64,
    /// s ≥ 0.
    pub diffusion_time: f64,
}

impl DiffusionConfig {
    /// Checked constructor.
    pub fn new(df: f64, l: f64, s: f64) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::Domain(format!("minimal length must be positive, got {l}")));
        }
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Domain(format!("diffusion time must be non-negative, got {s}")));
        }
        if !df.is_finite() {
            return Err(Error::Domain(format!("D_f must be finite, got {df}")));
        }
        Ok(DiffusionConfig { topological_df: df, minimal_length: l, diffusion_time: s })
    }

    fn width(&self) -> f64 {
        self.diffusion_time + self.minimal_length * self.minimal_length
    }
}

fn dist2(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Heat kernel between x and y.
pub fn heat_kernel(x: &[f64], y: &[f64], cfg: &DiffusionConfig) -> f64 {
    let w = cfg.width();
    (4.0 * PI * w).powf(-0.5 * cfg.topological_df) * (-dist2(x, y) / (4.0 * w)).exp()
}

/// Kernel diagonal P(s).
pub fn return_probability(cfg: &DiffusionConfig) -> f64 {
    (4.0 * PI * cfg.width()).powf(-0.5 * cfg.topological_df)
}

/// D(s) = s·D_f/(s + l²).
pub fn spectral_dimension(cfg: &DiffusionConfig) -> Result<f64> {
    let s = cfg.diffusion_time;
    if !(s > 0.0) {
        return Err(Error::Domain(format!("spectral dimension needs s > 0, got {s}")));
    }
    Ok(s * cfg.topological_df / cfg.width())
}

/// −2 d ln P/d ln s by a central difference in ln s (step 1e−4).
pub fn spectral_dimension_numeric(cfg: &DiffusionConfig) -> Result<f64> {
    let s = cfg.diffusion_time;
    if !(s > 0.0) {
        return Err(Error::Domain(format!("spectral dimension needs s > 0, got {s}")));
    }
    let h = 1e-4;
    let at = |u: f64| return_probability(&DiffusionConfig { diffusion_time: s * u.exp(), ..*cfg }).ln();
    Ok(-2.0 * (at(h) - at(-h)) / (2.0 * h))
}

/// The ratio −2 ln P(s)/ln s.
pub fn spectral_dimension_log_ratio(cfg: &DiffusionConfig) -> Result<f64> {
    let s = cfg.diffusion_time;
    if !(s > 0.0) || s == 1.0 {
        return Err(Error::Domain(format!("log ratio needs s > 0, s != 1, got {s}")));
    }
    Ok(-2.0 * return_probability(cfg).ln() / s.ln())
}

fn check_clock(spec_dim: f64, df: f64, l: f64) -> Result<()> {
    if !(l > 0.0) {
        return Err(Error::Domain(format!("minimal length must be positive, got {l}")));
    }
    if spec_dim == df {
        return Err(Error::SaturatedClock);
    }
    let inside = if df > 0.0 { (0.0..df).contains(&spec_dim) } else { spec_dim <= 0.0 && spec_dim > df };
    if !inside {
        return Err(Error::Domain(format!("spectral dimension {spec_dim} outside [0, {df})")));
    }
    Ok(())
}

/// s = 𝔇 l²/(D_f − 𝔇).
pub fn diffusion_clock(spec_dim: f64, df: f64, l: f64) -> Result<f64> {
    check_clock(spec_dim, df, l)?;
    Ok(spec_dim * l * l / (df - spec_dim))
}

/// ((D_f−𝔇)/(4πD_f l²))^{D_f/2} exp(−|x−y|²(D_f−𝔇)/(4D_f l²)).
pub fn kernel_by_dimension(x: &[f64], y: &[f64], spec_dim: f64, df: f64, l: f64) -> Result<f64> {
    check_clock(spec_dim, df, l)?;
    let q = (df - spec_dim) / (df * l * l);
    Ok((q / (4.0 * PI)).powf(0.5 * df) * (-dist2(x, y) * q / 4.0).exp())
}

/// Point–strip intersection experiment in a square window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxExperiment {
    /// Window side L.
    pub window: f64,
    /// Scale b > 1; blob diameter and strip width are 1/b.
    pub scale: f64,
    /// Trials per rung.
    pub trials: u64,
    /// Seed of the ChaCha8 stream.
    pub seed: u64,
}

/// One rung of the ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxRung {
    /// b.
    pub scale: f64,
    /// Monte Carlo EN.
    pub en: f64,
    /// Binomial standard error of EN.
    pub stderr: f64,
    /// Exact intersection probability.
    pub exact: f64,
}

/// Ladder estimate of the box dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxEstimate {
    /// EN at the experiment's own scale.
    pub en: f64,
    /// Least-squares slope of ln EN against ln b.
    pub dimension: f64,
    /// Standard error of the slope.
    pub stderr: f64,
    /// Rungs used for the fit.
    pub rungs: Vec<BoxRung>,
}

/// Minimum trials for the dimension path.
pub const MIN_TRIALS: u64 = 1000;
/// Rungs b·2^k, k = 0..RUNGS.
pub const RUNGS: usize = 9;

/// Exact P(|u − v| < δ) for u, v uniform on [0, W], W = L − δ: 2δ/W − (δ/W)².
pub fn intersection_probability(window: f64, scale: f64) -> f64 {
    let delta = 1.0 / scale;
    let w = window - delta;
    if w <= delta {
        return 1.0;
    }
    let t = delta / w;
    2.0 * t - t * t
}

fn validate(e: &BoxExperiment) -> Result<()> {
    if !(e.scale > 1.0) {
        return Err(Error::Domain(format!("scale must exceed 1, got {}", e.scale)));
    }
    if !(e.window > 1.0 / e.scale) {
        return Err(Error::Domain(format!("window {} smaller than 1/b", e.window)));
    }
    if e.trials == 0 {
        return Err(Error::InsufficientTrials(0));
    }
    Ok(())
}

/// EN at one scale on stream `stream` of the seeded generator.
///
/// The blob centre and the strip's centre line are uniform over the positions
/// that keep them inside the window; they meet when the centre distance is below 1/b.
pub fn box_rung(e: &BoxExperiment, scale: f64, stream: u64) -> Result<BoxRung> {
    validate(&BoxExperiment { scale, ..*e })?;
    let mut rng = ChaCha8Rng::seed_from_u64(e.seed);
    rng.set_stream(stream);
    let delta = 1.0 / scale;
    let w = e.window - delta;
    let mut hits = 0u64;
    for _ in 0..e.trials {
        let u: f64 = rng.random::<f64>() * w;
        let _y: f64 = rng.random::<f64>();
        let v: f64 = rng.random::<f64>() * w;
        if (u - v).abs() < delta {
            hits += 1;
        }
    }
    let n = e.trials as f64;
    let p = hits as f64 / n;
    Ok(BoxRung { scale, en: p, stderr: (p * (1.0 - p) / n).sqrt(), exact: intersection_probability(e.window, scale) })
}

/// EN at `e.scale` and the slope over the ladder b·2^k, k = 0..9; rung k uses stream k.
pub fn box_dimension_mc(e: &BoxExperiment) -> Result<BoxEstimate> {
    validate(e)?;
    if e.trials < MIN_TRIALS {
        return Err(Error::InsufficientTrials(e.trials));
    }
    let rungs: Vec<BoxRung> =
        (0..RUNGS).map(|k| box_rung(e, e.scale * 2f64.powi(k as i32), k as u64)).collect::<Result<_>>()?;
    if let Some(r) = rungs.iter().find(|r| r.en <= 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "no hits at b = {} in {} trials; ln EN undefined",
            r.scale, e.trials
        )));
    }
    let (slope, se) = weighted_slope(&rungs)?;
    Ok(BoxEstimate { en: rungs[0].en, dimension: slope, stderr: se, rungs })
}

fn weighted_slope(rungs: &[BoxRung]) -> Result<(f64, f64)> {
    let mut pts = Vec::new();
    for r in rungs {
        // var(ln EN) ≈ (σ/EN)²
        let s = (r.stderr / r.en).max(1e-12);
        pts.push((r.scale.ln(), r.en.ln(), 1.0 / (s * s)));
    }
    let sw: f64 = pts.iter().map(|p| p.2).sum();
    let sx: f64 = pts.iter().map(|p| p.2 * p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.2 * p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.2 * p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.2 * p.0 * p.1).sum();
    let det = sw * sxx - sx * sx;
    Ok(((sw * sxy - sx * sy) / det, (sw / det).sqrt()))
}
