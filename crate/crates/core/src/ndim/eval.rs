use super::{descriptors, oracle, HyperSeriesDescriptor, LoopIntegralSpec, MAX_FREE};
use crate::error::{Error, Result};
use crate::specfun::{gamma_unchecked, near_pole, rgamma, Dimension};
use crate::tol::{EvalResult, PhaseTag, Status, ToleranceConfig};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_traits::Float;

const BALANCE_EPS: f64 = 1e-12;
const DIRECTIONS: usize = 2000;

fn xlogx(l: f64) -> f64 {
    if l == 0.0 { 0.0 } else { l * l.abs().ln() }
}

/// Largest factorial balance and largest Horn exponent over summation directions.
///
/// Along direction (s, t) the summand behaves as exp(λ[B ln λ + φ]) with
/// B = Σ_num L − Σ_den L and φ = Σ_num L ln|L| − Σ_den L ln|L| + s ln|x| + t ln|y|.
pub fn horn_exponent(desc: &HyperSeriesDescriptor, spec: &LoopIntegralSpec) -> (f64, f64) {
    let nf = desc.free.len();
    if nf == 0 {
        return (f64::NEG_INFINITY, f64::NEG_INFINITY);
    }
    let lnx: Vec<f64> = desc.arguments.iter().map(|a| a.value(spec).abs().ln()).collect();
    let dirs = if nf == 1 { 1 } else { DIRECTIONS + 1 };
    let mut bmax = f64::NEG_INFINITY;
    let mut pmax = f64::NEG_INFINITY;
    for k in 0..dirs {
        let s = if nf == 1 { 1.0 } else { k as f64 / DIRECTIONS as f64 };
        let dir = [s, 1.0 - s];
        let mut b = 0.0;
        let mut phi = 0.0;
        for r in &desc.sum {
            let l: f64 = (0..nf).map(|f| r.coef[f] as f64 * dir[f]).sum();
            let sg = if r.numerator { 1.0 } else { -1.0 };
            b += sg * l;
            phi += sg * xlogx(l);
        }
        for f in 0..nf {
            if dir[f] > 0.0 {
                phi += dir[f] * lnx[f];
            }
        }
        bmax = bmax.max(b);
        if b.abs() <= BALANCE_EPS {
            pmax = pmax.max(phi);
        }
    }
    (bmax, pmax)
}

/// True when the summand decays along every direction.
pub fn converges(desc: &HyperSeriesDescriptor, spec: &LoopIntegralSpec) -> bool {
    if desc.free.is_empty() || desc.symbolic_zero {
        return true;
    }
    let (b, phi) = horn_exponent(desc, spec);
    b <= BALANCE_EPS && phi < 0.0
}

struct Summand {
    roles: Vec<(f64, [i64; MAX_FREE], bool)>,
    x: [f64; MAX_FREE],
}

impl Summand {
    fn ratio(&self, f: usize, idx: [i64; MAX_FREE]) -> Result<f64> {
        let mut r = self.x[f];
        for (b, coef, num) in &self.roles {
            let c = coef[f];
            if c == 0 {
                continue;
            }
            let l = (coef[0] * idx[0] + coef[1] * idx[1]) as f64;
            let (top, bot) = if c > 0 { (b + l, 1.0) } else { (1.0, b + l - 1.0) };
            let (top, bot) = if *num { (top, bot) } else { (bot, top) };
            if bot == 0.0 {
                return Err(Error::PoleAtArgument { what: format!("summand Pochhammer base {b}"), at: b + l });
            }
            r *= top / bot;
        }
        Ok(r)
    }
}

fn sum_series(s: &Summand, nf: usize, tol: &ToleranceConfig) -> Result<(f64, f64, usize)> {
    let rel = tol.rel_tol;
    if nf == 0 {
        return Ok((1.0, 0.0, 1));
    }
    if nf == 1 {
        let (mut t, mut sum, mut quiet) = (1.0, 1.0, 0);
        for k in 0..tol.max_terms {
            t *= s.ratio(0, [k as i64, 0])?;
            sum += t;
            if t == 0.0 {
                return Ok((sum, 0.0, k + 2));
            }
            quiet = if t.abs() <= rel * sum.abs() { quiet + 1 } else { 0 };
            if quiet >= 3 {
                return Ok((sum, t.abs(), k + 2));
            }
        }
        return Err(Error::NotConverged(format!("single sum after {} terms", tol.max_terms)));
    }
    let mut diag: Vec<f64> = alloc::vec![1.0];
    let (mut sum, mut quiet, mut work) = (1.0, 0, 1);
    let max_diag = ((2 * tol.max_terms.max(1)) as f64).sqrt() as usize * 16;
    for k in 0..max_diag {
        let mut next = Vec::with_capacity(k + 2);
        for (i, t) in diag.iter().enumerate() {
            let j = (k - i) as i64;
            next.push(if *t == 0.0 { 0.0 } else { t * s.ratio(1, [i as i64, j])? });
        }
        let last = diag[k];
        next.push(if last == 0.0 { 0.0 } else { last * s.ratio(0, [k as i64, 0])? });
        work += next.len();
        let mag: f64 = next.iter().map(|t| t.abs()).sum();
        sum += next.iter().sum::<f64>();
        if mag == 0.0 {
            return Ok((sum, 0.0, work));
        }
        quiet = if mag <= rel * sum.abs() { quiet + 1 } else { 0 };
        if quiet >= 3 {
            return Ok((sum, mag, work));
        }
        diag = next;
    }
    Err(Error::NotConverged(format!("double sum after {max_diag} diagonals")))
}

/// PRE × SUM of one descriptor at the spec's kinematics, Euclidean magnitude.
pub fn evaluate_descriptor(
    desc: &HyperSeriesDescriptor,
    spec: &LoopIntegralSpec,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    let phase = desc.phase;
    if desc.symbolic_zero {
        return Ok(EvalResult::exact(0.0).with_phase(phase));
    }
    let d = spec.dimension.re();
    if desc.symbolic_pole {
        return Err(Error::PoleAtDimension { what: format!("solution {}", desc.label), dim: d });
    }
    let v = &spec.powers;
    let mut pre = desc.pole_ratio;
    for g in &desc.gamma_num {
        let x = g.eval(d, v);
        if near_pole(x, spec.dimension.pole_tolerance) {
            return Err(Error::PoleAtDimension { what: format!("Gamma({g}) in {}", desc.label), dim: d });
        }
        pre *= gamma_unchecked(x);
    }
    for g in &desc.gamma_den {
        pre *= rgamma(g.eval(d, v));
    }
    for sp in &desc.scale_powers {
        pre *= spec.scale_value(sp.scale).powf(sp.exponent.eval(d, v));
    }
    if pre == 0.0 {
        return Ok(EvalResult::exact(0.0).with_phase(phase));
    }
    let nf = desc.free.len();
    let mut x = [0.0; MAX_FREE];
    for (f, a) in desc.arguments.iter().enumerate() {
        x[f] = a.value(spec);
    }
    let summand = Summand { roles: desc.sum.iter().map(|r| (r.base.eval(d, v), r.coef, r.numerator)).collect(), x };
    let (s, err, work) = sum_series(&summand, nf, tol)?;
    let value = pre * s;
    let status = if nf == 0 { Status::Exact } else { Status::Converged };
    Ok(EvalResult::converged(value, (pre * err).abs() + 1e-15 * value.abs(), work)
        .with_status(status)
        .with_phase(phase))
}

/// Sum of every solution whose series converges at the spec's kinematics.
pub fn eval_spec(spec: &LoopIntegralSpec, tol: &ToleranceConfig) -> Result<EvalResult> {
    spec.validate()?;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut work = 0;
    let mut used = 0;
    for desc in descriptors(spec)? {
        if desc.symbolic_zero || !converges(&desc, spec) {
            continue;
        }
        let r = evaluate_descriptor(&desc, spec, tol)?;
        total += r.value;
        err += r.abs_err;
        work += r.work;
        used += 1;
    }
    if used == 0 {
        return Err(Error::NoConvergentRegion);
    }
    Ok(EvalResult::converged(total, err, work).with_phase(PhaseTag::half_dim()))
}

/// Closed-form massless bubble Γ(h−v₁)Γ(h−v₂)Γ(v₁+v₂−h)/(Γ(v₁)Γ(v₂)Γ(D−v₁−v₂))·(Q²)^{h−v₁−v₂}, h = D/2.
pub fn eval_massless_bubble(dim: Dimension, v1: f64, v2: f64, q2: f64) -> Result<EvalResult> {
    if !(q2 > 0.0) {
        return Err(Error::Domain(format!("Q^2 must be positive, got {q2}")));
    }
    let d = dim.re();
    let h = 0.5 * d;
    let nu = v1 + v2;
    let mut value = q2.powf(h - nu);
    for (x, what) in [(h - v1, "D/2 - v1"), (h - v2, "D/2 - v2"), (nu - h, "v1 + v2 - D/2")] {
        if near_pole(x, dim.pole_tolerance) {
            return Err(Error::PoleAtDimension { what: format!("Gamma({what})"), dim: d });
        }
        value *= gamma_unchecked(x);
    }
    value *= rgamma(v1) * rgamma(v2) * rgamma(d - nu);
    Ok(EvalResult::converged(value, 1e-15 * value.abs(), 6).with_status(Status::Exact).with_phase(PhaseTag::half_dim()))
}

/// Two-mass bubble as the sum of its convergent solutions.
pub fn eval_massive_bubble(
    dim: Dimension,
    v1: f64,
    v2: f64,
    q2: f64,
    m1_2: f64,
    m2_2: f64,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    if m1_2 == 0.0 && m2_2 == 0.0 {
        return eval_massless_bubble(dim, v1, v2, q2);
    }
    let mut spec = LoopIntegralSpec::bubble(dim.re(), v1, v2, q2, m1_2, m2_2)?;
    spec.dimension = dim;
    eval_spec(&spec, tol)
}

/// [`eval_massive_bubble`] checked against the Feynman-parameter oracle at 10 × `tol.rel_tol`.
pub fn validate_massive_bubble(
    dim: Dimension,
    v1: f64,
    v2: f64,
    q2: f64,
    m1_2: f64,
    m2_2: f64,
    tol: &ToleranceConfig,
) -> Result<EvalResult> {
    let r = eval_massive_bubble(dim, v1, v2, q2, m1_2, m2_2, tol)?;
    let o = oracle::bubble_feynman(dim.re(), v1, v2, q2, m1_2, m2_2, tol)?;
    if (r.value - o).abs() > 10.0 * tol.rel_tol * o.abs() + tol.abs_tol {
        return Err(Error::OracleMismatch { value: r.value, oracle: o });
    }
    Ok(r)
}
