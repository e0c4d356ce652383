use crate::error::{Error, Result};
use alloc::format;

/// Tolerance profile shared by every numerical routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute tolerance.
    pub abs_tol: f64,
    /// Relative tolerance.
    pub rel_tol: f64,
    /// Term budget for series.
    pub max_terms: usize,
    /// Subdivision budget for adaptive quadrature.
    pub quad_points: usize,
    /// Regulator for epsilon-families.
    pub eps_reg: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-11,
            max_terms: 20_000,
            quad_points: 2_000,
            eps_reg: 1e-2,
        }
    }
}

impl ToleranceConfig {
    /// Checks that every field is strictly positive and `eps_reg < 1`.
    pub fn validated(self) -> Result<Self> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.max_terms > 0
            && self.quad_points > 0
            && self.eps_reg > 0.0
            && self.eps_reg < 1.0;
        if ok {
            Ok(self)
        } else {
            Err(Error::PreconditionViolated(format!("invalid tolerance profile {self:?}")))
        }
    }
}

/// Convergence class of a Gauss series on the boundary |z| = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesClass {
    /// gamma >= 1.
    Diverges,
    /// gamma < 0.
    ConvergesAbsolutely,
    /// 0 <= gamma < 1.
    ConvergesExceptAtOne,
}

impl SeriesClass {
    /// Classifies from gamma = Re(a + b - c).
    pub fn from_gamma(gamma: f64) -> Self {
        if gamma >= 1.0 {
            SeriesClass::Diverges
        } else if gamma < 0.0 {
            SeriesClass::ConvergesAbsolutely
        } else {
            SeriesClass::ConvergesExceptAtOne
        }
    }

    /// Stable lowercase label.
    pub fn label(self) -> &'static str {
        match self {
            SeriesClass::Diverges => "diverges",
            SeriesClass::ConvergesAbsolutely => "converges-absolutely",
            SeriesClass::ConvergesExceptAtOne => "converges-except-z=1",
        }
    }
}

/// How an evaluation terminated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Status {
    /// Closed form; error is rounding only.
    Exact,
    /// Iteration met its tolerance.
    Converged,
    /// Truncated with an unresolved remainder of the stated size.
    Truncated,
    /// Gauss series result with its boundary class.
    Series(SeriesClass),
    /// Value is finite but an argument sits inside the pole tolerance.
    NearPole,
    /// Value diverges (returned as infinity).
    Divergent,
}

/// Symbolic phase `i^k * (-1)^(j D/2)` riding along a Euclidean magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PhaseTag {
    /// Power of the imaginary unit, reduced mod 4.
    pub i_pow: u8,
    /// Number of `(-1)^(D/2)` factors.
    pub half_dim_sign: i32,
}

impl PhaseTag {
    /// Identity phase.
    pub const ONE: PhaseTag = PhaseTag { i_pow: 0, half_dim_sign: 0 };

    /// `i (-1)^n`.
    pub fn minkowski(n: i64) -> PhaseTag {
        PhaseTag { i_pow: (1 + 2 * n).rem_euclid(4) as u8, half_dim_sign: 0 }
    }

    /// `(-1)^(D/2)`.
    pub fn half_dim() -> PhaseTag {
        PhaseTag { i_pow: 0, half_dim_sign: 1 }
    }

    /// Product of two phases.
    pub fn compose(self, other: PhaseTag) -> PhaseTag {
        PhaseTag {
            i_pow: (self.i_pow + other.i_pow) % 4,
            half_dim_sign: self.half_dim_sign + other.half_dim_sign,
        }
    }
}

/// Value with error estimate, termination status and phase tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T = f64> {
    /// Numerical value (Euclidean magnitude where a phase applies).
    pub value: T,
    /// Estimated absolute error.
    pub abs_err: f64,
    /// Termination status.
    pub status: Status,
    /// Number of terms or function evaluations used.
    pub work: usize,
    /// Symbolic phase.
    pub phase: PhaseTag,
}

impl<T> EvalResult<T> {
    /// Closed-form value.
    pub fn exact(value: T) -> Self {
        EvalResult { value, abs_err: 0.0, status: Status::Exact, work: 0, phase: PhaseTag::ONE }
    }

    /// Converged iterate.
    pub fn converged(value: T, abs_err: f64, work: usize) -> Self {
        EvalResult { value, abs_err, status: Status::Converged, work, phase: PhaseTag::ONE }
    }

    /// Replaces the status.
    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Replaces the phase.
    pub fn with_phase(mut self, phase: PhaseTag) -> Self {
        self.phase = phase;
        self
    }

    /// Maps the value, keeping error bookkeeping.
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> EvalResult<U> {
        EvalResult {
            value: f(self.value),
            abs_err: self.abs_err,
            status: self.status,
            work: self.work,
            phase: self.phase,
        }
    }
}
