//! Special-function kernel.

pub mod bessel;
pub mod gamma;
pub mod hyper;

pub use bessel::{bessel, bessel_i, bessel_j, bessel_k, BesselKind};
pub use gamma::{
    gamma, gamma_c, gamma_ratio_flip, gamma_unchecked, ln_gamma, near_pole, pochhammer, pochhammer_c, rgamma, Flip, EULER_GAMMA, POLE_TOL,
};
pub use hyper::{appell_f4, gauss_2f1};

use crate::error::Result;
use num_complex::Complex64;
use num_traits::Float;

/// Where a dimension sits relative to the continuation's special points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DimClass {
    /// Real and positive.
    Positive,
    /// Real and negative.
    Negative,
    /// Within tolerance of zero.
    Zero,
    /// Imaginary part beyond tolerance.
    Complex,
    /// Within tolerance of a nonzero even integer.
    NearPole {
        /// The even integer approached.
        pole: i64,
    },
}

/// A complex dimension with its pole tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimension {
    /// D.
    pub value: Complex64,
    /// Distance that counts as sitting on a pole.
    pub pole_tolerance: f64,
}

impl Dimension {
    /// Real dimension with the default tolerance.
    pub fn real(d: f64) -> Self {
        Dimension { value: Complex64::new(d, 0.0), pole_tolerance: POLE_TOL }
    }

    /// Complex dimension with the default tolerance.
    pub fn complex(re: f64, im: f64) -> Self {
        Dimension { value: Complex64::new(re, im), pole_tolerance: POLE_TOL }
    }

    /// Replaces the tolerance.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.pole_tolerance = tol;
        self
    }

    /// Pure function of `value` and `pole_tolerance`.
    pub fn classify(&self) -> DimClass {
        let tol = self.pole_tolerance;
        let (re, im) = (self.value.re, self.value.im);
        if im.abs() > tol {
            return DimClass::Complex;
        }
        if re.abs() <= tol {
            return DimClass::Zero;
        }
        let even = 2.0 * (0.5 * re).round();
        if even != 0.0 && (re - even).abs() <= tol {
            return DimClass::NearPole { pole: even as i64 };
        }
        if re > 0.0 {
            DimClass::Positive
        } else {
            DimClass::Negative
        }
    }

    /// Real part; the value used by the real-valued modules.
    pub fn re(&self) -> f64 {
        self.value.re
    }
}

/// Pochhammer symbol (base, shift) = Γ(base + shift)/Γ(base).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochhammerTerm {
    /// z.
    pub base: Complex64,
    /// n.
    pub shift: i64,
}

impl PochhammerTerm {
    /// Evaluates the symbol.
    pub fn value(&self) -> Result<Complex64> {
        pochhammer_c(self.base, self.shift)
    }
}
