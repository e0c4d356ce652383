//! Analytic continuation in the spacetime dimension.
//!
//! Closed forms in positive, fractional and negative dimension together with
//! the numerical machinery that certifies them: Gamma/Bessel/hypergeometric
//! kernels, radial Hausdorff measures, one-loop master integrals, the
//! negative-dimension integration method, Schwinger and multifractal
//! propagators, spectral-dimension flow and fractal FRW cosmology.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![warn(missing_docs)]
// once std is linked (tests, dev-dependencies) its inherent float methods shadow num_traits::Float
#![allow(unused_imports)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cosmo;
pub mod dimexp;
mod error;
pub mod masterint;
pub mod measure;
pub mod ndim;
pub mod propagator;
pub mod quad;
pub mod spectral;
pub mod specfun;
mod tol;

pub use error::{Error, Result};
pub use tol::{EvalResult, PhaseTag, SeriesClass, Status, ToleranceConfig};
pub use specfun::Dimension;
