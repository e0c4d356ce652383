use alloc::string::String;
use core::fmt;

/// Every failure the library reports. Messages name the offending argument.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A Gamma function (or a quantity built from one) was asked for a pole.
    PoleAtArgument {
        /// Human-readable name of the Gamma argument.
        what: String,
        /// Real part of the offending argument.
        at: f64,
    },
    /// The dimension sits on a pole of a closed form.
    PoleAtDimension {
        /// Which Gamma argument hits the pole.
        what: String,
        /// The offending dimension.
        dim: f64,
    },
    /// Argument outside the mathematical domain of the operation.
    Domain(String),
    /// Bessel order outside the supported band.
    OrderOutOfRange(f64),
    /// Flip bookkeeping gave an exponent different from the one supplied.
    InconsistentTheta {
        /// Exponent supplied by the caller.
        expected: f64,
        /// Exponent recomputed from the arguments.
        found: f64,
    },
    /// Series argument outside the unit disk.
    OutsideDisk(f64),
    /// Double-series arguments outside the convergence domain.
    OutsideDomain(String),
    /// Iteration or term budget exhausted.
    NotConverged(String),
    /// A documented precondition does not hold.
    PreconditionViolated(String),
    /// Power-law exponent in the excluded set.
    ForbiddenExponent(f64),
    /// Too few samples for an extrapolation.
    InsufficientSamples(usize),
    /// Dimension outside the subtraction window.
    WrongWindow {
        /// Number of subtractions requested.
        subtractions: u32,
        /// Real part of the dimension.
        dim: f64,
    },
    /// Parametric integrand not integrable at an endpoint.
    EndpointSingularity(String),
    /// Laurent pole at zero dimension.
    ZeroDimension,
    /// Root search could not bracket a sign change.
    RootNotBracketed(String),
    /// No NDIM solution converges at the requested kinematics.
    NoConvergentRegion,
    /// Validation against an oracle failed.
    OracleMismatch {
        /// Engine value.
        value: f64,
        /// Oracle value.
        oracle: f64,
    },
    /// Flip exponent of a generated descriptor is not D/2.
    ThetaMismatch(String),
    /// Input shape outside what the engine handles.
    Unsupported(String),
    /// Series diverges on the boundary of its disk.
    DivergentSeries(String),
    /// Requested spectral dimension equals the topological one.
    SaturatedClock,
    /// Too few Monte Carlo trials.
    InsufficientTrials(u64),
    /// Integrator step produced an invalid state.
    StepRejected(String),
    /// Accepted as input but has no reduced form to evaluate.
    NotImplemented(String),
}

/// Shorthand result type.
pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Domain and pole errors map to exit status 2 in the command-line front end.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::PoleAtArgument { .. }
                | Error::PoleAtDimension { .. }
                | Error::Domain(_)
                | Error::OutsideDisk(_)
                | Error::OutsideDomain(_)
                | Error::ForbiddenExponent(_)
                | Error::WrongWindow { .. }
                | Error::ZeroDimension
                | Error::NoConvergentRegion
                | Error::SaturatedClock
                | Error::DivergentSeries(_)
                | Error::EndpointSingularity(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PoleAtArgument { what, at } => write!(f, "Gamma pole: {what} = {at}"),
            Error::PoleAtDimension { what, dim } => {
                write!(f, "pole at D = {dim}: {what}")
            }
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::OrderOutOfRange(nu) => write!(f, "Bessel order {nu} outside |nu| <= 20"),
            Error::InconsistentTheta { expected, found } => {
                write!(f, "flip exponent mismatch: expected {expected}, found {found}")
            }
            Error::OutsideDisk(z) => write!(f, "|z| = {z} lies outside the unit disk"),
            Error::OutsideDomain(m) => write!(f, "outside convergence domain: {m}"),
            Error::NotConverged(m) => write!(f, "not converged: {m}"),
            Error::PreconditionViolated(m) => write!(f, "precondition violated: {m}"),
            Error::ForbiddenExponent(l) => write!(f, "exponent {l} is in the excluded set"),
            Error::InsufficientSamples(n) => write!(f, "need at least 3 samples, got {n}"),
            Error::WrongWindow { subtractions, dim } => {
                write!(f, "Re(D) = {dim} outside the window for {subtractions} subtractions")
            }
            Error::EndpointSingularity(m) => write!(f, "non-integrable endpoint: {m}"),
            Error::ZeroDimension => write!(f, "Laurent pole at D = 0"),
            Error::RootNotBracketed(m) => write!(f, "root not bracketed: {m}"),
            Error::NoConvergentRegion => write!(f, "no solution converges at these ratios"),
            Error::OracleMismatch { value, oracle } => {
                write!(f, "value {value} disagrees with oracle {oracle}")
            }
            Error::ThetaMismatch(m) => write!(f, "flip exponent is not D/2: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::DivergentSeries(m) => write!(f, "series diverges: {m}"),
            Error::SaturatedClock => write!(f, "spectral dimension equals D_f; clock is infinite"),
            Error::InsufficientTrials(n) => write!(f, "{n} trials is below the minimum of 1000"),
            Error::StepRejected(m) => write!(f, "step rejected: {m}"),
            Error::NotImplemented(m) => write!(f, "not implemented: {m}"),
        }
    }
}
