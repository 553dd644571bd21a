use std::fmt;

use num_bigint::BigInt;

/// Errors surfaced by the engine.
///
/// `DivisibilityViolation` deserves a note: divided-power operators are
/// integral, so every exact division performed while applying one must
/// succeed. Seeing this error therefore means the operator bookkeeping
/// itself is broken, not that the input was bad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values built over different variable tables or different moduli.
    IncompatibleOperands(String),
    /// A variable name occurs twice in a table declaration.
    DuplicateVariable(String),
    /// An exact division left a remainder.
    DivisibilityViolation { coefficient: BigInt, divisor: BigInt },
    /// A modulus that is required to be prime is not.
    NotPrime(u64),
    /// Denominator clearing was asked for a target power smaller than an
    /// exponent actually present in the sum.
    TargetUnderflow { slot: usize, required: u32, target: u32 },
    /// Coboundary of a top-degree cochain requested.
    NoHigherDegree { degree: usize },
    /// The cochain machinery is only wired up for small denominator bases.
    UnsupportedBasisSize { size: usize },
    /// The proposed syzygy coefficients do not annihilate the basis.
    InvalidSyzygy,
    /// Operator derivation and literal construction disagree on a component.
    DerivationMismatch { component: usize },
    /// A prime power exceeds the configured desk-scale bound.
    PowerBoundExceeded { base: u64, exponent: u32, bound: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IncompatibleOperands(what) => {
                write!(f, "incompatible operands: {what}")
            }
            Error::DuplicateVariable(name) => {
                write!(f, "duplicate variable name `{name}`")
            }
            Error::DivisibilityViolation { coefficient, divisor } => write!(
                f,
                "exact division failed: {coefficient} is not divisible by {divisor} \
                 (engine bug in divided-power application)"
            ),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::TargetUnderflow { slot, required, target } => write!(
                f,
                "clearing target {target} at denominator slot {slot} is below the \
                 exponent {required} present in the sum"
            ),
            Error::NoHigherDegree { degree } => {
                write!(f, "no coboundary above top degree {degree}")
            }
            Error::UnsupportedBasisSize { size } => {
                write!(f, "denominator basis of size {size} is not supported here")
            }
            Error::InvalidSyzygy => {
                write!(f, "coefficients do not form a syzygy: sum g_i * f_i != 0")
            }
            Error::DerivationMismatch { component } => write!(
                f,
                "operator derivation disagrees with the literal sum on component {component}"
            ),
            Error::PowerBoundExceeded { base, exponent, bound } => write!(
                f,
                "{base}^{exponent} exceeds the configured bound {bound}"
            ),
        }
    }
}

impl std::error::Error for Error {}
