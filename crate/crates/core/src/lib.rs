//! Exact symbolic engine for divided-power differential operators.
//!
//! The crate implements, over sparse integer polynomials:
//!
//! - divided-power partial derivatives `(1/k!) d^k/dx^k` on monomials,
//!   polynomials and rational terms, with composition and the Leibniz rule;
//! - formal rational sums over a fixed denominator basis, with denominator
//!   clearing as the exact zero test;
//! - low-degree Cech cochains over such a basis, their coboundary, and the
//!   construction of 2-cocycles from syzygies;
//! - the determinantal identity family for the 2x2 minors of a generic
//!   2x3 matrix, its re-derivation by operator application, its mod-p
//!   collapse to a Frobenius-power relation, and a generic identity
//!   generator for arbitrary syzygies and operators.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod cech;
pub mod diffop;
pub mod error;
pub mod identity;
pub mod minors;
pub mod ratfun;
pub mod ring;

pub use cech::{CechCochain, Syzygy};
pub use diffop::{DividedPowerOp, OperatorSum};
pub use error::Error;
pub use identity::{
    build_identity_sums, commuting_check, derive_via_operator, frobenius_power_relation,
    generate_identity, lucas_vanishing_check, mod_p_specialize, verify_identity,
    DerivationReport, GeneratedIdentity, IdentityReport, ModPReport, DEFAULT_POWER_BOUND,
};
pub use minors::MatrixMinors;
pub use ratfun::{DenomBasis, RationalSum, RationalTerm};
pub use ring::{binomial, is_prime, Monomial, Polynomial, VarTable};
