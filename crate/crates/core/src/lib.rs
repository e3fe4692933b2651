//! Exact key-polynomial calculus for valuations on K[x].
//!
//! The crate provides exact value arithmetic (`value`), two concrete valued
//! base fields (`field`), dense polynomials with Hasse derivatives and
//! standard expansions (`poly`), representations of valuations on K[x]
//! (`xval`), the key-polynomial calculus itself (`keypoly`), pseudo-convergent
//! sequences (`pcs`), seeded samplers (`sample`) and the named property
//! suites (`verify`).
//!
//! Everything is generic over the base field through [`field::ValuedField`];
//! the concrete instantiations over `qp:p` and `fpt:p` are re-exported as
//! type aliases at the crate root.

pub mod field;
pub mod parse;
pub mod pcs;
pub mod poly;
pub mod sample;
pub mod value;
pub mod verify;
pub mod xval;

pub mod keypoly;

pub use field::{AnyField, FieldKind, GridSpec, Padic, TSeries, ValuedField};
pub use poly::Poly;
pub use value::ExtValue;
pub use xval::XValuation;

/// Polynomials over Q with the p-adic valuation.
pub type QpPoly = Poly<Padic>;
/// Polynomials over F_p(t) with the t-adic valuation.
pub type FptPoly = Poly<TSeries>;
/// Valuations on Q[x].
pub type QpValuation = XValuation<Padic>;
/// Valuations on F_p(t)[x].
pub type FptValuation = XValuation<TSeries>;
