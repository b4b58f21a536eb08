//! Linear monads on products of projective spaces.
//!
//! The crate builds monads
//! `0 -> O(-L)^alpha -> O^beta -> O(L)^gamma -> 0` on
//! `X = P^{a_1} x ... x P^{a_n}`, checks the monad conditions, and
//! produces certificates for stability of the kernel bundle and
//! simplicity of the cohomology bundle from exact cohomology
//! computations.
//!
//! Module map:
//! - [`algebra`]: multigraded monomials, polynomials, points over `F_p`.
//! - [`linmat`]: matrices of forms, fiberwise rank checks, section maps,
//!   exact rank and kernel computations.
//! - [`monad`]: builders (band matrices, Segre lifts), existence
//!   predicate, monad verification, display ranks.
//! - [`cohom`]: Bott and Kunneth formulas, long exact sequences,
//!   `H^0` of twisted exterior powers of kernel bundles.
//! - [`invariants`]: intersection numbers, slopes, normalization,
//!   stability and simplicity certificates.

pub mod algebra;
pub mod bigser;
pub mod certificate;
pub mod cohom;
mod error;
pub mod fp;
pub mod invariants;
pub mod linmat;
pub mod monad;

pub use error::{Error, Result};

/// Top-level schema tag carried by every serialized document.
pub const SCHEMA: &str = "monad-forge/1";
