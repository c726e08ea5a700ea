//! Exact and numerical verification of Euler-sum identities.
//!
//! The crate is layered bottom-up: exact rationals ([`exactmath`]),
//! zeta values ([`constants`]), polylogarithms ([`specfun`]), tanh-sinh
//! quadrature ([`quad`]), the Euler sums themselves ([`eulersums`]) and the
//! catalogue of identities with its runner ([`registry`]).

pub mod compensated;
pub mod constants;
pub mod eulersums;
pub mod error;
pub mod exactmath;
pub mod quad;
pub mod registry;
pub mod specfun;

pub use error::{Error, Result};
