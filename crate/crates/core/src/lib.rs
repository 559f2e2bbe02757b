//! Exact symbolic engine for the local characters of holomorphically twisted
//! fivebrane theories.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! series are truncated multivariate Laurent series over the fugacity lattice
//! `(y1, y2, y, q)` with `y3 = 1/(y1 y2)` and half-integral powers of `q`.
//!
//! Module map:
//!
//! * [`series`]: monomials, truncated series, Euler-form rational expressions,
//!   variable frames, specialisation and the `z3, w2 -> 0` limit.
//! * [`lie`]: `sl(2)` and `sl(3)` Weyl characters.
//! * [`plethystic`]: Adams operations, `PExp` and `PLog`.
//! * [`index`]: the catalogue of single-particle indices and full characters.
//! * [`jet`]: brute-force jet enumeration of the bundles `V^(k)`.
//! * [`charbasis`]: projection of coefficients onto `sl(3)` characters.
//! * [`verify`]: verification suites, fixtures and reports.

pub mod charbasis;
pub mod error;
pub mod expr;
pub mod index;
pub mod jet;
pub mod lie;
pub mod plethystic;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use series::{
    Coeff, EulerExpr, Frame, Grading, HalfInt, Monomial, Series, Specialization, Var, ZwVar,
};
