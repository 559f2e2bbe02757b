//! The series engine: monomials, truncated Laurent series, Euler-form
//! rational expressions, frames and substitutions.

mod euler;
mod frame;
pub mod json;
mod monomial;
mod specialize;
mod truncated;

pub use euler::{euler_expand, EulerExpr};
pub use frame::{frame_convert, zw_presentation, Frame, ZwLimit, ZwVar};
pub use monomial::{mono_mul, Grading, HalfInt, Monomial};
pub use specialize::{limit_zero, specialize, Specialization, Var};
pub use truncated::{int, ratio, series_mul, Coeff, Series};
