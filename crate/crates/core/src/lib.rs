//! Spherical Bessel functions `y_n`, `j_n`, `i_n`, `k_n` as exact integer
//! Laurent rows, their real inverses branch by branch, and closed-form
//! solutions of equations that reduce to `f_n(x) = c0`.
//!
//! ```
//! use sphinv_core::{inverse, InverseQuery, Family};
//!
//! let dottie = inverse(&InverseQuery::new(Family::Y, 0, 1, -1.0)).unwrap();
//! assert!((dottie - 0.739_085_133_215_160_6).abs() < 1e-15);
//! ```
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod math;
mod roots;

pub mod bessel;
pub mod constexpr;
pub mod error;
pub mod extrema;
pub mod inverse;
pub mod lambert;
pub mod laurent;
pub mod parser;
pub mod recognizer;
pub mod solver;

pub use bessel::{eval, eval_derivative, Direction, EvalOptions, SphericalBessel};
pub use constexpr::{ConstExpr, NamedConst};
pub use error::Error;
pub use extrema::{
    branch_interval, infsupum, BranchInterval, Endpoint, Extrema, ExtremumRecord, Ordinate, OrdinateRange, RecordKind,
};
pub use inverse::{branches_containing, fixed_point_check, inverse, inverse_on, BranchSearch, InverseQuery, Limits};
pub use lambert::{lambert_w, w_via_k0, WBranch};
pub use laurent::{coefficients, rayleigh_coefficients, Factor, Family, LaurentForm};
pub use parser::{parse_const, parse_equation, ParseError, ParseErrorKind};
pub use recognizer::{agreement, recognize, Candidate, FloatInput, SearchConfig};
pub use solver::{normalize, solve, EquationNormalForm, RawEquation, Solution, SolutionSet, Term, ZeroRoot};
