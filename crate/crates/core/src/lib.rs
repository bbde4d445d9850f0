//! Standard, mixed, null and non-standard Lagrangians for linear
//! second-order equations y″ + B(x) y′ + C(x) y = 0, with numerical
//! verification of their Euler–Lagrange and Helmholtz properties.

// Negated comparisons are deliberate so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod helmholtz;
pub mod lagrangian;
pub mod ode;
pub mod path;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod variational;

pub use error::{Error, Result};
pub use expr::{parse_expr, Expr};
pub use ode::{BesselKind, EquationKind, LinearODE2};
pub use path::{Interval, Jet, TrialPath};
