//! Concave Young-functions made executable.
//!
//! The library represents members of the class of concave Young-functions
//! as expression trees ([`funcrep`]), integrates against the finite measure
//! `dμ = dx/(x+1)^4` ([`quad`]), measures distances and density-level
//! integrals ([`ymetric`]), builds families fixing a point `b` and their
//! composition/convex hierarchies ([`fixed_b`]), runs explicit approximation
//! sequences ([`density`]) and checks the Lp criteria on finite measure
//! spaces ([`lpspace`]).
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`.

// `!(x > y)` is used on purpose so that NaN lands on the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod fixed_b;
pub mod formats;
pub mod funcrep;
pub mod lpspace;
pub mod quad;
pub mod scalar;
pub mod ymetric;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Expr = funcrep::YoungExpr<f64>;
pub type ExprF32 = funcrep::YoungExpr<f32>;
pub type Weights = funcrep::WeightVector<f64>;
pub type Quad = quad::QuadResult<f64>;
pub type Roster = fixed_b::FnRoster<f64>;
pub type Space = lpspace::DiscreteMeasureSpace<f64>;
pub type LpFn = lpspace::MeasurableFn<f64>;

/// Default absolute quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
