//! Exact scalars, sparse multivariate polynomials, monomial orders and
//! rational expressions.

mod context;
pub mod domain;
pub mod expr;
mod monomial;
mod poly;
pub mod rational;
pub mod text;

pub use context::VarContext;
pub use domain::{Domain, Exact};
pub use expr::{clear_denominators, expr_clear_denominators, ClearOptions, RationalExpr, SignConvention};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::MultiPoly;
pub use rational::{rat_arith, RatOp};
pub use text::{parse_poly, PolyFile};
