//! Exact computer algebra for q-deformed Clifford analysis.
//!
//! Coefficients live in the rational function field ℚ(q) ([`qfield`]).
//! On top of that sit the Clifford algebra Cl(0,m) ([`clifford`]),
//! Clifford-valued polynomials ([`cpoly`]), the Jackson-derivative based
//! Dirac, Euler, Gamma and Laplace operators ([`qops`]), the Fischer inner
//! product and decomposition ([`fischer`]), the Cauchy-Kovalevskaya
//! extension ([`ck`]), one-variable Jackson calculus ([`jackson`]) and an
//! expression parser ([`expr`]).

pub mod ck;
pub mod clifford;
pub mod cpoly;
pub mod error;
pub mod expr;
pub mod fischer;
pub mod jackson;
pub mod linalg;
pub mod qfield;
pub mod qops;
pub mod random;
mod render;

pub use clifford::{Algebra, Blade, Multivector};
pub use cpoly::{vector_variable, CliffordPoly, MultiIndex};
pub use error::{Error, Result};
pub use qfield::{q_binomial, q_bracket, q_factorial, QPoly, QScalar};
pub use ck::{ck_extend, extended_dirac, restrict_x0};
pub use expr::{lower, parse, parse_poly, Expr};
pub use fischer::{fischer_full, fischer_inner, fischer_step, FischerSplit, FischerTower};
pub use jackson::{jackson_derivative, q_exp, q_integral, ExpVariant, UniPoly};
pub use qops::{check_relation, q_dirac, q_euler, q_gamma, q_laplace, q_partial, Relation, RelationFamily};
