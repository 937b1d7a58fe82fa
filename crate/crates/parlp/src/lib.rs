//! Exact-arithmetic parametric linear programming toolkit.
//!
//! Solves small standard-form problems `max p^T x, A x = b, x >= 0` by
//! enumerating basic feasible points, certifies optimality through KKT
//! conditions and strong duality, computes closed-form ranging intervals for
//! rhs and objective perturbations, classifies problems by regularity, and
//! probes (semi)continuity of the feasible and solution correspondences along
//! convergent problem families. Every certified quantity is an exact
//! rational; no floating point is used anywhere.

pub mod classify;
pub mod error;
pub mod linalg;
pub mod model;
pub mod probe;
pub mod rational;
pub mod sensitivity;
pub mod solver;

pub use error::{Error, Result};
pub use linalg::{RationalMatrix, RationalVector};
pub use model::{
    dual_of, parse_family, parse_problem, serialize_family, serialize_problem, DualProblem,
    LpProblem, PerturbationRay, ProblemFamily,
};
pub use rational::{ExtendedRational, Rational};
pub use solver::{solve, BasicPoint, EnumCap, SolveOutcome, SolveStatus};
