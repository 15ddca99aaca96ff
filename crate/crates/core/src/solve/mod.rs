//! Root finding, inequalities, Gröbner bases and polynomial systems.

pub mod groebner;
pub mod inequality;
pub mod nae;
pub mod roots;

use thiserror::Error;

use crate::cancel::Cancelled;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("the zero polynomial has no finite root list")]
    ZeroPolynomial,
    #[error("root iteration did not converge")]
    NonConvergence,
    #[error("expected a polynomial in one variable")]
    NotUnivariate,
    #[error("inequalities need real coefficients")]
    ComplexCoefficients,
    #[error("the system has infinitely many solutions")]
    PositiveDimensional,
    #[error("the system has no solution")]
    NoSolution,
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

pub use groebner::{
    groebner_basis, is_groebner, normalize_integer, reduce, reduce_with_quotients, s_polynomial,
    QPoly,
};
pub use inequality::{solve_inequality, Bound, Interval, IntervalSet};
pub use nae::{max_residual, rational_system, solve_nae, SolutionMatrix};
pub use roots::{solve_univariate, Root, RootList};
