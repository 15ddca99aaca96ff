//! Polynomials, symbolic expressions, calculus and factoring.

pub mod expr;
pub mod factor;
pub mod format;
pub mod monomial;
pub mod polynomial;
pub mod univariate;

pub use expr::{evaluate_complex, Expr, ExprError, Func, Poly};
pub use factor::{factor_expr, factor_polynomial, Factorization};
pub use format::{format_number, format_polynomial, Markup, NumberStyle};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
