//! The SPACE environment: coefficient domains, tropical algebras, scalar
//! arithmetic and FLOATPOS formatting.

mod algebra;
mod format;
mod number;
mod scalar;
mod tropical;

pub use algebra::{
    resolve_algebra, AddOp, AlgebraTag, Carrier, ClassicalDomain, MulOp, SpaceContext, SpaceError,
    TropicalSignature, DEFAULT_FLOATPOS,
};
pub use format::{
    format_complex, format_fixed, format_float, format_rational, format_scalar, format_tropical,
    is_rendered_zero, rounds_to_zero,
};
pub use number::{f64_to_rational, parse_decimal, rational_to_f64, Coefficient, Number};
pub use scalar::{scalar_arith, ArithOp, Scalar, ScalarError};
pub use tropical::{is_nonnegative, TropicalError, TropicalScalar};
