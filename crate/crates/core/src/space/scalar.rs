//! Domain-tagged scalars and arithmetic dispatch over the active algebra.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::algebra::{AlgebraTag, ClassicalDomain};
use super::number::{Coefficient, Number};
use super::tropical::{TropicalError, TropicalScalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    DomainMismatch(String),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Int(BigInt),
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
    Float(f64),
    Complex(Complex64),
    Tropical(TropicalScalar),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl Scalar {
    pub fn to_number(&self) -> Option<Number> {
        Some(match self {
            Scalar::Int(i) => Number::Rational(BigRational::from_integer(i.clone())),
            Scalar::Rational(r) => Number::Rational(r.clone()),
            Scalar::Float(v) => Number::Real(*v),
            Scalar::Complex(c) => Number::Complex(*c),
            Scalar::Tropical(_) => return None,
        })
    }

    /// Places a classical number into a classical domain.
    pub fn from_number(domain: ClassicalDomain, n: &Number) -> Result<Scalar, ScalarError> {
        let mismatch = || {
            ScalarError::DomainMismatch(format!(
                "{} is not an element of {}",
                describe(n),
                domain.name()
            ))
        };
        match domain {
            ClassicalDomain::Z => match n.as_rational() {
                Some(r) if r.is_integer() => Ok(Scalar::Int(r.to_integer())),
                _ => Err(mismatch()),
            },
            ClassicalDomain::Q | ClassicalDomain::R => {
                n.as_rational().map(Scalar::Rational).ok_or_else(mismatch)
            }
            ClassicalDomain::R64 => {
                if n.is_real() {
                    Ok(Scalar::Float(n.to_f64()))
                } else {
                    Err(mismatch())
                }
            }
            ClassicalDomain::C64 => Ok(Scalar::Complex(n.to_complex())),
        }
    }

    /// Coerces into the given algebra.
    pub fn coerce(&self, algebra: &AlgebraTag) -> Result<Scalar, ScalarError> {
        match (algebra, self) {
            (AlgebraTag::Tropical(sig), Scalar::Tropical(t)) => {
                sig.validate(t)?;
                Ok(self.clone())
            }
            (AlgebraTag::Tropical(sig), other) => {
                let n = other.to_number().expect("classical");
                Ok(Scalar::Tropical(sig.finite(&n)?))
            }
            (AlgebraTag::Classical(_), Scalar::Tropical(_)) => Err(ScalarError::DomainMismatch(
                "tropical value used in a classical space".into(),
            )),
            (AlgebraTag::Classical(d), other) => {
                Scalar::from_number(*d, &other.to_number().expect("classical"))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self.to_number() {
            Some(n) => n.is_zero(),
            None => false,
        }
    }
}

fn describe(n: &Number) -> String {
    match n {
        Number::Rational(r) => r.to_string(),
        Number::Real(v) => v.to_string(),
        Number::Complex(c) => c.to_string(),
    }
}

fn classical_pow(
    domain: ClassicalDomain,
    base: &Number,
    exp: &Number,
) -> Result<Number, ScalarError> {
    let n = exp
        .as_rational()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_integer().to_i64())
        .ok_or_else(|| ScalarError::DomainMismatch("exponents must be integers".into()))?;
    let mut acc = Number::one();
    for _ in 0..n.unsigned_abs() {
        acc = acc.times(base);
    }
    if n < 0 {
        if domain == ClassicalDomain::Z && !(acc.is_one() || acc == Number::from_int(-1)) {
            return Err(ScalarError::DomainMismatch(
                "negative powers leave Z".into(),
            ));
        }
        acc = acc.inverse().ok_or(ScalarError::DivisionByZero)?;
    }
    Ok(acc)
}

/// Arithmetic on two scalars inside `algebra`.
///
/// Z, Q and R are exact; R64/C64 use hardware doubles; tropical algebras map
/// `+` to ⊕, `·` to ⊗, `/` to the ⊗-inverse and `^` to repeated ⊗.
pub fn scalar_arith(
    algebra: &AlgebraTag,
    op: ArithOp,
    a: &Scalar,
    b: &Scalar,
) -> Result<Scalar, ScalarError> {
    match algebra {
        AlgebraTag::Tropical(sig) => {
            if op == ArithOp::Pow {
                let n = b
                    .to_number()
                    .and_then(|n| n.as_rational())
                    .filter(|r| r.is_integer() && !r.is_negative())
                    .and_then(|r| r.to_integer().to_u64())
                    .ok_or_else(|| {
                        ScalarError::DomainMismatch(
                            "tropical powers need a nonnegative integer exponent".into(),
                        )
                    })?;
                let Scalar::Tropical(x) = a.coerce(algebra)? else {
                    unreachable!()
                };
                return Ok(Scalar::Tropical(sig.pow(&x, n)?));
            }
            let (Scalar::Tropical(x), Scalar::Tropical(y)) =
                (a.coerce(algebra)?, b.coerce(algebra)?)
            else {
                unreachable!("coerce yields tropical scalars")
            };
            let r = match op {
                ArithOp::Add => sig.add(&x, &y),
                ArithOp::Mul => sig.mul(&x, &y)?,
                ArithOp::Div => sig.mul(&x, &sig.inverse(&y)?)?,
                ArithOp::Sub => {
                    return Err(ScalarError::DomainMismatch(format!(
                        "subtraction is not defined in {sig}"
                    )))
                }
                ArithOp::Pow => unreachable!(),
            };
            sig.validate(&r)?;
            Ok(Scalar::Tropical(r))
        }
        AlgebraTag::Classical(domain) => {
            let x = a.coerce(algebra)?.to_number().expect("classical");
            let y = b.coerce(algebra)?.to_number().expect("classical");
            let r = match op {
                ArithOp::Add => x.plus(&y),
                ArithOp::Sub => x.minus(&y),
                ArithOp::Mul => x.times(&y),
                ArithOp::Div => {
                    let inv = y.inverse().ok_or(ScalarError::DivisionByZero)?;
                    let q = x.times(&inv);
                    if *domain == ClassicalDomain::Z && !q.is_integer() {
                        return Err(ScalarError::DomainMismatch(format!(
                            "{} / {} has no exact quotient in Z",
                            describe(&x),
                            describe(&y)
                        )));
                    }
                    q
                }
                ArithOp::Pow => classical_pow(*domain, &x, &y)?,
            };
            Scalar::from_number(*domain, &r)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Int(BigInt::from(n))
    }
}

impl Scalar {
    pub fn one_in(algebra: &AlgebraTag) -> Scalar {
        match algebra {
            AlgebraTag::Tropical(sig) => Scalar::Tropical(sig.unit()),
            AlgebraTag::Classical(d) => {
                Scalar::from_number(*d, &Number::Rational(<BigRational as One>::one()))
                    .expect("one")
            }
        }
    }

    pub fn zero_in(algebra: &AlgebraTag) -> Scalar {
        match algebra {
            AlgebraTag::Tropical(sig) => Scalar::Tropical(sig.zero()),
            AlgebraTag::Classical(d) => {
                Scalar::from_number(*d, &Number::Rational(<BigRational as Zero>::zero()))
                    .expect("zero")
            }
        }
    }
}
