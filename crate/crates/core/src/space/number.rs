//! Classical coefficients: exact rationals, doubles and complex doubles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ring operations the polynomial and solver code is generic over.
///
/// Method names avoid the `std::ops` ones so that implementors which also
/// implement the operator traits never resolve ambiguously.
pub trait Coefficient: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
    fn to_complex(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Coefficient::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Converts a rational to the nearest double, staying finite for huge parts.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale down both parts until they fit.
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Exact rational value of a finite double.
pub fn f64_to_rational(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

/// Parses an unsigned decimal literal (`12`, `0.52`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer, denom))
}

/// A classical scalar coefficient. Arithmetic promotes
/// `Rational` → `Real` → `Complex`.
#[derive(Clone, Debug)]
pub enum Number {
    Rational(BigRational),
    Real(f64),
    Complex(Complex64),
}

impl Number {
    pub fn from_int(n: i64) -> Self {
        Number::Rational(BigRational::from_integer(n.into()))
    }

    pub fn imaginary_unit() -> Self {
        Number::Complex(Complex64::new(0.0, 1.0))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Rational(r) => rational_to_f64(r),
            Number::Real(v) => *v,
            Number::Complex(c) => c.re,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Number::Rational(r) => Some(r.clone()),
            Number::Real(v) => f64_to_rational(*v),
            Number::Complex(c) if c.im == 0.0 => f64_to_rational(c.re),
            Number::Complex(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Number::Rational(r) => r.is_integer(),
            Number::Real(v) => v.fract() == 0.0,
            Number::Complex(c) => c.im == 0.0 && c.re.fract() == 0.0,
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, Number::Complex(c) if c.im != 0.0)
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Number::Rational(r) => r.is_negative(),
            Number::Real(v) => *v < 0.0,
            Number::Complex(c) => c.im == 0.0 && c.re < 0.0,
        }
    }

    pub fn abs(&self) -> Number {
        match self {
            Number::Rational(r) => Number::Rational(r.abs()),
            Number::Real(v) => Number::Real(v.abs()),
            Number::Complex(c) => Number::Real(c.norm()),
        }
    }

    /// Real-line comparison; `None` when either side has an imaginary part.
    pub fn partial_cmp_real(&self, other: &Number) -> Option<Ordering> {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => Some(a.cmp(b)),
            _ if self.is_real() && other.is_real() => {
                match (self.as_rational(), other.as_rational()) {
                    (Some(a), Some(b)) => Some(a.cmp(&b)),
                    _ => self.to_f64().partial_cmp(&other.to_f64()),
                }
            }
            _ => None,
        }
    }

    fn promote(a: &Number, b: &Number) -> (Number, Number) {
        match (a, b) {
            (Number::Rational(_), Number::Rational(_)) => (a.clone(), b.clone()),
            (Number::Complex(_), _) | (_, Number::Complex(_)) => (
                Number::Complex(a.to_complex()),
                Number::Complex(b.to_complex()),
            ),
            _ => (Number::Real(a.to_f64()), Number::Real(b.to_f64())),
        }
    }

    fn binary(
        &self,
        rhs: &Number,
        q: impl Fn(&BigRational, &BigRational) -> BigRational,
        r: impl Fn(f64, f64) -> f64,
        c: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Number {
        match Number::promote(self, rhs) {
            (Number::Rational(a), Number::Rational(b)) => Number::Rational(q(&a, &b)),
            (Number::Real(a), Number::Real(b)) => Number::Real(r(a, b)),
            (Number::Complex(a), Number::Complex(b)) => Number::Complex(c(a, b)),
            _ => unreachable!("promote yields matching variants"),
        }
    }
}

impl PartialEq for Number {
    fn eq(&self, other: &Number) -> bool {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a == b,
            (Number::Complex(_), _) | (_, Number::Complex(_)) => {
                self.to_complex() == other.to_complex()
            }
            _ => match (self.as_rational(), other.as_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl Coefficient for Number {
    fn zero() -> Self {
        Number::Rational(<BigRational as Zero>::zero())
    }
    fn one() -> Self {
        Number::Rational(<BigRational as One>::one())
    }
    fn is_zero(&self) -> bool {
        match self {
            Number::Rational(r) => Zero::is_zero(r),
            Number::Real(v) => *v == 0.0,
            Number::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }
    fn is_one(&self) -> bool {
        match self {
            Number::Rational(r) => One::is_one(r),
            Number::Real(v) => *v == 1.0,
            Number::Complex(c) => c.re == 1.0 && c.im == 0.0,
        }
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| a + b, |a, b| a + b, |a, b| a + b)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| a - b, |a, b| a - b, |a, b| a - b)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.binary(rhs, |a, b| a * b, |a, b| a * b, |a, b| a * b)
    }
    fn negated(&self) -> Self {
        match self {
            Number::Rational(r) => Number::Rational(-r),
            Number::Real(v) => Number::Real(-v),
            Number::Complex(c) => Number::Complex(-c),
        }
    }
    fn inverse(&self) -> Option<Self> {
        if Coefficient::is_zero(self) {
            return None;
        }
        Some(match self {
            Number::Rational(r) => Number::Rational(r.recip()),
            Number::Real(v) => Number::Real(1.0 / v),
            Number::Complex(c) => Number::Complex(c.inv()),
        })
    }
    fn from_rational(r: &BigRational) -> Self {
        Number::Rational(r.clone())
    }
    fn to_complex(&self) -> Complex64 {
        match self {
            Number::Rational(r) => Complex64::new(rational_to_f64(r), 0.0),
            Number::Real(v) => Complex64::new(*v, 0.0),
            Number::Complex(c) => *c,
        }
    }
}
