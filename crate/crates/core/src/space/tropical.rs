//! Scalars and operations of the tropical (idempotent) semirings.
//!
//! Every signature adjoins exactly the infinities that serve as its identities:
//! the additive identity (`−∞` under max, `+∞` under min) and, for the lattice
//! multiplications, the multiplicative identity too. `MaxMult`/`MinMult` carry
//! only nonnegative finite values so that `×` distributes over max/min.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::algebra::{AddOp, Carrier, MulOp, TropicalSignature};
use super::number::{f64_to_rational, Coefficient, Number};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropicalError {
    #[error("undefined product {0} ⊗ {1}")]
    UndefinedProduct(String, String),
    #[error("{value} is not an element of {signature}")]
    OutsideCarrier { value: String, signature: String },
    #[error("{0} has no multiplicative inverse")]
    NotInvertible(String),
    #[error("{0} has no inverse multiplication")]
    NonInvertibleSignature(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum TropicalScalar {
    MinusInfinity,
    Finite(Number),
    PlusInfinity,
}

impl TropicalScalar {
    pub fn int(n: i64) -> Self {
        TropicalScalar::Finite(Number::from_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropicalScalar::Finite(_))
    }

    pub fn finite_value(&self) -> Option<&Number> {
        match self {
            TropicalScalar::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Numeric order with the infinities as extremes.
    pub fn numeric_cmp(&self, other: &TropicalScalar) -> Ordering {
        use TropicalScalar::*;
        match (self, other) {
            (MinusInfinity, MinusInfinity) | (PlusInfinity, PlusInfinity) => Ordering::Equal,
            (MinusInfinity, _) | (_, PlusInfinity) => Ordering::Less,
            (_, MinusInfinity) | (PlusInfinity, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.partial_cmp_real(b).unwrap_or(Ordering::Equal),
        }
    }

    pub fn negated(&self) -> TropicalScalar {
        match self {
            TropicalScalar::MinusInfinity => TropicalScalar::PlusInfinity,
            TropicalScalar::PlusInfinity => TropicalScalar::MinusInfinity,
            TropicalScalar::Finite(n) => TropicalScalar::Finite(n.negated()),
        }
    }
}

impl fmt::Display for TropicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalScalar::MinusInfinity => f.write_str("-\\infty"),
            TropicalScalar::PlusInfinity => f.write_str("\\infty"),
            TropicalScalar::Finite(Number::Rational(r)) => write!(f, "{r}"),
            TropicalScalar::Finite(n) => write!(f, "{}", n.to_f64()),
        }
    }
}

impl TropicalSignature {
    /// Additive identity, absorbing for ⊗.
    pub fn zero(&self) -> TropicalScalar {
        match self.add {
            AddOp::Max => TropicalScalar::MinusInfinity,
            AddOp::Min => TropicalScalar::PlusInfinity,
        }
    }

    /// Multiplicative identity.
    pub fn unit(&self) -> TropicalScalar {
        match self.mul {
            MulOp::Plus => self.small_int(0),
            MulOp::Mult => self.small_int(1),
            MulOp::Max => TropicalScalar::MinusInfinity,
            MulOp::Min => TropicalScalar::PlusInfinity,
        }
    }

    /// Greatest element of the completed carrier in the ⊕-order. It is only
    /// produced by residuation and may lie outside the carrier proper.
    pub fn top(&self) -> TropicalScalar {
        match (self.add, self.mul) {
            (AddOp::Max, _) => TropicalScalar::PlusInfinity,
            (AddOp::Min, MulOp::Mult) => self.small_int(0),
            (AddOp::Min, _) => TropicalScalar::MinusInfinity,
        }
    }

    fn small_int(&self, n: i64) -> TropicalScalar {
        match self.carrier {
            Carrier::R64 => TropicalScalar::Finite(Number::Real(n as f64)),
            _ => TropicalScalar::int(n),
        }
    }

    /// Coerces a classical number into the carrier, checking membership.
    pub fn finite(&self, value: &Number) -> Result<TropicalScalar, TropicalError> {
        let coerced = match self.carrier {
            Carrier::Z | Carrier::R => value.as_rational().map(Number::Rational),
            Carrier::R64 => value.is_real().then(|| Number::Real(value.to_f64())),
        };
        let out = TropicalScalar::Finite(coerced.unwrap_or_else(|| value.clone()));
        self.validate(&out)?;
        Ok(out)
    }

    pub fn validate(&self, a: &TropicalScalar) -> Result<(), TropicalError> {
        let ok = match a {
            TropicalScalar::Finite(n) => {
                let in_set = match (self.carrier, n) {
                    (Carrier::Z, Number::Rational(r)) => r.is_integer(),
                    (Carrier::R, Number::Rational(_)) => true,
                    (Carrier::R64, Number::Real(v)) => v.is_finite(),
                    _ => false,
                };
                in_set && !(self.mul == MulOp::Mult && n.is_negative())
            }
            inf => *inf == self.zero() || *inf == self.unit(),
        };
        if ok {
            Ok(())
        } else {
            Err(TropicalError::OutsideCarrier {
                value: a.to_string(),
                signature: self.name(),
            })
        }
    }

    /// `a ⊕ b`.
    pub fn add(&self, a: &TropicalScalar, b: &TropicalScalar) -> TropicalScalar {
        let pick_b = match self.add {
            AddOp::Max => b.numeric_cmp(a) == Ordering::Greater,
            AddOp::Min => b.numeric_cmp(a) == Ordering::Less,
        };
        if pick_b {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// The dual lattice operation (min under max, max under min): the meet in
    /// the ⊕-order.
    pub fn meet(&self, a: &TropicalScalar, b: &TropicalScalar) -> TropicalScalar {
        let pick_b = match self.add.dual() {
            AddOp::Max => b.numeric_cmp(a) == Ordering::Greater,
            AddOp::Min => b.numeric_cmp(a) == Ordering::Less,
        };
        if pick_b {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// `a ≤ b` in the ⊕-induced order, i.e. `a ⊕ b = b`.
    pub fn le(&self, a: &TropicalScalar, b: &TropicalScalar) -> bool {
        match self.add {
            AddOp::Max => a.numeric_cmp(b) != Ordering::Greater,
            AddOp::Min => a.numeric_cmp(b) != Ordering::Less,
        }
    }

    fn is_finite_zero(a: &TropicalScalar) -> bool {
        matches!(a, TropicalScalar::Finite(n) if n.is_zero())
    }

    /// `a ⊗ b`. Opposite infinities under `+`/`×`, and a finite zero times an
    /// infinity under `×`, are indeterminate.
    pub fn mul(
        &self,
        a: &TropicalScalar,
        b: &TropicalScalar,
    ) -> Result<TropicalScalar, TropicalError> {
        use TropicalScalar::*;
        let undefined = || TropicalError::UndefinedProduct(a.to_string(), b.to_string());
        match self.mul {
            MulOp::Max => Ok(if a.numeric_cmp(b) == Ordering::Less {
                b.clone()
            } else {
                a.clone()
            }),
            MulOp::Min => Ok(if a.numeric_cmp(b) == Ordering::Greater {
                b.clone()
            } else {
                a.clone()
            }),
            MulOp::Plus | MulOp::Mult => match (a, b) {
                (MinusInfinity, PlusInfinity) | (PlusInfinity, MinusInfinity) => Err(undefined()),
                _ if *a == self.zero() || *b == self.zero() => Ok(self.zero()),
                (Finite(x), Finite(y)) => Ok(Finite(if self.mul == MulOp::Plus {
                    x.plus(y)
                } else {
                    x.times(y)
                })),
                (Finite(x), inf) | (inf, Finite(x)) => {
                    if self.mul == MulOp::Mult && x.is_zero() {
                        Err(undefined())
                    } else {
                        Ok(inf.clone())
                    }
                }
                (inf, _) => Ok(inf.clone()),
            },
        }
    }

    /// `a ⊗ b` under the completed-lattice convention used by residuation:
    /// the additive identity, and a finite zero under `×`, absorb everything.
    pub fn mul_absorbing(&self, a: &TropicalScalar, b: &TropicalScalar) -> TropicalScalar {
        let zero = self.zero();
        if *a == zero || *b == zero {
            return zero;
        }
        if self.mul == MulOp::Mult {
            if Self::is_finite_zero(a) {
                return a.clone();
            }
            if Self::is_finite_zero(b) {
                return b.clone();
            }
        }
        self.mul(a, b).unwrap_or(zero)
    }

    /// Greatest `x` in the completed carrier with `a ⊗ x ≤ b`.
    pub fn residual(
        &self,
        a: &TropicalScalar,
        b: &TropicalScalar,
    ) -> Result<TropicalScalar, TropicalError> {
        if !self.is_semifield() {
            return Err(TropicalError::NonInvertibleSignature(self.name()));
        }
        let zero = self.zero();
        let top = self.top();
        if *a == zero || *b == top {
            return Ok(top);
        }
        if *a == top {
            return Ok(zero);
        }
        if *b == zero {
            return Ok(zero);
        }
        let (x, y) = match (a, b) {
            (TropicalScalar::Finite(x), TropicalScalar::Finite(y)) => (x, y),
            // b is an infinity outside the carrier.
            _ => return Ok(if self.le(&top, b) { top } else { zero }),
        };
        match self.mul {
            MulOp::Plus => Ok(TropicalScalar::Finite(y.minus(x))),
            MulOp::Mult => {
                if x.is_zero() {
                    let a_le_b = self.le(a, b);
                    return Ok(if a_le_b { top } else { zero });
                }
                let q = y.times(&x.inverse().expect("nonzero"));
                Ok(TropicalScalar::Finite(match (self.carrier, &q) {
                    (Carrier::Z, Number::Rational(r)) => {
                        let r: &BigRational = r;
                        let (n, d) = (r.numer(), r.denom());
                        let rounded = if self.add == AddOp::Max {
                            n.div_floor(d)
                        } else {
                            n.div_ceil(d)
                        };
                        Number::Rational(BigRational::from_integer(rounded))
                    }
                    _ => q,
                }))
            }
            MulOp::Max | MulOp::Min => unreachable!("checked by is_semifield"),
        }
    }

    /// ⊗-inverse of a finite non-zero element.
    pub fn inverse(&self, a: &TropicalScalar) -> Result<TropicalScalar, TropicalError> {
        if !self.is_semifield() {
            return Err(TropicalError::NonInvertibleSignature(self.name()));
        }
        match (self.mul, a) {
            (MulOp::Plus, TropicalScalar::Finite(_)) => Ok(a.negated()),
            (MulOp::Mult, TropicalScalar::Finite(n)) if !n.is_zero() => {
                let inv = n.inverse().expect("nonzero");
                if self.carrier == Carrier::Z && !inv.is_integer() {
                    return Err(TropicalError::NotInvertible(a.to_string()));
                }
                Ok(TropicalScalar::Finite(inv))
            }
            _ => Err(TropicalError::NotInvertible(a.to_string())),
        }
    }

    /// `a ⊗ a ⊗ … ⊗ a` (`n` factors); the unit for `n = 0`.
    pub fn pow(&self, a: &TropicalScalar, n: u64) -> Result<TropicalScalar, TropicalError> {
        let mut acc = self.unit();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Interprets an unbounded classical value (used for literal `±∞`).
    pub fn from_f64(&self, v: f64) -> Result<TropicalScalar, TropicalError> {
        if v == f64::INFINITY {
            Ok(TropicalScalar::PlusInfinity)
        } else if v == f64::NEG_INFINITY {
            Ok(TropicalScalar::MinusInfinity)
        } else {
            let n = match self.carrier {
                Carrier::R64 => Number::Real(v),
                _ => {
                    Number::Rational(f64_to_rational(v).unwrap_or_else(<BigRational as Zero>::zero))
                }
            };
            self.finite(&n)
        }
    }
}

/// Ensures the Mult sign convention is respected when users negate literals.
pub fn is_nonnegative(n: &Number) -> bool {
    match n {
        Number::Rational(r) => !r.is_negative(),
        other => other.to_f64() >= 0.0,
    }
}
