//! FLOATPOS-controlled rendering of scalars.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use super::number::f64_to_rational;
use super::scalar::Scalar;
use super::tropical::TropicalScalar;

/// Fixed-point rendering with `floatpos` fractional digits, rounding half away
/// from zero on the exact value.
pub fn format_fixed(value: &BigRational, floatpos: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), floatpos as usize);
    let rounded = (value * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let negative = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let body = if floatpos == 0 {
        digits
    } else {
        let width = floatpos as usize + 1;
        let padded = format!("{digits:0>width$}");
        let (int, frac) = padded.split_at(padded.len() - floatpos as usize);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

pub fn format_float(v: f64, floatpos: u32) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 {
            "\\infty".into()
        } else {
            "-\\infty".into()
        };
    }
    format_fixed(&f64_to_rational(v).expect("finite"), floatpos)
}

/// `true` when the value renders as zero at this precision.
pub fn rounds_to_zero(v: f64, floatpos: u32) -> bool {
    format_float(v.abs(), floatpos)
        .bytes()
        .all(|b| b == b'0' || b == b'.')
}

/// Renders a complex double; `unit` is the imaginary-unit spelling (`\i` in
/// Mathpar text, `\mathbf{i}` in LaTeX).
pub fn format_complex(c: Complex64, floatpos: u32, unit: &str) -> String {
    if rounds_to_zero(c.im, floatpos) {
        return format_float(
            if rounds_to_zero(c.re, floatpos) {
                0.0
            } else {
                c.re
            },
            floatpos,
        );
    }
    let re = if rounds_to_zero(c.re, floatpos) {
        0.0
    } else {
        c.re
    };
    let sign = if c.im < 0.0 { '-' } else { '+' };
    format!(
        "({}{}{}{})",
        format_float(re, floatpos),
        sign,
        format_float(c.im.abs(), floatpos),
        unit
    )
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_tropical(t: &TropicalScalar, floatpos: u32) -> String {
    match t {
        TropicalScalar::MinusInfinity => "-\\infty".into(),
        TropicalScalar::PlusInfinity => "\\infty".into(),
        TropicalScalar::Finite(n) => match n.as_rational() {
            Some(r) if r.is_integer() && matches!(n, crate::space::Number::Rational(_)) => {
                r.to_integer().to_string()
            }
            Some(r) => format_fixed(&r, floatpos),
            None => format_float(n.to_f64(), floatpos),
        },
    }
}

/// Mathpar text for a scalar.
///
/// Doubles get exactly `floatpos` digits; rationals print as `p/q` (or an
/// integer when `q = 1`); complex values as `(re+im\i)`; tropical infinities as
/// `\infty` / `-\infty`.
pub fn format_scalar(v: &Scalar, floatpos: u32) -> String {
    match v {
        Scalar::Int(i) => i.to_string(),
        Scalar::Rational(r) => format_rational(r),
        Scalar::Float(f) => format_float(*f, floatpos),
        Scalar::Complex(c) => format_complex(*c, floatpos, "\\i"),
        Scalar::Tropical(t) => format_tropical(t, floatpos),
    }
}

/// Whether the rendered text is the zero value (used for sign decisions).
pub fn is_rendered_zero(text: &str) -> bool {
    text.trim_start_matches('-')
        .bytes()
        .all(|b| b == b'0' || b == b'.')
        && !text.is_empty()
}
