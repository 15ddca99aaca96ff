//! Text rendering of polynomials in Mathpar and LaTeX form.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::polynomial::Polynomial;
use crate::space::{
    format_complex, format_fixed, format_float, format_rational, rounds_to_zero, Coefficient,
    Number,
};

/// How coefficients and scalars are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    /// Exact fractions (`8/7`), as in Z and Q.
    Exact,
    /// Fixed-point with the given number of digits, as in R, R64 and C64.
    /// Integral values print without a fractional part inside polynomials.
    Fixed(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Markup {
    Mathpar,
    Latex,
}

impl Markup {
    pub fn imaginary_unit(self) -> &'static str {
        match self {
            Markup::Mathpar => "\\i",
            Markup::Latex => "\\mathbf{i}",
        }
    }

    pub fn open(self) -> &'static str {
        match self {
            Markup::Mathpar => "(",
            Markup::Latex => "\\left(",
        }
    }

    pub fn close(self) -> &'static str {
        match self {
            Markup::Mathpar => ")",
            Markup::Latex => "\\right)",
        }
    }

    pub fn paren(self, s: &str) -> String {
        format!("{}{s}{}", self.open(), self.close())
    }
}

fn rational_text(r: &BigRational, markup: Markup) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    match markup {
        Markup::Mathpar => format!("{}/{}", r.numer(), r.denom()),
        Markup::Latex => {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
        }
    }
}

/// A standalone scalar.
pub fn format_number(n: &Number, style: NumberStyle, markup: Markup) -> String {
    match (n, style) {
        (Number::Complex(c), NumberStyle::Fixed(fp)) if !rounds_to_zero(c.im, fp) => {
            format_complex(*c, fp, markup.imaginary_unit())
        }
        (Number::Complex(c), NumberStyle::Exact) if c.im != 0.0 => {
            format_complex(*c, crate::space::DEFAULT_FLOATPOS, markup.imaginary_unit())
        }
        (n, NumberStyle::Fixed(fp)) => match n.as_rational() {
            Some(r) => format_fixed(&r, fp),
            None => format_float(n.to_f64(), fp),
        },
        (n, NumberStyle::Exact) => match n.as_rational() {
            Some(r) => match markup {
                Markup::Mathpar => format_rational(&r),
                Markup::Latex => rational_text(&r, markup),
            },
            None => format_float(n.to_f64(), crate::space::DEFAULT_FLOATPOS),
        },
    }
}

/// Magnitude text of a real coefficient; integral values print as integers.
fn magnitude(n: &Number, style: NumberStyle, markup: Markup) -> String {
    let r = n.as_rational().map(|r| r.abs());
    match (r, style) {
        (Some(r), _) if r.is_integer() => r.numer().to_string(),
        (Some(r), NumberStyle::Exact) => match markup {
            Markup::Mathpar => format!("({})", rational_text(&r, markup)),
            Markup::Latex => rational_text(&r, markup),
        },
        (Some(r), NumberStyle::Fixed(fp)) => format_fixed(&r, fp),
        (None, NumberStyle::Fixed(fp)) => format_float(n.to_f64().abs(), fp),
        (None, NumberStyle::Exact) => {
            format_float(n.to_f64().abs(), crate::space::DEFAULT_FLOATPOS)
        }
    }
}

fn monomial_text(exps: &[u32], vars: &[String], markup: Markup) -> String {
    let mut out = String::new();
    let mut prev_long = false;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = &vars[i];
        let long = name.chars().count() > 1;
        if !out.is_empty() && (long || prev_long) {
            out.push_str(match markup {
                Markup::Mathpar => "*",
                Markup::Latex => " ",
            });
        }
        out.push_str(name);
        if e > 1 {
            match markup {
                Markup::Mathpar => out.push_str(&format!("^{e}")),
                Markup::Latex => out.push_str(&format!("^{{{e}}}")),
            }
        }
        prev_long = long;
    }
    out
}

fn renders_zero(n: &Number, style: NumberStyle) -> bool {
    match style {
        NumberStyle::Exact => false,
        NumberStyle::Fixed(fp) => {
            let c = n.to_complex();
            rounds_to_zero(c.re, fp) && rounds_to_zero(c.im, fp)
        }
    }
}

/// Terms from the leading one down, joined without spaces:
/// `8x^6+12x^4+6x^2+1`, `(8/7)x^7+(12/5)x^5+2x^3+x`.
pub fn format_polynomial(
    p: &Polynomial<Number>,
    vars: &[String],
    style: NumberStyle,
    markup: Markup,
) -> String {
    let mut out = String::new();
    for (m, c) in p.terms() {
        if renders_zero(c, style) {
            continue;
        }
        let mono = monomial_text(m.exponents(), vars, markup);
        let complex = !c.is_real();
        if complex {
            if !out.is_empty() {
                out.push('+');
            }
            let fp = match style {
                NumberStyle::Fixed(fp) => fp,
                NumberStyle::Exact => crate::space::DEFAULT_FLOATPOS,
            };
            let text = format_complex(c.to_complex(), fp, markup.imaginary_unit());
            out.push_str(&text);
            out.push_str(&mono);
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let unit = c.abs().as_rational().is_some_and(|r| One::is_one(&r));
        if mono.is_empty() {
            out.push_str(&magnitude(c, style, markup));
        } else {
            if !unit {
                out.push_str(&magnitude(c, style, markup));
            }
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64, d: i64) -> Number {
        Number::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn exact_coefficients() {
        let p = Polynomial::from_terms(
            1,
            [
                (Monomial::variable(1, 0, 7), q(8, 7)),
                (Monomial::variable(1, 0, 5), q(12, 5)),
                (Monomial::variable(1, 0, 3), q(2, 1)),
                (Monomial::variable(1, 0, 1), q(1, 1)),
            ],
        );
        let v = vars(&["x"]);
        assert_eq!(
            format_polynomial(&p, &v, NumberStyle::Exact, Markup::Mathpar),
            "(8/7)x^7+(12/5)x^5+2x^3+x"
        );
        assert_eq!(
            format_polynomial(&p, &v, NumberStyle::Exact, Markup::Latex),
            "\\frac{8}{7}x^{7}+\\frac{12}{5}x^{5}+2x^{3}+x"
        );
        assert_eq!(
            format_polynomial(&p.neg(), &v, NumberStyle::Exact, Markup::Mathpar),
            "-(8/7)x^7-(12/5)x^5-2x^3-x"
        );
    }

    #[test]
    fn variables_in_declared_order() {
        let p = Polynomial::from_terms(
            3,
            [
                (Monomial::from_exponents(vec![0, 0, 2]), q(1, 1)),
                (Monomial::from_exponents(vec![4, 1, 0]), q(-1, 1)),
                (Monomial::one(3), q(9, 1)),
            ],
        );
        assert_eq!(
            format_polynomial(
                &p,
                &vars(&["x", "y", "z"]),
                NumberStyle::Exact,
                Markup::Mathpar
            ),
            "z^2-x^4y+9"
        );
    }

    #[test]
    fn fixed_style() {
        let p = Polynomial::from_terms(
            1,
            [
                (Monomial::variable(1, 0, 1), Number::Real(0.5)),
                (Monomial::one(1), Number::Real(3.0)),
            ],
        );
        assert_eq!(
            format_polynomial(&p, &vars(&["x"]), NumberStyle::Fixed(2), Markup::Mathpar),
            "0.50x+3"
        );
        assert_eq!(
            format_number(
                &Number::from_int(46),
                NumberStyle::Fixed(2),
                Markup::Mathpar
            ),
            "46.00"
        );
        assert_eq!(
            format_number(&q(5, 6), NumberStyle::Exact, Markup::Mathpar),
            "5/6"
        );
        assert_eq!(
            format_polynomial(
                &Polynomial::zero(1),
                &vars(&["x"]),
                NumberStyle::Exact,
                Markup::Mathpar
            ),
            "0"
        );
    }

    #[test]
    fn long_names_get_explicit_products() {
        let p = Polynomial::monomial(Monomial::from_exponents(vec![1, 2]), q(3, 1));
        assert_eq!(
            format_polynomial(&p, &vars(&["a1", "b"]), NumberStyle::Exact, Markup::Mathpar),
            "3a1*b^2"
        );
    }
}
