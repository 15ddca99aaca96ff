//! Symbolic expressions over polynomials and the elementary functions.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use super::format::{format_number, format_polynomial, Markup, NumberStyle};
use super::polynomial::Polynomial;
use crate::space::{Coefficient, Number};

pub type Poly = Polynomial<Number>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("{0} is undefined at this point")]
    UndefinedValue(String),
    #[error("\\value takes at most {expected} substitutions, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("only polynomials can be integrated")]
    NonPolynomialIntegrand,
    #[error("unsupported function '{0}'")]
    UnsupportedFunction(String),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Sin,
    Cos,
    Tg,
    Ctg,
    Ln,
    Exp,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tg" => Func::Tg,
            "ctg" => Func::Ctg,
            "ln" => Func::Ln,
            "exp" => Func::Exp,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tg => "tg",
            Func::Ctg => "ctg",
            Func::Ln => "ln",
            Func::Exp => "exp",
        }
    }

    fn latex_name(self) -> &'static str {
        match self {
            Func::Sin => "\\sin",
            Func::Cos => "\\cos",
            Func::Tg => "\\operatorname{tg}",
            Func::Ctg => "\\operatorname{ctg}",
            Func::Ln => "\\ln",
            Func::Exp => "\\exp",
        }
    }

    /// Numeric evaluation; tg and ctg go through sin/cos.
    pub fn apply(self, x: &Number) -> Result<Number, ExprError> {
        let undefined = || ExprError::UndefinedValue(format!("\\{}", self.name()));
        if let Number::Complex(z) = x {
            if z.im != 0.0 {
                let z = *z;
                let v = match self {
                    Func::Sin => z.sin(),
                    Func::Cos => z.cos(),
                    Func::Tg | Func::Ctg => {
                        let (s, c) = (z.sin(), z.cos());
                        let (n, d) = if self == Func::Tg { (s, c) } else { (c, s) };
                        if d.norm() < 1e-15 {
                            return Err(undefined());
                        }
                        n / d
                    }
                    Func::Ln => {
                        if z.norm() == 0.0 {
                            return Err(undefined());
                        }
                        z.ln()
                    }
                    Func::Exp => z.exp(),
                };
                return Ok(Number::Complex(v));
            }
        }
        let t = x.to_f64();
        let v = match self {
            Func::Sin => t.sin(),
            Func::Cos => t.cos(),
            Func::Tg | Func::Ctg => {
                let (s, c) = t.sin_cos();
                let (n, d) = if self == Func::Tg { (s, c) } else { (c, s) };
                if d.abs() < 1e-15 {
                    return Err(undefined());
                }
                n / d
            }
            Func::Ln => {
                if t <= 0.0 {
                    return Err(undefined());
                }
                t.ln()
            }
            Func::Exp => t.exp(),
        };
        if !v.is_finite() {
            return Err(undefined());
        }
        Ok(Number::Real(v))
    }
}

/// Expression tree. Built through the arithmetic methods, which keep
/// polynomial parts merged; the raw variants are used for factored output.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Poly(Poly),
    Apply(Func, Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Quotient(Box<Expr>, Box<Expr>),
}

impl From<Poly> for Expr {
    fn from(p: Poly) -> Self {
        Expr::Poly(p)
    }
}

impl Expr {
    pub fn constant(nvars: usize, n: Number) -> Expr {
        Expr::Poly(Poly::constant(nvars, n))
    }

    pub fn nvars(&self) -> usize {
        match self {
            Expr::Poly(p) => p.nvars(),
            Expr::Apply(_, a) | Expr::Power(a, _) | Expr::Quotient(a, _) => a.nvars(),
            Expr::Sum(v) | Expr::Product(v) => v.first().map_or(0, Expr::nvars),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Expr::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn constant_value(&self) -> Option<Number> {
        self.as_poly().and_then(Poly::constant_value)
    }

    pub fn is_zero(&self) -> bool {
        self.as_poly().is_some_and(Poly::is_zero)
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Expr::Apply(f, Box::new(arg))
    }

    /// True when some space variable occurs.
    pub fn has_variables(&self) -> bool {
        match self {
            Expr::Poly(p) => !p.is_constant(),
            Expr::Apply(_, a) | Expr::Power(a, _) => a.has_variables(),
            Expr::Quotient(a, b) => a.has_variables() || b.has_variables(),
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(Expr::has_variables),
        }
    }

    pub fn add(&self, other: &Expr) -> Expr {
        let nvars = self.nvars().max(other.nvars());
        let mut poly = Poly::zero(nvars);
        let mut rest = Vec::new();
        for e in [self, other] {
            match e {
                Expr::Poly(p) => poly = poly.add(p),
                Expr::Sum(items) => {
                    for i in items {
                        match i {
                            Expr::Poly(p) => poly = poly.add(p),
                            other => rest.push(other.clone()),
                        }
                    }
                }
                other => rest.push(other.clone()),
            }
        }
        if rest.is_empty() {
            return Expr::Poly(poly);
        }
        if !poly.is_zero() {
            rest.insert(0, Expr::Poly(poly));
        }
        if rest.len() == 1 {
            rest.pop().unwrap()
        } else {
            Expr::Sum(rest)
        }
    }

    pub fn neg(&self) -> Expr {
        match self {
            Expr::Poly(p) => Expr::Poly(p.neg()),
            Expr::Sum(items) => Expr::Sum(items.iter().map(Expr::neg).collect()),
            other => Expr::constant(other.nvars(), Number::from_int(-1)).mul(other),
        }
    }

    pub fn sub(&self, other: &Expr) -> Expr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Expr) -> Expr {
        let nvars = self.nvars().max(other.nvars());
        let mut poly = Poly::one(nvars);
        let mut rest = Vec::new();
        for e in [self, other] {
            match e {
                Expr::Poly(p) => poly = poly.mul(p),
                Expr::Product(items) => {
                    for i in items {
                        match i {
                            Expr::Poly(p) => poly = poly.mul(p),
                            other => rest.push(other.clone()),
                        }
                    }
                }
                other => rest.push(other.clone()),
            }
        }
        if poly.is_zero() || rest.is_empty() {
            return Expr::Poly(poly);
        }
        let unit = poly.constant_value().is_some_and(|c| c.is_one());
        if !unit {
            rest.insert(0, Expr::Poly(poly));
        }
        if rest.len() == 1 {
            rest.pop().unwrap()
        } else {
            Expr::Product(rest)
        }
    }

    pub fn pow(&self, n: u32) -> Expr {
        match (self, n) {
            (_, 0) => Expr::Poly(Poly::one(self.nvars())),
            (e, 1) => e.clone(),
            (Expr::Poly(p), n) => Expr::Poly(p.pow(n)),
            (Expr::Power(b, k), n) => Expr::Power(b.clone(), k * n),
            (e, n) => Expr::Power(Box::new(e.clone()), n),
        }
    }

    pub fn div(&self, other: &Expr) -> Result<Expr, ExprError> {
        if other.is_zero() {
            return Err(ExprError::DivisionByZero);
        }
        if let Some(c) = other.constant_value() {
            let inv = c.inverse().ok_or(ExprError::DivisionByZero)?;
            return Ok(self.mul(&Expr::constant(self.nvars(), inv)));
        }
        if let (Expr::Poly(a), Expr::Poly(b)) = (self, other) {
            if let Some(q) = a.exact_div(b) {
                return Ok(Expr::Poly(q));
            }
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(Expr::Quotient(
            Box::new(self.clone()),
            Box::new(other.clone()),
        ))
    }

    /// Numeric value at a full point.
    pub fn evaluate(&self, point: &[Number]) -> Result<Number, ExprError> {
        Ok(match self {
            Expr::Poly(p) => p.evaluate(point),
            Expr::Apply(f, a) => f.apply(&a.evaluate(point)?)?,
            Expr::Sum(items) => {
                let mut acc = Number::zero();
                for i in items {
                    acc = acc.plus(&i.evaluate(point)?);
                }
                acc
            }
            Expr::Product(items) => {
                let mut acc = Number::one();
                for i in items {
                    acc = acc.times(&i.evaluate(point)?);
                }
                acc
            }
            Expr::Power(b, n) => {
                let b = b.evaluate(point)?;
                (0..*n).fold(Number::one(), |acc, _| acc.times(&b))
            }
            Expr::Quotient(a, b) => {
                let d = b.evaluate(point)?;
                a.evaluate(point)?
                    .times(&d.inverse().ok_or(ExprError::DivisionByZero)?)
            }
        })
    }

    /// Replaces variable `i` by `subs[i]` where given, simultaneously.
    pub fn substitute(&self, subs: &[Option<Expr>]) -> Expr {
        match self {
            Expr::Poly(p) => {
                let n = p.nvars();
                let mut acc = Expr::Poly(Poly::zero(n));
                for (m, c) in p.terms() {
                    let mut term = Expr::constant(n, c.clone());
                    for (i, &e) in m.exponents().iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        let base = match subs.get(i) {
                            Some(Some(s)) => s.clone(),
                            _ => Expr::Poly(Poly::variable(n, i)),
                        };
                        term = term.mul(&base.pow(e));
                    }
                    acc = acc.add(&term);
                }
                acc
            }
            Expr::Apply(f, a) => Expr::apply(*f, a.substitute(subs)),
            Expr::Sum(items) => items
                .iter()
                .fold(Expr::Poly(Poly::zero(self.nvars())), |acc, i| {
                    acc.add(&i.substitute(subs))
                }),
            Expr::Product(items) => items
                .iter()
                .fold(Expr::Poly(Poly::one(self.nvars())), |acc, i| {
                    acc.mul(&i.substitute(subs))
                }),
            Expr::Power(b, n) => b.substitute(subs).pow(*n),
            Expr::Quotient(a, b) => {
                let (a, b) = (a.substitute(subs), b.substitute(subs));
                a.div(&b)
                    .unwrap_or_else(|_| Expr::Quotient(Box::new(a), Box::new(b)))
            }
        }
    }

    /// First derivative in variable slot `index`.
    pub fn derivative(&self, index: usize) -> Expr {
        let n = self.nvars();
        let zero = || Expr::Poly(Poly::zero(n));
        match self {
            Expr::Poly(p) => Expr::Poly(p.derivative(index)),
            Expr::Apply(f, a) => {
                let da = a.derivative(index);
                if da.is_zero() {
                    return zero();
                }
                let outer = match f {
                    Func::Sin => Expr::apply(Func::Cos, (**a).clone()),
                    Func::Cos => Expr::apply(Func::Sin, (**a).clone()).neg(),
                    Func::Tg => Expr::Quotient(
                        Box::new(Expr::constant(n, Number::one())),
                        Box::new(Expr::apply(Func::Cos, (**a).clone()).pow(2)),
                    ),
                    Func::Ctg => Expr::Quotient(
                        Box::new(Expr::constant(n, Number::from_int(-1))),
                        Box::new(Expr::apply(Func::Sin, (**a).clone()).pow(2)),
                    ),
                    Func::Ln => {
                        return da.div(a).unwrap_or_else(|_| zero());
                    }
                    Func::Exp => self.clone(),
                };
                outer.mul(&da)
            }
            Expr::Sum(items) => items
                .iter()
                .fold(zero(), |acc, i| acc.add(&i.derivative(index))),
            Expr::Product(items) => {
                let mut acc = zero();
                for k in 0..items.len() {
                    let mut term = items[k].derivative(index);
                    for (j, other) in items.iter().enumerate() {
                        if j != k {
                            term = term.mul(other);
                        }
                    }
                    acc = acc.add(&term);
                }
                acc
            }
            Expr::Power(b, k) => Expr::constant(n, Number::from_int(*k as i64))
                .mul(&b.pow(k - 1))
                .mul(&b.derivative(index)),
            Expr::Quotient(a, b) => {
                let num = a.derivative(index).mul(b).sub(&a.mul(&b.derivative(index)));
                if num.is_zero() {
                    return zero();
                }
                Expr::Quotient(Box::new(num), Box::new(b.pow(2)))
            }
        }
    }

    pub fn render(&self, vars: &[String], style: NumberStyle, markup: Markup) -> String {
        Renderer {
            vars,
            style,
            markup,
        }
        .expr(self)
    }
}

struct Renderer<'a> {
    vars: &'a [String],
    style: NumberStyle,
    markup: Markup,
}

impl Renderer<'_> {
    fn poly(&self, p: &Poly) -> String {
        match p.constant_value() {
            Some(c) if self.style != NumberStyle::Exact && !c.is_integer() => {
                format_number(&c, self.style, self.markup)
            }
            _ => format_polynomial(p, self.vars, self.style, self.markup),
        }
    }

    fn expr(&self, e: &Expr) -> String {
        match e {
            Expr::Poly(p) => self.poly(p),
            Expr::Apply(f, a) => match self.markup {
                Markup::Mathpar => format!("\\{}({})", f.name(), self.expr(a)),
                Markup::Latex => format!("{}\\left({}\\right)", f.latex_name(), self.expr(a)),
            },
            Expr::Sum(items) => {
                let mut out = String::new();
                for (k, i) in items.iter().enumerate() {
                    let s = self.expr(i);
                    if k > 0 && !s.starts_with('-') {
                        out.push('+');
                    }
                    out.push_str(&s);
                }
                out
            }
            Expr::Product(items) => {
                let mut out = String::new();
                for (k, i) in items.iter().enumerate() {
                    if k == 0 {
                        if let Some(c) = i.constant_value() {
                            if c == Number::from_int(-1) {
                                out.push('-');
                                continue;
                            }
                        }
                    }
                    let s = self.factor(i, k == 0);
                    if self.markup == Markup::Latex && !out.is_empty() && !out.ends_with('-') {
                        out.push(' ');
                    } else if self.markup == Markup::Mathpar
                        && s.starts_with(|c: char| c.is_ascii_digit())
                        && !out.is_empty()
                        && !out.ends_with('-')
                    {
                        out.push('*');
                    }
                    out.push_str(&s);
                }
                out
            }
            Expr::Power(b, n) => match self.markup {
                Markup::Mathpar => format!("{}^{n}", self.base(b)),
                Markup::Latex => format!("{}^{{{n}}}", self.base(b)),
            },
            Expr::Quotient(a, b) => match self.markup {
                Markup::Mathpar => format!("{}/{}", self.factor(a, true), self.base(b)),
                Markup::Latex => format!("\\frac{{{}}}{{{}}}", self.expr(a), self.expr(b)),
            },
        }
    }

    fn needs_parens_as_factor(&self, e: &Expr, first: bool) -> bool {
        match e {
            Expr::Poly(p) => p.len() > 1 || (!first && self.poly(p).starts_with('-')),
            Expr::Sum(_) | Expr::Quotient(..) => true,
            Expr::Product(_) => !first,
            _ => false,
        }
    }

    fn factor(&self, e: &Expr, first: bool) -> String {
        let s = self.expr(e);
        if self.needs_parens_as_factor(e, first) {
            self.markup.paren(&s)
        } else {
            s
        }
    }

    /// Power bases stay bare only for single variables and function calls.
    fn base(&self, e: &Expr) -> String {
        let bare = match e {
            Expr::Apply(..) => self.markup == Markup::Mathpar,
            Expr::Poly(p) => {
                p.len() == 1
                    && p.leading_term().is_some_and(|(m, c)| {
                        m.as_pure_power().is_some_and(|(_, k)| k == 1) && c.is_one()
                    })
                    || p.constant_value()
                        .is_some_and(|c| !c.is_negative() && c.is_integer())
            }
            _ => false,
        };
        let s = self.expr(e);
        if bare {
            s
        } else {
            self.markup.paren(&s)
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Complex-valued evaluation used by numeric solvers.
pub fn evaluate_complex(p: &Poly, point: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut t = c.to_complex();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t *= point[i].powu(e);
            }
        }
        acc += t;
    }
    acc
}
