//! The simplifier behind `\Factor`: trig/log identities on expressions and
//! rational factorization of polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::expr::{Expr, Func, Poly};
use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::univariate as dense;
use crate::cancel::CancelToken;
use crate::space::{Coefficient, Number};

/// `unit · Π factor^multiplicity`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub unit: Number,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, nvars: usize) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(nvars, self.unit.clone()), |acc, (f, m)| {
                acc.mul(&f.pow(*m))
            })
    }

    pub fn to_expr(&self, nvars: usize) -> Expr {
        let mut items: Vec<Expr> = Vec::new();
        if !self.unit.is_one() || self.factors.is_empty() {
            items.push(Expr::constant(nvars, self.unit.clone()));
        }
        for (f, m) in &self.factors {
            let e = Expr::Poly(f.clone());
            items.push(if *m == 1 {
                e
            } else {
                Expr::Power(Box::new(e), *m)
            });
        }
        if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Product(items)
        }
    }
}

fn to_rational_poly(p: &Poly) -> Option<Polynomial<BigRational>> {
    p.try_map_coefficients(|c| c.as_rational().ok_or(())).ok()
}

fn from_rational_poly(p: &Polynomial<BigRational>) -> Poly {
    p.map_coefficients(|c| Number::Rational(c.clone()))
}

/// Integer, content-free version of `p` with positive leading coefficient.
fn primitive(p: &Polynomial<BigRational>) -> Polynomial<BigRational> {
    let den = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled = p.scale(&BigRational::from_integer(den));
    let mut g = scaled
        .terms()
        .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()));
    if scaled
        .leading_coefficient()
        .is_some_and(|c| c.is_negative())
    {
        g = -g;
    }
    if g.is_zero() {
        return scaled;
    }
    scaled.scale(&BigRational::new(BigInt::one(), g))
}

fn univariate_to_poly(nvars: usize, slot: usize, d: &[BigRational]) -> Polynomial<BigRational> {
    Polynomial::from_univariate(nvars, slot, d)
}

/// Candidate quadratic factors from pairs of numeric roots, checked by exact
/// division.
fn split_quadratics(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut rest = dense::trim(p.to_vec());
    let mut out = Vec::new();
    while let Some(deg) = dense::degree(&rest) {
        if deg < 4 {
            break;
        }
        let coeffs: Vec<Complex64> = rest
            .iter()
            .map(|c| Complex64::new(crate::space::rational_to_f64(c), 0.0))
            .collect();
        let Ok(roots) = crate::solve::roots::durand_kerner(&coeffs, &CancelToken::new()) else {
            break;
        };
        let (_, ints) = dense::primitive_part(&rest);
        let lead = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
        let leads: Vec<BigInt> = match lead.to_u64() {
            Some(l) if l <= 10_000 => (1..=l).filter(|d| l % d == 0).map(BigInt::from).collect(),
            _ => vec![BigInt::one()],
        };
        let mut found = None;
        'search: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let s = roots[i] + roots[j];
                let q = roots[i] * roots[j];
                if s.im.abs() > 1e-6 || q.im.abs() > 1e-6 {
                    continue;
                }
                for a in &leads {
                    let af = a.to_f64().unwrap_or(1.0);
                    let b = (-s.re * af).round();
                    let c = (q.re * af).round();
                    if !b.is_finite() || !c.is_finite() || b.abs() > 1e15 || c.abs() > 1e15 {
                        continue;
                    }
                    let cand = vec![
                        BigRational::from_integer(BigInt::from(c as i64)),
                        BigRational::from_integer(BigInt::from(b as i64)),
                        BigRational::from_integer(a.clone()),
                    ];
                    let (quot, rem) = dense::divrem(&rest, &cand);
                    if rem.is_empty() {
                        found = Some((cand, quot));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((q, quot)) => {
                out.push(q);
                rest = quot;
            }
            None => break,
        }
    }
    out.push(rest);
    out
}

fn factor_univariate(d: &[BigRational]) -> Vec<(Vec<BigRational>, u32)> {
    let mut out = Vec::new();
    for (f, mult) in dense::square_free(d) {
        let mut rest = f;
        for r in dense::rational_roots(&rest) {
            let lin = vec![-r.clone(), <BigRational as One>::one()];
            rest = dense::divrem(&rest, &lin).0;
            out.push((lin, mult));
        }
        if dense::degree(&rest).is_some_and(|deg| deg > 0) {
            for part in split_quadratics(&rest) {
                if dense::degree(&part).is_some_and(|deg| deg > 0) {
                    out.push((part, mult));
                }
            }
        }
    }
    out
}

fn compare_factors(a: &(Poly, u32), b: &(Poly, u32)) -> Ordering {
    let key = |p: &Poly| -> Vec<(Monomial, BigRational)> {
        p.terms()
            .map(|(m, c)| (m.clone(), c.as_rational().unwrap_or_default()))
            .collect()
    };
    (a.0.len() > 1)
        .cmp(&(b.0.len() > 1))
        .then(a.0.total_degree().cmp(&b.0.total_degree()))
        .then_with(|| key(&a.0).cmp(&key(&b.0)))
        .then(a.1.cmp(&b.1))
}

/// Content, monomial content, square-free parts, rational linear factors and
/// rational quadratic factors. Multivariate parts beyond the monomial content
/// are kept whole. `None` when a coefficient is not exactly rational.
pub fn factor_polynomial(p: &Poly) -> Option<Factorization> {
    let n = p.nvars();
    let q = to_rational_poly(p)?;
    if q.is_constant() {
        return Some(Factorization {
            unit: p.constant_value().unwrap_or_else(Number::zero),
            factors: Vec::new(),
        });
    }
    let mut factors: Vec<(Polynomial<BigRational>, u32)> = Vec::new();
    let gcd_mono = q
        .terms()
        .map(|(m, _)| m.clone())
        .reduce(|a, b| a.gcd(&b))
        .unwrap_or_else(|| Monomial::one(n));
    for (i, &e) in gcd_mono.exponents().iter().enumerate() {
        if e > 0 {
            factors.push((Polynomial::variable(n, i), e));
        }
    }
    let reduced = q.exact_div(&Polynomial::monomial(gcd_mono, <BigRational as One>::one()))?;
    if !reduced.is_constant() {
        match reduced.univariate_slot() {
            Some(Some(slot)) => {
                let d = reduced.to_univariate(slot)?;
                for (f, m) in factor_univariate(&d) {
                    factors.push((primitive(&univariate_to_poly(n, slot, &f)), m));
                }
            }
            _ => factors.push((primitive(&reduced), 1)),
        }
    }
    let product = factors
        .iter()
        .fold(Polynomial::<BigRational>::one(n), |acc, (f, m)| {
            acc.mul(&f.pow(*m))
        });
    let unit = q.exact_div(&product)?.constant_value()?;
    let mut out: Vec<(Poly, u32)> = factors
        .iter()
        .map(|(f, m)| (from_rational_poly(f), *m))
        .collect();
    out.sort_by(compare_factors);
    Some(Factorization {
        unit: Number::Rational(unit),
        factors: out,
    })
}

/// exp(ln t) → t and ln(exp t) → t, bottom-up.
fn cancel_inverses(e: &Expr) -> Expr {
    match e {
        Expr::Poly(_) => e.clone(),
        Expr::Apply(f, a) => {
            let a = cancel_inverses(a);
            match (f, &a) {
                (Func::Exp, Expr::Apply(Func::Ln, inner))
                | (Func::Ln, Expr::Apply(Func::Exp, inner)) => (**inner).clone(),
                _ => Expr::apply(*f, a),
            }
        }
        Expr::Sum(items) => items
            .iter()
            .map(cancel_inverses)
            .reduce(|a, b| a.add(&b))
            .unwrap_or_else(|| e.clone()),
        Expr::Product(items) => items
            .iter()
            .map(cancel_inverses)
            .reduce(|a, b| a.mul(&b))
            .unwrap_or_else(|| e.clone()),
        Expr::Power(b, k) => cancel_inverses(b).pow(*k),
        Expr::Quotient(a, b) => {
            let (a, b) = (cancel_inverses(a), cancel_inverses(b));
            a.div(&b)
                .unwrap_or(Expr::Quotient(Box::new(a), Box::new(b)))
        }
    }
}

/// Function applications treated as extra polynomial variables.
struct Kernels {
    base: usize,
    list: Vec<(Func, Expr)>,
}

impl Kernels {
    fn collect(&mut self, e: &Expr) {
        match e {
            Expr::Poly(_) => {}
            Expr::Apply(f, a) => {
                let key = (*f, (**a).clone());
                if !self.list.contains(&key) {
                    self.list.push(key);
                }
            }
            Expr::Sum(items) | Expr::Product(items) => items.iter().for_each(|i| self.collect(i)),
            Expr::Power(b, _) => self.collect(b),
            Expr::Quotient(a, b) => {
                self.collect(a);
                self.collect(b);
            }
        }
    }

    fn width(&self) -> usize {
        self.base + self.list.len()
    }

    fn to_poly(&self, e: &Expr) -> Option<Poly> {
        let w = self.width();
        Some(match e {
            Expr::Poly(p) => p.remap(w, &(0..self.base).collect::<Vec<_>>()),
            Expr::Apply(f, a) => {
                let k = self.list.iter().position(|(g, b)| g == f && b == &**a)?;
                Poly::variable(w, self.base + k)
            }
            Expr::Sum(items) => {
                let mut acc = Poly::zero(w);
                for i in items {
                    acc = acc.add(&self.to_poly(i)?);
                }
                acc
            }
            Expr::Product(items) => {
                let mut acc = Poly::one(w);
                for i in items {
                    acc = acc.mul(&self.to_poly(i)?);
                }
                acc
            }
            Expr::Power(b, k) => self.to_poly(b)?.pow(*k),
            Expr::Quotient(a, b) => {
                let d = self.to_poly(b)?.constant_value()?;
                self.to_poly(a)?.scale(&d.inverse()?)
            }
        })
    }

    /// Reduces modulo sin(u)^2 + cos(u)^2 - 1 for every argument u carrying
    /// both kernels, with sin the more significant variable.
    fn reduce_pythagorean(&self, p: &Poly) -> Poly {
        let w = self.width();
        let mut p = p.clone();
        for (si, (f, u)) in self.list.iter().enumerate() {
            if *f != Func::Sin {
                continue;
            }
            let Some(ci) = self
                .list
                .iter()
                .position(|(g, v)| *g == Func::Cos && v == u)
            else {
                continue;
            };
            let (s, c) = (self.base + si, self.base + ci);
            loop {
                let Some((m, coeff)) = p
                    .terms()
                    .find(|(m, _)| m.exponent(s) >= 2)
                    .map(|(m, c)| (m.clone(), c.clone()))
                else {
                    break;
                };
                let mut exps = m.exponents().to_vec();
                exps[s] -= 2;
                let rest = Monomial::from_exponents(exps.clone());
                let mut with_c = exps;
                with_c[c] += 2;
                // s^2 m' = (1 - c^2) m'
                p = p
                    .sub(&Poly::monomial(m, coeff.clone()))
                    .add(&Poly::monomial(rest, coeff.clone()))
                    .sub(&Poly::monomial(Monomial::from_exponents(with_c), coeff));
            }
        }
        debug_assert_eq!(p.nvars(), w);
        p
    }

    /// Back to an expression, merging `c·ln a + c·ln b` into `c·ln(ab)`.
    fn to_expr(&self, p: &Poly) -> Expr {
        let n = self.base;
        let mut out = Expr::Poly(Poly::zero(n));
        let mut logs: Vec<(Number, Expr)> = Vec::new();
        for (m, c) in p.terms() {
            if let Some((k, 1)) = m.as_pure_power() {
                if k >= n && self.list[k - n].0 == Func::Ln {
                    let arg = self.list[k - n].1.clone();
                    match logs.iter_mut().find(|(d, _)| d == c) {
                        Some((_, acc)) => *acc = acc.mul(&arg),
                        None => logs.push((c.clone(), arg)),
                    }
                    continue;
                }
            }
            let base = Monomial::from_exponents(m.exponents()[..n].to_vec());
            let mut term = Expr::Poly(Poly::monomial(base, c.clone()));
            for (k, &e) in m.exponents()[n..].iter().enumerate() {
                if e > 0 {
                    let (f, a) = &self.list[k];
                    term = term.mul(&Expr::apply(*f, a.clone()).pow(e));
                }
            }
            out = out.add(&term);
        }
        for (c, arg) in logs {
            out = out.add(&Expr::constant(n, c).mul(&Expr::apply(Func::Ln, arg)));
        }
        out
    }
}

/// Applies the simplification identities, then factors what is left if it is
/// a plain polynomial. Returns the input unchanged when nothing applies.
pub fn factor_expr(e: &Expr) -> Expr {
    let n = e.nvars();
    let e = simplify_arguments(&cancel_inverses(e));
    let mut kernels = Kernels {
        base: n,
        list: Vec::new(),
    };
    kernels.collect(&e);
    let Some(p) = kernels.to_poly(&e) else {
        return match &e {
            Expr::Quotient(a, b) => {
                Expr::Quotient(Box::new(factor_expr(a)), Box::new(factor_expr(b)))
            }
            other => other.clone(),
        };
    };
    let reduced = kernels.reduce_pythagorean(&p);
    let simplified = kernels.to_expr(&reduced);
    match &simplified {
        Expr::Poly(q) => factor_polynomial(q).map_or(simplified.clone(), |f| f.to_expr(n)),
        _ => simplified,
    }
}

fn simplify_arguments(e: &Expr) -> Expr {
    match e {
        Expr::Poly(_) => e.clone(),
        Expr::Apply(f, a) => {
            let inner = simplify_arguments(a);
            Expr::apply(*f, expand_factored(&factor_expr(&inner)))
        }
        Expr::Sum(items) => Expr::Sum(items.iter().map(simplify_arguments).collect()),
        Expr::Product(items) => Expr::Product(items.iter().map(simplify_arguments).collect()),
        Expr::Power(b, k) => Expr::Power(Box::new(simplify_arguments(b)), *k),
        Expr::Quotient(a, b) => Expr::Quotient(
            Box::new(simplify_arguments(a)),
            Box::new(simplify_arguments(b)),
        ),
    }
}

/// Re-multiplies factored output so kernel arguments compare structurally.
fn expand_factored(e: &Expr) -> Expr {
    match e {
        Expr::Product(items) => items
            .iter()
            .map(expand_factored)
            .reduce(|a, b| a.mul(&b))
            .unwrap_or_else(|| e.clone()),
        Expr::Power(b, k) => expand_factored(b).pow(*k),
        other => other.clone(),
    }
}
