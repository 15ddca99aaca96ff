//! Sparse multivariate polynomials over any [`Coefficient`].

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::monomial::Monomial;
use crate::space::Coefficient;

/// Terms keyed by monomial; no stored coefficient is zero. Iteration via
/// [`Polynomial::terms`] runs from the leading term down.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<C: Coefficient> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        Self::monomial(Monomial::variable(nvars, index, 1), C::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial in slot `index` from ascending coefficients.
    pub fn from_univariate(nvars: usize, index: usize, ascending: &[C]) -> Self {
        Self::from_terms(
            nvars,
            ascending
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::variable(nvars, index, k as u32), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::one(self.nvars)).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(index))
            .max()
            .unwrap_or(0)
    }

    /// Slots whose variable occurs in some term.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    /// The single slot this polynomial depends on, if it depends on at most one.
    pub fn univariate_slot(&self) -> Option<Option<usize>> {
        match self.variables_used().as_slice() {
            [] => Some(None),
            [i] => Some(Some(*i)),
            _ => None,
        }
    }

    /// Ascending coefficients in slot `index`; `None` if other slots occur.
    pub fn to_univariate(&self, index: usize) -> Option<Vec<C>> {
        let mut out = vec![C::zero(); self.degree_in(index) as usize + 1];
        for (m, c) in &self.terms {
            if (0..self.nvars).any(|i| i != index && m.exponent(i) > 0) {
                return None;
            }
            out[m.exponent(index) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().plus(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.negated());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.times(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        self.map_coefficients(|x| x.times(c))
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(k, v)| (k.mul(m), v.times(c))),
        )
    }

    /// Repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn try_map_coefficients<D: Coefficient, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<Polynomial<D>, E> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Moves variable slot `i` to `map[i]` among `nvars` slots.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        Self::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.remap(nvars, map), c.clone())),
        )
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = t.times(&point[i]);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    pub fn derivative(&self, index: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(index) > 0)
                .map(|(m, c)| {
                    let e = m.exponent(index);
                    let mut exps = m.exponents().to_vec();
                    exps[index] -= 1;
                    (
                        Monomial::from_exponents(exps),
                        c.times(&C::from_i64(e as i64)),
                    )
                }),
        )
    }

    /// Antiderivative in slot `index` with zero constant. Coefficients are
    /// divided by the new exponent, so `C` must divide by integers.
    pub fn integrate(&self, index: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| {
                let e = m.exponent(index) + 1;
                let mut exps = m.exponents().to_vec();
                exps[index] = e;
                let inv = C::from_rational(&BigRational::new(1.into(), (e as i64).into()));
                (Monomial::from_exponents(exps), c.times(&inv))
            }),
        )
    }

    /// Divides by a monic-leading `divisor` if the division is exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c.times(&lc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    fn x(n: usize, i: usize) -> Polynomial<Q> {
        Polynomial::variable(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial<Q> {
        Polynomial::constant(n, q(v, 1))
    }

    #[test]
    fn cube_expands() {
        let f = c(1, 2).mul(&x(1, 0).pow(2)).add(&c(1, 1)).pow(3);
        assert_eq!(
            f.to_univariate(0).unwrap(),
            [1, 0, 6, 0, 12, 0, 8].map(|v| q(v, 1)).to_vec()
        );
    }

    #[test]
    fn ring_identities() {
        let (a, b) = (x(2, 0), x(2, 1));
        assert_eq!(a.add(&Polynomial::zero(2)), a);
        assert_eq!(a.add(&b).mul(&a.sub(&b)), a.pow(2).sub(&b.pow(2)));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn calculus() {
        let f = c(1, 2).mul(&x(1, 0).pow(2)).add(&c(1, 1)).pow(3);
        let l = f.integrate(0);
        assert_eq!(l.coefficient(&Monomial::variable(1, 0, 7)), q(8, 7));
        assert_eq!(l.coefficient(&Monomial::variable(1, 0, 5)), q(12, 5));
        assert_eq!(l.derivative(0), f);
        // ∫ x dy = xy
        assert_eq!(x(2, 0).integrate(1), x(2, 0).mul(&x(2, 1)));
        assert!(Polynomial::<Q>::zero(1).integrate(0).is_zero());
    }

    #[test]
    fn evaluation() {
        // x^2 + 5x(y^3 + x) at (1, 2)
        let (a, b) = (x(2, 0), x(2, 1));
        let f = a.pow(2).add(&c(2, 5).mul(&a).mul(&b.pow(3).add(&a)));
        assert_eq!(f.evaluate(&[q(1, 1), q(2, 1)]), q(46, 1));
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = a.pow(2).sub(&b.pow(2));
        assert_eq!(p.exact_div(&a.sub(&b)), Some(a.add(&b)));
        assert_eq!(p.exact_div(&a), None);
        assert!(Zero::is_zero(&c(1, 0).constant_value().unwrap()));
    }
}
