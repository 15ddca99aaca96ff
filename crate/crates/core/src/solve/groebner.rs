//! Buchberger's algorithm over Q in the lexicographic order with the last
//! declared variable most significant.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cancel::{CancelToken, Cancelled};
use crate::poly::{Monomial, Polynomial};

pub type QPoly = Polynomial<BigRational>;

/// Normal form of `f` modulo `divisors` together with the quotients, so that
/// `f = Σ q_i·g_i + remainder`.
pub fn reduce_with_quotients(
    f: &QPoly,
    divisors: &[QPoly],
    cancel: &CancelToken,
) -> Result<(QPoly, Vec<QPoly>), Cancelled> {
    let n = f.nvars();
    let mut quotients = vec![QPoly::zero(n); divisors.len()];
    let mut p = f.clone();
    let mut remainder = QPoly::zero(n);
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        cancel.check()?;
        let hit = divisors
            .iter()
            .enumerate()
            .find(|(_, g)| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match hit {
            Some((i, g)) => {
                let (lm, lc) = g.leading_term().expect("nonzero divisor");
                let qm = lm.quotient_of(&m);
                let qc = &c / lc;
                p = p.sub(&g.mul_term(&qm, &qc));
                quotients[i].add_term(qm, qc);
            }
            None => {
                p = p.sub(&QPoly::monomial(m.clone(), c.clone()));
                remainder.add_term(m, c);
            }
        }
    }
    Ok((remainder, quotients))
}

pub fn reduce(f: &QPoly, divisors: &[QPoly], cancel: &CancelToken) -> Result<QPoly, Cancelled> {
    Ok(reduce_with_quotients(f, divisors, cancel)?.0)
}

pub fn s_polynomial(f: &QPoly, g: &QPoly) -> QPoly {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    f.mul_term(&mf.quotient_of(&l), &cf.recip())
        .sub(&g.mul_term(&mg.quotient_of(&l), &cg.recip()))
}

fn monic(p: &QPoly) -> QPoly {
    match p.leading_coefficient() {
        Some(c) => p.scale(&c.recip()),
        None => p.clone(),
    }
}

/// Integer coefficients with content 1 and a positive leading coefficient.
pub fn normalize_integer(p: &QPoly) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
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
    scaled.scale(&BigRational::new(BigInt::one(), g))
}

/// Reduced Gröbner basis of the ideal generated by `inputs`, each generator
/// normalized by [`normalize_integer`] and sorted by descending leading
/// monomial. The unit ideal yields `[1]`; the zero ideal yields `[]`.
pub fn groebner_basis(inputs: &[QPoly], cancel: &CancelToken) -> Result<Vec<QPoly>, Cancelled> {
    let mut g: Vec<QPoly> = inputs.iter().filter(|p| !p.is_zero()).map(monic).collect();
    if g.is_empty() {
        return Ok(Vec::new());
    }
    let lm = |p: &QPoly| p.leading_monomial().expect("nonzero").clone();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        cancel.check()?;
        // Normal selection strategy: the pair with the smallest lcm.
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                lm(&g[a.0])
                    .lcm(&lm(&g[a.1]))
                    .cmp(&lm(&g[b.0]).lcm(&lm(&g[b.1])))
                    .then(a.cmp(b))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        let (li, lj) = (lm(&g[i]), lm(&g[j]));
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && lm(&g[k]).divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&g[i], &g[j]), &g, cancel)?;
        if !r.is_zero() {
            let r = monic(&r);
            if r.is_constant() {
                return Ok(vec![QPoly::one(r.nvars())]);
            }
            let k = g.len();
            g.push(r);
            for i in 0..k {
                pairs.insert((i, k));
            }
        }
    }
    // Minimize, then inter-reduce.
    let mut minimal: Vec<QPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let m = lm(p);
        let dominated = g.iter().enumerate().any(|(j, q)| {
            let lq = lm(q);
            j != i && lq.divides(&m) && (lq != m || j < i)
        });
        if !dominated {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<QPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        reduced.push(normalize_integer(&reduce(&minimal[i], &others, cancel)?));
    }
    reduced.sort_by_key(|p| std::cmp::Reverse(lm(p)));
    Ok(reduced)
}

/// Whether `basis` is a Gröbner basis: every S-polynomial reduces to zero.
pub fn is_groebner(basis: &[QPoly], cancel: &CancelToken) -> Result<bool, Cancelled> {
    for j in 0..basis.len() {
        for i in 0..j {
            if !reduce(&s_polynomial(&basis[i], &basis[j]), basis, cancel)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Leading monomials of a basis, for triangularity checks.
pub fn leading_monomials(basis: &[QPoly]) -> Vec<Monomial> {
    basis
        .iter()
        .filter_map(|p| p.leading_monomial().cloned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    fn poly(n: usize, terms: &[(i64, &[u32])]) -> QPoly {
        QPoly::from_terms(
            n,
            terms
                .iter()
                .map(|(c, e)| (Monomial::from_exponents(e.to_vec()), q(*c))),
        )
    }

    #[test]
    fn reduction_examples() {
        let t = CancelToken::new();
        let f = poly(1, &[(1, &[2]), (-1, &[0])]);
        assert!(reduce(&f, &[poly(1, &[(1, &[1]), (-1, &[0])])], &t)
            .unwrap()
            .is_zero());
        assert_eq!(reduce(&f, &[], &t).unwrap(), f);
        let y = poly(2, &[(1, &[0, 1])]);
        assert_eq!(reduce(&y, &[poly(2, &[(1, &[1, 0])])], &t).unwrap(), y);
    }

    #[test]
    fn quotients_witness_membership() {
        let t = CancelToken::new();
        let f = poly(2, &[(1, &[2, 1]), (3, &[0, 2]), (1, &[0, 0])]);
        let g = [
            poly(2, &[(1, &[1, 1]), (-1, &[0, 0])]),
            poly(2, &[(1, &[0, 2]), (-2, &[1, 0])]),
        ];
        let (r, qs) = reduce_with_quotients(&f, &g, &t).unwrap();
        let recombined = qs
            .iter()
            .zip(&g)
            .fold(r.clone(), |acc, (q, g)| acc.add(&q.mul(g)));
        assert_eq!(recombined, f);
    }

    #[test]
    fn small_bases() {
        let t = CancelToken::new();
        let x = poly(1, &[(1, &[1])]);
        assert_eq!(
            groebner_basis(std::slice::from_ref(&x), &t).unwrap(),
            vec![x.clone()]
        );
        let gb = groebner_basis(
            &[
                poly(1, &[(1, &[2]), (-1, &[0])]),
                poly(1, &[(1, &[1]), (-1, &[0])]),
            ],
            &t,
        )
        .unwrap();
        assert_eq!(gb, vec![poly(1, &[(1, &[1]), (-1, &[0])])]);
        let unit = groebner_basis(&[x.clone(), poly(1, &[(1, &[1]), (1, &[0])])], &t).unwrap();
        assert_eq!(unit, vec![QPoly::one(1)]);
    }

    #[test]
    fn cancellation_is_honored() {
        let t = CancelToken::new();
        t.cancel();
        let f = poly(2, &[(1, &[2, 1]), (1, &[0, 0])]);
        assert_eq!(groebner_basis(&[f.clone(), f], &t), Err(Cancelled));
    }
}
