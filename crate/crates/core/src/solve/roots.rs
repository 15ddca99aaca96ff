//! Univariate root finding: exact square-free splitting and rational roots,
//! then Durand–Kerner iteration with Newton polishing for the rest.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;

use super::SolveError;
use crate::cancel::CancelToken;
use crate::poly::univariate as dense;
use crate::space::{rational_to_f64, Number};

const MAX_SWEEPS: usize = 1000;
const ANGLE_OFFSET: f64 = 0.4;

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: u32,
}

/// Distinct roots ordered by descending real part, then descending imaginary
/// part. Multiplicities sum to the degree.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RootList {
    pub roots: Vec<Root>,
}

impl RootList {
    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// Every root repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity as usize))
            .collect()
    }

    /// Real roots (zero imaginary part) with multiplicities, ascending.
    pub fn real_roots(&self) -> Vec<(f64, u32)> {
        let mut out: Vec<(f64, u32)> = self
            .roots
            .iter()
            .filter(|r| r.value.im == 0.0)
            .map(|r| (r.value.re, r.multiplicity))
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }
}

pub fn order_roots(a: &Complex64, b: &Complex64) -> Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Weierstrass iteration on ascending coefficients with a nonzero
/// leading one.
pub fn durand_kerner(
    coeffs: &[Complex64],
    cancel: &CancelToken,
) -> Result<Vec<Complex64>, SolveError> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + ANGLE_OFFSET))
        .collect();
    let tol = 1e-14 * radius;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        cancel.check()?;
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(tol, tol);
            }
            let step = horner(&monic, z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if !max_step.is_finite() {
            return Err(SolveError::NonConvergence);
        }
        if max_step < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        // Slow linear convergence near clustered roots is acceptable when the
        // residual is already small.
        let scale = monic.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let worst = z
            .iter()
            .map(|r| horner(&monic, *r).norm() / (scale * r.norm().max(1.0).powi(n as i32)))
            .fold(0.0, f64::max);
        if worst > 1e-6 {
            return Err(SolveError::NonConvergence);
        }
    }
    Ok(z.into_iter().map(|r| newton_polish(&monic, r)).collect())
}

/// Newton steps while the residual keeps shrinking.
pub fn newton_polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut best = horner(coeffs, z).norm();
    for _ in 0..50 {
        if best == 0.0 {
            break;
        }
        let (p, dp) = horner_with_derivative(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let r = horner(coeffs, next).norm();
        if r.partial_cmp(&best) != Some(std::cmp::Ordering::Less) {
            break;
        }
        z = next;
        best = r;
    }
    z
}

/// Zeroes negligible imaginary parts and pairs the rest into exact
/// conjugates.
fn enforce_conjugates(roots: &mut [Complex64]) {
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    for r in roots.iter_mut() {
        if r.im.abs() < 1e-9 * scale {
            r.im = 0.0;
        }
    }
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] || roots[i].im <= 0.0 {
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && roots[j].im < 0.0)
            .min_by(|&a, &b| {
                (roots[a] - roots[i].conj())
                    .norm()
                    .total_cmp(&(roots[b] - roots[i].conj()).norm())
            });
        if let Some(j) = partner {
            let re = (roots[i].re + roots[j].re) / 2.0;
            let im = (roots[i].im - roots[j].im) / 2.0;
            roots[i] = Complex64::new(re, im);
            roots[j] = Complex64::new(re, -im);
            used[i] = true;
            used[j] = true;
        }
    }
}

fn to_complex_dense(p: &[BigRational]) -> Vec<Complex64> {
    p.iter()
        .map(|c| Complex64::new(rational_to_f64(c), 0.0))
        .collect()
}

/// Roots of a rational polynomial: exact square-free decomposition, exact
/// rational roots, numeric roots for the remaining factors.
fn solve_rational(p: &[BigRational], cancel: &CancelToken) -> Result<RootList, SolveError> {
    let mut roots: Vec<Root> = Vec::new();
    for (factor, mult) in dense::square_free(p) {
        let mut rest = factor;
        for r in dense::rational_roots(&rest) {
            let lin = vec![-r.clone(), BigRational::from_integer(1.into())];
            rest = dense::divrem(&rest, &lin).0;
            roots.push(Root {
                value: Complex64::new(rational_to_f64(&r), 0.0),
                multiplicity: mult,
            });
        }
        if dense::degree(&rest).is_some_and(|d| d > 0) {
            let coeffs = to_complex_dense(&rest);
            let mut numeric = durand_kerner(&coeffs, cancel)?;
            enforce_conjugates(&mut numeric);
            roots.extend(numeric.into_iter().map(|value| Root {
                value,
                multiplicity: mult,
            }));
        }
    }
    roots.sort_by(|a, b| order_roots(&a.value, &b.value));
    Ok(RootList { roots })
}

/// Merges roots closer than `tol` and records multiplicities.
fn cluster(values: Vec<Complex64>, tol: f64) -> Vec<Root> {
    let mut out: Vec<(Complex64, u32)> = Vec::new();
    for v in values {
        match out.iter_mut().find(|(c, _)| (*c - v).norm() < tol) {
            Some((c, m)) => {
                *c = (*c * (*m as f64) + v) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => out.push((v, 1)),
        }
    }
    out.into_iter()
        .map(|(value, multiplicity)| Root {
            value,
            multiplicity,
        })
        .collect()
}

/// All complex roots of the polynomial with ascending coefficients `coeffs`.
pub fn solve_univariate(coeffs: &[Number], cancel: &CancelToken) -> Result<RootList, SolveError> {
    let mut coeffs = coeffs.to_vec();
    while coeffs
        .last()
        .is_some_and(crate::space::Coefficient::is_zero)
    {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(SolveError::ZeroPolynomial);
    }
    if let Some(exact) = coeffs
        .iter()
        .map(Number::as_rational)
        .collect::<Option<Vec<_>>>()
    {
        return solve_rational(&exact, cancel);
    }
    let c: Vec<Complex64> = coeffs
        .iter()
        .map(crate::space::Coefficient::to_complex)
        .collect();
    let values = durand_kerner(&c, cancel)?;
    let mut roots = cluster(values, 1e-6);
    roots.sort_by(|a, b| order_roots(&a.value, &b.value));
    Ok(RootList { roots })
}
