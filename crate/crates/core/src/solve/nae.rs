//! Zero-dimensional polynomial systems: lex Gröbner basis, then numeric
//! back-substitution through the triangular chain.

use num_complex::Complex64;

use super::groebner::{groebner_basis, QPoly};
use super::roots::{order_roots, solve_univariate};
use super::SolveError;
use crate::cancel::CancelToken;
use crate::space::{rational_to_f64, Number};

/// Each row is one solution; `variables` lists the variable slots (in space
/// order) that the columns correspond to.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionMatrix {
    pub variables: Vec<usize>,
    pub rows: Vec<Vec<Complex64>>,
}

fn eval(p: &QPoly, point: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut t = Complex64::new(rational_to_f64(c), 0.0);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                t *= point[i].powu(e);
            }
        }
        acc += t;
    }
    acc
}

fn coefficient_scale(p: &QPoly) -> f64 {
    p.terms()
        .map(|(_, c)| rational_to_f64(c).abs())
        .fold(0.0, f64::max)
}

/// Residual scaled so that one tolerance fits inputs of any size.
fn relative_residual(p: &QPoly, point: &[Complex64]) -> f64 {
    let size = point.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let deg = p.total_degree() as i32;
    eval(p, point).norm() / ((1.0 + coefficient_scale(p)) * size.powi(deg))
}

/// Univariate polynomial in slot `v` after substituting `known` into the
/// lower slots; ascending complex coefficients.
fn specialize(p: &QPoly, v: usize, known: &[Complex64]) -> Vec<Number> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut t = Complex64::new(rational_to_f64(c), 0.0);
        for (i, &e) in m.exponents().iter().enumerate().take(v) {
            if e > 0 {
                t *= known[i].powu(e);
            }
        }
        out[m.exponent(v) as usize] += t;
    }
    out.into_iter()
        .map(|c| {
            if c.im == 0.0 {
                Number::Real(c.re)
            } else {
                Number::Complex(c)
            }
        })
        .collect()
}

fn exact_univariate(p: &QPoly, v: usize) -> Vec<Number> {
    p.to_univariate(v)
        .expect("univariate eliminant")
        .into_iter()
        .map(Number::Rational)
        .collect()
}

/// Solves the complex linear system `a·x = b` by Gaussian elimination with
/// partial pivoting; `None` when singular.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (dst, v) in a[r][col..n].iter_mut().zip(&pivot_row[col..n]) {
                *dst -= f * v;
            }
            let v = b[col];
            b[r] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

/// Gauss–Newton steps on the original system while the residual shrinks.
fn polish(system: &[QPoly], row: &mut [Complex64]) {
    let k = row.len();
    let derivs: Vec<Vec<QPoly>> = system
        .iter()
        .map(|p| (0..k).map(|v| p.derivative(v)).collect())
        .collect();
    let norm = |pt: &[Complex64]| system.iter().map(|p| eval(p, pt).norm_sqr()).sum::<f64>();
    let mut best = norm(row);
    for _ in 0..20 {
        if best == 0.0 {
            break;
        }
        let r: Vec<Complex64> = system.iter().map(|p| eval(p, row)).collect();
        let j: Vec<Vec<Complex64>> = derivs
            .iter()
            .map(|ds| ds.iter().map(|d| eval(d, row)).collect())
            .collect();
        // Normal equations Jᴴ J δ = Jᴴ r.
        let mut a = vec![vec![Complex64::new(0.0, 0.0); k]; k];
        let mut b = vec![Complex64::new(0.0, 0.0); k];
        for (ji, ri) in j.iter().zip(&r) {
            for p in 0..k {
                b[p] += ji[p].conj() * ri;
                for q in 0..k {
                    a[p][q] += ji[p].conj() * ji[q];
                }
            }
        }
        let Some(delta) = solve_linear(a, b) else {
            break;
        };
        let next: Vec<Complex64> = row.iter().zip(&delta).map(|(x, d)| x - d).collect();
        let n = norm(&next);
        if n.partial_cmp(&best) != Some(std::cmp::Ordering::Less) {
            break;
        }
        row.copy_from_slice(&next);
        best = n;
    }
}

fn compare_rows(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        let o = order_roots(x, y);
        if o.is_ne() {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

fn clean(z: Complex64) -> Complex64 {
    let scale = z.norm().max(1.0);
    Complex64::new(
        if z.re.abs() < 1e-10 * scale {
            0.0
        } else {
            z.re
        },
        if z.im.abs() < 1e-10 * scale {
            0.0
        } else {
            z.im
        },
    )
}

/// All solutions of `system = 0`, restricted to the variables that occur.
pub fn solve_nae(system: &[QPoly], cancel: &CancelToken) -> Result<SolutionMatrix, SolveError> {
    let nvars = system.first().map_or(0, QPoly::nvars);
    let mut used: Vec<usize> = (0..nvars)
        .filter(|&v| system.iter().any(|p| p.degree_in(v) > 0))
        .collect();
    used.sort_unstable();
    if used.is_empty() {
        return if system.iter().any(|p| !p.is_zero()) {
            Err(SolveError::NoSolution)
        } else {
            Err(SolveError::PositiveDimensional)
        };
    }
    let k = used.len();
    let mut map = vec![0; nvars];
    for (new, &old) in used.iter().enumerate() {
        map[old] = new;
    }
    // Unused slots fold onto slot 0; they have exponent zero everywhere.
    let local: Vec<QPoly> = system.iter().map(|p| p.remap(k, &map)).collect();
    let basis = groebner_basis(&local, cancel)?;
    if basis.len() == 1 && basis[0].is_constant() {
        return Err(SolveError::NoSolution);
    }
    for v in 0..k {
        let has_pure_power = basis.iter().any(|g| {
            g.leading_monomial()
                .and_then(|m| m.as_pure_power())
                .is_some_and(|(i, _)| i == v)
        });
        if !has_pure_power {
            return Err(SolveError::PositiveDimensional);
        }
    }

    let mut partial: Vec<Vec<Complex64>> = vec![Vec::new()];
    for v in 0..k {
        let layer: Vec<&QPoly> = basis
            .iter()
            .filter(|g| g.degree_in(v) > 0 && (v + 1..k).all(|w| g.degree_in(w) == 0))
            .collect();
        let mut next = Vec::new();
        for row in &partial {
            cancel.check()?;
            let mut candidates: Vec<Complex64> = Vec::new();
            let mut chosen = None;
            for g in &layer {
                let coeffs = if v == 0 {
                    exact_univariate(g, 0)
                } else {
                    specialize(g, v, row)
                };
                let lead = coeffs
                    .last()
                    .map(|c| crate::space::Coefficient::to_complex(c).norm())
                    .unwrap_or(0.0);
                let scale = coeffs
                    .iter()
                    .map(|c| crate::space::Coefficient::to_complex(c).norm())
                    .fold(0.0, f64::max);
                if lead <= 1e-9 * scale.max(1.0) {
                    continue;
                }
                if chosen.as_ref().is_none_or(|(d, _)| coeffs.len() < *d) {
                    chosen = Some((coeffs.len(), coeffs));
                }
            }
            if let Some((_, coeffs)) = chosen {
                candidates = solve_univariate(&coeffs, cancel)?
                    .roots
                    .into_iter()
                    .map(|r| r.value)
                    .collect();
            }
            for c in candidates {
                let mut extended = row.clone();
                extended.push(c);
                let ok = layer
                    .iter()
                    .all(|g| relative_residual(g, &pad(&extended, k)) < 1e-6);
                if ok {
                    next.push(extended);
                }
            }
        }
        partial = next;
    }

    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for mut row in partial {
        polish(&local, &mut row);
        let row: Vec<Complex64> = row.into_iter().map(clean).collect();
        let dup = rows
            .iter()
            .any(|r| r.iter().zip(&row).all(|(a, b)| (a - b).norm() < 1e-6));
        if !dup {
            rows.push(row);
        }
    }
    enforce_row_conjugates(&mut rows);
    rows.sort_by(|a, b| compare_rows(a, b));
    Ok(SolutionMatrix {
        variables: used,
        rows,
    })
}

fn pad(row: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut out = row.to_vec();
    out.resize(k, Complex64::new(0.0, 0.0));
    out
}

/// Rows of a real system come in conjugate pairs; make the pairs exact.
fn enforce_row_conjugates(rows: &mut [Vec<Complex64>]) {
    let n = rows.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || rows[i].iter().all(|z| z.im == 0.0) {
            continue;
        }
        let conj: Vec<Complex64> = rows[i].iter().map(|z| z.conj()).collect();
        let partner = (0..n).find(|&j| {
            j != i
                && !used[j]
                && rows[j]
                    .iter()
                    .zip(&conj)
                    .all(|(a, b)| (a - b).norm() < 1e-8 * b.norm().max(1.0))
        });
        if let Some(j) = partner {
            let merged: Vec<Complex64> = rows[i]
                .iter()
                .zip(&rows[j])
                .map(|(a, b)| (a + b.conj()) / 2.0)
                .collect();
            rows[j] = merged.iter().map(|z| z.conj()).collect();
            rows[i] = merged;
            used[i] = true;
            used[j] = true;
        }
    }
}

/// Largest relative residual of `row` (columns as in `matrix.variables`)
/// under the original system.
pub fn max_residual(system: &[QPoly], variables: &[usize], row: &[Complex64]) -> f64 {
    let nvars = system.first().map_or(0, QPoly::nvars);
    let mut point = vec![Complex64::new(0.0, 0.0); nvars];
    for (col, &v) in variables.iter().enumerate() {
        point[v] = row[col];
    }
    system
        .iter()
        .map(|p| eval(p, &point).norm() / (1.0 + coefficient_scale(p)))
        .fold(0.0, f64::max)
}

pub fn rational_system(polys: &[crate::poly::Poly]) -> Option<Vec<QPoly>> {
    polys
        .iter()
        .map(|p| p.try_map_coefficients(|c| c.as_rational().ok_or(())).ok())
        .collect()
}
