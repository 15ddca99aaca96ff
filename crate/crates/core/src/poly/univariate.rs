//! Exact dense univariate arithmetic over Q (ascending coefficient vectors).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Dense = Vec<BigRational>;

pub fn trim(mut p: Dense) -> Dense {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> Dense {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Zero::zero);
                let y = b.get(i).cloned().unwrap_or_else(Zero::zero);
                x + y
            })
            .collect(),
    )
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> Dense {
    add(a, &b.iter().map(|c| -c).collect::<Vec<_>>())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn derivative(p: &[BigRational]) -> Dense {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect(),
    )
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Dense, Dense) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut rem = trim(a.to_vec());
    let lc = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lc;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] -= &c * bc;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn monic(p: &[BigRational]) -> Dense {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lc = p[d].clone();
            p[..=d].iter().map(|c| c / &lc).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Dense {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Yun's square-free decomposition: monic factors `f_i` with multiplicities,
/// `p = lc · Π f_i^{m_i}`. Factors of degree zero are omitted.
pub fn square_free(p: &[BigRational]) -> Vec<(Dense, u32)> {
    let p = trim(p.to_vec());
    if degree(&p).is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let dp = derivative(&p);
    let mut a = gcd(&p, &dp);
    let mut b = divrem(&p, &a).0;
    let mut c = divrem(&dp, &a).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut k = 1;
    loop {
        a = gcd(&b, &d);
        if degree(&a).is_some_and(|deg| deg > 0) {
            out.push((a.clone(), k));
        }
        b = divrem(&b, &a).0;
        if degree(&b).is_none_or(|deg| deg == 0) {
            break;
        }
        c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        k += 1;
    }
    out
}

/// Rational content `c` and primitive integer polynomial `q` with `p = c·q`
/// and a positive leading coefficient in `q`.
pub fn primitive_part(p: &[BigRational]) -> (BigRational, Vec<BigInt>) {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return (BigRational::zero(), Vec::new());
    }
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (BigRational::new(g, den), prim)
}

pub fn from_integers(p: &[BigInt]) -> Dense {
    p.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

pub fn evaluate(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Positive divisors by trial division; `None` above the search bound.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots, found by the rational root test on the primitive
/// integer form. Returns an empty list when coefficients are too large to
/// enumerate divisors.
pub fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let (_, mut ints) = primitive_part(p);
    let mut roots = Vec::new();
    if ints.is_empty() {
        return roots;
    }
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        let skip = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        ints.drain(..skip);
    }
    if ints.len() < 2 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let dense = from_integers(&ints);
    for pn in &ps {
        for qd in &qs {
            for cand in [
                BigRational::new(pn.clone(), qd.clone()),
                BigRational::new(-pn.clone(), qd.clone()),
            ] {
                if !roots.contains(&cand) && evaluate(&dense, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Dense {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) / (x - 1) = x + 1
        let (q, r) = divrem(&d(&[-1, 0, 1]), &d(&[-1, 1]));
        assert_eq!(q, d(&[1, 1]));
        assert!(r.is_empty());
        assert_eq!(gcd(&d(&[-1, 0, 1]), &d(&[1, 2, 1])), d(&[1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x+1)^2 (x-3)(x+5) = x^4 + 4x^3 - 10x^2 - 28x - 15
        let p = mul(
            &mul(&d(&[1, 1]), &d(&[1, 1])),
            &mul(&d(&[-3, 1]), &d(&[5, 1])),
        );
        let sf = square_free(&p);
        assert_eq!(sf, vec![(d(&[-15, 2, 1]), 1), (d(&[1, 1]), 2)]);
    }

    #[test]
    fn rational_root_test() {
        // 6x^2 - x - 1 = (3x + 1)(2x - 1)
        let r = rational_roots(&d(&[-1, -1, 6]));
        assert_eq!(
            r,
            vec![
                BigRational::new((-1).into(), 3.into()),
                BigRational::new(1.into(), 2.into())
            ]
        );
        assert_eq!(
            rational_roots(&d(&[0, 0, 1, 1])),
            vec![d(&[-1])[0].clone(), BigRational::zero()]
        );
        assert!(rational_roots(&d(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn primitive_form() {
        let p = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ];
        let (c, q) = primitive_part(&p);
        assert_eq!(c, BigRational::new((-1).into(), 4.into()));
        assert_eq!(q, vec![BigInt::from(-2), BigInt::from(3)]);
    }
}
