use super::matrix::{TropicalLinearError, TropicalMatrix};
use crate::cancel::CancelToken;
use crate::space::{TropicalError, TropicalScalar};

type Result<T> = std::result::Result<T, TropicalLinearError>;

fn require_square(a: &TropicalMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(TropicalLinearError::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

/// `A* = I ⊕ A ⊕ A² ⊕ …`, computed by iterating `M ← I ⊕ A⊗M` from `M = I`.
/// A change on the n-th step means some cycle keeps improving.
pub fn kleene_star(a: &TropicalMatrix, cancel: &CancelToken) -> Result<TropicalMatrix> {
    require_square(a)?;
    let n = a.rows();
    let id = TropicalMatrix::identity(a.signature, n);
    let mut m = id.clone();
    for step in 1..=n {
        cancel.check()?;
        let next = id.add(&a.mul(&m)?)?;
        if next == m {
            return Ok(m);
        }
        if step == n {
            return Err(TropicalLinearError::StarDiverges);
        }
        m = next;
    }
    Ok(m)
}

fn require_column(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<()> {
    if b.cols() != 1 || b.rows() != a.rows() {
        return Err(TropicalLinearError::DimensionMismatch(format!(
            "right-hand side must be a {}x1 column, got {}x{}",
            a.rows(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// Greatest `x` with `A ⊗ x ≤ b`: `x_j = ⋀_i (a_ij \ b_i)`.
pub fn solve_lai(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<TropicalMatrix> {
    require_column(a, b)?;
    let sig = a.signature;
    if !sig.is_semifield() {
        return Err(TropicalError::NonInvertibleSignature(sig.name()).into());
    }
    let mut x = Vec::with_capacity(a.cols());
    for j in 0..a.cols() {
        let mut acc = sig.top();
        for i in 0..a.rows() {
            acc = sig.meet(&acc, &sig.residual(a.get(i, j), b.get(i, 0))?);
        }
        x.push(acc);
    }
    // `top` may lie outside the carrier, so skip validation here.
    let mut out = TropicalMatrix::zeros(sig, x.len(), 1);
    for (j, v) in x.into_iter().enumerate() {
        out.set(j, 0, v);
    }
    Ok(out)
}

/// Greatest solution of `A ⊗ x = b`, or `NoSolution` carrying the greatest
/// subsolution.
pub fn solve_lae(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<TropicalMatrix> {
    let x = solve_lai(a, b)?;
    if a.mul_absorbing(&x)? == *b {
        Ok(x)
    } else {
        Err(TropicalLinearError::NoSolution {
            subsolution: Box::new(x),
        })
    }
}

/// Least solution `x = A* ⊗ b` of `x = A ⊗ x ⊕ b`.
pub fn bellman(
    a: &TropicalMatrix,
    b: &TropicalMatrix,
    cancel: &CancelToken,
) -> Result<TropicalMatrix> {
    require_column(a, b)?;
    let star = kleene_star(a, cancel)?;
    let x = star.mul(b)?;
    debug_assert_eq!(a.mul(&x)?.add(b)?, x);
    Ok(x)
}

/// Generators of `x = A ⊗ x`: the columns of `A*` at the nodes lying on a
/// cycle of weight equal to the unit. The result has one column per generator.
pub fn bellman_homogeneous(a: &TropicalMatrix, cancel: &CancelToken) -> Result<TropicalMatrix> {
    let star = kleene_star(a, cancel)?;
    let plus = a.mul(&star)?;
    let sig = a.signature;
    let n = a.rows();
    let picked: Vec<usize> = (0..n).filter(|&i| *plus.get(i, i) == sig.unit()).collect();
    let mut out = TropicalMatrix::zeros(sig, n, picked.len());
    for (c, &i) in picked.iter().enumerate() {
        for r in 0..n {
            out.set(r, c, star.get(r, i).clone());
        }
    }
    Ok(out)
}

/// Closure `A*`: entry `(i, j)` is the best total weight over all paths from
/// `i` to `j`.
pub fn search_least_distances(a: &TropicalMatrix, cancel: &CancelToken) -> Result<TropicalMatrix> {
    kleene_star(a, cancel)
}

/// An optimal path, with 0-based node indices.
#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    pub nodes: Vec<usize>,
    pub distance: TropicalScalar,
}

impl PathResult {
    /// `[[1,2,3],d]` with 1-based node numbers.
    pub fn render_mathpar(&self, floatpos: u32) -> String {
        format!(
            "[[{}],{}]",
            self.one_based().join(","),
            crate::space::format_tropical(&self.distance, floatpos)
        )
    }

    pub fn render_latex(&self, floatpos: u32) -> String {
        format!(
            "{},\\ d = {}",
            self.one_based().join(" \\to "),
            crate::space::format_tropical(&self.distance, floatpos)
        )
    }

    fn one_based(&self) -> Vec<String> {
        self.nodes.iter().map(|n| (n + 1).to_string()).collect()
    }
}

fn path_weight(a: &TropicalMatrix, nodes: &[usize]) -> Result<TropicalScalar> {
    let sig = a.signature;
    let mut w = sig.unit();
    for pair in nodes.windows(2) {
        w = sig.mul(&w, a.get(pair[0], pair[1]))?;
    }
    Ok(w)
}

/// Best path from `from` to `to` (0-based). Floyd–Warshall with a successor
/// table; only strict improvements replace an entry, so ties keep the
/// route through the smaller intermediate node.
#[allow(clippy::needless_range_loop)]
pub fn find_shortest_path(
    a: &TropicalMatrix,
    from: usize,
    to: usize,
    cancel: &CancelToken,
) -> Result<PathResult> {
    require_square(a)?;
    let n = a.rows();
    for index in [from, to] {
        if index >= n {
            return Err(TropicalLinearError::IndexOutOfRange {
                index: index + 1,
                n,
            });
        }
    }
    let sig = a.signature;
    let star = kleene_star(a, cancel)?;
    let target = star.get(from, to).clone();
    if from == to {
        return Ok(PathResult {
            nodes: vec![from],
            distance: target,
        });
    }
    if target == sig.zero() {
        return Err(TropicalLinearError::Unreachable {
            from: from + 1,
            to: to + 1,
        });
    }

    let mut dist = a.clone();
    let mut next: Vec<Vec<Option<usize>>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| (*a.get(u, v) != sig.zero()).then_some(v))
                .collect()
        })
        .collect();
    for k in 0..n {
        cancel.check()?;
        for u in 0..n {
            for v in 0..n {
                let cand = sig.mul(dist.get(u, k), dist.get(k, v))?;
                let cur = dist.get(u, v);
                if cand != *cur && sig.add(&cand, cur) == cand {
                    dist.set(u, v, cand);
                    next[u][v] = next[u][k];
                }
            }
        }
    }

    let mut nodes = vec![from];
    let mut at = from;
    while at != to && nodes.len() <= n {
        match next[at][to] {
            Some(s) => {
                nodes.push(s);
                at = s;
            }
            None => break,
        }
    }
    let simple = {
        let mut seen = nodes.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == nodes.len()
    };
    if at == to && simple && path_weight(a, &nodes)? == target {
        return Ok(PathResult {
            nodes,
            distance: target,
        });
    }
    layered_path(a, from, to, &target, cancel)
}

/// Fallback: extend best walks one edge at a time and stop at the first
/// length whose value matches the closure.
#[allow(clippy::needless_range_loop)]
fn layered_path(
    a: &TropicalMatrix,
    from: usize,
    to: usize,
    target: &TropicalScalar,
    cancel: &CancelToken,
) -> Result<PathResult> {
    let sig = a.signature;
    let n = a.rows();
    let mut best: Vec<TropicalScalar> = (0..n)
        .map(|v| if v == from { sig.unit() } else { sig.zero() })
        .collect();
    let mut preds: Vec<Vec<Option<usize>>> = Vec::new();
    for _ in 1..n {
        cancel.check()?;
        let mut layer = vec![sig.zero(); n];
        let mut pred = vec![None; n];
        for v in 0..n {
            for u in 0..n {
                let cand = sig.mul(&best[u], a.get(u, v))?;
                if cand != sig.zero() && cand != layer[v] && sig.add(&cand, &layer[v]) == cand {
                    layer[v] = cand;
                    pred[v] = Some(u);
                }
            }
        }
        preds.push(pred);
        best = layer;
        if best[to] == *target {
            let mut nodes = vec![to];
            let mut at = to;
            for pred in preds.iter().rev() {
                at = pred[at].expect("layer value implies a predecessor");
                nodes.push(at);
            }
            nodes.reverse();
            return Ok(PathResult {
                nodes,
                distance: target.clone(),
            });
        }
    }
    Err(TropicalLinearError::Unreachable {
        from: from + 1,
        to: to + 1,
    })
}
