//! Worked examples and property tests for tropical linear algebra.

use mathpar::cancel::CancelToken;
use mathpar::space::{AddOp, Carrier, MulOp, TropicalScalar, TropicalSignature};
use mathpar::tropical::{
    bellman, bellman_homogeneous, find_shortest_path, kleene_star, search_least_distances,
    solve_lae, solve_lai, TropicalLinearError, TropicalMatrix,
};
use proptest::prelude::*;

const INF: i64 = i64::MAX;
const NEG: i64 = i64::MIN;

fn sig(add: AddOp, mul: MulOp) -> TropicalSignature {
    TropicalSignature::new(Carrier::Z, add, mul).unwrap()
}

fn min_plus() -> TropicalSignature {
    sig(AddOp::Min, MulOp::Plus)
}

fn max_plus() -> TropicalSignature {
    sig(AddOp::Max, MulOp::Plus)
}

fn scalar(v: i64) -> TropicalScalar {
    match v {
        INF => TropicalScalar::PlusInfinity,
        NEG => TropicalScalar::MinusInfinity,
        v => TropicalScalar::int(v),
    }
}

fn matrix(s: TropicalSignature, rows: &[&[i64]]) -> TropicalMatrix {
    TropicalMatrix::from_rows(
        s,
        rows.iter()
            .map(|r| r.iter().map(|&v| scalar(v)).collect())
            .collect(),
    )
    .unwrap()
}

fn t() -> CancelToken {
    CancelToken::new()
}

#[test]
fn two_cycle_closure() {
    let a = matrix(min_plus(), &[&[INF, 1], &[1, INF]]);
    assert_eq!(
        kleene_star(&a, &t()).unwrap(),
        matrix(min_plus(), &[&[0, 1], &[1, 0]])
    );
}

#[test]
fn equation_examples() {
    let s = max_plus();
    let solve = |a: &[&[i64]], b: &[&[i64]]| solve_lae(&matrix(s, a), &matrix(s, b)).unwrap();
    assert_eq!(solve(&[&[0]], &[&[5]]), matrix(s, &[&[5]]));
    assert_eq!(
        solve(&[&[0, NEG], &[NEG, 0]], &[&[3], &[7]]),
        matrix(s, &[&[3], &[7]])
    );
    assert_eq!(solve(&[&[0, 0]], &[&[1]]), matrix(s, &[&[1], &[1]]));
}

#[test]
fn unsolvable_equation_reports_subsolution() {
    let s = max_plus();
    let err = solve_lae(&matrix(s, &[&[0], &[0]]), &matrix(s, &[&[1], &[2]])).unwrap_err();
    match err {
        TropicalLinearError::NoSolution { subsolution } => {
            assert_eq!(*subsolution, matrix(s, &[&[1]]))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn inequality_example() {
    let s = max_plus();
    assert_eq!(
        solve_lai(&matrix(s, &[&[2]]), &matrix(s, &[&[5]])).unwrap(),
        matrix(s, &[&[3]])
    );
}

#[test]
fn bellman_examples() {
    let s = min_plus();
    let x = bellman(
        &matrix(s, &[&[INF, 1], &[INF, INF]]),
        &matrix(s, &[&[INF], &[0]]),
        &t(),
    )
    .unwrap();
    assert_eq!(x, matrix(s, &[&[1], &[0]]));

    let m = max_plus();
    assert_eq!(
        bellman_homogeneous(&matrix(m, &[&[0]]), &t()).unwrap(),
        matrix(m, &[&[0]])
    );
    let empty = bellman_homogeneous(&matrix(m, &[&[-1]]), &t()).unwrap();
    assert_eq!((empty.rows(), empty.cols()), (1, 0));
}

#[test]
fn least_distances_and_paths() {
    let s = min_plus();
    let a = matrix(s, &[&[INF, 2, 9], &[INF, INF, 3], &[INF, INF, INF]]);
    let d = search_least_distances(&a, &t()).unwrap();
    assert_eq!(d.get(0, 2), &scalar(5));
    let p = find_shortest_path(&a, 0, 2, &t()).unwrap();
    assert_eq!(p.nodes, [0, 1, 2]);
    assert_eq!(p.distance, scalar(5));
    assert_eq!(p.render_mathpar(2), "[[1,2,3],5]");
}

#[test]
fn unreachable_target() {
    let a = matrix(min_plus(), &[&[INF, INF], &[INF, INF]]);
    assert_eq!(
        find_shortest_path(&a, 0, 1, &t()),
        Err(TropicalLinearError::Unreachable { from: 1, to: 2 })
    );
}

#[test]
fn positive_cycle_diverges_under_max() {
    let a = matrix(max_plus(), &[&[NEG, 1], &[1, NEG]]);
    assert_eq!(
        kleene_star(&a, &t()),
        Err(TropicalLinearError::StarDiverges)
    );
}

/// Best simple-path weight by exhaustive search; the diagonal is 0.
fn brute_force(w: &[Vec<Option<i64>>], from: usize, to: usize) -> Option<i64> {
    fn walk(
        w: &[Vec<Option<i64>>],
        at: usize,
        to: usize,
        seen: &mut Vec<bool>,
        acc: i64,
        best: &mut Option<i64>,
    ) {
        if at == to {
            *best = Some(best.map_or(acc, |b| b.min(acc)));
            return;
        }
        for (next, edge) in w[at].iter().enumerate() {
            if let (Some(c), false) = (edge, seen[next]) {
                seen[next] = true;
                walk(w, next, to, seen, acc + c, best);
                seen[next] = false;
            }
        }
    }
    let mut seen = vec![false; w.len()];
    seen[from] = true;
    let mut best = None;
    walk(w, from, to, &mut seen, 0, &mut best);
    best
}

fn digraph() -> impl Strategy<Value = Vec<Vec<Option<i64>>>> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec(prop::option::weighted(0.5, 0i64..=9), n),
            n,
        )
    })
}

fn weights_to_matrix(w: &[Vec<Option<i64>>]) -> TropicalMatrix {
    let rows = w
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| e.map_or(TropicalScalar::PlusInfinity, TropicalScalar::int))
                .collect()
        })
        .collect();
    TropicalMatrix::from_rows(min_plus(), rows).unwrap()
}

fn z_signatures() -> Vec<TropicalSignature> {
    TropicalSignature::catalog()
        .into_iter()
        .filter(|s| s.carrier == Carrier::Z)
        .collect()
}

/// A carrier element of `s` from a raw draw: the zero, or a small value.
fn entry(s: TropicalSignature, raw: Option<i64>) -> TropicalScalar {
    match raw {
        None => s.zero(),
        Some(v) if s.mul == MulOp::Mult => TropicalScalar::int(v.abs()),
        Some(v) => TropicalScalar::int(v),
    }
}

fn grid(s: TropicalSignature, raw: &[Vec<Option<i64>>]) -> TropicalMatrix {
    TropicalMatrix::from_rows(
        s,
        raw.iter()
            .map(|r| r.iter().map(|&v| entry(s, v)).collect())
            .collect(),
    )
    .unwrap()
}

fn raw_grid(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Option<i64>>>> {
    prop::collection::vec(
        prop::collection::vec(prop::option::weighted(0.8, -5i64..=5), cols),
        rows,
    )
}

/// Strictly upper-triangular pattern: nilpotent in every signature.
fn nilpotent(s: TropicalSignature, raw: &[Vec<Option<i64>>]) -> TropicalMatrix {
    let n = raw.len();
    let mut a = TropicalMatrix::zeros(s, n, n);
    for (i, row) in raw.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if j > i && j < n {
                a.set(i, j, entry(s, v));
            }
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_matches_path_enumeration(w in digraph()) {
        let a = weights_to_matrix(&w);
        let star = search_least_distances(&a, &t()).unwrap();
        for i in 0..w.len() {
            for j in 0..w.len() {
                let expect = brute_force(&w, i, j).map_or(TropicalScalar::PlusInfinity, TropicalScalar::int);
                prop_assert_eq!(star.get(i, j), &expect, "({}, {})", i, j);
                match find_shortest_path(&a, i, j, &t()) {
                    Ok(p) => {
                        prop_assert_eq!(&p.distance, star.get(i, j));
                        prop_assert_eq!(p.nodes.first(), Some(&i));
                        prop_assert_eq!(p.nodes.last(), Some(&j));
                        let mut total = 0;
                        for step in p.nodes.windows(2) {
                            let edge = w[step[0]][step[1]];
                            prop_assert!(edge.is_some(), "{:?} uses a missing edge", p.nodes);
                            total += edge.unwrap();
                        }
                        prop_assert_eq!(TropicalScalar::int(total), p.distance);
                    }
                    Err(TropicalLinearError::Unreachable { .. }) => {
                        prop_assert_eq!(star.get(i, j), &TropicalScalar::PlusInfinity);
                    }
                    Err(e) => prop_assert!(false, "{}", e),
                }
            }
        }
    }

    #[test]
    fn residuation_is_an_adjunction(
        (m, n) in (1usize..=4, 1usize..=4),
        seed in prop::collection::vec(prop::option::weighted(0.8, -5i64..=5), 24),
        xs in prop::collection::vec(prop::option::weighted(0.8, -8i64..=8), 4),
        bs in prop::collection::vec(prop::option::weighted(0.9, -8i64..=8), 4),
    ) {
        for s in z_signatures().into_iter().filter(TropicalSignature::is_semifield) {
            let raw: Vec<Vec<Option<i64>>> = (0..m).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
            let a = grid(s, &raw);
            let b = TropicalMatrix::column(s, bs[..m].iter().map(|&v| entry(s, v)).collect()).unwrap();
            let x = TropicalMatrix::column(s, xs[..n].iter().map(|&v| entry(s, v)).collect()).unwrap();
            let best = solve_lai(&a, &b).unwrap();
            let lhs = a.mul(&x).unwrap().le(&b);
            let rhs = x.le(&best);
            prop_assert_eq!(lhs, rhs, "{}: A={} b={} x={} x̂={}", s.name(), a.render_mathpar(0),
                b.render_mathpar(0), x.render_mathpar(0), best.render_mathpar(0));
            prop_assert!(a.mul_absorbing(&best).unwrap().le(&b));
        }
    }

    #[test]
    fn bellman_solutions_are_fixpoints(raw in (1usize..=5).prop_flat_map(|n| raw_grid(n, n + 1))) {
        for s in z_signatures() {
            let n = raw.len();
            let a = nilpotent(s, &raw);
            let b = TropicalMatrix::column(s, raw.iter().map(|r| entry(s, r[n])).collect()).unwrap();
            let x = bellman(&a, &b, &t()).unwrap();
            prop_assert_eq!(a.mul(&x).unwrap().add(&b).unwrap(), x, "{}", s.name());
        }
    }

    #[test]
    fn closure_is_idempotent(raw in (1usize..=5).prop_flat_map(|n| raw_grid(n, n)), w in digraph()) {
        let mut cases: Vec<TropicalMatrix> = z_signatures().into_iter().map(|s| nilpotent(s, &raw)).collect();
        cases.push(weights_to_matrix(&w));
        for a in cases {
            let star = kleene_star(&a, &t()).unwrap();
            prop_assert_eq!(&kleene_star(&star, &t()).unwrap(), &star, "{}", a.signature.name());
            prop_assert_eq!(&star.mul(&star).unwrap(), &star, "{}", a.signature.name());
        }
    }
}
