mod common;

use common::random_cauchon;
use qminor::algebra::{nc_mul_mono, NcMonomial};
use qminor::graph::{
    enumerate_all_paths, enumerate_paths, grid, grid_label, is_lower, path_commutation_ratio, path_weight, validate,
    EdgeKind, GPath, Role, SeGraph,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn generator(g: &SeGraph, v: usize) -> Option<usize> {
    match g.role(v) {
        Role::Inner(x) => Some(x),
        _ => None,
    }
}

fn product(g: &SeGraph, factors: &[(usize, i32)]) -> (NcMonomial, i32) {
    let t = g.commutation_table();
    factors.iter().fold((NcMonomial::one(), 0), |(m, d), &(x, e)| {
        let (m2, d2) = nc_mul_mono(&m, &NcMonomial::power(x, e), t).unwrap();
        (m2, d + d2)
    })
}

/// `u_0^{s_0} ... u_k^{s_k}` over the essential vertices of a standard path.
fn essential_form(g: &SeGraph, p: &GPath) -> (NcMonomial, i32) {
    let kinds: Vec<EdgeKind> = p.edges.iter().map(|&e| g.edge(e).kind).collect();
    let verts = p.vertices(g);
    let mut factors = Vec::new();
    if kinds[0] == EdgeKind::H {
        if let Some(x) = generator(g, verts[0]) {
            factors.push((x, -1));
        }
    }
    for k in 1..kinds.len() {
        match (kinds[k - 1], kinds[k]) {
            (EdgeKind::H, EdgeKind::V) => factors.push((generator(g, verts[k]).unwrap(), 1)),
            (EdgeKind::V, EdgeKind::H) => factors.push((generator(g, verts[k]).unwrap(), -1)),
            _ => {}
        }
    }
    if kinds[kinds.len() - 1] == EdgeKind::H {
        if let Some(x) = generator(g, verts[verts.len() - 1]) {
            factors.push((x, 1));
        }
    }
    product(g, &factors)
}

fn corpus() -> Vec<SeGraph> {
    let mut out: Vec<SeGraph> = (1..=3).flat_map(|m| (1..=4).map(move |n| grid(m, n).unwrap())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        out.push(random_cauchon(&mut rng, 3, 4, 0.75));
    }
    out
}

#[test]
fn corpus_is_valid() {
    for g in corpus() {
        assert!(validate(&g).is_empty());
    }
}

#[test]
fn source_to_sink_weights_telescope() {
    for g in corpus() {
        for i in 1..=g.m() {
            for j in 1..=g.n() {
                for p in enumerate_paths(&g, i, j).unwrap() {
                    assert_eq!(path_weight(&g, &p).unwrap(), essential_form(&g, &p));
                }
            }
        }
    }
}

#[test]
fn standard_subpaths_use_essential_vertices() {
    for g in [grid(3, 3).unwrap(), grid(2, 4).unwrap()] {
        for p in enumerate_all_paths(&g) {
            if p.is_standard(&g) {
                assert_eq!(path_weight(&g, &p).unwrap(), essential_form(&g, &p), "{p:?}");
            } else {
                assert_eq!(path_weight(&g, &p).unwrap(), (NcMonomial::one(), 0));
            }
        }
    }
}

#[test]
fn grid_relations() {
    for (m, n) in [(2, 2), (3, 4), (4, 3)] {
        let g = grid(m, n).unwrap();
        let gen = |i: usize, j: usize| generator(&g, g.vertex_by_label(&grid_label(i, j)).unwrap()).unwrap();
        let t = g.commutation_table();
        for (i, j) in (1..=m).flat_map(|i| (1..=n).map(move |j| (i, j))) {
            for (k, l) in (1..=m).flat_map(|k| (1..=n).map(move |l| (k, l))) {
                let want = if (i == k && j < l) || (j == l && i < k) {
                    1
                } else if (i == k && j > l) || (j == l && i > k) {
                    -1
                } else {
                    0
                };
                assert_eq!(t.get(gen(i, j), gen(k, l)), want, "t{i}{j} t{k}{l}");
            }
        }
    }
}

#[test]
fn staircase_counts_and_order() {
    let binom = |a: usize, b: usize| (0..b).fold(1usize, |acc, x| acc * (a - x) / (x + 1));
    let g = grid(3, 4).unwrap();
    for i in 1..=3 {
        for j in 1..=4 {
            let ps = enumerate_paths(&g, i, j).unwrap();
            assert_eq!(ps.len(), binom(i + j - 2, i - 1));
            assert!(ps.windows(2).all(|w| w[0].edges < w[1].edges));
        }
    }
}

/// Predictions of the two-path lemmas that apply to `(P, Q)`.
fn lemma_predictions(g: &SeGraph, p: &GPath, q: &GPath) -> Vec<(usize, i32)> {
    let at = |v: usize| (g.vertex(v).x, g.vertex(v).y);
    let (sp, tp) = (at(p.start(g).unwrap()), at(p.end(g).unwrap()));
    let (sq, tq) = (at(q.start(g).unwrap()), at(q.end(g).unwrap()));
    let lower = |a: &GPath, b: &GPath| is_lower(g, a, b);
    let mut out = Vec::new();
    let xs_p = [sp.0, tp.0];
    if !xs_p.iter().any(|x| *x > 0 && (*x == sq.0 || *x == tq.0)) {
        out.push((1, 0));
    }
    for (a, b, sign) in [(p, q, 1), (q, p, -1)] {
        let (sa, ta, sb, tb) = if sign == 1 { (sp, tp, sq, tq) } else { (sq, tq, sp, tp) };
        if sa.0 == sb.0 && sa.0 > 0 && ta.0 != tb.0 && lower(a, b) {
            out.push((2, sign));
        }
        if ta.0 == tb.0 && (sa.0 != sb.0 || sa.0 == 0 && sb.0 == 0) && lower(a, b) {
            out.push((3, sign));
        }
        if ta.0 == sb.0 && ta.1 >= sb.1 {
            out.push((4, sign));
        }
        if ta.0 == sb.0 && ta.1 < sb.1 {
            out.push((5, -sign));
        }
    }
    out
}

#[test]
fn two_path_lemmas_on_grid() {
    let g = grid(3, 3).unwrap();
    let paths: Vec<GPath> = enumerate_all_paths(&g).into_iter().filter(|p| p.is_standard(&g)).collect();
    let mut hits = [0usize; 6];
    for p in &paths {
        for q in &paths {
            let Ok(d) = path_commutation_ratio(&g, p, q) else {
                continue;
            };
            for (lemma, want) in lemma_predictions(&g, p, q) {
                assert_eq!(d, want, "lemma {lemma} for {p:?}, {q:?}");
                hits[lemma] += 1;
            }
        }
    }
    assert!(hits[1..].iter().all(|&h| h > 0), "{hits:?}");
}

#[test]
fn crossing_paths_are_rejected() {
    let g = grid(2, 2).unwrap();
    let a = &enumerate_paths(&g, 2, 2).unwrap()[0];
    let b = &enumerate_paths(&g, 1, 2).unwrap()[0];
    assert!(path_commutation_ratio(&g, a, a).is_err());
    let shared = a.vertices(&g).iter().filter(|v| b.vertices(&g).contains(v)).count();
    assert_eq!(path_commutation_ratio(&g, a, b).is_err(), shared > 0);
}
