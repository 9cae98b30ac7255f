mod common;

use common::{pairs, random_cauchon};
use qminor::algebra::{NcMonomial, NcPolynomial};
use qminor::flows::{check_manin, enumerate_flows, inversions, path_matrix, qminor_det, qminor_flows, IndexPair};
use qminor::graph::{grid, SeGraph};
use qminor::{NcPoly, WideNcPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

fn corpus() -> Vec<SeGraph> {
    let mut out: Vec<SeGraph> = (1..=3).flat_map(|m| (1..=3).map(move |n| grid(m, n).unwrap())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..10 {
        let (m, n) = [(3, 4), (3, 3), (2, 4)][k % 3];
        out.push(random_cauchon(&mut rng, m, n, 0.7));
    }
    out
}

#[test]
fn lindstrom_on_corpus() {
    corpus().par_iter().for_each(|g| {
        let x = path_matrix::<i64>(g).unwrap();
        for p in pairs(g.m(), g.n(), 3) {
            let det = qminor_det(&x, &p, g.commutation_table()).unwrap();
            assert_eq!(det, qminor_flows::<i64>(g, &p).unwrap(), "{p}");
        }
    });
}

#[test]
fn manin_on_corpus() {
    for g in corpus() {
        let r = check_manin::<i64>(&g).unwrap();
        assert!(r.passed(), "{:?}", r.failure);
    }
}

#[test]
fn flow_paths_join_sorted_ends() {
    for g in corpus() {
        for p in pairs(g.m(), g.n(), 3) {
            for f in enumerate_flows(&g, &p).unwrap() {
                for (l, path) in f.paths.iter().enumerate() {
                    assert_eq!(path.start(&g), Some(g.source(p.rows[l]).unwrap()));
                    assert_eq!(path.end(&g), Some(g.sink(p.cols[l]).unwrap()));
                }
                let mut seen = std::collections::HashSet::new();
                for v in f.paths.iter().flat_map(|path| path.vertices(&g)) {
                    assert!(seen.insert(v), "paths of a flow share a vertex");
                }
            }
        }
    }
}

type Commutative = BTreeMap<NcMonomial, i64>;

fn specialize(p: &NcPoly) -> Commutative {
    p.terms().map(|(m, s)| (m.clone(), s.at_one())).filter(|(_, c)| *c != 0).collect()
}

fn cmul(a: &Commutative, b: &Commutative) -> Commutative {
    let mut out = Commutative::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = NcMonomial::from_sorted_pairs(ma.exponents().iter().chain(mb.exponents()).copied());
            *out.entry(m).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// The ordinary minor of the `q = 1` path matrix, by permutation expansion.
fn classical_minor(x: &[Vec<NcPoly>], p: &IndexPair) -> Commutative {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in perms(k - 1) {
            for pos in 0..=rest.len() {
                let mut v = rest.clone();
                v.insert(pos, k - 1);
                out.push(v);
            }
        }
        out
    }
    let mut acc = Commutative::new();
    for s in perms(p.len()) {
        let mut term: Commutative = [(NcMonomial::one(), 1)].into_iter().collect();
        for (d, &c) in s.iter().enumerate() {
            term = cmul(&term, &specialize(&x[p.rows[d] - 1][p.cols[c] - 1]));
        }
        let sign = if inversions(&s) % 2 == 1 { -1 } else { 1 };
        for (m, c) in term {
            *acc.entry(m).or_default() += sign * c;
        }
    }
    acc.retain(|_, c| *c != 0);
    acc
}

#[test]
fn q_one_gives_ordinary_minors() {
    for g in corpus() {
        let x = path_matrix::<i64>(&g).unwrap();
        for p in pairs(g.m(), g.n(), 3) {
            assert_eq!(specialize(&qminor_flows(&g, &p).unwrap()), classical_minor(&x, &p), "{p}");
        }
    }
}

#[test]
fn coefficient_types_agree() {
    let g = grid(3, 3).unwrap();
    for p in pairs(3, 3, 3) {
        let narrow: NcPoly = qminor_flows(&g, &p).unwrap();
        let wide: WideNcPoly = qminor_flows(&g, &p).unwrap();
        let widened: NcPolynomial<i128> = narrow.convert(|c| i128::from(*c));
        assert_eq!(wide, widened);
    }
}
