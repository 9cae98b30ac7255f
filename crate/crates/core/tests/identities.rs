mod common;

use common::{compact, corteges};
use qminor::algebra::poly_qpower_ratio;
use qminor::cortege::Cortege;
use qminor::flows::{qminor_flows, IndexPair};
use qminor::graph::grid;
use qminor::identities::{
    catalog, commutes, general_r1, general_r2, non_quasicommute_witness, pad, plucker4, quasicommute, quasicommute_oriented, relabel,
    reverse, rotate, transpose, verify_on_graph, verify_universal, weakly_separated, zeta_difference, IdentityTerm,
    QuadraticIdentity, Relabeling,
};
use qminor::matchings::{enumerate_feasible, is_feasible};
use qminor::NcPoly;
use rayon::prelude::*;
use std::collections::HashMap;

fn holds_on_grid(id: &QuadraticIdentity) -> bool {
    let id = compact(id);
    let g = grid(id.m, id.n).unwrap();
    verify_on_graph::<i64>(&g, &id).unwrap().is_zero()
}

fn balanced(id: &QuadraticIdentity) -> bool {
    verify_universal(id).unwrap().is_q_balanced()
}

/// One exponent raised by one; never a valid identity.
fn bumped(id: &QuadraticIdentity, k: usize) -> QuadraticIdentity {
    let mut out = id.clone();
    let n = out.lhs.len();
    if k < n {
        out.lhs[k].qexp += 1;
    } else {
        out.rhs[k - n].qexp += 1;
    }
    out
}

#[test]
fn catalog_holds_both_ways() {
    catalog().par_iter().for_each(|(name, id)| {
        assert!(balanced(id), "{name}: {id}");
        let g = grid(id.m, id.n).unwrap();
        assert!(verify_on_graph::<i64>(&g, id).unwrap().is_zero(), "{name} on grid({}, {})", id.m, id.n);
    });
}

#[test]
fn bumped_catalog_fails_both_ways() {
    catalog().par_iter().for_each(|(name, id)| {
        for k in 0..id.lhs.len() + id.rhs.len() {
            let bad = bumped(id, k);
            assert!(!balanced(&bad), "{name} bumped at {k}");
            assert!(!holds_on_grid(&bad), "{name} bumped at {k}");
        }
    });
}

#[test]
fn thirteen_twentyfour_never_quasicommute() {
    let s = Cortege::new(vec![1, 2], vec![1, 3], vec![1, 2], vec![2, 4]).unwrap();
    let g = grid(2, 4).unwrap();
    let t = g.commutation_table();
    let a = qminor_flows::<i64>(&g, &s.first()).unwrap();
    let b = qminor_flows::<i64>(&g, &s.second()).unwrap();
    let ab = a.mul(&b, t).unwrap();
    let ba = b.mul(&a, t).unwrap();
    assert_eq!(poly_qpower_ratio(&ab, &ba), None);
    for c in -3..=3 {
        let id = QuadraticIdentity::new(vec![IdentityTerm::plus(s.clone(), 0)], vec![IdentityTerm::plus(s.reversed(), c)])
            .unwrap();
        assert!(!balanced(&id), "c = {c}");
        assert!(!verify_on_graph::<i64>(&g, &id).unwrap().is_zero(), "c = {c}");
    }
}

#[test]
fn general_families_on_small_ground_sets() {
    let sets = common::subsets(5, 5);
    let mut r1 = 0;
    let mut r2 = 0;
    for i in &sets {
        for j in &sets {
            let id = if i.len() <= j.len() && j.len() - i.len() <= 2 {
                r1 += 1;
                general_r1(i, j).unwrap()
            } else if i.len() == j.len() + 2 {
                r2 += 1;
                general_r2(i, j).unwrap()
            } else {
                continue;
            };
            if id.terms().next().unwrap().cortege.ground_size() > 6 {
                continue;
            }
            assert!(balanced(&id), "{id}");
            assert!(holds_on_grid(&id), "{id}");
        }
    }
    assert!(r1 > 0 && r2 > 0);
}

/// Negating every exponent of the first family breaks it whenever some exponent is nonzero.
#[test]
fn r1_exponent_orientation() {
    for (i, j) in [(vec![1], vec![2, 3]), (vec![2], vec![1, 3, 4]), (vec![3], vec![1, 2])] {
        let id = general_r1(&i, &j).unwrap();
        assert!(id.rhs.iter().any(|t| t.qexp != 0));
        let mut flipped = id.clone();
        for t in &mut flipped.rhs {
            t.qexp = -t.qexp;
        }
        assert!(balanced(&id) && holds_on_grid(&id));
        assert!(!balanced(&flipped) && !holds_on_grid(&flipped), "{flipped}");
    }
}

/// The same expansion with every product reversed.
#[test]
fn reversed_r1_holds() {
    for (i, j) in [(vec![1], vec![2, 3]), (vec![2], vec![1, 3, 4]), (vec![1, 3], vec![1, 2, 4])] {
        let id = reverse(&general_r1(&i, &j).unwrap());
        assert!(id.lhs[0].cortege.i.len() > id.lhs[0].cortege.ip.len());
        assert!(balanced(&id) && holds_on_grid(&id), "{id}");
    }
}

/// Verdicts of the classifiers against feasible matchings and the symbolic ratio.
#[test]
fn classifier_matches_brute_force() {
    let sizes: Vec<(usize, usize)> = (1..=4).flat_map(|m| (1..=4).map(move |n| (m, n))).collect();
    let ties = sizes
        .par_iter()
        .map(|&(m, n)| {
            let g = grid(m, n).unwrap();
            let t = g.commutation_table();
            let mut minors: HashMap<IndexPair, NcPoly> = HashMap::new();
            let mut ties = 0usize;
            for c in corteges(m, n, 2) {
                // Each cortege is checked on the smallest grid holding it.
                if c.row_union().last() != Some(&m) || c.col_union().last() != Some(&n) {
                    continue;
                }
                let mut minor = |p: IndexPair| {
                    minors.entry(p.clone()).or_insert_with(|| qminor_flows(&g, &p).unwrap()).clone()
                };
                let (a, b) = (minor(c.first()), minor(c.second()));
                let ratio = poly_qpower_ratio(&a.mul(&b, t).unwrap(), &b.mul(&a, t).unwrap());
                let unique = enumerate_feasible(&c).len() == 1;
                let verdict = quasicommute(&c);
                assert_eq!(verdict, ratio, "{c}");
                assert_eq!(verdict.is_some(), unique, "{c}");
                assert_eq!(commutes(&c), ratio == Some(0), "{c}");
                if c.i.len() == c.ip.len() {
                    let here = quasicommute_oriented(&c);
                    let there = quasicommute_oriented(&c.reversed()).map(|x| -x);
                    if let (Some(x), Some(y)) = (here, there) {
                        assert_eq!(x, y, "orientations disagree on {c}");
                        ties += 1;
                    }
                }
            }
            ties
        })
        .sum::<usize>();
    assert!(ties > 0);
}

#[test]
fn witnesses_for_unseparated_flags() {
    let sets = common::subsets(6, 4);
    let mut found = 0;
    for i in &sets {
        for j in &sets {
            if i.len() + j.len() > 6 {
                continue;
            }
            if weakly_separated(i, j) {
                assert!(non_quasicommute_witness(i, j).is_err());
                continue;
            }
            let (m, m2) = non_quasicommute_witness(i, j).unwrap();
            let upto = |k: usize| (1..=k).collect::<Vec<_>>();
            let s = Cortege::new(upto(i.len()), i.clone(), upto(j.len()), j.clone()).unwrap();
            assert!(is_feasible(&m, &s).unwrap() && is_feasible(&m2, &s).unwrap(), "{s}");
            assert_ne!(zeta_difference(&s, &m).unwrap(), zeta_difference(&s, &m2).unwrap(), "{s}");
            found += 1;
        }
    }
    assert!(found > 0);
}

fn in_range(k: i32, kp: i32, g: i32, h: i32) -> bool {
    match (g >= 0, h >= 0) {
        (true, true) => g + h <= k,
        (false, false) => -g - h <= kp,
        (true, false) => g <= k && -h <= kp,
        (false, true) => -g <= kp && h <= k,
    }
}

/// Every rotation of `pad(id, 2, 2)` with `|g| + |h| <= 2`; those within range must succeed.
fn rotations(id: &QuadraticIdentity) -> Vec<(i32, i32, QuadraticIdentity)> {
    let padded = pad(id, 2, 2).unwrap();
    let c = &padded.terms().next().unwrap().cortege;
    let (k, kp) = (c.y_rows().len() as i32, c.y_cols().len() as i32);
    let mut out = Vec::new();
    for g in -2i32..=2 {
        for h in -2i32..=2 {
            if g.abs() + h.abs() > 2 {
                continue;
            }
            let rot = rotate(&padded, g, h);
            if in_range(k, kp, g, h) {
                out.push((g, h, rot.unwrap_or_else(|e| panic!("rotate({g}, {h}) of {id}: {e}"))));
            } else {
                assert!(rot.is_err(), "rotate({g}, {h}) of {id} out of range");
            }
        }
    }
    out
}

/// Every transform of `id` that applies, with a label.
fn transforms(id: &QuadraticIdentity) -> Vec<(String, QuadraticIdentity)> {
    let mut out = vec![("reverse".to_string(), reverse(id)), ("transpose".to_string(), transpose(id))];
    let t = &id.terms().next().unwrap().cortege;
    let spread = |s: &[usize]| s.iter().map(|x| 2 * x).collect::<Vec<_>>();
    let r = Relabeling {
        m: 2 * id.m + 1,
        n: 2 * id.n + 1,
        rows: spread(&t.y_rows()),
        common_rows: t.common_rows().iter().map(|x| 2 * x + 1).collect(),
        cols: spread(&t.y_cols()),
        common_cols: t.common_cols().iter().map(|x| 2 * x - 1).collect(),
    };
    out.push(("relabel".to_string(), relabel(id, &r).unwrap()));
    for (g, h, rot) in rotations(id) {
        out.push((format!("rotate({g}, {h})"), rot));
    }
    out
}

#[test]
fn transforms_keep_the_verdict() {
    catalog().par_iter().for_each(|(name, id)| {
        for (what, t) in transforms(id) {
            assert!(balanced(&t), "{what} of {name}: {t}");
        }
        let bad = bumped(id, 0);
        for (what, t) in transforms(&bad) {
            assert!(!balanced(&t), "{what} of bumped {name}: {t}");
        }
    });
}

#[test]
fn rotations_hold_on_grids() {
    catalog().par_iter().for_each(|(name, id)| {
        for (g, h, rot) in rotations(id) {
            assert!(holds_on_grid(&rot), "rotate({g}, {h}) of {name}: {rot}");
            assert!(!holds_on_grid(&bumped(&rot, 0)), "rotate({g}, {h}) of {name}");
        }
    });
}

#[test]
fn rotated_plucker4() {
    let id = pad(&plucker4(&[], 1, 2, 3, 4).unwrap(), 2, 2).unwrap();
    let rot = rotate(&id, 0, -1).unwrap();
    assert!(balanced(&rot));
    let g = grid(rot.m, rot.n).unwrap();
    assert!(verify_on_graph::<i64>(&g, &rot).unwrap().is_zero(), "{rot}");
}

#[test]
fn rotation_range_is_enforced() {
    let id = pad(&plucker4(&[], 1, 2, 3, 4).unwrap(), 2, 2).unwrap();
    // Flag minors of plucker4: |Y_R| = 0 after the common rows, |Y_C| = 4.
    assert!(rotate(&id, 1, 0).is_err());
    assert!(rotate(&id, -2, -2).is_ok());
}
