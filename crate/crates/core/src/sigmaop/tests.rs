use super::*;
use crate::gradedlin::{BasisElement, GradedBasis, Vector};
use std::collections::BTreeSet;

fn q() -> Field {
    Field::Rational
}

/// Dimension of the span of all bracket monomials, each variable used once,
/// expanded into words. Independent of the left-normed construction.
fn lie_dim_oracle(n: usize) -> usize {
    fn trees(vars: &[usize]) -> Vec<Vec<(Vec<usize>, i64)>> {
        if vars.len() == 1 {
            return vec![vec![(vars.to_vec(), 1)]];
        }
        let mut out = Vec::new();
        let n = vars.len();
        for mask in 1..(1u32 << n) - 1 {
            if mask & 1 == 0 {
                continue;
            }
            let left: Vec<usize> = (0..n)
                .filter(|t| mask >> t & 1 == 1)
                .map(|t| vars[t])
                .collect();
            let right: Vec<usize> = (0..n)
                .filter(|t| mask >> t & 1 == 0)
                .map(|t| vars[t])
                .collect();
            for l in trees(&left) {
                for r in trees(&right) {
                    let mut poly = Vec::new();
                    for (a, ca) in &l {
                        for (b, cb) in &r {
                            poly.push(([a.clone(), b.clone()].concat(), ca * cb));
                            poly.push(([b.clone(), a.clone()].concat(), -ca * cb));
                        }
                    }
                    out.push(poly);
                }
            }
        }
        out
    }
    let vars: Vec<usize> = (0..n).collect();
    let vecs: Vec<Vector<usize>> = trees(&vars)
        .into_iter()
        .map(|poly| {
            let mut v = Vector::zero(q());
            for (w, c) in poly {
                v.add_term(perm::rank(&w), q().from_i64(c));
            }
            v
        })
        .collect();
    crate::gradedlin::rank_of(q(), &vecs)
}

#[test]
fn preset_dimensions() {
    let com = preset_operad("Com", 4, q()).unwrap();
    let ass = preset_operad("Ass", 4, q()).unwrap();
    let lie = preset_operad("Lie", 4, q()).unwrap();
    let dims = |o: &Operad| (1..=4).map(|n| o.dim(n).unwrap()).collect::<Vec<_>>();
    assert_eq!(dims(&com), vec![1, 1, 1, 1]);
    assert_eq!(dims(&ass), vec![1, 2, 6, 24]);
    assert_eq!(dims(&lie), vec![1, 1, 2, 6]);
    for n in 1..=4 {
        assert_eq!(lie.dim(n).unwrap(), lie_dim_oracle(n));
    }
}

#[test]
fn presets_satisfy_axioms() {
    for field in [q(), Field::prime(5).unwrap()] {
        for name in ["Com", "Ass", "Lie", "Unit"] {
            let o = preset_operad(name, 5, field).unwrap();
            let r = check_operad(&o).unwrap();
            assert!(
                r.is_ok(),
                "{name}: {:?}",
                &r.failures[..r.failures.len().min(3)]
            );
        }
    }
}

#[test]
fn desuspensions_satisfy_axioms() {
    for name in ["Com", "Ass", "Lie"] {
        let mut o = preset_operad(name, 4, q()).unwrap();
        for k in 1..=2 {
            o = operadic_desuspension(&o);
            let r = check_operad(&o).unwrap();
            assert!(
                r.is_ok(),
                "S^-{k} {name}: {:?}",
                &r.failures[..r.failures.len().min(3)]
            );
        }
    }
}

#[test]
fn cooperad_presets_satisfy_axioms() {
    for name in ["Com^c", "Ass^c", "Lie^c"] {
        let c = Cooperad::preset(name, 4, q()).unwrap();
        assert!(check_cooperad(&c).unwrap().is_ok(), "{name}");
    }
}

#[test]
fn desuspension_degree_law() {
    let ass = preset_operad("Ass", 4, q()).unwrap();
    let com = preset_operad("Com", 4, q()).unwrap();
    let s = operadic_desuspension(&ass);
    for n in 1..=4 {
        for x in 0..ass.dim(n).unwrap() {
            assert_eq!(s.degree(n, x), ass.degree(n, x) - (n as i64 - 1));
        }
    }
    assert_eq!(operadic_desuspension(&com).degree(3, 0), -2);
    assert_eq!(operadic_desuspension(&com).lower_bound_slope(), Some(-1));
}

#[test]
fn flipped_sign_is_detected() {
    let ass = preset_operad("Ass", 3, q()).unwrap();
    let mut t = ass.to_tables().unwrap();
    let key = (2, 0, 0, 2, 0);
    let v = t.compositions[&key].negated();
    t.compositions.insert(key, v);
    let broken = Operad::explicit("broken", t).unwrap();
    assert!(!check_operad(&broken).unwrap().is_ok());
    let fine = Operad::explicit("copy", ass.to_tables().unwrap()).unwrap();
    assert!(check_operad(&fine).unwrap().is_ok());
}

#[test]
fn weight_zero_non_counit_is_detected() {
    let arity1 = CooperadArity {
        basis: vec![BasisElement::new("e", 0, 0), BasisElement::new("f", 0, 0)],
        actions: vec![],
    };
    let c = Cooperad::explicit("bad", q(), vec![arity1], 0, vec![]).unwrap();
    let r = check_cooperad(&c).unwrap();
    assert!(r.failures.iter().any(|f| f.contains("connected weight")));
}

fn gens(spec: &[(&str, i64)]) -> GradedBasis {
    GradedBasis::new(
        spec.iter()
            .map(|(l, d)| BasisElement::new(*l, *d, 1))
            .collect(),
    )
    .unwrap()
}

#[test]
fn free_algebra_examples() {
    let s_ass = operadic_desuspension(&preset_operad("Ass", 4, q()).unwrap());
    let b = free_algebra_basis(&s_ass, &gens(&[("x", 1), ("w", 2)]), 4, (None, None)).unwrap();
    // Words in x, w of length ≤ 4; degree = #w + 1.
    assert_eq!(b.len(), 2 + 4 + 8 + 16);
    assert!(b.index_of("~x^3").is_some());
    assert_eq!(b.degree(b.index_of("~w~x^3").unwrap()), 2);

    let s_com = operadic_desuspension(&preset_operad("Com", 4, q()).unwrap());
    let b =
        free_algebra_basis(&s_com, &gens(&[("x", 1), ("y", 2)]), 3, (Some(0), Some(10))).unwrap();
    // x has |x|−1 even: any power survives; y has odd effective parity.
    let labels: BTreeSet<_> = b.elements().iter().map(|e| e.label.clone()).collect();
    assert!(labels.contains("~x^3"));
    assert!(!labels.contains("~y^2"));
}

/// Oracle: count words (Ass) and multisets (Com) by brute force.
#[test]
fn free_basis_counts() {
    let letters = [("a", 0i64), ("b", 1), ("c", 2)];
    let g = gens(&letters);
    for k in 0..2u32 {
        let mut ass = preset_operad("Ass", 4, q()).unwrap();
        let mut com = preset_operad("Com", 4, q()).unwrap();
        for _ in 0..k {
            ass = operadic_desuspension(&ass);
            com = operadic_desuspension(&com);
        }
        let ba = free_algebra_basis(&ass, &g, 4, (Some(-100), Some(100))).unwrap();
        assert_eq!(ba.len(), 3 + 9 + 27 + 81);
        let bc = free_algebra_basis(&com, &g, 4, (Some(-100), Some(100))).unwrap();
        let mut count = 0;
        for n in 1..=4usize {
            for code in 0..3usize.pow(n as u32) {
                let w: Vec<usize> = (0..n).map(|t| code / 3usize.pow(t as u32) % 3).collect();
                if w.windows(2).any(|p| p[0] > p[1]) {
                    continue;
                }
                let repeats_odd = (0..3).any(|l| {
                    let m = w.iter().filter(|&&v| v == l).count();
                    m > 1 && (letters[l].1 + k as i64) % 2 == 1
                });
                if !repeats_odd {
                    count += 1;
                }
            }
        }
        assert_eq!(bc.len(), count, "k = {k}");
    }
}

#[test]
fn lie_coinvariants_match_free_lie_algebra() {
    // Free Lie algebra on two even letters: dims by length 2, 1, 2, 3 (Witt).
    let lie = preset_operad("Lie", 4, q()).unwrap();
    let b = free_algebra_basis(&lie, &gens(&[("x", 0), ("y", 0)]), 4, (Some(0), Some(0))).unwrap();
    let mut by_len = [0usize; 5];
    for e in b.elements() {
        by_len[e.weight as usize] += 1;
    }
    assert_eq!(&by_len[1..], &[2, 1, 2, 3]);
}

#[test]
fn regime_check() {
    let s_com = operadic_desuspension(&preset_operad("Com", 3, q()).unwrap());
    assert!(check_regime(&s_com, &gens(&[("x", 0)]), None).is_err());
    assert!(check_regime(&s_com, &gens(&[("x", 1)]), None).is_ok());
    assert!(check_regime(&s_com, &gens(&[("x", 0)]), Some(-3)).is_ok());
}

#[test]
fn maps_validate() {
    let ass = preset_operad("Ass", 4, q()).unwrap();
    let com = preset_operad("Com", 4, q()).unwrap();
    let lie = preset_operad("Lie", 4, q()).unwrap();
    let unit = preset_operad("Unit", 4, q()).unwrap();
    assert!(OperadMap::ass_to_com(&ass, &com)
        .unwrap()
        .validate()
        .unwrap()
        .is_ok());
    assert!(OperadMap::lie_to_ass(&lie, &ass)
        .unwrap()
        .validate()
        .unwrap()
        .is_ok());
    assert!(OperadMap::augmentation(&ass, &unit)
        .unwrap()
        .validate()
        .unwrap()
        .is_ok());
    let (sa, sc) = (operadic_desuspension(&ass), operadic_desuspension(&com));
    assert!(OperadMap::ass_to_com(&sa, &sc)
        .unwrap()
        .validate()
        .unwrap()
        .is_ok());
    // Lie → Ass → Com kills brackets.
    let f = OperadMap::ass_to_com(&ass, &com)
        .unwrap()
        .after(&OperadMap::lie_to_ass(&lie, &ass).unwrap())
        .unwrap();
    assert!(f.apply(2, 0).unwrap().is_zero());

    let ac = Cooperad::preset("Ass^c", 4, q()).unwrap();
    let lc = Cooperad::preset("Lie^c", 4, q()).unwrap();
    let g = CooperadMap::ass_to_lie(&ac, &lc).unwrap();
    assert!(g.validate().unwrap().is_ok());
    assert!(CooperadMap::identity(&ac).validate().unwrap().is_ok());
}
