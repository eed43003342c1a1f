use super::*;
use crate::error::Error;
use crate::gradedlin::{BasisElement, Field, GradedBasis, LinearMap, Vector};
use crate::sigmaop::{free_algebra_basis, Cooperad, CooperadMap, Mono, Operad};

fn q() -> Field {
    Field::Rational
}

fn gens(spec: &[(&str, i64)]) -> GradedBasis {
    GradedBasis::new(
        spec.iter()
            .map(|(l, d)| BasisElement::new(*l, *d, 1))
            .collect(),
    )
    .unwrap()
}

fn ass_c() -> Cooperad {
    Cooperad::preset("Ass^c", 4, q()).unwrap()
}

fn c_tilde(w: usize) -> CoalgebraPresentation {
    cofree_conilpotent(&ass_c(), &gens(&[("x", 1), ("y", 4)]), w).unwrap()
}

fn v(c: &CoalgebraPresentation, terms: &[(&str, i64)]) -> Vector<usize> {
    Vector::from_terms(
        q(),
        terms
            .iter()
            .map(|(l, k)| (c.generators().index_of(l).unwrap(), q().from_i64(*k))),
    )
}

fn example_x() -> CoalgebraPresentation {
    let ct = c_tilde(2);
    let span = vec![
        ("x".to_string(), v(&ct, &[("x", 1)])),
        ("w".to_string(), v(&ct, &[("x⊗x", 1)])),
    ];
    sub_coalgebra(&ct, "X", &span, &[(1, Vector::basis(q(), 0))]).unwrap()
}

fn example_c2() -> CoalgebraPresentation {
    let ct = c_tilde(2);
    let span = vec![
        ("x".to_string(), v(&ct, &[("x", 1)])),
        ("y".to_string(), v(&ct, &[("y", 1)])),
        ("z".to_string(), v(&ct, &[("x⊗y", 1), ("y⊗x", 1)])),
    ];
    sub_coalgebra(&ct, "C2", &span, &[(2, Vector::basis(q(), 1))]).unwrap()
}

#[test]
fn cofree_ass_basis_and_laws() {
    let ct = c_tilde(2);
    let labels: Vec<_> = ct
        .generators()
        .elements()
        .iter()
        .map(|e| e.label.as_str())
        .collect();
    assert_eq!(labels, vec!["x", "y", "x⊗x", "x⊗y", "y⊗x", "y⊗y"]);
    let r0 = ct.validate().unwrap();
    assert!(r0.is_ok(), "{:?}", r0.violations);
    let big = cofree_conilpotent(&ass_c(), &gens(&[("x", 1), ("y", 2)]), 4).unwrap();
    let r = big.validate().unwrap();
    assert!(r.is_ok(), "{:?}", r.violations);
}

#[test]
fn cofree_com_counts_and_laws() {
    let com_c = Cooperad::preset("Com^c", 4, q()).unwrap();
    let c = cofree_conilpotent(&com_c, &gens(&[("x", 2)]), 3).unwrap();
    let labels: Vec<_> = c
        .generators()
        .elements()
        .iter()
        .map(|e| e.label.as_str())
        .collect();
    assert_eq!(labels, vec!["x", "x^2", "x^3"]);
    let r = c.validate().unwrap();
    assert!(r.is_ok(), "{:?}", r.violations);
    let mixed = cofree_conilpotent(&com_c, &gens(&[("a", 1), ("b", 2), ("c", 3)]), 4).unwrap();
    let r = mixed.validate().unwrap();
    assert!(r.is_ok(), "{:?}", r.violations);
}

/// Weight-w slices of a cofree coalgebra match the free-algebra word count
/// over the predual operad.
#[test]
fn cofree_counting_law() {
    for name in ["Ass", "Com"] {
        let op = Operad::preset(name, 4, q()).unwrap();
        let co = crate::sigmaop::linear_dual_cooperad(&op, 4).unwrap();
        let g = gens(&[("a", 1), ("b", 2)]);
        let c = cofree_conilpotent(&co, &g, 4).unwrap();
        let free = free_algebra_basis(&op, &g, 4, (Some(-50), Some(50))).unwrap();
        for w in 1..=4 {
            let count = |b: &GradedBasis| b.elements().iter().filter(|e| e.weight == w).count();
            assert_eq!(count(c.generators()), count(&free), "{name} weight {w}");
        }
    }
}

#[test]
fn primitive_generators_at_weight_one() {
    let lie_c = Cooperad::preset("Lie^c", 3, q()).unwrap();
    let c = cofree_conilpotent(&lie_c, &gens(&[("x", 1)]), 1).unwrap();
    assert_eq!(c.generators().len(), 1);
    assert!(c.decomposition(0).is_zero());
    assert!(matches!(
        cofree_conilpotent(&lie_c, &gens(&[("x", 1)]), 2),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn regime_is_enforced() {
    assert!(matches!(
        cofree_conilpotent(&ass_c(), &gens(&[("x", 0)]), 2),
        Err(Error::Regime(_))
    ));
}

#[test]
fn example_coalgebras() {
    let x = example_x();
    assert!(x.validate().unwrap().is_ok());
    assert_eq!(x.describe(x.decomposition(1)), "1*mu12*(x,x)");
    let c2 = example_c2();
    assert!(c2.validate().unwrap().is_ok());
    assert_eq!(c2.decomposition(2).len(), 2);
}

#[test]
fn non_closed_span_is_rejected() {
    let ct = c_tilde(2);
    let span = vec![
        ("x".to_string(), v(&ct, &[("x", 1)])),
        ("xy".to_string(), v(&ct, &[("x⊗y", 1)])),
    ];
    match sub_coalgebra(&ct, "bad", &span, &[]) {
        Err(Error::NotClosed(m)) => assert!(m.contains("y lies outside"), "{m}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn degree_violation() {
    // X with dw = y: the differential has the wrong degree.
    let g = gens(&[("x", 1), ("y", 4), ("w", 2)]);
    let d = LinearMap::from_entries(q(), g.clone(), g.clone(), -1, [(1, 2, q().one())]);
    assert!(matches!(d, Err(Error::Degree(_))));
}

#[test]
fn coderivation_violation_has_witness() {
    let g = gens(&[("x", 1), ("p", 2), ("q", 3)]);
    let d = LinearMap::from_entries(q(), g.clone(), g.clone(), -1, [(1, 2, q().one())]).unwrap();
    let dec = vec![
        Vector::zero(q()),
        Vector::basis(
            q(),
            Mono {
                op: 0,
                word: vec![0, 0],
            },
        ),
        Vector::zero(q()),
    ];
    let c = CoalgebraPresentation::new("bad", ass_c(), g, d, dec).unwrap();
    let r = c.validate().unwrap();
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].law, Law::Coderivation);
    assert!(r.violations[0].witness.contains("Δ(d q)"));
}

#[test]
fn cycles_break_conilpotence() {
    let g = gens(&[("a", 2), ("b", 1), ("z", 1)]);
    let d = LinearMap::zero(q(), g.clone(), g.clone(), -1);
    let dec = vec![
        Vector::basis(
            q(),
            Mono {
                op: 0,
                word: vec![1, 2],
            },
        ),
        Vector::basis(
            q(),
            Mono {
                op: 0,
                word: vec![0, 2],
            },
        ),
        Vector::zero(q()),
    ];
    let c = CoalgebraPresentation::new("loop", ass_c(), g, d, dec).unwrap();
    let r = c.validate().unwrap();
    assert!(r.violations.iter().any(|v| v.law == Law::Conilpotence));
}

#[test]
fn pushforward_and_cocommutator() {
    let x = example_x();
    let id = CooperadMap::identity(x.cooperad());
    let same = pushforward(&id, &x).unwrap();
    assert_eq!(same, x);

    let ct = c_tilde(2);
    let span = vec![("x".to_string(), v(&ct, &[("x", 1)]))];
    let c1 = sub_coalgebra(&ct, "C1", &span, &[]).unwrap();
    for c in [&c1, &example_c2()] {
        let lie = cocommutator(c).unwrap();
        assert_eq!(lie.underlying().unwrap(), c.underlying().unwrap());
        for g in 0..lie.generators().len() {
            assert!(lie.decomposition(g).is_zero(), "{}", c.name());
        }
    }

    let span = vec![
        ("x".to_string(), v(&ct, &[("x", 1)])),
        ("y".to_string(), v(&ct, &[("y", 1)])),
        ("b".to_string(), v(&ct, &[("x⊗y", 1), ("y⊗x", -1)])),
    ];
    let skew = sub_coalgebra(&ct, "skew", &span, &[]).unwrap();
    let lie = cocommutator(&skew).unwrap();
    assert_eq!(lie.describe(lie.decomposition(2)), "2*[1,2]*(x,y)");
}

#[test]
fn morphisms() {
    let x = example_x();
    let ct = c_tilde(2);
    let span = vec![("x".to_string(), v(&ct, &[("x", 1)]))];
    let c1 = sub_coalgebra(&ct, "C1", &span, &[]).unwrap();
    let c2 = example_c2();
    let f = LinearMap::from_entries(
        q(),
        c1.generators().clone(),
        c2.generators().clone(),
        0,
        [(0, 0, q().one())],
    )
    .unwrap();
    let inc = CoalgebraMorphism::new(c1.clone(), c2.clone(), f).unwrap();
    assert!(inc.is_degreewise_mono());
    assert!(CoalgebraMorphism::to_zero(&x)
        .target()
        .generators()
        .is_empty());
    // Killing z but keeping y breaks f∘d = d∘f.
    let bad = LinearMap::from_entries(
        q(),
        c2.generators().clone(),
        c2.generators().clone(),
        0,
        [(0, 0, q().one()), (1, 1, q().one())],
    )
    .unwrap();
    assert!(matches!(
        CoalgebraMorphism::new(c2.clone(), c2.clone(), bad),
        Err(Error::NotChainMap(_))
    ));
}

#[test]
fn perturbed_decomposition_breaks_coassociativity() {
    let ct = cofree_conilpotent(&ass_c(), &gens(&[("x", 1), ("y", 2)]), 3).unwrap();
    let g = ct.generators().index_of("x⊗y⊗x").unwrap();
    let mut dec: Vec<Vector<Mono>> = (0..ct.generators().len())
        .map(|h| ct.decomposition(h).clone())
        .collect();
    let (m, _) = dec[g].first().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    dec[g].add_term(m, q().one());
    let bad = CoalgebraPresentation::new(
        "bad",
        ass_c(),
        ct.generators().clone(),
        ct.differential().clone(),
        dec,
    )
    .unwrap();
    let r = bad.validate().unwrap();
    assert!(r.violations.iter().any(|v| v.law == Law::Coassociativity));

    let com_c = Cooperad::preset("Com^c", 4, q()).unwrap();
    let c = cofree_conilpotent(&com_c, &gens(&[("x", 2)]), 3).unwrap();
    let mut dec: Vec<Vector<Mono>> = (0..3).map(|h| c.decomposition(h).clone()).collect();
    // Tripling only the binary part (a uniform rescaling would be an isomorphism).
    let (m, c0) = dec[2]
        .iter()
        .find(|(m, _)| m.arity() == 2)
        .map(|(m, c)| (m.clone(), c.clone()))
        .unwrap();
    dec[2].add_term(m, &c0 * &q().from_i64(2));
    let bad = CoalgebraPresentation::new(
        "bad",
        com_c,
        c.generators().clone(),
        c.differential().clone(),
        dec,
    )
    .unwrap();
    assert!(!bad.validate().unwrap().is_ok());
}
