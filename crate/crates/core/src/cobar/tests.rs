use super::*;
use crate::coalg::{cocommutator, CoalgebraMorphism};
use crate::error::Error;
use crate::fixtures::*;
use crate::gradedlin::{Field, Vector, Verdict};
use crate::sigmaop::OperadMap;
use crate::twisting::{preset_twisting, TwistingMorphism};

const Q: Field = Field::Rational;
const A: usize = FIXTURE_ARITY;

fn tw(name: &str) -> TwistingMorphism {
    preset_twisting(name, A, Q, 8).unwrap()
}

fn schedule(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).collect()
}

#[test]
fn d_squared_vanishes_on_ass_fixtures() {
    for name in ["kappa_ass", "beta", "epsilon"] {
        let alpha = tw(name);
        for x in ass_coalgebras(Q, A).unwrap() {
            let c = cobar_complex(&alpha, &x, 8, (0, 8)).unwrap();
            assert!(!c.is_empty(), "{name} {}", x.name());
        }
    }
}

#[test]
fn d_squared_vanishes_on_lie_fixtures() {
    let alpha = tw("kappa_lie");
    for x in ass_coalgebras(Q, A).unwrap() {
        let l = cocommutator(&x).unwrap();
        cobar_complex(&alpha, &l, 8, (0, 8)).unwrap();
    }
}

#[test]
fn d_squared_vanishes_on_comodules() {
    let kappa = tw("kappa_cochain");
    for tau in ["kappa_cochain", "alpha_cochain", "epsilon_cochain"] {
        let alpha = tw(tau);
        for n in [1, 4, 8] {
            let m = y_module(kappa.target(), n).unwrap();
            let b = bar_comodule(&kappa, &m).unwrap();
            cobar_comodule(&alpha, &b, 8, (-4, 4)).unwrap();
        }
    }
}

#[test]
fn example_one_structure() {
    let beta = tw("beta");
    let x = example_x(Q, A).unwrap();
    let c = cobar_complex(&beta, &x, 8, (-1, 3)).unwrap();
    assert!(c.slice(0).is_empty());
    for degree in [1, 2] {
        let mut weights: Vec<u32> = c
            .slice(degree)
            .iter()
            .map(|&i| c.elements()[i].weight)
            .collect();
        weights.sort();
        assert_eq!(weights, (1..=8).collect::<Vec<_>>(), "degree {degree}");
    }
    // d(w x^{n-1}) = ±x^n ± 2 x^{n+1}: the internal part lowers w to x.
    for &j in &c.slice(2) {
        let n = c.elements()[j].weight as usize;
        let d = c.d(j);
        assert_eq!(d.len(), 2, "{}", c.label(j));
        let mut seen: Vec<(u32, String)> = d
            .iter()
            .map(|(&i, k)| (c.elements()[i].weight, k.abs().to_string()))
            .collect();
        seen.sort();
        assert_eq!(
            seen,
            vec![(n as u32, "1".to_string()), (n as u32 + 1, "2".to_string())]
        );
        let m = c.mono(j);
        assert_eq!(m.arity(), n);
    }
}

#[test]
fn example_one_survival() {
    let beta = tw("beta");
    let x = example_x(Q, A).unwrap();
    let c = cobar_complex(&beta, &x, 10, (0, 2)).unwrap();
    let cert = class_survives(&c, &c.parse_class("~x").unwrap(), &schedule(3, 10), 3).unwrap();
    assert!(cert.levels.iter().all(|l| !l.in_span));
    assert_eq!(cert.survives(), Some(true));
    // Word length gives the same obstruction under κ.
    let k = cobar_complex(&tw("kappa_ass"), &x, 10, (0, 2)).unwrap();
    let cert = class_survives(&k, &k.parse_class("~x").unwrap(), &schedule(3, 10), 3).unwrap();
    assert_eq!(cert.survives(), Some(true));
}

#[test]
fn epsilon_is_forgetful() {
    let eps = tw("epsilon");
    for x in ass_coalgebras(Q, A).unwrap() {
        let c = cobar_complex(&eps, &x, 8, (-1, 9)).unwrap();
        let under = x.underlying().unwrap();
        let labels: Vec<_> = c.elements().iter().map(|e| e.label.clone()).collect();
        let expected: Vec<_> = x
            .generators()
            .elements()
            .iter()
            .map(|e| e.label.clone())
            .collect();
        assert_eq!(labels, expected, "{}", x.name());
        for j in 0..c.len() {
            assert_eq!(
                c.d(j),
                under.differential().column(j).clone(),
                "{}",
                c.label(j)
            );
        }
    }
    let report = alpha_weq(&eps, &x_to_zero(Q, A).unwrap(), (-1, 9), &schedule(3, 8), 3).unwrap();
    assert!(report.exact);
    assert_eq!(report.summary, Stability::StableYes);
    let report = alpha_weq(
        &tw("beta"),
        &x_to_zero(Q, A).unwrap(),
        (0, 3),
        &schedule(3, 8),
        3,
    )
    .unwrap();
    assert_eq!(report.summary, Stability::StableNo);
}

#[test]
fn example_two() {
    let kappa = tw("kappa_ass");
    let c1 = example_c1(Q, A).unwrap();
    let o1 = cobar_complex(&kappa, &c1, 6, (-1, 8)).unwrap();
    for (k, b) in o1.betti(6).unwrap() {
        assert_eq!(b, usize::from(k == 1) * 6, "degree {k}");
    }
    let c2 = example_c2(Q, A).unwrap();
    let o2 = cobar_complex(&kappa, &c2, 6, (2, 6)).unwrap();
    assert!(o2.slice(3).is_empty());
    for (degree, letter) in [(4, 1usize), (5, 2usize)] {
        let s = o2.slice(degree);
        // One word x^m v x^n for each m + n ≤ 5.
        assert_eq!(s.len(), 21, "degree {degree}");
        for &i in &s {
            let m = o2.mono(i);
            assert_eq!(m.word.iter().filter(|&&l| l == letter).count(), 1);
            assert!(m.word.iter().all(|&l| l == letter || l == 0));
        }
    }
    let big = cobar_complex(&kappa, &c2, 10, (3, 5)).unwrap();
    let cert = class_survives(&big, &big.parse_class("~y").unwrap(), &schedule(3, 10), 3).unwrap();
    assert!(cert.levels.iter().all(|l| !l.in_span));
    assert_eq!(cert.survives(), Some(true));

    let inc = inclusion_c1_c2(Q, A).unwrap();
    let b = alpha_weq(&tw("beta"), &inc, (-1, 7), &schedule(3, 6), 3).unwrap();
    assert!(b.exact);
    assert_eq!(b.summary, Stability::StableYes);
    let k = alpha_weq(&kappa, &inc, (-1, 7), &schedule(3, 6), 3).unwrap();
    assert_eq!(k.summary, Stability::StableNo);
    assert_eq!(k.verdict(), Some(Verdict::No));
}

#[test]
fn functoriality_square() {
    let kappa = tw("kappa_ass");
    let f = OperadMap::ass_to_com(kappa.target(), tw("beta").target()).unwrap();
    for x in [example_x(Q, A).unwrap(), example_c2(Q, A).unwrap()] {
        let r = functoriality_check(&kappa, &f, &x, 6, (-1, 8)).unwrap();
        assert!(r.is_ok(), "{:?}", r);
    }
}

fn term(c: &CobarComplex, label: &str) -> usize {
    c.index_of(label)
        .unwrap_or_else(|| panic!("missing {label}"))
}

#[test]
fn comodule_formulas() {
    let kappa = tw("kappa_cochain");
    let alpha = tw("alpha_cochain");
    let m = y_module(kappa.target(), 4).unwrap();
    let b = bar_comodule(&kappa, &m).unwrap();
    let c = cobar_comodule(&alpha, &b, 8, (-1, 3)).unwrap();
    let v = |pairs: &[(&str, i64)]| {
        Vector::from_terms(Q, pairs.iter().map(|(l, k)| (term(&c, l), Q.from_i64(*k))))
    };
    // With p = x, m = y.
    assert_eq!(
        c.d(term(&c, "x⊗η⊗y")),
        v(&[("x^2⊗ν⊗y", 1), ("x⊗μ⊗y^2", -1)])
    );
    assert_eq!(c.d(term(&c, "x⊗μ⊗y")), v(&[("x^2⊗1⊗y", 1)]));
    assert_eq!(c.d(term(&c, "x⊗ν⊗y")), v(&[("x⊗1⊗y^2", 1)]));
}

#[test]
fn free_module_homology_is_m_mod_ym() {
    let kappa = tw("kappa_cochain");
    let alpha = tw("alpha_cochain");
    let s = s_y(kappa.target(), 8).unwrap();
    let c = cobar_comodule(&alpha, &bar_comodule(&kappa, &s).unwrap(), 8, (-1, 3)).unwrap();
    for level in [4, 6, 8] {
        let betti = c.betti(level).unwrap();
        assert_eq!(
            betti,
            [(0, 1), (1, 0), (2, 0)].into_iter().collect(),
            "level {level}"
        );
    }
    let class = c.parse_class("1⊗1⊗y").unwrap();
    assert!(class_survives(&c, &class, &[4, 6, 8], 3)
        .unwrap()
        .survives()
        .unwrap());
}

#[test]
fn finite_modules_keep_the_kernel_of_y() {
    // y^N is killed by y, so Ω_α B_κ M_N has a class ν⊗y^N in degree 1.
    let kappa = tw("kappa_cochain");
    let alpha = tw("alpha_cochain");
    let m4 = y_module(kappa.target(), 4).unwrap();
    let m8 = y_module(kappa.target(), 8).unwrap();
    let c = cobar_comodule(&alpha, &bar_comodule(&kappa, &m4).unwrap(), 8, (-1, 3)).unwrap();
    for level in [4, 6, 8] {
        assert_eq!(c.betti(level).unwrap()[&1], 1, "level {level}");
    }
    let proj = ModuleMap::projection(&m8, &m4).unwrap();
    assert!(matches!(
        ModuleMap::projection(&m4, &m8),
        Err(Error::Validation(_))
    ));
    let f = bar_map(&kappa, &proj).unwrap();
    let sched = [4, 6, 8];
    let a = alpha_weq(&alpha, &f, (-1, 3), &sched, 3).unwrap();
    assert_eq!(a.summary, Stability::StableNo);
    let k = alpha_weq(&kappa, &f, (-1, 3), &sched, 3).unwrap();
    assert_eq!(k.summary, Stability::StableNo);
}

#[test]
fn counit_is_a_quasi_isomorphism_under_kappa() {
    let kappa = tw("kappa_cochain");
    let sched = [4, 6, 8];
    for m in [
        y_module(kappa.target(), 4).unwrap(),
        y_module(kappa.target(), 8).unwrap(),
        s_y(kappa.target(), 8).unwrap(),
    ] {
        let r = counit_check(&kappa, &m, &sched, 3).unwrap();
        assert_eq!(r.summary, Stability::StableYes, "{}", m.name());
        assert!(matches!(
            counit_check(&tw("alpha_cochain"), &m, &sched, 3),
            Err(Error::Mismatch(_))
        ));
    }
    // Under α the counit lands in a k[x]-module, and forgetting y loses M.
    let triv = trivial_module(kappa.target()).unwrap();
    assert_eq!(
        counit_check(&kappa, &triv, &sched, 3).unwrap().summary,
        Stability::StableYes
    );
}

#[test]
fn truncated_algebra_is_guarded() {
    let kappa = preset_twisting("kappa_cochain", 1, Q, 4).unwrap();
    let m = y_module(kappa.target(), 2).unwrap();
    let b = bar_comodule(&kappa, &m).unwrap();
    assert!(matches!(
        cobar_comodule(&kappa, &b, 6, (-1, 3)),
        Err(Error::WindowNotCertified(_))
    ));
}

#[test]
fn mismatched_cooperad_is_rejected() {
    let x = example_x(Q, A).unwrap();
    assert!(matches!(
        cobar_complex(&tw("kappa_lie"), &x, 4, (0, 4)),
        Err(Error::Mismatch(_))
    ));
}

#[test]
fn nesting_of_weak_equivalences() {
    let morphisms: Vec<CoalgebraMorphism> = vec![
        inclusion_c1_c2(Q, A).unwrap(),
        x_to_zero(Q, A).unwrap(),
        CoalgebraMorphism::identity(&example_c2(Q, A).unwrap()),
        CoalgebraMorphism::from_zero(&example_x(Q, A).unwrap()),
    ];
    for f in &morphisms {
        for top in [4, 6] {
            let s = schedule(2, top);
            let v = |name: &str| {
                alpha_weq(&tw(name), f, (-1, 7), &s, 1)
                    .unwrap()
                    .verdict()
                    .unwrap()
            };
            let (k, b, e) = (v("kappa_ass"), v("beta"), v("epsilon"));
            if k == Verdict::Yes {
                assert_eq!(
                    b,
                    Verdict::Yes,
                    "{} → {}",
                    f.source().name(),
                    f.target().name()
                );
            }
            if b == Verdict::Yes {
                assert_eq!(
                    e,
                    Verdict::Yes,
                    "{} → {}",
                    f.source().name(),
                    f.target().name()
                );
            }
        }
    }
}

#[test]
fn cobar_map_is_a_chain_map() {
    let inc = inclusion_c1_c2(Q, A).unwrap();
    let m = cobar_map(&tw("kappa_ass"), &inc, 5, (0, 6)).unwrap();
    for (j, img) in m.images.iter().enumerate() {
        assert_eq!(img.len(), 1, "{}", m.source.label(j));
    }
}

#[test]
fn invertible_cone_separates_alpha_from_kappa() {
    // On L = k with y acting as 1, the Koszul complex on y is acyclic, so
    // 0 → L is invisible to α and ε but not to κ.
    let kappa = tw("kappa_cochain");
    let l = invertible_module(kappa.target(), "y").unwrap();
    let b = bar_comodule(&kappa, &l).unwrap();
    let f = CoalgebraMorphism::from_zero(&b);
    let sched = [4, 6, 8];
    for (name, expected) in [
        ("alpha_cochain", Stability::StableYes),
        ("epsilon_cochain", Stability::StableYes),
        ("kappa_cochain", Stability::StableNo),
    ] {
        let r = alpha_weq(&tw(name), &f, (-1, 3), &sched, 3).unwrap();
        assert_eq!(r.summary, expected, "{name}");
    }
    assert_eq!(
        counit_check(&kappa, &l, &sched, 3).unwrap().summary,
        Stability::StableYes
    );
}
