//! Exact routines checked against brute-force enumeration.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use cobarlab::coalg::CoalgebraPresentation;
use cobarlab::cobar::cobar_complex;
use cobarlab::fixtures::{c_tilde, example_c2, example_x, FIXTURE_ARITY};
use cobarlab::gradedlin::{rank_of, span_membership, Field, Vector};
use cobarlab::twisting::preset_twisting;

const Q: Field = Field::Rational;

fn to_vec(field: Field, coords: &[u64]) -> Vector<usize> {
    Vector::from_terms(
        field,
        coords
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, field.from_i64(c as i64))),
    )
}

/// Every combination of `gens` with coefficients in `0..p`.
fn all_combinations(p: u64, dim: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let total = p.pow(gens.len() as u32);
    for mut code in 0..total {
        let mut v = vec![0; dim];
        for g in gens {
            let c = code % p;
            code /= p;
            for (a, b) in v.iter_mut().zip(g) {
                *a = (*a + c * b) % p;
            }
        }
        out.insert(v);
    }
    out
}

fn instance(
    p: u64,
    max_dim: usize,
    max_gens: usize,
) -> impl Strategy<Value = (usize, Vec<Vec<u64>>, Vec<u64>)> {
    (1..=max_dim).prop_flat_map(move |dim| {
        (
            Just(dim),
            prop::collection::vec(prop::collection::vec(0..p, dim), 0..=max_gens),
            prop::collection::vec(0..p, dim),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn span_membership_matches_f2_enumeration((dim, gens, target) in instance(2, 12, 12)) {
        let f2 = Field::prime(2).unwrap();
        let reachable = all_combinations(2, dim, &gens);
        let vectors: Vec<_> = gens.iter().map(|g| to_vec(f2, g)).collect();
        let got = span_membership(f2, dim, &to_vec(f2, &target), &vectors).unwrap();
        prop_assert_eq!(got, reachable.contains(&target));
    }

    #[test]
    fn rank_matches_f3_orbit_size((dim, gens, _t) in instance(3, 5, 6)) {
        let f3 = Field::prime(3).unwrap();
        let size = all_combinations(3, dim, &gens).len();
        let vectors: Vec<_> = gens.iter().map(|g| to_vec(f3, g)).collect();
        prop_assert_eq!(3usize.pow(rank_of(f3, &vectors) as u32), size);
    }

    #[test]
    fn prime_field_arithmetic_matches_integers(a in -1000i64..1000, b in -1000i64..1000) {
        let f7 = Field::prime(7).unwrap();
        let (x, y) = (f7.from_i64(a), f7.from_i64(b));
        prop_assert_eq!(&x + &y, f7.from_i64(a + b));
        prop_assert_eq!(&x * &y, f7.from_i64(a * b));
        prop_assert_eq!(&x - &y, f7.from_i64(a - b));
        if a.rem_euclid(7) != 0 {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_membership_is_scale_invariant(
        (dim, gens, target) in instance(5, 5, 4),
        k in 1i64..9,
    ) {
        let vectors: Vec<_> = gens.iter().map(|g| to_vec(Q, g)).collect();
        let t = to_vec(Q, &target);
        let a = span_membership(Q, dim, &t, &vectors).unwrap();
        let b = span_membership(Q, dim, &t.scaled(&Q.from_i64(k)), &vectors).unwrap();
        prop_assert_eq!(a, b);
    }
}

type Dims = BTreeMap<(i64, u32), usize>;

fn engine_dims(
    twisting: &str,
    x: &CoalgebraPresentation,
    w: u32,
    window: (i64, i64),
) -> (Dims, (i64, i64)) {
    let alpha = preset_twisting(twisting, FIXTURE_ARITY, Q, 8).unwrap();
    let c = cobar_complex(&alpha, x, w, window).unwrap();
    let (lo, hi) = c.certified();
    let dims = c
        .dims()
        .into_iter()
        .filter(|d| d.degree >= lo && d.degree <= hi && d.dim > 0)
        .map(|d| ((d.degree, d.weight), d.dim))
        .collect();
    (dims, (lo, hi))
}

fn letter_degrees(x: &CoalgebraPresentation) -> Vec<i64> {
    x.generators().elements().iter().map(|e| e.degree).collect()
}

/// Words of length `1..=w` in the letters; a word of length n sits in degree
/// Σ|v| − (n − 1) and weight n.
fn word_oracle(letters: &[i64], w: u32, degrees: (i64, i64)) -> Dims {
    let mut out = Dims::new();
    let mut layer: Vec<i64> = vec![0];
    for n in 1..=w {
        layer = layer
            .iter()
            .flat_map(|s| letters.iter().map(move |d| s + d))
            .collect();
        for s in &layer {
            let degree = s - (n as i64 - 1);
            if degree >= degrees.0 && degree <= degrees.1 {
                *out.entry((degree, n)).or_default() += 1;
            }
        }
    }
    out
}

/// Multisets of length `1..=w` in which letters of even degree, odd after
/// the shift, appear at most once.
fn symmetric_oracle(letters: &[i64], w: u32, degrees: (i64, i64)) -> Dims {
    fn rec(
        letters: &[i64],
        start: usize,
        n: u32,
        sum: i64,
        w: u32,
        degrees: (i64, i64),
        out: &mut Dims,
    ) {
        if n > 0 {
            let degree = sum - (n as i64 - 1);
            if degree >= degrees.0 && degree <= degrees.1 {
                *out.entry((degree, n)).or_default() += 1;
            }
        }
        if n == w {
            return;
        }
        for i in start..letters.len() {
            let next = if (letters[i] - 1).rem_euclid(2) == 1 {
                i + 1
            } else {
                i
            };
            rec(letters, next, n + 1, sum + letters[i], w, degrees, out);
        }
    }
    let mut out = Dims::new();
    rec(letters, 0, 0, 0, w, degrees, &mut out);
    out
}

#[test]
fn kappa_slices_count_words() {
    for (x, w, window) in [
        (example_x(Q, FIXTURE_ARITY).unwrap(), 6, (-1, 6)),
        (example_c2(Q, FIXTURE_ARITY).unwrap(), 6, (2, 6)),
        (c_tilde(Q, FIXTURE_ARITY).unwrap(), 4, (0, 6)),
    ] {
        let (dims, certified) = engine_dims("kappa_ass", &x, w, window);
        assert!(dims.len() > 4, "{}", x.name());
        assert_eq!(
            dims,
            word_oracle(&letter_degrees(&x), w, certified),
            "{}",
            x.name()
        );
    }
}

#[test]
fn beta_slices_count_graded_monomials() {
    for (x, w, window) in [
        (example_x(Q, FIXTURE_ARITY).unwrap(), 8, (-1, 4)),
        (example_c2(Q, FIXTURE_ARITY).unwrap(), 6, (0, 8)),
        (c_tilde(Q, FIXTURE_ARITY).unwrap(), 5, (0, 9)),
    ] {
        let (dims, certified) = engine_dims("beta", &x, w, window);
        assert!(dims.len() > 4, "{}", x.name());
        assert_eq!(
            dims,
            symmetric_oracle(&letter_degrees(&x), w, certified),
            "{}",
            x.name()
        );
    }
}
