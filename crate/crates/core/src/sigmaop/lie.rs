//! The Lie operad as the suboperad of Ass spanned by bracket polynomials.
//!
//! `Lie(n)` has the left-normed basis `[x_1, x_{σ(2)}, …, x_{σ(n)}]`; every
//! structure map is computed inside `Ass` and re-expressed in that basis.

use std::collections::HashMap;
use std::sync::Arc;

use super::perm;
use super::shape::{Shape, Tables};
use crate::error::{Error, Result};
use crate::gradedlin::{Echelon, Field, Vector};

pub const LIE_ARITY_CAP: usize = 6;

/// Expansion of a left-normed bracket of the given variables in `Ass(n)`.
pub fn left_normed(field: Field, n: usize, vars: &[usize]) -> Vector<usize> {
    let mut words: Vec<(Vec<usize>, i64)> = vec![(vec![vars[0]], 1)];
    for &v in &vars[1..] {
        let mut next = Vec::with_capacity(words.len() * 2);
        for (w, c) in &words {
            let mut right = w.clone();
            right.push(v);
            next.push((right, *c));
            let mut left = vec![v];
            left.extend_from_slice(w);
            next.push((left, -c));
        }
        words = next;
    }
    let mut out = Vector::zero(field);
    for (w, c) in words {
        debug_assert_eq!(w.len(), n);
        out.add_term(perm::rank(&w), field.from_i64(c));
    }
    out
}

/// The left-normed basis of `Lie(n)` as vectors in `Ass(n)`, with labels.
pub fn lie_embedding(field: Field, n: usize) -> Vec<(String, Vector<usize>)> {
    if n == 1 {
        return vec![("id".into(), Vector::basis(field, 0))];
    }
    perm::all(n - 1)
        .into_iter()
        .map(|s| {
            let mut vars = vec![0];
            vars.extend(s.iter().map(|&t| t + 1));
            let label = format!(
                "[{}]",
                vars.iter()
                    .map(|v| (v + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            (label, left_normed(field, n, &vars))
        })
        .collect()
}

struct Embedded {
    vectors: Vec<Vector<usize>>,
    echelon: Echelon<usize, usize>,
}

impl Embedded {
    fn new(field: Field, n: usize) -> (Vec<String>, Self) {
        let basis = lie_embedding(field, n);
        let mut echelon = Echelon::new(field);
        let mut vectors = Vec::new();
        let mut labels = Vec::new();
        for (t, (label, v)) in basis.into_iter().enumerate() {
            echelon.insert_tracked(&v, t);
            labels.push(label);
            vectors.push(v);
        }
        (labels, Embedded { vectors, echelon })
    }

    fn express(&self, v: &Vector<usize>) -> Result<Vector<usize>> {
        self.echelon
            .express(v)
            .ok_or_else(|| Error::Validation("element outside the Lie suboperad".into()))
    }
}

/// Tabulated Lie operad up to `max_arity ≤ LIE_ARITY_CAP`.
pub fn lie_tables(field: Field, max_arity: usize) -> Result<Tables> {
    if max_arity > LIE_ARITY_CAP {
        return Err(Error::Arity(format!(
            "the Lie preset is available up to arity {LIE_ARITY_CAP}, not {max_arity}"
        )));
    }
    let ass = Shape::Ass;
    let mut bases = vec![Vec::new()];
    let mut embedded = vec![None];
    for n in 1..=max_arity {
        let (labels, e) = Embedded::new(field, n);
        bases.push(
            labels
                .into_iter()
                .map(|l| (l, 0i64, (n - 1) as u32))
                .collect::<Vec<_>>(),
        );
        embedded.push(Some(e));
    }
    let emb = |n: usize| embedded[n].as_ref().unwrap();

    let mut actions = vec![Vec::new()];
    for n in 1..=max_arity {
        let mut per_j = Vec::new();
        for j in 0..n - 1 {
            let mut images = Vec::new();
            for v in &emb(n).vectors {
                let mut acted = Vector::zero(field);
                for (&x, c) in v.iter() {
                    acted.add_scaled(&ass.act(field, n, j, x)?, c);
                }
                images.push(emb(n).express(&acted)?);
            }
            per_j.push(images);
        }
        actions.push(per_j);
    }

    let mut compositions = HashMap::new();
    for a in 1..=max_arity {
        for b in 1..=max_arity + 1 - a {
            let n = a + b - 1;
            for i in 0..a {
                for (x, vx) in emb(a).vectors.iter().enumerate() {
                    for (y, vy) in emb(b).vectors.iter().enumerate() {
                        let mut out = Vector::zero(field);
                        for (&u, cu) in vx.iter() {
                            for (&w, cw) in vy.iter() {
                                let prod = cu * cw;
                                out.add_scaled(&ass.compose(field, a, i, u, b, w)?, &prod);
                            }
                        }
                        let r = emb(n).express(&out)?;
                        if !r.is_zero() {
                            compositions.insert((a, i, x, b, y), r);
                        }
                    }
                }
            }
        }
    }
    Ok(Tables {
        field,
        max_arity,
        bases,
        actions,
        compositions,
        unit: 0,
    })
}

pub fn lie_shape(field: Field, max_arity: usize) -> Result<Shape> {
    Ok(Shape::Table(
        super::shape::Kind::Lie,
        Arc::new(lie_tables(field, max_arity)?),
    ))
}
