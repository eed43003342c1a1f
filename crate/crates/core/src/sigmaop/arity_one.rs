//! Operads and cooperads concentrated in arity 1: associative algebras and
//! coalgebras.

use std::collections::HashMap;

use super::cooperad::{Cooperad, CooperadArity};
use super::operad::Operad;
use super::shape::Tables;
use crate::error::Result;
use crate::gradedlin::{BasisElement, Field, Vector};

/// Exponent vectors of total degree at most `truncation`, ordered by total
/// degree and then lexicographically from the first variable down.
pub fn monomials(vars: usize, truncation: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 0..=truncation {
        let mut current = vec![0; vars];
        fn rec(k: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k + 1 >= current.len() {
                if let Some(last) = current.last_mut() {
                    *last = left;
                    out.push(current.clone());
                } else if left == 0 {
                    out.push(Vec::new());
                }
                return;
            }
            for e in (0..=left).rev() {
                current[k] = e;
                rec(k + 1, left - e, current, out);
            }
            current[k] = 0;
        }
        rec(0, total, &mut current, &mut out);
    }
    out
}

pub fn monomial_label(vars: &[&str], exps: &[usize]) -> String {
    let s: String = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// The polynomial algebra on degree-0 variables `vars`, modulo all monomials
/// of total degree above `truncation`. Weight is total degree.
pub fn polynomial_algebra(
    field: Field,
    name: &str,
    vars: &[&str],
    truncation: usize,
) -> Result<Operad> {
    let monos = monomials(vars.len(), truncation);
    let index: HashMap<Vec<usize>, usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let basis: Vec<(String, i64, u32)> = monos
        .iter()
        .map(|m| (monomial_label(vars, m), 0, m.iter().sum::<usize>() as u32))
        .collect();
    let mut compositions = HashMap::new();
    for (a, ma) in monos.iter().enumerate() {
        for (b, mb) in monos.iter().enumerate() {
            let prod: Vec<usize> = ma.iter().zip(mb).map(|(p, q)| p + q).collect();
            if let Some(&c) = index.get(&prod) {
                compositions.insert((1, 0, a, 1, b), Vector::basis(field, c));
            }
        }
    }
    let tables = Tables {
        field,
        max_arity: 1,
        bases: vec![Vec::new(), basis],
        actions: vec![Vec::new(), Vec::new()],
        compositions,
        unit: 0,
    };
    Operad::explicit(name, tables)
}

/// The coalgebra spanned by `1` (degree 0), `μ`, `ν` (degree 1) and
/// `η = μ⊗ν − ν⊗μ` (degree 2), with `μ`, `ν` primitive.
pub fn exterior_coalgebra(field: Field) -> Result<Cooperad> {
    let basis = vec![
        BasisElement::new("1", 0, 0),
        BasisElement::new("μ", 1, 1),
        BasisElement::new("ν", 1, 1),
        BasisElement::new("η", 2, 2),
    ];
    let one = field.one();
    Cooperad::explicit(
        "C",
        field,
        vec![CooperadArity {
            basis,
            actions: Vec::new(),
        }],
        0,
        vec![
            ((1, 3), (1, 0, 1, 1, 2), one.clone()),
            ((1, 3), (1, 0, 2, 1, 1), -one),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigmaop::{check_cooperad, check_operad};

    #[test]
    fn monomial_counts() {
        // Stars and bars: C(T + v, v).
        assert_eq!(monomials(2, 3).len(), 10);
        assert_eq!(monomials(1, 8).len(), 9);
        assert_eq!(monomials(0, 5), vec![Vec::<usize>::new()]);
        assert_eq!(monomial_label(&["x", "y"], &[2, 1]), "x^2y");
    }

    #[test]
    fn arity_one_presets_are_valid() {
        let p = polynomial_algebra(Field::Rational, "k[x,y]", &["x", "y"], 4).unwrap();
        assert!(check_operad(&p).unwrap().is_ok());
        let c = exterior_coalgebra(Field::Rational).unwrap();
        let report = check_cooperad(&c).unwrap();
        assert!(report.is_ok(), "{:?}", report.failures);
    }
}
