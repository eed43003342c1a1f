use std::collections::HashMap;

use super::presentation::{check_cooperad_regime, CoalgebraPresentation};
use crate::error::{Error, Result};
use crate::gradedlin::{BasisElement, GradedBasis, LinearMap, Vector};
use crate::sigmaop::{Cooperad, Kind, Mono, Normalizer};

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// The cofree conilpotent coalgebra on `generators`, truncated at word
/// length `max_weight`.
///
/// Supported for `Ass^c` (deconcatenation), `Com^c` (unshuffles), the unit
/// cooperad, and for any cooperad when `max_weight` is 1.
pub fn cofree_conilpotent(
    c: &Cooperad,
    generators: &GradedBasis,
    max_weight: usize,
) -> Result<CoalgebraPresentation> {
    check_cooperad_regime(c, generators)?;
    let kind = c.kind();
    let supported = max_weight <= 1
        || kind == Kind::Unit
        || (c.suspension() == 0 && matches!(kind, Kind::Ass | Kind::Com));
    if !supported {
        return Err(Error::Unsupported(format!(
            "cofree {} coalgebras are available up to weight 1",
            c.name()
        )));
    }
    let field = c.field();
    let letters: Vec<(String, i64)> = generators
        .elements()
        .iter()
        .map(|e| (e.label.clone(), e.degree))
        .collect();
    let nz = Normalizer::new(c, letters.clone());
    let monos: Vec<Mono> = nz
        .enumerate(max_weight, None, None)?
        .into_iter()
        .filter(|m| m.arity() == 1 || kind != Kind::Unit)
        .collect();
    let index: HashMap<Vec<usize>, usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.word.clone(), i))
        .collect();
    let label = |m: &Mono| -> String {
        if m.arity() == 1 && m.op == c.counit() {
            return letters[m.word[0]].0.clone();
        }
        match kind {
            Kind::Ass => m
                .word
                .iter()
                .map(|&l| letters[l].0.clone())
                .collect::<Vec<_>>()
                .join("⊗"),
            Kind::Com => {
                let mut parts = Vec::new();
                let mut t = 0;
                while t < m.word.len() {
                    let mut e = t;
                    while e < m.word.len() && m.word[e] == m.word[t] {
                        e += 1;
                    }
                    let name = &letters[m.word[t]].0;
                    parts.push(if e - t > 1 {
                        format!("{name}^{}", e - t)
                    } else {
                        name.clone()
                    });
                    t = e;
                }
                parts.join("·")
            }
            _ => format!(
                "{}({})",
                c.label(m.arity(), m.op),
                m.word
                    .iter()
                    .map(|&l| letters[l].0.clone())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    };
    let elements: Vec<BasisElement> = monos
        .iter()
        .map(|m| BasisElement::new(label(m), nz.degree(m), m.arity() as u32))
        .collect();
    let basis = GradedBasis::with_min_degree(elements, generators.min_degree())?;
    let degrees: Vec<i64> = (0..basis.len()).map(|i| basis.degree(i)).collect();

    let mut decomposition = Vec::with_capacity(monos.len());
    for m in &monos {
        let mut delta: Vector<Mono> = Vector::zero(field);
        match kind {
            Kind::Ass if m.arity() > 1 => {
                // Every cut of the word into k ≥ 2 consecutive nonempty pieces.
                let n = m.arity();
                for cuts in 1u32..(1 << (n - 1)) {
                    let mut pieces = Vec::new();
                    let mut start = 0;
                    for t in 0..n - 1 {
                        if cuts >> t & 1 == 1 {
                            pieces.push(index[&m.word[start..=t].to_vec()]);
                            start = t + 1;
                        }
                    }
                    pieces.push(index[&m.word[start..].to_vec()]);
                    delta.add_term(
                        Mono {
                            op: 0,
                            word: pieces,
                        },
                        field.one(),
                    );
                }
            }
            Kind::Com if m.arity() > 1 => {
                let block_letters = Normalizer::new(
                    c,
                    degrees
                        .iter()
                        .enumerate()
                        .map(|(i, &d)| (format!("#{i}"), d))
                        .collect(),
                );
                for blocks in set_partitions(m.arity()) {
                    if blocks.len() < 2 {
                        continue;
                    }
                    let mut order = Vec::new();
                    let mut word = Vec::new();
                    let mut dead = false;
                    for b in &blocks {
                        order.extend_from_slice(b);
                        let sub: Vec<usize> = b.iter().map(|&p| m.word[p]).collect();
                        match index.get(&sub) {
                            Some(&i) => word.push(i),
                            None => dead = true,
                        }
                    }
                    if dead {
                        continue;
                    }
                    let mut neg = false;
                    for s in 0..order.len() {
                        for t in s + 1..order.len() {
                            if order[s] > order[t] {
                                neg ^= odd(letters[m.word[order[s]]].1)
                                    && odd(letters[m.word[order[t]]].1);
                            }
                        }
                    }
                    let term = block_letters.normalize(&Vector::basis(field, 0), &word)?;
                    delta.add_scaled(&term, &field.one().signed(neg));
                }
            }
            _ => {}
        }
        decomposition.push(delta);
    }
    let d = LinearMap::zero(field, basis.clone(), basis.clone(), -1);
    let name = format!("cofree {} coalgebra", c.name());
    CoalgebraPresentation::new(&name, c.clone(), basis, d, decomposition)
}

/// Set partitions of `0..n`, blocks sorted by their least element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn rec(t: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if t == n {
            out.push(current.clone());
            return;
        }
        for b in 0..current.len() {
            current[b].push(t);
            rec(t + 1, n, current, out);
            current[b].pop();
        }
        current.push(vec![t]);
        rec(t + 1, n, current, out);
        current.pop();
    }
    rec(0, n, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
    }
}
