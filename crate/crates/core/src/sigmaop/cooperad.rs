use std::collections::HashMap;
use std::sync::Arc;

use super::operad::{tables_consistent, Operad};
use super::shape::{Kind, Shape, Tables};
use crate::error::{Error, Result};
use crate::gradedlin::{BasisElement, Field, GradedBasis, Scalar, Vector};

/// A cooperad, stored as the linear dual of an operad (its predual).
///
/// Degrees are negated, the action is transposed and the partial
/// decompositions are transposes of the partial compositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cooperad {
    name: String,
    predual: Operad,
    max_arity: usize,
    star_labels: bool,
    /// Transposed action tables for tabulated shapes: `[n][j][x]`.
    co_actions: Option<Arc<Vec<Vec<Vec<Vector<usize>>>>>>,
}

/// One arity of user-supplied cooperad data.
#[derive(Clone, Debug, Default)]
pub struct CooperadArity {
    pub basis: Vec<BasisElement>,
    /// `actions[j][x]` is `x·τ_j`.
    pub actions: Vec<Vec<Vector<usize>>>,
}

impl Cooperad {
    fn with_predual(
        name: String,
        predual: Operad,
        max_arity: usize,
        star_labels: bool,
    ) -> Result<Self> {
        let co_actions = match predual.shape() {
            Shape::Table(..) => {
                let mut all = vec![Vec::new()];
                for n in 1..=max_arity {
                    let d = predual.dim(n)?;
                    let mut per_j = Vec::new();
                    for j in 0..n - 1 {
                        let mut cols = vec![Vector::zero(predual.field()); d];
                        for y in 0..d {
                            for (&x, c) in predual.act(n, j, y)?.iter() {
                                cols[x].add_term(y, c.clone());
                            }
                        }
                        per_j.push(cols);
                    }
                    all.push(per_j);
                }
                Some(Arc::new(all))
            }
            _ => None,
        };
        Ok(Cooperad {
            name,
            predual,
            max_arity,
            star_labels,
            co_actions,
        })
    }

    /// `Com^c`, `Ass^c`, `Lie^c` or `Unit^c` (the dual of the named operad preset).
    pub fn preset(name: &str, max_arity: usize, field: Field) -> Result<Cooperad> {
        let base = name.strip_suffix("^c").unwrap_or(name);
        linear_dual_cooperad(&Operad::preset(base, max_arity, field)?, max_arity)
    }

    /// A cooperad from explicit data: per-arity bases and actions, and
    /// partial decompositions `Δ_i(z) = Σ c · x ⊗ y` given as entries
    /// `((n, z), (a, i, x, b, y), c)` with `n = a + b − 1` and zero-based `i`.
    pub fn explicit(
        name: &str,
        field: Field,
        arities: Vec<CooperadArity>,
        counit: usize,
        decompositions: Vec<((usize, usize), (usize, usize, usize, usize, usize), Scalar)>,
    ) -> Result<Cooperad> {
        let max_arity = arities.len();
        let mut bases = vec![Vec::new()];
        let mut actions = vec![Vec::new()];
        for (k, ar) in arities.into_iter().enumerate() {
            let n = k + 1;
            let d = ar.basis.len();
            bases.push(
                ar.basis
                    .iter()
                    .map(|e| (e.label.clone(), -e.degree, e.weight))
                    .collect(),
            );
            if ar.actions.len() != n - 1 {
                return Err(Error::DimensionMismatch(format!(
                    "arity {n} needs {} action matrices",
                    n - 1
                )));
            }
            let mut per_j = Vec::new();
            for images in ar.actions {
                if images.len() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "action matrix in arity {n}"
                    )));
                }
                let mut cols = vec![Vector::zero(field); d];
                for (x, img) in images.iter().enumerate() {
                    for (&y, c) in img.iter() {
                        if y >= d {
                            return Err(Error::DimensionMismatch(format!(
                                "action entry in arity {n}"
                            )));
                        }
                        cols[y].add_term(x, c.clone());
                    }
                }
                per_j.push(cols);
            }
            actions.push(per_j);
        }
        let mut compositions: HashMap<_, Vector<usize>> = HashMap::new();
        for ((n, z), key, c) in decompositions {
            let (a, _, _, b, _) = key;
            if a + b != n + 1 {
                return Err(Error::Arity(format!(
                    "decomposition of arity {n} into {a} and {b}"
                )));
            }
            compositions
                .entry(key)
                .or_insert_with(|| Vector::zero(field))
                .add_term(z, c);
        }
        compositions.retain(|_, v| !v.is_zero());
        // Counit terms are implicit in the input.
        for n in 1..=max_arity {
            for x in 0..bases[n].len() {
                compositions
                    .entry((1, 0, counit, n, x))
                    .or_insert_with(|| Vector::basis(field, x));
                for i in 0..n {
                    compositions
                        .entry((n, i, x, 1, counit))
                        .or_insert_with(|| Vector::basis(field, x));
                }
            }
        }
        let tables = Tables {
            field,
            max_arity,
            bases,
            actions,
            compositions,
            unit: counit,
        };
        tables_consistent(&tables)?;
        let predual = Operad::from_parts(
            format!("{name}*"),
            field,
            Shape::Table(Kind::Explicit, Arc::new(tables)),
            0,
            max_arity,
        );
        Self::with_predual(name.to_string(), predual, max_arity, false)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.predual.field()
    }

    pub fn kind(&self) -> Kind {
        self.predual.kind()
    }

    pub fn suspension(&self) -> u32 {
        self.predual.suspension()
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn predual(&self) -> &Operad {
        &self.predual
    }

    pub fn arity_limit(&self) -> Option<usize> {
        self.predual.arity_limit()
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        self.predual.dim(n)
    }

    pub fn vanishes(&self, n: usize) -> bool {
        self.predual.vanishes(n)
    }

    pub fn counit(&self) -> usize {
        self.predual.unit()
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        let l = self.predual.label(n, x);
        if self.star_labels {
            format!("{l}*")
        } else {
            l
        }
    }

    pub fn degree(&self, n: usize, x: usize) -> i64 {
        -self.predual.degree(n, x)
    }

    pub fn weight(&self, n: usize, x: usize) -> u32 {
        self.predual.weight(n, x)
    }

    pub fn index_of(&self, n: usize, label: &str) -> Result<usize> {
        (0..self.dim(n)?)
            .find(|&x| self.label(n, x) == label)
            .ok_or_else(|| Error::UnknownName(format!("{label} in {}({n})", self.name)))
    }

    pub fn basis(&self, n: usize) -> Result<GradedBasis> {
        let elements = (0..self.dim(n)?)
            .map(|x| BasisElement::new(self.label(n, x), self.degree(n, x), self.weight(n, x)))
            .collect();
        GradedBasis::new(elements)
    }

    /// Right action of `τ_j`: the transpose of the predual action.
    pub fn act(&self, n: usize, j: usize, x: usize) -> Result<Vector<usize>> {
        match &self.co_actions {
            Some(t) => {
                if n > self.max_arity {
                    return Err(Error::Arity(format!("arity {n} beyond {}", self.max_arity)));
                }
                let v = t[n][j][x].clone();
                Ok(v)
            }
            // Formula shapes act by signed involutive permutation matrices,
            // which are their own transposes.
            None => self.predual.act(n, j, x),
        }
    }

    pub fn act_vec(&self, n: usize, j: usize, v: &Vector<usize>) -> Result<Vector<usize>> {
        let mut out = Vector::zero(self.field());
        for (&x, c) in v.iter() {
            out.add_scaled(&self.act(n, j, x)?, c);
        }
        Ok(out)
    }

    /// The `(a, i, b)` partial decomposition of `z ∈ C(a+b−1)`: pairs `(x, y)`
    /// with coefficient `⟨z, x ∘_i y⟩`.
    pub fn decompose(
        &self,
        z: usize,
        a: usize,
        i: usize,
        b: usize,
    ) -> Result<Vec<(usize, usize, Scalar)>> {
        let mut out = Vec::new();
        for x in 0..self.dim(a)? {
            for y in 0..self.dim(b)? {
                let c = self.predual.compose(a, i, x, b, y)?.coeff(&z);
                if !c.is_zero() {
                    out.push((x, y, c));
                }
            }
        }
        Ok(out)
    }
}

/// The linear dual of `p`, truncated at `max_arity`.
pub fn linear_dual_cooperad(p: &Operad, max_arity: usize) -> Result<Cooperad> {
    if let Some(limit) = p.arity_limit() {
        if p.kind() != Kind::Unit && max_arity > limit {
            return Err(Error::Arity(format!(
                "{} is tabulated only up to arity {limit}",
                p.name()
            )));
        }
    }
    let name = if p.suspension() == 0 {
        format!("{}^c", p.name())
    } else {
        format!("({})^c", p.name())
    };
    Cooperad::with_predual(name, p.clone(), max_arity, true)
}

/// The linear dual of a cooperad (its predual operad).
pub fn linear_dual_operad(c: &Cooperad) -> Operad {
    c.predual().clone()
}
