use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::lie::lie_shape;
use super::perm;
use super::shape::{desuspension_sign, Kind, Shape, Tables};
use crate::error::{Error, Result};
use crate::gradedlin::{BasisElement, Field, GradedBasis, Vector};

/// A symmetric operad, possibly desuspended `suspension` times.
///
/// `Com`, `Ass` and `Unit` are defined by formulas in every arity; `max_arity`
/// bounds the tabulated data and the exhaustive axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operad {
    name: String,
    field: Field,
    shape: Shape,
    suspension: u32,
    max_arity: usize,
}

impl Operad {
    pub fn preset(name: &str, max_arity: usize, field: Field) -> Result<Operad> {
        if max_arity == 0 {
            return Err(Error::Arity("max_arity must be at least 1".into()));
        }
        let shape = match name {
            "Com" => Shape::Com,
            "Ass" => Shape::Ass,
            "Unit" => Shape::Unit,
            "Lie" => lie_shape(field, max_arity)?,
            other => return Err(Error::UnknownName(format!("operad preset {other}"))),
        };
        Ok(Operad {
            name: name.to_string(),
            field,
            shape,
            suspension: 0,
            max_arity,
        })
    }

    /// An operad given by tables; validate with [`super::check_operad`].
    pub fn explicit(name: &str, tables: Tables) -> Result<Operad> {
        tables_consistent(&tables)?;
        Ok(Operad {
            name: name.to_string(),
            field: tables.field,
            max_arity: tables.max_arity,
            shape: Shape::Table(Kind::Explicit, Arc::new(tables)),
            suspension: 0,
        })
    }

    pub(crate) fn from_parts(
        name: String,
        field: Field,
        shape: Shape,
        suspension: u32,
        max_arity: usize,
    ) -> Self {
        Operad {
            name,
            field,
            shape,
            suspension,
            max_arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn kind(&self) -> Kind {
        self.shape.kind()
    }

    pub(crate) fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn suspension(&self) -> u32 {
        self.suspension
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Formula-defined operads are usable in every arity; tabulated ones only
    /// up to their table.
    pub fn arity_limit(&self) -> Option<usize> {
        self.shape.arity_bound()
    }

    pub fn sigma_split(&self) -> bool {
        self.field.characteristic() == 0 || self.kind() != Kind::Com
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        self.shape.dim(n)
    }

    pub fn vanishes(&self, n: usize) -> bool {
        self.shape.vanishes(n)
    }

    pub fn unit(&self) -> usize {
        self.shape.unit()
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        self.shape.label(n, x)
    }

    pub fn degree(&self, n: usize, x: usize) -> i64 {
        self.shape.degree(n, x) - self.suspension as i64 * (n as i64 - 1)
    }

    pub fn weight(&self, n: usize, x: usize) -> u32 {
        self.shape.weight(n, x)
    }

    pub fn index_of(&self, n: usize, label: &str) -> Result<usize> {
        let dim = self.dim(n)?;
        (0..dim)
            .find(|&x| self.label(n, x) == label)
            .ok_or_else(|| Error::UnknownName(format!("{label} in {}({n})", self.name)))
    }

    pub fn basis(&self, n: usize) -> Result<GradedBasis> {
        let elements = (0..self.dim(n)?)
            .map(|x| BasisElement::new(self.label(n, x), self.degree(n, x), self.weight(n, x)))
            .collect();
        GradedBasis::new(elements)
    }

    /// Right action of `τ_j` (swapping inputs `j`, `j+1`).
    pub fn act(&self, n: usize, j: usize, x: usize) -> Result<Vector<usize>> {
        let v = self.shape.act(self.field, n, j, x)?;
        Ok(if self.suspension % 2 == 1 {
            v.negated()
        } else {
            v
        })
    }

    pub fn act_vec(&self, n: usize, j: usize, v: &Vector<usize>) -> Result<Vector<usize>> {
        let mut out = Vector::zero(self.field);
        for (&x, c) in v.iter() {
            out.add_scaled(&self.act(n, j, x)?, c);
        }
        Ok(out)
    }

    /// Action of an arbitrary permutation, `(p·ρ)(v) = p(ρ·v)`.
    pub fn act_perm(&self, n: usize, rho: &[usize], v: &Vector<usize>) -> Result<Vector<usize>> {
        let mut out = v.clone();
        for j in perm::adjacent_word(rho) {
            out = self.act_vec(n, j, &out)?;
        }
        Ok(out)
    }

    /// `x ∘_i y` (zero-based `i`).
    pub fn compose(
        &self,
        a: usize,
        i: usize,
        x: usize,
        b: usize,
        y: usize,
    ) -> Result<Vector<usize>> {
        let v = self.shape.compose(self.field, a, i, x, b, y)?;
        let odd = desuspension_sign(self.suspension, a, i, b, self.shape.degree(b, y));
        Ok(if odd { v.negated() } else { v })
    }

    pub fn compose_vec(
        &self,
        a: usize,
        i: usize,
        x: &Vector<usize>,
        b: usize,
        y: &Vector<usize>,
    ) -> Result<Vector<usize>> {
        let mut out = Vector::zero(self.field);
        for (&u, cu) in x.iter() {
            for (&w, cw) in y.iter() {
                out.add_scaled(&self.compose(a, i, u, b, w)?, &(cu * cw));
            }
        }
        Ok(out)
    }

    /// Largest `ℓ` with every arity-`n` element (`2 ≤ n ≤ max_arity`) in
    /// degree at least `ℓ(n−1)`; `None` when those arities vanish.
    pub fn lower_bound_slope(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        for n in 2..=self.max_arity {
            let Ok(dim) = self.dim(n) else { continue };
            let span = n as i64 - 1;
            for x in 0..dim.min(1 << 12) {
                let l = self.degree(n, x).div_euclid(span);
                best = Some(best.map_or(l, |b: i64| b.min(l)));
            }
        }
        best
    }

    pub fn desuspend(&self) -> Operad {
        Operad {
            name: format!("S^-1 {}", self.name),
            suspension: self.suspension + 1,
            ..self.clone()
        }
    }

    pub fn metadata(&self) -> OperadMetadata {
        OperadMetadata {
            name: self.name.clone(),
            kind: self.kind(),
            suspension: self.suspension,
            max_arity: self.max_arity,
            dims: (1..=self.max_arity)
                .map(|n| self.dim(n).unwrap_or(0))
                .collect(),
            lower_bound_slope: self.lower_bound_slope(),
            sigma_split: self.sigma_split(),
        }
    }

    /// Tabulates this operad up to `max_arity` (for inspection or editing).
    pub fn to_tables(&self) -> Result<Tables> {
        let m = self.max_arity;
        let mut bases = vec![Vec::new()];
        let mut actions = vec![Vec::new()];
        for n in 1..=m {
            let d = self.dim(n)?;
            bases.push(
                (0..d)
                    .map(|x| (self.label(n, x), self.degree(n, x), self.weight(n, x)))
                    .collect(),
            );
            let mut per_j = Vec::new();
            for j in 0..n.saturating_sub(1) {
                per_j.push(
                    (0..d)
                        .map(|x| self.act(n, j, x))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            actions.push(per_j);
        }
        let mut compositions = HashMap::new();
        for a in 1..=m {
            for b in 1..=m + 1 - a {
                for i in 0..a {
                    for x in 0..self.dim(a)? {
                        for y in 0..self.dim(b)? {
                            let v = self.compose(a, i, x, b, y)?;
                            if !v.is_zero() {
                                compositions.insert((a, i, x, b, y), v);
                            }
                        }
                    }
                }
            }
        }
        Ok(Tables {
            field: self.field,
            max_arity: m,
            bases,
            actions,
            compositions,
            unit: self.unit(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperadMetadata {
    pub name: String,
    pub kind: Kind,
    pub suspension: u32,
    pub max_arity: usize,
    pub dims: Vec<usize>,
    pub lower_bound_slope: Option<i64>,
    pub sigma_split: bool,
}

/// Shape checks for user tables: sizes, index bounds and degree homogeneity.
pub(crate) fn tables_consistent(t: &Tables) -> Result<()> {
    let m = t.max_arity;
    if t.bases.len() != m + 1 || t.actions.len() != m + 1 {
        return Err(Error::DimensionMismatch(
            "tables must cover arities 1..=max_arity".into(),
        ));
    }
    if t.bases.get(1).is_none_or(|b| t.unit >= b.len()) {
        return Err(Error::Validation(
            "unit must be an arity-1 basis element".into(),
        ));
    }
    for n in 1..=m {
        let d = t.bases[n].len();
        if t.actions[n].len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "arity {n} needs {} generators",
                n - 1
            )));
        }
        for images in &t.actions[n] {
            if images.len() != d || images.iter().any(|v| v.keys().any(|&k| k >= d)) {
                return Err(Error::DimensionMismatch(format!(
                    "action matrix in arity {n}"
                )));
            }
        }
    }
    for (&(a, i, x, b, y), v) in &t.compositions {
        let n = a + b - 1;
        if a == 0 || b == 0 || i >= a || n > m || x >= t.bases[a].len() || y >= t.bases[b].len() {
            return Err(Error::DimensionMismatch(format!(
                "composition entry ({a},{i},{x},{b},{y})"
            )));
        }
        let want = t.bases[a][x].1 + t.bases[b][y].1;
        for &z in v.keys() {
            if z >= t.bases[n].len() {
                return Err(Error::DimensionMismatch(format!(
                    "composition result {z} in arity {n}"
                )));
            }
            if t.bases[n][z].1 != want {
                return Err(Error::Degree(format!(
                    "{} ∘ {} lands on {} of the wrong degree",
                    t.bases[a][x].0, t.bases[b][y].0, t.bases[n][z].0
                )));
            }
        }
    }
    Ok(())
}
