//! Homology of weight-filtered complexes at finite truncation.
//!
//! Elements carry a weight; the differential may raise it. The level-`N`
//! estimate of `H_k` is `dim(Z_k ∩ F_N) − dim(d(C_{k+1} ∩ F_N) ∩ F_N)`, where
//! images are never truncated. Keys are ordered by descending weight so that
//! an echelon pivot is the heaviest term of its row: a row lies in `F_N`
//! exactly when its pivot does.

use std::cmp::Reverse;

use super::basis::BasisElement;
use super::echelon::{kernel_of, Echelon};
use super::field::Field;
use super::sparse::Vector;
use crate::error::{Error, Result};

/// Echelon key: heavier elements sort first.
pub type Key = (Reverse<u32>, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    field: Field,
    elements: Vec<BasisElement>,
    /// `d` of each element whose differential is known; images are complete.
    columns: Vec<Option<Vector<usize>>>,
    /// Largest weight up to which every element in the degree window has a column.
    max_weight: u32,
    /// Degrees whose elements (up to `max_weight`) are all present with columns.
    window: (i64, i64),
}

impl FilteredComplex {
    pub fn new(
        field: Field,
        elements: Vec<BasisElement>,
        columns: Vec<Option<Vector<usize>>>,
        max_weight: u32,
        window: (i64, i64),
    ) -> Result<Self> {
        if elements.len() != columns.len() {
            return Err(Error::DimensionMismatch(
                "one column slot per element".into(),
            ));
        }
        for (j, col) in columns.iter().enumerate() {
            let Some(col) = col else { continue };
            for &i in col.keys() {
                if i >= elements.len() {
                    return Err(Error::DimensionMismatch(format!("row {i} out of range")));
                }
                if elements[i].degree != elements[j].degree - 1 {
                    return Err(Error::Degree(format!(
                        "d({}) hits {} of the wrong degree",
                        elements[j].label, elements[i].label
                    )));
                }
            }
        }
        for (e, col) in elements.iter().zip(&columns) {
            let inside = e.weight <= max_weight && e.degree >= window.0 && e.degree <= window.1;
            if inside && col.is_none() {
                return Err(Error::WindowNotCertified(format!(
                    "no differential recorded for {}",
                    e.label
                )));
            }
        }
        Ok(FilteredComplex {
            field,
            elements,
            columns,
            max_weight,
            window,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn column(&self, j: usize) -> Option<&Vector<usize>> {
        self.columns[j].as_ref()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Degrees in which homology is determined.
    pub fn certified(&self) -> (i64, i64) {
        (self.window.0 + 1, self.window.1 - 1)
    }

    pub fn key(&self, i: usize) -> Key {
        (Reverse(self.elements[i].weight), i)
    }

    pub fn to_keys(&self, v: &Vector<usize>) -> Vector<Key> {
        v.map_keys(|&i| self.key(i))
    }

    /// True when every recorded differential entry connects equal weights.
    pub fn preserves_weight(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, col)| {
            col.as_ref().is_none_or(|c| {
                c.keys()
                    .all(|&i| self.elements[i].weight == self.elements[j].weight)
            })
        })
    }

    fn check(&self, degree: i64, level: u32) -> Result<()> {
        let (lo, hi) = self.certified();
        if degree < lo || degree > hi {
            return Err(Error::WindowNotCertified(format!(
                "degree {degree} outside the certified range {lo}..{hi}"
            )));
        }
        if level > self.max_weight {
            return Err(Error::WindowNotCertified(format!(
                "level {level} exceeds the computed weight {}",
                self.max_weight
            )));
        }
        Ok(())
    }

    /// Indices of elements of `degree` and weight at most `level`.
    pub fn slice(&self, degree: i64, level: u32) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].degree == degree && self.elements[i].weight <= level)
            .collect()
    }

    fn col(&self, j: usize) -> &Vector<usize> {
        self.columns[j]
            .as_ref()
            .expect("column inside the certified window")
    }

    /// A basis of `Z_degree ∩ F_level`.
    pub fn cycles(&self, degree: i64, level: u32) -> Result<Vec<Vector<usize>>> {
        self.check(degree, level)?;
        let idx = self.slice(degree, level);
        let cols: Vec<_> = idx.iter().map(|&j| self.col(j).clone()).collect();
        Ok(kernel_of(self.field, &cols)
            .into_iter()
            .map(|rel| rel.map_keys(|&t| idx[t]))
            .collect())
    }

    /// Echelon form of `d(C_{degree+1} ∩ F_level)`, images untruncated.
    pub fn boundary_echelon(&self, degree: i64, level: u32) -> Result<Echelon<Key>> {
        self.check(degree, level)?;
        let mut e = Echelon::new(self.field);
        for j in self.slice(degree + 1, level) {
            e.insert(&self.to_keys(self.col(j)));
        }
        Ok(e)
    }

    /// `dim(d(C_{degree+1} ∩ F_level) ∩ F_level)`.
    pub fn boundary_dim(&self, degree: i64, level: u32) -> Result<usize> {
        let e = self.boundary_echelon(degree, level)?;
        Ok(e.pivot_keys().filter(|(Reverse(w), _)| *w <= level).count())
    }

    pub fn betti(&self, degree: i64, level: u32) -> Result<usize> {
        Ok(self.cycles(degree, level)?.len() - self.boundary_dim(degree, level)?)
    }

    /// Whether `v` lies in `d(C_{degree+1} ∩ F_level)`.
    pub fn is_boundary(&self, v: &Vector<usize>, degree: i64, level: u32) -> Result<bool> {
        Ok(self
            .boundary_echelon(degree, level)?
            .contains(&self.to_keys(v)))
    }

    /// Applies the recorded differential to `v`; fails outside the known columns.
    pub fn apply(&self, v: &Vector<usize>) -> Result<Vector<usize>> {
        let mut out = Vector::zero(self.field);
        for (&j, c) in v.iter() {
            let col = self.columns[j].as_ref().ok_or_else(|| {
                Error::WindowNotCertified(format!("no differential for {}", self.elements[j].label))
            })?;
            out.add_scaled(col, c);
        }
        Ok(out)
    }
}

/// Rank of the map induced on level-`level` homology in `degree` by a
/// weight-nonincreasing map `f` (given on source elements as target vectors).
pub fn induced_rank(
    source: &FilteredComplex,
    target: &FilteredComplex,
    f: impl Fn(usize) -> Vector<usize>,
    degree: i64,
    level: u32,
) -> Result<usize> {
    let boundaries = target.boundary_echelon(degree, level)?;
    let mut e: Echelon<Key> = Echelon::new(target.field());
    for row in boundaries.rows() {
        if row.first().is_some_and(|((Reverse(w), _), _)| *w <= level) {
            e.insert(row);
        }
    }
    let base = e.rank();
    for z in source.cycles(degree, level)? {
        let mut image = Vector::zero(target.field());
        for (&j, c) in z.iter() {
            image.add_scaled(&f(j), c);
        }
        e.insert(&target.to_keys(&image));
    }
    Ok(e.rank() - base)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The Example-1 shape: `d(w x^n) = x^{n+1} + 2 x^{n+2}` on weight-graded pieces.
    fn example(w: u32) -> FilteredComplex {
        let q = Field::Rational;
        let mut elements = Vec::new();
        for n in 1..=w + 2 {
            elements.push(BasisElement::new(format!("x^{n}"), 1, n));
        }
        let xi = |n: u32| (n - 1) as usize;
        let off = elements.len();
        for n in 0..w {
            elements.push(BasisElement::new(format!("wx^{n}"), 2, n + 1));
        }
        let mut columns: Vec<Option<Vector<usize>>> = vec![None; elements.len()];
        for n in 1..=w {
            columns[xi(n)] = Some(Vector::zero(q));
        }
        for n in 0..w {
            columns[off + n as usize] = Some(Vector::from_terms(
                q,
                [(xi(n + 1), q.one()), (xi(n + 2), q.from_i64(2))],
            ));
        }
        FilteredComplex::new(q, elements, columns, w, (0, 3)).unwrap()
    }

    #[test]
    fn surviving_class_at_every_level() {
        let c = example(8);
        for n in 1..=8 {
            assert_eq!(c.betti(1, n).unwrap(), 1, "level {n}");
            assert!(!c
                .is_boundary(&Vector::basis(Field::Rational, 0), 1, n)
                .unwrap());
        }
        assert!(!c.preserves_weight());
    }

    #[test]
    fn level_beyond_data_is_rejected() {
        assert!(matches!(
            example(4).betti(1, 5),
            Err(Error::WindowNotCertified(_))
        ));
    }
}
