use super::basis::GradedBasis;
use super::echelon::{kernel_of, rank_of};
use super::field::{Field, Scalar};
use super::sparse::Vector;
use crate::error::{Error, Result};

/// A homogeneous linear map between graded bases, stored column-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    field: Field,
    source: GradedBasis,
    target: GradedBasis,
    degree: i64,
    columns: Vec<Vector<usize>>,
}

impl LinearMap {
    pub fn new(
        field: Field,
        source: GradedBasis,
        target: GradedBasis,
        degree: i64,
        columns: Vec<Vector<usize>>,
    ) -> Result<Self> {
        if columns.len() != source.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a source of dimension {}",
                columns.len(),
                source.len()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            for (&i, _) in col.iter() {
                if i >= target.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "row {i} outside target of dimension {}",
                        target.len()
                    )));
                }
                let want = source.degree(j) + degree;
                if target.degree(i) != want {
                    return Err(Error::Degree(format!(
                        "entry {} -> {} connects degree {} to {} but the map has degree {}",
                        source.get(j).label,
                        target.get(i).label,
                        source.degree(j),
                        target.degree(i),
                        degree
                    )));
                }
            }
        }
        Ok(LinearMap {
            field,
            source,
            target,
            degree,
            columns,
        })
    }

    /// Builds a map from `(row, col, value)` triples.
    pub fn from_entries(
        field: Field,
        source: GradedBasis,
        target: GradedBasis,
        degree: i64,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut columns = vec![Vector::zero(field); source.len()];
        for (r, c, v) in entries {
            if c >= source.len() {
                return Err(Error::DimensionMismatch(format!("column {c} out of range")));
            }
            columns[c].add_term(r, v);
        }
        Self::new(field, source, target, degree, columns)
    }

    pub fn zero(field: Field, source: GradedBasis, target: GradedBasis, degree: i64) -> Self {
        let columns = vec![Vector::zero(field); source.len()];
        LinearMap {
            field,
            source,
            target,
            degree,
            columns,
        }
    }

    pub fn identity(field: Field, basis: GradedBasis) -> Self {
        let columns = (0..basis.len()).map(|i| Vector::basis(field, i)).collect();
        LinearMap {
            field,
            source: basis.clone(),
            target: basis,
            degree: 0,
            columns,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> &GradedBasis {
        &self.source
    }

    pub fn target(&self) -> &GradedBasis {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn column(&self, j: usize) -> &Vector<usize> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vector<usize>] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.columns[col].coeff(&row)
    }

    pub fn nonzero_entries(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn apply(&self, v: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::zero(self.field);
        for (&j, c) in v.iter() {
            out.add_scaled(&self.columns[j], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if other.target != self.source {
            return Err(Error::Mismatch(
                "composition of maps with incompatible bases".into(),
            ));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        LinearMap::new(
            self.field,
            other.source.clone(),
            self.target.clone(),
            self.degree + other.degree,
            columns,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Columns whose source element lies in `degree`, with their source indices.
    pub fn columns_in_degree(&self, degree: i64) -> (Vec<usize>, Vec<Vector<usize>>) {
        let idx = self.source.indices_in_degree(degree);
        let cols = idx.iter().map(|&j| self.columns[j].clone()).collect();
        (idx, cols)
    }

    pub fn rank_in_degree(&self, degree: i64) -> usize {
        rank_of(self.field, &self.columns_in_degree(degree).1)
    }

    pub fn kernel_dim_in_degree(&self, degree: i64) -> usize {
        kernel_of(self.field, &self.columns_in_degree(degree).1).len()
    }

    /// Same map with source and target bases reordered.
    pub fn permuted(&self, source_order: &[usize], target_order: &[usize]) -> Result<LinearMap> {
        let mut target_pos = vec![0; target_order.len()];
        for (new, &old) in target_order.iter().enumerate() {
            target_pos[old] = new;
        }
        let columns = source_order
            .iter()
            .map(|&old| self.columns[old].map_keys(|&r| target_pos[r]))
            .collect();
        LinearMap::new(
            self.field,
            self.source.permuted(source_order)?,
            self.target.permuted(target_order)?,
            self.degree,
            columns,
        )
    }
}

/// Exact rank of a linear map.
pub fn rank(f: &LinearMap) -> usize {
    rank_of(f.field, &f.columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedlin::basis::BasisElement;

    fn basis(degs: &[i64]) -> GradedBasis {
        GradedBasis::new(
            degs.iter()
                .enumerate()
                .map(|(i, &d)| BasisElement::new(format!("e{i}"), d, 0))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_and_identity_ranks() {
        let q = Field::Rational;
        assert_eq!(
            rank(&LinearMap::zero(q, basis(&[0, 0, 0]), basis(&[0, 0, 0]), 0)),
            0
        );
        assert_eq!(rank(&LinearMap::identity(q, basis(&[0, 1, 2, 3]))), 4);
    }

    #[test]
    fn degree_law_is_enforced() {
        let q = Field::Rational;
        let err = LinearMap::from_entries(q, basis(&[2]), basis(&[0]), -1, [(0, 0, q.one())]);
        assert!(matches!(err, Err(Error::Degree(_))));
    }

    #[test]
    fn rank_plus_nullity() {
        let q = Field::Rational;
        let f = LinearMap::from_entries(
            q,
            basis(&[1, 1, 1]),
            basis(&[0, 0]),
            -1,
            [
                (0, 0, q.one()),
                (1, 1, q.one()),
                (0, 2, q.from_i64(2)),
                (1, 2, q.from_i64(2)),
            ],
        )
        .unwrap();
        assert_eq!(rank(&f) + f.kernel_dim_in_degree(1), 3);
    }
}
