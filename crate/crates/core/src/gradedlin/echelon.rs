//! Incremental row echelon form over an exact field.
//!
//! Each stored row is normalized so its pivot (the smallest key in the row)
//! has coefficient one. Pivoting is deterministic: it depends only on the key
//! order, never on insertion history beyond the order of inserted vectors.

use std::collections::BTreeMap;

use super::field::Field;
use super::sparse::Vector;

#[derive(Clone, Debug)]
struct Row<K: Ord, T: Ord> {
    vec: Vector<K>,
    origin: Option<Vector<T>>,
}

/// Echelon basis of a subspace. Optionally records, for every stored row, the
/// combination of inserted tags it came from; vectors that reduce to zero then
/// yield relations (kernel elements).
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, T: Ord + Clone = usize> {
    field: Field,
    rows: Vec<Row<K, T>>,
    pivots: BTreeMap<K, usize>,
}

/// Result of inserting a vector.
pub enum Inserted<T: Ord> {
    /// The vector was independent and is now part of the span.
    Pivot,
    /// The vector was already in the span; for tracked inserts, the relation
    /// `Σ coeff·tag = 0` among inserted vectors.
    Dependent(Option<Vector<T>>),
}

impl<K: Ord + Clone, T: Ord + Clone> Echelon<K, T> {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vector<K>> {
        self.rows.iter().map(|r| &r.vec)
    }

    fn reduce_inner(&self, v: &mut Vector<K>, mut origin: Option<&mut Vector<T>>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v.next_key_after(c).cloned(),
            };
            let Some(k) = next else { break };
            if let Some(&ri) = self.pivots.get(&k) {
                let c = v.coeff(&k);
                let neg = -c;
                let row = &self.rows[ri];
                v.add_scaled(&row.vec, &neg);
                if let (Some(o), Some(ro)) = (origin.as_deref_mut(), row.origin.as_ref()) {
                    o.add_scaled(ro, &neg);
                }
            }
            cursor = Some(k);
        }
    }

    /// Remainder of `v` after reduction by the stored rows.
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        let mut w = v.clone();
        self.reduce_inner(&mut w, None);
        w
    }

    /// For tracked echelons: coordinates of `v` in terms of the inserted tags,
    /// or `None` when `v` is outside the span.
    pub fn express(&self, v: &Vector<K>) -> Option<Vector<T>> {
        let mut w = v.clone();
        let mut origin = Vector::zero(self.field);
        self.reduce_inner(&mut w, Some(&mut origin));
        w.is_zero().then(|| origin.negated())
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).is_zero()
    }

    fn store(&mut self, mut v: Vector<K>, mut origin: Option<Vector<T>>) {
        let (k, c) = v.first().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = c.inverse().expect("pivot is nonzero");
        v = v.scaled(&inv);
        if let Some(o) = origin.as_mut() {
            *o = o.scaled(&inv);
        }
        self.pivots.insert(k, self.rows.len());
        self.rows.push(Row { vec: v, origin });
    }

    pub fn insert(&mut self, v: &Vector<K>) -> Inserted<T> {
        let mut w = v.clone();
        self.reduce_inner(&mut w, None);
        if w.is_zero() {
            Inserted::Dependent(None)
        } else {
            self.store(w, None);
            Inserted::Pivot
        }
    }

    /// Inserts `v`, remembering it as `tag`.
    pub fn insert_tracked(&mut self, v: &Vector<K>, tag: T) -> Inserted<T> {
        let mut w = v.clone();
        let mut origin = Vector::basis(self.field, tag);
        self.reduce_inner(&mut w, Some(&mut origin));
        if w.is_zero() {
            Inserted::Dependent(Some(origin))
        } else {
            self.store(w, Some(origin));
            Inserted::Pivot
        }
    }
}

/// Rank of a list of vectors.
pub fn rank_of<K: Ord + Clone>(field: Field, vectors: &[Vector<K>]) -> usize {
    let mut e: Echelon<K> = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map sending tag `i` to `columns[i]`, as relations among tags.
pub fn kernel_of<K: Ord + Clone>(field: Field, columns: &[Vector<K>]) -> Vec<Vector<usize>> {
    let mut e: Echelon<K, usize> = Echelon::new(field);
    let mut out = Vec::new();
    for (i, c) in columns.iter().enumerate() {
        if let Inserted::Dependent(Some(rel)) = e.insert_tracked(c, i) {
            out.push(rel);
        }
    }
    out
}

/// Exact span membership by echelon reduction.
pub fn in_span<K: Ord + Clone>(field: Field, target: &Vector<K>, generators: &[Vector<K>]) -> bool {
    let mut e: Echelon<K> = Echelon::new(field);
    for g in generators {
        e.insert(g);
    }
    e.contains(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, c: &[i64]) -> Vector<usize> {
        Vector::from_terms(
            field,
            c.iter().enumerate().map(|(i, &x)| (i, field.from_i64(x))),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let q = Field::Rational;
        let cols = vec![v(q, &[1, 2, 3]), v(q, &[2, 4, 6]), v(q, &[0, 1, 1])];
        assert_eq!(rank_of(q, &cols), 2);
        let ker = kernel_of(q, &cols);
        assert_eq!(ker.len(), 1);
        // 2*col0 - col1 = 0
        let rel = &ker[0];
        let mut sum = Vector::zero(q);
        for (i, c) in rel.iter() {
            sum.add_scaled(&cols[*i], c);
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn span_membership_basic() {
        let f = Field::Prime(2);
        let gens = vec![v(f, &[1, 1, 0]), v(f, &[0, 1, 1])];
        assert!(in_span(f, &v(f, &[1, 0, 1]), &gens));
        assert!(!in_span(f, &v(f, &[1, 0, 0]), &gens));
    }
}
