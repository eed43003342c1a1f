use std::collections::btree_map;
use std::collections::BTreeMap;

use super::field::{Field, Scalar};

/// A finitely supported vector with ordered keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<K: Ord> {
    field: Field,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Vector<K> {
    pub fn zero(field: Field) -> Self {
        Vector {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: Field, key: K) -> Self {
        let mut v = Self::zero(field);
        v.add_term(key, field.one());
        v
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut v = Self::zero(field);
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, k: &K) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.terms.keys()
    }

    pub fn next_key_after(&self, k: &K) -> Option<&K> {
        use std::ops::Bound::{Excluded, Unbounded};
        self.terms
            .range((Excluded(k), Unbounded))
            .next()
            .map(|(k, _)| k)
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Vector<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&mut self, other: &Vector<K>) {
        let one = self.field.one();
        self.add_scaled(other, &one);
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-self.field.one())
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Vector<L> {
        let mut out = Vector::zero(self.field);
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Vector {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord + Clone> IntoIterator for Vector<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}
