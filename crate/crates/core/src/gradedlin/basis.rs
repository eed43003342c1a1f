use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
    #[serde(default)]
    pub weight: u32,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, degree: i64, weight: u32) -> Self {
        BasisElement {
            label: label.into(),
            degree,
            weight,
        }
    }
}

/// A finite, ordered, graded basis with unique labels.
///
/// `min_degree` is the lower bound the basis is declared to respect; it may be
/// lower than the actual minimum (an empty basis keeps its declared bound).
#[derive(Clone, Debug, Default)]
pub struct GradedBasis {
    elements: Vec<BasisElement>,
    index: HashMap<String, usize>,
    min_degree: i64,
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.min_degree == other.min_degree
    }
}

impl Eq for GradedBasis {}

impl GradedBasis {
    pub fn new(elements: Vec<BasisElement>) -> Result<Self> {
        let min = elements.iter().map(|e| e.degree).min().unwrap_or(0);
        Self::with_min_degree(elements, min)
    }

    pub fn with_min_degree(elements: Vec<BasisElement>, min_degree: i64) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if e.degree < min_degree {
                return Err(Error::Regime(format!(
                    "basis element {} has degree {} below the declared minimum {}",
                    e.label, e.degree, min_degree
                )));
            }
            if index.insert(e.label.clone(), i).is_some() {
                return Err(Error::Validation(format!(
                    "duplicate basis label {}",
                    e.label
                )));
            }
        }
        Ok(GradedBasis {
            elements,
            index,
            min_degree,
        })
    }

    pub fn empty() -> Self {
        GradedBasis::default()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn get(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.elements[i].degree
    }

    pub fn indices_in_degree(&self, degree: i64) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].degree == degree)
            .collect()
    }

    pub fn dim_in_degree(&self, degree: i64) -> usize {
        self.elements.iter().filter(|e| e.degree == degree).count()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.elements.iter().map(|e| e.degree).min()?;
        let hi = self.elements.iter().map(|e| e.degree).max()?;
        Some((lo, hi))
    }

    /// Reorders elements: position `i` of the result holds element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let elements = order.iter().map(|&i| self.elements[i].clone()).collect();
        Self::with_min_degree(elements, self.min_degree)
    }
}
