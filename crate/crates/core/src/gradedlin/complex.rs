use std::collections::BTreeMap;

use serde::Serialize;

use super::basis::{BasisElement, GradedBasis};
use super::echelon::{kernel_of, rank_of, Echelon};
use super::field::Field;
use super::map::LinearMap;
use super::sparse::Vector;
use crate::error::{Error, Result};

/// A chain complex (homological grading) together with the degree range on
/// which its differential data is complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexSlice {
    basis: GradedBasis,
    d: LinearMap,
    window: (i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    WindowInsufficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationBetti {
    pub level: u32,
    pub betti: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub window: (i64, i64),
    pub betti: BTreeMap<i64, usize>,
    pub per_truncation: Vec<TruncationBetti>,
    pub stabilization: BTreeMap<i64, bool>,
}

impl ChainComplexSlice {
    /// A complex certified on `window`; `d∘d = 0` is checked on every basis
    /// element whose degree lies in the window.
    pub fn new(d: LinearMap, window: (i64, i64)) -> Result<Self> {
        if d.degree() != -1 {
            return Err(Error::Degree(format!(
                "a differential has degree -1, not {}",
                d.degree()
            )));
        }
        if d.source() != d.target() {
            return Err(Error::Mismatch(
                "differential source and target differ".into(),
            ));
        }
        let basis = d.source().clone();
        let dd = d.compose(&d)?;
        for j in 0..basis.len() {
            let deg = basis.degree(j);
            if deg >= window.0 && deg <= window.1 && !dd.column(j).is_zero() {
                return Err(Error::DSquared(format!(
                    "d(d({})) is nonzero",
                    basis.get(j).label
                )));
            }
        }
        Ok(ChainComplexSlice { basis, d, window })
    }

    /// A finite complex: its data is complete in every degree, so the window
    /// extends one past the occupied range on both sides.
    pub fn finite(d: LinearMap) -> Result<Self> {
        let window = match d.source().degree_range() {
            Some((lo, hi)) => (lo - 1, hi + 1),
            None => (0, 0),
        };
        Self::new(d, window)
    }

    pub fn zero_differential(field: Field, basis: GradedBasis) -> Result<Self> {
        Self::finite(LinearMap::zero(field, basis.clone(), basis, -1))
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn differential(&self) -> &LinearMap {
        &self.d
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn field(&self) -> Field {
        self.d.field()
    }

    /// Degrees whose homology is determined by the stored data.
    pub fn certified(&self) -> (i64, i64) {
        (self.window.0 + 1, self.window.1 - 1)
    }

    fn check_window(&self, window: (i64, i64)) -> Result<()> {
        let (lo, hi) = self.certified();
        if window.0 < lo || window.1 > hi {
            return Err(Error::WindowNotCertified(format!(
                "requested degrees {}..{} but only {}..{} are certified",
                window.0, window.1, lo, hi
            )));
        }
        Ok(())
    }

    pub fn betti(&self, degree: i64) -> usize {
        let n = self.basis.dim_in_degree(degree);
        let rank_out = self.d.rank_in_degree(degree);
        let rank_in = self.d.rank_in_degree(degree + 1);
        n - rank_out - rank_in
    }

    fn cycles(&self, degree: i64) -> Vec<Vector<usize>> {
        let (idx, cols) = self.d.columns_in_degree(degree);
        kernel_of(self.field(), &cols)
            .into_iter()
            .map(|rel| rel.map_keys(|&t| idx[t]))
            .collect()
    }

    fn boundaries(&self, degree: i64) -> Echelon<usize> {
        let mut e = Echelon::new(self.field());
        for c in self.d.columns_in_degree(degree + 1).1 {
            e.insert(&c);
        }
        e
    }

    /// Exact Betti numbers on `window`, with an independent kernel/image recount.
    pub fn homology(&self, window: (i64, i64)) -> Result<HomologyReport> {
        self.check_window(window)?;
        let mut betti = BTreeMap::new();
        for k in window.0..=window.1 {
            let b = self.betti(k);
            let recount = self.cycles(k).len() - self.boundaries(k).rank();
            assert_eq!(b, recount, "rank-nullity self-check failed in degree {k}");
            betti.insert(k, b);
        }
        Ok(HomologyReport {
            window,
            per_truncation: vec![TruncationBetti {
                level: 0,
                betti: betti.clone(),
            }],
            stabilization: betti.keys().map(|&k| (k, true)).collect(),
            betti,
        })
    }

    /// Same complex with the basis reordered.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(self.d.permuted(order, order)?, self.window)
    }
}

/// A degree-0 map between chain complexes, validated to commute with differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplexSlice,
    pub target: ChainComplexSlice,
    pub map: LinearMap,
}

impl ChainMap {
    pub fn new(
        source: ChainComplexSlice,
        target: ChainComplexSlice,
        map: LinearMap,
    ) -> Result<Self> {
        if map.degree() != 0 {
            return Err(Error::Degree("a chain map has degree 0".into()));
        }
        if map.source() != source.basis() || map.target() != target.basis() {
            return Err(Error::Mismatch(
                "chain map bases do not match the complexes".into(),
            ));
        }
        let fd = map.compose(source.differential())?;
        let df = target.differential().compose(&map)?;
        for j in 0..source.basis().len() {
            if fd.column(j) != df.column(j) {
                return Err(Error::NotChainMap(format!(
                    "f∘d ≠ d∘f on {}",
                    source.basis().get(j).label
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            map,
        })
    }

    /// Rank of the induced map on homology in `degree`.
    pub fn induced_rank(&self, degree: i64) -> usize {
        let mut e = self.target.boundaries(degree);
        let base = e.rank();
        for z in self.source.cycles(degree) {
            e.insert(&self.map.apply(&z));
        }
        e.rank() - base
    }

    /// The mapping cone: degree `k` is `source_{k-1} ⊕ target_k`, with
    /// `d(a, b) = (-d a, f a + d b)`.
    pub fn cone(&self) -> Result<ChainComplexSlice> {
        let field = self.map.field();
        let sb = self.source.basis();
        let tb = self.target.basis();
        let mut elements = Vec::with_capacity(sb.len() + tb.len());
        for e in sb.elements() {
            elements.push(BasisElement::new(
                format!("s({})", e.label),
                e.degree + 1,
                e.weight,
            ));
        }
        for e in tb.elements() {
            elements.push(BasisElement::new(
                format!("t({})", e.label),
                e.degree,
                e.weight,
            ));
        }
        let min = (sb.min_degree() + 1).min(tb.min_degree());
        let basis = GradedBasis::with_min_degree(elements, min)?;
        let off = sb.len();
        let mut columns = Vec::with_capacity(basis.len());
        for j in 0..sb.len() {
            let mut col = self.source.differential().column(j).negated();
            col = col.map_keys(|&i| i);
            let mut out = Vector::zero(field);
            out.add(&col);
            out.add(&self.map.column(j).map_keys(|&i| i + off));
            columns.push(out);
        }
        for j in 0..tb.len() {
            columns.push(self.target.differential().column(j).map_keys(|&i| i + off));
        }
        let d = LinearMap::new(field, basis.clone(), basis, -1, columns)?;
        let w = (
            (self.source.window().0 + 1).max(self.target.window().0),
            (self.source.window().1 + 1).min(self.target.window().1),
        );
        ChainComplexSlice::new(d, w)
    }
}

/// Decides whether `f` is a quasi-isomorphism on the degrees of `window`:
/// Betti numbers must agree, the induced map must have full rank, and the
/// mapping cone must be acyclic where its data reaches.
pub fn is_quasi_iso(f: &ChainMap, window: (i64, i64)) -> Verdict {
    let certified = |c: &ChainComplexSlice| {
        let (lo, hi) = c.certified();
        window.0 >= lo && window.1 <= hi
    };
    if !certified(&f.source) || !certified(&f.target) {
        return Verdict::WindowInsufficient;
    }
    for k in window.0..=window.1 {
        let a = f.source.betti(k);
        let b = f.target.betti(k);
        if a != b || f.induced_rank(k) != a {
            return Verdict::No;
        }
    }
    if let Ok(cone) = f.cone() {
        let (lo, hi) = cone.certified();
        for k in (window.0 + 1).max(lo)..=window.1.min(hi) {
            if cone.betti(k) != 0 {
                return Verdict::No;
            }
        }
    }
    Verdict::Yes
}

/// Exact span membership for vectors indexed by a common basis.
pub fn span_membership(
    field: Field,
    dim: usize,
    target: &Vector<usize>,
    generators: &[Vector<usize>],
) -> Result<bool> {
    let out_of_range = |v: &Vector<usize>| v.keys().any(|&k| k >= dim);
    if out_of_range(target) || generators.iter().any(out_of_range) {
        return Err(Error::DimensionMismatch(format!(
            "vector has a coordinate outside dimension {dim}"
        )));
    }
    Ok(super::echelon::in_span(field, target, generators))
}

/// Rank of a set of vectors (exposed for reports).
pub fn span_rank(field: Field, vectors: &[Vector<usize>]) -> usize {
    rank_of(field, vectors)
}
