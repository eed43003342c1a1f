use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::coalg::CoalgebraPresentation;
use crate::error::{Error, Result};
use crate::gradedlin::{
    BasisElement, ChainComplexSlice, Field, FilteredComplex, GradedBasis, LinearMap, Scalar, Vector,
};
use crate::sigmaop::{check_regime, Mono, Normalizer, Operad};
use crate::twisting::TwistingMorphism;

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// One term `q ⊗ w` of the differential of a letter, `q ∈ P(w.len())`.
#[derive(Clone, Debug)]
struct LetterTerm {
    op: Vector<usize>,
    op_degree: i64,
    word: Vec<usize>,
    internal: bool,
}

/// Computes differentials of normal forms in `P(X)`.
pub(crate) struct Engine<'a> {
    target: &'a Operad,
    nz: Normalizer<'a, Operad>,
    letter_terms: Vec<Vec<LetterTerm>>,
    letter_weights: Vec<u32>,
    cache: RefCell<HashMap<Mono, (Vector<Mono>, Vector<Mono>)>>,
}

impl<'a> Engine<'a> {
    pub(crate) fn new(alpha: &'a TwistingMorphism, x: &CoalgebraPresentation) -> Result<Self> {
        let target = alpha.target();
        let field = target.field();
        let p = field.characteristic();
        let nz = Normalizer::new(target, x.letters());
        let gens = x.generators();
        let mut letter_terms = Vec::with_capacity(gens.len());
        for g in 0..gens.len() {
            let mut terms = Vec::new();
            for (&h, c) in x.differential().column(g).iter() {
                terms.push(LetterTerm {
                    op: Vector::from_terms(field, [(target.unit(), c.clone())]),
                    op_degree: 0,
                    word: vec![h],
                    internal: true,
                });
            }
            for (m, c) in x.decomposition(g).iter() {
                let n = m.arity();
                let image = alpha.image(n, m.op);
                if image.is_zero() {
                    continue;
                }
                if p > 0 && n as u64 >= p {
                    return Err(Error::Characteristic(format!(
                        "the decomposition of {} has an arity-{n} term, whose symmetrization vanishes in characteristic {p}",
                        gens.get(g).label
                    )));
                }
                let norm = field.from_i64((1..=n as i64).product());
                terms.push(LetterTerm {
                    op: image.scaled(&(c * &norm)),
                    op_degree: x.cooperad().degree(n, m.op) - 1,
                    word: m.word.clone(),
                    internal: false,
                });
            }
            letter_terms.push(terms);
        }
        Ok(Engine {
            target,
            nz,
            letter_terms,
            letter_weights: gens.elements().iter().map(|e| e.weight).collect(),
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub(crate) fn normalizer(&self) -> &Normalizer<'a, Operad> {
        &self.nz
    }

    pub(crate) fn degree(&self, m: &Mono) -> i64 {
        self.nz.degree(m)
    }

    /// Word length for operads with formula weights, one more than the
    /// operation weight otherwise. Over an algebra `P(1)` the letter weight
    /// is added instead, so a module graded by weight is filtered with it.
    pub(crate) fn weight(&self, m: &Mono) -> u32 {
        let op = self.target.weight(m.arity(), m.op);
        if self.arity_one() {
            op + self.letter_weights[m.word[0]]
        } else {
            op + 1
        }
    }

    fn arity_one(&self) -> bool {
        self.target.arity_limit() == Some(1) && self.target.kind() != crate::sigmaop::Kind::Unit
    }

    /// The internal part `d1` and the twisting part `d2` of `d(m)`.
    pub(crate) fn split(&self, m: &Mono) -> Result<(Vector<Mono>, Vector<Mono>)> {
        if let Some(v) = self.cache.borrow().get(m) {
            return Ok(v.clone());
        }
        let field = self.target.field();
        let n = m.arity();
        let mut d1 = Vector::zero(field);
        let mut d2 = Vector::zero(field);
        let p_degree = self.target.degree(n, m.op);
        let mut prefix = 0i64;
        for i in 0..n {
            let v = m.word[i];
            for t in &self.letter_terms[v] {
                let b = t.word.len();
                let op = self
                    .target
                    .compose_vec(n, i, &Vector::basis(field, m.op), b, &t.op)?;
                if op.is_zero() {
                    continue;
                }
                let mut word = m.word[..i].to_vec();
                word.extend_from_slice(&t.word);
                word.extend_from_slice(&m.word[i + 1..]);
                let neg = odd(p_degree + prefix) ^ odd(t.op_degree * prefix);
                let term = self.nz.normalize(&op, &word)?;
                let sign = field.one().signed(neg);
                if t.internal {
                    d1.add_scaled(&term, &sign);
                } else {
                    d2.add_scaled(&term, &sign);
                }
            }
            prefix += self.nz.letter_degree(v);
        }
        self.cache
            .borrow_mut()
            .insert(m.clone(), (d1.clone(), d2.clone()));
        Ok((d1, d2))
    }

    pub(crate) fn d(&self, m: &Mono) -> Result<Vector<Mono>> {
        let (mut d1, d2) = self.split(m)?;
        d1.add(&d2);
        Ok(d1)
    }

    pub(crate) fn d_vec(&self, v: &Vector<Mono>) -> Result<Vector<Mono>> {
        let mut out = Vector::zero(self.target.field());
        for (m, c) in v.iter() {
            out.add_scaled(&self.d(m)?, c);
        }
        Ok(out)
    }

    pub(crate) fn label(&self, m: &Mono) -> String {
        if self.arity_one() {
            format!(
                "{}⊗{}",
                self.target.label(1, m.op),
                self.nz.letters()[m.word[0]].0
            )
        } else {
            self.nz.label(m)
        }
    }
}

/// `Ω_α X` on the words of weight at most `max_weight` whose degree lies in
/// `window`, with differentials of those words recorded untruncated.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    twisting: TwistingMorphism,
    input: CoalgebraPresentation,
    max_weight: u32,
    window: (i64, i64),
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
    elements: Vec<BasisElement>,
    /// Number of leading elements with recorded differentials.
    computed: usize,
    d1: Vec<Vector<usize>>,
    d2: Vec<Vector<usize>>,
    filtered: FilteredComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceDims {
    pub degree: i64,
    pub weight: u32,
    pub dim: usize,
}

pub fn cobar_complex(
    alpha: &TwistingMorphism,
    x: &CoalgebraPresentation,
    max_weight: u32,
    window: (i64, i64),
) -> Result<CobarComplex> {
    if alpha.source() != x.cooperad() {
        return Err(Error::Mismatch(format!(
            "{} is a coalgebra over {}, but {} starts at {}",
            x.name(),
            x.cooperad().name(),
            alpha.name(),
            alpha.source().name()
        )));
    }
    if window.0 > window.1 {
        return Err(Error::Validation(format!(
            "empty window {}..{}",
            window.0, window.1
        )));
    }
    check_regime(alpha.target(), x.generators(), None)?;
    check_truncation(alpha, max_weight)?;
    let engine = Engine::new(alpha, x)?;
    let field = alpha.field();
    let mut monos: Vec<Mono> = engine
        .normalizer()
        .enumerate(max_weight as usize, Some(window.0), Some(window.1))?
        .into_iter()
        .filter(|m| engine.weight(m) <= max_weight)
        .collect();
    let computed = monos.len();
    let mut index: HashMap<Mono, usize> = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut d1 = Vec::with_capacity(computed);
    let mut d2 = Vec::with_capacity(computed);
    let mut intern = |v: &Vector<Mono>, monos: &mut Vec<Mono>| -> Vector<usize> {
        v.map_keys(|m| {
            *index.entry(m.clone()).or_insert_with(|| {
                monos.push(m.clone());
                monos.len() - 1
            })
        })
    };
    for j in 0..computed {
        let m = monos[j].clone();
        let (a, b) = engine.split(&m)?;
        // d² = 0, computed on the untruncated images.
        let mut dd = engine.d_vec(&a)?;
        dd.add(&engine.d_vec(&b)?);
        if !dd.is_zero() {
            let nz = engine.normalizer();
            let (w, c) = dd.first().expect("nonzero");
            return Err(Error::DSquared(format!(
                "d(d({})) has the term {c}*{} in Ω_{} {}",
                engine.label(&m),
                nz.label(w),
                alpha.name(),
                x.name()
            )));
        }
        d1.push(intern(&a, &mut monos));
        d2.push(intern(&b, &mut monos));
    }
    let elements: Vec<BasisElement> = monos
        .iter()
        .map(|m| BasisElement::new(engine.label(m), engine.degree(m), engine.weight(m)))
        .collect();
    let columns: Vec<Option<Vector<usize>>> = (0..monos.len())
        .map(|j| {
            (j < computed).then(|| {
                let mut c = d1[j].clone();
                c.add(&d2[j]);
                c
            })
        })
        .collect();
    let filtered = FilteredComplex::new(field, elements.clone(), columns, max_weight, window)?;
    let index = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(CobarComplex {
        twisting: alpha.clone(),
        input: x.clone(),
        max_weight,
        window,
        monos,
        index,
        elements,
        computed,
        d1,
        d2,
        filtered,
    })
}

/// A tabulated algebra `P(1)` drops products past its top weight, so
/// differentials of computed words must stay below it.
fn check_truncation(alpha: &TwistingMorphism, max_weight: u32) -> Result<()> {
    let p = alpha.target();
    if p.arity_limit() != Some(1) || p.kind() == crate::sigmaop::Kind::Unit {
        return Ok(());
    }
    let dim = p.dim(1)?;
    let top = (0..dim).map(|i| p.weight(1, i)).max().unwrap_or(0);
    let step = alpha
        .images()
        .values()
        .flat_map(|v| v.keys().map(|&i| p.weight(1, i)))
        .max()
        .unwrap_or(0);
    if step > 0 && max_weight.saturating_sub(1) + step > top {
        return Err(Error::WindowNotCertified(format!(
            "weight {max_weight} needs products of weight {} in {}, which is truncated at {top}",
            max_weight.saturating_sub(1) + step,
            p.name()
        )));
    }
    Ok(())
}

impl CobarComplex {
    pub fn twisting(&self) -> &TwistingMorphism {
        &self.twisting
    }

    pub fn input(&self) -> &CoalgebraPresentation {
        &self.input
    }

    pub fn field(&self) -> Field {
        self.twisting.field()
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    /// Degrees whose homology is determined.
    pub fn certified(&self) -> (i64, i64) {
        self.filtered.certified()
    }

    /// All recorded elements: the basis proper first, then words reached
    /// only as images.
    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    /// Size of the basis proper (weight at most `max_weight`, degree in the window).
    pub fn len(&self) -> usize {
        self.computed
    }

    pub fn is_empty(&self) -> bool {
        self.computed == 0
    }

    pub fn mono(&self, i: usize) -> &Mono {
        &self.monos[i]
    }

    pub fn index_of_mono(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i].label
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn d1(&self, j: usize) -> &Vector<usize> {
        &self.d1[j]
    }

    pub fn d2(&self, j: usize) -> &Vector<usize> {
        &self.d2[j]
    }

    pub fn d(&self, j: usize) -> Vector<usize> {
        let mut c = self.d1[j].clone();
        c.add(&self.d2[j]);
        c
    }

    pub fn apply(&self, v: &Vector<usize>) -> Result<Vector<usize>> {
        self.filtered.apply(v)
    }

    /// Indices of basis elements in `degree`, sorted by weight.
    pub fn slice(&self, degree: i64) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.computed)
            .filter(|&i| self.elements[i].degree == degree)
            .collect();
        idx.sort_by_key(|&i| (self.elements[i].weight, i));
        idx
    }

    /// Basis dimensions per degree and weight.
    pub fn dims(&self) -> Vec<SliceDims> {
        let mut counts: BTreeMap<(i64, u32), usize> = BTreeMap::new();
        for e in &self.elements[..self.computed] {
            *counts.entry((e.degree, e.weight)).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|((degree, weight), dim)| SliceDims {
                degree,
                weight,
                dim,
            })
            .collect()
    }

    /// True when every differential entry connects equal weights.
    pub fn preserves_weight(&self) -> bool {
        self.filtered.preserves_weight()
    }

    /// Whether every `d2` entry goes from weight `w` to `w + k − 1` for a
    /// decomposition term of arity `k ≥ 2`, i.e. strictly raises weight.
    pub fn d2_raises_weight(&self) -> bool {
        (0..self.computed).all(|j| {
            self.d2[j]
                .keys()
                .all(|&i| self.elements[i].weight > self.elements[j].weight)
        })
    }

    /// Level-`level` Betti numbers over the certified degrees.
    pub fn betti(&self, level: u32) -> Result<BTreeMap<i64, usize>> {
        let (lo, hi) = self.certified();
        let mut out = BTreeMap::new();
        for k in lo..=hi {
            out.insert(k, self.filtered.betti(k, level)?);
        }
        Ok(out)
    }

    /// The recorded basis as a finite chain complex; fails when some image
    /// leaves it.
    pub fn as_chain_complex(&self) -> Result<ChainComplexSlice> {
        if self.monos.len() > self.computed {
            return Err(Error::WindowNotCertified(format!(
                "{} leaves the recorded basis",
                self.elements[self.computed].label
            )));
        }
        let field = self.field();
        let basis = GradedBasis::with_min_degree(self.elements.clone(), self.window.0)?;
        let d = LinearMap::new(
            field,
            basis.clone(),
            basis,
            -1,
            (0..self.computed).map(|j| self.d(j)).collect(),
        )?;
        ChainComplexSlice::new(d, (self.window.0 - 1, self.window.1 + 1))
    }

    /// A linear combination `c*label ± …` of basis labels.
    pub fn parse_class(&self, expr: &str) -> Result<Vector<usize>> {
        let field = self.field();
        let mut out = Vector::zero(field);
        for (sign, term) in split_terms(expr)? {
            let (coef, label) = match term.split_once('*') {
                Some((c, l)) if field.parse_scalar(c.trim()).is_ok() => {
                    (field.parse_scalar(c.trim())?, l.trim())
                }
                _ => (field.one(), term.trim()),
            };
            let i = self.index_of(label).ok_or_else(|| {
                Error::UnknownName(format!(
                    "{label} is not a basis element of the cobar complex"
                ))
            })?;
            out.add_term(i, coef.signed(sign));
        }
        Ok(out)
    }

    pub fn describe(&self, v: &Vector<usize>) -> String {
        describe_with(v, |i| self.elements[i].label.clone())
    }

    pub(crate) fn engine(&self) -> Result<Engine<'_>> {
        Engine::new(&self.twisting, &self.input)
    }
}

pub(crate) fn describe_with(v: &Vector<usize>, label: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (&i, c)) in v.iter().enumerate() {
        let neg = c.to_i64().is_some_and(|n| n < 0);
        let abs: Scalar = if neg { -c.clone() } else { c.clone() };
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        if !abs.is_one() {
            s.push_str(&format!("{abs}*"));
        }
        s.push_str(&label(i));
    }
    s
}

/// Splits `a ± b ± …` at top-level signs; a sign directly after `^` or `*`
/// belongs to the term.
fn split_terms(expr: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in expr.chars() {
        let binary = matches!(ch, '+' | '-') && !matches!(prev, Some('^') | Some('*') | Some('/'));
        if binary && !cur.trim().is_empty() {
            out.push((neg, cur.trim().to_string()));
            cur.clear();
            neg = ch == '-';
        } else if binary {
            neg ^= ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!(
            "incomplete class expression '{expr}'"
        )));
    }
    out.push((neg, cur.trim().to_string()));
    Ok(out)
}
