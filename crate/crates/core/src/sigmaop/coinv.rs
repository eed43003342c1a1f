//! Coinvariants `S(n) ⊗_{Σn} V^{⊗n}`: canonical normal forms and bases.
//!
//! A term `p ⊗ (v_1, …, v_n)` obeys `p ⊗ v = ± (p·τ_j) ⊗ τ_j v`, the sign being
//! the Koszul sign of exchanging `v_j` and `v_{j+1}`. Normal forms sort the
//! word; for `Ass` the operation becomes the identity, for `Com` it is the
//! only one, and in general the operation is reduced modulo the relations
//! coming from the stabilizer of the sorted word.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::cooperad::Cooperad;
use super::operad::Operad;
use super::perm;
use super::shape::Kind;
use crate::error::{Error, Result};
use crate::gradedlin::{BasisElement, Echelon, Field, GradedBasis, Vector};

/// Something with a graded symmetric-group action in each arity.
pub trait Species {
    fn field(&self) -> Field;
    fn kind(&self) -> Kind;
    fn suspension(&self) -> u32;
    fn dim(&self, n: usize) -> Result<usize>;
    fn degree(&self, n: usize, x: usize) -> i64;
    fn label(&self, n: usize, x: usize) -> String;
    fn act(&self, n: usize, j: usize, x: usize) -> Result<Vector<usize>>;
    fn arity_limit(&self) -> Option<usize>;
}

impl Species for Operad {
    fn field(&self) -> Field {
        Operad::field(self)
    }
    fn kind(&self) -> Kind {
        Operad::kind(self)
    }
    fn suspension(&self) -> u32 {
        Operad::suspension(self)
    }
    fn dim(&self, n: usize) -> Result<usize> {
        Operad::dim(self, n)
    }
    fn degree(&self, n: usize, x: usize) -> i64 {
        Operad::degree(self, n, x)
    }
    fn label(&self, n: usize, x: usize) -> String {
        Operad::label(self, n, x)
    }
    fn act(&self, n: usize, j: usize, x: usize) -> Result<Vector<usize>> {
        Operad::act(self, n, j, x)
    }
    fn arity_limit(&self) -> Option<usize> {
        Operad::arity_limit(self)
    }
}

impl Species for Cooperad {
    fn field(&self) -> Field {
        Cooperad::field(self)
    }
    fn kind(&self) -> Kind {
        Cooperad::kind(self)
    }
    fn suspension(&self) -> u32 {
        Cooperad::suspension(self)
    }
    fn dim(&self, n: usize) -> Result<usize> {
        Cooperad::dim(self, n)
    }
    fn degree(&self, n: usize, x: usize) -> i64 {
        Cooperad::degree(self, n, x)
    }
    fn label(&self, n: usize, x: usize) -> String {
        Cooperad::label(self, n, x)
    }
    fn act(&self, n: usize, j: usize, x: usize) -> Result<Vector<usize>> {
        Cooperad::act(self, n, j, x)
    }
    fn arity_limit(&self) -> Option<usize> {
        Cooperad::arity_limit(self)
    }
}

/// A normal-form basis element: operation index and word of letter indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub op: usize,
    pub word: Vec<usize>,
}

impl Mono {
    pub fn arity(&self) -> usize {
        self.word.len()
    }
}

type RelKey = (usize, Vec<Option<bool>>);

/// Normal forms for one species and one alphabet of graded letters.
pub struct Normalizer<'a, S: Species> {
    species: &'a S,
    letters: Vec<(String, i64)>,
    relations: RefCell<HashMap<RelKey, Rc<Echelon<usize>>>>,
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

impl<'a, S: Species> Normalizer<'a, S> {
    pub fn new(species: &'a S, letters: Vec<(String, i64)>) -> Self {
        Normalizer {
            species,
            letters,
            relations: RefCell::new(HashMap::new()),
        }
    }

    pub fn species(&self) -> &S {
        self.species
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn letter_degree(&self, l: usize) -> i64 {
        self.letters[l].1
    }

    fn twisted(&self) -> bool {
        self.species.suspension() % 2 == 1
    }

    /// Letter parity as seen by the coinvariant sign rule (shifted by the
    /// suspension twist).
    pub fn effective_odd(&self, l: usize) -> bool {
        odd(self.letter_degree(l)) ^ self.twisted()
    }

    pub fn degree(&self, m: &Mono) -> i64 {
        self.species.degree(m.arity(), m.op)
            + m.word.iter().map(|&l| self.letter_degree(l)).sum::<i64>()
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if let Some(limit) = self.species.arity_limit() {
            if n > limit && !(self.species.kind() == Kind::Unit && n == 1) {
                return Err(Error::Arity(format!(
                    "words of length {n} need arity {n}, beyond the available {limit}"
                )));
            }
        }
        Ok(())
    }

    /// Normal form of `op ⊗ word` with `op` a vector in `S(word.len())`.
    pub fn normalize(&self, op: &Vector<usize>, word: &[usize]) -> Result<Vector<Mono>> {
        let field = self.species.field();
        let n = word.len();
        let mut out = Vector::zero(field);
        if op.is_zero() {
            return Ok(out);
        }
        self.check_arity(n)?;
        match self.species.kind() {
            Kind::Unit => {
                if n != 1 {
                    return Ok(out);
                }
                for (&x, c) in op.iter() {
                    out.add_term(
                        Mono {
                            op: x,
                            word: word.to_vec(),
                        },
                        c.clone(),
                    );
                }
            }
            Kind::Com => {
                let c = op.coeff(&0);
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&t| (word[t], t));
                let sorted: Vec<usize> = order.iter().map(|&t| word[t]).collect();
                if !self.com_survives(&sorted)? {
                    return Ok(out);
                }
                let neg = self.reorder_sign(word, &order);
                out.add_term(
                    Mono {
                        op: 0,
                        word: sorted,
                    },
                    c.signed(neg),
                );
            }
            Kind::Ass => {
                for (&x, c) in op.iter() {
                    let w = perm::unrank(n, x);
                    let new_word: Vec<usize> = w.iter().map(|&t| word[t]).collect();
                    let neg = self.reorder_sign(word, &w);
                    out.add_term(
                        Mono {
                            op: 0,
                            word: new_word,
                        },
                        c.clone().signed(neg),
                    );
                }
            }
            Kind::Lie | Kind::Explicit => {
                let mut p = op.clone();
                let mut w = word.to_vec();
                for pass in 0..n {
                    for j in 0..n.saturating_sub(1 + pass) {
                        if w[j] > w[j + 1] {
                            let mut q = Vector::zero(field);
                            for (&x, c) in p.iter() {
                                q.add_scaled(&self.species.act(n, j, x)?, c);
                            }
                            let neg =
                                odd(self.letter_degree(w[j])) && odd(self.letter_degree(w[j + 1]));
                            p = if neg { q.negated() } else { q };
                            w.swap(j, j + 1);
                        }
                    }
                }
                let rel = self.relations_for(&w)?;
                for (x, c) in rel.reduce(&p) {
                    out.add_term(
                        Mono {
                            op: x,
                            word: w.clone(),
                        },
                        c,
                    );
                }
            }
        }
        Ok(out)
    }

    /// Sign of rearranging `word` into `(word[order[0]], word[order[1]], …)`:
    /// Koszul signs of the letters plus the suspension twist per transposition.
    fn reorder_sign(&self, word: &[usize], order: &[usize]) -> bool {
        let mut neg = false;
        for s in 0..order.len() {
            for t in s + 1..order.len() {
                if order[s] > order[t] {
                    let a = self.letter_degree(word[order[s]]);
                    let b = self.letter_degree(word[order[t]]);
                    neg ^= odd(a) && odd(b);
                    neg ^= self.twisted();
                }
            }
        }
        neg
    }

    /// Whether a sorted commutative word is nonzero; aborts when the
    /// characteristic divides a stabilizer order.
    fn com_survives(&self, sorted: &[usize]) -> Result<bool> {
        let p = self.species.field().characteristic();
        let mut t = 0;
        while t < sorted.len() {
            let mut e = t;
            while e < sorted.len() && sorted[e] == sorted[t] {
                e += 1;
            }
            let mult = (e - t) as u64;
            if mult > 1 && self.effective_odd(sorted[t]) {
                return Ok(false);
            }
            if p > 0 && mult >= p {
                return Err(Error::Characteristic(format!(
                    "characteristic {p} divides the stabilizer order {mult}! of {}^{mult}",
                    self.letters[sorted[t]].0
                )));
            }
            t = e;
        }
        Ok(true)
    }

    fn relations_for(&self, sorted: &[usize]) -> Result<Rc<Echelon<usize>>> {
        let n = sorted.len();
        let key: RelKey = (
            n,
            (0..n.saturating_sub(1))
                .map(|j| (sorted[j] == sorted[j + 1]).then(|| odd(self.letter_degree(sorted[j]))))
                .collect(),
        );
        if let Some(e) = self.relations.borrow().get(&key) {
            return Ok(e.clone());
        }
        let field = self.species.field();
        let mut e = Echelon::new(field);
        for (j, same) in key.1.iter().enumerate() {
            let Some(neg) = same else { continue };
            for x in 0..self.species.dim(n)? {
                let acted = self.species.act(n, j, x)?;
                let mut r = Vector::basis(field, x);
                if *neg {
                    r.add(&acted);
                } else {
                    r.add_scaled(&acted, &-field.one());
                }
                e.insert(&r);
            }
        }
        let e = Rc::new(e);
        self.relations.borrow_mut().insert(key, e.clone());
        Ok(e)
    }

    /// Operation indices spanning the coinvariants for a sorted word.
    fn quotient_ops(&self, sorted: &[usize]) -> Result<Vec<usize>> {
        let n = sorted.len();
        let rel = self.relations_for(sorted)?;
        let pivots: std::collections::BTreeSet<usize> = rel.pivot_keys().copied().collect();
        Ok((0..self.species.dim(n)?)
            .filter(|x| !pivots.contains(x))
            .collect())
    }

    pub fn label(&self, m: &Mono) -> String {
        let tilde = if self.species.suspension() > 0 {
            "~"
        } else {
            ""
        };
        let letter = |l: usize| {
            let name = &self.letters[l].0;
            if name.chars().count() > 1 {
                format!("{tilde}({name})")
            } else {
                format!("{tilde}{name}")
            }
        };
        match self.species.kind() {
            Kind::Unit => self.letters[m.word[0]].0.clone(),
            Kind::Com | Kind::Ass => {
                let mut s = String::new();
                let mut t = 0;
                while t < m.word.len() {
                    let mut e = t;
                    while e < m.word.len() && m.word[e] == m.word[t] {
                        e += 1;
                    }
                    s.push_str(&letter(m.word[t]));
                    if e - t > 1 {
                        s.push_str(&format!("^{}", e - t));
                    }
                    t = e;
                }
                s
            }
            Kind::Lie | Kind::Explicit => format!(
                "{}({})",
                self.species.label(m.arity(), m.op),
                m.word
                    .iter()
                    .map(|&l| letter(l))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    /// All nonzero normal forms of word length `1..=max_weight` whose degree
    /// lies in `[lo, hi]` (either end optional), in a deterministic order.
    pub fn enumerate(
        &self,
        max_weight: usize,
        lo: Option<i64>,
        hi: Option<i64>,
    ) -> Result<Vec<Mono>> {
        const LIMIT: usize = 2_000_000;
        let kind = self.species.kind();
        let k = self.species.suspension() as i64;
        let max_len = match (kind, self.species.arity_limit()) {
            (Kind::Unit, _) => 1,
            (_, Some(l)) => max_weight.min(l),
            _ => max_weight,
        };
        let nl = self.letters.len();
        // Degree contribution of letter l in a word of arity n is |l| − k
        // plus k overall for Com and Ass; prune when it only grows.
        let eff: Vec<i64> = self.letters.iter().map(|(_, d)| d - k).collect();
        let monotone = matches!(kind, Kind::Com | Kind::Ass) && eff.iter().all(|&e| e >= 0);
        let mut out = Vec::new();
        let mut word = Vec::new();
        let in_window = |d: i64| lo.is_none_or(|l| d >= l) && hi.is_none_or(|h| d <= h);

        fn rec<S: Species>(
            me: &Normalizer<'_, S>,
            word: &mut Vec<usize>,
            partial: i64,
            ctx: &Ctx<'_>,
            out: &mut Vec<Mono>,
        ) -> Result<()> {
            if out.len() > LIMIT {
                return Err(Error::Unsupported("free algebra basis too large".into()));
            }
            if !word.is_empty() {
                me.emit(word, ctx, out)?;
            }
            if word.len() == ctx.max_len {
                return Ok(());
            }
            let start = if ctx.sorted {
                word.last().copied().unwrap_or(0)
            } else {
                0
            };
            for l in start..ctx.nl {
                let next = partial + ctx.eff[l];
                if ctx.monotone {
                    if let Some(h) = ctx.hi {
                        if ctx.k + next > h {
                            continue;
                        }
                    }
                }
                word.push(l);
                rec(me, word, next, ctx, out)?;
                word.pop();
            }
            Ok(())
        }

        let ctx = Ctx {
            max_len,
            nl,
            eff: &eff,
            monotone,
            hi,
            k,
            sorted: kind != Kind::Ass,
            in_window: &in_window,
        };
        rec(self, &mut word, 0, &ctx, &mut out)?;
        out.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn emit(&self, word: &[usize], ctx: &Ctx<'_>, out: &mut Vec<Mono>) -> Result<()> {
        let ops = match self.species.kind() {
            Kind::Unit | Kind::Ass => vec![0],
            Kind::Com => {
                if self.com_survives(word)? {
                    vec![0]
                } else {
                    vec![]
                }
            }
            _ => self.quotient_ops(word)?,
        };
        for op in ops {
            let m = Mono {
                op,
                word: word.to_vec(),
            };
            if (ctx.in_window)(self.degree(&m)) {
                out.push(m);
            }
        }
        Ok(())
    }
}

struct Ctx<'c> {
    max_len: usize,
    nl: usize,
    eff: &'c [i64],
    monotone: bool,
    hi: Option<i64>,
    k: i64,
    sorted: bool,
    in_window: &'c dyn Fn(i64) -> bool,
}

/// Basis of the free `P`-algebra on `generators`, words of length at most
/// `max_weight`, degrees in the optional window. Weight is word length.
pub fn free_algebra_basis(
    p: &Operad,
    generators: &GradedBasis,
    max_weight: usize,
    degree_window: (Option<i64>, Option<i64>),
) -> Result<GradedBasis> {
    check_regime(p, generators, degree_window.0)?;
    let letters = generators
        .elements()
        .iter()
        .map(|e| (e.label.clone(), e.degree))
        .collect();
    let nz = Normalizer::new(p, letters);
    let monos = nz.enumerate(max_weight, degree_window.0, degree_window.1)?;
    let elements: Vec<BasisElement> = monos
        .iter()
        .map(|m| BasisElement::new(nz.label(m), nz.degree(m), m.arity() as u32))
        .collect();
    let min = elements.iter().map(|e| e.degree).min().unwrap_or(0);
    GradedBasis::with_min_degree(elements, degree_window.0.unwrap_or(min).min(min))
}

/// `ℓ + m ≥ 0` for an unbounded-below window.
pub fn check_regime(p: &Operad, generators: &GradedBasis, lo: Option<i64>) -> Result<()> {
    if lo.is_some() || generators.is_empty() {
        return Ok(());
    }
    if let Some(l) = p.lower_bound_slope() {
        let m = generators.min_degree();
        if l + m < 0 {
            return Err(Error::Regime(format!(
                "{} has slope {l} and the generators start in degree {m}; ℓ + m = {} < 0",
                p.name(),
                l + m
            )));
        }
    }
    Ok(())
}
