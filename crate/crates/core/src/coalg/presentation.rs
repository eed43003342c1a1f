use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedlin::{ChainComplexSlice, Field, GradedBasis, LinearMap, Scalar, Vector};
use crate::sigmaop::{perm, Cooperad, Mono, Normalizer, Species};

/// A term of a fully expanded (non-coinvariant) decomposition: cooperad basis
/// element and ordered word of generators.
pub type Tensor = (usize, Vec<usize>);

/// A finite conilpotent coalgebra over a cooperad.
///
/// The decomposition stores the reduced part only, as coinvariant normal
/// forms; a stored term `c ⊗ (g_1, …, g_k)` stands for its symmetrization
/// over `Σ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraPresentation {
    name: String,
    cooperad: Cooperad,
    generators: GradedBasis,
    differential: LinearMap,
    decomposition: Vec<Vector<Mono>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Degree,
    DSquared,
    Coderivation,
    Coassociativity,
    Conilpotence,
    Regime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoalgebraReport {
    pub object: String,
    pub checked_up_to_arity: usize,
    pub conilpotence_depth: usize,
    pub violations: Vec<Violation>,
}

impl CoalgebraReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// The first violation as an error.
    pub fn to_error(&self) -> Option<Error> {
        self.violations.first().map(|v| {
            let msg = format!("{}: {}", self.object, v.witness);
            match v.law {
                Law::Degree => Error::Degree(msg),
                Law::DSquared => Error::DSquared(msg),
                Law::Coderivation => Error::Coderivation(msg),
                Law::Regime => Error::Regime(msg),
                Law::Coassociativity | Law::Conilpotence => Error::Validation(msg),
            }
        })
    }
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

impl CoalgebraPresentation {
    /// Structural checks only; run [`Self::validate`] for the coalgebra laws.
    pub fn new(
        name: &str,
        cooperad: Cooperad,
        generators: GradedBasis,
        differential: LinearMap,
        decomposition: Vec<Vector<Mono>>,
    ) -> Result<Self> {
        if differential.source() != &generators || differential.target() != &generators {
            return Err(Error::Mismatch(
                "the differential must act on the generators".into(),
            ));
        }
        if differential.degree() != -1 {
            return Err(Error::Degree(format!(
                "the differential of {name} has degree {}",
                differential.degree()
            )));
        }
        if decomposition.len() != generators.len() {
            return Err(Error::DimensionMismatch(
                "one decomposition per generator".into(),
            ));
        }
        let letters = letters_of(&generators);
        let nz = Normalizer::new(&cooperad, letters);
        let mut normalized = Vec::with_capacity(decomposition.len());
        for (g, delta) in decomposition.iter().enumerate() {
            let mut out = Vector::zero(cooperad.field());
            for (m, c) in delta.iter() {
                let n = m.arity();
                if n == 0 || m.word.iter().any(|&l| l >= generators.len()) {
                    return Err(Error::DimensionMismatch(format!(
                        "decomposition of {} uses an unknown generator",
                        generators.get(g).label
                    )));
                }
                if m.op >= cooperad.dim(n)? {
                    return Err(Error::DimensionMismatch(format!(
                        "decomposition of {} uses an unknown co-operation",
                        generators.get(g).label
                    )));
                }
                if n == 1 && m.op == cooperad.counit() {
                    return Err(Error::Validation(format!(
                        "counit terms are implicit; remove it from the decomposition of {}",
                        generators.get(g).label
                    )));
                }
                out.add_scaled(
                    &nz.normalize(&Vector::basis(cooperad.field(), m.op), &m.word)?,
                    c,
                );
            }
            normalized.push(out);
        }
        Ok(CoalgebraPresentation {
            name: name.to_string(),
            cooperad,
            generators,
            differential,
            decomposition: normalized,
        })
    }

    /// The zero coalgebra over `cooperad`.
    pub fn zero(name: &str, cooperad: Cooperad) -> Self {
        let field = cooperad.field();
        let generators = GradedBasis::empty();
        CoalgebraPresentation {
            name: name.to_string(),
            differential: LinearMap::zero(field, generators.clone(), generators.clone(), -1),
            cooperad,
            generators,
            decomposition: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn cooperad(&self) -> &Cooperad {
        &self.cooperad
    }

    pub fn field(&self) -> Field {
        self.cooperad.field()
    }

    pub fn generators(&self) -> &GradedBasis {
        &self.generators
    }

    pub fn differential(&self) -> &LinearMap {
        &self.differential
    }

    pub fn decomposition(&self, g: usize) -> &Vector<Mono> {
        &self.decomposition[g]
    }

    pub fn letters(&self) -> Vec<(String, i64)> {
        letters_of(&self.generators)
    }

    pub fn normalizer(&self) -> Normalizer<'_, Cooperad> {
        Normalizer::new(&self.cooperad, self.letters())
    }

    /// The underlying chain complex.
    pub fn underlying(&self) -> Result<ChainComplexSlice> {
        ChainComplexSlice::finite(self.differential.clone())
    }

    /// Human-readable form of a decomposition vector.
    pub fn describe(&self, v: &Vector<Mono>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(m, c)| {
                let word: Vec<String> = m
                    .word
                    .iter()
                    .map(|&l| self.generators.get(l).label.clone())
                    .collect();
                format!(
                    "{c}*{}({})",
                    self.cooperad.label(m.arity(), m.op),
                    word.join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `c ⊗ w` acted on by `τ_j` in `C(n) ⊗ X^{⊗n}`, with the Koszul sign.
    fn act_tensor(&self, t: &Tensor, j: usize) -> Result<Vector<Tensor>> {
        let (x, w) = t;
        let n = w.len();
        let mut w2 = w.clone();
        w2.swap(j, j + 1);
        let neg = odd(self.generators.degree(w[j])) && odd(self.generators.degree(w[j + 1]));
        let mut out = Vector::zero(self.field());
        for (&y, c) in self.cooperad.act(n, j, *x)?.iter() {
            out.add_term((y, w2.clone()), c.clone().signed(neg));
        }
        Ok(out)
    }

    /// The symmetrization `Σ_σ (c ⊗ w)·σ`.
    pub fn norm(&self, t: &Tensor) -> Result<Vector<Tensor>> {
        let field = self.field();
        let n = t.1.len();
        let mut out = Vector::zero(field);
        for sigma in perm::all(n) {
            let mut v = Vector::basis(field, t.clone());
            for j in perm::adjacent_word(&sigma) {
                let mut next = Vector::zero(field);
                for (s, c) in v.iter() {
                    next.add_scaled(&self.act_tensor(s, j)?, c);
                }
                v = next;
            }
            out.add(&v);
        }
        Ok(out)
    }

    /// The full decomposition of `g` in `⊕ C(n) ⊗ X^{⊗n}`, counit term included.
    pub fn full_decomposition(&self, g: usize) -> Result<Vector<Tensor>> {
        let mut out = Vector::basis(self.field(), (self.cooperad.counit(), vec![g]));
        for (m, c) in self.decomposition[g].iter() {
            out.add_scaled(&self.norm(&(m.op, m.word.clone()))?, c);
        }
        Ok(out)
    }

    fn full_of(&self, v: &Vector<usize>) -> Result<Vector<Tensor>> {
        let mut out = Vector::zero(self.field());
        for (&g, c) in v.iter() {
            out.add_scaled(&self.full_decomposition(g)?, c);
        }
        Ok(out)
    }

    /// The differential extended to `C(n) ⊗ X^{⊗n}` with Koszul signs.
    fn d_tensor(&self, t: &Tensor) -> Vector<Tensor> {
        let (x, w) = t;
        let n = w.len();
        let mut out = Vector::zero(self.field());
        let mut sign_deg = self.cooperad.degree(n, *x);
        for i in 0..n {
            for (&h, c) in self.differential.column(w[i]).iter() {
                let mut w2 = w.clone();
                w2[i] = h;
                out.add_term((*x, w2), c.clone().signed(odd(sign_deg)));
            }
            sign_deg += self.generators.degree(w[i]);
        }
        out
    }

    fn describe_tensor(&self, v: &Vector<Tensor>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .take(4)
            .map(|((x, w), c)| {
                format!(
                    "{c}*{}({})",
                    self.cooperad.label(w.len(), *x),
                    w.iter()
                        .map(|&l| self.generators.get(l).label.clone())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Every coalgebra law, with witnesses.
    pub fn validate(&self) -> Result<CoalgebraReport> {
        let mut violations = Vec::new();
        let mut push = |law, witness: String| violations.push(Violation { law, witness });
        let gens = &self.generators;
        let label = |g: usize| gens.get(g).label.clone();
        let max_arity = self.cooperad.max_arity();

        // Degrees of decomposition terms.
        for g in 0..gens.len() {
            for (m, _) in self.decomposition[g].iter() {
                let d = self.cooperad.degree(m.arity(), m.op)
                    + m.word.iter().map(|&l| gens.degree(l)).sum::<i64>();
                if d != gens.degree(g) {
                    push(
                        Law::Degree,
                        format!(
                            "a term of Δ({}) has degree {d}, not {}",
                            label(g),
                            gens.degree(g)
                        ),
                    );
                }
            }
        }

        // d∘d = 0.
        let dd = self.differential.compose(&self.differential)?;
        for g in 0..gens.len() {
            if !dd.column(g).is_zero() {
                push(Law::DSquared, format!("d(d({})) ≠ 0", label(g)));
            }
        }

        // Conilpotence: every generator in a decomposition term is strictly lower.
        let depth = match conilpotence_depth(&self.decomposition) {
            Ok(d) => d,
            Err(g) => {
                push(
                    Law::Conilpotence,
                    format!(
                        "the iterated decomposition of {} does not terminate",
                        label(g)
                    ),
                );
                0
            }
        };

        // Regime ℓ + m ≥ 0 for the cooperad.
        if let Err(e) = check_cooperad_regime(&self.cooperad, gens) {
            push(Law::Regime, e.to_string());
        }

        // Coderivation: Δ(dg) = d(Δg).
        for g in 0..gens.len() {
            let lhs = self.full_of(self.differential.column(g))?;
            let mut rhs = Vector::zero(self.field());
            for (t, c) in self.full_decomposition(g)?.iter() {
                rhs.add_scaled(&self.d_tensor(t), c);
            }
            if lhs != rhs {
                let mut diff = lhs.clone();
                diff.add_scaled(&rhs, &-self.field().one());
                push(
                    Law::Coderivation,
                    format!(
                        "Δ(d {0}) ≠ d(Δ {0}); the difference is {1}",
                        label(g),
                        self.describe_tensor(&diff)
                    ),
                );
            }
        }

        // Coassociativity in partial form, through the cooperad's max arity.
        type Key = (usize, usize, usize, usize, Vec<usize>);
        let fulls: Vec<Vector<Tensor>> = (0..gens.len())
            .map(|g| self.full_decomposition(g))
            .collect::<Result<_>>()?;
        for g in 0..gens.len() {
            let mut lhs: Vector<Key> = Vector::zero(self.field());
            let mut rhs: Vector<Key> = Vector::zero(self.field());
            for ((z, u), cz) in fulls[g].iter() {
                let n = u.len();
                if n > max_arity {
                    continue;
                }
                for a in 1..=n {
                    let b = n + 1 - a;
                    for i in 0..a {
                        for (x, y, c) in self.cooperad.decompose(*z, a, i, b)? {
                            lhs.add_term((x, i, y, b, u.clone()), &c * cz);
                        }
                    }
                }
            }
            for ((x, v), cx) in fulls[g].iter() {
                let a = v.len();
                for i in 0..a {
                    let before: i64 = v[..i].iter().map(|&l| gens.degree(l)).sum();
                    for ((y, seg), cy) in fulls[v[i]].iter() {
                        let b = seg.len();
                        if a + b - 1 > max_arity {
                            continue;
                        }
                        let mut u = v[..i].to_vec();
                        u.extend_from_slice(seg);
                        u.extend_from_slice(&v[i + 1..]);
                        let neg = odd(self.cooperad.degree(b, *y) * before);
                        rhs.add_term((*x, i, *y, b, u), (cx * cy).signed(neg));
                    }
                }
            }
            if lhs != rhs {
                push(
                    Law::Coassociativity,
                    format!("the two iterated decompositions of {} differ", label(g)),
                );
            }
        }

        Ok(CoalgebraReport {
            object: self.name.clone(),
            checked_up_to_arity: max_arity,
            conilpotence_depth: depth,
            violations,
        })
    }

    /// Validates and returns `self`, or the first violation as an error.
    pub fn validated(self) -> Result<Self> {
        match self.validate()?.to_error() {
            Some(e) => Err(e),
            None => Ok(self),
        }
    }
}

pub(crate) fn letters_of(b: &GradedBasis) -> Vec<(String, i64)> {
    b.elements()
        .iter()
        .map(|e| (e.label.clone(), e.degree))
        .collect()
}

/// Longest chain of iterated decompositions, or a generator on a cycle.
fn conilpotence_depth(decomposition: &[Vector<Mono>]) -> std::result::Result<usize, usize> {
    let n = decomposition.len();
    // 0 = unvisited, 1 = in progress, 2 = done.
    let mut state = vec![0u8; n];
    let mut depth = vec![0usize; n];
    fn visit(
        g: usize,
        dec: &[Vector<Mono>],
        state: &mut [u8],
        depth: &mut [usize],
    ) -> std::result::Result<usize, usize> {
        match state[g] {
            2 => return Ok(depth[g]),
            1 => return Err(g),
            _ => {}
        }
        state[g] = 1;
        let mut best = 0;
        for (m, _) in dec[g].iter() {
            for &l in &m.word {
                best = best.max(visit(l, dec, state, depth)? + 1);
            }
        }
        state[g] = 2;
        depth[g] = best;
        Ok(best)
    }
    let mut max = 0;
    for g in 0..n {
        max = max.max(visit(g, decomposition, &mut state, &mut depth)?);
    }
    Ok(max)
}

/// Largest `ℓ` with the coaugmentation coideal in arity `n` concentrated in
/// degree at least `ℓ(n−1)+1`, for arities `2..=max_arity`.
pub fn cooperad_slope(c: &Cooperad) -> Result<Option<i64>> {
    for x in 0..c.dim(1)? {
        if x != c.counit() && c.degree(1, x) < 1 {
            return Err(Error::Regime(format!(
                "{} has {} in arity 1 and degree {} < 1",
                c.name(),
                c.label(1, x),
                c.degree(1, x)
            )));
        }
    }
    let mut best: Option<i64> = None;
    for n in 2..=c.max_arity() {
        let Ok(dim) = c.dim(n) else { continue };
        for x in 0..dim.min(1 << 12) {
            let l = (c.degree(n, x) - 1).div_euclid(n as i64 - 1);
            best = Some(best.map_or(l, |b: i64| b.min(l)));
        }
    }
    Ok(best)
}

/// `ℓ + m ≥ 0` for the cooperad's slope and the generators' minimum degree.
pub fn check_cooperad_regime(c: &Cooperad, generators: &GradedBasis) -> Result<()> {
    if generators.is_empty() {
        return Ok(());
    }
    if let Some(l) = cooperad_slope(c)? {
        let m = generators.min_degree();
        if l + m < 0 {
            return Err(Error::Regime(format!(
                "{} has slope {l} and the generators start in degree {m}; ℓ + m = {} < 0",
                c.name(),
                l + m
            )));
        }
    }
    Ok(())
}

/// `op ⊗ (f(w_1), …, f(w_n))` for a degree-0 map `f` given on letters,
/// normalized in the target letters.
pub(crate) fn push_word<S: Species>(
    nz: &Normalizer<'_, S>,
    op: &Vector<usize>,
    word: &[usize],
    f: &dyn Fn(usize) -> Vector<usize>,
) -> Result<Vector<Mono>> {
    let field = nz.species().field();
    let mut words: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), field.one())];
    for &l in word {
        let img = f(l);
        let mut next = Vec::with_capacity(words.len() * img.len());
        for (w, c) in &words {
            for (&h, ch) in img.iter() {
                let mut w2 = w.clone();
                w2.push(h);
                next.push((w2, c * ch));
            }
        }
        words = next;
    }
    let mut out = Vector::zero(field);
    for (w, c) in words {
        out.add_scaled(&nz.normalize(op, &w)?, &c);
    }
    Ok(out)
}
