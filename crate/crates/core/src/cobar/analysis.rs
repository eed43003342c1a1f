use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{cobar_complex, CobarComplex};
use crate::coalg::{push_word, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::gradedlin::{induced_rank, FilteredComplex, Vector, Verdict};
use crate::sigmaop::{Mono, Normalizer, OperadMap};
use crate::twisting::TwistingMorphism;

/// Default number of trailing levels that must agree for a verdict to count as stable.
pub const DEFAULT_STABILITY: usize = 3;

/// `Ω_α(f)`: the word-wise extension of a coalgebra map.
#[derive(Clone, Debug)]
pub struct CobarMap {
    pub source: CobarComplex,
    pub target: CobarComplex,
    /// Images of the source basis proper, in target indices.
    pub images: Vec<Vector<usize>>,
}

pub fn cobar_map(
    alpha: &TwistingMorphism,
    f: &CoalgebraMorphism,
    max_weight: u32,
    window: (i64, i64),
) -> Result<CobarMap> {
    let source = cobar_complex(alpha, f.source(), max_weight, window)?;
    let target = cobar_complex(alpha, f.target(), max_weight, window)?;
    let field = alpha.field();
    let tgt_nz = Normalizer::new(alpha.target(), f.target().letters());
    let map = f.map();
    let push = |m: &Mono| {
        push_word(&tgt_nz, &Vector::basis(field, m.op), &m.word, &|l| {
            map.column(l).clone()
        })
    };
    let src_engine = source.engine()?;
    let tgt_engine = target.engine()?;
    let mut images = Vec::with_capacity(source.len());
    for j in 0..source.len() {
        let m = source.mono(j);
        let image = push(m)?;
        // Both differentials, compared as combinations of words.
        let mut fd = Vector::zero(field);
        for (t, c) in src_engine.d(m)?.iter() {
            fd.add_scaled(&push(t)?, c);
        }
        let df = tgt_engine.d_vec(&image)?;
        if fd != df {
            return Err(Error::NotChainMap(format!(
                "Ω_{}(f) does not commute with d on {}",
                alpha.name(),
                source.label(j)
            )));
        }
        let mut v = Vector::zero(field);
        for (t, c) in image.iter() {
            let i = target.index_of_mono(t).ok_or_else(|| {
                Error::WindowNotCertified(format!(
                    "the image of {} leaves the target basis",
                    source.label(j)
                ))
            })?;
            v.add_term(i, c.clone());
        }
        images.push(v);
    }
    Ok(CobarMap {
        source,
        target,
        images,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    StableYes,
    StableNo,
    Unstable,
}

impl Stability {
    /// CLI exit status: 0 stable yes, 1 stable no, 2 unstable.
    pub fn exit_code(self) -> i32 {
        match self {
            Stability::StableYes => 0,
            Stability::StableNo => 1,
            Stability::Unstable => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelVerdict {
    pub level: u32,
    pub verdict: Verdict,
    pub source_betti: BTreeMap<i64, usize>,
    pub target_betti: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeqReport {
    pub twisting: String,
    pub source: String,
    pub target: String,
    pub degrees: (i64, i64),
    /// Both differentials preserve weight, so each level is exact.
    pub exact: bool,
    pub levels: Vec<LevelVerdict>,
    pub stability: usize,
    pub summary: Stability,
}

impl WeqReport {
    /// The verdict at the last level.
    pub fn verdict(&self) -> Option<Verdict> {
        self.levels.last().map(|l| l.verdict)
    }
}

/// Compares level-`level` homology of two filtered complexes along `f`.
pub fn compare_level(
    source: &FilteredComplex,
    target: &FilteredComplex,
    f: &dyn Fn(usize) -> Vector<usize>,
    degrees: (i64, i64),
    level: u32,
) -> Result<LevelVerdict> {
    let mut verdict = Verdict::Yes;
    let mut source_betti = BTreeMap::new();
    let mut target_betti = BTreeMap::new();
    for k in degrees.0..=degrees.1 {
        let a = source.betti(k, level)?;
        let b = target.betti(k, level)?;
        source_betti.insert(k, a);
        target_betti.insert(k, b);
        if a != b || induced_rank(source, target, f, k, level)? != a {
            verdict = Verdict::No;
        }
    }
    Ok(LevelVerdict {
        level,
        verdict,
        source_betti,
        target_betti,
    })
}

pub(crate) fn summarize(levels: &[LevelVerdict], stability: usize) -> Stability {
    let s = stability.max(1);
    if levels.len() < s {
        return Stability::Unstable;
    }
    let tail = &levels[levels.len() - s..];
    if tail.iter().all(|l| l.verdict == Verdict::Yes) {
        Stability::StableYes
    } else if tail.iter().all(|l| l.verdict == Verdict::No) {
        Stability::StableNo
    } else {
        Stability::Unstable
    }
}

fn check_schedule(schedule: &[u32]) -> Result<u32> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] == 0 {
        return Err(Error::Validation(
            "the schedule must be increasing positive levels".into(),
        ));
    }
    Ok(*schedule.last().expect("nonempty"))
}

/// Whether `Ω_α(f)` is a quasi-isomorphism, level by level.
pub fn alpha_weq(
    alpha: &TwistingMorphism,
    f: &CoalgebraMorphism,
    window: (i64, i64),
    schedule: &[u32],
    stability: usize,
) -> Result<WeqReport> {
    let top = check_schedule(schedule)?;
    let m = cobar_map(alpha, f, top, window)?;
    let exact = m.source.preserves_weight() && m.target.preserves_weight();
    let degrees = m.source.certified();
    let images = &m.images;
    let f = |j: usize| images[j].clone();
    let mut levels = Vec::new();
    for &n in schedule {
        levels.push(compare_level(
            m.source.filtered(),
            m.target.filtered(),
            &f,
            degrees,
            n,
        )?);
    }
    Ok(WeqReport {
        twisting: alpha.name().to_string(),
        source: m.source.input().name().to_string(),
        target: m.target.input().name().to_string(),
        degrees,
        exact,
        summary: summarize(&levels, stability),
        levels,
        stability,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipLevel {
    pub level: u32,
    pub in_span: bool,
}

/// Span-membership verdicts of a cycle against `d(weight ≤ N)`, images untruncated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub class: String,
    pub degree: i64,
    pub levels: Vec<MembershipLevel>,
    pub stability: usize,
    /// The verdict is constant over the last `stability` levels; this is
    /// evidence, not proof.
    pub stable: bool,
}

impl MembershipCertificate {
    /// `Some(true)` when stably not a boundary, `Some(false)` when stably a
    /// boundary, `None` when unstable.
    pub fn survives(&self) -> Option<bool> {
        self.stable
            .then(|| !self.levels.last().is_some_and(|l| l.in_span))
    }
}

pub fn class_survives(
    c: &CobarComplex,
    cycle: &Vector<usize>,
    schedule: &[u32],
    stability: usize,
) -> Result<MembershipCertificate> {
    let top = check_schedule(schedule)?;
    if top > c.max_weight() {
        return Err(Error::WindowNotCertified(format!(
            "level {top} exceeds the computed weight {}",
            c.max_weight()
        )));
    }
    let mut degrees = cycle.keys().map(|&i| c.elements()[i].degree);
    let degree = degrees
        .next()
        .ok_or_else(|| Error::Validation("the zero class".into()))?;
    if degrees.any(|d| d != degree) {
        return Err(Error::Degree("the class is not homogeneous".into()));
    }
    let boundary = c.apply(cycle)?;
    if !boundary.is_zero() {
        return Err(Error::Validation(format!(
            "{} is not a cycle: its differential is {}",
            c.describe(cycle),
            c.describe(&boundary)
        )));
    }
    let mut levels = Vec::new();
    for &n in schedule {
        levels.push(MembershipLevel {
            level: n,
            in_span: c.filtered().is_boundary(cycle, degree, n)?,
        });
    }
    let s = stability.max(1);
    let stable = levels.len() >= s && {
        let tail = &levels[levels.len() - s..];
        tail.iter().all(|l| l.in_span == tail[0].in_span)
    };
    Ok(MembershipCertificate {
        class: c.describe(cycle),
        degree,
        levels,
        stability: s,
        stable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub map: String,
    pub complex: String,
    pub compared: usize,
    /// `f` applied word-wise commutes with the two differentials.
    pub commutes: bool,
    /// Every basis element of `Ω_{f∘α} X` is hit.
    pub surjective: bool,
    pub witness: Option<String>,
}

impl FunctorialityReport {
    pub fn is_ok(&self) -> bool {
        self.commutes && self.surjective
    }
}

/// Applies `f` arity-wise to `Ω_α X` and compares with `Ω_{f∘α} X`.
pub fn functoriality_check(
    alpha: &TwistingMorphism,
    f: &OperadMap,
    x: &crate::coalg::CoalgebraPresentation,
    max_weight: u32,
    window: (i64, i64),
) -> Result<FunctorialityReport> {
    let beta = alpha.compose_with_operad_map(f)?;
    let a = cobar_complex(alpha, x, max_weight, window)?;
    let b = cobar_complex(&beta, x, max_weight, window)?;
    let field = alpha.field();
    let nz = Normalizer::new(beta.target(), x.letters());
    let push =
        |m: &Mono| -> Result<Vector<Mono>> { nz.normalize(&f.apply(m.arity(), m.op)?, &m.word) };
    let ea = a.engine()?;
    let eb = b.engine()?;
    let mut commutes = true;
    let mut witness = None;
    let mut hit = vec![false; b.len()];
    for j in 0..a.len() {
        let m = a.mono(j);
        let image = push(m)?;
        for t in image.keys() {
            if let Some(i) = b.index_of_mono(t) {
                if i < b.len() {
                    hit[i] = true;
                }
            }
        }
        let mut fd = Vector::zero(field);
        for (t, c) in ea.d(m)?.iter() {
            fd.add_scaled(&push(t)?, c);
        }
        if fd != eb.d_vec(&image)? && commutes {
            commutes = false;
            witness = Some(format!("f(d({})) ≠ d(f({}))", a.label(j), a.label(j)));
        }
    }
    let surjective = hit.iter().all(|&h| h);
    if !surjective && witness.is_none() {
        let i = hit.iter().position(|&h| !h).expect("unhit element");
        witness = Some(format!("{} is not the image of a word", b.label(i)));
    }
    Ok(FunctorialityReport {
        map: format!("{} → {}", f.source().name(), f.target().name()),
        complex: format!("Ω_{} {}", alpha.name(), x.name()),
        compared: a.len(),
        commutes,
        surjective,
        witness,
    })
}
