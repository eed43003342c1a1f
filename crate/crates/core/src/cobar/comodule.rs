//! The one-sided bar and cobar constructions for a twisting cochain between
//! a coalgebra and an algebra (both concentrated in arity 1).

use serde::Serialize;

use super::analysis::{compare_level, summarize, LevelVerdict, Stability};
use super::complex::{cobar_complex, CobarComplex};
use crate::coalg::{CoalgebraMorphism, CoalgebraPresentation};
use crate::error::{Error, Result};
use crate::gradedlin::{BasisElement, Field, FilteredComplex, GradedBasis, LinearMap, Vector};
use crate::sigmaop::{Cooperad, Kind, Mono, Operad};
use crate::twisting::TwistingMorphism;

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

fn require_arity_one_algebra(p: &Operad) -> Result<()> {
    if p.arity_limit() != Some(1) || p.kind() == Kind::Unit {
        return Err(Error::Arity(format!(
            "{} is not an algebra concentrated in arity 1",
            p.name()
        )));
    }
    Ok(())
}

fn require_arity_one_coalgebra(c: &Cooperad) -> Result<()> {
    if c.arity_limit() != Some(1) || c.kind() == Kind::Unit {
        return Err(Error::Arity(format!(
            "{} is not a coalgebra concentrated in arity 1",
            c.name()
        )));
    }
    Ok(())
}

/// A left module over an algebra `P(1)`, given by the action of every
/// algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraModule {
    name: String,
    algebra: Operad,
    basis: GradedBasis,
    /// `actions[p]` is the action of the algebra basis element `p`.
    actions: Vec<LinearMap>,
}

impl AlgebraModule {
    /// Extends the actions of algebra generators multiplicatively and checks
    /// associativity for every product the truncation of the algebra keeps.
    pub fn new(
        name: &str,
        algebra: &Operad,
        basis: GradedBasis,
        generators: Vec<(String, LinearMap)>,
    ) -> Result<Self> {
        require_arity_one_algebra(algebra)?;
        let field = algebra.field();
        let dim = algebra.dim(1)?;
        let mut actions: Vec<Option<LinearMap>> = vec![None; dim];
        let unit = algebra.unit();
        actions[unit] = Some(LinearMap::identity(field, basis.clone()));
        let mut gens = Vec::new();
        for (label, a) in generators {
            let g = algebra.index_of(1, &label)?;
            if a.source() != &basis || a.target() != &basis {
                return Err(Error::Mismatch(format!(
                    "the action of {label} must act on the module basis"
                )));
            }
            if a.degree() != algebra.degree(1, g) {
                return Err(Error::Degree(format!(
                    "{label} has degree {} but acts with degree {}",
                    algebra.degree(1, g),
                    a.degree()
                )));
            }
            actions[g] = Some(a.clone());
            gens.push((g, a));
        }
        // Breadth-first: g·q for known q.
        let mut frontier: Vec<usize> = (0..dim).filter(|&p| actions[p].is_some()).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for q in frontier {
                for (g, a) in &gens {
                    let prod = algebra.compose(1, 0, *g, 1, q)?;
                    if prod.len() != 1 {
                        continue;
                    }
                    let (&r, c) = prod.first().expect("one term");
                    if actions[r].is_some() {
                        continue;
                    }
                    let inv = c
                        .inverse()
                        .ok_or_else(|| Error::Validation("zero structure constant".into()))?;
                    let composite = a.compose(actions[q].as_ref().expect("known"))?;
                    let cols = composite.columns().iter().map(|v| v.scaled(&inv)).collect();
                    actions[r] = Some(LinearMap::new(
                        field,
                        basis.clone(),
                        basis.clone(),
                        composite.degree(),
                        cols,
                    )?);
                    next.push(r);
                }
            }
            frontier = next;
        }
        let actions: Vec<LinearMap> = actions
            .into_iter()
            .enumerate()
            .map(|(p, a)| {
                a.ok_or_else(|| {
                    Error::Validation(format!(
                        "{} is not a product of the given generators",
                        algebra.label(1, p)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        // Associativity of the action, for products the truncation keeps.
        let top = (0..dim).map(|p| algebra.weight(1, p)).max().unwrap_or(0);
        for p in 0..dim {
            for q in 0..dim {
                if algebra.weight(1, p) + algebra.weight(1, q) > top {
                    continue;
                }
                let lhs = actions[p].compose(&actions[q])?;
                let prod = algebra.compose(1, 0, p, 1, q)?;
                for j in 0..basis.len() {
                    let mut rhs = Vector::zero(field);
                    for (&r, c) in prod.iter() {
                        rhs.add_scaled(actions[r].column(j), c);
                    }
                    if lhs.column(j) != &rhs {
                        return Err(Error::Validation(format!(
                            "{}·({}·{}) ≠ ({}{})·{}",
                            algebra.label(1, p),
                            algebra.label(1, q),
                            basis.get(j).label,
                            algebra.label(1, p),
                            algebra.label(1, q),
                            basis.get(j).label
                        )));
                    }
                }
            }
        }
        Ok(AlgebraModule {
            name: name.to_string(),
            algebra: algebra.clone(),
            basis,
            actions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn algebra(&self) -> &Operad {
        &self.algebra
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn action(&self, p: usize) -> &LinearMap {
        &self.actions[p]
    }

    /// `a · m` for `a ∈ P(1)` and `m` in the module.
    pub fn act(&self, a: &Vector<usize>, m: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::zero(self.field());
        for (&p, c) in a.iter() {
            out.add_scaled(&self.actions[p].apply(m), c);
        }
        out
    }
}

/// `v·k[v]/(v^{n+1})` over a polynomial algebra, with every other variable
/// acting as zero. Every basis element has weight 1, so cobar levels count
/// the algebra degree only.
pub fn power_module(algebra: &Operad, var: &str, n: usize) -> Result<AlgebraModule> {
    power_module_with(algebra, var, n, |_| 1, &format!("M_{n}"))
}

/// The free module `v·k[v]` seen through weight `level`: `v^i` has weight
/// `i`, and the one element past the level only ever occurs as an image.
pub fn free_power_module(algebra: &Operad, var: &str, level: u32) -> Result<AlgebraModule> {
    power_module_with(
        algebra,
        var,
        level as usize + 1,
        |i| i as u32,
        &format!("S({var})"),
    )
}

fn power_module_with(
    algebra: &Operad,
    var: &str,
    n: usize,
    weight: impl Fn(usize) -> u32,
    name: &str,
) -> Result<AlgebraModule> {
    let field = algebra.field();
    let elements: Vec<BasisElement> = (1..=n)
        .map(|i| {
            BasisElement::new(
                if i == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{i}")
                },
                0,
                weight(i),
            )
        })
        .collect();
    let basis = GradedBasis::new(elements)?;
    let gens = polynomial_generators(algebra)?;
    let mut out = Vec::new();
    for g in gens {
        let cols = (0..n)
            .map(|i| {
                if g == var && i + 1 < n {
                    Vector::basis(field, i + 1)
                } else {
                    Vector::zero(field)
                }
            })
            .collect();
        out.push((
            g,
            LinearMap::new(field, basis.clone(), basis.clone(), 0, cols)?,
        ));
    }
    AlgebraModule::new(name, algebra, basis, out)
}

/// The ground field with every generator acting as zero.
pub fn trivial_module(algebra: &Operad) -> Result<AlgebraModule> {
    let field = algebra.field();
    let basis = GradedBasis::new(vec![BasisElement::new("1", 0, 1)])?;
    let gens = polynomial_generators(algebra)?
        .into_iter()
        .map(|g| (g, LinearMap::zero(field, basis.clone(), basis.clone(), 0)))
        .collect();
    AlgebraModule::new("k", algebra, basis, gens)
}

/// The ground field with `var` acting as the identity and other generators
/// as zero; `var` is invertible on it.
pub fn invertible_module(algebra: &Operad, var: &str) -> Result<AlgebraModule> {
    let field = algebra.field();
    let basis = GradedBasis::new(vec![BasisElement::new("ℓ", 0, 1)])?;
    let gens = polynomial_generators(algebra)?
        .into_iter()
        .map(|g| {
            let a = if g == var {
                LinearMap::identity(field, basis.clone())
            } else {
                LinearMap::zero(field, basis.clone(), basis.clone(), 0)
            };
            (g, a)
        })
        .collect();
    AlgebraModule::new(&format!("k[{var}^±]"), algebra, basis, gens)
}

/// Weight-one basis elements of an arity-1 algebra.
fn polynomial_generators(algebra: &Operad) -> Result<Vec<String>> {
    require_arity_one_algebra(algebra)?;
    Ok((0..algebra.dim(1)?)
        .filter(|&p| algebra.weight(1, p) == 1)
        .map(|p| algebra.label(1, p))
        .collect())
}

/// A degree-0 map of modules over the same algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: AlgebraModule,
    pub target: AlgebraModule,
    pub map: LinearMap,
}

impl ModuleMap {
    pub fn new(source: &AlgebraModule, target: &AlgebraModule, map: LinearMap) -> Result<Self> {
        if source.algebra != target.algebra {
            return Err(Error::Mismatch("modules over different algebras".into()));
        }
        if map.source() != &source.basis || map.target() != &target.basis || map.degree() != 0 {
            return Err(Error::Mismatch(
                "a module map has degree 0 between the module bases".into(),
            ));
        }
        for p in 0..source.actions.len() {
            if map.compose(&source.actions[p])? != target.actions[p].compose(&map)? {
                return Err(Error::Validation(format!(
                    "the map does not commute with the action of {}",
                    source.algebra.label(1, p)
                )));
            }
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    /// `M_n → M_m` for `n ≥ m`, sending `y^i` to `y^i` or to zero.
    pub fn projection(source: &AlgebraModule, target: &AlgebraModule) -> Result<Self> {
        let field = source.field();
        let cols = source
            .basis
            .elements()
            .iter()
            .map(|e| match target.basis.index_of(&e.label) {
                Some(i) => Vector::basis(field, i),
                None => Vector::zero(field),
            })
            .collect();
        let map = LinearMap::new(field, source.basis.clone(), target.basis.clone(), 0, cols)?;
        Self::new(source, target, map)
    }
}

/// `B_τ M = C ⊗ M` as a `C`-comodule, with `d(c⊗m) = Σ ± c' ⊗ τ(c'')·m`.
pub fn bar_comodule(tau: &TwistingMorphism, m: &AlgebraModule) -> Result<CoalgebraPresentation> {
    let c = tau.source();
    require_arity_one_coalgebra(c)?;
    if m.algebra() != tau.target() {
        return Err(Error::Mismatch(format!(
            "{} is a module over {}, not over {}",
            m.name(),
            m.algebra().name(),
            tau.target().name()
        )));
    }
    let field = tau.field();
    let cdim = c.dim(1)?;
    let mdim = m.basis().len();
    let idx = |x: usize, j: usize| x * mdim + j;
    let mut elements = Vec::with_capacity(cdim * mdim);
    for x in 0..cdim {
        for j in 0..mdim {
            let e = m.basis().get(j);
            elements.push(BasisElement::new(
                format!("{}⊗{}", c.label(1, x), e.label),
                c.degree(1, x) + e.degree,
                e.weight,
            ));
        }
    }
    let min = elements.iter().map(|e| e.degree).min().unwrap_or(0);
    let basis = GradedBasis::with_min_degree(elements, min)?;
    let mut columns = Vec::with_capacity(basis.len());
    let mut decomposition = Vec::with_capacity(basis.len());
    for z in 0..cdim {
        let pairs = c.decompose(z, 1, 0, 1)?;
        for j in 0..mdim {
            let mut d = Vector::zero(field);
            let mut delta = Vector::zero(field);
            let e = Vector::basis(field, j);
            for (x, y, k) in &pairs {
                let acted = m.act(&tau.image(1, *y), &e);
                let sign = k.clone().signed(odd(c.degree(1, *x)));
                for (&i, ci) in acted.iter() {
                    d.add_term(idx(*x, i), ci * &sign);
                }
                if *x != c.counit() {
                    delta.add_term(
                        Mono {
                            op: *x,
                            word: vec![idx(*y, j)],
                        },
                        k.clone(),
                    );
                }
            }
            columns.push(d);
            decomposition.push(delta);
        }
    }
    let d = LinearMap::new(field, basis.clone(), basis.clone(), -1, columns)?;
    let name = format!("B_{} {}", tau.name(), m.name());
    CoalgebraPresentation::new(&name, c.clone(), basis, d, decomposition)?.validated()
}

/// `B_τ(f) = id ⊗ f`.
pub fn bar_map(tau: &TwistingMorphism, f: &ModuleMap) -> Result<CoalgebraMorphism> {
    let source = bar_comodule(tau, &f.source)?;
    let target = bar_comodule(tau, &f.target)?;
    let field = tau.field();
    let cdim = tau.source().dim(1)?;
    let (sm, tm) = (f.source.basis.len(), f.target.basis.len());
    let mut cols = Vec::with_capacity(cdim * sm);
    for x in 0..cdim {
        for j in 0..sm {
            cols.push(f.map.column(j).map_keys(|&i| x * tm + i));
        }
    }
    let map = LinearMap::new(
        field,
        source.generators().clone(),
        target.generators().clone(),
        0,
        cols,
    )?;
    CoalgebraMorphism::new(source, target, map)
}

/// `Ω_α N = P ⊗ N` for a comodule `N`.
pub fn cobar_comodule(
    alpha: &TwistingMorphism,
    n: &CoalgebraPresentation,
    max_weight: u32,
    window: (i64, i64),
) -> Result<CobarComplex> {
    require_arity_one_coalgebra(alpha.source())?;
    cobar_complex(alpha, n, max_weight, window)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounitReport {
    pub twisting: String,
    pub module: String,
    pub degrees: (i64, i64),
    pub levels: Vec<LevelVerdict>,
    pub summary: Stability,
}

/// Whether `Ω_τ B_τ M → M` is a quasi-isomorphism, level by level.
pub fn counit_check(
    tau: &TwistingMorphism,
    m: &AlgebraModule,
    schedule: &[u32],
    stability: usize,
) -> Result<CounitReport> {
    let top = *schedule
        .last()
        .ok_or_else(|| Error::Validation("empty schedule".into()))?;
    let bar = bar_comodule(tau, m)?;
    let (lo, hi) = bar.generators().degree_range().unwrap_or((0, 0));
    let window = (lo - 1, hi + 1);
    let omega = cobar_comodule(tau, &bar, top, window)?;
    let field = tau.field();
    let c = tau.source();
    let mdim = m.basis().len();
    // M as a complex with zero differential.
    let elements = m.basis().elements().to_vec();
    let columns = vec![Some(Vector::zero(field)); elements.len()];
    let target = FilteredComplex::new(field, elements, columns, top, window)?;
    let counit = c.counit();
    let images: Vec<Vector<usize>> = (0..omega.len())
        .map(|j| {
            let mono = omega.mono(j);
            let letter = mono.word[0];
            let (x, i) = (letter / mdim, letter % mdim);
            if x != counit {
                return Vector::zero(field);
            }
            m.act(&Vector::basis(field, mono.op), &Vector::basis(field, i))
        })
        .collect();
    let f = |j: usize| images[j].clone();
    let degrees = omega.certified();
    let mut levels = Vec::new();
    for &n in schedule {
        levels.push(compare_level(omega.filtered(), &target, &f, degrees, n)?);
    }
    Ok(CounitReport {
        twisting: tau.name().to_string(),
        module: m.name().to_string(),
        degrees,
        summary: summarize(&levels, stability),
        levels,
    })
}
