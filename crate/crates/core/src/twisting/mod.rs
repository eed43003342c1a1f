//! Twisting morphisms `α: C̄ → P` of degree −1, stored on basis elements of
//! the coaugmentation coideal.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedlin::{Field, Vector};
use crate::sigmaop::{
    exterior_coalgebra, polynomial_algebra, Cooperad, CooperadMap, Operad, OperadMap, LIE_ARITY_CAP,
};

#[cfg(test)]
mod tests;

/// Arity-wise images `α(n, x) ∈ P(n)` of the non-counit basis of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingMorphism {
    name: String,
    source: Cooperad,
    target: Operad,
    images: BTreeMap<(usize, usize), Vector<usize>>,
    koszul: bool,
    report: TwistingReport,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwistingReport {
    pub name: String,
    pub checked_up_to_arity: usize,
    pub equivariance_checked: bool,
    pub mc_residual_zero: bool,
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

impl TwistingMorphism {
    /// Validates degree, equivariance and the Maurer–Cartan equation; any
    /// failure is a hard error naming a witness.
    pub fn new(
        name: &str,
        source: Cooperad,
        target: Operad,
        images: Vec<((usize, usize), Vector<usize>)>,
        koszul: bool,
    ) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::Mismatch(format!(
                "{} is over {} but {} is over {}",
                source.name(),
                source.field(),
                target.name(),
                target.field()
            )));
        }
        let mut stored = BTreeMap::new();
        for ((n, x), v) in images {
            if n == 0 || n > source.max_arity() || x >= source.dim(n)? {
                return Err(Error::DimensionMismatch(format!(
                    "no basis element {x} in {}({n})",
                    source.name()
                )));
            }
            if v.is_zero() {
                continue;
            }
            if target.vanishes(n) || target.arity_limit().is_some_and(|l| n > l) {
                return Err(Error::Arity(format!(
                    "{}({n}) is not available",
                    target.name()
                )));
            }
            let dim = target.dim(n)?;
            if v.keys().any(|&y| y >= dim) {
                return Err(Error::DimensionMismatch(format!(
                    "image outside {}({n})",
                    target.name()
                )));
            }
            if n == 1 && x == source.counit() {
                return Err(Error::Validation(format!(
                    "the counit {} must map to zero",
                    source.label(1, x)
                )));
            }
            let want = source.degree(n, x) - 1;
            for &y in v.keys() {
                if target.degree(n, y) != want {
                    return Err(Error::Degree(format!(
                        "α({}) has the term {} of degree {}, expected {want}",
                        source.label(n, x),
                        target.label(n, y),
                        target.degree(n, y)
                    )));
                }
            }
            if stored.insert((n, x), v).is_some() {
                return Err(Error::Validation(format!(
                    "α({}) given twice",
                    source.label(n, x)
                )));
            }
        }
        let mut alpha = TwistingMorphism {
            name: name.to_string(),
            report: TwistingReport {
                name: name.to_string(),
                checked_up_to_arity: source.max_arity(),
                ..Default::default()
            },
            source,
            target,
            images: stored,
            koszul,
        };
        alpha.check_equivariance()?;
        alpha.report.equivariance_checked = true;
        if let Some((z, r)) = alpha.mc_residual()?.into_iter().next() {
            return Err(Error::MaurerCartan(format!(
                "(∂α + α⋆α)({}) = {} ≠ 0",
                alpha.source.label(z.0, z.1),
                alpha.describe(z.0, &r)
            )));
        }
        alpha.report.mc_residual_zero = true;
        Ok(alpha)
    }

    /// The zero twisting morphism.
    pub fn zero(name: &str, source: &Cooperad, target: &Operad) -> Result<Self> {
        Self::new(name, source.clone(), target.clone(), Vec::new(), false)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self.report.name = name.to_string();
        self
    }

    pub fn source(&self) -> &Cooperad {
        &self.source
    }

    pub fn target(&self) -> &Operad {
        &self.target
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn koszul(&self) -> bool {
        self.koszul
    }

    pub fn report(&self) -> &TwistingReport {
        &self.report
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Nonzero images keyed by `(arity, basis index)`.
    pub fn images(&self) -> &BTreeMap<(usize, usize), Vector<usize>> {
        &self.images
    }

    pub fn image(&self, n: usize, x: usize) -> Vector<usize> {
        self.images
            .get(&(n, x))
            .cloned()
            .unwrap_or_else(|| Vector::zero(self.field()))
    }

    pub fn image_vec(&self, n: usize, v: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::zero(self.field());
        for (&x, c) in v.iter() {
            if let Some(img) = self.images.get(&(n, x)) {
                out.add_scaled(img, c);
            }
        }
        out
    }

    pub fn describe(&self, n: usize, v: &Vector<usize>) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(&y, c)| format!("{c}*{}", self.target.label(n, y)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Arities in which `α` is nonzero.
    fn support_arities(&self) -> BTreeSet<usize> {
        self.images.keys().map(|&(n, _)| n).collect()
    }

    fn check_equivariance(&self) -> Result<()> {
        const FULL_CHECK_DIM: usize = 5040;
        let support = self.support_arities();
        for n in 2..=self.source.max_arity() {
            let dim = self.source.dim(n)?;
            let xs: Vec<usize> = if dim <= FULL_CHECK_DIM {
                (0..dim).collect()
            } else if support.contains(&n) {
                self.images
                    .keys()
                    .filter(|k| k.0 == n)
                    .map(|k| k.1)
                    .collect()
            } else {
                continue;
            };
            for x in xs {
                for j in 0..n - 1 {
                    let lhs = self.image_vec(n, &self.source.act(n, j, x)?);
                    let img = self.image(n, x);
                    let rhs = if img.is_zero() {
                        img
                    } else {
                        self.target.act_vec(n, j, &img)?
                    };
                    if lhs != rhs {
                        return Err(Error::Equivariance(format!(
                            "α({}·τ{}) = {} but α({})·τ{} = {}",
                            self.source.label(n, x),
                            j + 1,
                            self.describe(n, &lhs),
                            self.source.label(n, x),
                            j + 1,
                            self.describe(n, &rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Nonzero values of `α⋆α` on basis elements of arity at most the
    /// source's `max_arity`. The (co)operads carry no internal differential,
    /// so `∂α = 0`.
    ///
    /// The infinitesimal decomposition runs over two-vertex trees: the inner
    /// vertex takes the inputs `S`, and the outer vertex's inputs are ordered
    /// by least leaf, so the inner block sits at position `i`, the number of
    /// outer leaves below `min S`.
    pub fn mc_residual(&self) -> Result<Vec<((usize, usize), Vector<usize>)>> {
        let field = self.field();
        let m = self.source.max_arity();
        let pred = self.source.predual();
        let mut residual: BTreeMap<(usize, usize), Vector<usize>> = BTreeMap::new();
        for (&(a, x), ax) in &self.images {
            for (&(b, y), ay) in &self.images {
                let n = a + b - 1;
                if n > m {
                    continue;
                }
                let sign = field.one().signed(odd(self.source.degree(a, x)));
                for s in subsets(n, b) {
                    let first = s[0];
                    let outer: Vec<usize> = (0..n).filter(|t| !s.contains(t)).collect();
                    let i = outer.iter().filter(|&&t| t < first).count();
                    let mut rho: Vec<usize> = outer[..i].to_vec();
                    rho.extend_from_slice(&s);
                    rho.extend_from_slice(&outer[i..]);
                    let dual = pred.act_perm(n, &rho, &pred.compose(a, i, x, b, y)?)?;
                    if dual.is_zero() {
                        continue;
                    }
                    let value = self.target.act_perm(
                        n,
                        &rho,
                        &self.target.compose_vec(a, i, ax, b, ay)?,
                    )?;
                    if value.is_zero() {
                        continue;
                    }
                    for (&z, c) in dual.iter() {
                        residual
                            .entry((n, z))
                            .or_insert_with(|| Vector::zero(field))
                            .add_scaled(&value, &(c * &sign));
                    }
                }
            }
        }
        Ok(residual.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    /// `f ∘ α` for an operad map `f` out of the target.
    pub fn compose_with_operad_map(&self, f: &OperadMap) -> Result<Self> {
        if f.source() != &self.target {
            return Err(Error::Mismatch(format!(
                "the map starts at {}, not at {}",
                f.source().name(),
                self.target.name()
            )));
        }
        let mut images = Vec::new();
        for (&(n, x), v) in &self.images {
            images.push(((n, x), f.apply_vec(n, v)?));
        }
        Self::new(
            &format!("{}∘{}", f.target().name(), self.name),
            self.source.clone(),
            f.target().clone(),
            images,
            false,
        )
    }

    /// `α ∘ f` for a cooperad map `f` into the source.
    pub fn precompose_with_cooperad_map(f: &CooperadMap, alpha: &TwistingMorphism) -> Result<Self> {
        if f.target() != &alpha.source {
            return Err(Error::Mismatch(format!(
                "the map ends at {}, not at {}",
                f.target().name(),
                alpha.source.name()
            )));
        }
        let src = f.source();
        let mut images = Vec::new();
        for n in alpha.support_arities() {
            if n > src.max_arity() {
                continue;
            }
            for z in 0..src.dim(n)? {
                let v = alpha.image_vec(n, &f.apply(n, z)?);
                if !v.is_zero() {
                    images.push(((n, z), v));
                }
            }
        }
        Self::new(
            &format!("{}∘{}", alpha.name, src.name()),
            src.clone(),
            alpha.target.clone(),
            images,
            false,
        )
    }

    /// Same ends and the same image on every basis element.
    pub fn same_images(&self, other: &TwistingMorphism) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}

/// Sorted `b`-element subsets of `0..n`.
fn subsets(n: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == b {
            out.push(cur.clone());
            return;
        }
        for t in start..n {
            if n - t < b - cur.len() {
                break;
            }
            cur.push(t);
            rec(t + 1, n, b, cur, out);
            cur.pop();
        }
    }
    rec(0, n, b, &mut cur, &mut out);
    out
}

pub const PRESET_TWISTINGS: [&str; 7] = [
    "kappa_ass",
    "beta",
    "epsilon",
    "kappa_lie",
    "kappa_cochain",
    "alpha_cochain",
    "epsilon_cochain",
];

/// Binary images determined by one generator and equivariance.
fn binary_orbit(
    source: &Cooperad,
    target: &Operad,
    x: usize,
    img: Vector<usize>,
) -> Result<Vec<((usize, usize), Vector<usize>)>> {
    let mut out = vec![((2, x), img.clone())];
    let swapped = source.act(2, 0, x)?;
    if let Some((&y, c)) = swapped.first() {
        if y != x {
            let inv = c.inverse().expect("action coefficients are units");
            out.push(((2, y), target.act_vec(2, 0, &img)?.scaled(&inv)));
        }
    }
    Ok(out)
}

/// The named preset. Operadic presets are truncated at `max_arity`; the
/// polynomial targets of the cochains at total degree `truncation`.
pub fn preset_twisting(
    name: &str,
    max_arity: usize,
    field: Field,
    truncation: usize,
) -> Result<TwistingMorphism> {
    let max_arity = max_arity.max(2);
    match name {
        "kappa_ass" | "beta" | "epsilon" => {
            let c = Cooperad::preset("Ass^c", max_arity, field)?;
            let (target, koszul) = match name {
                "kappa_ass" => (Operad::preset("Ass", max_arity, field)?.desuspend(), true),
                "beta" => (Operad::preset("Com", max_arity, field)?.desuspend(), false),
                _ => return epsilon(&c),
            };
            let images = binary_orbit(&c, &target, 0, Vector::basis(field, 0))?;
            TwistingMorphism::new(name, c, target, images, koszul)
        }
        "kappa_lie" => {
            let m = max_arity.min(LIE_ARITY_CAP);
            let c = Cooperad::preset("Lie^c", m, field)?;
            let target = Operad::preset("Com", m, field)?.desuspend();
            let images = vec![((2, 0), Vector::basis(field, 0))];
            TwistingMorphism::new(name, c, target, images, true)
        }
        "kappa_cochain" | "alpha_cochain" | "epsilon_cochain" => {
            let c = exterior_coalgebra(field)?;
            let (mu, nu) = (c.index_of(1, "μ")?, c.index_of(1, "ν")?);
            match name {
                "kappa_cochain" => {
                    let p = polynomial_algebra(field, "k[x,y]", &["x", "y"], truncation)?;
                    let (x, y) = (p.index_of(1, "x")?, p.index_of(1, "y")?);
                    let images = vec![
                        ((1, mu), Vector::basis(field, x)),
                        ((1, nu), Vector::basis(field, y)),
                    ];
                    TwistingMorphism::new(name, c, p, images, true)
                }
                "alpha_cochain" => {
                    let p = polynomial_algebra(field, "k[x]", &["x"], truncation)?;
                    let x = p.index_of(1, "x")?;
                    TwistingMorphism::new(
                        name,
                        c,
                        p,
                        vec![((1, mu), Vector::basis(field, x))],
                        false,
                    )
                }
                _ => {
                    let p = polynomial_algebra(field, "k", &[], 0)?;
                    TwistingMorphism::zero(name, &c, &p)
                }
            }
        }
        other => Err(Error::UnknownName(format!(
            "twisting morphism preset {other}"
        ))),
    }
}

/// The zero twisting morphism into the unit operad.
pub fn epsilon(source: &Cooperad) -> Result<TwistingMorphism> {
    let unit = Operad::preset("Unit", source.max_arity(), source.field())?;
    TwistingMorphism::zero("epsilon", source, &unit)
}

pub fn make_twisting(
    name: &str,
    source: &Cooperad,
    target: &Operad,
    images: Vec<((usize, usize), Vector<usize>)>,
    koszul: bool,
) -> Result<TwistingMorphism> {
    TwistingMorphism::new(name, source.clone(), target.clone(), images, koszul)
}
