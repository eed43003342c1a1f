use super::check::AxiomReport;
use super::cooperad::Cooperad;
use super::lie::lie_embedding;
use super::operad::Operad;
use super::shape::Kind;
use crate::error::{Error, Result};
use crate::gradedlin::Vector;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    Identity,
    AssToCom,
    Augmentation,
    LieToAss,
    /// `columns[n][x]` is the image of basis element `x` of arity `n`.
    Matrices(Vec<Vec<Vector<usize>>>),
}

/// A map of operads, given arity-wise on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadMap {
    source: Operad,
    target: Operad,
    rule: Rule,
}

fn same_suspension(a: &Operad, b: &Operad) -> Result<()> {
    if a.suspension() != b.suspension() {
        return Err(Error::Mismatch(format!(
            "{} and {} are suspended differently",
            a.name(),
            b.name()
        )));
    }
    Ok(())
}

impl OperadMap {
    pub fn identity(p: &Operad) -> Self {
        OperadMap {
            source: p.clone(),
            target: p.clone(),
            rule: Rule::Identity,
        }
    }

    /// `S^{-k}Ass → S^{-k}Com`, every `μ_σ ↦ μ`.
    pub fn ass_to_com(source: &Operad, target: &Operad) -> Result<Self> {
        if source.kind() != Kind::Ass || target.kind() != Kind::Com {
            return Err(Error::Mismatch("expected Ass → Com".into()));
        }
        same_suspension(source, target)?;
        Ok(OperadMap {
            source: source.clone(),
            target: target.clone(),
            rule: Rule::AssToCom,
        })
    }

    /// `P → Unit`, killing everything but the unit.
    pub fn augmentation(source: &Operad, unit: &Operad) -> Result<Self> {
        if unit.kind() != Kind::Unit {
            return Err(Error::Mismatch(
                "the augmentation targets the Unit operad".into(),
            ));
        }
        Ok(OperadMap {
            source: source.clone(),
            target: unit.clone(),
            rule: Rule::Augmentation,
        })
    }

    /// The inclusion of brackets into the associative operad.
    pub fn lie_to_ass(source: &Operad, target: &Operad) -> Result<Self> {
        if source.kind() != Kind::Lie || target.kind() != Kind::Ass {
            return Err(Error::Mismatch("expected Lie → Ass".into()));
        }
        same_suspension(source, target)?;
        Ok(OperadMap {
            source: source.clone(),
            target: target.clone(),
            rule: Rule::LieToAss,
        })
    }

    pub fn explicit(
        source: &Operad,
        target: &Operad,
        columns: Vec<Vec<Vector<usize>>>,
    ) -> Result<Self> {
        let m = source.max_arity().min(target.max_arity());
        if columns.len() != m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "map needs arities 1..={m}"
            )));
        }
        for n in 1..=m {
            if columns[n].len() != source.dim(n)? {
                return Err(Error::DimensionMismatch(format!("arity {n} column count")));
            }
        }
        Ok(OperadMap {
            source: source.clone(),
            target: target.clone(),
            rule: Rule::Matrices(columns),
        })
    }

    pub fn source(&self) -> &Operad {
        &self.source
    }

    pub fn target(&self) -> &Operad {
        &self.target
    }

    pub fn apply(&self, n: usize, x: usize) -> Result<Vector<usize>> {
        let field = self.source.field();
        Ok(match &self.rule {
            Rule::Identity => Vector::basis(field, x),
            Rule::AssToCom => Vector::basis(field, 0),
            Rule::Augmentation => {
                if n == 1 && x == self.source.unit() {
                    Vector::basis(field, self.target.unit())
                } else {
                    Vector::zero(field)
                }
            }
            Rule::LieToAss => lie_embedding(field, n)
                .into_iter()
                .nth(x)
                .map(|(_, v)| v)
                .ok_or_else(|| Error::Arity(format!("Lie({n}) has no element {x}")))?,
            Rule::Matrices(cols) => cols
                .get(n)
                .and_then(|c| c.get(x))
                .cloned()
                .ok_or_else(|| Error::Arity(format!("map data stops before arity {n}")))?,
        })
    }

    pub fn apply_vec(&self, n: usize, v: &Vector<usize>) -> Result<Vector<usize>> {
        let mut out = Vector::zero(self.target.field());
        for (&x, c) in v.iter() {
            out.add_scaled(&self.apply(n, x)?, c);
        }
        Ok(out)
    }

    fn check_arity(&self) -> usize {
        self.source.max_arity().min(self.target.max_arity())
    }

    /// Degree, unit, equivariance and composition compatibility below the common arity bound.
    pub fn validate(&self) -> Result<AxiomReport> {
        let (s, t) = (&self.source, &self.target);
        let m = self.check_arity();
        let mut fails = Vec::new();
        let f = s.field();
        if self.apply(1, s.unit())? != Vector::basis(f, t.unit()) {
            fails.push("the unit is not preserved".into());
        }
        for n in 1..=m {
            for x in 0..s.dim(n)? {
                let fx = self.apply(n, x)?;
                if fx.keys().any(|&y| t.degree(n, y) != s.degree(n, x)) {
                    fails.push(format!(
                        "{} is not sent to degree {}",
                        s.label(n, x),
                        s.degree(n, x)
                    ));
                }
                for j in 0..n - 1 {
                    let lhs = self.apply_vec(n, &s.act(n, j, x)?)?;
                    let rhs = t.act_vec(n, j, &fx)?;
                    if lhs != rhs {
                        fails.push(format!(
                            "equivariance fails on {}·τ{}",
                            s.label(n, x),
                            j + 1
                        ));
                    }
                }
            }
        }
        for a in 1..=m {
            for b in 1..=m + 1 - a {
                for i in 0..a {
                    for x in 0..s.dim(a)? {
                        for y in 0..s.dim(b)? {
                            let lhs = self.apply_vec(a + b - 1, &s.compose(a, i, x, b, y)?)?;
                            let rhs =
                                t.compose_vec(a, i, &self.apply(a, x)?, b, &self.apply(b, y)?)?;
                            if lhs != rhs {
                                fails.push(format!(
                                    "composition not preserved on {} ∘{} {}",
                                    s.label(a, x),
                                    i + 1,
                                    s.label(b, y)
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(AxiomReport {
            object: format!("{} → {}", s.name(), t.name()),
            checked_up_to_arity: m,
            failures: fails,
        })
    }

    /// `self ∘ other` (apply `other` first), tabulated below the common bound.
    pub fn after(&self, other: &OperadMap) -> Result<OperadMap> {
        if other.target != self.source {
            return Err(Error::Mismatch("operad maps are not composable".into()));
        }
        let m = other.source.max_arity().min(self.target.max_arity());
        let mut cols = vec![Vec::new()];
        for n in 1..=m {
            let mut c = Vec::new();
            for x in 0..other.source.dim(n)? {
                c.push(self.apply_vec(n, &other.apply(n, x)?)?);
            }
            cols.push(c);
        }
        OperadMap::explicit(&other.source, &self.target, cols)
    }
}

/// A map of cooperads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CooperadMap {
    source: Cooperad,
    target: Cooperad,
    rule: CoRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CoRule {
    Identity,
    /// Transpose of an operad map between the preduals (target → source).
    Dual(OperadMap),
    Matrices(Vec<Vec<Vector<usize>>>),
}

impl CooperadMap {
    pub fn identity(c: &Cooperad) -> Self {
        CooperadMap {
            source: c.clone(),
            target: c.clone(),
            rule: CoRule::Identity,
        }
    }

    /// The dual `Q^c → P^c` of an operad map `f: P → Q`.
    pub fn dual(f: &OperadMap, source: &Cooperad, target: &Cooperad) -> Result<Self> {
        if source.predual() != f.target() || target.predual() != f.source() {
            return Err(Error::Mismatch(
                "cooperads are not the duals of the map's ends".into(),
            ));
        }
        Ok(CooperadMap {
            source: source.clone(),
            target: target.clone(),
            rule: CoRule::Dual(f.clone()),
        })
    }

    /// `Ass^c → Lie^c`, dual to the inclusion of brackets.
    pub fn ass_to_lie(source: &Cooperad, target: &Cooperad) -> Result<Self> {
        let f = OperadMap::lie_to_ass(target.predual(), source.predual())?;
        Self::dual(&f, source, target)
    }

    pub fn explicit(
        source: &Cooperad,
        target: &Cooperad,
        columns: Vec<Vec<Vector<usize>>>,
    ) -> Result<Self> {
        let m = source.max_arity().min(target.max_arity());
        if columns.len() != m + 1 {
            return Err(Error::DimensionMismatch(format!(
                "map needs arities 1..={m}"
            )));
        }
        for n in 1..=m {
            if columns[n].len() != source.dim(n)? {
                return Err(Error::DimensionMismatch(format!("arity {n} column count")));
            }
        }
        Ok(CooperadMap {
            source: source.clone(),
            target: target.clone(),
            rule: CoRule::Matrices(columns),
        })
    }

    pub fn source(&self) -> &Cooperad {
        &self.source
    }

    pub fn target(&self) -> &Cooperad {
        &self.target
    }

    pub fn apply(&self, n: usize, z: usize) -> Result<Vector<usize>> {
        let field = self.source.field();
        Ok(match &self.rule {
            CoRule::Identity => Vector::basis(field, z),
            CoRule::Dual(f) => {
                let mut out = Vector::zero(field);
                for x in 0..self.target.dim(n)? {
                    let c = f.apply(n, x)?.coeff(&z);
                    out.add_term(x, c);
                }
                out
            }
            CoRule::Matrices(cols) => cols
                .get(n)
                .and_then(|c| c.get(z))
                .cloned()
                .ok_or_else(|| Error::Arity(format!("map data stops before arity {n}")))?,
        })
    }

    pub fn apply_vec(&self, n: usize, v: &Vector<usize>) -> Result<Vector<usize>> {
        let mut out = Vector::zero(self.target.field());
        for (&x, c) in v.iter() {
            out.add_scaled(&self.apply(n, x)?, c);
        }
        Ok(out)
    }

    /// Degree, counit, equivariance and decomposition compatibility.
    pub fn validate(&self) -> Result<AxiomReport> {
        let (s, t) = (&self.source, &self.target);
        let m = s.max_arity().min(t.max_arity());
        let field = s.field();
        let mut fails = Vec::new();
        if self.apply(1, s.counit())? != Vector::basis(field, t.counit()) {
            fails.push("the coaugmentation is not preserved".into());
        }
        for n in 1..=m {
            for z in 0..s.dim(n)? {
                let fz = self.apply(n, z)?;
                if fz.keys().any(|&y| t.degree(n, y) != s.degree(n, z)) {
                    fails.push(format!(
                        "{} is not sent to degree {}",
                        s.label(n, z),
                        s.degree(n, z)
                    ));
                }
                for j in 0..n - 1 {
                    let lhs = self.apply_vec(n, &s.act(n, j, z)?)?;
                    let rhs = t.act_vec(n, j, &fz)?;
                    if lhs != rhs {
                        fails.push(format!(
                            "equivariance fails on {}·τ{}",
                            s.label(n, z),
                            j + 1
                        ));
                    }
                }
                for a in 1..=n {
                    let b = n + 1 - a;
                    for i in 0..a {
                        let mut lhs: Vector<(usize, usize)> = Vector::zero(field);
                        for (x, y, c) in s.decompose(z, a, i, b)? {
                            let fx = self.apply(a, x)?;
                            let fy = self.apply(b, y)?;
                            for (&u, cu) in fx.iter() {
                                for (&w, cw) in fy.iter() {
                                    lhs.add_term((u, w), &(&c * cu) * cw);
                                }
                            }
                        }
                        let mut rhs: Vector<(usize, usize)> = Vector::zero(field);
                        for (&v, cv) in fz.iter() {
                            for (x, y, c) in t.decompose(v, a, i, b)? {
                                rhs.add_term((x, y), &c * cv);
                            }
                        }
                        if lhs != rhs {
                            fails.push(format!(
                                "decomposition ({a},{},{b}) not preserved on {}",
                                i + 1,
                                s.label(n, z)
                            ));
                        }
                    }
                }
            }
        }
        Ok(AxiomReport {
            object: format!("{} → {}", s.name(), t.name()),
            checked_up_to_arity: m,
            failures: fails,
        })
    }
}
