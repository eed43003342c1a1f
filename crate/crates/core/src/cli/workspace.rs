//! The JSON workspace: named operads, cooperads, coalgebras, twisting
//! morphisms, modules and morphisms, each checked as it is loaded.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::coalg::{
    cocommutator, cofree_conilpotent, sub_coalgebra, CoalgebraMorphism, CoalgebraPresentation,
};
use crate::cobar::{
    bar_comodule, bar_map, free_power_module, invertible_module, power_module, trivial_module,
    AlgebraModule, ModuleMap,
};
use crate::error::{Error, Result};
use crate::gradedlin::{BasisElement, Field, GradedBasis, LinearMap, Scalar, Vector};
use crate::sigmaop::{
    check_cooperad, check_operad, exterior_coalgebra, polynomial_algebra, Cooperad, CooperadArity,
    Mono, Operad, Tables,
};
use crate::twisting::{preset_twisting, TwistingMorphism};

pub const SCHEMA_VERSION: u32 = 1;

/// Basis label ↦ scalar, scalars written `"a/b"` or `"r mod p"`.
pub type Combination = BTreeMap<String, String>;

fn default_field() -> String {
    "Q".into()
}

fn default_arity() -> usize {
    4
}

fn default_truncation() -> usize {
    8
}

fn one() -> u32 {
    1
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceFile {
    pub schema_version: u32,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default = "default_arity")]
    pub max_arity: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operads: Vec<Named<OperadSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cooperads: Vec<Named<CooperadSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twistings: Vec<Named<TwistingSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<Named<ModuleSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coalgebras: Vec<Named<CoalgebraSpec>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<Named<MorphismSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Named<T> {
    pub name: String,
    #[serde(flatten)]
    pub spec: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
    #[serde(default = "one")]
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub element: String,
    /// Zero-based `j`: the transposition of inputs `j` and `j + 1`.
    pub transposition: usize,
    pub image: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionEntry {
    pub outer: String,
    /// Zero-based input of `outer` receiving `inner`.
    pub slot: usize,
    pub inner: String,
    pub result: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    pub element: String,
    pub outer: String,
    pub slot: usize,
    pub inner: String,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperadSpec {
    /// `Com`, `Ass`, `Lie` or `Unit`, optionally desuspended.
    Preset {
        preset: String,
        #[serde(default, skip_serializing_if = "is_false")]
        desuspend: bool,
    },
    /// A polynomial algebra, as an operad concentrated in arity 1.
    Polynomial {
        variables: Vec<String>,
        truncation: usize,
    },
    /// Bases per arity (index 0 is arity 1); actions default to trivial.
    Explicit {
        unit: String,
        arities: Vec<Vec<Generator>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        actions: Vec<ActionEntry>,
        compositions: Vec<CompositionEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CooperadSpec {
    /// `Com^c`, `Ass^c`, `Lie^c`, `Unit^c`, or `exterior` for the
    /// coalgebra on `1, μ, ν, η`.
    Preset { preset: String },
    Explicit {
        counit: String,
        arities: Vec<Vec<Generator>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        actions: Vec<ActionEntry>,
        decompositions: Vec<DecompositionEntry>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageEntry {
    pub op: String,
    pub image: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TwistingSpec {
    Preset {
        preset: String,
        #[serde(default = "default_truncation")]
        truncation: usize,
    },
    /// `source` names a cooperad and `target` an operad; unlisted
    /// co-operations go to zero.
    Explicit {
        source: String,
        target: String,
        images: Vec<ImageEntry>,
        #[serde(default, skip_serializing_if = "is_false")]
        koszul: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    /// `v·k[v]/(v^{n+1})`; other variables act as zero. `algebra` names an
    /// operad or a twisting morphism, whose target is then used.
    Power {
        algebra: String,
        variable: String,
        n: usize,
    },
    /// The free module `v·k[v]` seen through weight `level`.
    FreePower {
        algebra: String,
        variable: String,
        level: u32,
    },
    /// `k` with `variable` acting as 1 and the others as zero.
    Invertible {
        algebra: String,
        variable: String,
    },
    Trivial {
        algebra: String,
    },
    /// Generator label ↦ basis label ↦ image.
    Explicit {
        algebra: String,
        basis: Vec<Generator>,
        actions: BTreeMap<String, BTreeMap<String, Combination>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanEntry {
    pub label: String,
    pub vector: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub coef: String,
    pub op: String,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoalgebraSpec {
    /// `cooperad` names a cooperad or a twisting morphism, whose source is
    /// then used.
    Cofree {
        cooperad: String,
        generators: Vec<Generator>,
        max_weight: usize,
    },
    /// Spanned by vectors of an earlier coalgebra; `differential` overrides
    /// the induced one, in the new labels.
    Sub {
        ambient: String,
        span: Vec<SpanEntry>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        differential: BTreeMap<String, Combination>,
    },
    Explicit {
        cooperad: String,
        generators: Vec<Generator>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        differential: BTreeMap<String, Combination>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        decomposition: BTreeMap<String, Vec<DecompositionTerm>>,
    },
    Cocommutator {
        of: String,
    },
    /// The comodule `B_τ M`.
    Bar {
        twisting: String,
        module: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismSpec {
    /// Unlisted generators go to zero.
    Linear {
        source: String,
        target: String,
        map: BTreeMap<String, Combination>,
    },
    Identity {
        of: String,
    },
    ToZero {
        of: String,
    },
    FromZero {
        of: String,
    },
    /// `B_τ f` for a module map; without `map`, the projection keeping
    /// shared labels.
    Bar {
        twisting: String,
        source_module: String,
        target_module: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        map: Option<BTreeMap<String, Combination>>,
    },
}

/// One object that failed to load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub section: &'static str,
    pub name: String,
    pub message: String,
    #[serde(skip)]
    pub error: Error,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub file: WorkspaceFile,
    pub field: Field,
    pub operads: BTreeMap<String, Operad>,
    pub cooperads: BTreeMap<String, Cooperad>,
    pub twistings: BTreeMap<String, TwistingMorphism>,
    pub modules: BTreeMap<String, AlgebraModule>,
    pub coalgebras: BTreeMap<String, CoalgebraPresentation>,
    pub morphisms: BTreeMap<String, CoalgebraMorphism>,
}

pub fn parse_workspace(text: &str) -> Result<WorkspaceFile> {
    let file: WorkspaceFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    Ok(file)
}

impl WorkspaceFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("workspace serializes")
    }
}

impl Workspace {
    /// Loads every object, failing on the first one that does not check.
    pub fn load(file: WorkspaceFile) -> Result<Workspace> {
        let (ws, issues) = Self::load_collecting(file)?;
        match issues.into_iter().next() {
            None => Ok(ws),
            Some(i) => Err(i
                .error
                .map_message(|m| format!("{} {}: {m}", i.section, i.name))),
        }
    }

    pub fn from_json(text: &str) -> Result<Workspace> {
        Self::load(parse_workspace(text)?)
    }

    /// Loads what it can; objects that fail are reported and left out.
    pub fn load_collecting(file: WorkspaceFile) -> Result<(Workspace, Vec<Issue>)> {
        let field: Field = file.field.parse()?;
        let mut ws = Workspace {
            file: file.clone(),
            field,
            operads: BTreeMap::new(),
            cooperads: BTreeMap::new(),
            twistings: BTreeMap::new(),
            modules: BTreeMap::new(),
            coalgebras: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        };
        let mut issues = Vec::new();
        let mut note = |section: &'static str, name: &str, e: Error| {
            issues.push(Issue {
                section,
                name: name.to_string(),
                message: e.to_string(),
                error: e,
            })
        };
        for e in &file.operads {
            match ws.build_operad(&e.name, &e.spec) {
                Ok(o) => insert(&mut ws.operads, &e.name, o)
                    .unwrap_or_else(|err| note("operad", &e.name, err)),
                Err(err) => note("operad", &e.name, err),
            }
        }
        for e in &file.cooperads {
            match ws.build_cooperad(&e.name, &e.spec) {
                Ok(o) => insert(&mut ws.cooperads, &e.name, o)
                    .unwrap_or_else(|err| note("cooperad", &e.name, err)),
                Err(err) => note("cooperad", &e.name, err),
            }
        }
        for e in &file.twistings {
            match ws.build_twisting(&e.name, &e.spec) {
                Ok(o) => insert(&mut ws.twistings, &e.name, o)
                    .unwrap_or_else(|err| note("twisting", &e.name, err)),
                Err(err) => note("twisting", &e.name, err),
            }
        }
        for e in &file.modules {
            match ws.build_module(&e.name, &e.spec) {
                Ok(o) => insert(&mut ws.modules, &e.name, o)
                    .unwrap_or_else(|err| note("module", &e.name, err)),
                Err(err) => note("module", &e.name, err),
            }
        }
        for e in &file.coalgebras {
            match ws.build_coalgebra(&e.name, &e.spec) {
                Ok(o) => insert(&mut ws.coalgebras, &e.name, o)
                    .unwrap_or_else(|err| note("coalgebra", &e.name, err)),
                Err(err) => note("coalgebra", &e.name, err),
            }
        }
        for e in &file.morphisms {
            match ws.build_morphism(&e.spec) {
                Ok(o) => insert(&mut ws.morphisms, &e.name, o)
                    .unwrap_or_else(|err| note("morphism", &e.name, err)),
                Err(err) => note("morphism", &e.name, err),
            }
        }
        Ok((ws, issues))
    }

    fn scalar(&self, s: &str) -> Result<Scalar> {
        self.field.parse_scalar(s)
    }

    fn combination(
        &self,
        c: &Combination,
        index: impl Fn(&str) -> Result<usize>,
    ) -> Result<Vector<usize>> {
        let mut v = Vector::zero(self.field);
        for (label, s) in c {
            v.add_term(index(label)?, self.scalar(s)?);
        }
        Ok(v)
    }

    pub fn operad(&self, name: &str) -> Result<&Operad> {
        self.operads
            .get(name)
            .or_else(|| self.twistings.get(name).map(|t| t.target()))
            .ok_or_else(|| Error::UnknownName(format!("operad {name}")))
    }

    pub fn cooperad(&self, name: &str) -> Result<&Cooperad> {
        self.cooperads
            .get(name)
            .or_else(|| self.twistings.get(name).map(|t| t.source()))
            .ok_or_else(|| Error::UnknownName(format!("cooperad {name}")))
    }

    pub fn twisting(&self, name: &str) -> Result<&TwistingMorphism> {
        self.twistings
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("twisting morphism {name}")))
    }

    pub fn module(&self, name: &str) -> Result<&AlgebraModule> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("module {name}")))
    }

    pub fn coalgebra(&self, name: &str) -> Result<&CoalgebraPresentation> {
        self.coalgebras
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("coalgebra {name}")))
    }

    pub fn morphism(&self, name: &str) -> Result<&CoalgebraMorphism> {
        self.morphisms
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("morphism {name}")))
    }

    fn build_operad(&self, name: &str, spec: &OperadSpec) -> Result<Operad> {
        let op = match spec {
            OperadSpec::Preset { preset, desuspend } => {
                let o = Operad::preset(preset, self.file.max_arity, self.field)?;
                if *desuspend {
                    o.desuspend()
                } else {
                    o
                }
            }
            OperadSpec::Polynomial {
                variables,
                truncation,
            } => {
                let vars: Vec<&str> = variables.iter().map(String::as_str).collect();
                polynomial_algebra(self.field, name, &vars, *truncation)?
            }
            OperadSpec::Explicit {
                unit,
                arities,
                actions,
                compositions,
            } => {
                let (bases, lookup) = tabulate(arities)?;
                let max_arity = arities.len();
                let acts = self.actions(&bases, &lookup, actions)?;
                let (un, u) = locate(&lookup, unit)?;
                if un != 1 {
                    return Err(Error::Arity(format!("the unit {unit} must have arity 1")));
                }
                let mut table = HashMap::new();
                for c in compositions {
                    let (a, x) = locate(&lookup, &c.outer)?;
                    let (b, y) = locate(&lookup, &c.inner)?;
                    if c.slot >= a {
                        return Err(Error::Arity(format!("{} has no input {}", c.outer, c.slot)));
                    }
                    let n = a + b - 1;
                    let result = self.combination(&c.result, |l| in_arity(&lookup, l, n))?;
                    table.insert((a, c.slot, x, b, y), result);
                }
                for n in 1..=max_arity {
                    for x in 0..bases[n].len() {
                        table
                            .entry((1, 0, u, n, x))
                            .or_insert_with(|| Vector::basis(self.field, x));
                        for i in 0..n {
                            table
                                .entry((n, i, x, 1, u))
                                .or_insert_with(|| Vector::basis(self.field, x));
                        }
                    }
                }
                let tables = Tables {
                    field: self.field,
                    max_arity,
                    bases: bases
                        .iter()
                        .map(|b| {
                            b.iter()
                                .map(|e| (e.label.clone(), e.degree, e.weight))
                                .collect()
                        })
                        .collect(),
                    actions: acts,
                    compositions: table,
                    unit: u,
                };
                let o = Operad::explicit(name, tables)?;
                let report = check_operad(&o)?;
                if !report.is_ok() {
                    return Err(Error::Validation(report.failures.join("; ")));
                }
                o
            }
        };
        Ok(op)
    }

    fn build_cooperad(&self, name: &str, spec: &CooperadSpec) -> Result<Cooperad> {
        match spec {
            CooperadSpec::Preset { preset } if preset == "exterior" => {
                exterior_coalgebra(self.field)
            }
            CooperadSpec::Preset { preset } => {
                Cooperad::preset(preset, self.file.max_arity, self.field)
            }
            CooperadSpec::Explicit {
                counit,
                arities,
                actions,
                decompositions,
            } => {
                let (bases, lookup) = tabulate(arities)?;
                let acts = self.actions(&bases, &lookup, actions)?;
                let per_arity = bases
                    .iter()
                    .zip(acts)
                    .skip(1)
                    .map(|(b, a)| CooperadArity {
                        basis: b.clone(),
                        actions: a,
                    })
                    .collect();
                let (cn, cu) = locate(&lookup, counit)?;
                if cn != 1 {
                    return Err(Error::Arity(format!(
                        "the counit {counit} must have arity 1"
                    )));
                }
                let mut entries = Vec::new();
                for d in decompositions {
                    let (n, z) = locate(&lookup, &d.element)?;
                    let (a, x) = locate(&lookup, &d.outer)?;
                    let (b, y) = locate(&lookup, &d.inner)?;
                    if d.slot >= a {
                        return Err(Error::Arity(format!("{} has no input {}", d.outer, d.slot)));
                    }
                    entries.push(((n, z), (a, d.slot, x, b, y), self.scalar(&d.coef)?));
                }
                let c = Cooperad::explicit(name, self.field, per_arity, cu, entries)?;
                let report = check_cooperad(&c)?;
                if !report.is_ok() {
                    return Err(Error::Validation(report.failures.join("; ")));
                }
                Ok(c)
            }
        }
    }

    /// `actions[n][j][x]`, trivial unless given.
    fn actions(
        &self,
        bases: &[Vec<BasisElement>],
        lookup: &HashMap<String, (usize, usize)>,
        entries: &[ActionEntry],
    ) -> Result<Vec<Vec<Vec<Vector<usize>>>>> {
        let mut acts: Vec<Vec<Vec<Vector<usize>>>> = bases
            .iter()
            .enumerate()
            .map(|(n, b)| {
                (0..n.saturating_sub(1))
                    .map(|_| (0..b.len()).map(|x| Vector::basis(self.field, x)).collect())
                    .collect()
            })
            .collect();
        for e in entries {
            let (n, x) = locate(lookup, &e.element)?;
            if e.transposition + 1 >= n {
                return Err(Error::Arity(format!(
                    "{} has arity {n}, so there is no transposition {}",
                    e.element, e.transposition
                )));
            }
            acts[n][e.transposition][x] = self.combination(&e.image, |l| in_arity(lookup, l, n))?;
        }
        Ok(acts)
    }

    fn build_twisting(&self, name: &str, spec: &TwistingSpec) -> Result<TwistingMorphism> {
        match spec {
            TwistingSpec::Preset { preset, truncation } => {
                Ok(
                    preset_twisting(preset, self.file.max_arity, self.field, *truncation)?
                        .renamed(name),
                )
            }
            TwistingSpec::Explicit {
                source,
                target,
                images,
                koszul,
            } => {
                let c = self.cooperad(source)?;
                let p = self.operad(target)?;
                let mut out = Vec::new();
                for e in images {
                    let (n, x) = find_op(c.max_arity(), |n| c.dim(n), |n, i| c.label(n, i), &e.op)?;
                    let v = self.combination(&e.image, |l| p.index_of(n, l))?;
                    out.push(((n, x), v));
                }
                TwistingMorphism::new(name, c.clone(), p.clone(), out, *koszul)
            }
        }
    }

    fn build_module(&self, name: &str, spec: &ModuleSpec) -> Result<AlgebraModule> {
        let mut m = match spec {
            ModuleSpec::Power {
                algebra,
                variable,
                n,
            } => power_module(self.operad(algebra)?, variable, *n)?,
            ModuleSpec::FreePower {
                algebra,
                variable,
                level,
            } => free_power_module(self.operad(algebra)?, variable, *level)?,
            ModuleSpec::Invertible { algebra, variable } => {
                invertible_module(self.operad(algebra)?, variable)?
            }
            ModuleSpec::Trivial { algebra } => trivial_module(self.operad(algebra)?)?,
            ModuleSpec::Explicit {
                algebra,
                basis,
                actions,
            } => {
                let p = self.operad(algebra)?;
                let b = GradedBasis::new(
                    basis
                        .iter()
                        .map(|g| BasisElement::new(g.label.clone(), g.degree, g.weight))
                        .collect(),
                )?;
                let index = |l: &str| {
                    b.index_of(l).ok_or_else(|| {
                        Error::UnknownName(format!("{l} is not in the basis of {name}"))
                    })
                };
                let mut gens = Vec::new();
                for (g, images) in actions {
                    let gi = p.index_of(1, g)?;
                    let mut cols = vec![Vector::zero(self.field); b.len()];
                    for (src, img) in images {
                        cols[index(src)?] = self.combination(img, index)?;
                    }
                    gens.push((
                        g.clone(),
                        LinearMap::new(self.field, b.clone(), b.clone(), p.degree(1, gi), cols)?,
                    ));
                }
                AlgebraModule::new(name, p, b, gens)?
            }
        };
        m.rename(name);
        Ok(m)
    }

    fn build_coalgebra(&self, name: &str, spec: &CoalgebraSpec) -> Result<CoalgebraPresentation> {
        let c = match spec {
            CoalgebraSpec::Cofree {
                cooperad,
                generators,
                max_weight,
            } => cofree_conilpotent(
                self.cooperad(cooperad)?,
                &basis_of(generators)?,
                *max_weight,
            )?,
            CoalgebraSpec::Sub {
                ambient,
                span,
                differential,
            } => {
                let amb = self.coalgebra(ambient)?;
                let index = |l: &str| {
                    amb.generators().index_of(l).ok_or_else(|| {
                        Error::UnknownName(format!("{l} is not a generator of {ambient}"))
                    })
                };
                let mut spanning = Vec::new();
                for s in span {
                    spanning.push((s.label.clone(), self.combination(&s.vector, index)?));
                }
                let local = |l: &str| {
                    span.iter().position(|s| s.label == l).ok_or_else(|| {
                        Error::UnknownName(format!("{l} is not in the span of {name}"))
                    })
                };
                let mut overrides = Vec::new();
                for (g, d) in differential {
                    overrides.push((local(g)?, self.combination(d, local)?));
                }
                sub_coalgebra(amb, name, &spanning, &overrides)?
            }
            CoalgebraSpec::Explicit {
                cooperad,
                generators,
                differential,
                decomposition,
            } => {
                let coop = self.cooperad(cooperad)?;
                let basis = basis_of(generators)?;
                let index = |l: &str| {
                    basis.index_of(l).ok_or_else(|| {
                        Error::UnknownName(format!("{l} is not a generator of {name}"))
                    })
                };
                let mut cols = vec![Vector::zero(self.field); basis.len()];
                for (g, d) in differential {
                    cols[index(g)?] = self.combination(d, index)?;
                }
                let d = LinearMap::new(self.field, basis.clone(), basis.clone(), -1, cols)?;
                let mut deltas = vec![Vector::zero(self.field); basis.len()];
                for (g, terms) in decomposition {
                    let gi = index(g)?;
                    for t in terms {
                        let n = t.word.len();
                        let op = coop.index_of(n, &t.op)?;
                        let word = t
                            .word
                            .iter()
                            .map(|l| index(l))
                            .collect::<Result<Vec<_>>>()?;
                        deltas[gi].add_term(Mono { op, word }, self.scalar(&t.coef)?);
                    }
                }
                CoalgebraPresentation::new(name, coop.clone(), basis, d, deltas)?.validated()?
            }
            CoalgebraSpec::Cocommutator { of } => cocommutator(self.coalgebra(of)?)?,
            CoalgebraSpec::Bar { twisting, module } => {
                bar_comodule(self.twisting(twisting)?, self.module(module)?)?
            }
        };
        Ok(c.renamed(name))
    }

    fn build_morphism(&self, spec: &MorphismSpec) -> Result<CoalgebraMorphism> {
        match spec {
            MorphismSpec::Linear {
                source,
                target,
                map,
            } => {
                let s = self.coalgebra(source)?;
                let t = self.coalgebra(target)?;
                let si = |l: &str| {
                    s.generators().index_of(l).ok_or_else(|| {
                        Error::UnknownName(format!("{l} is not a generator of {source}"))
                    })
                };
                let ti = |l: &str| {
                    t.generators().index_of(l).ok_or_else(|| {
                        Error::UnknownName(format!("{l} is not a generator of {target}"))
                    })
                };
                let mut cols = vec![Vector::zero(self.field); s.generators().len()];
                for (g, img) in map {
                    cols[si(g)?] = self.combination(img, ti)?;
                }
                let f = LinearMap::new(
                    self.field,
                    s.generators().clone(),
                    t.generators().clone(),
                    0,
                    cols,
                )?;
                CoalgebraMorphism::new(s.clone(), t.clone(), f)
            }
            MorphismSpec::Identity { of } => Ok(CoalgebraMorphism::identity(self.coalgebra(of)?)),
            MorphismSpec::ToZero { of } => Ok(CoalgebraMorphism::to_zero(self.coalgebra(of)?)),
            MorphismSpec::FromZero { of } => Ok(CoalgebraMorphism::from_zero(self.coalgebra(of)?)),
            MorphismSpec::Bar {
                twisting,
                source_module,
                target_module,
                map,
            } => {
                let tau = self.twisting(twisting)?;
                let s = self.module(source_module)?;
                let t = self.module(target_module)?;
                let f = match map {
                    None => ModuleMap::projection(s, t)?,
                    Some(map) => {
                        let si = |l: &str| {
                            s.basis().index_of(l).ok_or_else(|| {
                                Error::UnknownName(format!("{l} is not in {source_module}"))
                            })
                        };
                        let ti = |l: &str| {
                            t.basis().index_of(l).ok_or_else(|| {
                                Error::UnknownName(format!("{l} is not in {target_module}"))
                            })
                        };
                        let mut cols = vec![Vector::zero(self.field); s.basis().len()];
                        for (g, img) in map {
                            cols[si(g)?] = self.combination(img, ti)?;
                        }
                        let lin = LinearMap::new(
                            self.field,
                            s.basis().clone(),
                            t.basis().clone(),
                            0,
                            cols,
                        )?;
                        ModuleMap::new(s, t, lin)?
                    }
                };
                bar_map(tau, &f)
            }
        }
    }
}

fn insert<T>(map: &mut BTreeMap<String, T>, name: &str, value: T) -> Result<()> {
    if map.contains_key(name) {
        return Err(Error::Validation(format!("{name} is defined twice")));
    }
    map.insert(name.to_string(), value);
    Ok(())
}

fn basis_of(generators: &[Generator]) -> Result<GradedBasis> {
    GradedBasis::new(
        generators
            .iter()
            .map(|g| BasisElement::new(g.label.clone(), g.degree, g.weight))
            .collect(),
    )
}

type Lookup = HashMap<String, (usize, usize)>;

/// Per-arity bases with an unused arity 0, and label ↦ (arity, index).
fn tabulate(arities: &[Vec<Generator>]) -> Result<(Vec<Vec<BasisElement>>, Lookup)> {
    if arities.is_empty() {
        return Err(Error::Arity("at least arity 1 is needed".into()));
    }
    let mut bases = vec![Vec::new()];
    let mut lookup = HashMap::new();
    for (k, gens) in arities.iter().enumerate() {
        let n = k + 1;
        let mut b = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if lookup.insert(g.label.clone(), (n, i)).is_some() {
                return Err(Error::Validation(format!(
                    "label {} is used twice",
                    g.label
                )));
            }
            b.push(BasisElement::new(g.label.clone(), g.degree, g.weight));
        }
        bases.push(b);
    }
    Ok((bases, lookup))
}

fn locate(lookup: &Lookup, label: &str) -> Result<(usize, usize)> {
    lookup
        .get(label)
        .copied()
        .ok_or_else(|| Error::UnknownName(format!("operation {label}")))
}

fn in_arity(lookup: &Lookup, label: &str, n: usize) -> Result<usize> {
    let (m, i) = locate(lookup, label)?;
    if m != n {
        return Err(Error::Arity(format!("{label} has arity {m}, expected {n}")));
    }
    Ok(i)
}

fn find_op(
    max_arity: usize,
    dim: impl Fn(usize) -> Result<usize>,
    label: impl Fn(usize, usize) -> String,
    wanted: &str,
) -> Result<(usize, usize)> {
    for n in 1..=max_arity {
        for i in 0..dim(n)? {
            if label(n, i) == wanted {
                return Ok((n, i));
            }
        }
    }
    Err(Error::UnknownName(format!("co-operation {wanted}")))
}
