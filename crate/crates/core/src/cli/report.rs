//! The reproduction suite: the three-row comparison table and one row per
//! claim, each recomputed from the bundled workspaces.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bundled::bundled;
use super::commands::{default_window, stability_word};
use super::workspace::Workspace;
use crate::coalg::{cocommutator, pushforward, CoalgebraMorphism, CoalgebraPresentation};
use crate::cobar::{
    alpha_weq, class_survives, cobar_complex, counit_check, functoriality_check, CobarComplex,
    ModuleMap, Stability, DEFAULT_STABILITY,
};
use crate::error::{Error, Result};
use crate::gradedlin::{span_membership, Field, Scalar, Vector, Verdict};
use crate::sigmaop::{check_cooperad, check_operad, Cooperad, CooperadMap, Operad, OperadMap};
use crate::twisting::{preset_twisting, TwistingMorphism, PRESET_TWISTINGS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Skipped,
    Pass,
    Unstable,
    Fail,
}

impl RowStatus {
    pub fn word(self) -> &'static str {
        match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Unstable => "UNSTABLE",
            RowStatus::Skipped => "SKIPPED",
        }
    }
}

/// One sub-check of a row.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub status: RowStatus,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub id: String,
    pub title: String,
    pub status: RowStatus,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub morphism: String,
    pub expected: Stability,
    /// `None` when the row is skipped.
    pub observed: Option<Stability>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub twisting: String,
    pub cells: Vec<TableCell>,
    pub status: RowStatus,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub field: Field,
    /// Replaces every built-in schedule when set.
    pub schedule: Option<Vec<u32>>,
    pub stability: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            field: Field::Rational,
            schedule: None,
            stability: DEFAULT_STABILITY,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PaperReport {
    pub field: String,
    pub stability: usize,
    pub table: Vec<TableRow>,
    pub rows: Vec<ReportRow>,
}

impl PaperReport {
    pub fn worst(&self) -> RowStatus {
        self.table
            .iter()
            .map(|r| r.status)
            .chain(self.rows.iter().map(|r| r.status))
            .max()
            .unwrap_or(RowStatus::Pass)
    }

    /// 0 when nothing failed or wavered, 2 when the worst row is unstable, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self.worst() {
            RowStatus::Pass | RowStatus::Skipped => 0,
            RowStatus::Unstable => 2,
            RowStatus::Fail => 1,
        }
    }

    pub fn row(&self, id: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "field {}, stability over {} levels",
            self.field, self.stability
        );
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<12} {:<22} {:<22} status",
            "twisting", "X → 0", "C1 → C2"
        );
        for r in &self.table {
            let cell = |c: &TableCell| match c.observed {
                Some(o) => format!("{} (want {})", stability_word(o), yes_no(c.expected)),
                None => "skipped".to_string(),
            };
            let _ = writeln!(
                s,
                "{:<12} {:<22} {:<22} {}",
                r.twisting,
                cell(&r.cells[0]),
                cell(&r.cells[1]),
                r.status.word()
            );
        }
        let _ = writeln!(s);
        for r in &self.rows {
            let _ = writeln!(s, "[{}] {:<3} {}", r.status.word(), r.id, r.title);
            for c in &r.checks {
                let mark = match c.status {
                    RowStatus::Pass => "ok",
                    RowStatus::Fail => "FAIL",
                    RowStatus::Unstable => "unstable",
                    RowStatus::Skipped => "skipped",
                };
                let _ = writeln!(s, "      {mark:<8} {}", c.text);
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "overall: {}", self.worst().word());
        s
    }
}

fn yes_no(s: Stability) -> &'static str {
    match s {
        Stability::StableYes => "yes",
        Stability::StableNo => "no",
        Stability::Unstable => "unstable",
    }
}

/// Accumulates the sub-checks of one row.
struct Row {
    checks: Vec<Check>,
}

impl Row {
    fn new() -> Self {
        Row { checks: Vec::new() }
    }

    fn push(&mut self, status: RowStatus, text: impl Into<String>) {
        self.checks.push(Check {
            status,
            text: text.into(),
        });
    }

    fn check(&mut self, ok: bool, text: impl Into<String>) {
        self.push(if ok { RowStatus::Pass } else { RowStatus::Fail }, text);
    }

    fn skip(&mut self, text: impl Into<String>) {
        self.push(RowStatus::Skipped, format!("{}: not Σ-split", text.into()));
    }

    /// Compares a stability summary with the expected stable verdict.
    fn stability(&mut self, observed: Stability, expected: Stability, text: impl Into<String>) {
        let status = if observed == expected {
            RowStatus::Pass
        } else if observed == Stability::Unstable {
            RowStatus::Unstable
        } else {
            RowStatus::Fail
        };
        self.push(
            status,
            format!("{}: {}", text.into(), stability_word(observed)),
        );
    }

    /// Runs `f`, turning an error into a failed check.
    fn run(&mut self, text: &str, f: impl FnOnce(&mut Row) -> Result<()>) {
        if let Err(e) = f(self) {
            self.push(RowStatus::Fail, format!("{text}: {e}"));
        }
    }

    fn finish(self, id: &str, title: &str) -> ReportRow {
        let status = if self.checks.iter().all(|c| c.status == RowStatus::Skipped) {
            RowStatus::Skipped
        } else {
            self.checks
                .iter()
                .map(|c| c.status)
                .filter(|&s| s != RowStatus::Skipped)
                .max()
                .unwrap_or(RowStatus::Pass)
        };
        ReportRow {
            id: id.to_string(),
            title: title.to_string(),
            status,
            checks: self.checks,
        }
    }
}

struct Suite {
    field: Field,
    stability: usize,
    custom: Option<Vec<u32>>,
    example1: Workspace,
    example2: Workspace,
    comodules: Workspace,
}

fn load(name: &str, field: Field) -> Result<Workspace> {
    let mut file = bundled(name)?;
    file.field = field.to_string();
    Workspace::load(file)
}

/// Both ends of `alpha` can be split by the symmetric groups.
fn split(alpha: &TwistingMorphism) -> bool {
    alpha.target().sigma_split() && alpha.source().predual().sigma_split()
}

impl Suite {
    fn schedule(&self, default: &[u32]) -> Vec<u32> {
        self.custom.clone().unwrap_or_else(|| default.to_vec())
    }

    fn top(&self, default: &[u32]) -> u32 {
        *self.schedule(default).last().unwrap_or(&0)
    }

    fn preset(&self, name: &str) -> Result<TwistingMorphism> {
        self.example1
            .twistings
            .get(name)
            .or_else(|| self.comodules.twistings.get(name))
            .cloned()
            .map_or_else(|| preset_twisting(name, 4, self.field, 8), Ok)
    }

    fn weq(
        &self,
        alpha: &TwistingMorphism,
        f: &CoalgebraMorphism,
        default: &[u32],
    ) -> Result<crate::cobar::WeqReport> {
        let window = default_window(&[f.source(), f.target()]);
        alpha_weq(alpha, f, window, &self.schedule(default), self.stability)
    }

    /// Every coalgebra of the bundled workspaces.
    fn coalgebras(&self) -> Vec<&CoalgebraPresentation> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for ws in [&self.example1, &self.example2, &self.comodules] {
            for x in ws.coalgebras.values() {
                // `C~` appears in both example workspaces.
                if seen.insert((x.name().to_string(), x.generators().len())) {
                    out.push(x);
                }
            }
        }
        out
    }

    fn ass_fixtures(&self) -> Result<Vec<&CoalgebraPresentation>> {
        Ok(vec![
            self.example1.coalgebra("X")?,
            self.example2.coalgebra("C1")?,
            self.example2.coalgebra("C2")?,
            self.example1.coalgebra("C~")?,
        ])
    }
}

const TABLE: [u32; 4] = [3, 4, 5, 6];
const SURVIVAL: [u32; 8] = [3, 4, 5, 6, 7, 8, 9, 10];
const COMODULE: [u32; 3] = [4, 6, 8];

/// Runs the whole suite. Failures become rows; only a broken bundle errors.
pub fn cmd_paper_report(opts: &ReportOptions) -> Result<PaperReport> {
    let suite = Suite {
        field: opts.field,
        stability: opts.stability,
        custom: opts.schedule.clone(),
        example1: load("example1", opts.field)?,
        example2: load("example2", opts.field)?,
        comodules: load("comodules", opts.field)?,
    };
    let table = comparison_table(&suite)?;
    let rows = vec![
        d_squared(&suite).finish("1", "d² = 0 for every preset and bundled fixture"),
        example_one_structure(&suite).finish(
            "2",
            "Ω_β X: slices 0, k per weight, k per weight; d(w̃x̃^n) = ±2x̃^{n+2} ± x̃^{n+1}",
        ),
        example_one_survival(&suite).finish(
            "3",
            "x̃ survives in Ω_β X, so X → 0 is an ε- but not a β-equivalence",
        ),
        epsilon_forgetful(&suite).finish("4", "Ω_ε is the underlying complex"),
        example_two(&suite).finish("5", "Ω_κ C1, Ω_κ C2 and C1 → C2 under β and κ"),
        functoriality(&suite).finish("6", "S⁻¹Ass → S⁻¹Com carries Ω_κ to Ω_β"),
        comodule_formulas(&suite, false).finish(
            "7",
            "Ω_α B_κ M_4: the three formulas; homology k in degree 0",
        ),
        comodule_formulas(&suite, true).finish(
            "7′",
            "Ω_α B_κ S(y): the three formulas; homology k in degree 0",
        ),
        dichotomy(&suite).finish("8", "M_4 → M_8 is an α- but not a κ-equivalence"),
        invertible_cone(&suite).finish(
            "8′",
            "0 → B_κ L with y invertible is an α- but not a κ-equivalence",
        ),
        properties(&suite).finish(
            "9",
            "nesting, pushforward, cocommutators, axioms, span membership",
        ),
    ];
    Ok(PaperReport {
        field: opts.field.to_string(),
        stability: opts.stability,
        table,
        rows,
    })
}

fn comparison_table(s: &Suite) -> Result<Vec<TableRow>> {
    use Stability::{StableNo as No, StableYes as Yes};
    let x0 = s.example1.morphism("X_to_0")?;
    let inc = s.example2.morphism("C1_to_C2")?;
    let mut out = Vec::new();
    for (name, expected) in [
        ("kappa_ass", [No, No]),
        ("beta", [No, Yes]),
        ("epsilon", [Yes, Yes]),
    ] {
        let alpha = s.preset(name)?;
        let mut cells = Vec::new();
        let mut status = RowStatus::Pass;
        for (f, want) in [x0, inc].into_iter().zip(expected) {
            let observed = if split(&alpha) {
                let got = s
                    .weq(&alpha, f, &TABLE)
                    .map(|r| r.summary)
                    .unwrap_or(Stability::Unstable);
                status = status.max(if got == want {
                    RowStatus::Pass
                } else if got == Stability::Unstable {
                    RowStatus::Unstable
                } else {
                    RowStatus::Fail
                });
                Some(got)
            } else {
                status = RowStatus::Skipped;
                None
            };
            cells.push(TableCell {
                morphism: format!("{} → {}", f.source().name(), f.target().name()),
                expected: want,
                observed,
            });
        }
        out.push(TableRow {
            twisting: name.to_string(),
            cells,
            status,
        });
    }
    Ok(out)
}

/// A degree window of width at least 8 around the generators of `x`.
fn wide_window(x: &CoalgebraPresentation) -> (i64, i64) {
    let (lo, hi) = default_window(&[x]);
    (lo, hi.max(lo + 8))
}

fn d_squared(s: &Suite) -> Row {
    let mut row = Row::new();
    for name in PRESET_TWISTINGS {
        row.run(name, |row| {
            let alpha = s.preset(name)?;
            let xs: Vec<_> = s
                .coalgebras()
                .into_iter()
                .filter(|x| x.cooperad() == alpha.source())
                .collect();
            if !split(&alpha) {
                row.skip(name);
                return Ok(());
            }
            let mut sizes = Vec::new();
            for x in &xs {
                let c = cobar_complex(&alpha, x, 8, wide_window(x))?;
                sizes.push(format!("{} ({})", x.name(), c.len()));
            }
            row.check(!xs.is_empty(), format!("{name}: {}", sizes.join(", ")));
            Ok(())
        });
    }
    row
}

fn example_one_structure(s: &Suite) -> Row {
    let mut row = Row::new();
    row.run("Ω_β X", |row| {
        let beta = s.preset("beta")?;
        if !split(&beta) {
            row.skip("Ω_β X");
            return Ok(());
        }
        let w = 8;
        let c = cobar_complex(&beta, s.example1.coalgebra("X")?, w, (-1, 3))?;
        row.check(c.slice(0).is_empty(), "degree 0 is empty");
        for degree in [1, 2] {
            let mut weights: Vec<u32> = c
                .slice(degree)
                .iter()
                .map(|&i| c.elements()[i].weight)
                .collect();
            weights.sort();
            row.check(
                weights == (1..=w).collect::<Vec<_>>(),
                format!("degree {degree}: one element in each weight 1..{w}"),
            );
        }
        let mut bad = Vec::new();
        for &j in &c.slice(2) {
            let n = c.elements()[j].weight;
            let mut seen: Vec<(u32, String)> = c
                .d(j)
                .iter()
                .map(|(&i, k)| (c.elements()[i].weight, k.abs().to_string()))
                .collect();
            seen.sort();
            if seen != [(n, "1".to_string()), (n + 1, "2".to_string())] {
                bad.push(c.label(j).to_string());
            }
        }
        row.check(
            bad.is_empty(),
            format!("d of every degree-2 word has entries 1 and 2 in weights n, n+1 {bad:?}"),
        );
        Ok(())
    });
    row
}

fn survival(
    s: &Suite,
    row: &mut Row,
    alpha: &TwistingMorphism,
    x: &CoalgebraPresentation,
    class: &str,
    window: (i64, i64),
) -> Result<()> {
    let sched = s.schedule(&SURVIVAL);
    let c = cobar_complex(alpha, x, s.top(&SURVIVAL), window)?;
    let cert = class_survives(&c, &c.parse_class(class)?, &sched, s.stability)?;
    let levels: Vec<String> = cert
        .levels
        .iter()
        .map(|l| format!("{}:{}", l.level, if l.in_span { "in" } else { "out" }))
        .collect();
    let text = format!(
        "{class} in Ω_{} {} [{}]",
        alpha.name(),
        x.name(),
        levels.join(" ")
    );
    match cert.survives() {
        Some(true) => row.check(
            cert.levels.iter().all(|l| !l.in_span),
            format!("{text}: survives"),
        ),
        Some(false) => row.check(false, format!("{text}: a boundary")),
        None => row.push(RowStatus::Unstable, text),
    }
    Ok(())
}

fn example_one_survival(s: &Suite) -> Row {
    let mut row = Row::new();
    row.run("survival", |row| {
        let beta = s.preset("beta")?;
        if !split(&beta) {
            row.skip("x̃ under β");
            return Ok(());
        }
        let x = s.example1.coalgebra("X")?;
        survival(s, row, &beta, x, "~x", (0, 2))?;
        let f = s.example1.morphism("X_to_0")?;
        row.stability(
            s.weq(&beta, f, &TABLE)?.summary,
            Stability::StableNo,
            "X → 0 under β",
        );
        row.stability(
            s.weq(&s.preset("epsilon")?, f, &TABLE)?.summary,
            Stability::StableYes,
            "X → 0 under ε",
        );
        Ok(())
    });
    row
}

fn epsilon_forgetful(s: &Suite) -> Row {
    let mut row = Row::new();
    let pairs = [
        ("epsilon", s.ass_fixtures()),
        (
            "epsilon_cochain",
            Ok(s.comodules.coalgebras.values().collect()),
        ),
    ];
    for (name, xs) in pairs {
        row.run(name, |row| {
            let eps = s.preset(name)?;
            for x in xs? {
                let top = x
                    .generators()
                    .elements()
                    .iter()
                    .map(|e| e.weight)
                    .max()
                    .unwrap_or(1);
                let c = cobar_complex(&eps, x, top.max(8), wide_window(x))?;
                let under = x.underlying()?;
                let gens = x.generators().elements();
                let same_basis = c.len() == gens.len()
                    && c.elements()
                        .iter()
                        .zip(gens)
                        .all(|(a, b)| a.degree == b.degree);
                let same_d =
                    same_basis && (0..c.len()).all(|j| &c.d(j) == under.differential().column(j));
                row.check(
                    same_basis && same_d,
                    format!("Ω_{name} {} = {}", x.name(), x.name()),
                );
            }
            Ok(())
        });
    }
    row.run("X → 0", |row| {
        let r = s.weq(
            &s.preset("epsilon")?,
            s.example1.morphism("X_to_0")?,
            &TABLE,
        )?;
        row.check(r.exact, "X → 0 under ε is exact");
        row.stability(r.summary, Stability::StableYes, "X → 0 under ε");
        Ok(())
    });
    row
}

fn example_two(s: &Suite) -> Row {
    let mut row = Row::new();
    row.run("Ω_κ", |row| {
        let kappa = s.preset("kappa_ass")?;
        let w = 6;
        let c1 = s.example2.coalgebra("C1")?;
        let o1 = cobar_complex(&kappa, c1, w, (-1, 8))?;
        row.check(
            (0..o1.len()).all(|j| o1.d(j).is_zero()),
            "Ω_κ C1 has zero differential",
        );
        let mut concentrated = true;
        for level in 1..=w {
            for (k, b) in o1.betti(level)? {
                concentrated &= (k == 1) == (b > 0);
            }
        }
        row.check(
            concentrated,
            format!("Ω_κ C1 homology sits in degree 1 at every weight 1..{w}"),
        );

        let c2 = s.example2.coalgebra("C2")?;
        let o2 = cobar_complex(&kappa, c2, w, (2, 6))?;
        row.check(o2.slice(3).is_empty(), "Ω_κ C2 is zero in degree 3");
        let expected: BTreeSet<(usize, usize)> = (0..w as usize)
            .flat_map(|m| (0..w as usize - m).map(move |n| (m, n)))
            .collect();
        for (degree, letter) in [(4, "y"), (5, "z")] {
            let li = c2
                .generators()
                .index_of(letter)
                .ok_or_else(|| Error::UnknownName(letter.into()))?;
            let xi = c2
                .generators()
                .index_of("x")
                .ok_or_else(|| Error::UnknownName("x".into()))?;
            let mut found = BTreeSet::new();
            let mut shaped = true;
            for &i in &o2.slice(degree) {
                let word = &o2.mono(i).word;
                let at: Vec<usize> = (0..word.len()).filter(|&p| word[p] == li).collect();
                shaped &= at.len() == 1 && word.iter().all(|&l| l == li || l == xi);
                if let Some(&m) = at.first() {
                    shaped &= found.insert((m, word.len() - 1 - m));
                }
            }
            row.check(
                shaped && found == expected,
                format!(
                    "degree {degree}: basis x̃^m {letter}̃ x̃^n, m + n ≤ {} ({} words)",
                    w - 1,
                    found.len()
                ),
            );
        }
        survival(s, row, &kappa, c2, "~y", (3, 5))?;
        let inc = s.example2.morphism("C1_to_C2")?;
        row.stability(
            s.weq(&kappa, inc, &TABLE)?.summary,
            Stability::StableNo,
            "C1 → C2 under κ",
        );
        Ok(())
    });
    row.run("β", |row| {
        let beta = s.preset("beta")?;
        if !split(&beta) {
            row.skip("C1 → C2 under β");
            return Ok(());
        }
        let r = s.weq(&beta, s.example2.morphism("C1_to_C2")?, &TABLE)?;
        row.check(r.exact, "C1 → C2 under β is EXACT");
        row.stability(r.summary, Stability::StableYes, "C1 → C2 under β");
        Ok(())
    });
    row
}

fn functoriality(s: &Suite) -> Row {
    let mut row = Row::new();
    row.run("square", |row| {
        let kappa = s.preset("kappa_ass")?;
        let beta = s.preset("beta")?;
        if !split(&beta) {
            row.skip("S⁻¹Ass → S⁻¹Com");
            return Ok(());
        }
        let f = OperadMap::ass_to_com(kappa.target(), beta.target())?;
        for x in [s.example1.coalgebra("X")?, s.example2.coalgebra("C2")?] {
            let r = functoriality_check(&kappa, &f, x, 6, (-1, 8))?;
            let text = format!(
                "{} ({} words){}",
                r.complex,
                r.compared,
                r.witness.map(|w| format!(": {w}")).unwrap_or_default()
            );
            row.check(r.commutes && r.surjective, text);
        }
        Ok(())
    });
    row
}

fn power_label(var: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn exponent(label: &str, var: &str) -> Option<usize> {
    if label == "1" {
        Some(0)
    } else if label == var {
        Some(1)
    } else {
        label.strip_prefix(var)?.strip_prefix('^')?.parse().ok()
    }
}

/// Checks `d(p⊗η⊗m) = px⊗ν⊗m − p⊗μ⊗ym`, `d(p⊗μ⊗m) = px⊗1⊗m`, `d(p⊗ν⊗m) =
/// p⊗1⊗ym` on every generator below the top weight, up to one global sign.
fn formulas(c: &CobarComplex, row: &mut Row) -> Result<()> {
    let field = c.field();
    let mut sign: Option<Scalar> = None;
    let mut checked = 0;
    let mut bad = Vec::new();
    for j in 0..c.len() {
        if c.elements()[j].weight >= c.max_weight() {
            continue;
        }
        let parts: Vec<&str> = c.label(j).split('⊗').collect();
        let [p, g, m] = parts[..] else {
            return Err(Error::Validation(format!(
                "unexpected generator {}",
                c.label(j)
            )));
        };
        let (Some(a), Some(b)) = (exponent(p, "x"), exponent(m, "y")) else {
            return Err(Error::Validation(format!(
                "unexpected generator {}",
                c.label(j)
            )));
        };
        let mut terms: Vec<(String, i64)> = Vec::new();
        let ym = power_label("y", b + 1);
        let has_ym = c.index_of(&format!("1⊗1⊗{ym}")).is_some();
        match g {
            "η" => {
                terms.push((format!("{}⊗ν⊗{m}", power_label("x", a + 1)), 1));
                if has_ym {
                    terms.push((format!("{p}⊗μ⊗{ym}"), -1));
                }
            }
            "μ" => terms.push((format!("{}⊗1⊗{m}", power_label("x", a + 1)), 1)),
            "ν" if has_ym => terms.push((format!("{p}⊗1⊗{ym}"), 1)),
            _ => {}
        }
        let mut expected = Vector::zero(field);
        for (label, k) in &terms {
            let i = c
                .index_of(label)
                .ok_or_else(|| Error::Validation(format!("{label} is missing from the complex")))?;
            expected.add_term(i, field.from_i64(*k));
        }
        let d = c.d(j);
        if sign.is_none() {
            if let (Some((i, x)), false) = (d.first(), expected.is_zero()) {
                sign = Some(x.clone() * expected.coeff(i).inverse().unwrap_or_else(|| field.one()));
            }
        }
        let e = expected.scaled(sign.as_ref().unwrap_or(&field.one()));
        if d != e {
            bad.push(c.label(j).to_string());
        }
        checked += 1;
    }
    let global = sign
        .as_ref()
        .map(|s| s.to_wire())
        .unwrap_or_else(|| "1".into());
    row.check(
        bad.is_empty()
            && sign
                .as_ref()
                .is_some_and(|s| s.is_one() || (-s.clone()).is_one()),
        format!(
            "{checked} generators match with global sign {global}{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; mismatches at {bad:?}")
            }
        ),
    );
    Ok(())
}

fn comodule_formulas(s: &Suite, free: bool) -> Row {
    let mut row = Row::new();
    row.run("Ω_α B_κ", |row| {
        let alpha = s.preset("alpha")?;
        let name = if free { "BS" } else { "BM4" };
        let b = s.comodules.coalgebra(name)?;
        let levels = s.schedule(&COMODULE);
        let top = s.top(&COMODULE);
        let c = cobar_complex(&alpha, b, top, (-1, 3))?;
        formulas(&c, row)?;
        let mut per_level = Vec::new();
        let mut ok = true;
        for &n in &levels {
            let betti = c.betti(n)?;
            ok &= betti.iter().all(|(&k, &v)| v == usize::from(k == 0));
            let cells: Vec<String> = betti.iter().map(|(k, v)| format!("H_{k}={v}")).collect();
            per_level.push(format!("N={n}: {}", cells.join(" ")));
        }
        let text = format!("homology k in degree 0 at {}", per_level.join("; "));
        if ok {
            row.check(true, text);
        } else {
            row.check(false, format!("{text} (ν⊗y^N is a cycle since y·y^N = 0)"));
        }
        let class = c.parse_class("1⊗1⊗y")?;
        let cert = class_survives(&c, &class, &levels, s.stability)?;
        match cert.survives() {
            Some(alive) => row.check(alive, "1⊗1⊗y survives"),
            None => row.push(RowStatus::Unstable, "1⊗1⊗y: unstable"),
        }
        Ok(())
    });
    row
}

fn dichotomy(s: &Suite) -> Row {
    let mut row = Row::new();
    let sched = s.schedule(&COMODULE);
    row.run("M_4 → M_8", |row| {
        let kappa = s.preset("kappa")?;
        let (m4, m8) = (s.comodules.module("M4")?, s.comodules.module("M8")?);
        match ModuleMap::projection(m4, m8) {
            Ok(_) => row.check(true, "M_4 → M_8 is a module map"),
            Err(e) => row.check(false, format!("M_4 → M_8 is not a map of modules ({e})")),
        }
        let f = s.comodules.morphism("BM8_to_BM4")?;
        let a = alpha_weq(&s.preset("alpha")?, f, (-1, 3), &sched, s.stability)?;
        row.stability(
            a.summary,
            Stability::StableYes,
            "the projection M_8 → M_4 under α",
        );
        let k = alpha_weq(&kappa, f, (-1, 3), &sched, s.stability)?;
        row.stability(
            k.summary,
            Stability::StableNo,
            "the projection M_8 → M_4 under κ",
        );
        for m in [m4, m8] {
            let r = counit_check(&kappa, m, &sched, s.stability)?;
            row.stability(
                r.summary,
                Stability::StableYes,
                format!("counit Ω_κ B_κ {} → {}", m.name(), m.name()),
            );
        }
        Ok(())
    });
    row
}

fn invertible_cone(s: &Suite) -> Row {
    let mut row = Row::new();
    let sched = s.schedule(&COMODULE);
    row.run("0 → B_κ L", |row| {
        let f = s.comodules.morphism("0_to_BL")?;
        for (name, want) in [
            ("alpha", Stability::StableYes),
            ("epsilon_cochain", Stability::StableYes),
            ("kappa", Stability::StableNo),
        ] {
            let r = alpha_weq(&s.preset(name)?, f, (-1, 3), &sched, s.stability)?;
            row.stability(r.summary, want, format!("0 → B_κ L under {name}"));
        }
        let kappa = s.preset("kappa")?;
        for m in ["L", "S"] {
            let m = s.comodules.module(m)?;
            let r = counit_check(&kappa, m, &sched, s.stability)?;
            row.stability(
                r.summary,
                Stability::StableYes,
                format!("counit Ω_κ B_κ {} → {}", m.name(), m.name()),
            );
        }
        Ok(())
    });
    row
}

fn properties(s: &Suite) -> Row {
    let mut row = Row::new();
    row.run("nesting", |row| nesting(s, row));
    row.run("pushforward", |row| {
        for x in s.ass_fixtures()? {
            let lie = cocommutator(x)?;
            let id = pushforward(&CooperadMap::identity(x.cooperad()), x)?;
            row.check(
                lie.underlying()? == x.underlying()? && id.underlying()? == x.underlying()?,
                format!("pushforwards of {} keep its complex", x.name()),
            );
        }
        for name in ["C1", "C2"] {
            let l = cocommutator(s.example2.coalgebra(name)?)?;
            let zero = (0..l.generators().len()).all(|g| l.decomposition(g).is_zero());
            row.check(zero, format!("the cocommutator of {name} is zero"));
        }
        Ok(())
    });
    row.run("axioms", |row| {
        let mut names = Vec::new();
        let mut failures = Vec::new();
        for o in ["Com", "Ass", "Lie", "Unit"] {
            let r = check_operad(&Operad::preset(o, 5, s.field)?)?;
            names.push(o.to_string());
            failures.extend(r.failures);
        }
        for c in ["Com^c", "Ass^c", "Lie^c"] {
            let r = check_cooperad(&Cooperad::preset(c, 5, s.field)?)?;
            names.push(c.to_string());
            failures.extend(r.failures);
        }
        for t in PRESET_TWISTINGS {
            let alpha = preset_twisting(t, 5, s.field, 8)?;
            names.push(t.to_string());
            if !alpha.report().mc_residual_zero {
                failures.push(format!("{t}: Maurer–Cartan"));
            }
        }
        row.check(
            failures.is_empty(),
            format!("{} up to arity 5 {failures:?}", names.join(", ")),
        );
        Ok(())
    });
    row.run("span membership", |row| {
        let (agree, total) = span_oracle(200, 12)?;
        row.check(
            agree == total,
            format!("agrees with F_2 enumeration on {agree}/{total} instances"),
        );
        Ok(())
    });
    row
}

/// κ-yes ⇒ β-yes ⇒ ε-yes at every level, and likewise for the cochains.
fn nesting(s: &Suite, row: &mut Row) -> Result<()> {
    let chains: [(&Workspace, &[&str], &[&str]); 3] = [
        (&s.example1, &["X_to_0"], &["kappa_ass", "beta", "epsilon"]),
        (
            &s.example2,
            &["C1_to_C2", "id_C2"],
            &["kappa_ass", "beta", "epsilon"],
        ),
        (
            &s.comodules,
            &["BM8_to_BM4", "0_to_BL"],
            &["kappa", "alpha", "epsilon_cochain"],
        ),
    ];
    let sched = s.schedule(&TABLE);
    for (ws, morphisms, names) in chains {
        let twistings: Vec<TwistingMorphism> = names
            .iter()
            .map(|n| s.preset(n))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(split)
            .collect();
        for m in morphisms {
            let f = ws.morphism(m)?;
            let window = default_window(&[f.source(), f.target()]);
            let verdicts: Vec<Vec<Verdict>> = twistings
                .iter()
                .map(|t| {
                    Ok(alpha_weq(t, f, window, &sched, 1)?
                        .levels
                        .iter()
                        .map(|l| l.verdict)
                        .collect())
                })
                .collect::<Result<_>>()?;
            let mut ok = true;
            for pair in verdicts.windows(2) {
                for (a, b) in pair[0].iter().zip(&pair[1]) {
                    ok &= *a != Verdict::Yes || *b == Verdict::Yes;
                }
            }
            let used: Vec<&str> = twistings.iter().map(|t| t.name()).collect();
            row.check(ok, format!("{m}: {} at levels {sched:?}", used.join(" ⇒ ")));
        }
    }
    Ok(())
}

/// Random F_2 instances of dimension at most `max_dim`, decided both by
/// elimination and by enumerating every subset sum. Returns (agreeing, total).
pub fn span_oracle(instances: usize, max_dim: usize) -> Result<(usize, usize)> {
    let f2 = Field::prime(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let to_vec = |bits: u32| {
        Vector::from_terms(
            f2,
            (0..32)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| (i, f2.one())),
        )
    };
    let mut agree = 0;
    for _ in 0..instances {
        let dim = rng.gen_range(1..=max_dim);
        let k = rng.gen_range(0..=max_dim);
        let mask = (1u32 << dim) - 1;
        let gens: Vec<u32> = (0..k).map(|_| rng.gen::<u32>() & mask).collect();
        let target = if rng.gen_bool(0.5) {
            gens.iter()
                .filter(|_| rng.gen_bool(0.5))
                .fold(0, |a, g| a ^ g)
        } else {
            rng.gen::<u32>() & mask
        };
        let reachable: BTreeSet<u32> = (0u32..1 << k)
            .map(|subset| {
                (0..k)
                    .filter(|i| subset >> i & 1 == 1)
                    .fold(0, |a, i| a ^ gens[i])
            })
            .collect();
        let vectors: Vec<_> = gens.iter().map(|&g| to_vec(g)).collect();
        if span_membership(f2, dim, &to_vec(target), &vectors)? == reachable.contains(&target) {
            agree += 1;
        }
    }
    Ok((agree, instances))
}
