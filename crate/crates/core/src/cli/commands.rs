//! The verbs behind the binary. Each returns a serializable report whose
//! text rendering and JSON twin carry the same content.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::workspace::{Issue, Workspace, WorkspaceFile};
use crate::coalg::{CoalgebraPresentation, Violation};
use crate::cobar::{
    alpha_weq, class_survives, cobar_complex, MembershipCertificate, SliceDims, WeqReport,
};
use crate::error::{Error, Result};

/// Exit status for usage and parse errors.
pub const EXIT_USAGE: i32 = 3;

/// Exit status for an error raised while computing.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownName(_) | Error::InvalidField(_) => EXIT_USAGE,
        _ => 1,
    }
}

/// Parses `a..b`.
pub fn parse_window(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("window {s:?} is not of the form a..b")))?;
    let p = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad window bound {t:?}")))
    };
    let w = (p(a)?, p(b)?);
    if w.0 > w.1 {
        return Err(Error::Parse(format!("empty window {s}")));
    }
    Ok(w)
}

/// Parses `n1,n2,...` or `a..b`.
pub fn parse_schedule(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad schedule {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() || v[0] == 0 || v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad());
    }
    Ok(v)
}

/// One cell wider than the generator degrees on each side.
pub fn default_window(xs: &[&CoalgebraPresentation]) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for x in xs {
        if let Some((a, b)) = x.generators().degree_range() {
            lo = lo.min(a);
            hi = hi.max(b);
        }
    }
    if lo > hi {
        (0, 0)
    } else {
        (lo - 1, hi + 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoalgebraCheck {
    pub name: String,
    pub cooperad: String,
    pub generators: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub field: String,
    pub issues: Vec<Issue>,
    pub coalgebras: Vec<CoalgebraCheck>,
    pub loaded: BTreeMap<&'static str, usize>,
    pub ok: bool,
}

impl ValidateReport {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field {}", self.field);
        for (section, n) in &self.loaded {
            let _ = writeln!(s, "  {section:<11} {n} loaded");
        }
        for c in &self.coalgebras {
            let status = if c.violations.is_empty() {
                "ok"
            } else {
                "FAIL"
            };
            let _ = writeln!(
                s,
                "  coalgebra {} over {} ({} generators): {status}",
                c.name, c.cooperad, c.generators
            );
            for v in &c.violations {
                let _ = writeln!(s, "    {:?}: {}", v.law, v.witness);
            }
        }
        for i in &self.issues {
            let _ = writeln!(s, "  {} {}: FAIL: {}", i.section, i.name, i.message);
        }
        let _ = writeln!(
            s,
            "{}",
            if self.ok {
                "all objects valid"
            } else {
                "validation failed"
            }
        );
        s
    }
}

pub fn cmd_validate(file: WorkspaceFile) -> Result<ValidateReport> {
    let (ws, issues) = Workspace::load_collecting(file)?;
    let mut coalgebras = Vec::new();
    for (name, x) in &ws.coalgebras {
        let report = x.validate()?;
        coalgebras.push(CoalgebraCheck {
            name: name.clone(),
            cooperad: x.cooperad().name().to_string(),
            generators: x.generators().len(),
            violations: report.violations,
        });
    }
    let loaded = [
        ("operads", ws.operads.len()),
        ("cooperads", ws.cooperads.len()),
        ("twistings", ws.twistings.len()),
        ("modules", ws.modules.len()),
        ("coalgebras", ws.coalgebras.len()),
        ("morphisms", ws.morphisms.len()),
    ]
    .into_iter()
    .collect();
    let ok = issues.is_empty() && coalgebras.iter().all(|c| c.violations.is_empty());
    Ok(ValidateReport {
        field: ws.field.to_string(),
        issues,
        coalgebras,
        loaded,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelHomology {
    pub level: u32,
    pub betti: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CobarReport {
    pub twisting: String,
    pub coalgebra: String,
    pub max_weight: u32,
    pub window: (i64, i64),
    pub certified: (i64, i64),
    pub dims: Vec<SliceDims>,
    pub d_squared_zero: bool,
    /// `EXACT` when the differential preserves weight, so every level is a
    /// subcomplex; `PER-TRUNCATION` otherwise.
    pub flag: &'static str,
    pub homology: Vec<LevelHomology>,
}

impl CobarReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "Ω_{} {}  weight ≤ {}  window {}..{}  (homology certified in {}..{})",
            self.twisting,
            self.coalgebra,
            self.max_weight,
            self.window.0,
            self.window.1,
            self.certified.0,
            self.certified.1
        );
        let _ = writeln!(
            s,
            "d² = 0: {}",
            if self.d_squared_zero { "yes" } else { "no" }
        );
        let _ = writeln!(s, "basis dimensions (degree, weight → dim):");
        for d in &self.dims {
            let _ = writeln!(s, "  {:>4} {:>4} {:>6}", d.degree, d.weight, d.dim);
        }
        let _ = writeln!(s, "homology per level [{}]:", self.flag);
        for h in &self.homology {
            let cells: Vec<String> = h.betti.iter().map(|(k, b)| format!("H_{k}={b}")).collect();
            let _ = writeln!(s, "  N={:<3} {}", h.level, cells.join(" "));
        }
        s
    }
}

pub fn cmd_cobar(
    ws: &Workspace,
    coalgebra: &str,
    twisting: &str,
    max_weight: u32,
    window: Option<(i64, i64)>,
) -> Result<CobarReport> {
    let x = ws.coalgebra(coalgebra)?;
    let alpha = ws.twisting(twisting)?;
    let window = window.unwrap_or_else(|| default_window(&[x]));
    let c = cobar_complex(alpha, x, max_weight, window)?;
    let mut homology = Vec::new();
    for level in 1..=max_weight {
        homology.push(LevelHomology {
            level,
            betti: c.betti(level)?,
        });
    }
    Ok(CobarReport {
        twisting: alpha.name().to_string(),
        coalgebra: x.name().to_string(),
        max_weight,
        window,
        certified: c.certified(),
        dims: c.dims(),
        d_squared_zero: true,
        flag: if c.preserves_weight() {
            "EXACT"
        } else {
            "PER-TRUNCATION"
        },
        homology,
    })
}

pub fn render_weq(r: &WeqReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Ω_{}: {} → {}  degrees {}..{}  [{}]",
        r.twisting,
        r.source,
        r.target,
        r.degrees.0,
        r.degrees.1,
        if r.exact { "EXACT" } else { "PER-TRUNCATION" }
    );
    for l in &r.levels {
        let cells: Vec<String> = l
            .source_betti
            .iter()
            .map(|(k, a)| format!("H_{k}: {a}→{}", l.target_betti.get(k).copied().unwrap_or(0)))
            .collect();
        let _ = writeln!(
            s,
            "  N={:<3} {:<4} {}",
            l.level,
            format!("{:?}", l.verdict).to_lowercase(),
            cells.join("  ")
        );
    }
    let _ = writeln!(
        s,
        "summary over the last {} levels: {}",
        r.stability,
        stability_word(r.summary)
    );
    s
}

pub fn stability_word(s: crate::cobar::Stability) -> &'static str {
    match s {
        crate::cobar::Stability::StableYes => "stable-yes",
        crate::cobar::Stability::StableNo => "stable-no",
        crate::cobar::Stability::Unstable => "unstable",
    }
}

pub fn cmd_weq(
    ws: &Workspace,
    morphism: &str,
    twisting: &str,
    window: Option<(i64, i64)>,
    schedule: &[u32],
    stability: usize,
) -> Result<WeqReport> {
    let f = ws.morphism(morphism)?;
    let alpha = ws.twisting(twisting)?;
    let window = window.unwrap_or_else(|| default_window(&[f.source(), f.target()]));
    alpha_weq(alpha, f, window, schedule, stability)
}

pub fn render_certificate(c: &MembershipCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "class {} in degree {}", c.class, c.degree);
    let _ = writeln!(s, "  {:>4}  in span of d(weight ≤ N)", "N");
    for l in &c.levels {
        let _ = writeln!(
            s,
            "  {:>4}  {}",
            l.level,
            if l.in_span { "yes" } else { "no" }
        );
    }
    let verdict = match c.survives() {
        Some(true) => "survives (stable)",
        Some(false) => "boundary (stable)",
        None => "unstable",
    };
    let _ = writeln!(s, "over the last {} levels: {verdict}", c.stability);
    s
}

/// 0 when the class stably survives, 1 when stably a boundary, 2 otherwise.
pub fn certificate_exit_code(c: &MembershipCertificate) -> i32 {
    match c.survives() {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    }
}

pub fn cmd_survives(
    ws: &Workspace,
    coalgebra: &str,
    twisting: &str,
    class: &str,
    window: Option<(i64, i64)>,
    schedule: &[u32],
    stability: usize,
) -> Result<MembershipCertificate> {
    let x = ws.coalgebra(coalgebra)?;
    let alpha = ws.twisting(twisting)?;
    let top = *schedule
        .last()
        .ok_or_else(|| Error::Parse("empty schedule".into()))?;
    let window = window.unwrap_or_else(|| default_window(&[x]));
    let c = cobar_complex(alpha, x, top, window)?;
    let v = c.parse_class(class)?;
    let degree = v
        .keys()
        .next()
        .map(|&i| c.elements()[i].degree)
        .unwrap_or(0);
    let (lo, hi) = c.certified();
    if degree < lo || degree > hi {
        return Err(Error::WindowNotCertified(format!(
            "{class} has degree {degree}, outside the certified degrees {lo}..{hi}; widen the window"
        )));
    }
    class_survives(&c, &v, schedule, stability)
}
