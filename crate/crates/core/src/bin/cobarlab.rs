use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cobarlab::cli::{
    bundled, certificate_exit_code, cmd_cobar, cmd_paper_report, cmd_survives, cmd_validate,
    cmd_weq, exit_code_for, parse_schedule, parse_window, parse_workspace, render_certificate,
    render_weq, ReportOptions, Workspace, WorkspaceFile, EXIT_USAGE,
};
use cobarlab::cobar::DEFAULT_STABILITY;
use cobarlab::gradedlin::Field;
use cobarlab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cobarlab",
    version,
    about = "Cobar complexes along twisting morphisms, computed exactly"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct Common {
    /// Workspace JSON file.
    file: Option<PathBuf>,
    /// Use a bundled workspace instead of a file.
    #[arg(long)]
    fixture: Option<String>,
    /// Override the workspace field: Q, Fp:<p> or F<p>.
    #[arg(long)]
    field: Option<String>,
    /// Print the JSON twin of the report.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct Levels {
    /// Degree window a..b.
    #[arg(long)]
    window: Option<String>,
    /// Truncation levels n1,n2,... or a..b.
    #[arg(long)]
    schedule: Option<String>,
    /// Number of trailing levels that must agree.
    #[arg(long, default_value_t = DEFAULT_STABILITY)]
    stability: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Load a workspace and run every validator.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Build a cobar complex and report its dimensions and homology.
    Cobar {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        coalgebra: String,
        #[arg(long)]
        twisting: String,
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
        #[arg(long)]
        window: Option<String>,
    },
    /// Decide whether a morphism is an α-weak equivalence, level by level.
    Weq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        twisting: String,
        #[command(flatten)]
        levels: Levels,
    },
    /// Decide whether a cycle survives in homology, level by level.
    Survives {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        coalgebra: String,
        #[arg(long)]
        twisting: String,
        /// A combination such as `~x` or `2*~x - ~y`.
        #[arg(long)]
        class: String,
        #[command(flatten)]
        levels: Levels,
    },
    /// Recompute every example and print the pass/fail table.
    PaperReport {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STABILITY)]
        stability: usize,
        #[arg(long)]
        json: bool,
    },
}

fn read_file(common: &Common) -> Result<WorkspaceFile> {
    let mut file = match (&common.file, &common.fixture) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "give either a file or --fixture, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Parse(
                "a workspace file or --fixture is required".into(),
            ))
        }
        (None, Some(name)) => bundled(name)?,
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            parse_workspace(&text)?
        }
    };
    if let Some(f) = &common.field {
        let field: Field = f.parse()?;
        file.field = field.to_string();
    }
    Ok(file)
}

fn schedule_or(levels: &Levels, default: &[u32]) -> Result<Vec<u32>> {
    levels
        .schedule
        .as_deref()
        .map(parse_schedule)
        .unwrap_or_else(|| Ok(default.to_vec()))
}

fn window(s: &Option<String>) -> Result<Option<(i64, i64)>> {
    s.as_deref().map(parse_window).transpose()
}

/// Writes the report; a closed pipe is not an error.
fn emit<T: Serialize>(json: bool, value: &T, text: String) {
    let out = if json {
        serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
    } else {
        text
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn run(verb: Verb) -> Result<i32> {
    match verb {
        Verb::Validate { common } => {
            let r = cmd_validate(read_file(&common)?)?;
            emit(common.json, &r, r.render());
            Ok(r.exit_code())
        }
        Verb::Cobar {
            common,
            coalgebra,
            twisting,
            max_weight,
            window: w,
        } => {
            let ws = Workspace::load(read_file(&common)?)?;
            let r = cmd_cobar(&ws, &coalgebra, &twisting, max_weight, window(&w)?)?;
            emit(common.json, &r, r.render());
            Ok(0)
        }
        Verb::Weq {
            common,
            morphism,
            twisting,
            levels,
        } => {
            let ws = Workspace::load(read_file(&common)?)?;
            let sched = schedule_or(&levels, &[3, 4, 5, 6])?;
            let r = cmd_weq(
                &ws,
                &morphism,
                &twisting,
                window(&levels.window)?,
                &sched,
                levels.stability,
            )?;
            emit(common.json, &r, render_weq(&r));
            Ok(r.summary.exit_code())
        }
        Verb::Survives {
            common,
            coalgebra,
            twisting,
            class,
            levels,
        } => {
            let ws = Workspace::load(read_file(&common)?)?;
            let sched = schedule_or(&levels, &[3, 4, 5, 6, 7, 8, 9, 10])?;
            let c = cmd_survives(
                &ws,
                &coalgebra,
                &twisting,
                &class,
                window(&levels.window)?,
                &sched,
                levels.stability,
            )?;
            emit(common.json, &c, render_certificate(&c));
            Ok(certificate_exit_code(&c))
        }
        Verb::PaperReport {
            field,
            schedule,
            stability,
            json,
        } => {
            let opts = ReportOptions {
                field: field
                    .as_deref()
                    .map(str::parse)
                    .transpose()?
                    .unwrap_or(Field::Rational),
                schedule: schedule.as_deref().map(parse_schedule).transpose()?,
                stability,
            };
            let r = cmd_paper_report(&opts)?;
            emit(json, &r, r.render());
            Ok(r.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(cli.verb) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
    }
}
