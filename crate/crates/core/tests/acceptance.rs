//! One line per acceptance criterion, recomputed through the report.

use std::sync::OnceLock;

use cobarlab::cli::{cmd_paper_report, PaperReport, ReportOptions, RowStatus};

fn report() -> &'static PaperReport {
    static REPORT: OnceLock<PaperReport> = OnceLock::new();
    REPORT.get_or_init(|| {
        cmd_paper_report(&ReportOptions::default()).expect("bundled workspaces load")
    })
}

fn criterion(id: &str) {
    let row = report().row(id).expect("row exists");
    println!(
        "criterion {id}: {} ({})",
        if row.status == RowStatus::Pass {
            "pass"
        } else {
            "fail"
        },
        row.title
    );
    for c in row.checks.iter().filter(|c| c.status != RowStatus::Pass) {
        println!("    {:?}: {}", c.status, c.text);
    }
    assert_eq!(row.status, RowStatus::Pass, "criterion {id}");
}

#[test]
fn criterion_1_d_squared() {
    criterion("1");
}

#[test]
fn criterion_2_example_one_structure() {
    criterion("2");
}

#[test]
fn criterion_3_example_one_survival() {
    criterion("3");
}

#[test]
fn criterion_4_epsilon_forgetful() {
    criterion("4");
}

#[test]
fn criterion_5_example_two() {
    criterion("5");
}

#[test]
fn criterion_6_functoriality() {
    criterion("6");
}

#[test]
fn criterion_7_comodule_formulas() {
    criterion("7");
}

#[test]
fn criterion_8_dichotomy() {
    criterion("8");
}

#[test]
fn criterion_9_properties() {
    criterion("9");
}

#[test]
fn comparison_table() {
    for row in &report().table {
        println!(
            "table {}: {}",
            row.twisting,
            if row.status == RowStatus::Pass {
                "pass"
            } else {
                "fail"
            }
        );
        assert_eq!(row.status, RowStatus::Pass, "{}", row.twisting);
    }
}

#[test]
fn free_and_invertible_analogues() {
    for id in ["7′", "8′"] {
        let row = report().row(id).expect("row exists");
        println!(
            "analogue {id}: {} ({})",
            if row.status == RowStatus::Pass {
                "pass"
            } else {
                "fail"
            },
            row.title
        );
        assert_eq!(row.status, RowStatus::Pass, "{id}");
    }
}
