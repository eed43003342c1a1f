//! Workspaces shipped with the binary, selectable by name.

use super::workspace::{parse_workspace, WorkspaceFile};
use crate::error::{Error, Result};

pub const BUNDLED: &[(&str, &str)] = &[
    ("example1", include_str!("../../fixtures/example1.json")),
    ("example2", include_str!("../../fixtures/example2.json")),
    ("comodules", include_str!("../../fixtures/comodules.json")),
    ("bad_degree", include_str!("../../fixtures/bad_degree.json")),
    ("bad_span", include_str!("../../fixtures/bad_span.json")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_text(name: &str) -> Result<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            Error::UnknownName(format!(
                "fixture {name}; bundled fixtures are {}",
                bundled_names().join(", ")
            ))
        })
}

pub fn bundled(name: &str) -> Result<WorkspaceFile> {
    parse_workspace(bundled_text(name)?)
}
