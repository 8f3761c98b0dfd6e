//! On-disk layout of the fixture corpus under `crates/cli/fixtures`.
//!
//! `<name>.json` holds the datum, `<name>.rbar.json` the optional R̄ file,
//! `manifest.json` lists every (datum, character) run with its expected exit
//! code and `golden/<name>--<chi>.json` the expected report.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use reflmono::fixtures::{corpus, Fixture};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ManifestEntry {
    pub name: String,
    pub family: String,
    pub datum: String,
    pub rbar: Option<String>,
    pub chi: String,
    pub expected_exit: i32,
    pub golden: String,
}

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn chi_slug(chi: &str) -> String {
    chi.chars()
        .map(|c| match c {
            ':' => '_',
            ',' => '-',
            c if c.is_ascii_alphanumeric() => c,
            _ => 'x',
        })
        .collect()
}

pub fn rbar_file(f: &Fixture) -> Option<String> {
    f.rbar.as_ref().map(|_| format!("{}.rbar.json", f.name))
}

pub fn rbar_json(f: &Fixture) -> Option<String> {
    f.rbar
        .as_ref()
        .map(|r| serde_json::to_string_pretty(r).expect("serializable") + "\n")
}

pub fn manifest() -> Vec<ManifestEntry> {
    corpus()
        .iter()
        .flat_map(|f| {
            f.characters.iter().map(move |chi| ManifestEntry {
                name: f.name.clone(),
                family: f.family.into(),
                datum: format!("{}.json", f.name),
                rbar: rbar_file(f),
                chi: chi.clone(),
                expected_exit: f.expected_exit,
                golden: format!("golden/{}--{}.json", f.name, chi_slug(chi)),
            })
        })
        .collect()
}

pub fn manifest_json() -> String {
    serde_json::to_string_pretty(&manifest()).expect("serializable") + "\n"
}
