//! Subcommand implementations. Each returns its JSON output and an exit
//! code; `main` only parses arguments and writes the output.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use reflmono::analysis::{analyze, error_exit_code, Options, EXIT_INTEGRITY, EXIT_OK, EXIT_STRUCTURAL, EXIT_VALIDATION};
use reflmono::carousel::{build_carousel, carousel_minpolys, default_rbar};
use reflmono::chi::RbarParams;
use reflmono::cyclo::RootOfUnity;
use reflmono::error::Error;
use reflmono::extdata::{validate, Character, Convention, DatumFile, ExtensionDatum};
use reflmono::par::Exec;
use reflmono::reflgrp::{hyperplanes, FiniteGroup, GroupDatum, DEFAULT_GROUP_CAP};
use reflmono::selftest;

use crate::report::{fingerprint, sections, skipped_verdicts, verdicts, Input, Report, Sections, REPORT_SCHEMA_VERSION};

/// Exit code for bad command-line usage, kept apart from the analysis codes.
pub const EXIT_USAGE: i32 = 64;

pub struct Output {
    pub json: String,
    pub code: i32,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn usage(msg: String) -> Output {
    Output {
        json: to_json(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "error": msg })),
        code: EXIT_USAGE,
    }
}

pub struct AnalyzeArgs {
    pub datum: PathBuf,
    pub chi: String,
    pub rbar: Option<PathBuf>,
    pub convention: Option<Convention>,
    pub exec: Exec,
}

fn convention_name(c: Option<Convention>) -> &'static str {
    match c {
        None => "datum",
        Some(Convention::Standard) => "standard",
        Some(Convention::FlipInertia) => "flip-inertia",
    }
}

fn early_report(input: Input, err: &Error, code: i32) -> Report {
    Report {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        input,
        exit_code: code,
        error: Some(err.to_string()),
        sections: Sections::default(),
        verdicts: skipped_verdicts("input rejected"),
        warnings: vec![],
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Error> {
    fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn run_analyze(args: &AnalyzeArgs) -> Report {
    let conv = convention_name(args.convention);
    let datum_bytes = read(&args.datum);
    let rbar_bytes = args.rbar.as_deref().map(read).transpose();
    let mut input = Input {
        datum_name: None,
        fingerprint: fingerprint(
            datum_bytes.as_deref().unwrap_or_default(),
            &args.chi,
            rbar_bytes.as_ref().ok().and_then(|o| o.as_deref()),
            conv,
        ),
        chi: args.chi.clone(),
        rbar: args.rbar.is_some(),
        convention: conv.into(),
    };
    let loaded = (|| -> Result<(ExtensionDatum, Option<RbarParams>), Error> {
        let text = String::from_utf8(datum_bytes.clone()?).map_err(|e| Error::Parse(e.to_string()))?;
        let file = DatumFile::from_json(&text)?;
        let e = ExtensionDatum::from_file(&file, args.datum.parent(), DEFAULT_GROUP_CAP)?;
        let rbar = match rbar_bytes.clone()? {
            None => None,
            Some(b) => Some(serde_json::from_slice::<RbarParams>(&b).map_err(|e| Error::Parse(format!("R̄ file: {e}")))?),
        };
        Ok((e, rbar))
    })();
    let (e, rbar) = match loaded {
        Ok(x) => x,
        Err(err) => {
            let code = match err {
                Error::Parse(_) | Error::Structural(_) | Error::Capacity { .. } => EXIT_STRUCTURAL,
                _ => error_exit_code(&err),
            };
            return early_report(input, &err, code);
        }
    };
    input.datum_name = Some(e.name.clone());
    let chi = match Character::parse(&e, &args.chi) {
        Ok(c) => c,
        Err(err) => {
            let code = if validate(&e).passed() { EXIT_INTEGRITY } else { EXIT_VALIDATION };
            return early_report(input, &err, code);
        }
    };
    let a = analyze(
        &e,
        &chi,
        rbar.as_ref(),
        Options {
            convention: args.convention,
            exec: args.exec,
        },
    );
    let mut warnings = a.warnings.clone();
    if !a.validation.passed() {
        warnings.extend(a.validation.failures().map(|c| format!("validation check {} failed", c.name)));
    }
    Report {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        input,
        exit_code: a.exit_code(),
        error: a.failure.as_ref().map(|f| format!("stage {}: {}", f.stage, f.error)),
        sections: sections(&e, &chi, &a),
        verdicts: verdicts(&a),
        warnings,
    }
}

pub fn run_catalog(m: usize, p: usize, r: usize) -> Output {
    let result = (|| -> Result<serde_json::Value, Error> {
        let datum = GroupDatum::catalog(m, p, r)?;
        let g = datum.build(DEFAULT_GROUP_CAP)?;
        let arr = hyperplanes(&g)?;
        let hyper: Vec<_> = arr
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(i, h)| json!({ "index": i, "order": h.order, "orbit": h.orbit, "normal": h.normal }))
            .collect();
        Ok(json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "group": datum,
            "order": g.order(),
            "reflection_count": arr.reflection_count(),
            "hyperplanes": hyper,
            "orbits": arr.orbits(),
        }))
    })();
    match result {
        Ok(v) => Output {
            json: to_json(&v),
            code: EXIT_OK,
        },
        Err(Error::Domain(m)) => usage(m),
        Err(err) => Output {
            json: to_json(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "error": err.to_string() })),
            code: error_exit_code(&err),
        },
    }
}

/// `a/b` (or `a`) read as the root of unity exp(2πi·a/b).
pub fn parse_twist(s: &str) -> Result<RootOfUnity, String> {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: i64 = a.trim().parse().map_err(|_| format!("bad twist numerator in `{s}`"))?;
    let b: u64 = b
        .trim()
        .parse()
        .ok()
        .filter(|&b| b > 0)
        .ok_or_else(|| format!("bad twist denominator in `{s}`"))?;
    Ok(RootOfUnity::new(a, b))
}

pub fn run_carousel(n: usize, e: usize, sgn: i8, twist: RootOfUnity) -> Output {
    let result = (|| -> Result<serde_json::Value, Error> {
        let t = twist.to_cyc()?;
        let m = build_carousel(n, e, sgn, &t)?;
        let polys = carousel_minpolys(&m)?;
        Ok(json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "model": m,
            "k": m.k(),
            "r": polys.r,
            "rbar": polys.rbar,
            "rbar_mu": polys.rbar_mu,
            "default_rbar": default_rbar(&m)?,
        }))
    })();
    match result {
        Ok(v) => Output {
            json: to_json(&v),
            code: EXIT_OK,
        },
        Err(Error::Domain(m)) => usage(m),
        Err(err) => Output {
            json: to_json(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "error": err.to_string() })),
            code: error_exit_code(&err),
        },
    }
}

pub fn run_selftest(scope: &str, exec: Exec) -> Output {
    match selftest::run(scope, exec) {
        Err(Error::Domain(m)) => usage(m),
        Err(err) => Output {
            json: to_json(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "error": err.to_string() })),
            code: error_exit_code(&err),
        },
        Ok(suites) => {
            let passed = suites.iter().all(|s| s.passed());
            let total: usize = suites.iter().map(|s| s.cases).sum();
            Output {
                json: to_json(&json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "scope": scope,
                    "passed": passed,
                    "cases": total,
                    "suites": suites,
                })),
                code: if passed { EXIT_OK } else { EXIT_INTEGRITY },
            }
        }
    }
}
