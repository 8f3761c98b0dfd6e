//! Regenerates `crates/cli/fixtures` from the built-in corpus:
//!
//!     cargo run -p reflmono-cli --example gen_fixtures

use std::fs;

use reflmono::fixtures::corpus;
use reflmono::par::Exec;
use reflmono_cli::corpus_files::{fixtures_dir, manifest, manifest_json, rbar_file, rbar_json};
use reflmono_cli::run::{run_analyze, AnalyzeArgs};

fn main() -> std::io::Result<()> {
    let dir = fixtures_dir();
    fs::create_dir_all(dir.join("golden"))?;
    for f in corpus() {
        fs::write(dir.join(format!("{}.json", f.name)), f.to_json())?;
        if let (Some(file), Some(text)) = (rbar_file(&f), rbar_json(&f)) {
            fs::write(dir.join(file), text)?;
        }
    }
    fs::write(dir.join("manifest.json"), manifest_json())?;
    for m in manifest() {
        let report = run_analyze(&AnalyzeArgs {
            datum: dir.join(&m.datum),
            chi: m.chi.clone(),
            rbar: m.rbar.as_ref().map(|r| dir.join(r)),
            convention: None,
            exec: Exec::Sequential,
        });
        if report.exit_code != m.expected_exit {
            eprintln!("{} {}: exit {} (expected {})", m.name, m.chi, report.exit_code, m.expected_exit);
        }
        fs::write(dir.join(&m.golden), report.to_json())?;
    }
    println!("wrote {} runs to {}", manifest().len(), dir.display());
    Ok(())
}
