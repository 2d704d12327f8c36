//! Re-validate the bundled reference data.
use grassfrieze::cli::{default_fixture_dir, fixtures_verify};

fn main() -> grassfrieze::Result<()> {
    let report = fixtures_verify(&default_fixture_dir())?;
    for r in &report.results {
        println!("{} {:<40} {}", if r.passed { "ok  " } else { "FAIL" }, r.name, r.detail);
    }
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
