//! One pass/fail line per acceptance criterion.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use nagata::suite::{run_criterion, CriterionResult, FIXTURES};

/// Criterion 9 also requires the command line to exit 1 on every fixture.
fn cli_exit_codes() -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join("corrupted");
    FIXTURES
        .iter()
        .filter_map(|f| {
            let status = Command::new(env!("CARGO_BIN_EXE_nagata"))
                .arg("check")
                .arg(dir.join(f.file))
                .output()
                .map(|o| o.status.code());
            match status {
                Ok(Some(1)) => None,
                other => Some(format!("{}: exit {other:?}", f.file)),
            }
        })
        .collect()
}

fn line(c: &CriterionResult, extra: &[String], secs: f64) -> (bool, String) {
    let passed = c.passed() && extra.is_empty();
    let mut s = format!(
        "criterion {}: {} - {} ({} checks, {secs:.2}s)",
        c.number,
        if passed { "PASS" } else { "FAIL" },
        c.title,
        c.outcomes.len()
    );
    for o in c.failures().take(5) {
        s.push_str(&format!("\n    {}: {}", o.subject, o.report));
    }
    for e in extra {
        s.push_str(&format!("\n    {e}"));
    }
    (passed, s)
}

fn main() -> ExitCode {
    let mut all = true;
    for n in 1..=9 {
        let start = Instant::now();
        let c = run_criterion(n);
        let extra = if n == 9 { cli_exit_codes() } else { Vec::new() };
        let (passed, text) = line(&c, &extra, start.elapsed().as_secs_f64());
        all &= passed;
        println!("{text}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
