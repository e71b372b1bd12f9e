//! Runs every acceptance criterion at its stated tolerance and time budget
//! and prints one line per criterion. Set `QCALC_SEED` to vary the random
//! instances.

use std::process::ExitCode;

use qcalc_core::verify::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("QCALC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let outcomes = run_all(seed);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes
        .iter()
        .filter(|o| o.pass && o.within_budget())
        .count();
    println!(
        "acceptance: {passed}/{} criteria passed (seed {seed})",
        outcomes.len()
    );
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
