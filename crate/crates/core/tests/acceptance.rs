//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use ultralogic::suite::{run_all, CRITERIA, SUITE_BUDGET};

const SEED: u64 = 7;

fn main() -> ExitCode {
    let start = Instant::now();
    let results = run_all(SEED);
    for r in &results {
        println!("{r}");
    }
    let elapsed = start.elapsed();
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed} of {} criteria passed in {:.1} s (seed {SEED})", CRITERIA.len(), elapsed.as_secs_f64());

    if results.len() != CRITERIA.len() || passed != results.len() {
        return ExitCode::FAILURE;
    }
    if elapsed > SUITE_BUDGET {
        println!("suite exceeded its {} s budget", SUITE_BUDGET.as_secs());
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
