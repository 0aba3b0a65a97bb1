//! Run the seeded randomised invariant sweeps and print the table.

use monograph::check::{run_checks, DEFAULT_SEED};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    for outcome in run_checks(seed) {
        println!("{} {}: {}", if outcome.passed { "PASS" } else { "FAIL" }, outcome.name, outcome.detail);
    }
}
