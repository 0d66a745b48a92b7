//! Acceptance suite: one line per numbered criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use qcr_core::roof::RoofConfig;
use qcr_core::verify::{self, Status, CRITERIA};

fn main() -> ExitCode {
    let config = RoofConfig::default();
    let started = Instant::now();
    let mut failed = 0;
    for k in 1..=CRITERIA.len() {
        let t = Instant::now();
        let check = verify::criterion(k, &config);
        println!("{check}  [{:.1}s]", t.elapsed().as_secs_f64());
        if check.status == Status::Fail {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        CRITERIA.len() - failed,
        CRITERIA.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
