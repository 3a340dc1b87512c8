//! All acceptance criteria at full resolution; one PASS/FAIL line each.

use strict_dpp::verify::{run_with, VerifyOptions};

fn main() {
    // each report opens with its PASS/FAIL line, followed by the measured residuals
    let results = run_with(&[], &VerifyOptions { fast: false }, |r| println!("{r}"));
    let failed = results.iter().filter(|r| !r.passed()).count();
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
