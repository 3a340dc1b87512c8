//! Runs the verification harness, fast mode unless `--full` is given.
//!
//! Run with `cargo run --release --example verify [-- --full]`.

use strict_dpp::verify::{run_with, VerifyOptions};

fn main() {
    let fast = !std::env::args().any(|a| a == "--full");
    let results = run_with(&[], &VerifyOptions { fast }, |r| println!("{r}"));
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
