//! Writes `L` and `K` on a window as JSON goldens, and the kernel on a grid
//! through the command-line front end.
//!
//! Run with `cargo run --example export -- <dir>`.

use std::fs::File;
use std::path::PathBuf;

use strict_dpp::ensemble::{build_l, kernel_from_l, write_operator_json, WeightFunction};
use strict_dpp::{ModelParams, Result};

fn main() -> Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "goldens".into()));
    std::fs::create_dir_all(&dir)?;
    let params = ModelParams::new(1.0, 0.4)?;
    let l = build_l(&WeightFunction::NuXi(params), 20)?;
    let k = kernel_from_l(&l)?;
    write_operator_json(File::create(dir.join("l.json"))?, &params, &l)?;
    write_operator_json(File::create(dir.join("k.json"))?, &params, &k)?;

    let out = dir.join("kernel.csv");
    let args = ["strict-dpp", "eval", "--family", "hyper-series", "--alpha", "1", "--xi", "0.4", "--grid", "1..10", "-o"];
    let code = strict_dpp::cli::run(args.iter().map(|s| s.to_string()).chain([out.display().to_string()]));
    println!("wrote {} ({code:?})", dir.display());
    Ok(())
}
