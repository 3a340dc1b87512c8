use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::args::{parse_continuum_grid, parse_lattice_grid, Format, Grid, OutputArgs, ParamArgs};
use super::output::{csv_document, emit, extension, json_document, write_file, Metadata, ParamSummary};
use super::{Command, EXIT_CHECK_FAILED, EXIT_OK};
use crate::dpp::{estimate_correlation, SampleBatch, MIN_ESTIMATE_COUNT};
use crate::ensemble::{build_l, kernel_from_l, PointConfiguration, WeightFunction};
use crate::kernels::{
    gamma_scan, is_decreasing, plancherel_scan, scaling_scan, ContourForm, IntegrableVariant, Kernel, KernelFamily,
    KernelParams, KernelSpec, LimitKind, ScanPoint,
};
use crate::numerics::TruncatedOperator;
use crate::partitions::{Mixing, ModelParams, PlancherelParams};
use crate::verify::{self, CheckResult, Suite, VerifyOptions};
use crate::{Error, Result, TOLERANCES};

pub fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Eval {
            family,
            params,
            grid,
            u,
            output,
        } => eval(family, &params, grid, u, &output),
        Command::Verify {
            suites,
            fast,
            output,
            format,
        } => verify(&suites, fast, output, format),
        Command::Sample {
            family,
            params,
            window,
            count,
            seed,
            from_measure,
            output,
        } => sample(family, &params, window, count, seed, from_measure, &output),
        Command::Limits {
            limits,
            alpha,
            theta,
            xi,
            fast,
            output,
        } => limit_scans(&limits, alpha, theta, xi, fast, &output),
        Command::ExportGolden { dir, format } => export_golden(&dir, format),
    }
}

// eval

fn kernel_values(kernel: &Kernel, grid: &Grid) -> Result<Vec<Vec<f64>>> {
    let n = grid.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let computed = pairs
        .par_iter()
        .map(|&(i, j)| {
            let v = match grid {
                Grid::Lattice(s) => kernel.lattice(s[i], s[j])?,
                Grid::Continuum(s) => kernel.continuum(s[i], s[j])?,
            };
            Ok(((i, j), v))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut values = vec![vec![0.0; n]; n];
    for ((i, j), v) in computed {
        values[i][j] = v;
        values[j][i] = v;
    }
    Ok(values)
}

#[derive(Serialize)]
struct KernelTable<'a> {
    family: &'static str,
    params: KernelParams,
    grid: &'a Grid,
    /// Row-major: `values[i][j] = K(grid[i], grid[j])`.
    values: Vec<Vec<f64>>,
}

fn kernel_artifact(spec: &KernelSpec, grid: &Grid, format: Format) -> Result<Vec<u8>> {
    let values = kernel_values(&spec.build()?, grid)?;
    let mut meta = Metadata::new("eval");
    meta.family = Some(spec.family.name().to_string());
    meta.params = Some(ParamSummary::from(&spec.params));
    meta.n = Some(grid.len());
    match format {
        Format::Json => json_document(
            &meta,
            &KernelTable {
                family: spec.family.name(),
                params: spec.params,
                grid,
                values,
            },
        ),
        Format::Csv => {
            let n = grid.len();
            let rows: Vec<Vec<String>> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| vec![grid.label(i), grid.label(j), values[i][j].to_string()])
                .collect();
            csv_document(&meta, &[], &["x", "y", "value"], &rows)
        }
    }
}

fn eval(family: KernelFamily, params: &ParamArgs, grid: Option<String>, u: Option<String>, out: &OutputArgs) -> Result<u8> {
    let spec = params.spec(family)?;
    let grid = match (family.is_lattice(), grid, u) {
        (true, Some(g), None) => Grid::Lattice(parse_lattice_grid(&g)?),
        (false, None, Some(u)) => Grid::Continuum(parse_continuum_grid(&u)?),
        (true, ..) => return Err(Error::invalid(format!("{family} is a lattice kernel: give --grid a..b"))),
        (false, ..) => return Err(Error::invalid(format!("{family} lives on the half-line: give --u start:stop:step"))),
    };
    let bytes = kernel_artifact(&spec, &grid, out.format())?;
    emit(out, &bytes)?;
    Ok(EXIT_OK)
}

// verify

#[derive(Serialize)]
struct VerifyReport<'a> {
    fast: bool,
    suites: Vec<&'static str>,
    passed: usize,
    total: usize,
    results: &'a [CheckResult],
}

fn verify(suites: &[Suite], fast: bool, output: Option<PathBuf>, format: Option<Format>) -> Result<u8> {
    let out = OutputArgs { output, format };
    let opts = VerifyOptions { fast };
    let results = verify::run_with(suites, &opts, |r| println!("{r}"));
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} checks passed", results.len());
    if out.output.is_some() {
        let meta = Metadata::new("verify");
        let bytes = match out.format() {
            Format::Json => json_document(
                &meta,
                &VerifyReport {
                    fast,
                    suites: suites.iter().map(|s| s.name()).collect(),
                    passed,
                    total: results.len(),
                    results: &results,
                },
            )?,
            Format::Csv => {
                let mut rows = Vec::new();
                for r in &results {
                    let head = |label: &str, value: String, condition: String, ok: bool| {
                        vec![r.id.to_string(), r.suite.name().to_string(), r.title.to_string(), label.to_string(), value, condition, ok.to_string()]
                    };
                    if let Some(e) = &r.error {
                        rows.push(head("error", String::new(), e.clone(), false));
                    }
                    for m in &r.measurements {
                        rows.push(head(&m.label, m.value.to_string(), m.condition.clone(), m.passed));
                    }
                }
                csv_document(&meta, &[], &["id", "suite", "title", "measurement", "value", "condition", "passed"], &rows)?
            }
        };
        emit(&out, &bytes)?;
    }
    Ok(if passed == results.len() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

// sample

#[derive(Serialize)]
struct SummaryRow {
    x: u32,
    estimate: f64,
    std_error: f64,
    /// `K(x, x)`, the exact one-point function.
    kernel_diagonal: f64,
}

#[derive(Serialize)]
struct SampleArtifact<'a> {
    batch: &'a SampleBatch,
    summary: Option<Vec<SummaryRow>>,
}

fn default_window(params: &KernelParams) -> Result<usize> {
    let psi = match *params {
        KernelParams::Model(m) => WeightFunction::NuXi(m),
        KernelParams::Plancherel(p) => WeightFunction::Theta(p),
        KernelParams::Alpha { .. } => {
            return Err(Error::invalid("this kernel has no weight function to size the window: give --window"))
        }
    };
    Ok(psi.window(TOLERANCES.window_tail)? as usize)
}

fn sample(
    family: KernelFamily,
    params: &ParamArgs,
    window: Option<usize>,
    count: usize,
    seed: u64,
    from_measure: bool,
    out: &OutputArgs,
) -> Result<u8> {
    let spec = params.spec(family)?;
    if !family.is_lattice() {
        return Err(Error::invalid(format!("{family} is a continuum kernel; only lattice processes can be sampled")));
    }
    if count == 0 {
        return Err(Error::invalid("--count must be positive"));
    }
    let (batch, n) = if from_measure {
        let mixing = match spec.params {
            KernelParams::Model(m) => Mixing::from(m),
            KernelParams::Plancherel(p) => Mixing::from(p),
            KernelParams::Alpha { .. } => {
                return Err(Error::invalid("--from-measure needs a partition measure (a hyper-* family or plancherel-bessel)"))
            }
        };
        if window.is_some() {
            return Err(Error::invalid("--window does not apply with --from-measure"));
        }
        let cap = TOLERANCES.enumeration_cap;
        (SampleBatch::from_measure(mixing, cap, count, seed)?, cap)
    } else {
        let n = match window {
            Some(0) => return Err(Error::invalid("--window must be positive")),
            Some(n) => n,
            None => default_window(&spec.params)?,
        };
        (SampleBatch::from_kernel(spec, n, count, seed)?, n)
    };

    let summary = if count >= MIN_ESTIMATE_COUNT {
        let kernel = spec.build()?;
        let top = 10.min(n as u32);
        let rows = (1..=top)
            .map(|x| {
                let est = estimate_correlation(&batch, &PointConfiguration::new(vec![x])?)?;
                Ok(SummaryRow {
                    x,
                    estimate: est.estimate,
                    std_error: est.std_error,
                    kernel_diagonal: kernel.lattice(x, x)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some(rows)
    } else {
        eprintln!("note: no correlation summary below {MIN_ESTIMATE_COUNT} samples");
        None
    };

    let mut meta = Metadata::new("sample");
    meta.family = Some(family.name().to_string());
    meta.params = Some(ParamSummary::from(&spec.params));
    meta.n = Some(n);
    meta.seed = Some(seed);
    meta.count = Some(count);
    let bytes = match out.format() {
        Format::Json => json_document(
            &meta,
            &SampleArtifact {
                batch: &batch,
                summary,
            },
        )?,
        Format::Csv => {
            let comments: Vec<String> = summary
                .iter()
                .flatten()
                .map(|r| {
                    format!(
                        "rho({}) = {} +- {} (K(x,x) = {})",
                        r.x, r.estimate, r.std_error, r.kernel_diagonal
                    )
                })
                .collect();
            let rows: Vec<Vec<String>> = batch
                .configurations
                .iter()
                .map(|c| {
                    let sites: Vec<String> = c.sites().iter().map(u32::to_string).collect();
                    vec![sites.join(" ")]
                })
                .collect();
            csv_document(&meta, &comments, &["configuration"], &rows)?
        }
    };
    emit(out, &bytes)?;
    Ok(EXIT_OK)
}

// limits

#[derive(Serialize)]
struct Scan {
    limit: LimitKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    /// Lattice grid `{1..grid}^2`, or the half-line points of the scaling limit.
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<f64>>,
    scan: Vec<ScanPoint>,
    decreasing: bool,
}

fn parse_xis(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad xi list '{s}'")))
        })
        .collect()
}

fn limit_scans(kinds: &[LimitKind], alpha: Option<f64>, theta: Option<f64>, xi: Option<String>, fast: bool, out: &OutputArgs) -> Result<u8> {
    let kinds = if kinds.is_empty() { LimitKind::ALL.to_vec() } else { kinds.to_vec() };
    let xis = xi.as_deref().map(parse_xis).transpose()?;
    let grid = if fast { 3 } else { 6 };
    let mut scans = Vec::new();
    for kind in kinds {
        let xis = xis.clone().unwrap_or_else(|| kind.default_xis().to_vec());
        let scan = match kind {
            LimitKind::Plancherel => {
                let theta = theta.unwrap_or(1.0);
                let points = plancherel_scan(PlancherelParams::new(theta)?, &xis, grid)?;
                Scan {
                    limit: kind,
                    theta: Some(theta),
                    grid: Some(grid),
                    points: None,
                    decreasing: is_decreasing(&points),
                    scan: points,
                }
            }
            LimitKind::Gamma => {
                // nu = 0.3
                let points = gamma_scan(alpha.unwrap_or(0.16), &xis, grid)?;
                Scan {
                    limit: kind,
                    theta: None,
                    grid: Some(grid),
                    points: None,
                    decreasing: is_decreasing(&points),
                    scan: points,
                }
            }
            LimitKind::Scaling => {
                let at: Vec<f64> = if fast { vec![1.0] } else { vec![0.5, 1.0, 2.0] };
                // nu = 0.25
                let points = scaling_scan(alpha.unwrap_or(0.1875), &xis, &at)?;
                Scan {
                    limit: kind,
                    theta: None,
                    grid: None,
                    points: Some(at),
                    decreasing: is_decreasing(&points),
                    scan: points,
                }
            }
        };
        for p in &scan.scan {
            eprintln!("{:<10} xi={:<8} alpha={:<10} max error {:.3e}", scan.limit.name(), p.xi, p.alpha, p.max_error);
        }
        if !scan.decreasing {
            eprintln!("{}: error does not decrease along the scan", scan.limit.name());
        }
        scans.push(scan);
    }
    let meta = Metadata::new("limits");
    let bytes = match out.format() {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                scans: &'a [Scan],
            }
            json_document(&meta, &Body { scans: &scans })?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = scans
                .iter()
                .flat_map(|s| {
                    s.scan.iter().map(move |p| {
                        vec![s.limit.name().to_string(), p.xi.to_string(), p.alpha.to_string(), p.max_error.to_string()]
                    })
                })
                .collect();
            csv_document(&meta, &[], &["limit", "xi", "alpha", "max_error"], &rows)?
        }
    };
    emit(out, &bytes)?;
    Ok(if scans.iter().all(|s| s.decreasing) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

// export-golden

fn operator_artifact(label: &str, params: KernelParams, op: &TruncatedOperator, format: Format) -> Result<Vec<u8>> {
    let mut meta = Metadata::new("export-golden");
    meta.params = Some(ParamSummary::from(&params));
    meta.n = Some(op.size());
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                operator: &'a str,
                params: KernelParams,
                #[serde(rename = "N")]
                n: usize,
                /// Row-major.
                entries: Vec<f64>,
            }
            json_document(
                &meta,
                &Body {
                    operator: label,
                    params,
                    n: op.size(),
                    entries: op.row_major(),
                },
            )
        }
        Format::Csv => {
            let n = op.size();
            let rows: Vec<Vec<String>> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| vec![(i + 1).to_string(), (j + 1).to_string(), op.get(i, j).to_string()])
                .collect();
            csv_document(&meta, &[format!("operator: {label}")], &["x", "y", "value"], &rows)
        }
    }
}

fn export_golden(dir: &Path, format: Format) -> Result<u8> {
    let model = ModelParams::new(1.0, 0.4)?;
    let theta = PlancherelParams::new(1.0)?;
    let lattice = Grid::Lattice((1..=8).collect());
    let small = Grid::Lattice((1..=5).collect());
    let continuum = Grid::Continuum((1..=8).map(|k| 0.5 * k as f64).collect());
    let cases = [
        (KernelFamily::HyperSeries, KernelParams::Model(model), &lattice),
        (KernelFamily::HyperIntegrable(IntegrableVariant::A1), KernelParams::Model(model), &lattice),
        (KernelFamily::HyperIntegrable(IntegrableVariant::A2), KernelParams::Model(model), &lattice),
        (KernelFamily::HyperContour(ContourForm::First), KernelParams::Model(model), &small),
        (KernelFamily::HyperContour(ContourForm::Second), KernelParams::Model(model), &small),
        (KernelFamily::PlancherelBessel, KernelParams::Plancherel(theta), &lattice),
        (KernelFamily::GammaLimit, KernelParams::alpha(0.16)?, &lattice),
        (KernelFamily::MacdonaldWhittaker, KernelParams::alpha(0.1875)?, &continuum),
        (KernelFamily::MacdonaldBessel, KernelParams::alpha(0.1875)?, &continuum),
    ];
    // compute everything before touching the file system
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    for (family, params, grid) in cases {
        let spec = KernelSpec::new(family, params)?;
        files.push((format!("kernel-{}", family.name()), kernel_artifact(&spec, grid, format)?));
    }
    for (name, psi, params, n) in [
        ("nuxi", WeightFunction::NuXi(model), KernelParams::Model(model), 40),
        ("theta", WeightFunction::Theta(theta), KernelParams::Plancherel(theta), 30),
    ] {
        let l = build_l(&psi, n)?;
        let k = kernel_from_l(&l)?;
        files.push((format!("operator-l-{name}"), operator_artifact("L", params, &l, format)?));
        files.push((format!("operator-k-{name}"), operator_artifact("K = L(1+L)^-1", params, &k, format)?));
    }
    fs::create_dir_all(dir)?;
    for (stem, bytes) in &files {
        let path = dir.join(format!("{stem}.{}", extension(format)));
        write_file(&path, bytes)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(EXIT_OK)
}
