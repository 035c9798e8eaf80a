//! Command-line front end: CSV/JSON emission of measures, regions, tangent
//! constructions, decrease profiles, curvature tables, fuzz reports, and
//! oracle comparisons.
//!
//! Output contract: numbers are printed with 12 significant digits and
//! infinities as the strings `"inf"`/`"-inf"`; identical arguments (and
//! seeds) produce byte-identical output. Exit codes: 0 on success, 2 on
//! usage errors, 1 on any invariant or verification failure, with a JSON
//! `{"error": ...}` reason on stderr.
//!
//! CSV headers are fixed:
//! - `region`:   `series,k,l,lambda,info,dist` (series `cloud` or `family`)
//! - `decrease`: `info,amount,rate`
//! - `table1` (with `--csv`): `info,dist,sign`

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use infodist::entropy::{entropy_reduction_single, EntropyMethod};
use infodist::measures::{
    estimation_fidelity_single, operation_fidelity_single, outcome_probability,
    physical_reversibility_single, additive_measures_single, average_measures_tol,
    DistKind, InfoKind, MeasurePair,
};
use infodist::optimal::{
    build_type1, build_type2, check_saturation, solve_lambda_for_info, Inequality, InfoTarget,
    SaturationReport, Verdict,
};
use infodist::oracle::{oracle_f, oracle_g, oracle_i, oracle_r, sample_haar, OperatorMatrix};
use infodist::region::{
    curvature_sign, decrease_profile, single_outcome_region, tangent_from_identity,
    TangentResult,
};
use infodist::spectrum::Spectrum;
use infodist::verify::{fuzz_inequalities, fuzz_tangents};
use infodist::Error;

#[derive(Parser)]
#[command(name = "infodist", version, about = "Information-disturbance measures of quantum measurements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    IgDf,
    IgDr,
    IDf,
    IDr,
}

impl PairArg {
    fn pair(self) -> MeasurePair {
        match self {
            PairArg::IgDf => MeasurePair::IG_DF,
            PairArg::IgDr => MeasurePair::IG_DR,
            PairArg::IDf => MeasurePair::I_DF,
            PairArg::IDr => MeasurePair::I_DR,
        }
    }

    fn name(self) -> &'static str {
        match self {
            PairArg::IgDf => "ig-df",
            PairArg::IgDr => "ig-dr",
            PairArg::IDf => "i-df",
            PairArg::IDr => "i-dr",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Quadrature,
    Mc,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ig,
    I,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Df,
    Dr,
}

#[derive(Subcommand)]
enum Command {
    /// All single-outcome measures of one operator spectrum, as JSON.
    Measures {
        #[arg(long)]
        dim: usize,
        /// Comma-separated singular values, largest scale arbitrary.
        #[arg(long)]
        sigma: String,
        #[arg(long, value_enum, default_value = "quadrature")]
        method: MethodArg,
        /// Tolerance for the entropy reduction.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Single-outcome region data (point cloud + family curves) as CSV.
    Region {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        pair: PairArg,
        /// Samples per family curve; the cloud gets 20x this count.
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: String,
    },
    /// Tangent line from the identity point to the (1, d-1) curve, as JSON.
    Tangent {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        pair: PairArg,
    },
    /// Disturbance decrease from the boundary curve to the tangent line, CSV.
    Decrease {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        pair: PairArg,
        /// Number of interior information grid points.
        #[arg(long, default_value_t = 50)]
        grid: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
    /// Optimal measurement attaining a given information, as JSON.
    Optimal {
        #[arg(long)]
        dim: usize,
        /// Which information measure the target refers to.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Target information in bits.
        #[arg(long)]
        target: f64,
        /// Disturbance plane used by the entropy-based construction.
        #[arg(long, value_enum, default_value = "df")]
        dist: DistArg,
    },
    /// Curvature-sign table of the (1, d-1) lower boundary, JSON or CSV.
    Table1 {
        #[arg(long)]
        dim: usize,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Fuzz the four tradeoff inequalities with random measurements, JSON.
    Verify {
        /// Comma-separated dimensions.
        #[arg(long, default_value = "2,3,4")]
        dims: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare closed forms against the sampling oracle, as JSON.
    Oracle {
        #[arg(long)]
        dim: usize,
        /// Comma-separated singular values of a diagonal operator.
        #[arg(long)]
        sigma: String,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    Lib(Error),
    Verification(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code_msg(&self) -> (u8, String) {
        match self {
            CliError::Verification(m) => (1, m.clone()),
            CliError::Lib(e) => {
                let code = match e {
                    Error::InvalidArgument(_)
                    | Error::InvalidSpectrum(_)
                    | Error::TargetOutOfRange { .. } => 2,
                    _ => 1,
                };
                (code, e.to_string())
            }
        }
    }
}

/// Round to 12 significant digits so the JSON number printer emits at most
/// 12 significant digits.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        x
    } else {
        format!("{x:.11e}").parse().unwrap()
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(sig12(x))
    } else if x > 0.0 {
        Value::String("inf".into())
    } else if x < 0.0 {
        Value::String("-inf".into())
    } else {
        Value::Null
    }
}

fn csv_f(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn parse_sigma(dim: usize, sigma: &str) -> Result<Spectrum<f64>, CliError> {
    let vals: Result<Vec<f64>, _> = sigma.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| {
        CliError::Lib(Error::InvalidArgument(format!("cannot parse --sigma: {e}")))
    })?;
    if vals.len() != dim {
        return Err(CliError::Lib(Error::InvalidArgument(format!(
            "--sigma has {} values but --dim is {dim}",
            vals.len()
        ))));
    }
    Ok(Spectrum::new(vals)?)
}

fn parse_dims(dims: &str) -> Result<Vec<usize>, CliError> {
    let vals: Result<Vec<usize>, _> = dims.split(',').map(|t| t.trim().parse::<usize>()).collect();
    vals.map_err(|e| CliError::Lib(Error::InvalidArgument(format!("cannot parse --dims: {e}"))))
}

fn tangent_json(t: &TangentResult, name: &str) -> Value {
    json!({
        "pair": name,
        "dim": t.dim,
        "lambda_t": num(t.lambda_t),
        "info_t": num(t.info_t),
        "dist_t": num(t.dist_t),
        "slope": num(t.slope),
    })
}

fn report_json(r: &SaturationReport) -> Value {
    let name = match r.inequality {
        Inequality::Gf => "gf",
        Inequality::Gr => "gr",
        Inequality::If => "if",
        Inequality::Ir => "ir",
    };
    let verdict = match r.verdict {
        Verdict::Saturated => "saturated",
        Verdict::Satisfied => "satisfied",
        Verdict::Violated => "violated",
    };
    json!({
        "inequality": name,
        "left": num(r.left),
        "right": num(r.right),
        "residual": num(r.residual),
        "verdict": verdict,
    })
}

fn write_out(out: Option<&str>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Lib(Error::InvalidArgument(format!("cannot write {path}: {e}")))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measures { dim, sigma, method, tol } => {
            let s = parse_sigma(dim, &sigma)?;
            let method = match method {
                MethodArg::Quadrature => EntropyMethod::Quadrature,
                MethodArg::Mc => EntropyMethod::MonteCarlo,
            };
            let est = entropy_reduction_single(&s, method, tol)?;
            let (ig, df, dr) = additive_measures_single(&s);
            let g = estimation_fidelity_single(&s);
            let f = operation_fidelity_single(&s);
            let r = physical_reversibility_single(&s);
            let out = json!({
                "dim": dim,
                "sigma": s.values().iter().map(|&v| num(v)).collect::<Vec<_>>(),
                "p": num(outcome_probability(&s)),
                "g": num(g),
                "f": num(f),
                "r": num(r),
                "one_minus_f": num(1.0 - f),
                "one_minus_r": num(1.0 - r),
                "i_g": num(ig),
                "d_f": num(df),
                "d_r": num(dr),
                "i": num(est.value),
                "i_std_err": est.std_err.map(num).unwrap_or(Value::Null),
            });
            println!("{out}");
            Ok(())
        }
        Command::Region { dim, pair, resolution, seed, out } => {
            let samples = single_outcome_region(dim, pair.pair(), resolution, seed)?;
            let mut csv = String::from("series,k,l,lambda,info,dist\n");
            for &(x, y) in &samples.cloud {
                csv.push_str(&format!("cloud,,,,{},{}\n", csv_f(x), csv_f(y)));
            }
            for c in &samples.curves {
                for s in &c.samples {
                    csv.push_str(&format!(
                        "family,{},{},{},{},{}\n",
                        c.k,
                        c.l,
                        csv_f(s.lambda),
                        csv_f(s.info),
                        csv_f(s.dist)
                    ));
                }
            }
            write_out(Some(&out), &csv)
        }
        Command::Tangent { dim, pair } => {
            let t = tangent_from_identity(dim, pair.pair(), 1e-8)?;
            println!("{}", tangent_json(&t, pair.name()));
            Ok(())
        }
        Command::Decrease { dim, pair, grid, out } => {
            let t = tangent_from_identity(dim, pair.pair(), 1e-8)?;
            let profile = decrease_profile(dim, &t, grid)?;
            let mut csv = String::from("info,amount,rate\n");
            for p in &profile {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    csv_f(p.info),
                    csv_f(p.amount),
                    csv_f(p.rate)
                ));
            }
            write_out(out.as_deref(), &csv)
        }
        Command::Optimal { dim, kind, target, dist } => {
            let pair = match dist {
                DistArg::Df => MeasurePair::I_DF,
                DistArg::Dr => MeasurePair::I_DR,
            };
            let tangent = match kind {
                KindArg::I => tangent_from_identity(dim, pair, 1e-8).ok(),
                KindArg::Ig => None,
            };
            let (meas, construction, lam_json) = match kind {
                KindArg::Ig => {
                    let lam = solve_lambda_for_info(dim, InfoTarget::Ig, target)?;
                    (build_type1(dim, lam)?, "type1", json!({"lambda": num(lam)}))
                }
                KindArg::I => match &tangent {
                    Some(t) if target > 0.0 && target < t.info_t => {
                        let c = (target / t.info_t).sqrt();
                        (
                            build_type2(dim, target, t)?,
                            "type2",
                            json!({"lambda_t": num(t.lambda_t), "c": num(c)}),
                        )
                    }
                    _ => {
                        let lam = solve_lambda_for_info(dim, InfoTarget::I, target)?;
                        (build_type1(dim, lam)?, "type1", json!({"lambda": num(lam)}))
                    }
                },
            };
            let operators: Vec<Value> = meas
                .spectra()
                .iter()
                .map(|s| s.values().iter().map(|&v| num(v)).collect::<Vec<_>>().into())
                .collect();
            let mut averaged = serde_json::Map::new();
            for (name, p) in [
                ("i_g", MeasurePair::IG_DF),
                ("d_f", MeasurePair::IG_DF),
                ("d_r", MeasurePair::IG_DR),
                ("i", MeasurePair::I_DF),
            ] {
                let pt = average_measures_tol(&meas, p, 1e-9)?;
                let v = match name {
                    "i_g" | "i" => pt.info,
                    _ => pt.dist,
                };
                averaged.insert(name.into(), num(v));
            }
            let (tf, tr) = fuzz_tangents(dim);
            let mut reports = vec![
                report_json(&check_saturation(&meas, Inequality::Gf, None)?),
                report_json(&check_saturation(&meas, Inequality::Gr, None)?),
            ];
            if let Some(t) = &tf {
                reports.push(report_json(&check_saturation(&meas, Inequality::If, Some(t))?));
            }
            if let Some(t) = &tr {
                reports.push(report_json(&check_saturation(&meas, Inequality::Ir, Some(t))?));
            }
            let out = json!({
                "dim": dim,
                "kind": match kind { KindArg::Ig => "ig", KindArg::I => "i" },
                "target": num(target),
                "construction": construction,
                "parameters": lam_json,
                "outcomes": meas.outcomes(),
                "operator_spectra": operators,
                "averaged": averaged,
                "saturation": reports,
            });
            println!("{out}");
            Ok(())
        }
        Command::Table1 { dim, csv } => {
            let rows: [(&str, &str, MeasurePair); 8] = [
                ("G", "1-F", MeasurePair { info: InfoKind::G, dist: DistKind::OneMinusF }),
                ("G", "1-R", MeasurePair { info: InfoKind::G, dist: DistKind::OneMinusR }),
                ("I_G", "D_F", MeasurePair::IG_DF),
                ("I_G", "D_R", MeasurePair::IG_DR),
                ("I", "1-F", MeasurePair { info: InfoKind::I, dist: DistKind::OneMinusF }),
                ("I", "D_F", MeasurePair::I_DF),
                ("I", "1-R", MeasurePair { info: InfoKind::I, dist: DistKind::OneMinusR }),
                ("I", "D_R", MeasurePair::I_DR),
            ];
            let window = (0.02, 0.98);
            let mut entries = Vec::new();
            for (info, dist, pair) in rows {
                let sign = curvature_sign(dim, pair, window)?;
                entries.push((info, dist, sign.to_string()));
            }
            if csv {
                let mut out = String::from("info,dist,sign\n");
                for (i, d, s) in &entries {
                    out.push_str(&format!("{i},{d},{s}\n"));
                }
                print!("{out}");
            } else {
                let list: Vec<Value> = entries
                    .iter()
                    .map(|(i, d, s)| json!({"info": i, "dist": d, "sign": s}))
                    .collect();
                println!(
                    "{}",
                    json!({"dim": dim, "window": [num(window.0), num(window.1)], "entries": list})
                );
            }
            Ok(())
        }
        Command::Verify { dims, trials, seed } => {
            let d_list = parse_dims(&dims)?;
            let report = fuzz_inequalities(&d_list, trials, seed)?;
            let per_dim: Vec<Value> = report
                .per_dim
                .iter()
                .map(|d| {
                    json!({
                        "dim": d.dim,
                        "trials": d.trials,
                        "min_residuals": {
                            "gf": num(d.min_residuals[0]),
                            "gr": num(d.min_residuals[1]),
                            "if": num(d.min_residuals[2]),
                            "ir": num(d.min_residuals[3]),
                        },
                        "violations": d.violations,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({
                    "seed": report.seed,
                    "total_violations": report.total_violations(),
                    "per_dim": per_dim,
                })
            );
            if report.total_violations() > 0 {
                return Err(CliError::Verification(format!(
                    "{} of {} random measurements violated a tradeoff inequality",
                    report.total_violations(),
                    trials * d_list.len()
                )));
            }
            Ok(())
        }
        Command::Oracle { dim, sigma, samples, seed } => {
            let s = parse_sigma(dim, &sigma)?;
            let e = sample_haar(dim, samples, seed)?;
            let op = OperatorMatrix::from_spectrum(&s);
            let closed_i = entropy_reduction_single(&s, EntropyMethod::Quadrature, 1e-8)?.value;
            let closed = [
                ("g", estimation_fidelity_single(&s), oracle_g(&e, &op)?),
                ("f", operation_fidelity_single(&s), oracle_f(&e, &op)?),
                ("r", physical_reversibility_single(&s), oracle_r(&e, &op)?),
                ("i", closed_i, oracle_i(&e, &op)?),
            ];
            let mut measures = serde_json::Map::new();
            for (name, cv, est) in closed {
                let z = if est.std_err > 0.0 {
                    num((est.value - cv) / est.std_err)
                } else {
                    Value::Null
                };
                measures.insert(
                    name.into(),
                    json!({
                        "closed": num(cv),
                        "oracle": num(est.value),
                        "std_err": num(est.std_err),
                        "z": z,
                    }),
                );
            }
            println!(
                "{}",
                json!({
                    "dim": dim,
                    "samples": samples,
                    "seed": seed,
                    "measures": measures,
                })
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, msg) = e.code_msg();
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(code)
        }
    }
}
