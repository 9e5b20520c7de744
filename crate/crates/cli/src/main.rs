//! `dwell` — analyze the double-well variational problem from a JSON
//! config: validate the data, solve for the stationary profile, certify the
//! sup-norm local maximum, run the Lp and rate probes, check the three
//! candidate profiles, and aggregate everything into a machine-readable
//! report. Outputs are UTF-8 JSON plus CSV in the fixed schema
//! `series,index,x_or_n,value_1,value_2,bound,verdict`.

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dwell_core::functional::{eval_k, PNorm};
use dwell_core::grid::GridFunction;
use dwell_core::probe::{
    bump_profile, c1_norm, candidate_profiles, evaluate_assertions, frechet_probe,
    integrate_profile, local_max_certificate, lp_nonextremum_probe, stationarity_residual,
    stationary_point, sup_norm_probe,
};
use dwell_core::problem::{build_potential, validate_forcing, Problem, ValidationReport};
use dwell_core::radial::{radial_refutation, validate_radial, RadialProbeOptions};
use dwell_core::report::{to_csv, CertificateReport, ProbeSample};

#[derive(Parser)]
#[command(
    name = "dwell",
    version,
    about = "Numerical extremum analysis for a nonconvex double-well integral functional"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Problem config (JSON, schema 1)
    #[arg(long)]
    config: PathBuf,
    /// Output directory for JSON/CSV artifacts
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed for all randomized probes
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Override the grid interval count from the config
    #[arg(long)]
    m: Option<usize>,
    /// Override the relative tolerance of slope verdicts
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the admissibility conditions of the forcing
    Validate(CommonArgs),
    /// Solve for the stationary profile and its certificate
    Solve(CommonArgs),
    /// Randomized sup-norm local-max trials
    ProbeSup {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Lp non-extremum demonstration (spike + smooth series)
    ProbeLp {
        #[command(flatten)]
        common: CommonArgs,
        /// Norm exponent in [1, 4)
        #[arg(long, default_value = "2")]
        p: String,
        /// Spike exponent gamma in ((p-1)/3, 1)
        #[arg(long)]
        gamma: Option<f64>,
        /// Spike indices, comma separated
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u64>>,
    },
    /// Differentiability rate probe along spike families
    Frechet {
        #[command(flatten)]
        common: CommonArgs,
        /// Norm exponent >= 1 or `inf`
        #[arg(long, default_value = "2")]
        p: String,
        /// Moment power (2, 3 or 4)
        #[arg(long, default_value_t = 4)]
        s: u32,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u64>>,
        /// Probe at the stationary profile instead of the well-reaching arch
        #[arg(long)]
        at_stationary: bool,
    },
    /// The three branch candidate profiles and their endpoint table
    Candidates(CommonArgs),
    /// Full pipeline on the radially symmetric annulus problem
    Radial {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u64>>,
    },
    /// Aggregate summary: which extremizer assertions hold
    Report {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

const DEFAULT_SPIKE_NS: [u64; 4] = [10, 100, 1_000, 10_000];
const DEFAULT_FIT_NS: [u64; 5] = [
    1_000_000,
    10_000_000,
    100_000_000,
    1_000_000_000,
    10_000_000_000,
];

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    config: String,
    seed: u64,
    out_dir: String,
    m_override: Option<usize>,
    tol_override: Option<f64>,
    timestamp_unix: u64,
    version: &'a str,
}

fn write_manifest(common: &CommonArgs, command: &str) -> Result<()> {
    let manifest = RunManifest {
        command,
        config: common.config.display().to_string(),
        seed: common.seed,
        out_dir: common.out.display().to_string(),
        m_override: common.m,
        tol_override: common.tol,
        timestamp_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        version: env!("CARGO_PKG_VERSION"),
    };
    write_json(&common.out.join("run_manifest.json"), &manifest)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_csv_file(path: &Path, rows: &[String]) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, to_csv(rows)).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn parse_p(text: &str) -> Result<PNorm<f64>> {
    text.parse::<PNorm<f64>>()
        .map_err(|e| anyhow::anyhow!("--p: {e}"))
}

fn print_validation(r: &ValidationReport) {
    let flag = |ok: bool| if ok { "ok" } else { "FAIL" };
    println!(
        "balance:        {} (residual {:.3e})",
        flag(r.balance_ok),
        r.balance_residual
    );
    println!(
        "potential sign: {} ({:+})",
        flag(r.sign_ok),
        r.potential_sign
    );
    println!(
        "L1 smallness:   {} ({:.6} < {:.6})",
        flag(r.l1_ok),
        r.forcing_l1,
        r.l1_bound
    );
    println!(
        "potential sup:  {} ({:.6} < {:.6})",
        flag(r.finf_ok),
        r.potential_sup,
        r.sup_bound
    );
    println!("forcing zero crossings: {}", r.f_zero_crossings);
}

fn profile_rows(
    series: &str,
    v: &GridFunction<f64>,
    secondary: Option<&GridFunction<f64>>,
) -> Vec<String> {
    (0..v.values().len())
        .map(|i| {
            ProbeSample {
                series: series.to_string(),
                index: i as u64,
                x_or_n: v.x(i),
                value_1: v.value(i),
                value_2: secondary.map(|u| u.value(i)).unwrap_or(0.0),
                bound: 0.0,
                pass: true,
            }
            .csv_row()
        })
        .collect()
}

#[derive(Serialize)]
struct SolutionSummary {
    k_value: f64,
    stationarity_residual: f64,
    certificate: CertificateReport,
    profile_sup: f64,
    profile_c1_norm: f64,
    in_c0: bool,
}

fn solve_problem(
    problem: &Problem<f64>,
) -> Result<(GridFunction<f64>, GridFunction<f64>, SolutionSummary)> {
    let m = problem.default_m();
    let f_pot = build_potential(problem, m)?;
    let v_bar = stationary_point(problem, &f_pot)?;
    let u_bar = integrate_profile(&v_bar, 0.0)?;
    let cert = local_max_certificate(problem, &v_bar)?;
    let summary = SolutionSummary {
        k_value: eval_k(problem, &f_pot, &v_bar)?,
        stationarity_residual: stationarity_residual(problem, &f_pot, &v_bar, 20)?,
        certificate: CertificateReport {
            gamma_bar: cert.gamma_bar,
            eta: cert.eta,
            epsilon: cert.epsilon,
        },
        profile_sup: v_bar.sup_norm(),
        profile_c1_norm: c1_norm(&u_bar, &v_bar)?,
        in_c0: v_bar.in_c0(),
    };
    Ok((v_bar, u_bar, summary))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate(common) => {
            let problem = config::load_problem(&common.config, common.m)?;
            let report = validate_forcing(&problem)?;
            print_validation(&report);
            write_manifest(&common, "validate")?;
            write_json(&common.out.join("validate.json"), &report)?;
            Ok(report.all_ok())
        }
        Command::Solve(common) => {
            let problem = config::load_problem(&common.config, common.m)?;
            let (v_bar, u_bar, summary) = solve_problem(&problem)?;
            println!(
                "K = {:.12}, |T| <= {:.3e}, gamma_bar = {:.6}, eta = {:.6}, epsilon = {:.6}",
                summary.k_value,
                summary.stationarity_residual,
                summary.certificate.gamma_bar,
                summary.certificate.eta,
                summary.certificate.epsilon
            );
            write_manifest(&common, "solve")?;
            write_json(&common.out.join("solution.json"), &summary)?;
            write_csv_file(
                &common.out.join("solution.csv"),
                &profile_rows("profile", &v_bar, Some(&u_bar)),
            )?;
            Ok(true)
        }
        Command::ProbeSup { common, trials } => {
            let problem = config::load_problem(&common.config, common.m)?;
            let f_pot = build_potential(&problem, problem.default_m())?;
            let v_bar = stationary_point(&problem, &f_pot)?;
            let report = sup_norm_probe(&problem, &f_pot, &v_bar, trials, common.seed)?;
            println!("{}", report.verdict.detail);
            write_manifest(&common, "probe-sup")?;
            write_json(&common.out.join("probe_sup.json"), &report)?;
            write_csv_file(&common.out.join("probe_sup.csv"), &report.csv_rows())?;
            Ok(report.verdict.pass)
        }
        Command::ProbeLp {
            common,
            p,
            gamma,
            n_list,
        } => {
            let problem = config::load_problem(&common.config, common.m)?;
            let p = parse_p(&p)?;
            let ns = n_list.unwrap_or_else(|| DEFAULT_SPIKE_NS.to_vec());
            let f_pot = build_potential(&problem, problem.default_m())?;
            let v_bar = stationary_point(&problem, &f_pot)?;
            let outcome = lp_nonextremum_probe(&problem, &f_pot, &v_bar, p, &ns, gamma)?;
            println!(
                "not a maximizer: {} | not a minimizer: {} | n* = {:?}",
                outcome.not_max.verdict.pass, outcome.not_min.verdict.pass, outcome.n_star
            );
            write_manifest(&common, "probe-lp")?;
            write_json(&common.out.join("probe_lp.json"), &outcome)?;
            write_csv_file(&common.out.join("probe_lp.csv"), &outcome.csv_rows())?;
            Ok(outcome.pass())
        }
        Command::Frechet {
            common,
            p,
            s,
            gamma,
            n_list,
            at_stationary,
        } => {
            let problem = config::load_problem(&common.config, common.m)?;
            let p = parse_p(&p)?;
            let ns = n_list.unwrap_or_else(|| DEFAULT_FIT_NS.to_vec());
            let m = problem.default_m();
            let f_pot = build_potential(&problem, m)?;
            let v = if at_stationary {
                stationary_point(&problem, &f_pot)?
            } else {
                bump_profile(&problem, m, problem.well_bottom())?
            };
            let mut report = frechet_probe(&problem, &f_pot, &v, p, s, &ns, gamma)?;
            if let Some(tol) = common.tol {
                // re-judge the slope agreement under the requested tolerance
                let within = |fit: Option<f64>, exp: Option<f64>| match (fit, exp) {
                    (Some(f), Some(e)) => (f - e).abs() <= tol * e.abs(),
                    _ => false,
                };
                if report.expected_slope.map(|e| e > 0.0).unwrap_or(false) {
                    report.verdict.pass = within(report.fitted_slope, report.expected_slope)
                        && within(
                            report.remainder_fitted_slope,
                            report.remainder_expected_slope,
                        );
                    report.verdict.tolerance = tol;
                }
            }
            println!("{}", report.verdict.detail);
            write_manifest(&common, "frechet")?;
            write_json(&common.out.join("frechet.json"), &report)?;
            write_csv_file(&common.out.join("frechet.csv"), &report.csv_rows())?;
            Ok(report.verdict.pass)
        }
        Command::Candidates(common) => {
            let problem = config::load_problem(&common.config, common.m)?;
            let f_pot = build_potential(&problem, problem.default_m())?;
            let cands = candidate_profiles(&problem, &f_pot)?;
            let m = f_pot.intervals();
            #[derive(Serialize)]
            struct CandidateSummary {
                endpoints: [[f64; 2]; 3],
                in_c0: [bool; 3],
                well_bottom: f64,
            }
            let summary = CandidateSummary {
                endpoints: [
                    [cands.first.value(0), cands.first.value(m)],
                    [cands.second.value(0), cands.second.value(m)],
                    [cands.third.value(0), cands.third.value(m)],
                ],
                in_c0: [
                    cands.first.in_c0(),
                    cands.second.in_c0(),
                    cands.third.in_c0(),
                ],
                well_bottom: problem.well_bottom(),
            };
            println!(
                "endpoints: u1 {:?}, u2 {:?}, u3 {:?}; admissible: {:?}",
                summary.endpoints[0], summary.endpoints[1], summary.endpoints[2], summary.in_c0
            );
            let mut rows = profile_rows("candidate_u1", &cands.first, None);
            rows.extend(profile_rows("candidate_u2", &cands.second, None));
            rows.extend(profile_rows("candidate_u3", &cands.third, None));
            write_manifest(&common, "candidates")?;
            write_json(&common.out.join("candidates.json"), &summary)?;
            write_csv_file(&common.out.join("candidates.csv"), &rows)?;
            Ok(true)
        }
        Command::Radial {
            common,
            trials,
            p,
            gamma,
            n_list,
        } => {
            let rp = config::load_radial(&common.config, common.m)?;
            let validation = validate_radial(&rp)?;
            print_validation(&validation);
            let opts = RadialProbeOptions {
                trials,
                seed: common.seed,
                p: parse_p(&p)?,
                gamma: gamma.or(Some(0.9)),
                n_values: n_list.unwrap_or_else(|| DEFAULT_SPIKE_NS.to_vec()),
            };
            let refutation = radial_refutation(&rp, &opts)?;
            println!("{}", refutation.verdict.detail);
            let mut rows = refutation.sup_report.csv_rows();
            rows.extend(refutation.lp_outcome.csv_rows());
            write_manifest(&common, "radial")?;
            write_json(&common.out.join("radial.json"), &refutation)?;
            write_csv_file(&common.out.join("radial.csv"), &rows)?;
            Ok(refutation.verdict.pass)
        }
        Command::Report { common, trials } => {
            let problem = config::load_problem(&common.config, common.m)?;
            let validation = validate_forcing(&problem)?;
            let (v_bar, _u_bar, solution) = solve_problem(&problem)?;
            let f_pot = build_potential(&problem, problem.default_m())?;
            let cands = candidate_profiles(&problem, &f_pot)?;
            let sup = sup_norm_probe(&problem, &f_pot, &v_bar, trials, common.seed)?;
            let lp = lp_nonextremum_probe(
                &problem,
                &f_pot,
                &v_bar,
                PNorm::Finite(2.0),
                &DEFAULT_SPIKE_NS,
                Some(0.9),
            )?;
            let assertions = evaluate_assertions(&v_bar, &cands, &sup, &lp);

            #[derive(Serialize)]
            struct ReportSummary {
                validation: ValidationReport,
                solution: SolutionSummary,
                candidate_endpoints: [[f64; 2]; 3],
                candidate_in_c0: [bool; 3],
                sup_max_verdict: bool,
                lp_not_max_verdict: bool,
                lp_not_min_verdict: bool,
                n_star: Option<u64>,
                assertions_true: Vec<String>,
                assertions_false: Vec<String>,
                inconclusive: Vec<String>,
            }
            let m = f_pot.intervals();
            let summary = ReportSummary {
                validation,
                solution,
                candidate_endpoints: [
                    [cands.first.value(0), cands.first.value(m)],
                    [cands.second.value(0), cands.second.value(m)],
                    [cands.third.value(0), cands.third.value(m)],
                ],
                candidate_in_c0: [
                    cands.first.in_c0(),
                    cands.second.in_c0(),
                    cands.third.in_c0(),
                ],
                sup_max_verdict: sup.verdict.pass,
                lp_not_max_verdict: lp.not_max.verdict.pass,
                lp_not_min_verdict: lp.not_min.verdict.pass,
                n_star: lp.n_star,
                assertions_true: assertions.assertions_true.clone(),
                assertions_false: assertions.assertions_false.clone(),
                inconclusive: assertions.inconclusive.clone(),
            };
            println!(
                "assertions true: {:?}; false: {:?}; inconclusive: {:?}",
                summary.assertions_true, summary.assertions_false, summary.inconclusive
            );
            write_manifest(&common, "report")?;
            write_json(&common.out.join("report.json"), &summary)?;
            let ok = summary.validation.all_ok()
                && summary.sup_max_verdict
                && summary.lp_not_max_verdict
                && summary.lp_not_min_verdict
                && summary.assertions_true == vec!["maximizer_u3".to_string()];
            Ok(ok)
        }
    }
}
