//! Command-line front end: monotonicity certificates, V_m norms and
//! decompositions, coefficient tables, weighted-integral reductions,
//! membership verdicts, parameter sweeps, and the FFT oracle.
//!
//! Exit codes encode the verdict tri-state for CI pipelines:
//! 0 = holds/success, 2 = fails, 3 = inconclusive, 1 = usage or runtime error.

use clap::{Args, Parser, Subcommand};
use multimono::dsl::parse_profile;
use multimono::fourier::{l1_convergence_study, sample_radial, transform, LadderSpec};
use multimono::grid::GridSpec;
use multimono::membership::{
    condition_a, condition_b, condition_c, corollary_membership, example2_classifier,
    proposition_p2, DecayParams, Verdict, VerdictStatus,
};
use multimono::monotone::{sign_pattern_check, DEFAULT_SIGN_TOL};
use multimono::profiles::Profile;
use multimono::quad::QuadratureSpec;
use multimono::radial::{gamma_coefficients, reduction_vs_bruteforce, PNorm};
use multimono::report::envelope;
use multimono::vm::{decompose, vm_norm};
use multimono::{Error, Result};
use serde_json::Value;
use std::collections::VecDeque;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;

#[derive(Debug, Parser)]
#[command(name = "multimono")]
#[command(about = "multiply monotone profiles, V_m norms, and Wiener-algebra membership checks")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized sampling paths.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Quadrature tolerance (absolute and relative).
    #[arg(long, global = true, default_value_t = 1e-8)]
    quad_tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ProfileArg {
    /// Profile spec, e.g. "exp:l=1", "example1:g=0,a=1,b=2",
    /// "example2:a=1,b=1.2|re", "williamson:m=2,atoms=1:1;2:0.5", "csv:path".
    profile: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify the m-monotone sign pattern at grid resolution.
    CheckMonotone {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long)]
        m: u32,
        /// Violation tolerance relative to sup|f|.
        #[arg(long, default_value_t = DEFAULT_SIGN_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 1e-4)]
        grid_min: f64,
        #[arg(long, default_value_t = 1e4)]
        grid_max: f64,
        #[arg(long, default_value_t = 64)]
        per_decade: usize,
    },
    /// sup|f| + ∫ t^m |df^(m)|: the V_m norm.
    VmNorm {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long)]
        m: u32,
    },
    /// Split f = f1 − f2 into two multiply monotone parts with norm bounds.
    Decompose {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long)]
        m: u32,
        /// Write a CSV table (t, f, f1, f2) here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Print the mixed-derivative coefficient table as CSV.
    GammaTable {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: f64,
    },
    /// Weighted-integral reduction vs the brute-force orthant quadrature.
    ReduceIntegral {
        #[command(flatten)]
        profile: ProfileArg,
        #[arg(long)]
        d: u32,
        /// p of the norm ("inf" for the max norm).
        #[arg(long)]
        p: String,
        #[arg(long)]
        alpha: f64,
    },
    /// Membership verdict for f0(|x|_{p,d}) in the Wiener algebra.
    TestMembership {
        #[arg(long)]
        profile: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: String,
        /// A | B | C | cor | prop | auto
        #[arg(long, default_value = "auto")]
        condition: String,
        /// Condition C: claimed decay exponent of f itself.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Condition C: claimed per-order decay gain.
        #[arg(long)]
        delta: Option<f64>,
        /// Condition C: left support cutoff.
        #[arg(long)]
        a: Option<f64>,
    },
    /// Classifier-vs-oracle sweep over an (alpha, beta) grid of the
    /// oscillating family.
    Sweep {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: String,
        /// Grid as lo:hi:count.
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        betas: String,
        /// classifier | condition-c | fft
        #[arg(long, default_value = "condition-c")]
        oracle: String,
        /// Write the CSV here (default stdout).
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Discrete Fourier oracle: L1 convergence ladder for one profile.
    FftOracle {
        #[arg(long)]
        profile: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: String,
        /// Ladder as L0,N0,steps.
        #[arg(long, default_value = "10,256,4")]
        ladder: String,
        /// Directory for |g| CSV slices along the axes and the diagonal.
        #[arg(long)]
        dump_slices: Option<PathBuf>,
    },
    /// Reproduction presets (currently: example2).
    Reproduce {
        /// Which study to reproduce.
        target: String,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Smaller ladder for quick runs.
        #[arg(long)]
        fast: bool,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

fn parse_p(s: &str) -> Result<f64> {
    match s.trim() {
        "inf" | "infinity" | "max" => Ok(f64::INFINITY),
        other => other
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("--p expects a number or 'inf', got '{other}'"))),
    }
}

fn parse_grid_spec(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("grid '{s}' must be lo:hi:count")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Parse("bad grid lower bound".into()))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Parse("bad grid upper bound".into()))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| Error::Parse("bad grid count".into()))?;
    if n == 0 || hi < lo {
        return Err(Error::Parse("grid needs hi >= lo and count >= 1".into()));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect())
}

fn parse_ladder(s: &str) -> Result<LadderSpec> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse("ladder must be L0,N0,steps".into()));
    }
    Ok(LadderSpec {
        l0: parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad ladder L0".into()))?,
        n0: parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad ladder N0".into()))?,
        steps: parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::Parse("bad ladder steps".into()))?,
    })
}

fn emit(out: &Option<PathBuf>, report: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn verdict_exit(v: &Verdict) -> ExitCode {
    match v.status {
        VerdictStatus::Holds => ExitCode::from(0),
        VerdictStatus::Fails => ExitCode::from(2),
        VerdictStatus::Inconclusive => ExitCode::from(3),
    }
}

fn worker_count(cells: usize) -> usize {
    let env = std::env::var("MULTIMONO_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    let hw = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    env.unwrap_or(hw).clamp(1, cells.max(1))
}

/// Run `job` over the cells on a small worker pool, preserving input order.
fn fan_out<T: Send + Sync, R: Send>(cells: Vec<T>, job: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let n = cells.len();
    let workers = worker_count(n);
    let queue: Mutex<VecDeque<usize>> = Mutex::new((0..n).collect());
    let mut results: Vec<Option<R>> = (0..n).map(|_| None).collect();
    let slots = Mutex::new(&mut results);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = match queue.lock().unwrap().pop_front() {
                    Some(i) => i,
                    None => break,
                };
                let r = job(&cells[idx]);
                slots.lock().unwrap()[idx] = Some(r);
            });
        }
    });
    results.into_iter().map(|r| r.expect("worker filled slot")).collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let quad = QuadratureSpec::with_tol(cli.quad_tol);
    match cli.command {
        Command::CheckMonotone {
            profile,
            m,
            tol,
            grid_min,
            grid_max,
            per_decade,
        } => {
            let p = parse_profile(&profile.profile)?;
            let grid = GridSpec::new(grid_min, grid_max, per_decade);
            let desc = p.description();
            let reports: Vec<_> = if p.is_complex() {
                vec![
                    ("re", sign_pattern_check(&p.re(), m, &grid, tol)?),
                    ("im", sign_pattern_check(&p.im(), m, &grid, tol)?),
                ]
            } else {
                vec![("value", sign_pattern_check(&p, m, &grid, tol)?)]
            };
            let passed = reports.iter().all(|(_, r)| r.passed);
            let payload: Vec<Value> = reports
                .iter()
                .map(|(part, r)| {
                    let mut v = serde_json::to_value(r).unwrap();
                    v["component"] = Value::String(part.to_string());
                    v
                })
                .collect();
            emit(&cli.out, &envelope("check-monotone", Some(&desc), &payload))?;
            Ok(if passed { ExitCode::from(0) } else { ExitCode::from(2) })
        }
        Command::VmNorm { profile, m } => {
            let p = parse_profile(&profile.profile)?;
            let norm = vm_norm(&p, m, &quad)?;
            emit(&cli.out, &envelope("vm-norm", Some(&p.description()), &norm))?;
            Ok(if norm.converged { ExitCode::from(0) } else { ExitCode::from(2) })
        }
        Command::Decompose { profile, m, csv_out } => {
            let p = parse_profile(&profile.profile)?;
            let pair = decompose(&p, m, &quad)?;
            if let Some(path) = csv_out {
                let (lo, hi) = p.domain();
                let pts = GridSpec::new(lo.max(1e-3), hi.min(50.0), 32).points();
                let mut w = String::from("t,f,f1,f2\n");
                for t in pts {
                    w.push_str(&format!(
                        "{t},{},{},{}\n",
                        p.value(t)?.re,
                        pair.f1.value(t)?.re,
                        pair.f2.value(t)?.re
                    ));
                }
                std::fs::write(path, w)?;
            }
            let payload = serde_json::json!({
                "m": m,
                "norm_f": vm_norm(&p, m, &quad)?,
                "norm_f1": pair.norm_f1,
                "norm_f2": pair.norm_f2,
                "reconstruction_error": pair.reconstruction_error,
                "f1": pair.f1.description(),
                "f2": pair.f2.description(),
            });
            emit(&cli.out, &envelope("decompose", Some(&p.description()), &payload))?;
            Ok(ExitCode::from(0))
        }
        Command::GammaTable { d, p } => {
            let table = gamma_coefficients(d, p)?;
            let mut csv = String::from("nu,gamma\n");
            for nu in 1..=d {
                csv.push_str(&format!("{nu},{}\n", table.coefficient(nu)));
            }
            match &cli.out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::from(0))
        }
        Command::ReduceIntegral { profile, d, p, alpha } => {
            let g = parse_profile(&profile.profile)?;
            let pn = PNorm::new(parse_p(&p)?, d)?;
            let (reduced, brute, rel) = reduction_vs_bruteforce(&g, &pn, alpha, &quad)?;
            let payload = serde_json::json!({
                "d": d,
                "p": pn.p,
                "alpha": alpha,
                "reduction": reduced,
                "bruteforce": brute,
                "relative_deviation": rel,
            });
            emit(&cli.out, &envelope("reduce-integral", Some(&g.description()), &payload))?;
            Ok(if brute.inconclusive { ExitCode::from(3) } else { ExitCode::from(0) })
        }
        Command::TestMembership {
            profile,
            d,
            p,
            condition,
            epsilon,
            delta,
            a,
        } => {
            let pr = parse_profile(&profile)?;
            let pv = parse_p(&p)?;
            let verdict = match condition.to_ascii_lowercase().as_str() {
                "a" => condition_a(&pr, d, &quad)?,
                "b" => condition_b(&pr, d, pv, &quad)?,
                "c" => {
                    let params = DecayParams {
                        epsilon: epsilon.ok_or_else(|| {
                            Error::Parameter("--epsilon required for condition C".into())
                        })?,
                        delta: delta.ok_or_else(|| {
                            Error::Parameter("--delta required for condition C".into())
                        })?,
                        a: a.ok_or_else(|| Error::Parameter("--a required for condition C".into()))?,
                    };
                    condition_c(&pr, d, &params)?
                }
                "cor" => corollary_membership(&pr, d, pv, &quad)?,
                "prop" => proposition_p2(&pr, d, &quad)?,
                "auto" => {
                    let v = corollary_membership(&pr, d, pv, &quad)?;
                    if v.status == VerdictStatus::Inconclusive && pv >= 1.0 {
                        condition_a(&pr, d, &quad)?
                    } else if v.status == VerdictStatus::Inconclusive {
                        condition_b(&pr, d, pv, &quad)?
                    } else {
                        v
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "unknown condition '{other}' (A|B|C|cor|prop|auto)"
                    )))
                }
            };
            emit(&cli.out, &envelope("test-membership", Some(&pr.description()), &verdict))?;
            Ok(verdict_exit(&verdict))
        }
        Command::Sweep {
            d,
            p,
            alphas,
            betas,
            oracle,
            csv_out,
        } => {
            let pv = parse_p(&p)?;
            let alphas = parse_grid_spec(&alphas)?;
            let betas = parse_grid_spec(&betas)?;
            let mut cells = Vec::new();
            for &alpha in &alphas {
                for &beta in &betas {
                    cells.push((alpha, beta));
                }
            }
            let oracle_name = oracle.to_ascii_lowercase();
            let rows = fan_out(cells, |&(alpha, beta)| {
                let classifier = example2_classifier(alpha, beta, d, pv);
                let oracle_verdict = match oracle_name.as_str() {
                    "classifier" => if classifier { "holds" } else { "fails" }.to_string(),
                    "fft" => {
                        let spec = LadderSpec {
                            l0: 10.0,
                            n0: 256,
                            steps: 3,
                        };
                        let run = || -> Result<String> {
                            let pr = Profile::example2(alpha, beta)?;
                            let pn = PNorm::new(pv.min(1e6), d)?;
                            let study = l1_convergence_study(&pr, &pn, &spec)?;
                            Ok(format!("{:?}", study.verdict.status).to_lowercase())
                        };
                        run().unwrap_or_else(|e| format!("error: {e}"))
                    }
                    _ => {
                        let run = || -> Result<String> {
                            let pr = Profile::example2(alpha, beta)?.windowed_tail(1.0, 2.0)?;
                            let params = DecayParams {
                                epsilon: beta,
                                delta: 1.0 - alpha,
                                a: 1.0,
                            };
                            Ok(format!("{:?}", condition_c(&pr, d, &params)?.status).to_lowercase())
                        };
                        run().unwrap_or_else(|e| format!("error: {e}"))
                    }
                };
                format!(
                    "{alpha},{beta},{pv},{},{oracle_verdict}",
                    if classifier { "holds" } else { "fails" }
                )
            });
            let mut csv = String::from("alpha,beta,p,classifier,oracle\n");
            for row in rows {
                csv.push_str(&row);
                csv.push('\n');
            }
            match csv_out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::from(0))
        }
        Command::FftOracle {
            profile,
            d,
            p,
            ladder,
            dump_slices,
        } => {
            let pr = parse_profile(&profile)?;
            let pn = PNorm::new(parse_p(&p)?, d)?;
            let spec = parse_ladder(&ladder)?;
            let study = l1_convergence_study(&pr, &pn, &spec)?;
            if let Some(dir) = dump_slices {
                std::fs::create_dir_all(&dir)?;
                let finest = study.ladder.last().expect("nonempty ladder");
                let field = sample_radial(&pr, &pn, finest.l, finest.n)?;
                let g = transform(&field)?;
                for axis in 0..d {
                    let mut csv = String::from("y,abs_g\n");
                    for (y, v) in g.axis_slice(axis) {
                        csv.push_str(&format!("{y},{v}\n"));
                    }
                    std::fs::write(dir.join(format!("axis{axis}.csv")), csv)?;
                }
                let mut csv = String::from("y,abs_g\n");
                for (y, v) in g.diagonal_slice() {
                    csv.push_str(&format!("{y},{v}\n"));
                }
                std::fs::write(dir.join("diagonal.csv"), csv)?;
            }
            emit(&cli.out, &envelope("fft-oracle", Some(&pr.description()), &study))?;
            Ok(verdict_exit(&study.verdict))
        }
        Command::Reproduce {
            target,
            d,
            fast,
            csv_out,
        } => {
            if target.to_ascii_lowercase() != "example2" {
                return Err(Error::Parse(format!(
                    "unknown reproduction target '{target}' (available: example2)"
                )));
            }
            // the oscillating-family equivalence at p = 2: oracle verdicts
            // across an (alpha, beta) grid against the closed-form classifier
            let alphas = [0.5, 1.0, 1.5];
            let betas = [0.4, 0.7, 1.1, 1.6];
            let spec = if fast {
                LadderSpec {
                    l0: 10.0,
                    n0: 128,
                    steps: 3,
                }
            } else {
                LadderSpec::default()
            };
            let mut cells = Vec::new();
            for &alpha in &alphas {
                for &beta in &betas {
                    cells.push((alpha, beta));
                }
            }
            let rows = fan_out(cells, |&(alpha, beta)| {
                let classifier = example2_classifier(alpha, beta, d, 2.0);
                let run = || -> Result<String> {
                    let pr = Profile::example2(alpha, beta)?;
                    let study = l1_convergence_study(&pr, &PNorm::new(2.0, d)?, &spec)?;
                    Ok(format!("{:?}", study.verdict.status).to_lowercase())
                };
                let oracle = run().unwrap_or_else(|e| format!("error: {e}"));
                format!(
                    "{alpha},{beta},{},{oracle}",
                    if classifier { "holds" } else { "fails" }
                )
            });
            let mut csv = String::from("alpha,beta,classifier,oracle\n");
            for row in rows {
                csv.push_str(&row);
                csv.push('\n');
            }
            match csv_out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::from(0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(1)
        }
    }
}
