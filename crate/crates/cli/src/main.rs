//! `semihilbert`: check inequalities on JSON instances, reproduce the
//! reference examples, and run randomized campaigns.
//!
//! Exit codes: 0 success, 1 input or evaluation error, 2 a check or
//! comparison failed.

mod instance;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semihilbert::fuzz::{run_campaign, run_trials, CampaignConfig};
use semihilbert::golden::{golden_table, run_golden, GoldenEntry, GROUPS};
use semihilbert::inequalities::{CheckConfig, CheckId, InequalityReport};

use instance::InstanceFile;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_FAILED: u8 = 2;

#[derive(Parser)]
#[command(name = "semihilbert", version, about = "Inequalities on semi-Hilbertian spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run inequality checks on an instance file.
    Check {
        path: PathBuf,
        /// Checks to run; defaults to every check applicable to the instance.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckId>,
        /// Slack tolerance.
        #[arg(long, default_value_t = semihilbert::DEFAULT_CHECK_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute the built-in reference examples.
    PaperExamples {
        /// Restrict to one group.
        #[arg(long)]
        only: Option<String>,
        /// Replace the built-in expected table with a JSON file.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Run a randomized campaign and write the report as JSON.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        dims: Vec<usize>,
        /// Trials per check.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckId>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write one CSV row per trial of a single check.
    Tightness {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        check: CheckId,
        #[arg(long)]
        csv: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            path,
            checks,
            tol,
            format,
        } => cmd_check(&path, checks, tol, format),
        Command::PaperExamples { only, expected } => cmd_paper_examples(only.as_deref(), expected.as_deref()),
        Command::Fuzz {
            seed,
            dims,
            trials,
            checks,
            out,
        } => cmd_fuzz(campaign(seed, dims, trials, checks), &out),
        Command::Tightness {
            seed,
            dims,
            trials,
            check,
            csv,
        } => cmd_tightness(campaign(seed, dims, trials, vec![check]), check, &csv),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn campaign(seed: u64, dims: Vec<usize>, trials: usize, checks: Vec<CheckId>) -> CampaignConfig {
    CampaignConfig {
        seed,
        dims,
        trials_per_check: trials,
        checks: if checks.is_empty() { CheckId::ALL.to_vec() } else { checks },
        ..CampaignConfig::default()
    }
}

#[derive(Serialize)]
struct CheckOutcome {
    check: CheckId,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<InequalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct CheckOutput {
    all_hold: bool,
    results: Vec<CheckOutcome>,
}

fn cmd_check(path: &std::path::Path, checks: Vec<CheckId>, tol: f64, format: Format) -> Result<u8> {
    let inst = InstanceFile::load(path)?;
    let space = inst.space()?;
    let t = space.bind(inst.t.clone()).context("T")?;
    let s = inst.s.clone().map(|s| space.bind(s)).transpose().context("S")?;
    let checks = if checks.is_empty() {
        CheckId::ALL.into_iter().filter(|c| s.is_some() || !c.needs_pair()).collect()
    } else {
        if let Some(c) = checks.iter().find(|c| c.needs_pair() && s.is_none()) {
            bail!("{c} needs S in the instance file");
        }
        checks
    };
    let cfg = CheckConfig {
        check_tol: tol,
        ..CheckConfig::default()
    };
    let results: Vec<CheckOutcome> = checks
        .into_iter()
        .map(|check| match check.run(&t, s.as_ref(), &cfg) {
            Ok(report) => CheckOutcome {
                check,
                report: Some(report),
                error: None,
            },
            Err(e) => CheckOutcome {
                check,
                report: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let errored = results.iter().any(|r| r.error.is_some());
    let violated = results.iter().any(|r| r.report.as_ref().is_some_and(|rep| !rep.holds));
    let output = CheckOutput {
        all_hold: !errored && !violated,
        results,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&output)?),
        Format::Text => {
            for r in &output.results {
                match (&r.report, &r.error) {
                    (Some(rep), _) => println!("{}", rep.render_text()),
                    (None, Some(e)) => println!("{}: error: {e}", r.check),
                    (None, None) => {}
                }
            }
        }
    }
    Ok(if errored {
        EXIT_ERROR
    } else if violated {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

fn cmd_paper_examples(only: Option<&str>, expected: Option<&std::path::Path>) -> Result<u8> {
    if let Some(g) = only {
        if !GROUPS.contains(&g) {
            bail!("unknown group {g:?}; expected one of {}", GROUPS.join(", "));
        }
    }
    let table: Vec<GoldenEntry> = match expected {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => golden_table(),
    };
    let outcomes = run_golden(&table, only)?;
    let mut failed = 0;
    for o in &outcomes {
        let computed = o.computed.as_ref().map_or_else(|| "missing".to_string(), |v| v.render());
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} {}/{}: computed {computed}, expected {} (tol {:e})",
            o.group,
            o.name,
            o.expected.render(),
            o.tol
        );
        failed += usize::from(!o.pass);
    }
    println!("{} of {} comparisons match", outcomes.len() - failed, outcomes.len());
    Ok(if failed == 0 && !outcomes.is_empty() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_fuzz(config: CampaignConfig, out: &std::path::Path) -> Result<u8> {
    let report = run_campaign(&config)?;
    let file = std::fs::File::create(out).with_context(|| format!("creating {}", out.display()))?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(file), &report)?;
    for (name, summary) in &report.checks {
        let p50 = summary.relative_slack.as_ref().map_or(f64::NAN, |q| q.p50);
        println!(
            "{name}: {} trials, {} failures, min slack {:.3e}, median relative slack {p50:.3e}",
            summary.trials,
            summary.failures.len(),
            summary.min_slack.unwrap_or(f64::NAN)
        );
    }
    println!("{} failures in {} trials", report.total_failures(), report.total_trials());
    Ok(if report.total_failures() == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_tightness(config: CampaignConfig, check: CheckId, path: &std::path::Path) -> Result<u8> {
    let rows: Vec<_> = run_trials(&config, check)?
        .into_iter()
        .map(|o| (o.instance, o.report))
        .collect();
    let labels: Vec<String> = rows
        .iter()
        .find_map(|(_, r)| r.as_ref().ok())
        .map(|r| r.chain.iter().map(|l| l.label.clone()).collect())
        .unwrap_or_default();
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    let mut header = vec!["trial".to_string(), "dim".into(), "rank".into(), "holds".into()];
    header.extend(labels.iter().cloned());
    header.extend((1..labels.len()).map(|i| format!("slack_{i}")));
    header.push("error".into());
    w.write_record(&header)?;
    for (inst, report) in &rows {
        let mut rec = vec![inst.trial.to_string(), inst.dim.to_string(), inst.rank.to_string()];
        match report {
            Ok(r) => {
                rec.push(r.holds.to_string());
                rec.extend(r.chain.iter().map(|l| l.value.to_string()));
                rec.extend(r.slacks.iter().map(f64::to_string));
                rec.push(String::new());
            }
            Err(e) => {
                rec.push(String::new());
                rec.extend(std::iter::repeat_n(String::new(), 2 * labels.len().saturating_sub(1) + 1));
                rec.push(e.clone());
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    let failures = rows.iter().filter(|(_, r)| !r.as_ref().is_ok_and(|r| r.holds)).count();
    println!("wrote {} rows to {}; {failures} failures", rows.len(), path.display());
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILED })
}
