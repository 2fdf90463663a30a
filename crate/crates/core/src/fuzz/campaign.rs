use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{gen_admissible, gen_psd, gen_special, SpecialKind};
use super::rng::{rng_from, splitmix64, trial_seed};
use crate::error::{Error, Result};
use crate::inequalities::{CheckConfig, CheckId, InequalityReport};
use crate::linalg::ComplexMatrix;
use crate::semispace::SemiHilbertSpace;
use crate::{DEFAULT_CHECK_TOL, DEFAULT_EQ_TOL, DEFAULT_RANK_TOL};

/// Probability that a trial draws `T` from a structured class instead of the
/// generic admissible ensemble (structured operators sit on equality cases).
const STRUCTURED_FRACTION: f64 = 0.2;
const STRUCTURED_KINDS: [SpecialKind; 4] = [
    SpecialKind::ASelfadjoint,
    SpecialKind::ANormal,
    SpecialKind::APositive,
    SpecialKind::ASkew,
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankChoice {
    /// Every rank `1..=dim`.
    All,
    /// Allowed ranks per dimension; dimensions not listed use every rank.
    PerDim(BTreeMap<usize, Vec<usize>>),
}

impl RankChoice {
    pub fn allowed(&self, dim: usize) -> Vec<usize> {
        match self {
            RankChoice::PerDim(map) if map.contains_key(&dim) => map[&dim].clone(),
            _ => (1..=dim).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub ranks: RankChoice,
    /// Trials per check, spread round-robin over `dims`.
    pub trials_per_check: usize,
    pub checks: Vec<CheckId>,
    pub check_tol: f64,
    pub eq_tol: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            dims: vec![2, 3, 4, 5],
            ranks: RankChoice::All,
            trials_per_check: 200,
            checks: CheckId::ALL.to_vec(),
            check_tol: DEFAULT_CHECK_TOL,
            eq_tol: DEFAULT_EQ_TOL,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidConfig("dims must be nonempty and positive".into()));
        }
        if let RankChoice::PerDim(map) = &self.ranks {
            for (&dim, ranks) in map {
                if ranks.is_empty() || ranks.iter().any(|&r| r > dim) {
                    return Err(Error::InvalidConfig(format!("invalid ranks {ranks:?} for dim {dim}")));
                }
            }
        }
        Ok(())
    }

    fn check_config(&self, seed: u64) -> CheckConfig {
        CheckConfig {
            check_tol: self.check_tol,
            eq_tol: self.eq_tol,
            seed,
            ..CheckConfig::default()
        }
    }
}

/// The inputs of one trial, regenerable from `(config, check, trial)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialInstance {
    pub trial: usize,
    pub seed: u64,
    pub dim: usize,
    pub rank: usize,
    /// Structured class of `T`, if any.
    pub kind: Option<SpecialKind>,
    pub a: ComplexMatrix,
    pub t: ComplexMatrix,
    pub s: Option<ComplexMatrix>,
}

fn stream_of(check: CheckId) -> u64 {
    CheckId::ALL.iter().position(|&c| c == check).unwrap_or(0) as u64
}

/// Draws the inputs of trial `trial` for `check`.
pub fn generate_trial(config: &CampaignConfig, check: CheckId, trial: usize) -> Result<TrialInstance> {
    let seed = trial_seed(config.seed, stream_of(check), trial as u64);
    let mut rng = rng_from(seed);
    let dim = config.dims[trial % config.dims.len()];
    let rank = *config
        .ranks
        .allowed(dim)
        .choose(&mut rng)
        .ok_or_else(|| Error::InvalidConfig(format!("no rank allowed for dim {dim}")))?;
    let a = gen_psd(dim, rank, splitmix64(seed ^ 1))?;
    let space = SemiHilbertSpace::new(a.clone(), DEFAULT_RANK_TOL)?;
    let kind = rng
        .gen_bool(STRUCTURED_FRACTION)
        .then(|| *STRUCTURED_KINDS.choose(&mut rng).unwrap_or(&SpecialKind::ASelfadjoint));
    let t = match kind {
        Some(kind) => gen_special(&space, kind, splitmix64(seed ^ 2))?.t.into_matrix(),
        None => gen_admissible(&space, splitmix64(seed ^ 2))?.into_matrix(),
    };
    let s = if check.needs_pair() {
        Some(gen_admissible(&space, splitmix64(seed ^ 3))?.into_matrix())
    } else {
        None
    };
    Ok(TrialInstance {
        trial,
        seed,
        dim,
        rank,
        kind,
        a,
        t,
        s,
    })
}

/// Runs `check` on the instance.
pub fn run_instance(config: &CampaignConfig, check: CheckId, inst: &TrialInstance) -> Result<InequalityReport> {
    let space = SemiHilbertSpace::new(inst.a.clone(), DEFAULT_RANK_TOL)?;
    let t = space.bind(inst.t.clone())?;
    let s = inst.s.clone().map(|s| space.bind(s)).transpose()?;
    check.run(&t, s.as_ref(), &config.check_config(inst.seed))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub instance: TrialInstance,
    pub report: std::result::Result<InequalityReport, String>,
}

/// Generates and runs every trial of one check, in trial order.
pub fn run_trials(config: &CampaignConfig, check: CheckId) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    (0..config.trials_per_check)
        .into_par_iter()
        .map(|k| {
            let instance = generate_trial(config, check, k)?;
            let report = run_instance(config, check, &instance).map_err(|e| e.to_string());
            Ok(TrialOutcome { instance, report })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: TrialInstance,
    pub report: Option<InequalityReport>,
    pub error: Option<String>,
}

/// Quantiles of the per-trial minimum slack divided by `1 + max |chain value|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackQuantiles {
    pub min: f64,
    pub p10: f64,
    pub p50: f64,
    pub p90: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub trials: usize,
    pub failures: Vec<Failure>,
    /// Smallest absolute slack over all trials.
    pub min_slack: Option<f64>,
    pub relative_slack: Option<SlackQuantiles>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub checks: BTreeMap<String, CheckSummary>,
}

impl CampaignReport {
    pub fn total_failures(&self) -> usize {
        self.checks.values().map(|c| c.failures.len()).sum()
    }

    pub fn total_trials(&self) -> usize {
        self.checks.values().map(|c| c.trials).sum()
    }
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    let idx = ((sorted.len() - 1) as f64 * p).round() as usize;
    sorted[idx]
}

fn summarize(outcomes: Vec<TrialOutcome>) -> CheckSummary {
    let trials = outcomes.len();
    let mut failures = Vec::new();
    let mut relative = Vec::with_capacity(trials);
    let mut min_slack: Option<f64> = None;
    for o in outcomes {
        match o.report {
            Ok(report) => {
                let m = report.min_slack();
                min_slack = Some(min_slack.map_or(m, |x| x.min(m)));
                let scale = report.chain.iter().fold(0.0f64, |acc, l| acc.max(l.value.abs()));
                relative.push(m / (1.0 + scale));
                if !report.holds {
                    failures.push(Failure {
                        instance: o.instance,
                        report: Some(report),
                        error: None,
                    });
                }
            }
            Err(e) => failures.push(Failure {
                instance: o.instance,
                report: None,
                error: Some(e),
            }),
        }
    }
    relative.sort_by(f64::total_cmp);
    let relative_slack = (!relative.is_empty()).then(|| SlackQuantiles {
        min: relative[0],
        p10: quantile(&relative, 0.1),
        p50: quantile(&relative, 0.5),
        p90: quantile(&relative, 0.9),
        max: relative[relative.len() - 1],
    });
    CheckSummary {
        trials,
        failures,
        min_slack,
        relative_slack,
    }
}

/// Runs every configured check on `trials_per_check` fresh instances.
/// Deterministic in the configuration; failures are data, not errors.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let mut checks = BTreeMap::new();
    for &check in &config.checks {
        checks.insert(check.name().to_string(), summarize(run_trials(config, check)?));
    }
    Ok(CampaignReport {
        config: config.clone(),
        checks,
    })
}
