//! Structured random instances and reproducible check campaigns.

mod campaign;
mod generate;
pub mod rng;

pub use campaign::{
    generate_trial, run_campaign, run_instance, run_trials, CampaignConfig, CampaignReport, CheckSummary, Failure,
    RankChoice, SlackQuantiles, TrialInstance, TrialOutcome,
};
pub use generate::{gen_admissible, gen_psd, gen_special, lift, SpecialInstance, SpecialKind};
