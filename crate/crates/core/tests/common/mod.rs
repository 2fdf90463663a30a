#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use semihilbert::fuzz::gen_psd;
use semihilbert::SemiHilbertSpace;

/// `(dim, rank)` with `1 <= rank <= dim`.
pub fn dim_rank(min_dim: usize, max_dim: usize) -> impl Strategy<Value = (usize, usize)> {
    (min_dim..=max_dim).prop_flat_map(|d| (Just(d), 1..=d))
}

pub fn space(dim: usize, rank: usize, seed: u64) -> SemiHilbertSpace {
    SemiHilbertSpace::with_default_tol(gen_psd(dim, rank, seed).unwrap()).unwrap()
}

/// Fixed-seed configuration, so that every run explores the same cases.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(0x5e41_4b11),
        ..ProptestConfig::default()
    }
}

/// `(dim, rank)` with `2 <= rank <= dim`, for the pair generators.
pub fn dim_rank_pairs(max_dim: usize) -> impl Strategy<Value = (usize, usize)> {
    (2..=max_dim).prop_flat_map(|d| (Just(d), 2..=d))
}

/// `lambda_max / lambda_min` of `A` restricted to its range.
pub fn range_condition(s: &SemiHilbertSpace) -> f64 {
    let ev = s.range_eigenvalues();
    let max = ev.iter().copied().fold(0.0, f64::max);
    let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
    if ev.is_empty() {
        1.0
    } else {
        max / min
    }
}
