//! Definition-based sampling oracles.
//!
//! These never touch the compression: they evaluate `||Tx||_A` and
//! `|<Tx, x>_A|` on random vectors of the original space through
//! [`SemiHilbertSpace::a_inner`](crate::SemiHilbertSpace::a_inner), then polish the best
//! samples with a derivative-free local search. The results are lower bounds
//! of the corresponding suprema and guard the compression reduction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{inner, norm2, C64};
use crate::semispace::OperatorInSpace;

/// Number of best samples handed to the local search.
const POLISHED: usize = 4;
const POLISH_MIN_STEP: f64 = 1e-7;
const POLISH_FAILURES: usize = 24;
/// Vectors with `||x||_A < NULL_CUTOFF * (lambda_min^+)^{1/2} ||x||` are skipped.
/// Every vector of `R(A)` clears the cutoff, and the ratios are invariant
/// under adding `N(A)` components, so the suprema are unaffected; below it the
/// rounding of `T` on `N(A)` dominates and the local search would drift there.
const NULL_CUTOFF: f64 = 0.5;

fn visible(space: &crate::SemiHilbertSpace, nx: f64, x: &[C64]) -> bool {
    let lambda_min = space.range_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    nx >= NULL_CUTOFF * lambda_min.sqrt() * norm2(x)
}

fn gaussian_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Scale-invariant ratio to be maximized; `None` on A-null vectors.
type Ratio<'a> = dyn Fn(&[C64]) -> Option<f64> + 'a;

fn sample_sup(n: usize, samples: usize, seed: u64, ratio: &Ratio<'_>) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut top: Vec<(f64, Vec<C64>)> = Vec::with_capacity(POLISHED + 1);
    for _ in 0..samples {
        let x = gaussian_vector(&mut rng, n);
        let Some(v) = ratio(&x) else { continue };
        if top.len() < POLISHED || v > top[top.len() - 1].0 {
            top.push((v, x));
            top.sort_by(|a, b| b.0.total_cmp(&a.0));
            top.truncate(POLISHED);
        }
    }
    let mut best = top.first().map_or(0.0, |t| t.0);
    for (mut v, mut x) in top {
        let mut step = 0.1 * x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let floor = POLISH_MIN_STEP * step;
        let mut failures = 0;
        while step > floor {
            let d = gaussian_vector(&mut rng, n);
            let y: Vec<C64> = x.iter().zip(&d).map(|(xi, di)| xi + di * step).collect();
            match ratio(&y) {
                Some(vy) if vy > v => {
                    (v, x) = (vy, y);
                    failures = 0;
                }
                _ => {
                    failures += 1;
                    if failures >= POLISH_FAILURES {
                        step *= 0.5;
                        failures = 0;
                    }
                }
            }
        }
        best = best.max(v);
    }
    best
}

/// Sampled lower bound of `||T||_A = sup ||Tx||_A / ||x||_A`.
pub fn sampled_operator_norm(op: &OperatorInSpace<'_>, samples: usize, seed: u64) -> f64 {
    let space = op.space();
    let ratio = |x: &[C64]| {
        let nx = space.a_norm_vec(x).ok()?;
        if !visible(space, nx, x) {
            return None;
        }
        Some(space.a_norm_vec(&op.matrix().mul_vec(x)).ok()? / nx)
    };
    sample_sup(space.dim(), samples, seed, &ratio)
}

/// Sampled lower bound of `w_A(T) = sup |<Tx, x>_A| / ||x||_A^2`.
pub fn sampled_numerical_radius(op: &OperatorInSpace<'_>, samples: usize, seed: u64) -> f64 {
    let space = op.space();
    let ratio = |x: &[C64]| {
        let hx = space.a_half().mul_vec(x);
        let nx = norm2(&hx);
        if !visible(space, nx, x) {
            return None;
        }
        // <Tx, x>_A = <A^{1/2} T x, A^{1/2} x>
        let htx = space.a_half().mul_vec(&op.matrix().mul_vec(x));
        Some(inner(&htx, &hx).norm() / (nx * nx))
    };
    sample_sup(space.dim(), samples, seed, &ratio)
}
