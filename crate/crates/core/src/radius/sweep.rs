//! Maximization of a periodic function of one angle: a uniform coarse grid
//! followed by golden-section refinement around the best local maxima.

/// Coarse grid size used by every angle sweep in the crate.
pub const COARSE_POINTS: usize = 720;
/// Final bracket width of the golden-section refinement.
pub const REFINE_TOL: f64 = 1e-12;
/// How many of the best coarse local maxima are refined.
const REFINED_PEAKS: usize = 3;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `(argmax, max)` of a continuous `period`-periodic `f`.
pub fn sup_sweep(f: impl Fn(f64) -> f64, period: f64, coarse_points: usize, refine_tol: f64) -> (f64, f64) {
    sup_sweep_seeded(f, period, coarse_points, refine_tol, &[])
}

/// Like [`sup_sweep`], additionally refining around each angle in `seeds`.
///
/// The result is never below `f` at any grid point or seed, so seeding with a
/// known maximizer of a minorant keeps the minorant below the result.
pub fn sup_sweep_seeded(
    f: impl Fn(f64) -> f64,
    period: f64,
    coarse_points: usize,
    refine_tol: f64,
    seeds: &[f64],
) -> (f64, f64) {
    sup_sweep_with(f, period, coarse_points, refine_tol, REFINED_PEAKS, seeds)
}

/// Full control over the sweep: `peaks` is how many coarse local maxima are refined.
pub fn sup_sweep_with(
    f: impl Fn(f64) -> f64,
    period: f64,
    coarse_points: usize,
    refine_tol: f64,
    peaks: usize,
    seeds: &[f64],
) -> (f64, f64) {
    let m = coarse_points.max(3);
    let h = period / m as f64;
    let grid: Vec<f64> = (0..m).map(|k| f(k as f64 * h)).collect();

    let mut best = (0.0, grid[0]);
    let mut consider = |theta: f64, v: f64| {
        if v > best.1 || best.1.is_nan() {
            best = (theta, v);
        }
    };
    for (k, &v) in grid.iter().enumerate() {
        consider(k as f64 * h, v);
    }

    let mut peak_idx: Vec<usize> = (0..m)
        .filter(|&k| {
            let prev = grid[(k + m - 1) % m];
            let next = grid[(k + 1) % m];
            grid[k] >= prev && grid[k] >= next
        })
        .collect();
    peak_idx.sort_by(|&i, &j| grid[j].total_cmp(&grid[i]));
    peak_idx.truncate(peaks);

    let centers = peak_idx.iter().map(|&k| k as f64 * h).chain(seeds.iter().copied());
    for c in centers {
        let (theta, v) = golden_max(&f, c - h, c + h, refine_tol);
        consider(theta.rem_euclid(period), v);
        let at_seed = f(c);
        consider(c.rem_euclid(period), at_seed);
    }
    best
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn cosine_peak() {
        let (arg, max) = sup_sweep(f64::cos, TAU, COARSE_POINTS, REFINE_TOL);
        assert!((max - 1.0).abs() < 1e-10);
        assert!(arg.min(TAU - arg) < 1e-5);
    }

    #[test]
    fn abs_cosine_half_period() {
        let (_, max) = sup_sweep(|t: f64| t.cos().abs(), PI, COARSE_POINTS, REFINE_TOL);
        assert!((max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn off_grid_peak_is_refined() {
        let peak = 0.123_456_789;
        let (arg, max) = sup_sweep(|t: f64| (t - peak).cos(), TAU, COARSE_POINTS, REFINE_TOL);
        assert!((arg - peak).abs() < 1e-6);
        assert!((max - 1.0).abs() < 1e-13);
    }

    #[test]
    fn seeds_are_never_lost() {
        // a spike narrower than the grid spacing, found only through the seed
        let spike = 1.0001;
        let f = |t: f64| if (t - spike).abs() < 1e-6 { 5.0 } else { 0.0 };
        let (_, max) = sup_sweep_seeded(f, TAU, 16, REFINE_TOL, &[spike]);
        assert_eq!(max, 5.0);
    }

    #[test]
    fn constant_function() {
        let (_, max) = sup_sweep(|_| 0.5, TAU, COARSE_POINTS, REFINE_TOL);
        assert_eq!(max, 0.5);
    }
}
