mod common;

use proptest::prelude::*;
use semihilbert::fuzz::gen_psd;
use semihilbert::fuzz::rng::{gaussian_matrix, rng_from};
use semihilbert::linalg::{hermitian_eig, psd_sqrt, pseudoinverse, range_projector, spectral_norm};
use semihilbert::{ComplexMatrix, DEFAULT_HERMITICITY_TOL, DEFAULT_RANK_TOL};

use common::config;

/// Rank by Gaussian elimination with complete pivoting, stopping when the
/// pivot falls below `tol` times the first one.
fn elimination_rank(m: &ComplexMatrix, tol: f64) -> usize {
    let n = m.rows();
    let mut a = m.clone();
    let mut first = None;
    for k in 0..n {
        let (mut pi, mut pj, mut best) = (k, k, 0.0);
        for i in k..n {
            for j in k..n {
                if a[(i, j)].norm() > best {
                    (pi, pj, best) = (i, j, a[(i, j)].norm());
                }
            }
        }
        let first = *first.get_or_insert(best);
        if best == 0.0 || best <= tol * first {
            return k;
        }
        for j in 0..n {
            let tmp = a[(k, j)];
            a[(k, j)] = a[(pi, j)];
            a[(pi, j)] = tmp;
        }
        for i in 0..n {
            let tmp = a[(i, k)];
            a[(i, k)] = a[(i, pj)];
            a[(i, pj)] = tmp;
        }
        for i in k + 1..n {
            let f = a[(i, k)] / a[(k, k)];
            for j in k..n {
                let d = f * a[(k, j)];
                a[(i, j)] -= d;
            }
        }
    }
    n
}

fn psd(dim: usize, rank: usize, seed: u64) -> ComplexMatrix {
    gen_psd(dim, rank, seed).unwrap()
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn hermitian_reconstruction(dim in 2usize..=8, seed: u64) {
        let g = gaussian_matrix(&mut rng_from(seed), dim, dim);
        let m = g.hermitian_part();
        let e = hermitian_eig(&m, DEFAULT_HERMITICITY_TOL).unwrap();
        let err = (&e.reconstruct_with(|x| x) - &m).frobenius_norm();
        prop_assert!(err <= 1e-10 * m.frobenius_norm().max(1.0), "err {err}");
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn moore_penrose_equations((dim, rank) in (1usize..=8).prop_flat_map(|d| (Just(d), 0..=d)), seed: u64) {
        let a = psd(dim, rank, seed);
        let x = pseudoinverse(&a, DEFAULT_RANK_TOL).unwrap();
        let scale = spectral_norm(&a).max(1.0);
        let axa = &a.matmul(&x).matmul(&a) - &a;
        let xax = &x.matmul(&a).matmul(&x) - &x;
        let ax = a.matmul(&x);
        let xa = x.matmul(&a);
        prop_assert!(axa.frobenius_norm() <= 1e-10 * scale);
        // XAX - X is on the scale of X = A^+, whose norm reaches 1e8 / lambda_max
        let xscale = spectral_norm(&x).max(1.0);
        prop_assert!(xax.frobenius_norm() <= 1e-10 * scale * xscale);
        prop_assert!(ax.hermitian_defect() <= 1e-10 * scale);
        prop_assert!(xa.hermitian_defect() <= 1e-10 * scale);
    }

    #[test]
    fn psd_sqrt_squares_and_commutes((dim, rank) in (1usize..=8).prop_flat_map(|d| (Just(d), 0..=d)), seed: u64) {
        let m = psd(dim, rank, seed);
        let h = psd_sqrt(&m, DEFAULT_RANK_TOL).unwrap();
        let scale = m.frobenius_norm().max(1.0);
        prop_assert!((&h.matmul(&h) - &m).frobenius_norm() <= 1e-10 * scale);
        prop_assert!((&h.matmul(&m) - &m.matmul(&h)).frobenius_norm() <= 1e-10 * scale * spectral_norm(&h).max(1.0));
    }

    #[test]
    fn projector_rank_matches_elimination((dim, rank) in (1usize..=8).prop_flat_map(|d| (Just(d), 0..=d)), seed: u64) {
        let a = psd(dim, rank, seed);
        let (p, r) = range_projector(&a, DEFAULT_RANK_TOL).unwrap();
        prop_assert_eq!(r, rank);
        prop_assert_eq!(r, elimination_rank(&a, DEFAULT_RANK_TOL));
        prop_assert!((&p.matmul(&p) - &p).frobenius_norm() <= 1e-10);
    }
}
