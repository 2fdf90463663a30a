//! Direct minimization of `|<Tx, x>_A|` over the A-unit sphere, used as an
//! independent upper bound for the Crawford number.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{RadiusEstimate, RadiusMethod};
use crate::error::Result;
use crate::linalg::{inner, ComplexMatrix, C64};
use crate::semispace::OperatorInSpace;

const MAX_ITERS: usize = 400;
const STEP_TOL: f64 = 1e-14;

struct Objective<'a> {
    a: &'a ComplexMatrix,
    a_pinv: &'a ComplexMatrix,
    at: ComplexMatrix,
    ta: ComplexMatrix,
}

impl Objective<'_> {
    /// `(|q|^2 / n^2, q, n)` with `q = <Tx, x>_A` and `n = ||x||_A^2`.
    fn value(&self, x: &[C64]) -> (f64, C64, f64) {
        let q = inner(&self.at.mul_vec(x), x);
        let n = inner(&self.a.mul_vec(x), x).re;
        (q.norm_sqr() / (n * n), q, n)
    }

    /// Derivative with respect to `conj(x)`, mapped through `A^+` (the
    /// gradient for the A-geometry, which keeps ill-conditioned `A` tractable).
    fn gradient(&self, x: &[C64], q: C64, n: f64) -> Vec<C64> {
        let atx = self.at.mul_vec(x);
        let tax = self.ta.mul_vec(x);
        let ax = self.a.mul_vec(x);
        let n2 = n * n;
        let g: Vec<C64> = (0..x.len())
            .map(|i| (q.conj() * atx[i] + q * tax[i]) / n2 - ax[i] * (2.0 * q.norm_sqr() / (n2 * n)))
            .collect();
        self.a_pinv.mul_vec(&g)
    }
}

fn normalize(a: &ComplexMatrix, x: &mut [C64]) -> bool {
    let n = inner(&a.mul_vec(x), x).re;
    if n.is_nan() || n <= 0.0 {
        return false;
    }
    let s = n.sqrt().recip();
    x.iter_mut().for_each(|z| *z *= s);
    true
}

/// Multi-start projected gradient descent of `|<Tx, x>_A|^2` on `||x||_A = 1`.
///
/// The result is an upper bound on `c_A(T)` attained by its certificate
/// vector. Deterministic in `seed`.
pub fn a_crawford_direct(op: &OperatorInSpace<'_>, starts: usize, seed: u64) -> Result<RadiusEstimate> {
    op.compression()?;
    let space = op.space();
    let a = space.a();
    let obj = Objective {
        a,
        a_pinv: space.a_pinv(),
        at: a.matmul(op.matrix()),
        ta: op.matrix().adjoint().matmul(a),
    };
    let n = space.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<C64>)> = None;

    if space.rank() == 0 {
        return Ok(RadiusEstimate {
            value: 0.0,
            certificate_theta: 0.0,
            certificate_vector: None,
            method: RadiusMethod::DirectSampling,
            abs_error_bound: 0.0,
        });
    }

    for _ in 0..starts.max(1) {
        let mut x: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if !normalize(a, &mut x) {
            continue;
        }
        let (mut f, mut q, mut nn) = obj.value(&x);
        let mut step = 1.0;
        for _ in 0..MAX_ITERS {
            let g = obj.gradient(&x, q, nn);
            // directional derivative along the preconditioned gradient
            let g2 = inner(&obj.a.mul_vec(&g), &g).re;
            if g2 == 0.0 {
                break;
            }
            let mut improved = false;
            while step > STEP_TOL {
                let mut y: Vec<C64> = x.iter().zip(&g).map(|(xi, gi)| xi - gi * step).collect();
                if normalize(a, &mut y) {
                    let (fy, qy, ny) = obj.value(&y);
                    if fy < f - 1e-4 * step * g2 {
                        x = y;
                        (f, q, nn) = (fy, qy, ny);
                        improved = true;
                        step *= 2.0;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !improved || f == 0.0 {
                break;
            }
        }
        let value = f.max(0.0).sqrt();
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, x));
        }
    }

    let (value, x) = best.unwrap_or((f64::INFINITY, vec![C64::new(0.0, 0.0); n]));
    Ok(RadiusEstimate {
        value,
        certificate_theta: 0.0,
        certificate_vector: Some(x),
        method: RadiusMethod::DirectSampling,
        abs_error_bound: 0.0,
    })
}
