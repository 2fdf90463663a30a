//! Adaptive Simpson quadrature with a global interval budget.

/// Upper bound on the number of live subintervals.
pub const MAX_INTERVALS: usize = 1 << 14;
const INITIAL_INTERVALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Number of accepted subintervals.
    pub intervals: usize,
    /// False when the interval budget ran out before every piece met its tolerance.
    pub converged: bool,
}

struct Piece {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// `int_a^b f` to absolute accuracy `tol` (Richardson-corrected Simpson).
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            intervals: 0,
            converged: true,
        };
    }
    let h = (b - a) / INITIAL_INTERVALS as f64;
    let nodes: Vec<f64> = (0..=2 * INITIAL_INTERVALS).map(|k| f(a + 0.5 * h * k as f64)).collect();
    let mut stack: Vec<Piece> = (0..INITIAL_INTERVALS)
        .map(|k| {
            let (pa, pb) = (a + h * k as f64, a + h * (k + 1) as f64);
            let (fa, fm, fb) = (nodes[2 * k], nodes[2 * k + 1], nodes[2 * k + 2]);
            Piece {
                a: pa,
                b: pb,
                fa,
                fm,
                fb,
                whole: simpson(pa, pb, fa, fm, fb),
                tol: tol / INITIAL_INTERVALS as f64,
            }
        })
        .collect();

    let mut value = 0.0;
    let mut accepted = 0;
    let mut converged = true;
    while let Some(p) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        let budget_left = accepted + stack.len() + 2 <= MAX_INTERVALS;
        if delta.abs() <= 15.0 * p.tol || !budget_left {
            if delta.abs() > 15.0 * p.tol {
                converged = false;
            }
            value += left + right + delta / 15.0;
            accepted += 1;
        } else {
            let tol = 0.5 * p.tol;
            stack.push(Piece {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
                tol,
            });
            stack.push(Piece {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
                tol,
            });
        }
    }
    Quadrature {
        value,
        intervals: accepted,
        converged,
    }
}
