//! Structured random instances.
//!
//! Special operators are built as lifts of r x r matrices with the required
//! structure, plus an optional "kernel term" `V_k Y` (range inside `N(A)`).
//! The kernel term is invisible to every A-quantity but makes the matrices
//! generic in the original space.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::rng::{gaussian_c64, gaussian_matrix, rng_from};
use crate::error::{Error, Result};
use crate::inequalities::orthogonality_defect;
use crate::linalg::{hermitian_eig, hermitian_eigenvalues, spectral_norm, ComplexMatrix, C64};
use crate::semispace::{OperatorInSpace, SemiHilbertSpace};
use crate::{DEFAULT_HERMITICITY_TOL, DEFAULT_PREDICATE_TOL, DEFAULT_RANK_TOL};

/// Positive-definite parts are redrawn when `lambda_min < PSD_CONDITION * lambda_max`.
const PSD_CONDITION: f64 = 1e-8;
const MAX_ATTEMPTS: usize = 100;
const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Hermitian PSD `dim x dim` matrix of numerical rank exactly `rank`, as `G G*`.
pub fn gen_psd(dim: usize, rank: usize, seed: u64) -> Result<ComplexMatrix> {
    if rank > dim {
        return Err(Error::InvalidConfig(format!("rank {rank} exceeds dimension {dim}")));
    }
    if rank == 0 {
        return Ok(ComplexMatrix::zeros(dim, dim));
    }
    let mut rng = rng_from(seed);
    for _ in 0..MAX_ATTEMPTS {
        let g = gaussian_matrix(&mut rng, dim, rank);
        let a = g.matmul(&g.adjoint()).hermitian_part();
        let ev = hermitian_eigenvalues(&a, DEFAULT_HERMITICITY_TOL)?;
        let top = ev[dim - 1];
        let smallest_kept = ev[dim - rank];
        let numerical_rank = ev.iter().filter(|&&l| l > DEFAULT_RANK_TOL * top).count();
        if smallest_kept >= PSD_CONDITION * top && numerical_rank == rank {
            return Ok(a);
        }
    }
    Err(Error::InvalidConfig(format!("could not draw a well-conditioned rank-{rank} PSD matrix")))
}

/// `V_k Y` with Gaussian `Y`: maps everything into `N(A)`.
fn kernel_term(space: &SemiHilbertSpace, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let vk = space.kernel_basis();
    vk.matmul(&gaussian_matrix(rng, vk.cols(), space.dim()))
}

fn unitary_basis(space: &SemiHilbertSpace) -> ComplexMatrix {
    let n = space.dim();
    let (vr, vk) = (space.range_basis(), space.kernel_basis());
    ComplexMatrix::from_fn(n, n, |i, j| if j < vr.cols() { vr[(i, j)] } else { vk[(i, j - vr.cols())] })
}

/// Gaussian admissible operator: block lower-triangular `[[T11, 0], [T21, T22]]`
/// in the basis `(range_basis | kernel_basis)`.
pub fn gen_admissible(space: &SemiHilbertSpace, seed: u64) -> Result<OperatorInSpace<'_>> {
    let mut rng = rng_from(seed);
    let (n, r) = (space.dim(), space.rank());
    let mut m = gaussian_matrix(&mut rng, n, n);
    for i in 0..r {
        for j in r..n {
            m[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    let w = unitary_basis(space);
    let op = space.bind(w.matmul(&m).matmul(&w.adjoint()))?;
    if !op.is_admissible() {
        return Err(Error::NoAdjoint);
    }
    Ok(op)
}

/// The canonical operator with compression `b`.
pub fn lift<'s>(space: &'s SemiHilbertSpace, b: &ComplexMatrix) -> Result<OperatorInSpace<'s>> {
    space.bind(space.lift_matrix(b)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    ASelfadjoint,
    ANormal,
    APositive,
    ASkew,
    /// `S^#T = 0` from generic blocks with orthogonal column spaces.
    PairOrthogonal,
    /// `S = cT` up to kernel terms, `c > 0`.
    PairTriangleEquality,
    /// `S^#T = 0` with a common maximizing direction, forcing Pythagoras' equality.
    PairPythagoras,
}

impl SpecialKind {
    pub const ALL: [SpecialKind; 7] = [
        SpecialKind::ASelfadjoint,
        SpecialKind::ANormal,
        SpecialKind::APositive,
        SpecialKind::ASkew,
        SpecialKind::PairOrthogonal,
        SpecialKind::PairTriangleEquality,
        SpecialKind::PairPythagoras,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialKind::ASelfadjoint => "a_selfadjoint",
            SpecialKind::ANormal => "a_normal",
            SpecialKind::APositive => "a_positive",
            SpecialKind::ASkew => "a_skew",
            SpecialKind::PairOrthogonal => "pair_orthogonal",
            SpecialKind::PairTriangleEquality => "pair_triangle_equality",
            SpecialKind::PairPythagoras => "pair_pythagoras",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(
            self,
            SpecialKind::PairOrthogonal | SpecialKind::PairTriangleEquality | SpecialKind::PairPythagoras
        )
    }

    fn min_rank(self) -> usize {
        match self {
            SpecialKind::PairOrthogonal | SpecialKind::PairPythagoras => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpecialKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown kind {s:?}")))
    }
}

/// Output of [`gen_special`]; `s` is present for pair kinds.
#[derive(Clone, Debug)]
pub struct SpecialInstance<'s> {
    pub t: OperatorInSpace<'s>,
    pub s: Option<OperatorInSpace<'s>>,
}

fn random_unitary(rng: &mut ChaCha8Rng, r: usize) -> Result<ComplexMatrix> {
    let g = gaussian_matrix(rng, r, r);
    Ok(hermitian_eig(&(&g + &g.adjoint()), f64::INFINITY)?.eigenvectors)
}

fn outer(u: &[C64], v: &[C64], scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj() * scale)
}

fn draw_blocks(kind: SpecialKind, r: usize, rng: &mut ChaCha8Rng) -> Result<(ComplexMatrix, Option<ComplexMatrix>)> {
    Ok(match kind {
        SpecialKind::ASelfadjoint => {
            let g = gaussian_matrix(rng, r, r);
            (g.hermitian_part(), None)
        }
        SpecialKind::APositive => {
            let g = gaussian_matrix(rng, r, r);
            (g.matmul(&g.adjoint()), None)
        }
        SpecialKind::ASkew => {
            let g = gaussian_matrix(rng, r, r);
            ((&g - &g.adjoint()).scale_re(0.5), None)
        }
        SpecialKind::ANormal => {
            let u = random_unitary(rng, r)?;
            let z: Vec<C64> = (0..r).map(|_| gaussian_c64(rng)).collect();
            (u.matmul(&ComplexMatrix::diag(&z)).matmul(&u.adjoint()), None)
        }
        SpecialKind::PairOrthogonal => {
            let q = random_unitary(rng, r)?;
            let k = rng.gen_range(1..r);
            let q1 = q.select_columns(&(0..k).collect::<Vec<_>>());
            let q2 = q.select_columns(&(k..r).collect::<Vec<_>>());
            let bt = q1.matmul(&gaussian_matrix(rng, k, r));
            let bs = q2.matmul(&gaussian_matrix(rng, r - k, r));
            (bt, Some(bs))
        }
        SpecialKind::PairTriangleEquality => {
            let b = gaussian_matrix(rng, r, r);
            let c = rng.gen_range(0.5..2.0);
            let cb = b.scale_re(c);
            (b, Some(cb))
        }
        SpecialKind::PairPythagoras => {
            let q = random_unitary(rng, r)?;
            let w = random_unitary(rng, r)?;
            let sigma = rng.gen_range(0.5..2.0);
            let tau = rng.gen_range(0.5..2.0);
            let mut bt = outer(&q.column(0), &w.column(0), sigma);
            let bs = outer(&q.column(1), &w.column(0), tau);
            if r >= 3 {
                let extra = outer(&q.column(2), &w.column(1), sigma * rng.gen_range(0.2..0.8));
                bt = &bt + &extra;
            }
            (bt, Some(bs))
        }
    })
}

fn verify(kind: SpecialKind, inst: &SpecialInstance<'_>) -> Result<bool> {
    let t = &inst.t;
    if !t.is_admissible() || inst.s.as_ref().is_some_and(|s| !s.is_admissible()) {
        return Ok(false);
    }
    let tol = DEFAULT_PREDICATE_TOL;
    Ok(match kind {
        SpecialKind::ASelfadjoint => t.is_a_selfadjoint(tol),
        SpecialKind::APositive => t.is_a_positive(tol),
        SpecialKind::ANormal => t.is_a_normal(tol),
        SpecialKind::ASkew => t.scaled(C64::new(0.0, 1.0))?.is_a_selfadjoint(tol),
        SpecialKind::PairOrthogonal | SpecialKind::PairPythagoras => {
            let s = inst.s.as_ref().ok_or(Error::NoAdjoint)?;
            let scale = (spectral_norm(s.sharp()?) * t.spectral_norm()).max(1.0);
            orthogonality_defect(t, s)? <= ORTHOGONALITY_TOL * scale
        }
        SpecialKind::PairTriangleEquality => true,
    })
}

/// Operators of the requested class, built by lifting structured blocks; the
/// defining predicate is re-verified and the draw repeated on failure.
pub fn gen_special(space: &SemiHilbertSpace, kind: SpecialKind, seed: u64) -> Result<SpecialInstance<'_>> {
    let r = space.rank();
    if r < kind.min_rank() {
        return Err(Error::RankTooSmall {
            rank: r,
            needed: kind.min_rank(),
        });
    }
    let mut rng = rng_from(seed);
    // commuting with T^# is destroyed by a kernel term, so normal operators get none
    let with_kernel_term = kind != SpecialKind::ANormal;
    for _ in 0..MAX_ATTEMPTS {
        let (bt, bs) = draw_blocks(kind, r, &mut rng)?;
        let mut t = space.lift_matrix(&bt)?;
        if with_kernel_term {
            t = &t + &kernel_term(space, &mut rng);
        }
        let s = match bs {
            Some(bs) => {
                let mut s = space.lift_matrix(&bs)?;
                if with_kernel_term {
                    s = &s + &kernel_term(space, &mut rng);
                }
                Some(space.bind(s)?)
            }
            None => None,
        };
        let inst = SpecialInstance {
            t: space.bind(t)?,
            s,
        };
        if verify(kind, &inst)? {
            return Ok(inst);
        }
    }
    Err(Error::InvalidConfig(format!("generator for {kind} failed its postcondition")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::range_projector;

    fn space(dim: usize, rank: usize, seed: u64) -> SemiHilbertSpace {
        SemiHilbertSpace::with_default_tol(gen_psd(dim, rank, seed).unwrap()).unwrap()
    }

    #[test]
    fn psd_ranks() {
        for (dim, rank) in [(1, 1), (2, 1), (3, 3), (5, 2), (8, 8), (4, 0)] {
            let a = gen_psd(dim, rank, 9).unwrap();
            let (_, r) = range_projector(&a, DEFAULT_RANK_TOL).unwrap();
            assert_eq!(r, rank);
        }
        assert_eq!(gen_psd(2, 1, 17).unwrap(), gen_psd(2, 1, 17).unwrap());
        assert!(gen_psd(2, 3, 1).is_err());
    }

    #[test]
    fn admissible_draws() {
        let id = SemiHilbertSpace::with_default_tol(ComplexMatrix::identity(3)).unwrap();
        assert!(gen_admissible(&id, 1).unwrap().is_admissible());
        let d = SemiHilbertSpace::with_default_tol(ComplexMatrix::diag_real(&[1.0, 0.0])).unwrap();
        let t = gen_admissible(&d, 2).unwrap();
        assert!(t.matrix()[(0, 1)].norm() < 1e-14);
        for seed in 0..20 {
            let s = space(5, 1 + (seed as usize % 5), seed);
            assert!(gen_admissible(&s, seed).unwrap().is_admissible());
        }
    }

    #[test]
    fn lift_round_trip() {
        let s = space(5, 3, 4);
        let mut rng = rng_from(8);
        let b = gaussian_matrix(&mut rng, 3, 3);
        let c = gaussian_matrix(&mut rng, 3, 3);
        let t = lift(&s, &b).unwrap();
        assert!(t.compression().unwrap().rel_distance(&b) < 1e-10);
        let sharp_expected = s.lift_matrix(&b.adjoint()).unwrap();
        assert!(t.sharp().unwrap().rel_distance(&sharp_expected) < 1e-10);
        let u = lift(&s, &c).unwrap();
        let prod = t.compose(&u).unwrap();
        assert!(prod.compression().unwrap().rel_distance(&b.matmul(&c)) < 1e-10);
    }

    #[test]
    fn special_kinds_satisfy_their_predicates() {
        for kind in SpecialKind::ALL {
            for (dim, rank) in [(2, 2), (3, 2), (4, 3), (5, 5), (8, 4)] {
                let s = space(dim, rank, 31);
                let inst = gen_special(&s, kind, 77).unwrap();
                assert_eq!(inst.s.is_some(), kind.is_pair());
            }
        }
    }

    #[test]
    fn pair_kinds_need_rank_two() {
        let s = space(3, 1, 5);
        assert!(matches!(
            gen_special(&s, SpecialKind::PairOrthogonal, 1),
            Err(Error::RankTooSmall { rank: 1, needed: 2 })
        ));
        assert!(gen_special(&s, SpecialKind::ASelfadjoint, 1).is_ok());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in SpecialKind::ALL {
            assert_eq!(kind.name().parse::<SpecialKind>().unwrap(), kind);
        }
    }
}
