mod common;

use proptest::prelude::*;
use semihilbert::fuzz::{gen_admissible, gen_special, SpecialKind};
use semihilbert::linalg::inner;
use semihilbert::radius::{a_crawford, a_crawford_direct, a_numerical_radius, a_numerical_radius_oracle};
use semihilbert::{OperatorInSpace, RadiusEstimate, C64, DEFAULT_PREDICATE_TOL, DEFAULT_RADIUS_TOL};

use common::{config, dim_rank, space};

const TOL: f64 = DEFAULT_RADIUS_TOL;

fn w(t: &OperatorInSpace<'_>) -> RadiusEstimate {
    a_numerical_radius(t, TOL).unwrap()
}

/// `<Tx, x>_A` for the certificate of `est`, and `||x||_A`.
fn certificate_form(t: &OperatorInSpace<'_>, est: &RadiusEstimate) -> Option<(C64, f64)> {
    let x = est.certificate_vector.as_ref()?;
    let s = t.space();
    let q = s.a_inner(&t.matrix().mul_vec(x), x).unwrap();
    Some((q, s.a_norm_vec(x).unwrap()))
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn methods_agree((dim, rank) in dim_rank(2, 8), seed: u64) {
        let s = space(dim, rank, seed);
        let t = gen_admissible(&s, seed ^ 0x11).unwrap();
        let primary = w(&t).value;
        let oracle = a_numerical_radius_oracle(&t, TOL).unwrap().value;
        prop_assert!((primary - oracle).abs() <= 2e-8, "{primary} vs {oracle}");
    }

    #[test]
    fn halfnorm_bounds((dim, rank) in dim_rank(1, 8), seed: u64) {
        let s = space(dim, rank, seed);
        let t = gen_admissible(&s, seed ^ 0x12).unwrap();
        let (wt, n) = (w(&t).value, t.norm().unwrap());
        prop_assert!(0.5 * n <= wt + 1e-8);
        prop_assert!(wt <= n + 1e-8);
    }
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn seminorm_axioms((dim, rank) in dim_rank(1, 6), seed: u64, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let s = space(dim, rank, seed);
        let t = gen_admissible(&s, seed ^ 0x21).unwrap();
        let u = gen_admissible(&s, seed ^ 0x22).unwrap();
        let lambda = C64::new(re, im);
        let scaled = w(&t.scaled(lambda).unwrap()).value;
        prop_assert!((scaled - lambda.norm() * w(&t).value).abs() <= 1e-8 * (1.0 + scaled));
        let sum = w(&t.plus(&u).unwrap()).value;
        prop_assert!(sum <= w(&t).value + w(&u).value + 1e-8);
    }

    #[test]
    fn selfadjoint_and_normal_attain_the_norm((dim, rank) in dim_rank(1, 8), seed: u64, normal: bool) {
        let s = space(dim, rank, seed);
        let kind = if normal { SpecialKind::ANormal } else { SpecialKind::ASelfadjoint };
        let t = gen_special(&s, kind, seed ^ 0x31).unwrap().t;
        let in_class = if normal { t.is_a_normal(DEFAULT_PREDICATE_TOL) } else { t.is_a_selfadjoint(DEFAULT_PREDICATE_TOL) };
        prop_assert!(in_class);
        let (wt, n) = (w(&t).value, t.norm().unwrap());
        prop_assert!((wt - n).abs() <= 1e-8 * (1.0 + n), "{wt} vs {n}");
    }

    #[test]
    fn crawford_below_radius_and_rotation_invariant((dim, rank) in dim_rank(1, 6), seed: u64, phi in 0.0f64..std::f64::consts::TAU, positive: bool) {
        let s = space(dim, rank, seed);
        // positive operators have c_A > 0, generic ones usually c_A = 0
        let t = if positive {
            gen_special(&s, SpecialKind::APositive, seed ^ 0x41).unwrap().t
        } else {
            gen_admissible(&s, seed ^ 0x41).unwrap()
        };
        let c = a_crawford(&t, TOL).unwrap();
        prop_assert!(c.value >= 0.0);
        prop_assert!(c.value <= w(&t).value + 1e-9);
        let rotated = a_crawford(&t.scaled(C64::from_polar(1.0, phi)).unwrap(), TOL).unwrap().value;
        prop_assert!((rotated - c.value).abs() <= 1e-9 * (1.0 + c.value), "{rotated} vs {}", c.value);
    }

    #[test]
    fn certificates_reproduce_values((dim, rank) in dim_rank(1, 8), seed: u64) {
        let s = space(dim, rank, seed);
        let t = gen_admissible(&s, seed ^ 0x51).unwrap();
        for est in [w(&t), a_numerical_radius_oracle(&t, TOL).unwrap()] {
            let (q, nx) = certificate_form(&t, &est).unwrap();
            prop_assert!((nx - 1.0).abs() <= 1e-9);
            prop_assert!((q.norm() - est.value).abs() <= est.abs_error_bound + 1e-8 * (1.0 + est.value));
        }
        let p = gen_special(&s, SpecialKind::APositive, seed ^ 0x52).unwrap().t;
        let c = a_crawford(&p, TOL).unwrap();
        prop_assert!(c.value > 0.0);
        let (q, nx) = certificate_form(&p, &c).unwrap();
        prop_assert!((nx - 1.0).abs() <= 1e-9);
        // the witness lies on the supporting line Re(e^{i theta} z) = c_A
        let on_line = (C64::from_polar(1.0, c.certificate_theta) * q).re;
        prop_assert!((on_line - c.value).abs() <= 1e-8 * (1.0 + c.value));
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn direct_crawford_is_an_upper_bound((dim, rank) in dim_rank(1, 5), seed: u64) {
        let s = space(dim, rank, seed);
        let t = gen_special(&s, SpecialKind::APositive, seed ^ 0x61).unwrap().t.scaled(C64::new(0.3, 0.8)).unwrap();
        let c = a_crawford(&t, TOL).unwrap().value;
        let direct = a_crawford_direct(&t, 20, seed).unwrap().value;
        prop_assert!(c <= direct + 1e-9, "{c} > {direct}");
        prop_assert!(direct - c <= 1e-6 * (1.0 + c), "{c} vs {direct}");
    }
}

#[test]
fn inner_is_linear_in_first_argument() {
    let x = [C64::new(1.0, 2.0), C64::new(0.0, -1.0)];
    let y = [C64::new(3.0, 0.0), C64::new(1.0, 1.0)];
    let i = C64::new(0.0, 1.0);
    let xi: Vec<C64> = x.iter().map(|z| z * i).collect();
    assert_eq!(inner(&xi, &y), inner(&x, &y) * i);
}
