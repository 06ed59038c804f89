use meanvalue::coeffs::{coeff_first_zero, mean_coeff, modified_asymptotic_constant, CoeffKind};
use proptest::prelude::*;

proptest! {
    #[test]
    fn quadratic_limit_at_zero(t in 1e-8f64..0.1, m in 2u32..10, k in 0usize..4) {
        let kind = CoeffKind::ALL[k];
        let c = mean_coeff(kind, t, m).unwrap();
        // The Taylor coefficient is 1/(2m) for spheres and 1/(2(m+2)) for balls.
        prop_assert!((c - 1.0).abs() <= 0.26 * t * t);
    }

    #[test]
    fn ordering_near_zero(t in 1e-6f64..=1.0, m in 2u32..10) {
        for (modified, helmholtz) in [
            (CoeffKind::SPHERE_MODIFIED, CoeffKind::SPHERE_HELMHOLTZ),
            (CoeffKind::BALL_MODIFIED, CoeffKind::BALL_HELMHOLTZ),
        ] {
            prop_assert!(mean_coeff(modified, t, m).unwrap() > 1.0);
            prop_assert!(mean_coeff(helmholtz, t, m).unwrap() < 1.0);
        }
    }

    #[test]
    fn m3_closed_forms(t in 1e-6f64..=30.0) {
        let s = mean_coeff(CoeffKind::SPHERE_HELMHOLTZ, t, 3).unwrap();
        prop_assert!((s - t.sin() / t).abs() <= 1e-12);
        let h = mean_coeff(CoeffKind::SPHERE_MODIFIED, t, 3).unwrap();
        let want = t.sinh() / t;
        prop_assert!((h - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn positive_below_first_zero(frac in 0.0f64..1.0, m in 2u32..10) {
        let j = coeff_first_zero(CoeffKind::SPHERE_HELMHOLTZ, m).unwrap();
        let t = frac * j * (1.0 - 1e-9);
        prop_assert!(mean_coeff(CoeffKind::SPHERE_HELMHOLTZ, t, m).unwrap() > 0.0);
    }

    #[test]
    fn cauchy_problem(r in 0.2f64..8.0, mu in 0.1f64..3.0, m in 2u32..8) {
        let h = 1e-4;
        let a = |s: f64| mean_coeff(CoeffKind::SPHERE_MODIFIED, mu * s, m).unwrap();
        let (ap, a0, am) = (a(r + h), a(r), a(r - h));
        let second = (ap - 2.0 * a0 + am) / (h * h);
        let first = (ap - am) / (2.0 * h);
        let res = second + (m as f64 - 1.0) / r * first - mu * mu * a0;
        prop_assert!(res.abs() <= 1e-5 * a0.max(1.0), "res = {res:e}");
    }
}

#[test]
fn sign_change_at_first_zero() {
    for m in 2..=5 {
        let j = coeff_first_zero(CoeffKind::SPHERE_HELMHOLTZ, m).unwrap();
        let below = mean_coeff(CoeffKind::SPHERE_HELMHOLTZ, j - 1e-8, m).unwrap();
        let above = mean_coeff(CoeffKind::SPHERE_HELMHOLTZ, j + 1e-8, m).unwrap();
        assert!(below > 0.0 && above < 0.0, "m={m}: {below:e} {above:e}");
    }
}

#[test]
fn helmholtz_decreasing_up_to_ball_zero() {
    for m in 2..=7 {
        // Decreasing on (0, j_{m/2,1}), which is the first zero of the ball coefficient.
        let end = coeff_first_zero(CoeffKind::BALL_HELMHOLTZ, m).unwrap();
        let n = 2000;
        let mut prev = f64::INFINITY;
        for i in 1..n {
            let t = end * i as f64 / n as f64;
            let c = mean_coeff(CoeffKind::SPHERE_HELMHOLTZ, t, m).unwrap();
            assert!(c < prev, "m={m} t={t}");
            prev = c;
        }
    }
}

#[test]
fn modified_increasing() {
    for m in 2..=9 {
        let mut prev = 1.0;
        for i in 1..=5000 {
            let t = i as f64 * 0.01;
            let c = mean_coeff(CoeffKind::SPHERE_MODIFIED, t, m).unwrap();
            assert!(c > prev, "m={m} t={t}");
            prev = c;
        }
    }
}

#[test]
fn asymptotic_ratio_at_fifty() {
    let r: f64 = 50.0;
    for m in 2..=4 {
        let rho = mean_coeff(CoeffKind::SPHERE_MODIFIED, r, m).unwrap()
            * r.powf((m as f64 - 1.0) / 2.0)
            * (-r).exp();
        let c = modified_asymptotic_constant(m).unwrap();
        assert!((rho / c - 1.0).abs() <= 0.01, "m={m} ratio={}", rho / c);
    }
}

#[test]
fn asymptotic_ratio_leading_correction() {
    // Two terms of the large-argument expansion of I_nu.
    let r: f64 = 50.0;
    for m in 2..=7 {
        let rho = mean_coeff(CoeffKind::SPHERE_MODIFIED, r, m).unwrap()
            * r.powf((m as f64 - 1.0) / 2.0)
            * (-r).exp();
        let dev = rho / modified_asymptotic_constant(m).unwrap() - 1.0;
        let mu = (m as f64 - 2.0).powi(2);
        let lead = -(mu - 1.0) / (8.0 * r) + (mu - 1.0) * (mu - 9.0) / (128.0 * r * r);
        assert!((dev - lead).abs() <= 1e-5, "m={m} dev={dev} lead={lead}");
    }
}
