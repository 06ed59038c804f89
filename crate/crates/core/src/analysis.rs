//! Executable consequences of the mean-value identities: nodal-set location
//! for Helmholtz solutions, the weak maximum principle and growth property
//! for the modified equation, the two ingredients of the Liouville argument,
//! and the restricted mean value property checker.

use serde::Serialize;

use crate::coeffs::{
    coeff_first_zero, mean_coeff_unchecked, modified_asymptotic_constant, CoeffKind, Equation,
};
use crate::error::{Error, Result};
use crate::geometry::{interior_points, DomainGeometry};
use crate::means::{sphere_mean, sphere_rule, QuadConfig};
use crate::point::{dist, Point};
use crate::report::CheckReport;
use crate::rng::{substream, unit_direction};
use crate::solutions::{fd_laplacian, SolutionSpec};
use crate::specfun;

/// Fraction of `j_{(m-2)/2,1}` added to the critical radius when searching
/// for a sign change.
pub const NODAL_DELTA_FRACTION: f64 = 0.05;
/// Minimum number of sampled directions in the nodal search.
pub const NODAL_DIRECTIONS: usize = 64;
/// Required accuracy of a located zero.
pub const NODAL_ZERO_TOL: f64 = 1e-10;
/// Slack of the maximum-principle comparison.
pub const MAX_PRINCIPLE_TOL: f64 = 1e-9;
/// Finite-difference step of the PDE residual reported by `rmvp_check`.
pub const RMVP_FD_STEP: f64 = 1e-3;

fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

fn search_directions(m: usize) -> Vec<Vec<f64>> {
    if m == 2 {
        return (0..NODAL_DIRECTIONS)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / NODAL_DIRECTIONS as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
    }
    let mut dirs = Vec::with_capacity(NODAL_DIRECTIONS.max(2 * m));
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; m];
            e[i] = s;
            dirs.push(e);
        }
    }
    let mut rng = substream(0, 0);
    while dirs.len() < NODAL_DIRECTIONS {
        let mut d = vec![0.0; m];
        unit_direction(&mut rng, &mut d);
        dirs.push(d);
    }
    dirs
}

/// Finds a zero of a Helmholtz solution inside `B_{r_star}(x)`, which must
/// exist once `r_star` exceeds `j_{(m-2)/2,1} / lambda`.
///
/// The sphere of radius `r_+ = (1 + delta) j / lambda` carries a point where
/// `u` has the sign opposite to `u(x)`, because the sphere mean equals
/// `a(lambda r_+) u(x)` with a negative coefficient. Bisection along the
/// segment from `x` to that point then pins down a zero.
pub fn nodal_locate(spec: &SolutionSpec, x: &[f64], r_star: f64) -> Result<Point> {
    if spec.equation.kind() != Equation::Helmholtz {
        return precondition("nodal location applies to Helmholtz solutions only");
    }
    let u0 = spec.evaluate(x)?;
    let lambda = spec.wavenumber();
    let j = coeff_first_zero(CoeffKind::SPHERE_HELMHOLTZ, spec.m)?;
    let critical = j / lambda;
    if !(r_star > critical) {
        return precondition(format!(
            "r_star = {r_star} must exceed j_(m-2)/2,1 / lambda = {critical}"
        ));
    }
    if u0 == 0.0 {
        return Ok(Point(x.to_vec()));
    }
    // Keep r_+ strictly inside B_{r_star} when r_star is close to critical.
    let r_plus = ((1.0 + NODAL_DELTA_FRACTION) * j).min(0.5 * (j + lambda * r_star)) / lambda;

    let u = |y: &[f64]| spec.value(y);
    let s0 = u0.signum();
    let along =
        |dir: &[f64], t: f64| -> Vec<f64> { x.iter().zip(dir).map(|(a, d)| a + t * d).collect() };

    let mut best: Option<(Vec<f64>, f64)> = None;
    let consider = |best: &mut Option<(Vec<f64>, f64)>, dir: Vec<f64>| {
        let v = s0 * u(&along(&dir, r_plus));
        if v < 0.0 && best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            *best = Some((dir, v));
        }
    };
    for d in search_directions(x.len()) {
        consider(&mut best, d);
    }
    if best.is_none() {
        // Denser fallback before giving up.
        match sphere_rule(
            x.len(),
            &QuadConfig {
                points_per_circle: 1024,
                ..Default::default()
            },
        ) {
            Some(rule) => rule.into_iter().for_each(|(d, _)| consider(&mut best, d)),
            None => {
                let mut rng = substream(1, 0);
                for _ in 0..4096 {
                    let mut d = vec![0.0; x.len()];
                    unit_direction(&mut rng, &mut d);
                    consider(&mut best, d);
                }
            }
        }
    }
    let Some((dir, _)) = best else {
        return Err(Error::Search(format!(
            "no sign change of u found on the sphere of radius {r_plus}"
        )));
    };

    let (mut lo, mut hi) = (0.0, r_plus);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = s0 * u(&along(&dir, mid));
        if v > 0.0 {
            lo = mid;
        } else if v < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            hi = mid;
            break;
        }
    }
    let t = if (u(&along(&dir, lo))).abs() <= (u(&along(&dir, hi))).abs() {
        lo
    } else {
        hi
    };
    let x0 = along(&dir, t);
    let ux0 = u(&x0);
    if ux0.abs() > NODAL_ZERO_TOL {
        return Err(Error::Search(format!("bisection stalled at |u| = {ux0:e}")));
    }
    // Local sign change across the located point.
    let probe = 1e-6 * r_plus;
    let before = s0 * u(&along(&dir, (t - probe).max(0.0)));
    let after = s0 * u(&along(&dir, (t + probe).min(r_plus)));
    if !(before > 0.0 && after < 0.0) {
        return Err(Error::Search(
            "no sign change across the located zero".into(),
        ));
    }
    Ok(Point(x0))
}

/// Samples `|f|` inside and on the boundary of `geom` and checks
/// `sup_D |f| <= max_{boundary} |f|` within [`MAX_PRINCIPLE_TOL`].
pub fn max_principle_check<F, D>(
    f: &F,
    label: &str,
    geom: &D,
    n_interior: usize,
    n_boundary: usize,
    seed: u64,
) -> CheckReport
where
    F: Fn(&[f64]) -> f64 + ?Sized,
    D: DomainGeometry + ?Sized,
{
    let mut rng = substream(seed, 0);
    let interior = interior_points(geom, n_interior, &mut rng);
    let interior_max = interior.iter().map(|p| f(p).abs()).fold(0.0, f64::max);

    let mut rng = substream(seed, 1);
    let mut samples: Vec<(Point, f64)> = (0..n_boundary.max(1))
        .map(|_| {
            let p = geom.sample_boundary(&mut rng);
            let v = f(&p).abs();
            (p, v)
        })
        .collect();
    samples.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (lo, hi) = geom.bbox();
    let step0 = 0.1 * dist(&lo, &hi);
    let boundary_max = samples
        .iter()
        .take(8)
        .map(|(p, v)| climb_boundary(f, geom, p.clone(), *v, step0))
        .fold(0.0, f64::max);

    let mut rep = CheckReport::new("max_principle", MAX_PRINCIPLE_TOL);
    rep.gate("excess", interior_max - boundary_max)
        .info("interior_max", interior_max)
        .info("boundary_max", boundary_max)
        .meta("solution", label)
        .meta("n_interior", interior.len())
        .meta("n_boundary", n_boundary)
        .meta("seed", seed);
    rep
}

/// Coordinate hill-climb of `|f|` along the boundary using the projection.
fn climb_boundary<F, D>(f: &F, geom: &D, mut p: Point, mut best: f64, mut step: f64) -> f64
where
    F: Fn(&[f64]) -> f64 + ?Sized,
    D: DomainGeometry + ?Sized,
{
    let m = p.dim();
    while step > 1e-12 {
        let mut improved = false;
        for i in 0..m {
            for s in [step, -step] {
                let mut q = p.clone();
                q[i] += s;
                let q = geom.project(&q);
                let v = f(&q).abs();
                if v > best {
                    best = v;
                    p = q;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best
}

/// [`max_principle_check`] for a catalog solution of the modified equation.
pub fn max_principle_check_spec<D: DomainGeometry + ?Sized>(
    spec: &SolutionSpec,
    geom: &D,
    n_interior: usize,
    n_boundary: usize,
    seed: u64,
) -> Result<CheckReport> {
    if spec.equation.kind() != Equation::Modified {
        return precondition("the weak maximum principle holds for the modified equation");
    }
    if geom.dim() != spec.dim() {
        return Err(Error::Domain(
            "solution and domain dimensions differ".into(),
        ));
    }
    Ok(max_principle_check(
        &|y: &[f64]| spec.value(y),
        &spec.label(),
        geom,
        n_interior,
        n_boundary,
        seed,
    ))
}

/// For each radius, checks that `|v|` somewhere on the sphere of radius `r`
/// around `x` exceeds `|v(x)|` by at least `(a(mu r) - 1) |v(x)|`, up to the
/// quadrature error of the sphere rule.
pub fn growth_check<F>(
    f: &F,
    x: &[f64],
    mu: f64,
    radii: &[f64],
    cfg: &QuadConfig,
) -> Result<CheckReport>
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    cfg.validate()?;
    let m = x.len();
    let vx = f(x);
    let mut rep = CheckReport::new("growth", 0.0);
    rep.info("v(x)", vx)
        .meta("x", format!("{x:?}"))
        .meta("mu", mu);
    if vx == 0.0 {
        rep.meta("skipped", "v(x) = 0: no strict comparison at this point");
        return Ok(rep);
    }
    let dirs: Vec<(Vec<f64>, f64)> = sphere_rule(m, cfg).unwrap_or_else(|| {
        let mut rng = substream(cfg.seed, 0);
        let w = 1.0 / cfg.samples as f64;
        (0..cfg.samples)
            .map(|_| {
                let mut d = vec![0.0; m];
                unit_direction(&mut rng, &mut d);
                (d, w)
            })
            .collect()
    });
    for &r in radii {
        if !(r > 0.0) {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        let est = sphere_mean(f, x, r, cfg)?;
        let max_abs = dirs
            .iter()
            .map(|(d, _)| {
                let y: Vec<f64> = x.iter().zip(d).map(|(a, di)| a + r * di).collect();
                f(&y).abs()
            })
            .fold(0.0, f64::max);
        let coeff = mean_coeff_unchecked(CoeffKind::SPHERE_MODIFIED, mu * r, m as u32);
        let predicted = (coeff - 1.0) * vx.abs();
        let quad_tol = 1e-8 * vx.abs().max(1.0) + 3.0 * est.std_error;
        let margin = max_abs - vx.abs();
        rep.gate_with(
            format!("r={r}/shortfall"),
            predicted - quad_tol - margin,
            0.0,
        )
        .gate_with(format!("r={r}/strict"), -margin, -f64::MIN_POSITIVE)
        .info(format!("r={r}/margin"), margin)
        .info(format!("r={r}/predicted"), predicted);
    }
    Ok(rep)
}

/// [`growth_check`] for a catalog solution of the modified equation.
pub fn growth_check_spec(
    spec: &SolutionSpec,
    x: &[f64],
    radii: &[f64],
    cfg: &QuadConfig,
) -> Result<CheckReport> {
    if spec.equation.kind() != Equation::Modified {
        return precondition("growth check applies to the modified equation");
    }
    spec.evaluate(x)?;
    let mut rep = growth_check(&|y: &[f64]| spec.value(y), x, spec.wavenumber(), radii, cfg)?;
    rep.meta("solution", spec.label());
    Ok(rep)
}

/// Tolerance on `rho(r_max) / C - 1` in [`liouville_ratio`].
pub const LIOUVILLE_RATIO_TOL: f64 = 0.02;
/// Round-off allowance on the final deviation.
pub const LIOUVILLE_ROUNDOFF: f64 = 1e-12;
/// Radius beyond which the deviation must decrease.
pub const LIOUVILLE_MONOTONE_FROM: f64 = 10.0;

/// `a(r) r^{(m-1)/2} e^{-r}` for the modified sphere coefficient.
pub fn liouville_rho(m: u32, r: f64) -> f64 {
    let half = (m as f64 - 1.0) / 2.0;
    if r < 700.0 {
        mean_coeff_unchecked(CoeffKind::SPHERE_MODIFIED, r, m) * r.powf(half) * (-r).exp()
    } else {
        let nu = CoeffKind::SPHERE_MODIFIED.order(m);
        let g = specfun::gamma(nu.value() + 1.0).expect("half-integer");
        let scaled = specfun::bessel_i_scaled(nu, r).expect("r > 0");
        g * (2.0 / r).powf(nu.value()) * scaled * r.powf(half)
    }
}

/// Checks the two quantitative ingredients of the Liouville argument: the
/// growth `a(r) ~ C e^r / r^{(m-1)/2}` of the modified sphere coefficient,
/// and the collapse of the bound `(1 + r)^n r^{(m-1)/2} e^{-r}` as `r` grows.
pub fn liouville_ratio(m: u32, radii: &[f64]) -> Result<CheckReport> {
    if radii.len() < 2 || radii.windows(2).any(|w| !(w[0] < w[1])) || !(radii[0] > 0.0) {
        return precondition("radii must be positive and strictly increasing");
    }
    let r_min = radii[0];
    let r_max = *radii.last().expect("non-empty");
    if r_max < 30.0 {
        return precondition("largest radius must be at least 30");
    }
    let c = modified_asymptotic_constant(m)?;
    let devs: Vec<f64> = radii
        .iter()
        .map(|&r| (liouville_rho(m, r) / c - 1.0).abs())
        .collect();

    let mut worst_increase = f64::NEG_INFINITY;
    for (w, r) in devs.windows(2).zip(radii) {
        if *r >= LIOUVILLE_MONOTONE_FROM {
            worst_increase = worst_increase.max(w[1] - w[0]);
        }
    }
    let mut rep = CheckReport::new("liouville", LIOUVILLE_RATIO_TOL);
    // For m = 5 the deviation at r = 50 is exactly 1/50, so the comparison
    // needs a few ulps of room.
    rep.gate_with(
        "final_deviation",
        *devs.last().expect("non-empty"),
        LIOUVILLE_RATIO_TOL + LIOUVILLE_ROUNDOFF,
    );
    if worst_increase.is_finite() {
        // Deviations below ~1e-15 are round-off; allow that much jitter.
        rep.gate_with("monotonicity_violation", worst_increase, 1e-13);
    }
    rep.info("asymptotic_constant", c)
        .info("rho(r_max)", liouville_rho(m, r_max));

    let bound = |n: i32, r: f64| (1.0 + r).powi(n) * r.powf((m as f64 - 1.0) / 2.0) * (-r).exp();
    for n in 0..=2 {
        let ratio = bound(n, r_max) / bound(n, r_min);
        rep.gate_with(format!("bound_ratio_n{n}"), ratio, 1.0 - 1e-12);
    }
    rep.meta("m", m).meta("r_min", r_min).meta("r_max", r_max);
    Ok(rep)
}

/// Radius used by the restricted mean value check at each point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum RadiusFunction {
    /// `r(x) = f * dist(x)` with `0 < f <= 1`.
    Fraction(f64),
    /// The same radius everywhere.
    Constant(f64),
}

impl Default for RadiusFunction {
    fn default() -> Self {
        RadiusFunction::Fraction(0.5)
    }
}

impl RadiusFunction {
    pub fn radius(&self, dist_to_boundary: f64) -> f64 {
        match *self {
            RadiusFunction::Fraction(f) => f * dist_to_boundary,
            RadiusFunction::Constant(r) => r,
        }
    }
}

/// Restricted mean value check: at every grid point compares the sphere mean
/// at radius `rf(x)` with `a(mu rf(x)) f(x)`. Also reports the
/// finite-difference residual of `lap f - mu^2 f`, which is small exactly
/// when the identity holds for all small radii.
#[allow(clippy::too_many_arguments)]
pub fn rmvp_check<F, D>(
    f: &F,
    f_label: &str,
    geom: &D,
    mu: f64,
    rf: RadiusFunction,
    grid: &[Vec<f64>],
    cfg: &QuadConfig,
    tol: f64,
) -> CheckReport
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
    D: DomainGeometry + ?Sized,
{
    let mut rep = CheckReport::new("rmvp", tol);
    let mut sup_res: f64 = 0.0;
    let mut sup_excess: f64 = 0.0;
    let mut sup_pde: f64 = 0.0;
    let mut errors = Vec::new();
    for (i, x) in grid.iter().enumerate() {
        let d = geom.dist(x);
        let r = rf.radius(d);
        if x.len() != geom.dim() || !(d > 0.0) || !(r > 0.0) || r > d {
            errors.push(format!("point {i}: radius {r} not admissible (dist {d})"));
            continue;
        }
        let est = match sphere_mean(f, x, r, cfg) {
            Ok(e) => e,
            Err(e) => {
                errors.push(format!("point {i}: {e}"));
                continue;
            }
        };
        let fx = f(x);
        let coeff = mean_coeff_unchecked(CoeffKind::SPHERE_MODIFIED, mu * r, x.len() as u32);
        let res = (est.value - coeff * fx).abs();
        sup_res = sup_res.max(res);
        sup_excess = sup_excess.max(res - 3.0 * est.std_error);
        let pde = (fd_laplacian(f, x, RMVP_FD_STEP) - mu * mu * fx).abs();
        sup_pde = sup_pde.max(pde);
    }
    rep.gate("sup_mean_residual", sup_excess)
        .gate_with("inadmissible_points", errors.len() as f64, 0.0)
        .info("sup_raw_residual", sup_res)
        .info("sup_pde_residual", sup_pde)
        .meta("function", f_label)
        .meta("mu", mu)
        .meta("grid_points", grid.len())
        .meta("radius_function", format!("{rf:?}"));
    if !errors.is_empty() {
        rep.meta("errors", errors.join("; "));
    }
    rep
}

/// Quasi-random interior grid for [`rmvp_check`].
pub fn rmvp_grid<D: DomainGeometry + ?Sized>(geom: &D, n: usize, seed: u64) -> Vec<Vec<f64>> {
    interior_points(geom, n, &mut substream(seed, 2))
        .into_iter()
        .map(|p| p.0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Shape;
    use crate::solutions::EquationParam;
    use std::f64::consts::{E, PI};

    #[test]
    fn nodal_radial_3d_finds_pi() {
        let s = SolutionSpec::radial(EquationParam::Helmholtz { lambda: 1.0 }, 3).unwrap();
        let x0 = nodal_locate(&s, &[0.0; 3], 3.5).unwrap();
        assert!((x0.norm() - PI).abs() < 1e-8);
        assert!(s.value(&x0).abs() <= 1e-10);
    }

    #[test]
    fn nodal_radial_2d_finds_j01() {
        let s = SolutionSpec::radial(EquationParam::Helmholtz { lambda: 1.0 }, 2).unwrap();
        let x0 = nodal_locate(&s, &[0.0; 2], 3.0).unwrap();
        assert!((x0.norm() - 2.404_825_557_695_773).abs() < 1e-8);
    }

    #[test]
    fn nodal_plane_wave() {
        let s = SolutionSpec::plane(
            EquationParam::Helmholtz { lambda: 1.0 },
            vec![1.0, 0.0],
            0.0,
        )
        .unwrap();
        let x0 = nodal_locate(&s, &[0.0; 2], 4.0).unwrap();
        assert!(s.value(&x0).abs() <= 1e-10);
        assert!((x0[0].abs() - PI / 2.0).abs() < 1e-8);
        assert!(x0.norm() < 4.0);
    }

    #[test]
    fn nodal_preconditions() {
        let s = SolutionSpec::radial(EquationParam::Helmholtz { lambda: 1.0 }, 3).unwrap();
        assert!(matches!(
            nodal_locate(&s, &[0.0; 3], 3.0),
            Err(Error::Precondition(_))
        ));
        let v = SolutionSpec::radial(EquationParam::Modified { mu: 1.0 }, 3).unwrap();
        assert!(matches!(
            nodal_locate(&v, &[0.0; 3], 5.0),
            Err(Error::Precondition(_))
        ));
        // Starting on a zero returns the start point.
        let x = [PI, 0.0, 0.0];
        let p = nodal_locate(&s, &x, 3.5);
        assert!(p.is_ok());
    }

    #[test]
    fn nodal_close_to_critical_radius_stays_inside() {
        let s = SolutionSpec::radial(EquationParam::Helmholtz { lambda: 2.0 }, 3).unwrap();
        let r_star = PI / 2.0 + 1e-3;
        let x0 = nodal_locate(&s, &[0.0; 3], r_star).unwrap();
        assert!(x0.norm() < r_star);
    }

    #[test]
    fn max_principle_examples() {
        let ball = Shape::unit_ball(3).unwrap();
        let plane = SolutionSpec::plane(
            EquationParam::Modified { mu: 1.0 },
            vec![1.0, 0.0, 0.0],
            0.0,
        )
        .unwrap();
        let rep = max_principle_check_spec(&plane, &ball, 2000, 2000, 1).unwrap();
        assert!(rep.passed);
        assert!((rep.residual("boundary_max").unwrap() - E).abs() < 1e-9);
        assert!(rep.residual("interior_max").unwrap() < E);

        let radial = SolutionSpec::radial(EquationParam::Modified { mu: 1.0 }, 3).unwrap();
        let rep = max_principle_check_spec(&radial, &ball, 2000, 500, 2).unwrap();
        assert!(rep.passed);
        assert!(rep.residual("interior_max").unwrap() < 1f64.sinh());

        let rep = max_principle_check(&|_: &[f64]| 0.0, "zero", &ball, 100, 100, 3);
        assert!(rep.passed);
        assert_eq!(rep.residual("excess"), Some(0.0));
    }

    #[test]
    fn growth_examples() {
        let cfg = QuadConfig::default();
        let radial = SolutionSpec::radial(EquationParam::Modified { mu: 1.0 }, 3).unwrap();
        let rep = growth_check_spec(&radial, &[0.0; 3], &[1.0], &cfg).unwrap();
        assert!(rep.passed, "{rep:?}");
        let margin = rep.residual("r=1/margin").unwrap();
        assert!((margin - (1f64.sinh() - 1.0)).abs() < 1e-12);

        let plane =
            SolutionSpec::plane(EquationParam::Modified { mu: 1.0 }, vec![1.0, 0.0], 0.0).unwrap();
        let rep = growth_check_spec(&plane, &[0.0; 2], &[1.0], &cfg).unwrap();
        assert!(rep.passed);
        assert!((rep.residual("r=1/margin").unwrap() - (E - 1.0)).abs() < 1e-12);

        // 2 sinh(x_1) solves the modified equation and vanishes at the origin.
        let odd = |y: &[f64]| y[0].exp() - (-y[0]).exp();
        let rep = growth_check(&odd, &[0.0; 2], 1.0, &[0.5], &cfg).unwrap();
        assert!(rep.passed);
        assert!(rep.meta.contains_key("skipped"));
    }

    #[test]
    fn liouville_examples() {
        let radii: Vec<f64> = (1..=50).map(|r| r as f64).collect();
        let rep = liouville_ratio(3, &radii).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!((rep.residual("rho(r_max)").unwrap() - 0.5).abs() < 1e-12);
        assert!(rep.residual("bound_ratio_n0").unwrap() < 1e-17);
        let rep = liouville_ratio(2, &radii).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(liouville_ratio(3, &[1.0, 20.0]).is_err());
        assert!(liouville_ratio(3, &[5.0, 1.0, 40.0]).is_err());
    }

    #[test]
    fn liouville_rho_branches_agree() {
        for m in [2, 3, 5] {
            let a = liouville_rho(m, 699.999);
            let nu = CoeffKind::SPHERE_MODIFIED.order(m);
            let g = specfun::gamma(nu.value() + 1.0).unwrap();
            let b = g
                * (2.0 / 699.999f64).powf(nu.value())
                * specfun::bessel_i_scaled(nu, 699.999).unwrap()
                * 699.999f64.powf((m as f64 - 1.0) / 2.0);
            assert!((a - b).abs() < 1e-10 * b);
        }
    }

    #[test]
    fn rmvp_examples() {
        let ball = Shape::unit_ball(3).unwrap();
        let cfg = QuadConfig::default();
        let plane = SolutionSpec::plane(
            EquationParam::Modified { mu: 1.0 },
            vec![1.0, 0.0, 0.0],
            0.0,
        )
        .unwrap();
        let grid = rmvp_grid(&ball, 20, 4);
        let f = |y: &[f64]| plane.value(y);
        let rep = rmvp_check(
            &f,
            "plane",
            &ball,
            1.0,
            RadiusFunction::default(),
            &grid,
            &cfg,
            1e-8,
        );
        assert!(rep.passed, "{rep:?}");
        assert!(rep.residual("sup_pde_residual").unwrap() <= 1e-4);

        let x1 = |y: &[f64]| y[0];
        let grid = vec![vec![0.5, 0.0, 0.0]];
        let rep = rmvp_check(
            &x1,
            "x1",
            &ball,
            1.0,
            RadiusFunction::Constant(0.25),
            &grid,
            &cfg,
            1e-8,
        );
        assert!(!rep.passed);
        let want = (0.25f64.sinh() / 0.25 - 1.0) * 0.5;
        assert!((rep.residual("sup_raw_residual").unwrap() - want).abs() < 1e-12);

        let zero = |_: &[f64]| 0.0;
        let grid = rmvp_grid(&ball, 5, 1);
        let rep = rmvp_check(
            &zero,
            "0",
            &ball,
            1.0,
            RadiusFunction::default(),
            &grid,
            &cfg,
            1e-8,
        );
        assert!(rep.passed);
    }

    #[test]
    fn rmvp_flags_inadmissible_radius() {
        let ball = Shape::unit_ball(2).unwrap();
        let grid = vec![vec![0.9, 0.0], vec![0.0, 0.0]];
        let f = |_: &[f64]| 1.0;
        let rep = rmvp_check(
            &f,
            "1",
            &ball,
            1.0,
            RadiusFunction::Constant(0.5),
            &grid,
            &QuadConfig::default(),
            1e-8,
        );
        assert!(!rep.passed);
        assert_eq!(rep.residual("inadmissible_points"), Some(1.0));
    }
}
