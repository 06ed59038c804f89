//! Spherical and ball means `M(f, x, r)` and residual checks of the
//! mean-value identities.
//!
//! Deterministic rules are used for `m = 2` (equispaced trapezoid on the
//! circle) and `m = 3` (Gauss-Legendre in `cos(theta)` times a trapezoid in
//! `phi`). Higher dimensions fall back to Monte Carlo with Gaussian-direction
//! sampling. Ball means integrate sphere means radially,
//! `M_ball(f,x,r) = m r^{-m} int_0^r t^{m-1} M_sphere(f,x,t) dt`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{mean_coeff_unchecked, CoeffKind, Surface};
use crate::error::{domain, Result};
use crate::quadrature::{gauss_legendre, gauss_legendre_on};
use crate::report::CheckReport;
use crate::rng::{substream, unit_direction};
use crate::solutions::SolutionSpec;
use rand::Rng;

/// Number of radial Gauss-Legendre nodes used by deterministic ball means.
pub const RADIAL_NODES: usize = 64;

/// Monte Carlo samples per seeded substream.
const MC_CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadMethod {
    Deterministic,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub method: QuadMethod,
    /// Trapezoid points on the circle (`m = 2`).
    pub points_per_circle: usize,
    /// Gauss-Legendre order in `cos(theta)` (`m = 3`); `phi` uses twice as many points.
    pub polar_order: usize,
    /// Monte Carlo sample count.
    pub samples: usize,
    pub seed: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            method: QuadMethod::Deterministic,
            points_per_circle: 64,
            polar_order: 32,
            samples: 100_000,
            seed: 0,
        }
    }
}

impl QuadConfig {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        QuadConfig {
            method: QuadMethod::MonteCarlo,
            samples,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_circle < 8 {
            return domain("points_per_circle must be >= 8");
        }
        if self.polar_order < 4 {
            return domain("polar_order must be >= 4");
        }
        if self.samples < 100 {
            return domain("samples must be >= 100");
        }
        Ok(())
    }

    /// Method actually used in dimension `m`.
    pub fn effective_method(&self, m: usize) -> QuadMethod {
        if m >= 4 {
            QuadMethod::MonteCarlo
        } else {
            self.method
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub value: f64,
    /// Zero for deterministic quadrature.
    pub std_error: f64,
    pub n_evals: usize,
    pub method: QuadMethod,
}

impl MeanEstimate {
    fn exact(value: f64, n_evals: usize) -> Self {
        MeanEstimate {
            value,
            std_error: 0.0,
            n_evals,
            method: QuadMethod::Deterministic,
        }
    }
}

/// Deterministic rule on the unit sphere as `(direction, weight)` pairs with
/// weights summing to one. `None` when the dimension or config calls for
/// Monte Carlo.
pub fn sphere_rule(m: usize, cfg: &QuadConfig) -> Option<Vec<(Vec<f64>, f64)>> {
    if cfg.effective_method(m) == QuadMethod::MonteCarlo {
        return None;
    }
    match m {
        2 => {
            let n = cfg.points_per_circle;
            let w = 1.0 / n as f64;
            Some(
                (0..n)
                    .map(|k| {
                        let a = 2.0 * PI * k as f64 / n as f64;
                        (vec![a.cos(), a.sin()], w)
                    })
                    .collect(),
            )
        }
        3 => {
            let (zs, ws) = gauss_legendre(cfg.polar_order);
            let n_phi = 2 * cfg.polar_order;
            let mut out = Vec::with_capacity(zs.len() * n_phi);
            for (z, wz) in zs.iter().zip(&ws) {
                let s = (1.0 - z * z).sqrt();
                for j in 0..n_phi {
                    let phi = 2.0 * PI * j as f64 / n_phi as f64;
                    out.push((
                        vec![s * phi.cos(), s * phi.sin(), *z],
                        wz / (2.0 * n_phi as f64),
                    ));
                }
            }
            Some(out)
        }
        _ => None,
    }
}

/// Compensated summation.
#[derive(Debug, Default, Clone, Copy)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// Running mean / second moment, merged in a fixed order (Chan et al.).
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub(crate) fn push(&mut self, v: f64) {
        self.n += 1.0;
        let d = v - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (v - self.mean);
    }

    pub(crate) fn merge(self, o: Moments) -> Moments {
        if self.n == 0.0 {
            return o;
        }
        if o.n == 0.0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n / n,
            m2: self.m2 + o.m2 + d * d * self.n * o.n / n,
        }
    }

    pub(crate) fn estimate(self) -> MeanEstimate {
        let var = if self.n > 1.0 {
            self.m2 / (self.n - 1.0)
        } else {
            0.0
        };
        MeanEstimate {
            value: self.mean,
            std_error: (var / self.n).sqrt(),
            n_evals: self.n as usize,
            method: QuadMethod::MonteCarlo,
        }
    }
}

/// Monte Carlo average of `sample(rng)` over `n` draws. Draw `i` uses
/// substream `i / MC_CHUNK` of `seed`, so output is independent of thread count.
pub(crate) fn mc_average<S>(n: usize, seed: u64, sample: S) -> MeanEstimate
where
    S: Fn(&mut crate::rng::StreamRng) -> f64 + Sync,
{
    let chunks = n.div_ceil(MC_CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = substream(seed, c as u64);
            let count = MC_CHUNK.min(n - c * MC_CHUNK);
            let mut mo = Moments::default();
            for _ in 0..count {
                mo.push(sample(&mut rng));
            }
            mo
        })
        .collect();
    parts
        .into_iter()
        .fold(Moments::default(), Moments::merge)
        .estimate()
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("radius must be positive and finite, got {r}"));
    }
    Ok(())
}

/// Mean of `f` over the sphere of radius `r` centred at `x`.
pub fn sphere_mean<F>(f: &F, x: &[f64], r: f64, cfg: &QuadConfig) -> Result<MeanEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    check_radius(r)?;
    cfg.validate()?;
    let m = x.len();
    if m < 2 {
        return domain("sphere means need dimension >= 2");
    }
    Ok(match sphere_rule(m, cfg) {
        Some(rule) => sphere_mean_with_rule(f, x, r, &rule),
        None => mc_sphere_mean(f, x, r, cfg.samples, cfg.seed),
    })
}

fn sphere_mean_with_rule<F>(f: &F, x: &[f64], r: f64, rule: &[(Vec<f64>, f64)]) -> MeanEstimate
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut y = x.to_vec();
    let mut acc = NeumaierSum::default();
    for (dir, w) in rule {
        for ((yi, xi), di) in y.iter_mut().zip(x).zip(dir) {
            *yi = xi + r * di;
        }
        acc.add(w * f(&y));
    }
    MeanEstimate::exact(acc.value(), rule.len())
}

fn mc_sphere_mean<F>(f: &F, x: &[f64], r: f64, n: usize, seed: u64) -> MeanEstimate
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    let m = x.len();
    mc_average(n, seed, |rng| {
        let mut dir = vec![0.0; m];
        unit_direction(rng, &mut dir);
        let y: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + r * d).collect();
        f(&y)
    })
}

/// Mean of `f` over the ball of radius `r` centred at `x`.
pub fn ball_mean<F>(f: &F, x: &[f64], r: f64, cfg: &QuadConfig) -> Result<MeanEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    check_radius(r)?;
    cfg.validate()?;
    let m = x.len();
    if m < 2 {
        return domain("ball means need dimension >= 2");
    }
    let Some(rule) = sphere_rule(m, cfg) else {
        let mf = m as f64;
        return Ok(mc_average(cfg.samples, cfg.seed, |rng| {
            let mut dir = vec![0.0; m];
            unit_direction(rng, &mut dir);
            // Radial density proportional to t^{m-1} on (0, r).
            let t = r * rng.random::<f64>().powf(1.0 / mf);
            let y: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            f(&y)
        }));
    };
    let nodes = gauss_legendre_on(RADIAL_NODES, 0.0, r);
    let parts: Vec<f64> = nodes
        .par_iter()
        .map(|&(t, w)| w * t.powi(m as i32 - 1) * sphere_mean_with_rule(f, x, t, &rule).value)
        .collect();
    let mut integral = NeumaierSum::default();
    parts.into_iter().for_each(|p| integral.add(p));
    let integral = integral.value();
    Ok(MeanEstimate::exact(
        m as f64 * integral / r.powi(m as i32),
        RADIAL_NODES * rule.len(),
    ))
}

/// Checks `M(f, x, r) = a(k r) f(x)` for a catalog solution on the sphere or
/// ball. Passes when the residual is within `tol`, widened by three standard
/// errors for Monte Carlo estimates.
pub fn identity_residual(
    spec: &SolutionSpec,
    x: &[f64],
    r: f64,
    surface: Surface,
    cfg: &QuadConfig,
    tol: f64,
) -> Result<CheckReport> {
    let f = |y: &[f64]| spec.value(y);
    let fx = spec.evaluate(x)?;
    let est = match surface {
        Surface::Sphere => sphere_mean(&f, x, r, cfg)?,
        Surface::Ball => ball_mean(&f, x, r, cfg)?,
    };
    let kind = CoeffKind::new(surface, spec.equation.kind());
    let coeff = mean_coeff_unchecked(kind, spec.wavenumber() * r, spec.m);
    let residual = (est.value - coeff * fx).abs();
    let allowed = tol + 3.0 * est.std_error;

    let mut rep = CheckReport::new(format!("identity/{}", kind), tol);
    rep.gate_with("residual", residual, allowed)
        .info("mean", est.value)
        .info("coeff", coeff)
        .info("f(x)", fx)
        .info("std_error", est.std_error)
        .meta("solution", spec.label())
        .meta("x", format!("{x:?}"))
        .meta("r", r)
        .meta("method", format!("{:?}", est.method))
        .meta("n_evals", est.n_evals);
    Ok(rep)
}

/// Residual of the Euler-Poisson-Darboux equation
/// `M_rr + (m-1)/r M_r - lap_x M = 0` for the spherical mean of `f`, by
/// central differences of step `h` in `r` and in each coordinate of `x`.
pub fn epd_residual<F>(f: &F, x: &[f64], r: f64, h: f64, cfg: &QuadConfig) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    if !(h > 0.0 && r > h) {
        return domain(format!("EPD needs r > h > 0, got r={r} h={h}"));
    }
    let m = x.len();
    let mean = |c: &[f64], t: f64| sphere_mean(f, c, t, cfg).map(|e| e.value);
    let m0 = mean(x, r)?;
    let mp = mean(x, r + h)?;
    let mm = mean(x, r - h)?;
    let m_rr = (mp - 2.0 * m0 + mm) / (h * h);
    let m_r = (mp - mm) / (2.0 * h);
    let mut lap = 0.0;
    let mut c = x.to_vec();
    for i in 0..m {
        c[i] = x[i] + h;
        let a = mean(&c, r)?;
        c[i] = x[i] - h;
        let b = mean(&c, r)?;
        c[i] = x[i];
        lap += (a - 2.0 * m0 + b) / (h * h);
    }
    Ok(m_rr + (m as f64 - 1.0) / r * m_r - lap)
}
