//! Weighted walk-on-spheres for the Dirichlet problem
//! `lap v - mu^2 v = 0` in `D`, `v = g` on the boundary.
//!
//! Rearranging the sphere identity `M(v, x, d) = a(mu d) v(x)` gives
//! `v(x) = E[v(y)] / a(mu d)` with `y` uniform on the largest inscribed
//! sphere. Each jump therefore multiplies the walk weight by `1 / a(mu d)`,
//! which lies in `(0, 1)`; the walk stops in the `eps`-shell and reads `g` at
//! the nearest boundary point.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{mean_coeff_unchecked, CoeffKind};
use crate::error::{domain, Result};
use crate::geometry::DomainGeometry;
use crate::means::{MeanEstimate, Moments};
use crate::rng::{mix_seed, substream, unit_direction};

const WALKS_PER_TASK: usize = 1024;

/// Fraction of truncated walks above which an estimate is flagged invalid.
pub const MAX_TRUNCATED_FRACTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WosConfig {
    /// Width of the boundary capture shell.
    pub eps: f64,
    pub n_walks: usize,
    pub max_steps: usize,
    pub seed: u64,
}

impl Default for WosConfig {
    fn default() -> Self {
        WosConfig {
            eps: 1e-4,
            n_walks: 100_000,
            max_steps: 1_000_000,
            seed: 0,
        }
    }
}

impl WosConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) || !self.eps.is_finite() {
            return domain(format!("eps must be positive, got {}", self.eps));
        }
        if self.n_walks == 0 {
            return domain("n_walks must be >= 1");
        }
        if self.max_steps == 0 {
            return domain("max_steps must be >= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WosEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_walks: usize,
    /// Walks stopped by `max_steps` before reaching the shell.
    pub truncated: usize,
    /// False when more than 0.1% of walks were truncated.
    pub valid: bool,
    /// Largest `|w g|` over all walks.
    pub max_contribution: f64,
    pub mean_steps: f64,
}

impl WosEstimate {
    pub fn as_mean_estimate(&self) -> MeanEstimate {
        MeanEstimate {
            value: self.value,
            std_error: self.std_error,
            n_evals: self.n_walks,
            method: crate::means::QuadMethod::MonteCarlo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Walk {
    pub contribution: f64,
    pub steps: usize,
    pub truncated: bool,
}

/// One weighted walk from `x`, drawing from `rng`.
pub fn walk<D, G, R>(geom: &D, g: &G, mu: f64, x: &[f64], cfg: &WosConfig, rng: &mut R) -> Walk
where
    D: DomainGeometry + ?Sized,
    G: Fn(&[f64]) -> f64 + ?Sized,
    R: rand::Rng + ?Sized,
{
    let m = x.len();
    let mut y = x.to_vec();
    let mut dir = vec![0.0; m];
    let mut w = 1.0;
    let mut steps = 0;
    loop {
        let d = geom.dist(&y);
        if d <= cfg.eps {
            let b = geom.project(&y);
            return Walk {
                contribution: w * g(&b),
                steps,
                truncated: false,
            };
        }
        if steps >= cfg.max_steps {
            let b = geom.project(&y);
            return Walk {
                contribution: w * g(&b),
                steps,
                truncated: true,
            };
        }
        w /= mean_coeff_unchecked(CoeffKind::SPHERE_MODIFIED, mu * d, m as u32);
        unit_direction(rng, &mut dir);
        for (yi, di) in y.iter_mut().zip(&dir) {
            *yi += d * di;
        }
        steps += 1;
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    moments: Moments,
    truncated: usize,
    max_abs: f64,
    steps: usize,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            moments: self.moments.merge(o.moments),
            truncated: self.truncated + o.truncated,
            max_abs: self.max_abs.max(o.max_abs),
            steps: self.steps + o.steps,
        }
    }
}

/// Estimates `v(x)` for `lap v - mu^2 v = 0` in `geom` with `v = g` on the
/// boundary. Walk `i` draws from substream `i` of `cfg.seed`, and partial
/// sums are combined in walk order, so results do not depend on the number
/// of worker threads.
pub fn wos_solve<D, G>(geom: &D, g: &G, mu: f64, x: &[f64], cfg: &WosConfig) -> Result<WosEstimate>
where
    D: DomainGeometry + ?Sized,
    G: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    cfg.validate()?;
    if !(mu > 0.0) || !mu.is_finite() {
        return domain(format!("mu must be positive, got {mu}"));
    }
    if x.len() != geom.dim() {
        return domain(format!(
            "start point has dimension {} but the domain lives in R^{}",
            x.len(),
            geom.dim()
        ));
    }
    let d0 = geom.dist(x);
    if d0 <= cfg.eps {
        return domain(format!(
            "start point must lie inside the domain and farther than eps from the boundary (dist = {d0})"
        ));
    }

    let tasks = cfg.n_walks.div_ceil(WALKS_PER_TASK);
    let parts: Vec<Tally> = (0..tasks)
        .into_par_iter()
        .map(|t| {
            let start = t * WALKS_PER_TASK;
            let end = (start + WALKS_PER_TASK).min(cfg.n_walks);
            let mut tally = Tally::default();
            for i in start..end {
                let mut rng = substream(cfg.seed, i as u64);
                let wk = walk(geom, g, mu, x, cfg, &mut rng);
                tally.moments.push(wk.contribution);
                tally.truncated += wk.truncated as usize;
                tally.max_abs = tally.max_abs.max(wk.contribution.abs());
                tally.steps += wk.steps;
            }
            tally
        })
        .collect();
    let total = parts.into_iter().fold(Tally::default(), Tally::merge);
    let est = total.moments.estimate();
    Ok(WosEstimate {
        value: est.value,
        std_error: est.std_error,
        n_walks: cfg.n_walks,
        truncated: total.truncated,
        valid: (total.truncated as f64) <= MAX_TRUNCATED_FRACTION * cfg.n_walks as f64,
        max_contribution: total.max_abs,
        mean_steps: total.steps as f64 / cfg.n_walks as f64,
    })
}

/// Runs [`wos_solve`] at every grid point. Point `i` uses a seed derived from
/// `(cfg.seed, i)`; a bad point yields an error in its slot only.
pub fn wos_field<D, G>(
    geom: &D,
    g: &G,
    mu: f64,
    grid: &[Vec<f64>],
    cfg: &WosConfig,
) -> Vec<Result<WosEstimate>>
where
    D: DomainGeometry + ?Sized,
    G: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    grid.iter()
        .enumerate()
        .map(|(i, x)| {
            let c = WosConfig {
                seed: mix_seed(cfg.seed, i as u64),
                ..*cfg
            };
            wos_solve(geom, g, mu, x, &c)
        })
        .collect()
}
