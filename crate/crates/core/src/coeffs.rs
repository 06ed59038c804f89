//! Mean-value coefficients.
//!
//! For a solution `u` of `lap u + lambda^2 u = 0` the sphere and ball means
//! over an admissible ball of radius `r` equal `a(lambda r) u(x)`; for
//! `lap v - mu^2 v = 0` the factor is the modified coefficient of `mu r`.
//! All four coefficients are `Gamma(nu+1) (t/2)^{-nu} C_nu(t)` with
//! `C = J` or `I` and `nu = (m-2)/2` (sphere) or `m/2` (ball), i.e. the
//! confluent limit function `0F1(; nu+1; -/+ t^2/4)`, which is 1 at `t = 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{self, Order, ZeroIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Sphere,
    Ball,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    /// `lap u + lambda^2 u = 0`
    Helmholtz,
    /// `lap v - mu^2 v = 0`
    Modified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoeffKind {
    pub surface: Surface,
    pub equation: Equation,
}

impl CoeffKind {
    pub const SPHERE_HELMHOLTZ: CoeffKind = CoeffKind::new(Surface::Sphere, Equation::Helmholtz);
    pub const SPHERE_MODIFIED: CoeffKind = CoeffKind::new(Surface::Sphere, Equation::Modified);
    pub const BALL_HELMHOLTZ: CoeffKind = CoeffKind::new(Surface::Ball, Equation::Helmholtz);
    pub const BALL_MODIFIED: CoeffKind = CoeffKind::new(Surface::Ball, Equation::Modified);

    pub const ALL: [CoeffKind; 4] = [
        Self::SPHERE_HELMHOLTZ,
        Self::SPHERE_MODIFIED,
        Self::BALL_HELMHOLTZ,
        Self::BALL_MODIFIED,
    ];

    pub const fn new(surface: Surface, equation: Equation) -> Self {
        CoeffKind { surface, equation }
    }

    /// Bessel order carried by the coefficient in dimension `m`.
    pub fn order(self, m: u32) -> Order {
        match self.surface {
            Surface::Sphere => Order::half(m - 2),
            Surface::Ball => Order::half(m),
        }
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.surface {
            Surface::Sphere => "sphere",
            Surface::Ball => "ball",
        };
        let e = match self.equation {
            Equation::Helmholtz => "helmholtz",
            Equation::Modified => "modified",
        };
        write!(f, "{s}-{e}")
    }
}

impl FromStr for CoeffKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CoeffKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown coefficient kind '{s}' (expected sphere-helmholtz, ball-helmholtz, sphere-modified or ball-modified)"
                ))
            })
    }
}

fn check_dim(m: u32) -> Result<()> {
    if m < 2 {
        return domain(format!("dimension must be >= 2, got {m}"));
    }
    Ok(())
}

/// Mean-value coefficient at the scaled radius `t = lambda r` or `mu r`.
pub fn mean_coeff(kind: CoeffKind, t: f64, m: u32) -> Result<f64> {
    check_dim(m)?;
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("scaled radius must be finite and >= 0, got {t}"));
    }
    Ok(mean_coeff_unchecked(kind, t, m))
}

pub(crate) fn mean_coeff_unchecked(kind: CoeffKind, t: f64, m: u32) -> f64 {
    let nu = kind.order(m);
    match kind.equation {
        Equation::Helmholtz => specfun::j_normalized(nu, t),
        Equation::Modified => specfun::i_normalized(nu, t),
    }
}

/// First positive zero of a Helmholtz coefficient: `j_{(m-2)/2,1}` for the
/// sphere and `j_{m/2,1}` for the ball. Modified coefficients never vanish.
pub fn coeff_first_zero(kind: CoeffKind, m: u32) -> Result<f64> {
    check_dim(m)?;
    if kind.equation == Equation::Modified {
        return domain("modified coefficients are positive and have no zeros");
    }
    Ok(specfun::bessel_j_zero(ZeroIndex {
        nu: kind.order(m),
        n: 1,
    }))
}

/// Leading constant `Gamma(m/2) 2^{(m-3)/2} / sqrt(pi)` in the growth
/// `a(r) ~ C e^r / r^{(m-1)/2}` of the modified sphere coefficient.
pub fn modified_asymptotic_constant(m: u32) -> Result<f64> {
    check_dim(m)?;
    let g = specfun::gamma(m as f64 / 2.0)?;
    Ok(g * 2f64.powf((m as f64 - 3.0) / 2.0) / std::f64::consts::PI.sqrt())
}
