//! Closed-form solutions of `lap u + lambda^2 u = 0` and `lap v - mu^2 v = 0`
//! used as ground truth.
//!
//! Radial members are the sphere coefficients viewed as functions of `|x|`,
//! normalized to 1 at the origin: `sin(lambda|x|)/(lambda|x|)` and
//! `sinh(mu|x|)/(mu|x|)` when `m = 3`.

use serde::Serialize;

use crate::coeffs::{mean_coeff_unchecked, CoeffKind, Equation};
use crate::error::{domain, Result};
use crate::point::{dot, norm};
use crate::specfun::{self, Order, ZeroIndex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "equation", rename_all = "lowercase")]
pub enum EquationParam {
    Helmholtz { lambda: f64 },
    Modified { mu: f64 },
}

impl EquationParam {
    pub fn kind(self) -> Equation {
        match self {
            EquationParam::Helmholtz { .. } => Equation::Helmholtz,
            EquationParam::Modified { .. } => Equation::Modified,
        }
    }

    /// `lambda` or `mu`.
    pub fn wavenumber(self) -> f64 {
        match self {
            EquationParam::Helmholtz { lambda } => lambda,
            EquationParam::Modified { mu } => mu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Radial,
    Plane {
        dir: Vec<f64>,
        phase: f64,
    },
    /// `J_0(j |x| / R)` with `j = j_{0,n}` (Dirichlet) or `j_{1,n}` (Neumann).
    DiskEigen {
        bc: BoundaryCondition,
        n: u32,
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionSpec {
    #[serde(flatten)]
    pub equation: EquationParam,
    #[serde(flatten)]
    pub family: Family,
    pub m: u32,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        domain(format!("{name} must be positive and finite, got {v}"))
    }
}

fn check_m(m: u32) -> Result<()> {
    if m < 2 {
        return domain(format!("dimension must be >= 2, got {m}"));
    }
    Ok(())
}

impl SolutionSpec {
    pub fn radial(equation: EquationParam, m: u32) -> Result<Self> {
        check_m(m)?;
        positive("wavenumber", equation.wavenumber())?;
        Ok(SolutionSpec {
            equation,
            family: Family::Radial,
            m,
        })
    }

    /// `cos(lambda d.x + phase)` or `exp(mu d.x)`; the phase is ignored by
    /// the modified equation.
    pub fn plane(equation: EquationParam, dir: Vec<f64>, phase: f64) -> Result<Self> {
        let m = dir.len() as u32;
        check_m(m)?;
        positive("wavenumber", equation.wavenumber())?;
        if (norm(&dir) - 1.0).abs() > 1e-12 {
            return domain("plane-wave direction must be a unit vector");
        }
        if !phase.is_finite() {
            return domain("phase must be finite");
        }
        Ok(SolutionSpec {
            equation,
            family: Family::Plane { dir, phase },
            m,
        })
    }

    /// Disk eigenfunction in `R^2`; `lambda` follows from `lambda R = j`.
    pub fn disk_eigen(bc: BoundaryCondition, n: u32, radius: f64) -> Result<Self> {
        positive("disk radius", radius)?;
        if n == 0 {
            return domain("eigenfunction index must be >= 1");
        }
        let j = disk_zero(bc, n);
        Ok(SolutionSpec {
            equation: EquationParam::Helmholtz { lambda: j / radius },
            family: Family::DiskEigen { bc, n, radius },
            m: 2,
        })
    }

    pub fn dim(&self) -> usize {
        self.m as usize
    }

    pub fn wavenumber(&self) -> f64 {
        self.equation.wavenumber()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return domain(format!(
                "point has dimension {} but the solution lives in R^{}",
                x.len(),
                self.m
            ));
        }
        Ok(self.value(x))
    }

    /// Unchecked evaluation for inner loops.
    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        let k = self.wavenumber();
        match (&self.family, self.equation) {
            (Family::Radial, eq) => {
                let kind = CoeffKind::new(crate::coeffs::Surface::Sphere, eq.kind());
                mean_coeff_unchecked(kind, k * norm(x), self.m)
            }
            (Family::Plane { dir, phase }, EquationParam::Helmholtz { .. }) => {
                (k * dot(dir, x) + phase).cos()
            }
            (Family::Plane { dir, .. }, EquationParam::Modified { .. }) => (k * dot(dir, x)).exp(),
            (Family::DiskEigen { .. }, _) => {
                specfun::bessel_j_unchecked(Order::half(0), k * norm(x))
            }
        }
    }

    pub fn label(&self) -> String {
        let eq = match self.equation {
            EquationParam::Helmholtz { lambda } => format!("helmholtz(lambda={lambda})"),
            EquationParam::Modified { mu } => format!("modified(mu={mu})"),
        };
        let fam = match &self.family {
            Family::Radial => "radial".to_string(),
            Family::Plane { dir, phase } => format!("plane(d={dir:?},phase={phase})"),
            Family::DiskEigen { bc, n, radius } => format!("disk_eigen({bc:?},n={n},R={radius})"),
        };
        format!("{fam} {eq} m={}", self.m)
    }
}

fn disk_zero(bc: BoundaryCondition, n: u32) -> f64 {
    let nu = match bc {
        BoundaryCondition::Dirichlet => Order::half(0),
        BoundaryCondition::Neumann => Order::half(2),
    };
    specfun::bessel_j_zero(ZeroIndex { nu, n })
}

/// Central-difference residual of the governing equation at `x`:
/// `lap u + lambda^2 u` or `lap v - mu^2 v`.
pub fn pde_residual(spec: &SolutionSpec, x: &[f64], h: f64) -> Result<f64> {
    positive("step h", h)?;
    let u0 = spec.evaluate(x)?;
    let lap = fd_laplacian(&|y: &[f64]| spec.value(y), x, h);
    let k = spec.wavenumber();
    Ok(match spec.equation {
        EquationParam::Helmholtz { .. } => lap + k * k * u0,
        EquationParam::Modified { .. } => lap - k * k * u0,
    })
}

/// Second-order central-difference Laplacian.
pub fn fd_laplacian<F: Fn(&[f64]) -> f64 + ?Sized>(f: &F, x: &[f64], h: f64) -> f64 {
    let f0 = f(x);
    let mut y = x.to_vec();
    let mut lap = 0.0;
    for i in 0..x.len() {
        y[i] = x[i] + h;
        let fp = f(&y);
        y[i] = x[i] - h;
        let fm = f(&y);
        y[i] = x[i];
        lap += (fp - 2.0 * f0 + fm) / (h * h);
    }
    lap
}

fn spread_direction(m: u32, salt: f64) -> Vec<f64> {
    let v: Vec<f64> = (0..m)
        .map(|i| 1.0 + salt * (i as f64 + 1.0).sqrt())
        .collect();
    let n = norm(&v);
    v.into_iter().map(|c| c / n).collect()
}

/// Standard verification catalog in dimension `m`. Disk eigenfunctions
/// (n = 1, 2, both boundary conditions, `R = 1`) are included when `m = 2`.
pub fn catalog(m: u32) -> Vec<SolutionSpec> {
    let mut out = vec![
        SolutionSpec::radial(EquationParam::Helmholtz { lambda: 1.3 }, m),
        SolutionSpec::radial(EquationParam::Modified { mu: 0.8 }, m),
        SolutionSpec::plane(
            EquationParam::Helmholtz { lambda: 1.7 },
            spread_direction(m, 0.5),
            0.3,
        ),
        SolutionSpec::plane(
            EquationParam::Modified { mu: 1.1 },
            spread_direction(m, -0.3),
            0.0,
        ),
    ];
    if m == 2 {
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for n in 1..=2 {
                out.push(SolutionSpec::disk_eigen(bc, n, 1.0));
            }
        }
    }
    out.into_iter()
        .map(|s| s.expect("catalog parameters are valid"))
        .collect()
}

/// Modified-equation members of [`catalog`].
pub fn modified_catalog(m: u32) -> Vec<SolutionSpec> {
    catalog(m)
        .into_iter()
        .filter(|s| s.equation.kind() == Equation::Modified)
        .collect()
}
