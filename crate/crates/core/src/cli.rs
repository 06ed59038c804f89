//! Command-line front end. Every run prints JSON lines (or CSV) that embed a
//! manifest of the command, its parameters and the seed.
//!
//! Exit codes: 0 when every check passed, 1 when a check failed, 2 on usage
//! or domain errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    growth_check_spec, liouville_ratio, max_principle_check_spec, nodal_locate, rmvp_check,
    rmvp_grid, RadiusFunction, NODAL_ZERO_TOL,
};
use crate::coeffs::{mean_coeff, CoeffKind, Surface};
use crate::error::{Error, Result};
use crate::geometry::{interior_points, DomainGeometry, Shape};
use crate::means::{ball_mean, epd_residual, identity_residual, sphere_mean, QuadConfig};
use crate::point::norm;
use crate::report::CheckReport;
use crate::rng::substream;
use crate::solutions::{catalog, modified_catalog, BoundaryCondition, EquationParam, SolutionSpec};
use crate::wos::{wos_solve, WosConfig};

const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "meanvalue",
    version,
    about = "Mean value identities and walk-on-spheres for Helmholtz-type equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
struct Common {
    /// Output format (JSON lines by default; `coeff` defaults to CSV).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Worker threads (default: all hardware threads).
    #[arg(long)]
    #[serde(skip)]
    workers: Option<usize>,
    /// Override the default tolerance of the selected checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for every random choice of the run.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Timestamp recorded in the manifest (default: current Unix time).
    #[arg(long)]
    #[serde(skip)]
    timestamp: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SolutionFamily {
    Radial,
    Plane,
    Eigen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Bc {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Args, Serialize)]
struct SolutionArgs {
    /// Solution family.
    #[arg(long, value_enum)]
    solution: Option<SolutionFamily>,
    /// Helmholtz wavenumber.
    #[arg(long, conflicts_with = "mu")]
    lambda: Option<f64>,
    /// Modified Helmholtz wavenumber.
    #[arg(long)]
    mu: Option<f64>,
    /// Unit direction of a plane wave (default e1).
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    dir: Option<Nums>,
    /// Phase of a Helmholtz plane wave.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phase: f64,
    /// Boundary condition of a disk eigenfunction.
    #[arg(long, value_enum, default_value_t = Bc::Dirichlet)]
    bc: Bc,
    /// Zero index of a disk eigenfunction.
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Disk radius of an eigenfunction.
    #[arg(long = "disk-radius", default_value_t = 1.0)]
    disk_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ShapeKind {
    Ball,
    Box,
}

#[derive(Debug, Args, Serialize)]
struct DomainArgs {
    #[arg(long, value_enum, default_value_t = ShapeKind::Ball)]
    shape: ShapeKind,
    /// Ball radius, or half side length of the box `[-h, h]^m`.
    #[arg(long, default_value_t = 1.0)]
    size: f64,
}

impl DomainArgs {
    fn build(&self, m: usize) -> Result<Shape> {
        match self.shape {
            ShapeKind::Ball => Shape::ball(vec![0.0; m], self.size),
            ShapeKind::Box => Shape::cube(m, self.size),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    Identities,
    Epd,
    Eigen,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum RmvpTarget {
    /// Modified-equation catalog members (expected to pass).
    Catalog,
    /// f(x) = x1 (expected to fail).
    X1,
    /// f(x) = |x|^2 (expected to fail).
    Norm2,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a mean-value coefficient over a t-grid.
    Coeff {
        #[arg(long, value_parser = parse_kind)]
        kind: CoeffKind,
        #[arg(long)]
        dim: u32,
        /// `start:stop:step`, or a comma-separated list.
        #[arg(long, value_parser = parse_grid)]
        t: Nums,
        #[command(flatten)]
        common: Common,
    },
    /// Run the mean-value identity, EPD and eigenfunction suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        dim: u32,
        /// Random (x, r) pairs per catalog member.
        #[arg(long, default_value_t = 20)]
        cases: usize,
        /// Monte Carlo samples per mean in dimension >= 4.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted walk-on-spheres solve of the modified Dirichlet problem.
    Wos {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        mu: f64,
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        #[arg(long, default_value_t = 100_000)]
        walks: usize,
        #[arg(long = "max-steps", default_value_t = 1_000_000)]
        max_steps: usize,
        /// Evaluation point `x1,x2,...`.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        at: Nums,
        /// `const:<c>` or `exp:<d1,...>` (the trace of `exp(d . x)`).
        #[arg(long, value_parser = parse_boundary, allow_hyphen_values = true)]
        boundary: BoundaryData,
        #[command(flatten)]
        common: Common,
    },
    /// Locate a zero of a Helmholtz solution within a ball.
    Nodal {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        /// Centre of the ball (default: origin).
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        at: Option<Nums>,
        #[arg(long = "r-star")]
        r_star: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Weak maximum principle and growth checks for the modified equation.
    Maxprin {
        #[command(flatten)]
        solution: SolutionArgs,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[arg(long, default_value_t = 10_000)]
        interior: usize,
        #[arg(long = "boundary-samples", default_value_t = 2_000)]
        boundary_samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Restricted mean value property check on an interior grid.
    Rmvp {
        #[arg(long, value_enum, default_value_t = RmvpTarget::Catalog)]
        target: RmvpTarget,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 3)]
        dim: u32,
        /// Screening constant used with the x1 and norm2 targets.
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Radius as a fraction of the distance to the boundary.
        #[arg(long, default_value_t = 0.5, conflicts_with = "radius")]
        fraction: f64,
        /// Constant radius instead of a fraction of the distance.
        #[arg(long)]
        radius: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Growth of the modified sphere coefficient against polynomial bounds.
    Liouville {
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[arg(long = "r-min", default_value_t = 1.0)]
        r_min: f64,
        #[arg(long = "r-max", default_value_t = 50.0)]
        r_max: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "lowercase")]
enum BoundaryData {
    Const(f64),
    Exp(Vec<f64>),
}

impl BoundaryData {
    fn eval(&self, y: &[f64]) -> f64 {
        match self {
            BoundaryData::Const(c) => *c,
            BoundaryData::Exp(d) => d.iter().zip(y).map(|(a, b)| a * b).sum::<f64>().exp(),
        }
    }
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("malformed number '{s}'"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("number must be finite, got '{s}'"))
    }
}

/// Comma-separated numbers as one flag value.
#[derive(Debug, Clone, Serialize)]
#[serde(transparent)]
struct Nums(Vec<f64>);

impl std::ops::Deref for Nums {
    type Target = Vec<f64>;
    fn deref(&self) -> &Vec<f64> {
        &self.0
    }
}

fn parse_list(s: &str) -> std::result::Result<Nums, String> {
    s.split(',')
        .map(parse_number)
        .collect::<std::result::Result<_, _>>()
        .map(Nums)
}

fn parse_grid(s: &str) -> std::result::Result<Nums, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, h] => {
            let (a, b, h) = (parse_number(a)?, parse_number(b)?, parse_number(h)?);
            if !(h > 0.0) || b < a {
                return Err("grid needs start <= stop and step > 0".into());
            }
            let n = ((b - a) / h + 1e-9).floor() as usize;
            if n > 10_000_000 {
                return Err("grid too large".into());
            }
            Ok(Nums((0..=n).map(|i| a + i as f64 * h).collect()))
        }
        [_] => parse_list(s),
        _ => Err("expected start:stop:step or a comma-separated list".into()),
    }
}

fn parse_kind(s: &str) -> std::result::Result<CoeffKind, String> {
    s.parse::<CoeffKind>().map_err(|e| e.to_string())
}

fn parse_boundary(s: &str) -> std::result::Result<BoundaryData, String> {
    match s.split_once(':') {
        Some(("const", c)) => Ok(BoundaryData::Const(parse_number(c)?)),
        Some(("exp", d)) => Ok(BoundaryData::Exp(parse_list(d)?.0)),
        _ => Err(format!(
            "boundary must be const:<c> or exp:<d1,...>, got '{s}'"
        )),
    }
}

impl SolutionArgs {
    fn is_set(&self) -> bool {
        self.solution.is_some()
    }

    fn build(&self, m: u32, default_eq: EquationParam) -> Result<SolutionSpec> {
        let eq = match (self.lambda, self.mu) {
            (Some(lambda), _) => EquationParam::Helmholtz {
                lambda: lambda.abs(),
            },
            (None, Some(mu)) => EquationParam::Modified { mu: mu.abs() },
            (None, None) => default_eq,
        };
        match self.solution.unwrap_or(SolutionFamily::Radial) {
            SolutionFamily::Radial => SolutionSpec::radial(eq, m),
            SolutionFamily::Plane => {
                let dir = self.dir.clone().map(|d| d.0).unwrap_or_else(|| {
                    let mut e = vec![0.0; m as usize];
                    e[0] = 1.0;
                    e
                });
                if dir.len() != m as usize {
                    return Err(Error::Domain("--dir must have --dim components".into()));
                }
                SolutionSpec::plane(eq, dir, self.phase)
            }
            SolutionFamily::Eigen => {
                if m != 2 {
                    return Err(Error::Domain(
                        "disk eigenfunctions live in dimension 2".into(),
                    ));
                }
                let bc = match self.bc {
                    Bc::Dirichlet => BoundaryCondition::Dirichlet,
                    Bc::Neumann => BoundaryCondition::Neumann,
                };
                SolutionSpec::disk_eigen(bc, self.n, self.disk_radius)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct RunManifest {
    command: String,
    parameters: BTreeMap<String, String>,
    seed: u64,
    artifact_version: String,
    timestamp: String,
}

#[derive(Serialize)]
struct Line<'a, T: Serialize> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    body: T,
}

/// Collects the output of one run.
struct Output {
    manifest: RunManifest,
    format: Format,
    text: String,
    failed: bool,
    csv_header: bool,
}

impl Output {
    fn report(&mut self, rep: &CheckReport) {
        self.failed |= !rep.passed;
        match self.format {
            Format::Json => self.json(rep),
            Format::Csv => {
                if !self.csv_header {
                    self.csv_header = true;
                    self.manifest_comment();
                    self.text.push_str("check,label,value,tolerance,passed\n");
                }
                for r in &rep.residuals {
                    let tol = r.tolerance.map(|t| t.to_string()).unwrap_or_default();
                    self.text.push_str(&format!(
                        "{},{},{},{},{}\n",
                        csv_field(&rep.name),
                        csv_field(&r.label),
                        r.value,
                        tol,
                        r.passes()
                    ));
                }
            }
        }
    }

    fn json<T: Serialize>(&mut self, body: T) {
        let line = Line {
            manifest: &self.manifest,
            body,
        };
        self.text
            .push_str(&serde_json::to_string(&line).expect("reports serialize"));
        self.text.push('\n');
    }

    fn manifest_comment(&mut self) {
        let m = serde_json::to_string(&self.manifest).expect("manifest serializes");
        self.text.push_str(&format!("# manifest {m}\n"));
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn parameters<T: Serialize>(args: &T) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(args) {
        flatten_params("", &map, &mut out);
    }
    out
}

fn flatten_params(
    prefix: &str,
    map: &serde_json::Map<String, serde_json::Value>,
    out: &mut BTreeMap<String, String>,
) {
    for (k, v) in map {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            serde_json::Value::Object(inner) => flatten_params(&key, inner, out),
            serde_json::Value::Null => {}
            serde_json::Value::String(s) => {
                out.insert(key, s.clone());
            }
            other => {
                out.insert(key, other.to_string());
            }
        }
    }
}

fn now_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

/// Runs the command line `argv` (including the program name) and returns
/// the process exit code.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Coeff { common, .. }
        | Command::Verify { common, .. }
        | Command::Wos { common, .. }
        | Command::Nodal { common, .. }
        | Command::Maxprin { common, .. }
        | Command::Rmvp { common, .. }
        | Command::Liouville { common, .. } => common,
    }
}

#[derive(Serialize)]
struct Params<'a, T: Serialize> {
    #[serde(flatten)]
    args: T,
    #[serde(flatten)]
    common: &'a Common,
}

fn manifest_for(cmd: &Command) -> RunManifest {
    let c = common(cmd);
    let (name, params) = match cmd {
        Command::Coeff {
            kind,
            dim,
            t,
            common,
        } => (
            "coeff",
            parameters(&Params {
                args: serde_json::json!({"kind": kind.to_string(), "dim": dim, "t": t}),
                common,
            }),
        ),
        Command::Verify {
            suite,
            dim,
            cases,
            samples,
            common,
        } => (
            "verify",
            parameters(&Params {
                args: serde_json::json!({"suite": suite, "dim": dim, "cases": cases, "samples": samples}),
                common,
            }),
        ),
        Command::Wos {
            domain,
            dim,
            mu,
            eps,
            walks,
            max_steps,
            at,
            boundary,
            common,
        } => (
            "wos",
            parameters(&Params {
                args: serde_json::json!({
                    "domain": domain, "dim": dim, "mu": mu, "eps": eps, "walks": walks,
                    "max_steps": max_steps, "at": at, "boundary": boundary,
                }),
                common,
            }),
        ),
        Command::Nodal {
            solution,
            dim,
            at,
            r_star,
            common,
        } => (
            "nodal",
            parameters(&Params {
                args: serde_json::json!({"solution": solution, "dim": dim, "at": at, "r_star": r_star}),
                common,
            }),
        ),
        Command::Maxprin {
            solution,
            domain,
            dim,
            interior,
            boundary_samples,
            common,
        } => (
            "maxprin",
            parameters(&Params {
                args: serde_json::json!({
                    "solution": solution, "domain": domain, "dim": dim,
                    "interior": interior, "boundary_samples": boundary_samples,
                }),
                common,
            }),
        ),
        Command::Rmvp {
            target,
            domain,
            dim,
            mu,
            points,
            fraction,
            radius,
            common,
        } => (
            "rmvp",
            parameters(&Params {
                args: serde_json::json!({
                    "target": target, "domain": domain, "dim": dim, "mu": mu,
                    "points": points, "fraction": fraction, "radius": radius,
                }),
                common,
            }),
        ),
        Command::Liouville {
            dim,
            r_min,
            r_max,
            step,
            common,
        } => (
            "liouville",
            parameters(&Params {
                args: serde_json::json!({"dim": dim, "r_min": r_min, "r_max": r_max, "step": step}),
                common,
            }),
        ),
    };
    RunManifest {
        command: name.to_string(),
        parameters: params,
        seed: c.seed,
        artifact_version: ARTIFACT_VERSION.to_string(),
        timestamp: c.timestamp.clone().unwrap_or_else(now_timestamp),
    }
}

fn run(cli: Cli) -> Result<i32> {
    let cmd = cli.command;
    let c = common(&cmd);
    let default_format = match cmd {
        Command::Coeff { .. } => Format::Csv,
        _ => Format::Json,
    };
    let mut out = Output {
        manifest: manifest_for(&cmd),
        format: c.format.unwrap_or(default_format),
        text: String::new(),
        failed: false,
        csv_header: false,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = c.workers {
        if n == 0 {
            return Err(Error::Domain("--workers must be >= 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| execute(&cmd, &mut out))?;

    let c = common(&cmd);
    match &c.out {
        Some(path) => std::fs::write(path, &out.text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Domain(format!("cannot write output: {e}")))?;
        }
    }
    Ok(if out.failed { 1 } else { 0 })
}

fn execute(cmd: &Command, out: &mut Output) -> Result<()> {
    match cmd {
        Command::Coeff { kind, dim, t, .. } => run_coeff(*kind, *dim, t, out),
        Command::Verify {
            suite,
            dim,
            cases,
            samples,
            common,
        } => run_verify(*suite, *dim, *cases, *samples, common, out),
        Command::Wos {
            domain,
            dim,
            mu,
            eps,
            walks,
            max_steps,
            at,
            boundary,
            common,
        } => {
            let geom = domain.build(*dim)?;
            let cfg = WosConfig {
                eps: *eps,
                n_walks: *walks,
                max_steps: *max_steps,
                seed: common.seed,
            };
            if let BoundaryData::Exp(d) = boundary {
                if d.len() != *dim {
                    return Err(Error::Domain(
                        "exp boundary direction must have --dim components".into(),
                    ));
                }
            }
            let g = |y: &[f64]| boundary.eval(y);
            let est = wos_solve(&geom, &g, mu.abs(), at, &cfg)?;
            out.failed |= !est.valid;
            match out.format {
                Format::Json => out.json(est),
                Format::Csv => {
                    out.manifest_comment();
                    out.text
                        .push_str("value,std_error,n_walks,truncated,valid,mean_steps\n");
                    out.text.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        est.value,
                        est.std_error,
                        est.n_walks,
                        est.truncated,
                        est.valid,
                        est.mean_steps
                    ));
                }
            }
            Ok(())
        }
        Command::Nodal {
            solution,
            dim,
            at,
            r_star,
            common,
        } => {
            let spec = solution.build(*dim, EquationParam::Helmholtz { lambda: 1.0 })?;
            let x = at
                .clone()
                .map(|d| d.0)
                .unwrap_or_else(|| vec![0.0; *dim as usize]);
            let x0 = nodal_locate(&spec, &x, *r_star)?;
            let ux0 = spec.value(&x0);
            let tol = common.tol.unwrap_or(NODAL_ZERO_TOL);
            let mut rep = CheckReport::new("nodal", tol);
            rep.gate("|u(x0)|", ux0.abs())
                .gate_with(
                    "|x0 - x| - r_star",
                    crate::point::dist(&x0, &x) - r_star,
                    0.0,
                )
                .info("|x0 - x|", crate::point::dist(&x0, &x))
                .meta("solution", spec.label())
                .meta("x0", format!("{:?}", x0.0));
            for (i, v) in x0.iter().enumerate() {
                rep.info(format!("x0[{i}]"), *v);
            }
            out.report(&rep);
            Ok(())
        }
        Command::Maxprin {
            solution,
            domain,
            dim,
            interior,
            boundary_samples,
            common,
        } => {
            let geom = domain.build(*dim as usize)?;
            let specs = if solution.is_set() {
                vec![solution.build(*dim, EquationParam::Modified { mu: 1.0 })?]
            } else {
                modified_catalog(*dim)
            };
            let qcfg = QuadConfig {
                seed: common.seed,
                ..Default::default()
            };
            for spec in &specs {
                let mut rep = max_principle_check_spec(
                    spec,
                    &geom,
                    *interior,
                    *boundary_samples,
                    common.seed,
                )?;
                if let Some(tol) = common.tol {
                    retolerance(&mut rep, tol);
                }
                out.report(&rep);
                let centre = vec![0.0; *dim as usize];
                let rmax = 0.5 * geom.dist(&centre);
                let rep = growth_check_spec(spec, &centre, &[0.5 * rmax, rmax], &qcfg)?;
                out.report(&rep);
            }
            Ok(())
        }
        Command::Rmvp {
            target,
            domain,
            dim,
            mu,
            points,
            fraction,
            radius,
            common,
        } => {
            let geom = domain.build(*dim as usize)?;
            let grid = rmvp_grid(&geom, *points, common.seed);
            let rf = match radius {
                Some(r) => RadiusFunction::Constant(*r),
                None => RadiusFunction::Fraction(*fraction),
            };
            let qcfg = QuadConfig {
                seed: common.seed,
                ..Default::default()
            };
            let tol = common.tol.unwrap_or(1e-8);
            match target {
                RmvpTarget::Catalog => {
                    for spec in modified_catalog(*dim) {
                        let f = |y: &[f64]| spec.value(y);
                        let rep = rmvp_check(
                            &f,
                            &spec.label(),
                            &geom,
                            spec.wavenumber(),
                            rf,
                            &grid,
                            &qcfg,
                            tol,
                        );
                        out.report(&rep);
                    }
                }
                RmvpTarget::X1 => {
                    let f = |y: &[f64]| y[0];
                    let rep = rmvp_check(&f, "x1", &geom, mu.abs(), rf, &grid, &qcfg, tol);
                    out.report(&rep);
                }
                RmvpTarget::Norm2 => {
                    let f = |y: &[f64]| y.iter().map(|v| v * v).sum::<f64>();
                    let rep = rmvp_check(&f, "|x|^2", &geom, mu.abs(), rf, &grid, &qcfg, tol);
                    out.report(&rep);
                }
            }
            Ok(())
        }
        Command::Liouville {
            dim,
            r_min,
            r_max,
            step,
            common,
        } => {
            if !(*step > 0.0) || !(r_max > r_min) {
                return Err(Error::Domain("need r-max > r-min and step > 0".into()));
            }
            let n = ((r_max - r_min) / step + 1e-9).floor() as usize;
            let mut radii: Vec<f64> = (0..=n).map(|i| r_min + i as f64 * step).collect();
            if *radii.last().expect("non-empty") < *r_max {
                radii.push(*r_max);
            }
            let mut rep = liouville_ratio(*dim, &radii)?;
            if let Some(tol) = common.tol {
                rep.residuals
                    .iter_mut()
                    .filter(|r| r.label == "final_deviation")
                    .for_each(|r| r.tolerance = Some(tol + crate::analysis::LIOUVILLE_ROUNDOFF));
                rep.tolerance = tol;
                rep.passed = rep.residuals.iter().all(|r| r.passes());
            }
            out.report(&rep);
            Ok(())
        }
    }
}

/// Replaces the tolerance of every gating residual.
fn retolerance(rep: &mut CheckReport, tol: f64) {
    for r in rep.residuals.iter_mut().filter(|r| r.tolerance.is_some()) {
        r.tolerance = Some(tol);
    }
    rep.tolerance = tol;
    rep.passed = rep.residuals.iter().all(|r| r.passes());
}

#[derive(Serialize)]
struct CoeffRow {
    kind: String,
    dim: u32,
    t: f64,
    value: f64,
}

fn run_coeff(kind: CoeffKind, m: u32, t: &[f64], out: &mut Output) -> Result<()> {
    let values: Vec<f64> = t
        .iter()
        .map(|&ti| mean_coeff(kind, ti, m))
        .collect::<Result<_>>()?;
    match out.format {
        Format::Csv => {
            out.manifest_comment();
            out.text.push_str("t,value\n");
            for (ti, v) in t.iter().zip(&values) {
                out.text.push_str(&format!("{ti},{v}\n"));
            }
        }
        Format::Json => {
            for (ti, v) in t.iter().zip(&values) {
                out.json(CoeffRow {
                    kind: kind.to_string(),
                    dim: m,
                    t: *ti,
                    value: *v,
                });
            }
        }
    }
    Ok(())
}

/// Default tolerances of the verify suites.
const IDENTITY_TOL: f64 = 1e-8;
const EPD_TOL: f64 = 1e-4;
const EPD_STEP: f64 = 1e-3;
const EIGEN_TOL: f64 = 1e-8;

fn run_verify(
    suite: Suite,
    m: u32,
    cases: usize,
    samples: usize,
    common: &Common,
    out: &mut Output,
) -> Result<()> {
    if m < 2 {
        return Err(Error::Domain("--dim must be >= 2".into()));
    }
    let seed = common.seed;
    let qcfg = if m >= 4 {
        QuadConfig::monte_carlo(samples, seed)
    } else {
        QuadConfig {
            seed,
            ..Default::default()
        }
    };
    qcfg.validate()?;
    let run_ids = matches!(suite, Suite::Identities | Suite::All);
    let run_epd = matches!(suite, Suite::Epd | Suite::All);
    let run_eigen = matches!(suite, Suite::Eigen | Suite::All);

    if run_ids {
        let tol = common.tol.unwrap_or(IDENTITY_TOL);
        let test_ball = Shape::unit_ball(m as usize)?;
        let mut rng = substream(seed, 7);
        let pts = interior_points(&test_ball, cases, &mut rng);
        let mut rng = substream(seed, 8);
        for spec in catalog(m) {
            for (i, x) in pts.iter().enumerate() {
                let room = 1.0 - norm(x);
                let r = room * (0.1 + 0.85 * rand::Rng::random::<f64>(&mut rng));
                for surface in [Surface::Sphere, Surface::Ball] {
                    let cfg = QuadConfig {
                        seed: crate::rng::mix_seed(seed, i as u64),
                        ..qcfg
                    };
                    let mut rep = identity_residual(&spec, x, r, surface, &cfg, tol)?;
                    rep.meta("case", i);
                    out.report(&rep);
                }
            }
        }
    }

    if run_epd {
        let tol = common.tol.unwrap_or(EPD_TOL);
        if m >= 4 {
            let mut rep = CheckReport::new("epd", tol);
            rep.meta(
                "skipped",
                "EPD finite differences need deterministic quadrature (dim <= 3)",
            );
            out.report(&rep);
        } else {
            let x: Vec<f64> = (0..m).map(|i| 0.1 + 0.05 * i as f64).collect();
            let r = 0.7;
            for spec in catalog(m).into_iter().take(3) {
                let f = |y: &[f64]| spec.value(y);
                let coarse = epd_residual(&f, &x, r, EPD_STEP, &qcfg)?.abs();
                let fine = epd_residual(&f, &x, r, 0.5 * EPD_STEP, &qcfg)?.abs();
                let mut rep = CheckReport::new("epd", tol);
                rep.gate("residual", coarse)
                    .info("residual_half_step", fine)
                    .meta("solution", spec.label())
                    .meta("x", format!("{x:?}"))
                    .meta("r", r)
                    .meta("h", EPD_STEP);
                // Second order: halving h divides the residual by ~4 until
                // quadrature round-off takes over.
                let floor = 1e-7;
                rep.gate_with("richardson_excess", fine - (0.375 * coarse).max(floor), 0.0);
                if coarse > 0.0 {
                    rep.info("richardson_ratio", coarse / fine.max(f64::MIN_POSITIVE));
                }
                out.report(&rep);
            }
        }
    }

    if run_eigen {
        let tol = common.tol.unwrap_or(EIGEN_TOL);
        if m != 2 {
            let mut rep = CheckReport::new("eigen", tol);
            rep.meta("skipped", "disk eigenfunctions live in dimension 2");
            out.report(&rep);
        } else {
            let origin = [0.0, 0.0];
            for n in 1..=2 {
                for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
                    let spec = SolutionSpec::disk_eigen(bc, n, 1.0)?;
                    let f = |y: &[f64]| spec.value(y);
                    let (surface, est) = match bc {
                        BoundaryCondition::Dirichlet => {
                            ("sphere", sphere_mean(&f, &origin, 1.0, &qcfg)?)
                        }
                        BoundaryCondition::Neumann => ("ball", ball_mean(&f, &origin, 1.0, &qcfg)?),
                    };
                    let mut rep = CheckReport::new("eigen", tol);
                    rep.gate("|mean|", est.value.abs())
                        .meta("solution", spec.label())
                        .meta("surface", surface);
                    out.report(&rep);
                }
            }
        }
    }
    Ok(())
}
