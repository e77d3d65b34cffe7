//! Configuration parsing, experiment dispatch, and CSV emission.
//!
//! All floats are written with the standard shortest round-trip formatting,
//! and report rows arrive from the harness in a fixed order, so repeated
//! runs of one config produce byte-identical files.

use serde::{Deserialize, Serialize};

use crate::assembly::{assemble_load, assemble_stiffness, HorizonMode, LoadPreset};
use crate::constants::{c_norm, gamma_limit_const, kappa, surface_measure, FracParams};
use crate::error::{Error, Result};
use crate::harness::{self, rescale_eigen};
use crate::mesh::{build_mesh, KernelSpec};
use crate::solvers::{solve_dirichlet, solve_eigen, LinearMethod};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Solve,
    Eigs,
    SweepZero,
    SweepInfty,
    Check,
    Constants,
}

impl Mode {
    pub fn parse(text: &str) -> Result<Mode> {
        match text {
            "solve" => Ok(Mode::Solve),
            "eigs" => Ok(Mode::Eigs),
            "sweep-zero" => Ok(Mode::SweepZero),
            "sweep-infty" => Ok(Mode::SweepInfty),
            "check" => Ok(Mode::Check),
            "constants" => Ok(Mode::Constants),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rhs {
    One,
    SinK(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Cholesky,
    Cg,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_int: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Rhs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Constants mode only: dimension grid (default [1, 2, 3]).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ns: Option<Vec<u32>>,
    /// Constants mode only: fractionality grid (default [0.25, 0.5, 0.75]).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ss: Option<Vec<f64>>,
}

impl RunConfig {
    fn domain(&self) -> Domain {
        self.domain.unwrap_or(Domain { a: 0.0, b: 1.0 })
    }

    fn require_s(&self) -> Result<f64> {
        let s = self
            .s
            .ok_or_else(|| missing(self.mode, "s"))?;
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Config(format!("s must lie in (0,1), got {s}")));
        }
        Ok(s)
    }

    fn require_n_int(&self) -> Result<u64> {
        self.n_int.ok_or_else(|| missing(self.mode, "n_int"))
    }

    fn require_m(&self) -> Result<u64> {
        self.m.ok_or_else(|| missing(self.mode, "m"))
    }

    fn require_ms(&self) -> Result<&[u64]> {
        self.ms
            .as_deref()
            .ok_or_else(|| missing(self.mode, "ms"))
    }

    fn require_deltas(&self) -> Result<&[f64]> {
        self.deltas
            .as_deref()
            .ok_or_else(|| missing(self.mode, "deltas"))
    }

    fn k(&self) -> usize {
        self.k.unwrap_or(5)
    }

    fn rhs(&self) -> Result<LoadPreset> {
        Ok(match self.rhs.unwrap_or(Rhs::One) {
            Rhs::One => LoadPreset::One,
            Rhs::SinK(k) => LoadPreset::Sin(k),
        })
    }

    fn method(&self) -> LinearMethod {
        match self.method.unwrap_or(Method::Cholesky) {
            Method::Cholesky => LinearMethod::Cholesky,
            Method::Cg => LinearMethod::Cg,
        }
    }
}

fn missing(mode: Mode, field: &str) -> Error {
    Error::Config(format!("mode {mode:?} requires field `{field}`"))
}

/// Parse and validate a JSON configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let cfg: RunConfig = serde_json::from_str(text)?;
    if let Some(s) = cfg.s {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Config(format!("s must lie in (0,1), got {s}")));
        }
    }
    if let Some(d) = cfg.domain {
        if !(d.a < d.b) {
            return Err(Error::Config(format!(
                "domain must satisfy a < b, got a={} b={}",
                d.a, d.b
            )));
        }
    }
    Ok(cfg)
}

fn push_row(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

fn f(x: f64) -> String {
    format!("{x}")
}

/// Execute a config and return the CSV artifact.
pub fn run(cfg: &RunConfig) -> Result<String> {
    let dom = cfg.domain();
    let mut csv = String::new();
    match cfg.mode {
        Mode::Constants => {
            push_row(&mut csv, &["N,s,c_ns,kappa,sigma,gamma".into()]);
            let ns = cfg.ns.clone().unwrap_or_else(|| vec![1, 2, 3]);
            let ss = cfg.ss.clone().unwrap_or_else(|| vec![0.25, 0.5, 0.75]);
            for &n in &ns {
                for &s in &ss {
                    let p = FracParams::new(n, s)?;
                    push_row(
                        &mut csv,
                        &[
                            n.to_string(),
                            f(s),
                            f(c_norm(p)),
                            f(kappa(p)),
                            f(surface_measure(n)?),
                            f(gamma_limit_const(n)?),
                        ],
                    );
                }
            }
        }
        Mode::Solve => {
            let s = cfg.require_s()?;
            let mesh = build_mesh(dom.a, dom.b, cfg.require_n_int()?, cfg.require_m()?)?;
            let spec = KernelSpec::new(FracParams::new(1, s)?, mesh.delta())?;
            let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
            let load = assemble_load(&mesh, cfg.rhs()?, cfg.scale.unwrap_or(1.0))?;
            let u = solve_dirichlet(&sys, &load, cfg.method())?;
            push_row(&mut csv, &["i,x,u".into()]);
            for (i, &ui) in u.iter().enumerate() {
                push_row(
                    &mut csv,
                    &[i.to_string(), f(mesh.free_node(i)), f(ui)],
                );
            }
        }
        Mode::Eigs => {
            let s = cfg.require_s()?;
            let p = FracParams::new(1, s)?;
            let mesh = build_mesh(dom.a, dom.b, cfg.require_n_int()?, cfg.require_m()?)?;
            let spec = KernelSpec::new(p, mesh.delta())?;
            let sys = assemble_stiffness(&mesh, &spec, HorizonMode::Truncated)?;
            let eig = solve_eigen(&sys, cfg.k())?;
            push_row(
                &mut csv,
                &["delta,h,m,s,k,lambda,rescaled,reference,abs_err,rel_err".into()],
            );
            for (j, &lam) in eig.values.iter().enumerate() {
                push_row(
                    &mut csv,
                    &[
                        f(mesh.delta()),
                        f(mesh.h),
                        mesh.m.to_string(),
                        f(s),
                        (j + 1).to_string(),
                        f(lam),
                        f(rescale_eigen(lam, mesh.delta(), p)),
                        "0".into(),
                        "0".into(),
                        "0".into(),
                    ],
                );
            }
        }
        Mode::SweepZero | Mode::SweepInfty => {
            let s = cfg.require_s()?;
            let report = if cfg.mode == Mode::SweepZero {
                harness::sweep_zero(dom.a, dom.b, s, cfg.require_m()?, cfg.require_deltas()?, cfg.k())?
            } else {
                harness::sweep_infty(dom.a, dom.b, s, cfg.require_n_int()?, cfg.require_ms()?, cfg.k())?
            };
            push_row(
                &mut csv,
                &["delta,h,m,s,k,lambda,rescaled,reference,abs_err,rel_err".into()],
            );
            for r in &report.rows {
                push_row(
                    &mut csv,
                    &[
                        f(r.delta),
                        f(r.h),
                        r.m.to_string(),
                        f(r.s),
                        r.k.to_string(),
                        f(r.lambda),
                        f(r.rescaled),
                        f(r.reference),
                        f(r.abs_err),
                        f(r.rel_err),
                    ],
                );
            }
        }
        Mode::Check => {
            let s = cfg.require_s()?;
            let rows =
                harness::check_c_delta(dom.a, dom.b, s, cfg.require_n_int()?, cfg.require_ms()?)?;
            push_row(&mut csv, &["delta,ratio,c_delta,pass".into()]);
            let mut failed = false;
            for r in &rows {
                failed |= !r.pass;
                push_row(
                    &mut csv,
                    &[f(r.delta), f(r.ratio), f(r.c_delta), r.pass.to_string()],
                );
            }
            if failed {
                write_output(cfg, &csv)?;
                return Err(Error::Invariant(
                    "norm-equivalence bound violated; see check report".into(),
                ));
            }
        }
    }
    write_output(cfg, &csv)?;
    Ok(csv)
}

fn write_output(cfg: &RunConfig, csv: &str) -> Result<()> {
    if let Some(path) = &cfg.output {
        std::fs::write(path, csv)?;
    }
    Ok(())
}

/// Full CLI entry point: `<tool> <mode> --config path.json [--output path.csv]`.
/// Returns the process exit status.
pub fn main_with_args(args: &[String]) -> i32 {
    match cli_inner(args) {
        Ok(()) => 0,
        Err(Error::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cli_inner(args: &[String]) -> Result<()> {
    let usage = "usage: perilap <solve|eigs|sweep-zero|sweep-infty|check|constants> --config path.json [--output path.csv]";
    let mode_arg = args
        .first()
        .ok_or_else(|| Error::Config(usage.into()))?;
    let mode = Mode::parse(mode_arg)?;
    let mut config_path = None;
    let mut output_path = None;
    let mut it = args[1..].iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--config" => {
                config_path = Some(
                    it.next()
                        .ok_or_else(|| Error::Config("--config needs a path".into()))?,
                )
            }
            "--output" => {
                output_path = Some(
                    it.next()
                        .ok_or_else(|| Error::Config("--output needs a path".into()))?,
                )
            }
            other => return Err(Error::Config(format!("unknown argument `{other}`; {usage}"))),
        }
    }
    let config_path = config_path.ok_or_else(|| Error::Config(usage.into()))?;
    let text = std::fs::read_to_string(config_path)?;
    let mut cfg = parse_config(&text)?;
    if cfg.mode != mode {
        return Err(Error::Config(format!(
            "config is for mode {:?} but the command line says {:?}",
            cfg.mode, mode
        )));
    }
    if let Some(path) = output_path {
        cfg.output = Some(path.clone());
    }
    let csv = run(&cfg)?;
    if cfg.output.is_none() {
        print!("{csv}");
    }
    Ok(())
}
