//! Truncated-horizon ("peridynamic") fractional Laplacian on an interval.
//!
//! The operator keeps the singular kernel |x-y|^{-(1+2s)} of the fractional
//! Laplacian but cuts interactions off beyond a horizon delta, with Dirichlet
//! volume constraints on a collar of width delta. The crate assembles the
//! Galerkin system on piecewise-linear elements, solves linear and
//! generalized eigenvalue problems, and reproduces the two limit regimes
//! numerically:
//!
//! * delta -> 0 (with rescaling kappa/delta^{2(1-s)}): the classical
//!   Laplacian's spectrum and solutions;
//! * delta -> infinity: the standard fractional Laplacian, approached at the
//!   exact discrete rate c/(s delta^{2s}).
//!
//! See the `examples/` directory for runnable entry points per capability,
//! and the `perilap` binary for the JSON-config CLI.

pub mod assembly;
pub mod band;
pub mod cli;
pub mod constants;
pub mod error;
pub mod harness;
pub mod mesh;
pub mod quad;
pub mod solvers;

pub use assembly::{
    assemble_load, assemble_mass, assemble_stiffness, pair_integral_oracle, AssembledSystem,
    HorizonMode, LoadPreset,
};
pub use band::SymBandMatrix;
pub use constants::{c_norm, gamma_fn, gamma_limit_const, kappa, surface_measure, FracParams};
pub use error::{Error, Result};
pub use harness::{
    bbm_mollifier_mass, bbm_normalized_mass, check_c_delta, gamma_limit_energy, rescale_eigen,
    sweep_infty, sweep_zero, SweepMode, SweepReport, SweepRow,
};
pub use mesh::{
    apply_pointwise, build_mesh, collar_tail, infinite_tail, power_moment, KernelSpec, Mesh1D,
};
pub use solvers::{rayleigh_quotient, solve_dirichlet, solve_eigen, EigenSet, LinearMethod};
