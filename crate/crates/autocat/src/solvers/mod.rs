//! Computation of individual solutions by each constructive method the
//! underlying analysis suggests: monotone sub/supersolution iteration,
//! damped semismooth Newton, global energy descent, a discrete
//! mountain-pass algorithm, radial shooting for flat/compact-support
//! profiles, and the variational constants `A_q`.
//!
//! Solver invocations are independent and reentrant; a single invocation
//! is internally sequential.

mod constants;
mod minimize;
mod mountain;
mod newton;
mod shoot;
mod sub_super;

pub use constants::{compute_ap, ApEstimate};
pub use minimize::global_minimize;
pub use mountain::mountain_pass;
pub use newton::newton_solve;
pub use shoot::{find_flat_profile, radial_shoot, OdeConfig, ProfileSample, ShootResult};
pub use sub_super::{
    auto_subsolution, build_subsolution, build_supersolution, monotone_iteration, monotone_pair,
    Subsolution,
};

use crate::grid::{self, GridFunction, Mesh};
use crate::model::ProblemParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("no valid subsolution scale found within {halvings} halvings")]
    SubsolutionSearchFailed { halvings: u32 },
    #[error("ordering violation: {0}")]
    Ordering(String),
    #[error("monotonicity lost at iteration {iteration} (worst slip {slip:.3e}); the one-sided Lipschitz shift K = {shift:.3e} is too small")]
    MonotoneStep { iteration: usize, slip: f64, shift: f64 },
    #[error("no one-sided Lipschitz shift exists on [{lo:.3e}, {hi:.3e}] (f' unbounded below)")]
    NoLipschitzShift { lo: f64, hi: f64 },
    #[error("degenerate mountain-pass path: {0}")]
    DegeneratePath(String),
    #[error("no sign change of the shooting discriminant on [{a_lo}, {a_hi}]")]
    NoBracket { a_lo: f64, a_hi: f64 },
    #[error("{0} did not converge within {1} iterations")]
    NonConvergence(&'static str, usize),
}

/// Tunables shared by the elliptic solvers.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Weighted-L² residual tolerance for convergence.
    pub tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
    /// Regularization floor for fractional-power derivatives at `u → 0⁺`.
    pub eps_reg: f64,
    /// Initial Newton damping factor in `(0, 1]`.
    pub damping: f64,
    /// Node count of the mountain-pass path.
    pub path_nodes: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 500, eps_reg: 1e-12, damping: 1.0, path_nodes: 41 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(SolverError::Hypothesis(format!("tol must be in (0,1), got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(SolverError::Hypothesis("max_iter must be positive".into()));
        }
        if !(self.eps_reg > 0.0) {
            return Err(SolverError::Hypothesis("eps_reg must be positive".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(SolverError::Hypothesis(format!(
                "damping must be in (0,1], got {}",
                self.damping
            )));
        }
        if self.path_nodes < 5 {
            return Err(SolverError::Hypothesis("path_nodes must be at least 5".into()));
        }
        Ok(())
    }
}

/// Which algorithm produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonotoneIteration,
    Newton,
    GlobalMinimize,
    MountainPass,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::MonotoneIteration => "monotone_iteration",
            Method::Newton => "newton",
            Method::GlobalMinimize => "global_minimize",
            Method::MountainPass => "mountain_pass",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "monotone_iteration" | "monotone" => Ok(Method::MonotoneIteration),
            "newton" => Ok(Method::Newton),
            "global_minimize" | "minimize" => Ok(Method::GlobalMinimize),
            "mountain_pass" => Ok(Method::MountainPass),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// Outcome of a single solve. `converged` implies
/// `residual_norm ≤ tol`; the stored solution is nonnegative nodewise
/// (magnitudes below `eps_reg` are snapped to zero before the final
/// residual measurement).
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub converged: bool,
    pub iterations: usize,
    pub residual_norm: f64,
    pub solution: GridFunction,
    pub method: Method,
    pub energy_value: f64,
    /// Solution is numerically the zero state.
    pub trivial: bool,
    /// Regime or convergence diagnostics worth surfacing.
    pub warning: Option<String>,
}

impl SolveReport {
    /// Snaps sub-`eps_reg` magnitudes to zero, clamps remaining negative
    /// noise, then freezes the final residual/energy and the convergence
    /// flag. Shared post-processing for all solvers.
    pub(crate) fn finish(
        p: &ProblemParams,
        mesh: &Mesh,
        mut u: GridFunction,
        iterations: usize,
        method: Method,
        cfg: &SolverConfig,
        warning: Option<String>,
    ) -> SolveReport {
        for v in &mut u.values {
            if v.abs() < cfg.eps_reg {
                *v = 0.0;
            }
        }
        let residual_norm = grid::residual_norm(p, mesh, &u);
        let energy_value = grid::energy(p, mesh, &u);
        let trivial = u.sup_norm() <= 10.0 * cfg.eps_reg;
        SolveReport {
            converged: residual_norm <= cfg.tol,
            iterations,
            residual_norm,
            solution: u,
            method,
            energy_value,
            trivial,
            warning,
        }
    }

    /// True when the report converged to a genuinely nonzero state.
    pub fn is_nontrivial_solution(&self) -> bool {
        self.converged && !self.trivial
    }

    /// JSON export with method, λ, residual, energy, sup-norm, and an
    /// optional solution file reference.
    pub fn to_json(&self, p: &ProblemParams, solution_file: Option<&str>) -> serde_json::Value {
        serde_json::json!({
            "method": self.method.to_string(),
            "lambda": p.lambda,
            "m": p.m,
            "n": p.n,
            "converged": self.converged,
            "iterations": self.iterations,
            "residual": self.residual_norm,
            "energy": self.energy_value,
            "sup_norm": self.solution.sup_norm(),
            "trivial": self.trivial,
            "warning": self.warning,
            "solution_file": solution_file,
        })
    }
}
