//! Constant supersolutions, eigenfunction subsolutions, and the monotone
//! sub/supersolution iteration.

use super::{Method, SolveReport, SolverConfig, SolverError};
use crate::grid::{self, EigenPair, GridFunction, Mesh};
use crate::model::{apriori_bound, ProblemParams};

/// Smallest grid-friendly constant supersolution: a constant `M` with
/// `M^m - M^{m+1} - λ M^n ≤ 0` and `M ≥ M(λ)` when the a-priori bound is
/// available, rounded up 10%.
///
/// A constant supersolution exists exactly when `f` is eventually
/// nonpositive: always for `n < m+1`; for `λ > -1` when `n = m+1`; for
/// `λ ≥ 0` when `n > m+1`. Outside that set the call is a hypothesis
/// violation.
pub fn build_supersolution(p: &ProblemParams) -> Result<f64, SolverError> {
    let feasible = p.n < p.m + 1.0
        || (p.n == p.m + 1.0 && p.lambda > -1.0)
        || (p.n > p.m + 1.0 && p.lambda >= 0.0);
    if !feasible {
        return Err(SolverError::Hypothesis(format!(
            "no constant supersolution: f(M) stays positive for large M at m={}, n={}, lambda={}",
            p.m, p.n, p.lambda
        )));
    }
    if let Some(bound) = apriori_bound(p) {
        // f(bound) ≤ 0 by construction of the bound.
        return Ok(1.1 * bound);
    }
    // No a-priori bound (only reachable for λ ≥ 0, n > m+1, where M = 1
    // would already work); isolate the sign change by doubling + bisection.
    let mut lo = 1e-8;
    let mut hi = 1.0;
    while p.f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(SolverError::Hypothesis("supersolution bisection ran away".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p.f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(1.1 * hi)
}

/// An eigenfunction-scaled subsolution candidate `c φ₁` with its
/// verification flag.
#[derive(Debug, Clone)]
pub struct Subsolution {
    pub function: GridFunction,
    /// Pointwise check `λ₁ c φ₁ ≤ f(c φ₁)` at every interior node.
    pub valid: bool,
    pub c: f64,
}

/// Builds `c φ₁` and verifies the nodal subsolution inequality.
pub fn build_subsolution(p: &ProblemParams, eig: &EigenPair, c: f64) -> Subsolution {
    assert!(c > 0.0, "subsolution scale must be positive");
    let function = eig.phi1.scale(c);
    let valid = function.values.iter().all(|&v| {
        if v <= 0.0 {
            // Eigenfunction positivity should preclude this; a zero node
            // satisfies the inequality trivially.
            return true;
        }
        eig.lambda1 * v <= p.f(v)
    });
    Subsolution { function, valid, c }
}

/// Halves `c` (starting from `c0`) until `c φ₁` validates, with a cap of
/// 60 halvings. Failure signals a hypothesis violation (for example
/// `m = 1` with `λ₁ ≥ 1`, where no small multiple of `φ₁` works).
pub fn auto_subsolution(
    p: &ProblemParams,
    eig: &EigenPair,
    c0: f64,
) -> Result<Subsolution, SolverError> {
    assert!(c0 > 0.0, "initial subsolution scale must be positive");
    let mut c = c0;
    for _ in 0..=60 {
        let s = build_subsolution(p, eig, c);
        if s.valid {
            return Ok(s);
        }
        c *= 0.5;
    }
    Err(SolverError::SubsolutionSearchFailed { halvings: 60 })
}

/// One-sided Lipschitz shift: `K ≥ 0` with `f(s) + K s` nondecreasing on
/// `[lo, hi]`, found by dense sampling of `-f'` (log-spaced near `lo`
/// plus a linear sweep) with a 25% safety margin.
fn lipschitz_shift(p: &ProblemParams, lo: f64, hi: f64) -> Result<f64, SolverError> {
    assert!(lo > 0.0 && hi > lo, "need 0 < lo < hi");
    let samples = 2000;
    let mut worst = 0.0f64;
    let log_lo = lo.ln();
    let log_hi = hi.ln();
    for k in 0..samples {
        let t = k as f64 / (samples - 1) as f64;
        let s_log = (log_lo + t * (log_hi - log_lo)).exp();
        let s_lin = lo + t * (hi - lo);
        for s in [s_log, s_lin] {
            let d = -p.f_prime(s);
            if !d.is_finite() {
                return Err(SolverError::NoLipschitzShift { lo, hi });
            }
            worst = worst.max(d);
        }
    }
    let shift = 1.25 * worst;
    if shift > 1e9 {
        // Formally finite but useless: the iteration contracts at rate
        // K/(K + λ₁), which at this size stalls for ever. Workable
        // regimes stay many orders of magnitude below this.
        return Err(SolverError::NoLipschitzShift { lo, hi });
    }
    Ok(shift.max(0.0))
}

struct MonotoneRun {
    solution: GridFunction,
    iterations: usize,
}

/// Shifted-inverse iteration `(-Δ_h + K) u_{k+1} = f(u_k) + K u_k` from a
/// starting state, with a nodewise monotonicity assertion every step
/// (`increasing = true` when starting from the subsolution).
fn monotone_run(
    p: &ProblemParams,
    mesh: &Mesh,
    start: &GridFunction,
    shift: f64,
    increasing: bool,
    cfg: &SolverConfig,
) -> Result<MonotoneRun, SolverError> {
    let m = mesh.interior_len();
    let shift_vec = vec![shift; m];
    let mut u = start.clone();
    for it in 1..=cfg.max_iter {
        let rhs: Vec<f64> =
            u.values.iter().map(|&v| p.f(v.max(0.0)) + shift * v).collect();
        let next_values = mesh
            .solve_shifted(&shift_vec, &rhs)
            .ok_or(SolverError::NonConvergence("monotone iteration (singular solve)", it))?;
        let next = GridFunction::new(next_values);

        let mut slip = 0.0f64;
        for (a, b) in u.values.iter().zip(&next.values) {
            let d = if increasing { a - b } else { b - a };
            slip = slip.max(d);
        }
        if slip > 1e-12 * (1.0 + u.sup_norm()) {
            return Err(SolverError::MonotoneStep { iteration: it, slip, shift });
        }

        let res = grid::residual_norm(p, mesh, &next);
        u = next;
        if res <= cfg.tol {
            return Ok(MonotoneRun { solution: u, iterations: it });
        }
    }
    Err(SolverError::NonConvergence("monotone iteration", cfg.max_iter))
}

/// Monotone iteration from both ends of an ordered sub/supersolution
/// pair. Returns `(from_below, from_above)`.
///
/// Preconditions checked here: `sub ≤ super` nodewise, and a finite
/// one-sided Lipschitz shift on the nodal range (its absence, as in the
/// `λ > 0`, `n < m` regime near `u = 0`, is reported as
/// [`SolverError::NoLipschitzShift`] rather than silently mis-iterated).
pub fn monotone_pair(
    p: &ProblemParams,
    mesh: &Mesh,
    sub: &GridFunction,
    sup: &GridFunction,
    cfg: &SolverConfig,
) -> Result<(SolveReport, SolveReport), SolverError> {
    cfg.validate()?;
    assert_eq!(sub.len(), mesh.interior_len(), "subsolution size mismatch");
    assert_eq!(sup.len(), mesh.interior_len(), "supersolution size mismatch");
    for (i, (a, b)) in sub.values.iter().zip(&sup.values).enumerate() {
        if a > b {
            return Err(SolverError::Ordering(format!(
                "sub > super at node {i}: {a} > {b}"
            )));
        }
    }
    let lo = sub
        .values
        .iter()
        .copied()
        .filter(|v| *v > 0.0)
        .fold(f64::INFINITY, f64::min)
        .max(cfg.eps_reg);
    let hi = sup.values.iter().copied().fold(0.0f64, f64::max).max(lo * 2.0);
    let shift = lipschitz_shift(p, lo, hi)?;

    let below = monotone_run(p, mesh, sub, shift, true, cfg)?;
    let above = monotone_run(p, mesh, sup, shift, false, cfg)?;
    let report = |run: MonotoneRun| {
        SolveReport::finish(p, mesh, run.solution, run.iterations, Method::MonotoneIteration, cfg, None)
    };
    Ok((report(below), report(above)))
}

/// Sub/supersolution method: runs [`monotone_pair`] and reports the limit
/// from below (the minimal solution the bracket pins down).
pub fn monotone_iteration(
    p: &ProblemParams,
    mesh: &Mesh,
    sub: &GridFunction,
    sup: &GridFunction,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolverError> {
    let (below, _above) = monotone_pair(p, mesh, sub, sup, cfg)?;
    Ok(below)
}
