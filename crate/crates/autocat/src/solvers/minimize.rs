//! Global minimization of the discrete energy by preconditioned descent
//! with a backtracking line search.

use super::{newton_solve, Method, SolveReport, SolverConfig};
use crate::grid::{self, GridFunction, Mesh};
use crate::model::ProblemParams;

/// Coercivity screen for the energy on the given exponents: descent
/// still runs outside it, but the report carries a warning because the
/// infimum may be `-∞`.
fn coercive(p: &ProblemParams) -> bool {
    if p.lambda >= 0.0 {
        return true;
    }
    if p.n < p.m + 1.0 {
        return true;
    }
    if p.n == p.m + 1.0 {
        // the λ-term folds into the u^{m+2} coefficient
        return p.lambda >= -(p.n + 1.0) / (p.m + 2.0);
    }
    false
}

/// Energy descent: Sobolev-preconditioned gradient steps
/// (`d = -(-Δ_h)^{-1} r`, the H¹ gradient) with Armijo backtracking,
/// then a Newton polish once the residual is small. Reports
/// `energy_value` at the final state.
pub fn global_minimize(
    p: &ProblemParams,
    mesh: &Mesh,
    u0: &GridFunction,
    cfg: &SolverConfig,
) -> SolveReport {
    cfg.validate().expect("invalid solver config");
    assert_eq!(u0.len(), mesh.interior_len(), "initial guess size mismatch");

    let warning = (!coercive(p)).then(|| {
        format!(
            "energy may be unbounded below at m={}, n={}, lambda={}; descent finds at most a local minimizer",
            p.m, p.n, p.lambda
        )
    });

    let m = mesh.interior_len();
    let zero_shift = vec![0.0; m];
    let mut u = u0.clone();
    let mut e = grid::energy(p, mesh, &u);
    // Switch to Newton once the residual is this small; descent owns the
    // globalization, Newton the final digits.
    let polish_at = cfg.tol.max(1e-8).max(cfg.tol.sqrt() * 1e-2);

    let mut iterations = 0usize;
    for it in 0..cfg.max_iter {
        iterations = it;
        let r = grid::residual(p, mesh, &u);
        let rnorm = mesh.weighted_norm(&r.values);
        if rnorm <= cfg.tol {
            return SolveReport::finish(p, mesh, u, it, Method::GlobalMinimize, cfg, warning);
        }
        if rnorm <= polish_at {
            break;
        }
        let Some(dir) = mesh.solve_shifted(&zero_shift, &r.values) else {
            break;
        };
        // descent direction and its slope in the energy inner product
        let g = grid::energy_gradient(p, mesh, &u);
        let slope: f64 = g.values.iter().zip(&dir).map(|(gi, di)| -gi * di).sum();
        if !slope.is_finite() || slope >= 0.0 {
            break;
        }
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..60 {
            let trial = GridFunction::new(
                u.values.iter().zip(&dir).map(|(a, d)| a - t * d).collect(),
            );
            let et = grid::energy(p, mesh, &trial);
            if et.is_finite() && et <= e + 1e-4 * t * slope {
                u = trial;
                e = et;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }

    // Newton polish from the descent point; accept only a nearby state
    // that did not climb in energy, otherwise keep the descent iterate.
    let polished = newton_solve(p, mesh, &u, cfg);
    let close = polished.solution.sup_distance(&u) <= 1e-2 * (1.0 + u.sup_norm());
    let no_climb = polished.energy_value <= e + cfg.tol.max(1e-12) * (1.0 + e.abs());
    if polished.converged && close && no_climb {
        let total = iterations + polished.iterations;
        return SolveReport {
            method: Method::GlobalMinimize,
            iterations: total,
            warning: warning.or(polished.warning.clone()),
            ..polished
        };
    }
    SolveReport::finish(p, mesh, u, iterations, Method::GlobalMinimize, cfg, warning)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{principal_eigenpair, Domain};
    use crate::model::threshold_fold_case1;
    use crate::solvers::{auto_subsolution, build_supersolution, monotone_iteration};

    fn mesh01(cells: usize) -> Mesh {
        Mesh::new(Domain::Interval { a: 0.0, b: 1.0 }, cells).unwrap()
    }

    fn bump(mesh: &Mesh, height: f64) -> GridFunction {
        // small positive seed supported in the middle of the domain
        let lo = mesh.domain.extent() * 0.25;
        let hi = mesh.domain.extent() * 0.75;
        GridFunction::new(
            mesh.nodes()
                .iter()
                .map(|&x| {
                    if x > lo && x < hi {
                        let t = (x - lo) / (hi - lo) * std::f64::consts::PI;
                        height * t.sin()
                    } else {
                        0.0
                    }
                })
                .collect(),
        )
    }

    #[test]
    fn case1_minimizer_has_negative_energy() {
        let p = ProblemParams::new(0.5, 0.25, 0.1, 1).unwrap();
        assert!(p.lambda < threshold_fold_case1(0.5, 0.25).unwrap());
        let mesh = mesh01(128);
        let rep = global_minimize(&p, &mesh, &bump(&mesh, 0.1), &SolverConfig::default());
        assert!(rep.converged, "residual {}", rep.residual_norm);
        assert!(rep.energy_value < 0.0, "energy {}", rep.energy_value);
        assert!(rep.is_nontrivial_solution());
    }

    #[test]
    fn minimizer_matches_monotone_iteration_at_lambda_zero() {
        // λ = 0, m < 1: uniqueness regime; the two constructions agree.
        let p = ProblemParams::new(0.5, 0.75, 0.0, 1).unwrap();
        let mesh = mesh01(128);
        let cfg = SolverConfig { max_iter: 4000, ..Default::default() };
        let eig = principal_eigenpair(&mesh, 1e-11).unwrap();
        let sub = auto_subsolution(&p, &eig, 1.0).unwrap();
        let sup = GridFunction::constant(mesh.interior_len(), build_supersolution(&p).unwrap());
        let mono = monotone_iteration(&p, &mesh, &sub.function, &sup, &cfg).unwrap();
        let min = global_minimize(&p, &mesh, &bump(&mesh, 0.3), &cfg);
        assert!(min.converged && mono.converged);
        assert!(
            min.solution.sup_distance(&mono.solution) < 1e-6,
            "distance {}",
            min.solution.sup_distance(&mono.solution)
        );
    }

    #[test]
    fn escapes_zero_from_small_seed() {
        // m < 1 regime: E(tv) < 0 for small t, so descent must not fall
        // back to the trivial state.
        let p = ProblemParams::new(0.5, 0.25, 0.05, 1).unwrap();
        let mesh = mesh01(96);
        let rep = global_minimize(&p, &mesh, &bump(&mesh, 1e-3), &SolverConfig::default());
        assert!(rep.is_nontrivial_solution());
        assert!(rep.energy_value < 0.0);
    }

    #[test]
    fn non_coercive_regime_warns() {
        let p = ProblemParams::new(0.5, 2.0, -0.5, 1).unwrap();
        let mesh = mesh01(32);
        let rep = global_minimize(&p, &mesh, &bump(&mesh, 0.1), &SolverConfig { max_iter: 50, ..Default::default() });
        assert!(rep.warning.is_some());
    }
}
