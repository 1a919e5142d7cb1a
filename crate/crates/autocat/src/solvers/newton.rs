//! Damped semismooth Newton for the discrete critical-point equation
//! `-Δ_h u = f(u⁺)`.

use super::{Method, SolveReport, SolverConfig};
use crate::grid::{self, GridFunction, Mesh};
use crate::model::ProblemParams;

/// Semismooth derivative of `s ↦ f(s⁺)`: `f'(max(s, eps_reg))` where
/// `s > 0`, zero elsewhere. The floor keeps the fractional-power
/// derivatives finite on nodes sliding into the origin.
fn semismooth_fprime(p: &ProblemParams, s: f64, eps_reg: f64) -> f64 {
    if s > 0.0 {
        p.f_prime(s.max(eps_reg))
    } else {
        0.0
    }
}

/// Damped Newton iteration on the residual `-Δ_h u - f(u⁺)`.
///
/// Singular linearizations are retried with an escalating Tikhonov shift;
/// a residual that grows tenfold over five consecutive steps is reported
/// as divergence. Failures come back as non-converged reports with a
/// warning, never as panics.
pub fn newton_solve(
    p: &ProblemParams,
    mesh: &Mesh,
    u0: &GridFunction,
    cfg: &SolverConfig,
) -> SolveReport {
    cfg.validate().expect("invalid solver config");
    assert_eq!(u0.len(), mesh.interior_len(), "initial guess size mismatch");

    let mut u = u0.clone();
    let mut res = grid::residual(p, mesh, &u);
    let mut res_norm = mesh.weighted_norm(&res.values);
    let mut best_growth_base = res_norm;
    let mut growth_streak = 0usize;
    let mut warning = None;

    for it in 0..cfg.max_iter {
        if res_norm <= cfg.tol {
            return SolveReport::finish(p, mesh, u, it, Method::Newton, cfg, warning);
        }

        // J = -Δ_h - diag(f'(u⁺)), solved with escalating regularization
        // if the elimination breaks down.
        let shift: Vec<f64> =
            u.values.iter().map(|&v| -semismooth_fprime(p, v, cfg.eps_reg)).collect();
        let neg_res: Vec<f64> = res.values.iter().map(|r| -r).collect();
        let mut delta = None;
        let mut tikhonov = 0.0;
        for _ in 0..6 {
            let shifted: Vec<f64> = shift.iter().map(|s| s + tikhonov).collect();
            if let Some(d) = mesh.solve_shifted(&shifted, &neg_res) {
                if d.iter().all(|x| x.is_finite()) {
                    delta = Some(d);
                    break;
                }
            }
            tikhonov = if tikhonov == 0.0 { 1e-8 * (1.0 + res_norm) } else { tikhonov * 100.0 };
        }
        let Some(delta) = delta else {
            warning = Some("singular linearization; regularized retries exhausted".into());
            return SolveReport::finish(p, mesh, u, it, Method::Newton, cfg, warning);
        };

        // Backtracking on the residual norm.
        let mut alpha = cfg.damping;
        let mut accepted = false;
        for _ in 0..40 {
            let trial = GridFunction::new(
                u.values.iter().zip(&delta).map(|(a, d)| a + alpha * d).collect(),
            );
            let trial_res = grid::residual(p, mesh, &trial);
            let trial_norm = mesh.weighted_norm(&trial_res.values);
            if trial_norm.is_finite() && trial_norm < res_norm {
                u = trial;
                res = trial_res;
                res_norm = trial_norm;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            // Take the full step anyway; semismooth kinks can force a
            // temporary residual increase.
            u = GridFunction::new(u.values.iter().zip(&delta).map(|(a, d)| a + d).collect());
            res = grid::residual(p, mesh, &u);
            res_norm = mesh.weighted_norm(&res.values);
        }

        if res_norm > 10.0 * best_growth_base {
            growth_streak += 1;
            if growth_streak >= 5 {
                warning = Some(format!(
                    "divergence: residual grew past 10x over 5 steps (now {res_norm:.3e})"
                ));
                return SolveReport::finish(p, mesh, u, it + 1, Method::Newton, cfg, warning);
            }
        } else {
            growth_streak = 0;
            best_growth_base = best_growth_base.min(res_norm);
        }
        if !res_norm.is_finite() {
            warning = Some("residual became non-finite".into());
            return SolveReport::finish(p, mesh, u, it + 1, Method::Newton, cfg, warning);
        }
    }
    warning.get_or_insert_with(|| format!("iteration cap {} reached", cfg.max_iter));
    SolveReport::finish(p, mesh, u, cfg.max_iter, Method::Newton, cfg, warning)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{principal_eigenpair, Domain};
    use crate::solvers::{auto_subsolution, build_supersolution, monotone_iteration};

    fn mesh01(cells: usize) -> Mesh {
        Mesh::new(Domain::Interval { a: 0.0, b: 1.0 }, cells).unwrap()
    }

    #[test]
    fn zero_start_stays_zero_and_is_flagged_trivial() {
        let p = ProblemParams::new(0.5, 0.25, 0.3, 1).unwrap();
        let mesh = mesh01(64);
        let rep = newton_solve(&p, &mesh, &GridFunction::zeros(mesh.interior_len()), &SolverConfig::default());
        assert!(rep.converged);
        assert!(rep.trivial);
        assert_eq!(rep.residual_norm, 0.0);
    }

    #[test]
    fn converged_point_refixes_in_two_iterations() {
        let p = ProblemParams::new(0.5, 0.75, -1.0, 1).unwrap();
        let mesh = mesh01(96);
        let cfg = SolverConfig { max_iter: 3000, ..Default::default() };
        let eig = principal_eigenpair(&mesh, 1e-11).unwrap();
        let sub = auto_subsolution(&p, &eig, 1.0).unwrap();
        let sup = GridFunction::constant(mesh.interior_len(), build_supersolution(&p).unwrap());
        let sol = monotone_iteration(&p, &mesh, &sub.function, &sup, &cfg).unwrap();
        assert!(sol.converged);
        let rep = newton_solve(&p, &mesh, &sol.solution, &SolverConfig::default());
        assert!(rep.converged);
        assert!(rep.iterations <= 2, "took {} iterations", rep.iterations);
    }

    #[test]
    fn newton_finds_logistic_solution_from_bump() {
        let p = ProblemParams::new(1.0, 1.0, 0.0, 1).unwrap();
        let mesh = Mesh::new(Domain::Interval { a: 0.0, b: 1.1 * std::f64::consts::PI }, 128).unwrap();
        let eig = principal_eigenpair(&mesh, 1e-11).unwrap();
        let rep = newton_solve(&p, &mesh, &eig.phi1.scale(0.2), &SolverConfig::default());
        assert!(rep.is_nontrivial_solution(), "residual {}", rep.residual_norm);
        assert!(rep.solution.values.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn newton_cannot_find_nontrivial_when_none_exists() {
        // m = n = 0.5, λ = 1.2 > 1: f < 0 pointwise, only the zero state.
        let p = ProblemParams::new(0.5, 0.5, 1.2, 1).unwrap();
        let mesh = mesh01(64);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let u0 = GridFunction::new(
                (0..mesh.interior_len()).map(|_| rng.gen_range(0.0..1.0)).collect(),
            );
            let rep = newton_solve(&p, &mesh, &u0, &SolverConfig { max_iter: 200, ..Default::default() });
            assert!(
                !rep.is_nontrivial_solution(),
                "found spurious solution with sup {}",
                rep.solution.sup_norm()
            );
        }
    }
}
