//! Discrete-path mountain-pass algorithm: a piecewise-linear path from
//! the zero state to a low-energy state is deformed by steepest descent
//! applied to its maximal-energy node, with arclength re-parameterization
//! between sweeps, until the max node sits at a critical point. A Newton
//! polish supplies the final digits.

use super::{newton_solve, Method, SolveReport, SolverConfig, SolverError};
use crate::grid::{self, GridFunction, Mesh};
use crate::model::ProblemParams;

fn lerp(a: &GridFunction, b: &GridFunction, t: f64) -> GridFunction {
    GridFunction::new(
        a.values.iter().zip(&b.values).map(|(x, y)| x + t * (y - x)).collect(),
    )
}

/// Redistributes path nodes to equal arclength in the weighted L² metric,
/// keeping both endpoints fixed.
fn reparameterize(mesh: &Mesh, path: &[GridFunction]) -> Vec<GridFunction> {
    let p_len = path.len();
    let mut cum = vec![0.0; p_len];
    for i in 1..p_len {
        let seg: Vec<f64> = path[i]
            .values
            .iter()
            .zip(&path[i - 1].values)
            .map(|(a, b)| a - b)
            .collect();
        cum[i] = cum[i - 1] + mesh.weighted_norm(&seg);
    }
    let total = cum[p_len - 1];
    if total <= 0.0 {
        return path.to_vec();
    }
    let mut out = Vec::with_capacity(p_len);
    out.push(path[0].clone());
    let mut seg = 1usize;
    for k in 1..p_len - 1 {
        let target = total * k as f64 / (p_len - 1) as f64;
        while seg < p_len - 1 && cum[seg] < target {
            seg += 1;
        }
        let span = cum[seg] - cum[seg - 1];
        let t = if span > 0.0 { (target - cum[seg - 1]) / span } else { 0.0 };
        out.push(lerp(&path[seg - 1], &path[seg], t));
    }
    out.push(path[p_len - 1].clone());
    out
}

/// Mountain-pass solve between the endpoints `0` and `u_end`, which must
/// be a low-energy state (`E(u_end) < 0`).
///
/// Path collapse (the interior maximum dropping to the endpoint levels)
/// signals the absence of pass geometry and comes back as a
/// non-converged report with a warning; a degenerate endpoint is an
/// error.
pub fn mountain_pass(
    p: &ProblemParams,
    mesh: &Mesh,
    u_end: &GridFunction,
    cfg: &SolverConfig,
) -> Result<SolveReport, SolverError> {
    cfg.validate()?;
    assert_eq!(u_end.len(), mesh.interior_len(), "endpoint size mismatch");
    if u_end.sup_norm() <= 10.0 * cfg.eps_reg {
        return Err(SolverError::DegeneratePath("endpoints coincide (u_end ≈ 0)".into()));
    }
    let e_end = grid::energy(p, mesh, u_end);
    if e_end >= 0.0 {
        return Err(SolverError::DegeneratePath(format!(
            "u_end must have negative energy, got {e_end:.3e}"
        )));
    }

    let m = mesh.interior_len();
    let zero_shift = vec![0.0; m];
    let nodes = cfg.path_nodes;
    let mut path: Vec<GridFunction> = (0..nodes)
        .map(|k| u_end.scale(k as f64 / (nodes - 1) as f64))
        .collect();

    // Loose inner tolerance; Newton supplies the final digits.
    let deform_tol = cfg.tol.max(1e-6).max(cfg.tol.sqrt() * 1e-1);
    let mut warning = None;
    let mut sweeps = 0usize;

    loop {
        sweeps += 1;
        if sweeps > cfg.max_iter {
            warning = Some(format!("deformation cap {} reached", cfg.max_iter));
            break;
        }
        let energies: Vec<f64> = path.iter().map(|u| grid::energy(p, mesh, u)).collect();
        let (j_max, &e_max) = energies
            .iter()
            .enumerate()
            .skip(1)
            .take(nodes - 2)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("path has interior nodes");

        if e_max <= energies[0].max(e_end) + 1e-14 {
            warning = Some(format!(
                "path collapse: interior maximum {e_max:.3e} fell to the endpoint levels; no pass geometry"
            ));
            break;
        }

        let r = grid::residual(p, mesh, &path[j_max]);
        let rnorm = mesh.weighted_norm(&r.values);
        if rnorm <= deform_tol {
            break;
        }

        // Steepest-descent step on the max node in the H¹ metric, with a
        // cap so the node cannot jump past its neighbors.
        let Some(dir) = mesh.solve_shifted(&zero_shift, &r.values) else {
            warning = Some("singular preconditioner solve during deformation".into());
            break;
        };
        let dir_norm = mesh.weighted_norm(&dir);
        if dir_norm <= 0.0 || !dir_norm.is_finite() {
            warning = Some("degenerate descent direction during deformation".into());
            break;
        }
        let left_gap: Vec<f64> = path[j_max]
            .values
            .iter()
            .zip(&path[j_max - 1].values)
            .map(|(a, b)| a - b)
            .collect();
        let gap = mesh.weighted_norm(&left_gap).max(1e-12);
        let step_cap = 0.5 * gap / dir_norm;
        let mut t = step_cap.min(1.0);
        let mut moved = false;
        for _ in 0..30 {
            let trial = GridFunction::new(
                path[j_max].values.iter().zip(&dir).map(|(a, d)| a - t * d).collect(),
            );
            if grid::energy(p, mesh, &trial) < e_max {
                path[j_max] = trial;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            // The max node is numerically critical at this resolution.
            break;
        }
        path = reparameterize(mesh, &path);
    }

    // Polish the maximal-energy interior node.
    let energies: Vec<f64> = path.iter().map(|u| grid::energy(p, mesh, u)).collect();
    let j_max = (1..nodes - 1)
        .max_by(|a, b| energies[*a].total_cmp(&energies[*b]))
        .expect("path has interior nodes");
    let polished = newton_solve(p, mesh, &path[j_max], cfg);
    let report = SolveReport {
        method: Method::MountainPass,
        iterations: sweeps + polished.iterations,
        warning: warning.clone().or(polished.warning.clone()),
        ..polished
    };
    if report.trivial && warning.is_none() {
        return Ok(SolveReport {
            warning: Some("polish collapsed to the trivial state".into()),
            ..report
        });
    }
    Ok(report)
}
