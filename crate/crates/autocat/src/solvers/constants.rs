//! The variational constants
//! `A = (1/q) sup { ∫ |v|^q : ‖∇v‖₂ = 1 }` for subcritical `q`, computed
//! by two independent routes and cross-checked: a normalized
//! fixed-point / Euler-Lagrange solve, and direct projected ascent of
//! the Rayleigh-type quotient.

use super::SolverError;
use crate::grid::{GridFunction, Mesh};
use serde::{Deserialize, Serialize};

/// Dual-route estimate of the constant `A_q`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ApEstimate {
    /// Adopted value (the Euler-Lagrange route).
    pub value: f64,
    pub euler_lagrange: f64,
    pub direct_ascent: f64,
    /// Relative disagreement between the two routes.
    pub rel_gap: f64,
}

fn quotient(mesh: &Mesh, q: f64, v: &GridFunction) -> f64 {
    let grad = mesh.dirichlet_energy(v);
    let mass = mesh.integrate(v, |x| if x > 0.0 { x.powf(q) } else { 0.0 });
    mass / grad.powf(q / 2.0)
}

fn normalize_gradient(mesh: &Mesh, v: &GridFunction) -> GridFunction {
    let g = mesh.dirichlet_energy(v).sqrt();
    v.scale(1.0 / g)
}

fn seed(mesh: &Mesh) -> GridFunction {
    let ext = mesh.domain.extent();
    let lo = match mesh.domain {
        crate::grid::Domain::Interval { a, .. } => a,
        crate::grid::Domain::RadialBall { .. } => 0.0,
    };
    GridFunction::new(
        mesh.nodes()
            .iter()
            .map(|&x| {
                let t = (x - lo) / ext;
                (std::f64::consts::PI * t).cos().max(0.0) + (std::f64::consts::PI * t).sin()
            })
            .map(|v| v.max(0.05))
            .collect(),
    )
}

/// Euler-Lagrange route: normalized fixed point
/// `v ← normalize((-Δ_h)^{-1} (v⁺)^{q-1})`, then (for `q ≠ 2`) a Newton
/// polish of `-Δ w = w^{q-1}` seeded from the properly rescaled iterate.
fn euler_lagrange_route(mesh: &Mesh, q: f64) -> Result<f64, SolverError> {
    let m = mesh.interior_len();
    let zero_shift = vec![0.0; m];
    let mut v = normalize_gradient(mesh, &seed(mesh));
    let mut j = quotient(mesh, q, &v);
    let mut stalled = 0;
    for _ in 0..20_000 {
        let rhs: Vec<f64> =
            v.values.iter().map(|&x| if x > 0.0 { x.powf(q - 1.0) } else { 0.0 }).collect();
        let z = mesh
            .solve_shifted(&zero_shift, &rhs)
            .ok_or(SolverError::NonConvergence("A_q fixed point (singular solve)", 0))?;
        let v_next = normalize_gradient(mesh, &GridFunction::new(z));
        let j_next = quotient(mesh, q, &v_next);
        let rel = (j_next - j).abs() / j_next.abs().max(1e-300);
        v = v_next;
        j = j_next;
        if rel < 1e-15 {
            stalled += 1;
            if stalled > 4 {
                break;
            }
        } else {
            stalled = 0;
        }
    }

    if (q - 2.0).abs() > 1e-9 {
        // Rescale so that -Δ w = w^{q-1} and polish by Newton.
        let theta = 1.0 / mesh.integrate(&v, |x| if x > 0.0 { x.powf(q) } else { 0.0 });
        let mut w = v.scale(theta.powf(1.0 / (q - 2.0)));
        let mut converged = false;
        for _ in 0..100 {
            let au = mesh.apply_neg_laplacian(&w);
            let res: Vec<f64> = au
                .values
                .iter()
                .zip(&w.values)
                .map(|(a, &x)| a - if x > 0.0 { x.powf(q - 1.0) } else { 0.0 })
                .collect();
            let rnorm = mesh.weighted_norm(&res);
            if rnorm <= 1e-12 * (1.0 + w.sup_norm()) {
                converged = true;
                break;
            }
            let shift: Vec<f64> = w
                .values
                .iter()
                .map(|&x| {
                    if x > 0.0 {
                        -(q - 1.0) * x.max(1e-14).powf(q - 2.0)
                    } else {
                        0.0
                    }
                })
                .collect();
            let neg: Vec<f64> = res.iter().map(|r| -r).collect();
            let Some(delta) = mesh.solve_shifted(&shift, &neg) else { break };
            for (wi, d) in w.values.iter_mut().zip(&delta) {
                *wi += d;
            }
        }
        if converged {
            return Ok(quotient(mesh, q, &w) / q);
        }
        // fall back to the fixed-point value
    }
    Ok(j / q)
}

/// Direct route: Euclidean ascent on the quotient with adaptive step and
/// gradient-sphere renormalization; shares no linear solver with the
/// Euler-Lagrange route.
fn direct_ascent_route(mesh: &Mesh, q: f64) -> f64 {
    let mut v = normalize_gradient(mesh, &seed(mesh));
    let mut j = quotient(mesh, q, &v);
    let mut tau = 1e-3;
    let mut stalled = 0usize;
    for _ in 0..600_000 {
        let grad_energy = mesh.dirichlet_energy(&v);
        let mass = mesh.integrate(&v, |x| if x > 0.0 { x.powf(q) } else { 0.0 });
        let av = mesh.apply_neg_laplacian(&v);
        // ∂J/∂v_i up to a positive factor: (v⁺)^{q-1} - (mass/grad) (Av)_i
        let ratio = mass / grad_energy;
        let dir: Vec<f64> = v
            .values
            .iter()
            .zip(&av.values)
            .map(|(&x, a)| {
                let pw = if x > 0.0 { x.powf(q - 1.0) } else { 0.0 };
                pw - ratio * a
            })
            .collect();
        let trial = GridFunction::new(
            v.values.iter().zip(&dir).map(|(x, d)| x + tau * d).collect(),
        );
        let trial = normalize_gradient(mesh, &trial);
        let jt = quotient(mesh, q, &trial);
        if jt > j {
            let gain = (jt - j) / j.abs().max(1e-300);
            v = trial;
            j = jt;
            tau *= 1.2;
            if gain < 1e-15 {
                stalled += 1;
                if stalled > 16 {
                    break;
                }
            } else {
                stalled = 0;
            }
        } else {
            tau *= 0.5;
            if tau < 1e-18 {
                break;
            }
        }
    }
    j / q
}

/// Computes `A_q` on the mesh by both routes. `q` must exceed 1 and stay
/// subcritical for the mesh dimension.
pub fn compute_ap(mesh: &Mesh, q: f64) -> Result<ApEstimate, SolverError> {
    if !(q > 1.0) {
        return Err(SolverError::Hypothesis(format!("q must exceed 1, got {q}")));
    }
    let dim = match mesh.domain {
        crate::grid::Domain::Interval { .. } => 1,
        crate::grid::Domain::RadialBall { dim, .. } => dim,
    };
    if dim > 2 {
        let crit = 2.0 * dim as f64 / (dim as f64 - 2.0);
        if q >= crit {
            return Err(SolverError::Hypothesis(format!(
                "q = {q} is supercritical for dimension {dim} (2* = {crit})"
            )));
        }
    }
    let euler_lagrange = euler_lagrange_route(mesh, q)?;
    let direct_ascent = direct_ascent_route(mesh, q);
    let rel_gap = (euler_lagrange - direct_ascent).abs() / euler_lagrange.abs().max(1e-300);
    Ok(ApEstimate { value: euler_lagrange, euler_lagrange, direct_ascent, rel_gap })
}
