//! Radial shooting for flat / compact-support profiles:
//! `u'' + ((N-1)/r) u' + f(u) = 0`, `u(0) = a`, `u'(0) = 0`, integrated
//! with an embedded Dormand-Prince 5(4) pair, the first `u = 0` crossing
//! located by event bisection.

use super::SolverError;
use crate::grid::{GridFunction, Mesh};
use crate::model::ProblemParams;
use serde::{Deserialize, Serialize};

/// Integrator controls for the shooting ODE.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OdeConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Give up on a crossing beyond this radius.
    pub r_max: f64,
    /// Accepted-step cap.
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-13, r_max: 100.0, max_steps: 2_000_000 }
    }
}

/// One accepted integrator sample `(r, u, u')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub r: f64,
    pub u: f64,
    pub du: f64,
}

/// Shooting outcome from initial height `a`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShootResult {
    pub initial_height: f64,
    /// First radius with `u = 0`, when reached before `r_max`.
    pub first_zero: Option<f64>,
    /// `u'` at the first zero (present together with `first_zero`).
    pub slope_at_zero: Option<f64>,
    /// Turning radius where the orbit started re-increasing with no
    /// remaining energy to reach zero.
    pub turning_radius: Option<f64>,
    pub profile: Vec<ProfileSample>,
}

impl ShootResult {
    /// Hermite resampling of the profile onto a mesh (zero beyond the
    /// recorded support).
    pub fn resample_on(&self, mesh: &Mesh) -> GridFunction {
        let values = mesh.nodes().iter().map(|&r| self.eval(r)).collect();
        GridFunction::new(values)
    }

    /// Cubic-Hermite evaluation of `u(r)` from the stored samples.
    pub fn eval(&self, r: f64) -> f64 {
        let prof = &self.profile;
        if prof.is_empty() {
            return 0.0;
        }
        if r <= prof[0].r {
            return prof[0].u;
        }
        if r >= prof[prof.len() - 1].r {
            return if self.first_zero.is_some() { 0.0 } else { prof[prof.len() - 1].u };
        }
        let idx = prof.partition_point(|s| s.r <= r).saturating_sub(1);
        let (s0, s1) = (&prof[idx], &prof[idx + 1]);
        let h = s1.r - s0.r;
        if h <= 0.0 {
            return s0.u;
        }
        let t = (r - s0.r) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * s0.u
            + (t3 - 2.0 * t2 + t) * h * s0.du
            + (-2.0 * t3 + 3.0 * t2) * s1.u
            + (t3 - t2) * h * s1.du
    }

    /// CSV export `r,u,du_dr` with `r` ascending.
    pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "r,u,du_dr")?;
        for s in &self.profile {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", s.r, s.u, s.du)?;
        }
        Ok(())
    }
}

/// `f` clamped at zero below the axis; the orbit is only meaningful for
/// `u ≥ 0` and fractional powers must not see negative arguments.
fn f_safe(p: &ProblemParams, u: f64) -> f64 {
    p.f(u.max(0.0))
}

#[derive(Clone, Copy)]
struct State {
    r: f64,
    u: f64,
    v: f64,
}

fn rhs(p: &ProblemParams, s: State) -> (f64, f64) {
    let damping = if p.dim > 1 { (p.dim as f64 - 1.0) * s.v / s.r } else { 0.0 };
    (s.v, -f_safe(p, s.u) - damping)
}

/// One Dormand-Prince 5(4) step; returns (5th-order state, error estimate).
fn dp54_step(p: &ProblemParams, s: State, h: f64) -> (State, f64) {
    const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    // 5th-order weights equal the last A row; embedded 4th-order weights:
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut ku = [0.0f64; 7];
    let mut kv = [0.0f64; 7];
    let (du, dv) = rhs(p, s);
    ku[0] = du;
    kv[0] = dv;
    for i in 0..6 {
        let mut uu = s.u;
        let mut vv = s.v;
        for j in 0..=i {
            uu += h * A[i][j] * ku[j];
            vv += h * A[i][j] * kv[j];
        }
        let stage = State { r: s.r + C[i] * h, u: uu, v: vv };
        let (du, dv) = rhs(p, stage);
        ku[i + 1] = du;
        kv[i + 1] = dv;
    }
    let next = State {
        r: s.r + h,
        u: s.u + h * (0..6).map(|j| A[5][j] * ku[j]).sum::<f64>(),
        v: s.v + h * (0..6).map(|j| A[5][j] * kv[j]).sum::<f64>(),
    };
    let u4 = s.u + h * (0..7).map(|j| B4[j] * ku[j]).sum::<f64>();
    let v4 = s.v + h * (0..7).map(|j| B4[j] * kv[j]).sum::<f64>();
    let err = ((next.u - u4).powi(2) + (next.v - v4).powi(2)).sqrt();
    (next, err)
}

fn error_scale(cfg: &OdeConfig, a: f64) -> f64 {
    cfg.abs_tol + cfg.rel_tol * a.abs().max(1.0)
}

/// Integrates the radial profile from height `a` until the first zero
/// crossing, a hopeless turning point, a runaway, or `r_max`.
///
/// The crossing is refined by bisection on the step length from the last
/// pre-crossing state to `|u| ≤ 1e-12 · max(1, a)`.
pub fn radial_shoot(p: &ProblemParams, a: f64, cfg: &OdeConfig) -> ShootResult {
    assert!(a > 0.0, "initial height must be positive");
    let nn = p.dim as f64;
    // Series start off the origin for dim > 1 keeps (N-1)/r regular.
    let mut s = if p.dim > 1 {
        let r0 = 1e-8;
        State { r: r0, u: a - f_safe(p, a) * r0 * r0 / (2.0 * nn), v: -f_safe(p, a) * r0 / nn }
    } else {
        State { r: 0.0, u: a, v: 0.0 }
    };
    let mut profile = vec![ProfileSample { r: s.r, u: s.u, du: s.v }];
    let mut h = 1e-4f64;
    let u_cap = 10.0 * a.max(1.0);
    let scale = error_scale(cfg, a);
    let mut result = ShootResult {
        initial_height: a,
        first_zero: None,
        slope_at_zero: None,
        turning_radius: None,
        profile: Vec::new(),
    };

    let mut steps = 0usize;
    while steps < cfg.max_steps && s.r < cfg.r_max {
        steps += 1;
        h = h.min(cfg.r_max - s.r).max(1e-14);
        let (next, err) = dp54_step(p, s, h);
        if err > scale || !next.u.is_finite() || !next.v.is_finite() {
            h = (0.9 * h * (scale / err.max(1e-300)).powf(0.2)).max(h * 0.1).max(1e-14);
            continue;
        }

        if next.u <= 0.0 {
            // Crossing inside this step: bisect the step length.
            let mut lo = 0.0;
            let mut hi = h;
            let mut hit = next;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let (trial, _) = dp54_step(p, s, mid);
                if trial.u <= 0.0 {
                    hi = mid;
                    hit = trial;
                } else {
                    lo = mid;
                }
                if hit.u.abs() <= 1e-12 * a.max(1.0) {
                    break;
                }
            }
            profile.push(ProfileSample { r: hit.r, u: 0.0, du: hit.v });
            result.first_zero = Some(hit.r);
            result.slope_at_zero = Some(hit.v);
            break;
        }

        // Turning detection: the orbit switches from falling to rising
        // with total energy below the escape level; it can never reach
        // zero afterwards (the energy only decays along r).
        if s.v < 0.0 && next.v >= 0.0 {
            let e_now = 0.5 * next.v * next.v + p.f_primitive(next.u.max(0.0));
            if e_now < 0.0 {
                profile.push(ProfileSample { r: next.r, u: next.u, du: next.v });
                result.turning_radius = Some(next.r);
                break;
            }
        }
        if next.u > u_cap {
            profile.push(ProfileSample { r: next.r, u: next.u, du: next.v });
            break;
        }

        s = next;
        profile.push(ProfileSample { r: s.r, u: s.u, du: s.v });
        h = (0.9 * h * (scale / err.max(1e-300)).powf(0.2)).clamp(h * 0.2, h * 5.0);
    }

    result.profile = profile;
    result
}

/// Shooting discriminant: `u'(R)` when the orbit crosses zero, `+1` on
/// the energy-deficit side (no crossing).
fn discriminant(res: &ShootResult) -> f64 {
    res.slope_at_zero.unwrap_or(1.0)
}

/// Bisection on the initial height for the flat profile
/// `u(R) = 0, u'(R) = 0`: requires a bracket where the shooting
/// discriminant changes sign, refines until `|u'(R)| ≤ 1e-8`.
///
/// The returned result is the crossing-side shot at the final height:
/// its `first_zero` is the support radius, i.e. the domain radius for
/// which the profile solves the Dirichlet problem flatly.
pub fn find_flat_profile(
    p: &ProblemParams,
    a_lo: f64,
    a_hi: f64,
    cfg: &OdeConfig,
) -> Result<ShootResult, SolverError> {
    assert!(a_lo > 0.0 && a_hi > a_lo, "need 0 < a_lo < a_hi");
    let slope_tol = 1e-8;
    let shot_lo = radial_shoot(p, a_lo, cfg);
    let shot_hi = radial_shoot(p, a_hi, cfg);
    let (d_lo, d_hi) = (discriminant(&shot_lo), discriminant(&shot_hi));
    if d_lo * d_hi > 0.0 {
        return Err(SolverError::NoBracket { a_lo, a_hi });
    }
    let mut lo = a_lo;
    let mut hi = a_hi;
    let mut best = if d_lo < 0.0 { shot_lo } else { shot_hi };
    for _ in 0..200 {
        if best.slope_at_zero.map(|v| v.abs() <= slope_tol).unwrap_or(false) {
            return Ok(best);
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break; // f64 exhausted
        }
        let shot = radial_shoot(p, mid, cfg);
        let d = discriminant(&shot);
        if d < 0.0 {
            best = shot;
        }
        if d * d_lo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best.slope_at_zero.map(|v| v.abs() <= slope_tol).unwrap_or(false) {
        Ok(best)
    } else {
        Err(SolverError::NonConvergence("flat-profile bisection", 200))
    }
}
