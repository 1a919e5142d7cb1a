//! Finite-difference discretization of the Dirichlet Laplacian on
//! intervals and radial balls, the principal eigenpair, and the discrete
//! energy functional with its exact gradient and fiber maps.
//!
//! Meshes are uniform. Radial meshes stagger the first node at `h/2` off
//! the origin so the `(N-1)/r` term never divides by zero; the operator
//! is assembled in conservative flux form, which makes it self-adjoint in
//! the quadrature inner product and gives the discrete energy an exact
//! gradient equal to the weighted stencil residual.

use crate::linalg;
use crate::model::ProblemParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("too few cells: need at least 4, got {0}")]
    TooFewCells(usize),
    #[error("eigenpair iteration did not reach tolerance {tol} within {iterations} iterations (residual {residual})")]
    EigenNonConvergence { tol: f64, iterations: usize, residual: f64 },
}

/// Computational domain: a 1-D interval or an `N`-dimensional ball
/// reduced to its radial coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    Interval { a: f64, b: f64 },
    RadialBall { dim: u32, radius: f64 },
}

impl Domain {
    pub fn validate(&self) -> Result<(), GridError> {
        match *self {
            Domain::Interval { a, b } => {
                if !(b > a) || !a.is_finite() || !b.is_finite() {
                    return Err(GridError::InvalidDomain(format!("need b > a, got [{a}, {b}]")));
                }
            }
            Domain::RadialBall { dim, radius } => {
                if dim < 1 {
                    return Err(GridError::InvalidDomain("ball dimension must be >= 1".into()));
                }
                if !(radius > 0.0) || !radius.is_finite() {
                    return Err(GridError::InvalidDomain(format!("need radius > 0, got {radius}")));
                }
            }
        }
        Ok(())
    }

    /// Lebesgue measure |Ω| (interval length, or ball volume).
    pub fn measure(&self) -> f64 {
        match *self {
            Domain::Interval { a, b } => b - a,
            Domain::RadialBall { dim, radius } => {
                crate::model::unit_ball_volume(dim) * radius.powi(dim as i32)
            }
        }
    }

    /// Extent of the radial/axial coordinate (length or radius).
    pub fn extent(&self) -> f64 {
        match *self {
            Domain::Interval { a, b } => b - a,
            Domain::RadialBall { radius, .. } => radius,
        }
    }
}

/// Nodal values of a grid function on the interior nodes; the zero
/// Dirichlet data at the boundary is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(len: usize) -> Self {
        Self { values: vec![0.0; len] }
    }

    pub fn constant(len: usize, c: f64) -> Self {
        Self { values: vec![c; len] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// `u⁺ = max{u, 0}` pointwise.
    pub fn positive_part(&self) -> GridFunction {
        GridFunction::new(self.values.iter().map(|v| v.max(0.0)).collect())
    }

    /// `u⁻ = max{-u, 0}` pointwise, so `u = u⁺ - u⁻`.
    pub fn negative_part(&self) -> GridFunction {
        GridFunction::new(self.values.iter().map(|v| (-v).max(0.0)).collect())
    }

    pub fn scale(&self, t: f64) -> GridFunction {
        GridFunction::new(self.values.iter().map(|v| t * v).collect())
    }

    pub fn sup_distance(&self, other: &GridFunction) -> f64 {
        assert_eq!(self.len(), other.len(), "grid function size mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs()))
    }
}

/// Uniform mesh over a [`Domain`] with its interior node coordinates,
/// per-node quadrature weights, and the edge conductances of the
/// flux-form Laplacian.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub domain: Domain,
    pub cells: usize,
    pub h: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// Conductance of the edge left of node i (i = 0 is the left/origin
    /// boundary; a zero entry means no flux, as at the radial origin).
    cond_left: Vec<f64>,
    /// Conductance of the edge right of the last node (outer boundary).
    cond_right_boundary: f64,
}

impl Mesh {
    /// Builds the uniform mesh. Requires `cells ≥ 4`.
    ///
    /// Intervals place `cells - 1` interior nodes at spacing `h`;
    /// radial balls place `cells` nodes at `(i + 1/2) h`, staggered off
    /// the origin.
    pub fn new(domain: Domain, cells: usize) -> Result<Mesh, GridError> {
        domain.validate()?;
        if cells < 4 {
            return Err(GridError::TooFewCells(cells));
        }
        match domain {
            Domain::Interval { a, b } => {
                let h = (b - a) / cells as f64;
                let m = cells - 1;
                let nodes: Vec<f64> = (1..=m).map(|i| a + i as f64 * h).collect();
                let weights = vec![h; m];
                // Unit cross-section; every node has a left edge, the last
                // also has the right boundary edge.
                let cond_left = vec![1.0 / h; m];
                Ok(Mesh { domain, cells, h, nodes, weights, cond_left, cond_right_boundary: 1.0 / h })
            }
            Domain::RadialBall { dim, radius } => {
                let h = radius / cells as f64;
                let m = cells;
                let nn = dim as f64;
                // |S^{N-1}| = N * vol(B_1)
                let sphere = nn * crate::model::unit_ball_volume(dim);
                let nodes: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) * h).collect();
                // Exact shell volumes keep the flux-form operator
                // pointwise consistent at the origin-adjacent node.
                let weights: Vec<f64> = (0..m)
                    .map(|i| {
                        let r_lo = i as f64 * h;
                        let r_hi = (i as f64 + 1.0) * h;
                        sphere * (r_hi.powi(dim as i32) - r_lo.powi(dim as i32)) / nn
                    })
                    .collect();
                let cond_left: Vec<f64> = (0..m)
                    .map(|i| {
                        if i == 0 {
                            // symmetry at the origin: no flux (also dodges
                            // the 0^0 = 1 convention of powf at dim 1)
                            0.0
                        } else {
                            let r = i as f64 * h;
                            sphere * r.powf(nn - 1.0) / h
                        }
                    })
                    .collect();
                // Dirichlet wall at r = R sits h/2 from the last node.
                let cond_right_boundary = sphere * radius.powf(nn - 1.0) / (0.5 * h);
                Ok(Mesh { domain, cells, h, nodes, weights, cond_left, cond_right_boundary })
            }
        }
    }

    pub fn interior_len(&self) -> usize {
        self.nodes.len()
    }

    /// Interior node coordinates, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Per-node quadrature weights (strictly positive, summing to |Ω| up
    /// to the staggering defect).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn measure(&self) -> f64 {
        self.domain.measure()
    }

    fn assert_size(&self, u: &GridFunction) {
        assert_eq!(
            u.len(),
            self.interior_len(),
            "grid function has {} values but the mesh has {} interior nodes",
            u.len(),
            self.interior_len()
        );
    }

    /// Bands `(sub, diag, sup)` of the negative Laplacian `A = -Δ_h`
    /// (unweighted nodal form: `(A u)_i = (1/w_i) Σ_e g_e (u_i - u_nbr)`).
    pub fn neg_laplacian_bands(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let m = self.interior_len();
        let mut sub = vec![0.0; m - 1];
        let mut diag = vec![0.0; m];
        let mut sup = vec![0.0; m - 1];
        for i in 0..m {
            let g_left = self.cond_left[i];
            let g_right = if i + 1 < m { self.cond_left[i + 1] } else { self.cond_right_boundary };
            diag[i] = (g_left + g_right) / self.weights[i];
            if i > 0 {
                sub[i - 1] = -g_left / self.weights[i];
            }
            if i + 1 < m {
                sup[i] = -g_right / self.weights[i];
            }
        }
        (sub, diag, sup)
    }

    /// Applies `-Δ_h` with implicit zero Dirichlet data.
    pub fn apply_neg_laplacian(&self, u: &GridFunction) -> GridFunction {
        self.assert_size(u);
        let m = u.len();
        let v = &u.values;
        let mut out = vec![0.0; m];
        for i in 0..m {
            let left = if i == 0 { 0.0 } else { v[i - 1] };
            let right = if i + 1 < m { v[i + 1] } else { 0.0 };
            let g_left = self.cond_left[i];
            let g_right = if i + 1 < m { self.cond_left[i + 1] } else { self.cond_right_boundary };
            out[i] = (g_left * (v[i] - left) + g_right * (v[i] - right)) / self.weights[i];
        }
        GridFunction::new(out)
    }

    /// Solves `(-Δ_h + diag(shift)) x = rhs`; `None` if the tridiagonal
    /// elimination hits a zero pivot.
    pub fn solve_shifted(&self, shift: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
        let (sub, mut diag, sup) = self.neg_laplacian_bands();
        assert_eq!(shift.len(), diag.len(), "shift size mismatch");
        for (d, s) in diag.iter_mut().zip(shift) {
            *d += s;
        }
        linalg::solve_tridiag(&sub, &diag, &sup, rhs)
    }

    /// Smallest eigenvalue of `-Δ_h + diag(shift)` (self-adjoint in the
    /// quadrature inner product; computed on the symmetrized bands).
    pub fn smallest_eigenvalue_shifted(&self, shift: &[f64]) -> f64 {
        let (_, mut diag, _) = self.neg_laplacian_bands();
        assert_eq!(shift.len(), diag.len(), "shift size mismatch");
        for (d, s) in diag.iter_mut().zip(shift) {
            *d += s;
        }
        let m = diag.len();
        let mut off = vec![0.0; m - 1];
        for i in 0..m - 1 {
            // symmetrized off-diagonal: -g / sqrt(w_i w_{i+1})
            let g = self.cond_left[i + 1];
            off[i] = -g / (self.weights[i] * self.weights[i + 1]).sqrt();
        }
        linalg::smallest_eigenvalue(&diag, &off, 1e-13)
    }

    /// Discrete Dirichlet energy `∫ |∇u|²` by forward differences over
    /// every cell edge, both boundary edges included.
    pub fn dirichlet_energy(&self, u: &GridFunction) -> f64 {
        self.assert_size(u);
        let m = u.len();
        let v = &u.values;
        let mut acc = 0.0;
        for i in 0..m {
            let left = if i == 0 { 0.0 } else { v[i - 1] };
            acc += self.cond_left[i] * (v[i] - left) * (v[i] - left);
        }
        acc += self.cond_right_boundary * v[m - 1] * v[m - 1];
        acc
    }

    /// Quadrature `Σ w_i g(u_i)`.
    pub fn integrate(&self, u: &GridFunction, g: impl Fn(f64) -> f64) -> f64 {
        self.assert_size(u);
        self.weights.iter().zip(&u.values).map(|(w, v)| w * g(*v)).sum()
    }

    /// Weighted L² norm `(Σ w_i v_i²)^{1/2}` of a nodal vector.
    pub fn weighted_norm(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.interior_len(), "vector size mismatch");
        self.weights.iter().zip(v).map(|(w, x)| w * x * x).sum::<f64>().sqrt()
    }

    /// Weighted inner product `Σ w_i a_i b_i`.
    pub fn weighted_dot(&self, a: &[f64], b: &[f64]) -> f64 {
        assert_eq!(a.len(), self.interior_len(), "vector size mismatch");
        assert_eq!(b.len(), self.interior_len(), "vector size mismatch");
        self.weights.iter().zip(a.iter().zip(b)).map(|(w, (x, y))| w * x * y).sum()
    }
}

/// Principal Dirichlet eigenpair: `φ₁ > 0` normalized to `‖φ₁‖_∞ = 1`.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub lambda1: f64,
    pub phi1: GridFunction,
}

/// Inverse power iteration for the principal eigenpair of `-Δ_h`.
/// The residual criterion is `‖(-Δ_h - λ₁)φ₁‖_w ≤ tol` at `‖φ₁‖_∞ = 1`.
pub fn principal_eigenpair(mesh: &Mesh, tol: f64) -> Result<EigenPair, GridError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let m = mesh.interior_len();
    let zero_shift = vec![0.0; m];
    let mut x = GridFunction::constant(m, 1.0);
    let max_iter = 50_000;
    for it in 0..max_iter {
        let y = mesh
            .solve_shifted(&zero_shift, &x.values)
            .expect("the discrete Dirichlet Laplacian is positive definite");
        let sup = y.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let y: Vec<f64> = y.iter().map(|v| v / sup).collect();
        let gf = GridFunction::new(y);
        let ax = mesh.apply_neg_laplacian(&gf);
        let lambda =
            mesh.weighted_dot(&ax.values, &gf.values) / mesh.weighted_dot(&gf.values, &gf.values);
        let residual: Vec<f64> =
            ax.values.iter().zip(&gf.values).map(|(a, v)| a - lambda * v).collect();
        let res_norm = mesh.weighted_norm(&residual);
        x = gf;
        if res_norm <= tol {
            // sign convention: positive interior values
            let flip = x.values.iter().sum::<f64>() < 0.0;
            let sup = x.sup_norm();
            let phi1 = GridFunction::new(
                x.values.iter().map(|v| if flip { -v / sup } else { v / sup }).collect(),
            );
            return Ok(EigenPair { lambda1: lambda, phi1 });
        }
        if it == max_iter - 1 {
            return Err(GridError::EigenNonConvergence { tol, iterations: max_iter, residual: res_norm });
        }
    }
    unreachable!()
}

/// Discrete energy
/// `E(u) = ½∫|∇u|² - ∫|u⁺|^{m+1}/(m+1) + ∫|u⁺|^{m+2}/(m+2) + λ∫|u⁺|^{n+1}/(n+1)`.
pub fn energy(p: &ProblemParams, mesh: &Mesh, u: &GridFunction) -> f64 {
    let grad = 0.5 * mesh.dirichlet_energy(u);
    let bulk = mesh.integrate(u, |v| {
        let s = v.max(0.0);
        if s == 0.0 {
            0.0
        } else {
            -s.powf(p.m + 1.0) / (p.m + 1.0) + s.powf(p.m + 2.0) / (p.m + 2.0)
                + p.lambda * s.powf(p.n + 1.0) / (p.n + 1.0)
        }
    });
    grad + bulk
}

/// Exact gradient of [`energy`]: nodal residual `-Δ_h u - f(u⁺)` scaled by
/// the quadrature weights, so `dE(u + t d)/dt|₀ = Σ_i g_i d_i` exactly.
pub fn energy_gradient(p: &ProblemParams, mesh: &Mesh, u: &GridFunction) -> GridFunction {
    let r = residual(p, mesh, u);
    GridFunction::new(r.values.iter().zip(mesh.weights()).map(|(ri, w)| ri * w).collect())
}

/// Unweighted nodal residual `-Δ_h u - f(u⁺)` of the discrete equation.
pub fn residual(p: &ProblemParams, mesh: &Mesh, u: &GridFunction) -> GridFunction {
    let au = mesh.apply_neg_laplacian(u);
    GridFunction::new(
        au.values
            .iter()
            .zip(&u.values)
            .map(|(a, v)| a - p.f(v.max(0.0)))
            .collect(),
    )
}

/// Weighted L² norm of the nodal residual; the convergence measure used
/// by every solver.
pub fn residual_norm(p: &ProblemParams, mesh: &Mesh, u: &GridFunction) -> f64 {
    mesh.weighted_norm(&residual(p, mesh, u).values)
}

/// Fiber map `φ_v(t) = E(t v)` expanded in the discrete integrals,
/// so the identity with [`energy`] is exact to rounding for `v ≥ 0`.
pub fn fiber(p: &ProblemParams, mesh: &Mesh, v: &GridFunction, t: f64) -> f64 {
    let (grad, pm1, pm2, pn1) = fiber_integrals(p, mesh, v);
    0.5 * t * t * grad - t.powf(p.m + 1.0) / (p.m + 1.0) * pm1
        + t.powf(p.m + 2.0) / (p.m + 2.0) * pm2
        + p.lambda * t.powf(p.n + 1.0) / (p.n + 1.0) * pn1
}

/// Exact `t`-derivative of the fiber map.
pub fn fiber_derivative(p: &ProblemParams, mesh: &Mesh, v: &GridFunction, t: f64) -> f64 {
    let (grad, pm1, pm2, pn1) = fiber_integrals(p, mesh, v);
    t * grad - t.powf(p.m) * pm1 + t.powf(p.m + 1.0) * pm2 + p.lambda * t.powf(p.n) * pn1
}

fn fiber_integrals(p: &ProblemParams, mesh: &Mesh, v: &GridFunction) -> (f64, f64, f64, f64) {
    assert!(t_nonzero(v), "fiber maps require v != 0");
    let grad = mesh.dirichlet_energy(v);
    let pow_int = |q: f64| mesh.integrate(v, |x| if x > 0.0 { x.powf(q) } else { 0.0 });
    (grad, pow_int(p.m + 1.0), pow_int(p.m + 2.0), pow_int(p.n + 1.0))
}

fn t_nonzero(v: &GridFunction) -> bool {
    v.values.iter().any(|x| *x != 0.0)
}

/// Writes a grid function as CSV rows `coordinate,value` with the
/// coordinate ascending (column order: x or r first).
pub fn write_grid_function_csv<W: std::io::Write>(
    w: &mut W,
    mesh: &Mesh,
    u: &GridFunction,
) -> std::io::Result<()> {
    assert_eq!(u.len(), mesh.interior_len(), "grid function size mismatch");
    writeln!(w, "coordinate,value")?;
    for (x, v) in mesh.nodes().iter().zip(&u.values) {
        writeln!(w, "{x:.17e},{v:.17e}")?;
    }
    Ok(())
}

/// Reads back a grid function written by [`write_grid_function_csv`].
pub fn read_grid_function_csv<R: std::io::BufRead>(r: R) -> std::io::Result<(Vec<f64>, GridFunction)> {
    let mut coords = Vec::new();
    let mut values = Vec::new();
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        if k == 0 && line.starts_with("coordinate") {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse = |s: Option<&str>| -> std::io::Result<f64> {
            s.and_then(|t| t.trim().parse().ok()).ok_or_else(|| {
                std::io::Error::new(std::io::ErrorKind::InvalidData, format!("bad CSV row: {line:?}"))
            })
        };
        coords.push(parse(parts.next())?);
        values.push(parse(parts.next())?);
    }
    Ok((coords, GridFunction::new(values)))
}
