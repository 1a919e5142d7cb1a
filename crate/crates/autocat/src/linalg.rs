//! Tridiagonal kernels shared by the mesh, the solvers, and continuation.
//!
//! Everything discrete in this crate lives on a 1-D (or radially reduced)
//! grid, so plain Thomas elimination and Sturm bisection cover all linear
//! algebra needs.

/// Solves `T x = rhs` for a tridiagonal `T` given by its three bands.
///
/// `sub` and `sup` have length `n - 1`. Returns `None` on a (near-)zero
/// pivot.
pub fn solve_tridiag(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    assert_eq!(rhs.len(), n, "rhs length mismatch");
    assert_eq!(sub.len(), n.saturating_sub(1), "subdiagonal length mismatch");
    assert_eq!(sup.len(), n.saturating_sub(1), "superdiagonal length mismatch");
    if n == 0 {
        return Some(Vec::new());
    }

    let mut c = vec![0.0; n]; // modified superdiagonal
    let mut d = vec![0.0; n]; // modified rhs
    let tiny = f64::MIN_POSITIVE * 1e4;

    if diag[0].abs() < tiny {
        return None;
    }
    c[0] = if n > 1 { sup[0] / diag[0] } else { 0.0 };
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i - 1] * c[i - 1];
        if denom.abs() < tiny || !denom.is_finite() {
            return None;
        }
        if i < n - 1 {
            c[i] = sup[i] / denom;
        }
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / denom;
    }

    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Some(x)
}

/// Number of eigenvalues of the symmetric tridiagonal `(diag, off)`
/// strictly below `x`, via the Sturm sequence.
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0usize;
    let mut q = 1.0f64;
    for i in 0..n {
        let off2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        // Guard against exact zeros in the recurrence.
        let denom = if q == 0.0 { f64::MIN_POSITIVE * 1e10 } else { q };
        q = diag[i] - x - off2 / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest eigenvalue of a symmetric tridiagonal matrix by Sturm
/// bisection. `off` has length `n - 1`.
pub fn smallest_eigenvalue(diag: &[f64], off: &[f64], tol: f64) -> f64 {
    let n = diag.len();
    assert!(n > 0, "empty matrix");
    assert_eq!(off.len(), n - 1, "offdiagonal length mismatch");

    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i < n - 1 {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let scale = hi.abs().max(lo.abs()).max(1.0);
    let mut a = lo - scale * 1e-12;
    let mut b = hi + scale * 1e-12;
    while b - a > tol * scale.max(b.abs().max(a.abs())) {
        let mid = 0.5 * (a + b);
        if count_below(diag, off, mid) >= 1 {
            b = mid;
        } else {
            a = mid;
        }
        if mid == a || mid == b {
            // Cannot refine further in f64.
            break;
        }
    }
    0.5 * (a + b)
}
