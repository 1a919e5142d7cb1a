//! Pure scalar mathematics of the nonlinearity `f(s) = s^m - s^{m+1} - λ s^n`:
//! evaluation, case classification over `(m, n)`, every closed-form
//! threshold, a-priori bounds, uniqueness certificates, and the
//! existence decision table.
//!
//! All operations here are pure functions of their arguments and safe to
//! call from any number of threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("outside the regime of this formula: {0}")]
    Regime(String),
}

/// The exponent/parameter triple every formula consumes.
///
/// Invariants enforced by the constructor: `0 < m ≤ 1`, `n > 0`,
/// `dim ≥ 1`. `lambda` may be any real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub m: f64,
    pub n: f64,
    pub lambda: f64,
    pub dim: u32,
}

impl ProblemParams {
    pub fn new(m: f64, n: f64, lambda: f64, dim: u32) -> Result<Self, ModelError> {
        if !(m > 0.0 && m <= 1.0) || !m.is_finite() {
            return Err(ModelError::InvalidParams(format!(
                "exponent m must satisfy 0 < m <= 1, got {m}"
            )));
        }
        if !(n > 0.0) || !n.is_finite() {
            return Err(ModelError::InvalidParams(format!(
                "exponent n must be positive, got {n}"
            )));
        }
        if !lambda.is_finite() {
            return Err(ModelError::InvalidParams(format!("lambda must be finite, got {lambda}")));
        }
        if dim < 1 {
            return Err(ModelError::InvalidParams("dimension must be >= 1".into()));
        }
        Ok(Self { m, n, lambda, dim })
    }

    /// Same exponents and dimension, different reaction parameter.
    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..*self }
    }

    /// Critical Sobolev exponent `2* = 2N/(N-2)` for `N > 2`; `+∞` for
    /// `N ≤ 2`.
    pub fn sobolev_critical(&self) -> f64 {
        if self.dim > 2 {
            2.0 * self.dim as f64 / (self.dim as f64 - 2.0)
        } else {
            f64::INFINITY
        }
    }

    /// The reaction term `f(s) = s^m - s^{m+1} - λ s^n` for `s ≥ 0`.
    ///
    /// Returns exactly `0` at `s = 0` even when an exponent is below 1,
    /// so no NaN can leak out of the fractional powers.
    pub fn f(&self, s: f64) -> f64 {
        assert!(s >= 0.0, "f is only defined for s >= 0, got {s}");
        if s == 0.0 {
            return 0.0;
        }
        s.powf(self.m) - s.powf(self.m + 1.0) - self.lambda * s.powf(self.n)
    }

    /// `f'(s) = m s^{m-1} - (m+1) s^m - λ n s^{n-1}` for `s > 0`.
    ///
    /// The derivative may diverge as `s → 0+` when `m < 1` or `n < 1`,
    /// hence the strict positivity requirement.
    pub fn f_prime(&self, s: f64) -> f64 {
        assert!(s > 0.0, "f' is only defined for s > 0, got {s}");
        self.m * s.powf(self.m - 1.0)
            - (self.m + 1.0) * s.powf(self.m)
            - self.lambda * self.n * s.powf(self.n - 1.0)
    }

    /// Antiderivative `F(s) = s^{m+1}/(m+1) - s^{m+2}/(m+2) - λ s^{n+1}/(n+1)`
    /// with `F(0) = 0`; this is the energy density of the functional.
    pub fn f_primitive(&self, s: f64) -> f64 {
        assert!(s >= 0.0, "F is only defined for s >= 0, got {s}");
        if s == 0.0 {
            return 0.0;
        }
        s.powf(self.m + 1.0) / (self.m + 1.0) - s.powf(self.m + 2.0) / (self.m + 2.0)
            - self.lambda * s.powf(self.n + 1.0) / (self.n + 1.0)
    }
}

/// Exponent-pair taxonomy. Every admissible `(m, n)` with `0 < m ≤ 1`,
/// `n > 0` lands in exactly one case:
///
/// | tag | inequalities        |
/// |-----|---------------------|
/// | C1  | `0 < n < m < 1`     |
/// | C2  | `0 < m ≤ n ≤ 1`, `m < 1` |
/// | C3  | `0 < m < 1 < n < m+1` |
/// | C4  | `0 < m < 1`, `m+1 ≤ n` |
/// | C5  | `0 < n ≤ m = 1`     |
/// | C6  | `m = 1 < n ≤ 2`     |
/// | C7  | `m = 1`, `2 < n`    |
///
/// Historical numbering of the `m = 1` cases is inconsistent across
/// listings (V-VII in one, VI-VIII in another); the tags here are defined
/// purely by the inequalities and take no side on that discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for Case {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(Case::C1),
            "C2" => Ok(Case::C2),
            "C3" => Ok(Case::C3),
            "C4" => Ok(Case::C4),
            "C5" => Ok(Case::C5),
            "C6" => Ok(Case::C6),
            "C7" => Ok(Case::C7),
            other => Err(ModelError::InvalidParams(format!("unknown case tag {other:?}"))),
        }
    }
}

/// Boundary refinements inside a case (detected by exact float equality;
/// callers pass exact parameter values at desk scale).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subcase {
    /// `n = m` (inside C2 or C5): the reaction reduces to `(1-λ-u) u^m`.
    NEqualsM,
    /// `n = m + 1` (inside C4): rescalable to a convex-concave problem.
    NEqualsMPlusOne,
    /// `n = 2` with `m = 1` (inside C6): quadratic logistic-type form.
    NEqualsTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseTag {
    pub case: Case,
    pub subcase: Option<Subcase>,
}

/// Maps `(m, n)` to its unique case tag. Rejects out-of-range exponents.
pub fn classify(m: f64, n: f64) -> Result<CaseTag, ModelError> {
    if !(m > 0.0 && m <= 1.0 && m.is_finite()) {
        return Err(ModelError::InvalidParams(format!("need 0 < m <= 1, got {m}")));
    }
    if !(n > 0.0 && n.is_finite()) {
        return Err(ModelError::InvalidParams(format!("need n > 0, got {n}")));
    }
    let tag = if m < 1.0 {
        if n < m {
            CaseTag { case: Case::C1, subcase: None }
        } else if n <= 1.0 {
            let sub = (n == m).then_some(Subcase::NEqualsM);
            CaseTag { case: Case::C2, subcase: sub }
        } else if n < m + 1.0 {
            CaseTag { case: Case::C3, subcase: None }
        } else {
            let sub = (n == m + 1.0).then_some(Subcase::NEqualsMPlusOne);
            CaseTag { case: Case::C4, subcase: sub }
        }
    } else {
        // m = 1
        if n <= 1.0 {
            let sub = (n == 1.0).then_some(Subcase::NEqualsM);
            CaseTag { case: Case::C5, subcase: sub }
        } else if n <= 2.0 {
            let sub = (n == 2.0).then_some(Subcase::NEqualsTwo);
            CaseTag { case: Case::C6, subcase: sub }
        } else {
            CaseTag { case: Case::C7, subcase: None }
        }
    };
    Ok(tag)
}

/// Outcome of the uniqueness certificate, with its provenance: the
/// analytic sign split where one of the known sufficient regimes applies,
/// a dense-grid numerical check otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateProvenance {
    Analytic,
    Numerical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniquenessCertificate {
    pub holds: bool,
    pub provenance: CertificateProvenance,
}

/// Strict-decrease certificate for `f(s)/s` on `(0, s_max]`:
///
/// ```text
/// f(s) - s f'(s) = (1-m) s^m + m s^{m+1} + λ (n-1) s^n > 0,
/// ```
///
/// which forces at most one positive solution (Brezis-Oswald condition).
///
/// The analytic regimes, checked first:
/// * `λ > -1`, `n = m+1` — the λ-term folds into `m (1+λ) s^{m+1} ≥ 0`;
/// * `λ ≥ 0`, `n ≥ 1` — every term nonnegative, one strictly positive;
/// * `λ > 0`, `n > m`, `s_max ≤ λ^{1/(m-n)}` — reduces to
///   `m s^{m-n+1} > (m-n) λ` via `s^{m-n} ≥ λ`, trivially true;
/// * `0 < λ < 1`, `n = m` — collapses to `(1-m)(1-λ) s^m + m s^{m+1}`;
/// * `λ ≤ 0`, `n ≤ 1` — `λ (n-1) ≥ 0`.
///
/// Outside all of them the certificate is decided on a dense log/linear
/// grid over `(0, s_max]` with a `1e-12` margin and reports numerical
/// provenance.
pub fn uniqueness_certificate(p: &ProblemParams, s_max: f64) -> UniquenessCertificate {
    assert!(s_max > 0.0, "s_max must be positive");
    let (m, n, l) = (p.m, p.n, p.lambda);
    let analytic = |holds: bool| UniquenessCertificate {
        holds,
        provenance: CertificateProvenance::Analytic,
    };

    if n == m + 1.0 && l > -1.0 {
        return analytic(true);
    }
    if l >= 0.0 && n >= 1.0 {
        return analytic(true);
    }
    if l > 0.0 && n > m && s_max <= l.powf(1.0 / (m - n)) {
        return analytic(true);
    }
    if n == m && l > 0.0 && l < 1.0 {
        return analytic(true);
    }
    if l <= 0.0 && n <= 1.0 {
        return analytic(true);
    }

    // Numerical fallback: 4000 samples, log-spaced near zero plus a
    // linear sweep, margin 1e-12 against the positive part's scale.
    let expr = |s: f64| (1.0 - m) * s.powf(m) + m * s.powf(m + 1.0) + l * (n - 1.0) * s.powf(n);
    let mut holds = true;
    let samples = 2000;
    for k in 0..samples {
        // log grid from s_max * 1e-10 up to s_max
        let t = k as f64 / (samples - 1) as f64;
        let s_log = s_max * 10f64.powf(-10.0 * (1.0 - t));
        let s_lin = s_max * (k as f64 + 1.0) / samples as f64;
        for s in [s_log, s_lin] {
            let scale = (1.0 - m) * s.powf(m) + m * s.powf(m + 1.0) + (l * (n - 1.0)).abs() * s.powf(n);
            if expr(s) <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
                holds = false;
                break;
            }
        }
        if !holds {
            break;
        }
    }
    UniquenessCertificate { holds, provenance: CertificateProvenance::Numerical }
}

/// Sup-norm ceiling `M(λ)` for every solution, when the
/// interior-maximum argument gives one: at a maximum `M`,
/// `0 ≤ M^m - M^{m+1} - λ M^n`.
///
/// * `λ ≥ 0` — `M(λ) = 1`, sharpened to `min{1, λ^{1/(m-n)}}` for
///   `λ > 0`, `n > m`;
/// * `λ < 0` with `n < m+1`, or `-1 < λ < 0` with `n = m+1` — the unique
///   root above 1 of `M ↦ M^m - M^{m+1} - λ M^n`, isolated by bisection;
/// * otherwise no bound is available (`None`).
pub fn apriori_bound(p: &ProblemParams) -> Option<f64> {
    let (m, n, l) = (p.m, p.n, p.lambda);
    if l >= 0.0 {
        let mut bound = 1.0f64;
        if l > 0.0 && n > m {
            bound = bound.min(l.powf(1.0 / (m - n)));
        }
        return Some(bound);
    }
    // λ < 0: f(M) = M^m - M^{m+1} + |λ| M^n must go negative for large M.
    let eventually_negative = n < m + 1.0 || (n == m + 1.0 && l > -1.0);
    if !eventually_negative {
        return None;
    }
    // f(1) = -λ > 0; bracket the root above 1 by doubling.
    let mut hi = 2.0;
    let mut lo = 1.0;
    for _ in 0..200 {
        if p.f(hi) < 0.0 {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    if p.f(hi) >= 0.0 {
        return None; // no sign change found; treat as unbounded
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p.f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Threshold below which the 1-D problem on the line admits a
/// compact-support steady state (case C1 only):
///
/// ```text
/// λ_c = ((n+1)/(m+1)) ((m+2)/(m+1))^{m-n} (m-n)^{m-n} / (m-n+1)^{m-n+1}.
/// ```
///
/// Equivalently, the largest λ for which the energy density `F` still has
/// a positive root — the flat-profile amplitude.
pub fn lambda_c(m: f64, n: f64) -> Result<f64, ModelError> {
    require_case1(m, n)?;
    let a = m - n;
    Ok((n + 1.0) / (m + 1.0)
        * ((m + 2.0) / (m + 1.0)).powf(a)
        * a.powf(a)
        / (a + 1.0).powf(a + 1.0))
}

/// Upper bound for the case C1 fold:
/// `(m-n)^{m-n} / (m-n+1)^{m-n+1} < 1`, the maximum over `s > 0` of
/// `s^{m-n} - s^{m+1-n}`; beyond it the interior-maximum inequality
/// cannot hold and no solution exists.
pub fn threshold_fold_case1(m: f64, n: f64) -> Result<f64, ModelError> {
    require_case1(m, n)?;
    let a = m - n;
    Ok(a.powf(a) / (a + 1.0).powf(a + 1.0))
}

fn require_case1(m: f64, n: f64) -> Result<(), ModelError> {
    if !(0.0 < n && n < m && m < 1.0) {
        return Err(ModelError::Regime(format!("need 0 < n < m < 1, got m={m}, n={n}")));
    }
    Ok(())
}

/// Admissible `n` range for the case C1 mountain-pass second solution:
/// `{ n : 0 < n < m, n < ((N+2)(2m-1) - (N-2) m^2)/4 }`, subject to
/// `m < 2* - 2`. Returns the exclusive upper endpoint of the (open)
/// interval of admissible `n`, or `None` when the set is empty. The set
/// is empty for every `m` once `N ≥ 9`.
pub fn case1b_admissible_n(m: f64, dim: u32) -> Option<f64> {
    if !(0.0 < m && m < 1.0) || dim < 1 {
        return None;
    }
    let nn = dim as f64;
    let crit_minus_two = if dim > 2 { 2.0 * nn / (nn - 2.0) - 2.0 } else { f64::INFINITY };
    if m >= crit_minus_two {
        return None;
    }
    let bound = ((nn + 2.0) * (2.0 * m - 1.0) - (nn - 2.0) * m * m) / 4.0;
    let upper = bound.min(m);
    (upper > 0.0).then_some(upper)
}

/// Nonexistence threshold for case C4 with `n = m+1`: below
/// `-1 - λ₁^{1/(1-m)} (1-m) m^{m/(1-m)}` the problem has no solution.
/// The value is always `< -1`.
pub fn threshold_case4_nonexistence(m: f64, lambda1: f64) -> Result<f64, ModelError> {
    if !(0.0 < m && m < 1.0) {
        return Err(ModelError::Regime(format!("need 0 < m < 1, got {m}")));
    }
    if !(lambda1 > 0.0) {
        return Err(ModelError::Regime(format!("need lambda1 > 0, got {lambda1}")));
    }
    Ok(-1.0 - lambda1.powf(1.0 / (1.0 - m)) * (1.0 - m) * m.powf(m / (1.0 - m)))
}

/// Fold bound for case C5 (`m = 1`, `0 < n < 1`, `λ₁ < 1`):
/// `λ* ≤ (1-λ₁)^{2-n} (1-n)^{1-n} / (2-n)^{2-n}`; it is the λ at which
/// the convex comparison function `(λ₁-1) s^{1-n} + s^{2-n} + λ` first
/// has nonnegative minimum.
pub fn threshold_case5(n: f64, lambda1: f64) -> Result<f64, ModelError> {
    if !(0.0 < n && n < 1.0) {
        return Err(ModelError::Regime(format!("need 0 < n < 1, got {n}")));
    }
    if !(0.0 < lambda1 && lambda1 < 1.0) {
        return Err(ModelError::Regime(format!("need 0 < lambda1 < 1, got {lambda1}")));
    }
    Ok((1.0 - lambda1).powf(2.0 - n) * (1.0 - n).powf(1.0 - n) / (2.0 - n).powf(2.0 - n))
}

/// Fold bound for case C6 (`m = 1`, `1 < n < 2`, `λ₁ > 1`):
/// `λ* ≤ -(λ₁-1)^{2-n} / ((n-1)^{n-1} (2-n)^{2-n}) < 0`.
pub fn threshold_case6(n: f64, lambda1: f64) -> Result<f64, ModelError> {
    if !(1.0 < n && n < 2.0) {
        return Err(ModelError::Regime(format!("need 1 < n < 2, got {n}")));
    }
    if !(lambda1 > 1.0) {
        return Err(ModelError::Regime(format!("need lambda1 > 1, got {lambda1}")));
    }
    Ok(-(lambda1 - 1.0).powf(2.0 - n) / ((n - 1.0).powf(n - 1.0) * (2.0 - n).powf(2.0 - n)))
}

/// Lower bound on the case C7 fold (`m = 1`, `n > 2`, `λ₁ < 1`):
/// `λ* > -(n-2)^{n-2} / ((n-1)^{n-1} (1-λ₁)^{n-2})`; below the bound no
/// solution exists.
pub fn threshold_case7(n: f64, lambda1: f64) -> Result<f64, ModelError> {
    if !(n > 2.0) {
        return Err(ModelError::Regime(format!("need n > 2, got {n}")));
    }
    if !(0.0 < lambda1 && lambda1 < 1.0) {
        return Err(ModelError::Regime(format!("need 0 < lambda1 < 1, got {lambda1}")));
    }
    Ok(-(n - 2.0).powf(n - 2.0) / ((n - 1.0).powf(n - 1.0) * (1.0 - lambda1).powf(n - 2.0)))
}

/// Three-solution window for case C3, built from the variational
/// constants `A₁ = sup ∫|v⁺|^{m+1}/(m+1)`, `A₂ = sup ∫|v⁺|^{n+1}/(n+1)`,
/// `A₃ = sup ∫|v⁺|^{m+2}/(m+2)` over the unit Dirichlet-gradient sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Case3Window {
    /// λ̲ — sphere lower-bound threshold (negative).
    pub lambda_lower: f64,
    /// λ̄ — exterior negative-energy threshold (negative).
    pub lambda_upper: f64,
    /// Sphere radius `s_λ` evaluated at `λ = λ̲`.
    pub s_at_lower: f64,
    /// Exterior scale `ŝ_λ` evaluated at `λ = λ̄`.
    pub s_hat_at_upper: f64,
    /// Whether `λ̲ < λ̄` and `s_λ̲ < ŝ_λ̄` (the small-domain condition).
    pub ordered: bool,
}

/// Computes the window `(λ̲, λ̄)` in which the energy has a
/// min-in-ball / mountain-pass / exterior-min triple:
///
/// ```text
/// λ̲ = - (n-1)^{(n-1)/(1-m)} (1-m)
///       / (2^{(n-m)/(1-m)} (n-m)^{(n-m)/(1-m)} A1^{(n-1)/(1-m)} A2),
/// λ̄ = - m A3^{(n-1)/m}
///       / (2^{(m+1-n)/m} (n-1)^{(n-1)/m} (m+1-n)^{(m+1-n)/m} A2),
/// s_λ = ((1-m) / (-2 λ (n-m) A2))^{1/(n-1)},
/// ŝ_λ = (-λ (n-1) A2 / (m A3))^{1/(m+1-n)}.
/// ```
pub fn case3_window(
    m: f64,
    n: f64,
    a1: f64,
    a2: f64,
    a3: f64,
) -> Result<Case3Window, ModelError> {
    if !(0.0 < m && m < 1.0 && 1.0 < n && n < m + 1.0) {
        return Err(ModelError::Regime(format!("need 0 < m < 1 < n < m+1, got m={m}, n={n}")));
    }
    if !(a1 > 0.0 && a2 > 0.0 && a3 > 0.0) {
        return Err(ModelError::Regime("constants A1, A2, A3 must be positive".into()));
    }
    let lambda_lower = -((n - 1.0).powf((n - 1.0) / (1.0 - m)) * (1.0 - m))
        / (2f64.powf((n - m) / (1.0 - m))
            * (n - m).powf((n - m) / (1.0 - m))
            * a1.powf((n - 1.0) / (1.0 - m))
            * a2);
    let lambda_upper = -(m * a3.powf((n - 1.0) / m))
        / (2f64.powf((m + 1.0 - n) / m)
            * (n - 1.0).powf((n - 1.0) / m)
            * (m + 1.0 - n).powf((m + 1.0 - n) / m)
            * a2);
    let s_at_lower =
        ((1.0 - m) / (-2.0 * lambda_lower * (n - m) * a2)).powf(1.0 / (n - 1.0));
    let s_hat_at_upper =
        (-lambda_upper * (n - 1.0) * a2 / (m * a3)).powf(1.0 / (m + 1.0 - n));
    let ordered = lambda_lower < lambda_upper && s_at_lower < s_hat_at_upper;
    Ok(Case3Window { lambda_lower, lambda_upper, s_at_lower, s_hat_at_upper, ordered })
}

/// Volume of the unit ball in `R^N` (2, π, 4π/3, ... by the standard
/// two-step recursion).
pub fn unit_ball_volume(dim: u32) -> f64 {
    match dim {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(dim - 2) * 2.0 * std::f64::consts::PI / dim as f64,
    }
}

/// Domain-size bound `C` under which the case C3 window is ordered:
///
/// ```text
/// C = C̃^{N m (1-m)/2} |B₁| (A1*)^{-N m/2} (A3*)^{-N (1-m)/2},
/// C̃ = ((n-1)/2)^{1/(m(1-m))} ((1-m)/m)^{1/(n-1)}
///       (m+1-n)^{(m+1-n)/(m(n-1))} / (n-m)^{(n-m)/((1-m)(n-1))},
/// ```
///
/// with `A1*`, `A3*` the unit-ball values of the variational constants.
pub fn omega_size_bound(
    m: f64,
    n: f64,
    dim: u32,
    a1_star: f64,
    a3_star: f64,
) -> Result<f64, ModelError> {
    if !(0.0 < m && m < 1.0 && 1.0 < n && n < m + 1.0) {
        return Err(ModelError::Regime(format!("need 0 < m < 1 < n < m+1, got m={m}, n={n}")));
    }
    if !(a1_star > 0.0 && a3_star > 0.0) {
        return Err(ModelError::Regime("unit-ball constants must be positive".into()));
    }
    let c_tilde = c_tilde(m, n);
    let nn = dim as f64;
    Ok(c_tilde.powf(nn * m * (1.0 - m) / 2.0)
        * unit_ball_volume(dim)
        * a1_star.powf(-nn * m / 2.0)
        * a3_star.powf(-nn * (1.0 - m) / 2.0))
}

/// The exponent-only constant `C̃` in the domain-size bound.
pub fn c_tilde(m: f64, n: f64) -> f64 {
    ((n - 1.0) / 2.0).powf(1.0 / (m * (1.0 - m)))
        * ((1.0 - m) / m).powf(1.0 / (n - 1.0))
        * (m + 1.0 - n).powf((m + 1.0 - n) / (m * (n - 1.0)))
        / (n - m).powf((n - m) / ((1.0 - m) * (n - 1.0)))
}

/// Rescaling of the `n = m+1`, `λ < -1` problem to the convex-concave
/// normal form `-Δv = μ v^m + v^{m+1}` via `v = (-λ-1)^{1/m} u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbcRescale {
    /// Coefficient `μ = (-λ-1)^{(1-m)/m}` of the concave term.
    pub mu: f64,
    /// Amplitude factor `(-λ-1)^{1/m}` mapping `u` to `v`.
    pub amplitude_scale: f64,
}

pub fn abc_rescale(p: &ProblemParams) -> Result<AbcRescale, ModelError> {
    if p.n != p.m + 1.0 {
        return Err(ModelError::Regime(format!("need n = m+1, got m={}, n={}", p.m, p.n)));
    }
    if !(p.lambda < -1.0) {
        return Err(ModelError::Regime(format!(
            "need lambda < -1 (at lambda = -1 the problem degenerates to the pure concave equation), got {}",
            p.lambda
        )));
    }
    let t = -p.lambda - 1.0;
    Ok(AbcRescale { mu: t.powf((1.0 - p.m) / p.m), amplitude_scale: t.powf(1.0 / p.m) })
}

/// Sufficient certificate for uniqueness in case C3 at `λ < 0`: checks
/// `1 - m + m s* > |λ| (n-1) (s*)^{n-m}` at the tangency point
/// `s* = (|λ|(n-1)(n-m)/m)^{1/(1+m-n)}`, which forces the Brezis-Oswald
/// inequality for every `s > 0`.
pub fn case3_unique_certificate(m: f64, n: f64, lambda: f64) -> Result<bool, ModelError> {
    if !(0.0 < m && m < 1.0 && 1.0 < n && n < m + 1.0) {
        return Err(ModelError::Regime(format!("need 0 < m < 1 < n < m+1, got m={m}, n={n}")));
    }
    if !(lambda < 0.0) {
        return Err(ModelError::Regime(format!("certificate targets lambda < 0, got {lambda}")));
    }
    let al = lambda.abs();
    let s_star = (al * (n - 1.0) * (n - m) / m).powf(1.0 / (1.0 + m - n));
    Ok(1.0 - m + m * s_star > al * (n - 1.0) * s_star.powf(n - m))
}

/// What the decision table can assert about the solution set at a given
/// parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    None,
    AtLeastOne,
    UniquePositive,
    AtLeastTwo,
    AtLeastThree,
    InfinitelyMany,
    Unknown,
}

impl std::fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VerdictKind::None => "none",
            VerdictKind::AtLeastOne => "at_least_one",
            VerdictKind::UniquePositive => "unique_positive",
            VerdictKind::AtLeastTwo => "at_least_two",
            VerdictKind::AtLeastThree => "at_least_three",
            VerdictKind::InfinitelyMany => "infinitely_many",
            VerdictKind::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// A verdict plus the catalog ids of the results backing it (see
/// [`crate::verify::results_catalog`] for the id → claim mapping).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceVerdict {
    pub kind: VerdictKind,
    pub citations: Vec<&'static str>,
}

impl ExistenceVerdict {
    fn new(kind: VerdictKind, citations: &[&'static str]) -> Self {
        Self { kind, citations: citations.to_vec() }
    }
    fn unknown() -> Self {
        Self { kind: VerdictKind::Unknown, citations: Vec::new() }
    }
}

/// Strongest verdict the decision table supports at `(m, n, λ, λ₁)`.
///
/// The table never extrapolates beyond stated hypotheses: where only a
/// fold value `λ*` with a one-sided bound is known, the gap between the
/// bound and the unknown `λ*` reports `Unknown`. `lambda1` is the
/// principal Dirichlet eigenvalue of the intended domain.
pub fn existence_verdict(p: &ProblemParams, lambda1: f64) -> ExistenceVerdict {
    use VerdictKind::*;
    let (m, n, l) = (p.m, p.n, p.lambda);
    let tag = classify(m, n).expect("ProblemParams enforces admissible exponents");
    match tag.case {
        Case::C1 => {
            if l <= 0.0 {
                ExistenceVerdict::new(UniquePositive, &["exist-sub-super", "uniq-fs-decreasing", "case1-solvability"])
            } else if l > threshold_fold_case1(m, n).expect("C1 regime") {
                ExistenceVerdict::new(None, &["case1-fold-bound"])
            } else {
                // Existence holds below the (uncomputable) fold λ*>0; the
                // gap (0, bound] is left open, as is positivity there.
                ExistenceVerdict::unknown()
            }
        }
        Case::C2 => {
            if tag.subcase == Some(Subcase::NEqualsM) {
                if l < 1.0 {
                    ExistenceVerdict::new(UniquePositive, &["case2-iff-threshold", "exist-sub-super", "uniq-fs-decreasing"])
                } else {
                    ExistenceVerdict::new(None, &["case2-iff-threshold"])
                }
            } else {
                ExistenceVerdict::new(UniquePositive, &["case2-all-lambda", "exist-sub-super", "uniq-fs-decreasing"])
            }
        }
        Case::C3 => {
            if l >= 0.0 {
                ExistenceVerdict::new(UniquePositive, &["exist-sub-super", "uniq-fs-decreasing"])
            } else if case3_unique_certificate(m, n, l).expect("C3 regime") {
                ExistenceVerdict::new(UniquePositive, &["exist-sub-super", "case3-uniq-certificate"])
            } else {
                // Existence for every λ, multiplicity only inside the
                // A-constant window (domain-dependent).
                ExistenceVerdict::new(AtLeastOne, &["exist-sub-super"])
            }
        }
        Case::C4 => {
            if tag.subcase == Some(Subcase::NEqualsMPlusOne) {
                if l > -1.0 {
                    ExistenceVerdict::new(UniquePositive, &["exist-sub-super", "uniq-fs-decreasing"])
                } else if l == -1.0 {
                    ExistenceVerdict::new(UniquePositive, &["case4-pure-concave"])
                } else {
                    let bound = threshold_case4_nonexistence(m, lambda1)
                        .expect("C4 regime");
                    if l < bound {
                        ExistenceVerdict::new(None, &["case4-nonexistence-bound"])
                    } else {
                        // Convex-concave window (λ*, -1) with λ* not
                        // computable in closed form.
                        ExistenceVerdict::unknown()
                    }
                }
            } else if l >= 0.0 {
                ExistenceVerdict::new(UniquePositive, &["exist-sub-super", "uniq-fs-decreasing"])
            } else {
                // Sublinear-superlinear window (λ*, 0), λ* unknown.
                ExistenceVerdict::unknown()
            }
        }
        Case::C5 => {
            if tag.subcase == Some(Subcase::NEqualsM) {
                // m = n = 1: logistic with rate 1 - λ.
                if l < 1.0 - lambda1 {
                    ExistenceVerdict::new(UniquePositive, &["logistic-reduction"])
                } else {
                    ExistenceVerdict::new(None, &["logistic-reduction"])
                }
            } else if l < 0.0 {
                ExistenceVerdict::new(UniquePositive, &["exist-sub-super", "uniq-fs-decreasing", "case5-signed-lambda"])
            } else if l == 0.0 {
                if lambda1 < 1.0 {
                    ExistenceVerdict::new(UniquePositive, &["case5-signed-lambda"])
                } else {
                    ExistenceVerdict::new(None, &["case5-signed-lambda"])
                }
            } else if lambda1 >= 1.0 {
                ExistenceVerdict::new(None, &["exist-sub-super-linear"])
            } else {
                match threshold_case5(n, lambda1) {
                    Ok(bound) if l > bound => ExistenceVerdict::new(None, &["case5-fold-bound"]),
                    // Two nonnegative solutions are known only for small
                    // λ > 0, without an explicit smallness threshold.
                    _ => ExistenceVerdict::unknown(),
                }
            }
        }
        Case::C6 => {
            if tag.subcase == Some(Subcase::NEqualsTwo) {
                // -Δu = u - (λ+1) u^2 trichotomy.
                if l > -1.0 {
                    if lambda1 < 1.0 {
                        ExistenceVerdict::new(UniquePositive, &["case6-n2-trichotomy"])
                    } else {
                        ExistenceVerdict::new(None, &["case6-n2-trichotomy"])
                    }
                } else if l == -1.0 {
                    if lambda1 == 1.0 {
                        ExistenceVerdict::new(InfinitelyMany, &["case6-n2-trichotomy"])
                    } else {
                        ExistenceVerdict::new(None, &["case6-n2-trichotomy"])
                    }
                } else if p.sobolev_critical() > 3.0 {
                    if lambda1 > 1.0 {
                        ExistenceVerdict::new(AtLeastOne, &["case6-n2-trichotomy"])
                    } else {
                        ExistenceVerdict::new(None, &["case6-n2-trichotomy"])
                    }
                } else {
                    ExistenceVerdict::unknown()
                }
            } else if lambda1 < 1.0 {
                if l >= 0.0 {
                    ExistenceVerdict::new(UniquePositive, &["exist-sub-super-linear", "uniq-fs-decreasing"])
                } else {
                    ExistenceVerdict::new(AtLeastOne, &["exist-sub-super-linear", "case6-all-lambda"])
                }
            } else if l >= 0.0 {
                ExistenceVerdict::new(None, &["exist-sub-super-linear"])
            } else if lambda1 == 1.0 {
                ExistenceVerdict::new(AtLeastOne, &["exist-sub-super-linear"])
            } else {
                // λ₁ > 1, λ < 0: solutions only below an uncomputable
                // fold; the table can rule out λ above the bound.
                match threshold_case6(n, lambda1) {
                    Ok(bound) if l > bound => ExistenceVerdict::new(None, &["case6-fold-bound"]),
                    _ => ExistenceVerdict::unknown(),
                }
            }
        }
        Case::C7 => {
            if lambda1 < 1.0 {
                if l >= 0.0 {
                    ExistenceVerdict::new(UniquePositive, &["case7-nonneg-lambda", "uniq-fs-decreasing"])
                } else {
                    match threshold_case7(n, lambda1) {
                        Ok(bound) if l < bound => ExistenceVerdict::new(None, &["case7-lower-bound"]),
                        _ => ExistenceVerdict::unknown(),
                    }
                }
            } else if n < p.sobolev_critical() - 1.0 {
                if l < 0.0 {
                    ExistenceVerdict::new(AtLeastOne, &["case7-lambda1-large"])
                } else {
                    ExistenceVerdict::new(None, &["case7-lambda1-large"])
                }
            } else {
                ExistenceVerdict::unknown()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(m: f64, n: f64, lambda: f64) -> ProblemParams {
        ProblemParams::new(m, n, lambda, 1).unwrap()
    }

    #[test]
    fn params_reject_out_of_range() {
        assert!(ProblemParams::new(0.0, 1.0, 0.0, 1).is_err());
        assert!(ProblemParams::new(1.5, 1.0, 0.0, 1).is_err());
        assert!(ProblemParams::new(0.5, 0.0, 0.0, 1).is_err());
        assert!(ProblemParams::new(0.5, 0.5, f64::NAN, 1).is_err());
        assert!(ProblemParams::new(0.5, 0.5, 0.0, 0).is_err());
    }

    #[test]
    fn sobolev_critical_sentinel() {
        assert_eq!(ProblemParams::new(0.5, 0.5, 0.0, 1).unwrap().sobolev_critical(), f64::INFINITY);
        assert_eq!(ProblemParams::new(0.5, 0.5, 0.0, 2).unwrap().sobolev_critical(), f64::INFINITY);
        assert_eq!(ProblemParams::new(0.5, 0.5, 0.0, 3).unwrap().sobolev_critical(), 6.0);
        assert_eq!(ProblemParams::new(0.5, 0.5, 0.0, 4).unwrap().sobolev_critical(), 4.0);
    }

    #[test]
    fn f_spot_values() {
        assert_eq!(p(0.5, 0.25, 0.0).f(1.0), 0.0);
        assert_eq!(p(0.37, 0.81, -3.2).f(0.0), 0.0);
        assert!((p(0.5, 0.25, 0.5).f(1.0) - (-0.5)).abs() < 1e-15);
    }

    #[test]
    #[should_panic(expected = "s >= 0")]
    fn f_rejects_negative() {
        p(0.5, 0.25, 0.0).f(-1e-9);
    }

    #[test]
    fn f_prime_spot_values() {
        assert!((p(1.0, 2.0, 0.0).f_prime(1.0) - (-1.0)).abs() < 1e-15);
        // logistic linearization: 1 - 2s - λ at any s
        let l0 = 0.37;
        let q = p(1.0, 1.0, l0);
        for s in [0.1, 0.5, 2.0] {
            assert!((q.f_prime(s) - (1.0 - 2.0 * s - l0)).abs() < 1e-14);
        }
        assert!((p(0.5, 0.25, 0.5).f_prime(1.0) - (-1.125)).abs() < 1e-15);
    }

    #[test]
    fn primitive_spot_values() {
        assert_eq!(p(0.5, 0.25, 0.3).f_primitive(0.0), 0.0);
        assert!((p(1.0, 1.0, 0.0).f_primitive(1.0) - (0.5 - 1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn primitive_derivative_matches_f_by_finite_differences() {
        // (F(s+h) - F(s-h)) / 2h -> f(s) with O(h^2) error, 100 draws.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let m = rng.gen_range(0.05..=1.0);
            let n = rng.gen_range(0.05..3.0);
            let lambda = rng.gen_range(-3.0..3.0);
            let s = rng.gen_range(0.05..3.0);
            let q = p(m, n, lambda);
            let h = 1e-5 * s;
            let fd = (q.f_primitive(s + h) - q.f_primitive(s - h)) / (2.0 * h);
            let scale = 1.0 + q.f(s).abs();
            assert!(
                (fd - q.f(s)).abs() < 1e-7 * scale,
                "m={m} n={n} l={lambda} s={s}: fd={fd} vs f={}",
                q.f(s)
            );
        }
    }

    #[test]
    fn classify_spot_values() {
        assert_eq!(classify(0.5, 0.25).unwrap().case, Case::C1);
        assert_eq!(classify(0.5, 1.2).unwrap().case, Case::C3);
        assert_eq!(classify(1.0, 1.5).unwrap().case, Case::C6);
        assert_eq!(classify(1.0, 3.0).unwrap().case, Case::C7);
        assert_eq!(classify(0.5, 0.5).unwrap(), CaseTag { case: Case::C2, subcase: Some(Subcase::NEqualsM) });
        assert_eq!(classify(0.5, 1.5).unwrap(), CaseTag { case: Case::C4, subcase: Some(Subcase::NEqualsMPlusOne) });
        assert_eq!(classify(1.0, 2.0).unwrap(), CaseTag { case: Case::C6, subcase: Some(Subcase::NEqualsTwo) });
        assert_eq!(classify(1.0, 1.0).unwrap(), CaseTag { case: Case::C5, subcase: Some(Subcase::NEqualsM) });
        assert!(classify(1.5, 1.0).is_err());
        assert!(classify(0.5, 0.0).is_err());
    }

    #[test]
    fn classify_is_a_partition() {
        // 10^4 random admissible pairs: exactly one tag's defining
        // inequalities hold, and classify returns it.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for k in 0..10_000 {
            let m: f64 = if k % 7 == 0 { 1.0 } else { rng.gen_range(0.01..1.0) };
            let n: f64 = rng.gen_range(0.01..4.0);
            let tag = classify(m, n).unwrap().case;
            let mut matches = 0;
            if m < 1.0 && n < m {
                matches += 1;
                assert_eq!(tag, Case::C1);
            }
            if m < 1.0 && m <= n && n <= 1.0 {
                matches += 1;
                assert_eq!(tag, Case::C2);
            }
            if m < 1.0 && 1.0 < n && n < m + 1.0 {
                matches += 1;
                assert_eq!(tag, Case::C3);
            }
            if m < 1.0 && m + 1.0 <= n {
                matches += 1;
                assert_eq!(tag, Case::C4);
            }
            if m == 1.0 && n <= 1.0 {
                matches += 1;
                assert_eq!(tag, Case::C5);
            }
            if m == 1.0 && 1.0 < n && n <= 2.0 {
                matches += 1;
                assert_eq!(tag, Case::C6);
            }
            if m == 1.0 && 2.0 < n {
                matches += 1;
                assert_eq!(tag, Case::C7);
            }
            assert_eq!(matches, 1, "m={m}, n={n}");
        }
    }

    proptest! {
        #[test]
        fn classify_partition_property(m in 0.01f64..=1.0, n in 0.01f64..4.0) {
            let tag = classify(m, n).unwrap();
            // re-deriving the case from the tag's inequalities round-trips
            let ok = match tag.case {
                Case::C1 => m < 1.0 && n < m,
                Case::C2 => m < 1.0 && m <= n && n <= 1.0,
                Case::C3 => m < 1.0 && 1.0 < n && n < m + 1.0,
                Case::C4 => m < 1.0 && m + 1.0 <= n,
                Case::C5 => m == 1.0 && n <= 1.0,
                Case::C6 => m == 1.0 && 1.0 < n && n <= 2.0,
                Case::C7 => m == 1.0 && 2.0 < n,
            };
            prop_assert!(ok);
        }

        #[test]
        fn fold_bound_and_lambda_c_below_one(m in 0.02f64..0.999, t in 0.01f64..0.99) {
            let n = m * t; // 0 < n < m
            let fold = threshold_fold_case1(m, n).unwrap();
            let lc = lambda_c(m, n).unwrap();
            prop_assert!(fold > 0.0 && fold < 1.0);
            prop_assert!(lc > 0.0 && lc < 1.0);
        }
    }

    #[test]
    fn uniqueness_certificate_analytic_regimes() {
        // λ = 0 holds for every admissible pair.
        for (m, n) in [(0.5, 0.25), (1.0, 0.5), (0.3, 2.0), (1.0, 3.0)] {
            let c = uniqueness_certificate(&p(m, n, 0.0), 10.0);
            assert!(c.holds, "m={m}, n={n}");
            assert_eq!(c.provenance, CertificateProvenance::Analytic);
        }
        // λ > 0, n > m restricted to the a-priori range.
        let q = p(0.5, 0.75, 0.4);
        let s_max = apriori_bound(&q).unwrap();
        let c = uniqueness_certificate(&q, s_max);
        assert!(c.holds);
        assert_eq!(c.provenance, CertificateProvenance::Analytic);
    }

    #[test]
    fn uniqueness_certificate_numerical_failure() {
        // λ = -5, n = 1.5: λ(n-1)s^n dominates and flips the sign.
        let c = uniqueness_certificate(&p(0.5, 1.5, -5.0), 10.0);
        assert!(!c.holds);
        assert_eq!(c.provenance, CertificateProvenance::Numerical);
    }

    #[test]
    fn apriori_bound_spot_values() {
        assert_eq!(apriori_bound(&p(0.5, 0.25, 0.0)), Some(1.0));
        // λ > 0, n > m: min{1, λ^{1/(m-n)}} = 4^{-4}
        let b = apriori_bound(&p(0.25, 0.5, 4.0)).unwrap();
        assert!((b - 0.00390625).abs() < 1e-15);
        // λ = -0.5, n = m+1 = 1.5: root of 1 - 0.5 M = 0 above 1 is M = 2
        let b = apriori_bound(&p(0.5, 1.5, -0.5)).unwrap();
        assert!((b - 2.0).abs() < 1e-10, "{b}");
        // n = m+1, λ <= -1: no bound
        assert_eq!(apriori_bound(&p(0.5, 1.5, -1.0)), None);
        // n > m+1, λ < 0: no bound
        assert_eq!(apriori_bound(&p(0.5, 2.0, -0.1)), None);
    }

    #[test]
    fn apriori_bound_dominates_f_sign() {
        // For any returned M and any s > M, f(s) < 0.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let m = rng.gen_range(0.05..=1.0);
            let n = rng.gen_range(0.05..2.5);
            let lambda = rng.gen_range(-2.0..3.0);
            let q = p(m, n, lambda);
            if let Some(bound) = apriori_bound(&q) {
                for mult in [1.0 + 1e-6, 1.5, 4.0, 100.0] {
                    let s = bound * mult;
                    assert!(q.f(s) < 0.0, "m={m} n={n} l={lambda} M={bound} s={s} f={}", q.f(s));
                }
            }
        }
    }

    #[test]
    fn lambda_c_and_fold_spot_values() {
        let lc = lambda_c(0.5, 0.25).unwrap();
        assert!((lc - 0.50651).abs() < 1e-4, "{lc}");
        let fold = threshold_fold_case1(0.5, 0.25).unwrap();
        assert!((fold - 0.53494).abs() < 1e-4, "{fold}");
        assert!(lambda_c(0.25, 0.5).is_err()); // ordering violation
        assert!(threshold_fold_case1(0.5, 0.5).is_err());
    }

    #[test]
    fn case1b_admissible_spot_values() {
        // (m=0.5, N=3): bound = -0.0625 -> empty
        assert_eq!(case1b_admissible_n(0.5, 3), None);
        // (m=0.8, N=3): (5*0.6 - 1*0.64)/4 = 0.59 < m
        let upper = case1b_admissible_n(0.8, 3).unwrap();
        assert!((upper - 0.59).abs() < 1e-12);
        // N = 9: empty for every m
        for m in [0.1, 0.3, 0.5, 0.58, 0.7, 0.9, 0.99] {
            assert_eq!(case1b_admissible_n(m, 9), None, "m={m}");
        }
        // N = 8 admits a narrow strip
        assert!(case1b_admissible_n(0.64, 8).is_some());
    }

    #[test]
    fn case4_threshold_spot_values() {
        assert!((threshold_case4_nonexistence(0.5, 1.0).unwrap() + 1.25).abs() < 1e-12);
        assert!((threshold_case4_nonexistence(0.5, 4.0).unwrap() + 5.0).abs() < 1e-12);
        assert!(threshold_case4_nonexistence(1.0, 1.0).is_err());
        // always below -1
        for (m, l1) in [(0.2, 0.5), (0.7, 9.9), (0.99, 2.0)] {
            assert!(threshold_case4_nonexistence(m, l1).unwrap() < -1.0);
        }
    }

    #[test]
    fn case5_threshold_spot_values() {
        let t = threshold_case5(0.5, 0.5).unwrap();
        assert!((t - 0.13608).abs() < 1e-5, "{t}");
        assert!(threshold_case5(0.5, 1.0).is_err());
        // vanishes as λ₁ -> 1⁻, monotone decreasing in λ₁
        let mut prev = f64::INFINITY;
        for k in 1..40 {
            let l1 = k as f64 / 40.0;
            let v = threshold_case5(0.3, l1).unwrap();
            assert!(v < prev, "not decreasing at lambda1={l1}");
            prev = v;
        }
        assert!(threshold_case5(0.3, 0.999999).unwrap() < 1e-5);
    }

    #[test]
    fn case6_threshold_spot_values() {
        assert!((threshold_case6(1.5, 2.0).unwrap() + 2.0).abs() < 1e-12);
        assert!(threshold_case6(1.5, 0.9).is_err());
        assert!(threshold_case6(2.5, 2.0).is_err());
        // λ₁ -> 1+ sends the bound to 0-
        assert!(threshold_case6(1.5, 1.0 + 1e-10).unwrap() > -1e-4);
        for (n, l1) in [(1.1, 1.5), (1.9, 30.0)] {
            assert!(threshold_case6(n, l1).unwrap() < 0.0);
        }
    }

    #[test]
    fn case7_threshold_spot_values() {
        assert!((threshold_case7(3.0, 0.5).unwrap() + 0.5).abs() < 1e-12);
        assert!(threshold_case7(1.5, 0.5).is_err());
        assert!(threshold_case7(3.0, 1.2).is_err());
        // magnitude grows without bound as λ₁ -> 1⁻
        assert!(threshold_case7(3.0, 1.0 - 1e-9).unwrap() < -1e8);
        for (n, l1) in [(2.2, 0.1), (5.0, 0.9)] {
            assert!(threshold_case7(n, l1).unwrap() < 0.0);
        }
    }

    #[test]
    fn case3_window_signs_and_monotonicity() {
        let w = case3_window(0.5, 1.2, 1.0, 1.0, 1.0).unwrap();
        assert!(w.lambda_lower < 0.0 && w.lambda_upper < 0.0);
        // shrinking A1 with A2, A3 fixed raises λ̲ toward 0
        let mut prev = case3_window(0.5, 1.2, 2.0, 1.0, 1.0).unwrap().lambda_lower;
        for a1 in [1.5, 1.0, 0.5, 0.25, 0.1] {
            let cur = case3_window(0.5, 1.2, a1, 1.0, 1.0).unwrap().lambda_lower;
            assert!(cur > prev, "A1={a1}: {cur} !> {prev}");
            prev = cur;
        }
        assert!(case3_window(0.5, 1.6, 1.0, 1.0, 1.0).is_err());
        assert!(case3_window(0.5, 1.2, 0.0, 1.0, 1.0).is_err());
    }

    /// Golden-section maximum of a scalar function on a bracket; used as
    /// the independent oracle for the window formulas.
    fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - phi * (b - a);
        let mut d = a + phi * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..200 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = f(d);
            }
        }
        let s = 0.5 * (a + b);
        (s, f(s))
    }

    #[test]
    fn case3_window_matches_extremization_oracle() {
        // With A1 = A2 = A3 = 1: λ̲ must make max_s g_λ(s) = 0 and λ̄
        // must make min_s f_λ(s) = 0, per the defining analysis.
        let (m, n) = (0.5, 1.2);
        let w = case3_window(m, n, 1.0, 1.0, 1.0).unwrap();
        let g = |l: f64, s: f64| s.powf(1.0 - m) / 2.0 - 1.0 + l * s.powf(n - m);
        let (_, gmax) = golden_max(|s| g(w.lambda_lower, s), 1e-8, 1e8);
        assert!(gmax.abs() < 1e-8, "max g at lambda_lower = {gmax}");
        let f_fn = |l: f64, s: f64| 0.5 + s.powf(m) + l * s.powf(n - 1.0);
        let (_, fmin_neg) = golden_max(|s| -f_fn(w.lambda_upper, s), 1e-8, 1e8);
        assert!(fmin_neg.abs() < 1e-8, "min f at lambda_upper = {}", -fmin_neg);
        // and the displayed extremizer formulas locate those extrema
        let (s_arg, _) = golden_max(|s| g(w.lambda_lower, s), 1e-8, 1e8);
        assert!((s_arg - w.s_at_lower).abs() / w.s_at_lower < 1e-5);
        let (s_hat_arg, _) = golden_max(|s| -f_fn(w.lambda_upper, s), 1e-8, 1e8);
        assert!((s_hat_arg - w.s_hat_at_upper).abs() / w.s_hat_at_upper < 1e-5);
    }

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - std::f64::consts::PI).abs() < 1e-14);
        assert!((unit_ball_volume(3) - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn c_tilde_matches_independent_recomputation() {
        // Duplicate-implementation oracle assembled in log space.
        let (m, n) = (0.5, 1.2);
        let expected = {
            let t1 = (1.0 / (m * (1.0 - m))) * ((n - 1.0) / 2.0f64).ln();
            let t2 = (1.0 / (n - 1.0)) * ((1.0 - m) / m).ln();
            let t3 = ((m + 1.0 - n) / (m * (n - 1.0))) * (m + 1.0 - n).ln();
            let t4 = ((n - m) / ((1.0 - m) * (n - 1.0))) * (n - m).ln();
            (t1 + t2 + t3 - t4).exp()
        };
        let got = c_tilde(m, n);
        assert!((got - expected).abs() / expected < 1e-12, "{got} vs {expected}");
        let c = omega_size_bound(m, n, 1, 0.5, 0.2).unwrap();
        assert!(c > 0.0);
    }

    #[test]
    fn abc_rescale_spot_values() {
        let r = abc_rescale(&p(0.5, 1.5, -2.0)).unwrap();
        assert!((r.mu - 1.0).abs() < 1e-15 && (r.amplitude_scale - 1.0).abs() < 1e-15);
        let r = abc_rescale(&p(0.5, 1.5, -5.0)).unwrap();
        assert!((r.mu - 4.0).abs() < 1e-12 && (r.amplitude_scale - 16.0).abs() < 1e-11);
        assert!(abc_rescale(&p(0.5, 1.5, -1.0)).is_err());
        assert!(abc_rescale(&p(0.5, 1.2, -2.0)).is_err());
    }

    #[test]
    fn verdict_spot_values() {
        // m = n = 0.5, λ = 1.2: no solution
        let v = existence_verdict(&p(0.5, 0.5, 1.2), 9.87);
        assert_eq!(v.kind, VerdictKind::None);
        // logistic on (0, π): λ₁ = 1, λ = 0.5 ≥ 1 - λ₁ = 0
        let v = existence_verdict(&p(1.0, 1.0, 0.5), 1.0);
        assert_eq!(v.kind, VerdictKind::None);
        // m = 0.5, n = 0.75, λ = -2: unique positive
        let v = existence_verdict(&p(0.5, 0.75, -2.0), 9.87);
        assert_eq!(v.kind, VerdictKind::UniquePositive);
        // Case I at λ beyond the fold bound
        let v = existence_verdict(&p(0.5, 0.25, 0.7), 9.87);
        assert_eq!(v.kind, VerdictKind::None);
        // Case I inside the open gap
        let v = existence_verdict(&p(0.5, 0.25, 0.2), 9.87);
        assert_eq!(v.kind, VerdictKind::Unknown);
        // Case C6, n = 2, λ = -1, λ₁ = 1: continuum of eigenfunction multiples
        let v = existence_verdict(&p(1.0, 2.0, -1.0), 1.0);
        assert_eq!(v.kind, VerdictKind::InfinitelyMany);
        // Case C7 with λ₁ ≥ 1: solutions exactly for λ < 0
        let v = existence_verdict(&p(1.0, 3.0, -1.0), 1.1);
        assert_eq!(v.kind, VerdictKind::AtLeastOne);
        let v = existence_verdict(&p(1.0, 3.0, 0.3), 1.1);
        assert_eq!(v.kind, VerdictKind::None);
        // verdicts carry citations when decided
        let v = existence_verdict(&p(0.5, 0.75, -2.0), 9.87);
        assert!(!v.citations.is_empty());
    }

    #[test]
    fn verdict_unknown_is_first_class() {
        // C4, n = m+1, λ in the convex-concave gap
        let l1 = 9.87;
        let bound = threshold_case4_nonexistence(0.5, l1).unwrap();
        let v = existence_verdict(&p(0.5, 1.5, 0.5 * (bound + -1.0)), l1);
        assert_eq!(v.kind, VerdictKind::Unknown);
        assert!(v.citations.is_empty());
    }
}
