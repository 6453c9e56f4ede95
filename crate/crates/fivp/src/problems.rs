//! Declarative constructors for the problem families the solver consumes.
//!
//! A [`ProblemSpec`] describes one initial-value problem in its integral
//! form `x(t) = x₀ + κ ∫₀ᵗ f(s, x(s)) (t − s)^(α−1) ds`, where the
//! [`Convention`] tag fixes `κ`: `Main` means `κ = 1`, `IntegrIvp` means
//! `κ = 1/Γ(α)` (the form produced by integrating the differential
//! operator directly). Constructors default to `Main`; the linear
//! relaxation family uses `IntegrIvp` so its Mittag–Leffler oracle is
//! exact without rescaling the coefficient.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asymptotics::mittag_leffler;
use crate::bihari::GSpec;
use crate::param_plan::{p2_bounds, validate_orders, PlanError, Regime};

#[derive(Debug, Error, PartialEq)]
pub enum ProblemError {
    #[error("tau0 must be positive, got {0}")]
    NonpositiveTau(f64),
    #[error("x0 must be positive for power-nonlinearity families, got {0}")]
    NonpositiveX0(f64),
    #[error("mu must lie in (0, lambda), got mu={mu}, lambda={lambda}")]
    MuOutOfRange { mu: f64, lambda: f64 },
    #[error("epsilon too large: need (1+epsilon)/p2 < (1-lambda)*alpha, got (1+{epsilon})/{p2} vs {limit}")]
    EpsilonTooLarge { epsilon: f64, p2: f64, limit: f64 },
    #[error("P norm bound {bound} is below an observed |P| sample {observed}")]
    PNormTooSmall { bound: f64, observed: f64 },
    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaOutOfRange(f64),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("invalid coefficient: {0}")]
    InvalidCoefficient(String),
}

/// A continuous, non-negative coefficient on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoefficientSpec {
    /// `c` everywhere.
    Constant { value: f64 },
    /// `t^{-θ}` for `t ≥ 1`, continued by the constant 1 on `[0, 1)`
    /// (continuous since `1^{-θ} = 1`).
    PowerDecay { theta: f64 },
    /// `(t+1)^{-αλ} · h(t)` with a nested coefficient `h`.
    Envelope {
        alpha: f64,
        lambda: f64,
        h: Box<CoefficientSpec>,
    },
    /// Sampled values, monotone piecewise-linear in between and clamped to
    /// the end values outside the sampled range (preserves sign and
    /// continuity).
    Table { t: Vec<f64>, v: Vec<f64> },
}

impl CoefficientSpec {
    pub fn constant(value: f64) -> Result<Self, ProblemError> {
        if !(value.is_finite() && value >= 0.0) {
            return Err(ProblemError::InvalidCoefficient(format!(
                "constant coefficient must be finite and non-negative, got {value}"
            )));
        }
        Ok(CoefficientSpec::Constant { value })
    }

    pub fn power_decay(theta: f64) -> Result<Self, ProblemError> {
        if !(theta.is_finite() && theta >= 0.0) {
            return Err(ProblemError::InvalidCoefficient(format!(
                "decay exponent must be finite and non-negative, got {theta}"
            )));
        }
        Ok(CoefficientSpec::PowerDecay { theta })
    }

    pub fn envelope(alpha: f64, lambda: f64, h: CoefficientSpec) -> Self {
        CoefficientSpec::Envelope { alpha, lambda, h: Box::new(h) }
    }

    pub fn table(t: Vec<f64>, v: Vec<f64>) -> Result<Self, ProblemError> {
        let ok = t.len() == v.len()
            && t.len() >= 2
            && t[0] >= 0.0
            && t.windows(2).all(|w| w[1] > w[0])
            && v.iter().all(|&x| x.is_finite() && x >= 0.0);
        if !ok {
            return Err(ProblemError::InvalidCoefficient(
                "table needs increasing t and finite non-negative values".into(),
            ));
        }
        Ok(CoefficientSpec::Table { t, v })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            CoefficientSpec::Constant { value } => *value,
            CoefficientSpec::PowerDecay { theta } => {
                if t >= 1.0 {
                    t.powf(-theta)
                } else {
                    1.0
                }
            }
            CoefficientSpec::Envelope { alpha, lambda, h } => {
                (t + 1.0).powf(-alpha * lambda) * h.eval(t)
            }
            CoefficientSpec::Table { t: ts, v } => {
                if t <= ts[0] {
                    return v[0];
                }
                if t >= *ts.last().unwrap() {
                    return *v.last().unwrap();
                }
                let i = ts.partition_point(|&s| s <= t);
                let (t0, t1, v0, v1) = (ts[i - 1], ts[i], v[i - 1], v[i]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Largest absolute value this coefficient can take, when the family
    /// makes that cheap to bound.
    fn sup_abs(&self) -> Option<f64> {
        match self {
            CoefficientSpec::Constant { value } => Some(value.abs()),
            CoefficientSpec::PowerDecay { .. } => Some(1.0),
            CoefficientSpec::Envelope { h, .. } => h.sup_abs(),
            CoefficientSpec::Table { v, .. } => {
                Some(v.iter().cloned().fold(0.0f64, f64::max))
            }
        }
    }
}

/// Which integral-equation normalization `f` is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `x = x₀ + ∫ f (t−s)^{α−1}` — no Gamma factor.
    Main,
    /// `x = x₀ + Γ(α)^{-1} ∫ f (t−s)^{α−1}`.
    IntegrIvp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `f(t, x) = f₀`; exact solution `x₀ + (f₀/α) t^α` in `Main`.
    Constant { f0: f64 },
    /// `f(t, x) = −τ₀^{-α} x` in `IntegrIvp`; exact solution
    /// `x₀ E_α(−(t/τ₀)^α)`.
    LinearRelaxation { tau0: f64 },
    /// `f(t, x) = H(t) x^λ` with `H(t) = (t+1)^{-αλ} h(t)`.
    SublinearCooling { lambda: f64, h: CoefficientSpec },
    /// `f(t, x) = H(t) x^λ (1 + P(t) x^{-μ})`, `μ ∈ (0, λ)`, `P` bounded.
    Logistic {
        lambda: f64,
        mu: f64,
        h: CoefficientSpec,
        p: CoefficientSpec,
        p_norm: f64,
    },
    /// `f(t, x) = H(t) x^λ` with the slowly-decaying coefficient
    /// `H(t) = (t+1)^{-αλ} t^{-(1+ε)/p₂}` for `t ≥ 1`, continued by
    /// `(t+1)^{-αλ}` on `[0, 1)` (the continuation `h ≡ 1` keeps sign and
    /// continuity; `h(1) = 1` on both branches).
    Sharpness { lambda: f64, p2: f64, epsilon: f64 },
}

/// Declarative description of one initial-value problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub x0: f64,
    pub alpha: f64,
    pub convention: Convention,
    #[serde(flatten)]
    pub family: Family,
}

impl ProblemSpec {
    /// Constant forcing `f ≡ f₀`.
    pub fn constant(x0: f64, f0: f64, alpha: f64) -> Result<Self, ProblemError> {
        check_alpha(alpha)?;
        Ok(ProblemSpec {
            x0,
            alpha,
            convention: Convention::Main,
            family: Family::Constant { f0 },
        })
    }

    /// Linear fractional relaxation `τ₀^{-α} D^α[Φ] + Φ − Φ(0) = 0`, i.e.
    /// `f(t, x) = −τ₀^{-α} x` in the `IntegrIvp` convention, with the
    /// Mittag–Leffler solution `Φ(0) E_α(−(t/τ₀)^α)` as oracle.
    pub fn linear_relaxation(phi0: f64, tau0: f64, alpha: f64) -> Result<Self, ProblemError> {
        check_alpha(alpha)?;
        if !(tau0 > 0.0) {
            return Err(ProblemError::NonpositiveTau(tau0));
        }
        Ok(ProblemSpec {
            x0: phi0,
            alpha,
            convention: Convention::IntegrIvp,
            family: Family::LinearRelaxation { tau0 },
        })
    }

    /// Sublinear cooling `f(t, x) = (t+1)^{-αλ} h(t) x^λ`.
    pub fn sublinear_cooling(
        x0: f64,
        alpha: f64,
        lambda: f64,
        h: CoefficientSpec,
    ) -> Result<Self, ProblemError> {
        validate_orders(alpha, lambda, Regime::Loose)?;
        if !(x0 > 0.0) {
            return Err(ProblemError::NonpositiveX0(x0));
        }
        Ok(ProblemSpec {
            x0,
            alpha,
            convention: Convention::Main,
            family: Family::SublinearCooling { lambda, h },
        })
    }

    /// Generalized logistic `f(t, x) = H(t) x^λ (1 + P(t) x^{-μ})`.
    ///
    /// `p_norm` must dominate `sup |P|`; the attached envelope
    /// `g(u) = 2(1 + ‖P‖∞)(1 + u)^λ` has `g(0) ≠ 0`, so only the
    /// first-step `o(t^α)` estimate applies to this family
    /// (see [`ProblemSpec::first_step_only`]).
    pub fn logistic(
        x0: f64,
        alpha: f64,
        lambda: f64,
        mu: f64,
        h: CoefficientSpec,
        p: CoefficientSpec,
        p_norm: f64,
    ) -> Result<Self, ProblemError> {
        validate_orders(alpha, lambda, Regime::Loose)?;
        if !(x0 > 0.0) {
            return Err(ProblemError::NonpositiveX0(x0));
        }
        if !(mu > 0.0 && mu < lambda) {
            return Err(ProblemError::MuOutOfRange { mu, lambda });
        }
        if let Some(sup) = p.sup_abs() {
            if p_norm < sup {
                return Err(ProblemError::PNormTooSmall { bound: p_norm, observed: sup });
            }
        }
        Ok(ProblemSpec {
            x0,
            alpha,
            convention: Convention::Main,
            family: Family::Logistic { lambda, mu, h, p, p_norm },
        })
    }

    /// The sharpness family: `H(t) = (t+1)^{-αλ} t^{-(1+ε)/p₂}` for
    /// `t ≥ 1`. Requires the strict regime (`3α/2 < 1`, `α > 2λ`), `p₂` in
    /// its admissible interval, and `ε` small enough that
    /// `(1−λ)α > (1+ε)/p₂`.
    pub fn sharpness(
        x0: f64,
        alpha: f64,
        lambda: f64,
        p2: f64,
        epsilon: f64,
    ) -> Result<Self, ProblemError> {
        let orders = validate_orders(alpha, lambda, Regime::Strict)?;
        let (lo, hi) = p2_bounds(&orders);
        if !(p2 > lo && p2 < hi) {
            return Err(PlanError::P2OutOfRange { p2, lo, hi }.into());
        }
        if !(x0 > 0.0) {
            return Err(ProblemError::NonpositiveX0(x0));
        }
        let limit = (1.0 - lambda) * alpha;
        if !(epsilon > 0.0) || (1.0 + epsilon) / p2 >= limit {
            return Err(ProblemError::EpsilonTooLarge { epsilon, p2, limit });
        }
        Ok(ProblemSpec {
            x0,
            alpha,
            convention: Convention::Main,
            family: Family::Sharpness { lambda, p2, epsilon },
        })
    }

    /// Switch the convention tag. The solver multiplies `f` by `Γ(α)^{-1}`
    /// for `IntegrIvp`, so the same `f` solves the differential form.
    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// The nonlinearity `f(t, x)` in this problem's own convention.
    pub fn eval_f(&self, t: f64, x: f64) -> f64 {
        match &self.family {
            Family::Constant { f0 } => *f0,
            Family::LinearRelaxation { tau0 } => -tau0.powf(-self.alpha) * x,
            Family::SublinearCooling { lambda, h } => {
                self.envelope_h(h, t) * power_sublinear(x, *lambda)
            }
            Family::Logistic { lambda, mu, h, p, .. } => {
                let xs = x.max(f64::MIN_POSITIVE);
                self.envelope_h(h, t) * xs.powf(*lambda) * (1.0 + p.eval(t) * xs.powf(-mu))
            }
            Family::Sharpness { lambda, p2, epsilon } => {
                let h = if t >= 1.0 { t.powf(-(1.0 + epsilon) / p2) } else { 1.0 };
                (t + 1.0).powf(-self.alpha * lambda) * h * power_sublinear(x, *lambda)
            }
        }
    }

    fn envelope_h(&self, h: &CoefficientSpec, t: f64) -> f64 {
        let lambda = self.lambda().unwrap_or(0.0);
        (t + 1.0).powf(-self.alpha * lambda) * h.eval(t)
    }

    /// Full coefficient `H(t)` multiplying `x^λ`, for the power families.
    pub fn coefficient_h(&self, t: f64) -> Option<f64> {
        match &self.family {
            Family::SublinearCooling { h, .. } => Some(self.envelope_h(h, t)),
            Family::Logistic { h, .. } => Some(self.envelope_h(h, t)),
            Family::Sharpness { lambda, p2, epsilon } => {
                let h = if t >= 1.0 { t.powf(-(1.0 + epsilon) / p2) } else { 1.0 };
                Some((t + 1.0).powf(-self.alpha * lambda) * h)
            }
            _ => None,
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match &self.family {
            Family::SublinearCooling { lambda, .. }
            | Family::Logistic { lambda, .. }
            | Family::Sharpness { lambda, .. } => Some(*lambda),
            _ => None,
        }
    }

    /// Exact solution when the family has one in closed or series form.
    pub fn exact_solution(&self, t: f64) -> Option<f64> {
        match &self.family {
            Family::Constant { f0 } => {
                let kappa = match self.convention {
                    Convention::Main => 1.0,
                    Convention::IntegrIvp => 1.0 / libm::tgamma(self.alpha),
                };
                Some(self.x0 + kappa * f0 / self.alpha * t.powf(self.alpha))
            }
            Family::LinearRelaxation { tau0 } => {
                let z = -(t / tau0).powf(self.alpha);
                mittag_leffler(self.alpha, z).ok().map(|e| self.x0 * e)
            }
            _ => None,
        }
    }

    /// The comparison function `g` under which
    /// `|f(t,x)| ≤ h(t) g(|x|/(t+1)^α)`: `g(u) = u^λ` for the power
    /// families, `g(u) = 2(1+‖P‖∞)(1+u)^λ` for the logistic family.
    pub fn envelope_g(&self) -> Option<GSpec> {
        match &self.family {
            Family::SublinearCooling { lambda, .. } | Family::Sharpness { lambda, .. } => {
                GSpec::power(*lambda).ok()
            }
            Family::Logistic { lambda, p_norm, .. } => {
                GSpec::power_shifted(2.0 * (1.0 + p_norm), *lambda).ok()
            }
            _ => None,
        }
    }

    /// True when the attached envelope has `g(0) ≠ 0`, so only the
    /// first-step `o(t^α)` estimate (not the full `o(t^{aα})` one) is
    /// available for this family.
    pub fn first_step_only(&self) -> bool {
        matches!(self.family, Family::Logistic { .. })
    }

    /// True when the problem data are non-negative with `x₀ > 0`, which is
    /// what arms the `x(t) ≥ x₀` positivity assertion in the solver.
    pub fn nonnegative_data(&self) -> bool {
        match &self.family {
            Family::Constant { f0 } => *f0 >= 0.0 && self.x0 > 0.0,
            Family::LinearRelaxation { .. } => false,
            Family::SublinearCooling { .. } | Family::Sharpness { .. } => self.x0 > 0.0,
            Family::Logistic { p, .. } => {
                self.x0 > 0.0 && p.sup_abs().is_some() && coefficient_nonneg(p)
            }
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn check_alpha(alpha: f64) -> Result<(), ProblemError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(ProblemError::AlphaOutOfRange(alpha))
    }
}

/// `x^λ` guarded against transient non-positive iterates inside the
/// implicit step solve (the converged values satisfy `x ≥ x₀ > 0`).
fn power_sublinear(x: f64, lambda: f64) -> f64 {
    x.max(f64::MIN_POSITIVE).powf(lambda)
}

fn coefficient_nonneg(c: &CoefficientSpec) -> bool {
    match c {
        CoefficientSpec::Constant { value } => *value >= 0.0,
        CoefficientSpec::PowerDecay { .. } => true,
        CoefficientSpec::Envelope { h, .. } => coefficient_nonneg(h),
        CoefficientSpec::Table { v, .. } => v.iter().all(|&x| x >= 0.0),
    }
}
