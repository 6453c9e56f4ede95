//! Selection and validation of the interpolation exponent tuple.
//!
//! The growth analysis hinges on a Hölder triple `(p₁, p₂, p₃)` with
//! `1/p₁ + 1/p₂ + 1/p₃ = 1` together with auxiliary exponents `ζ` and
//! `a = (1−λ)/(1+ζ)`. The admissible region is a chain of open
//! inequalities; this module implements the selection algorithm step by
//! step and re-checks every inequality after construction.
//!
//! All strict inequalities are tested with a relative slack of `1e-12`
//! ("strictly above tolerance", not "≥ 0"): the admissible intervals are
//! open and carry no width guarantee near their boundary, so exact-boundary
//! inputs are rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative slack used when asserting strict inequalities on exponents.
pub const INEQ_SLACK: f64 = 1e-12;

/// `a < b` with relative slack: the gap must clear the rounding noise of
/// the operands.
fn strictly_less(a: f64, b: f64) -> bool {
    b - a > INEQ_SLACK * a.abs().max(b.abs()).max(1.0)
}

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("order violation: need 1 > alpha > lambda > 0, got alpha={alpha}, lambda={lambda}")]
    OrderViolation { alpha: f64, lambda: f64 },
    #[error(
        "strict regime violation: need 3*alpha/2 < 1 and alpha > 2*lambda, got alpha={alpha}, lambda={lambda}"
    )]
    StrictRegimeViolation { alpha: f64, lambda: f64 },
    #[error("p2={p2} outside the admissible interval ({lo}, {hi})")]
    P2OutOfRange { p2: f64, lo: f64, hi: f64 },
    #[error("zeta={zeta} outside the admissible interval (0, {bound})")]
    ZetaOutOfRange { zeta: f64, bound: f64 },
    #[error("plan inconsistent after construction ({detail}); this indicates a bug, not bad input")]
    PlanInconsistent { detail: String },
    #[error("empty sample grid")]
    EmptyGrid,
    #[error("sample grid must be non-decreasing and start at 0")]
    InvalidGrid,
}

/// Whether the stronger exponent restrictions of the sharpness analysis
/// (`3α/2 < 1` and `α > 2λ`) are enforced on top of `1 > α > λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Loose,
    Strict,
}

/// A validated pair of orders `1 > α > λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderPair {
    alpha: f64,
    lambda: f64,
}

impl OrderPair {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Validate `1 > α > λ > 0`, and under [`Regime::Strict`] additionally
/// `3α/2 < 1` and `α > 2λ`.
pub fn validate_orders(alpha: f64, lambda: f64, regime: Regime) -> Result<OrderPair, PlanError> {
    let ordered = alpha.is_finite()
        && lambda.is_finite()
        && strictly_less(alpha, 1.0)
        && strictly_less(lambda, alpha)
        && strictly_less(0.0, lambda);
    if !ordered {
        return Err(PlanError::OrderViolation { alpha, lambda });
    }
    if regime == Regime::Strict
        && !(strictly_less(1.5 * alpha, 1.0) && strictly_less(2.0 * lambda, alpha))
    {
        return Err(PlanError::StrictRegimeViolation { alpha, lambda });
    }
    Ok(OrderPair { alpha, lambda })
}

/// Admissible open interval for `p₂` itself:
/// `1/p₂ ∈ (λα, λα + (1−λ)α²/(1+α))`, returned as `(lo, hi)` with
/// `lo = [λα + (1−λ)α²/(1+α)]⁻¹` and `hi = (λα)⁻¹`.
pub fn p2_bounds(orders: &OrderPair) -> (f64, f64) {
    let (alpha, lambda) = (orders.alpha, orders.lambda);
    let inv_hi = lambda * alpha + (1.0 - lambda) * alpha * alpha / (1.0 + alpha);
    let inv_lo = lambda * alpha;
    (1.0 / inv_hi, 1.0 / inv_lo)
}

/// Upper bound for `ζ`: `min{(α−λ)/(1−α), (1−λαp₂)/(αp₂−1)}`.
/// The caller picks `ζ` strictly below the returned value.
pub fn zeta_bound(orders: &OrderPair, p2: f64) -> Result<f64, PlanError> {
    let (lo, hi) = p2_bounds(orders);
    if !(strictly_less(lo, p2) && strictly_less(p2, hi)) {
        return Err(PlanError::P2OutOfRange { p2, lo, hi });
    }
    let (alpha, lambda) = (orders.alpha, orders.lambda);
    let first = (alpha - lambda) / (1.0 - alpha);
    let second = (1.0 - lambda * alpha * p2) / (alpha * p2 - 1.0);
    Ok(first.min(second))
}

/// The exponent tuple `(α, λ, ζ, a, p₁, p₂, p₃)` produced by the selection
/// algorithm, with every chained inequality revalidated.
///
/// Serializes to a flat JSON object with keys
/// `alpha, lambda, p2, zeta, a, p1, p3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlanDoc", into = "PlanDoc")]
pub struct ParamPlan {
    orders: OrderPair,
    p2: f64,
    zeta: f64,
    a: f64,
    p1: f64,
    p3: f64,
}

/// Flat wire form of [`ParamPlan`].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct PlanDoc {
    alpha: f64,
    lambda: f64,
    p2: f64,
    zeta: f64,
    a: f64,
    p1: f64,
    p3: f64,
}

impl From<ParamPlan> for PlanDoc {
    fn from(plan: ParamPlan) -> Self {
        PlanDoc {
            alpha: plan.orders.alpha,
            lambda: plan.orders.lambda,
            p2: plan.p2,
            zeta: plan.zeta,
            a: plan.a,
            p1: plan.p1,
            p3: plan.p3,
        }
    }
}

impl TryFrom<PlanDoc> for ParamPlan {
    type Error = String;

    fn try_from(doc: PlanDoc) -> Result<Self, String> {
        let orders =
            validate_orders(doc.alpha, doc.lambda, Regime::Loose).map_err(|e| e.to_string())?;
        let plan = build_plan(&orders, doc.p2, doc.zeta).map_err(|e| e.to_string())?;
        for (name, stored, derived) in [
            ("a", doc.a, plan.a),
            ("p1", doc.p1, plan.p1),
            ("p3", doc.p3, plan.p3),
        ] {
            if (stored - derived).abs() > 1e-9 * derived.abs().max(1.0) {
                return Err(format!(
                    "stored {name}={stored} disagrees with derived value {derived}"
                ));
            }
        }
        Ok(plan)
    }
}

impl ParamPlan {
    pub fn alpha(&self) -> f64 {
        self.orders.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.orders.lambda
    }

    pub fn orders(&self) -> &OrderPair {
        &self.orders
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn p3(&self) -> f64 {
        self.p3
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Growth exponent `aα` of the upper estimate `x(t) = o(t^{aα})`.
    pub fn upper_exponent(&self) -> f64 {
        self.a * self.orders.alpha
    }

    /// Exponent of `t` in front of the coefficient norm:
    /// `(p₃/p₁)·[1 − p₁(1−α)]`, strictly below `α` for every valid plan.
    pub fn h_growth_exponent(&self) -> f64 {
        (self.p3 / self.p1) * (1.0 - self.p1 * (1.0 - self.orders.alpha))
    }

    /// Geometric-midpoint convenience picks for `(p₂, ζ)`: `p₂` at the
    /// geometric midpoint of its admissible interval and `ζ` at half its
    /// bound (the ζ interval starts at 0, so a geometric midpoint does not
    /// exist there).
    pub fn with_defaults(orders: &OrderPair) -> Result<ParamPlan, PlanError> {
        let (lo, hi) = p2_bounds(orders);
        let p2 = (lo * hi).sqrt();
        let zeta = 0.5 * zeta_bound(orders, p2)?;
        build_plan(orders, p2, zeta)
    }
}

/// Run the selection steps 4–6 for a caller-chosen `(p₂, ζ)` and
/// revalidate every inequality the plan must satisfy:
///
/// - `a = (1−λ)/(1+ζ)`, `p₁ = [(1+(1−a)α)/(1+α) − 1/p₂]⁻¹`,
///   `p₃ = (1+α)/(aα)`;
/// - the interpolation identity `1/p₁ + 1/p₂ + 1/p₃ = 1` to `1e-12`;
/// - `(1−a)α < 1/p₂ < ((1−a)α + α²)/(1+α) < α`;
/// - `1−α < 1/p₁ < (1−(1−a)α²)/(1+α)`;
/// - `α > 1−a > λ`.
pub fn build_plan(orders: &OrderPair, p2: f64, zeta: f64) -> Result<ParamPlan, PlanError> {
    let bound = zeta_bound(orders, p2)?; // also validates p2
    if !(strictly_less(0.0, zeta) && strictly_less(zeta, bound)) {
        return Err(PlanError::ZetaOutOfRange { zeta, bound });
    }
    let (alpha, lambda) = (orders.alpha, orders.lambda);
    let a = (1.0 - lambda) / (1.0 + zeta);
    let inv_p1 = (1.0 + (1.0 - a) * alpha) / (1.0 + alpha) - 1.0 / p2;
    let p1 = 1.0 / inv_p1;
    let p3 = (1.0 + alpha) / (a * alpha);
    let plan = ParamPlan { orders: *orders, p2, zeta, a, p1, p3 };

    let check = |ok: bool, detail: &str| -> Result<(), PlanError> {
        if ok {
            Ok(())
        } else {
            Err(PlanError::PlanInconsistent { detail: detail.to_string() })
        }
    };
    let sum = 1.0 / p1 + 1.0 / p2 + 1.0 / p3;
    check((sum - 1.0).abs() < 1e-12, "interpolation identity 1/p1+1/p2+1/p3 = 1")?;
    // double inequality on 1/p2 in its original (a-based) form
    let inv_p2 = 1.0 / p2;
    check(strictly_less((1.0 - a) * alpha, inv_p2), "(1-a)*alpha < 1/p2")?;
    let upper2 = ((1.0 - a) * alpha + alpha * alpha) / (1.0 + alpha);
    check(strictly_less(inv_p2, upper2), "1/p2 < ((1-a)alpha + alpha^2)/(1+alpha)")?;
    check(strictly_less(upper2, alpha), "((1-a)alpha + alpha^2)/(1+alpha) < alpha")?;
    // equivalent double inequality on 1/p1
    check(strictly_less(1.0 - alpha, inv_p1), "1 - alpha < 1/p1")?;
    let upper1 = (1.0 - (1.0 - a) * alpha * alpha) / (1.0 + alpha);
    check(strictly_less(inv_p1, upper1), "1/p1 < (1-(1-a)alpha^2)/(1+alpha)")?;
    // order chain
    check(strictly_less(1.0 - a, alpha), "1 - a < alpha")?;
    check(strictly_less(lambda, 1.0 - a), "lambda < 1 - a")?;
    check(p1 > 1.0 && p2 > 1.0 && p3 > 1.0, "p1, p2, p3 > 1")?;
    check(
        strictly_less(plan.h_growth_exponent(), alpha),
        "(p3/p1)(1 - p1(1-alpha)) < alpha",
    )?;
    Ok(plan)
}

/// Discrete check of the coefficient growth condition
///
/// ```text
/// t^{(p₃/p₁)[1−p₁(1−α)]} · {∫₀ᵗ h(s)^{p₂} ds}^{p₃/p₂} ≤ M (t+1)^α
/// ```
///
/// at every node of the sample grid, using trapezoidal cumulative
/// quadrature for the inner integral. `h` is only known at samples, so a
/// higher-order rule would add nothing to a boolean bound check.
pub fn check_h_growth(
    plan: &ParamPlan,
    t: &[f64],
    h_samples: &[f64],
    m: f64,
) -> Result<bool, PlanError> {
    if t.is_empty() || h_samples.is_empty() {
        return Err(PlanError::EmptyGrid);
    }
    if t.len() != h_samples.len() || t[0] != 0.0 || t.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PlanError::InvalidGrid);
    }
    let alpha = plan.alpha();
    let exponent = plan.h_growth_exponent();
    let ratio = plan.p3 / plan.p2;
    let mut integral = 0.0;
    let mut prev_pow = h_samples[0].powf(plan.p2);
    for i in 1..t.len() {
        let pow = h_samples[i].powf(plan.p2);
        integral += 0.5 * (pow + prev_pow) * (t[i] - t[i - 1]);
        prev_pow = pow;
        let lhs = t[i].powf(exponent) * integral.powf(ratio);
        if lhs > m * (t[i] + 1.0).powf(alpha) {
            return Ok(false);
        }
    }
    Ok(true)
}
