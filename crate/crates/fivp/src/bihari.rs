//! The Bihari comparison functional
//! `W(u) = ∫₀ᵘ dξ / [g(|x₀| + ξ^{1/p₃})]^{p₃}`
//! and its superlinear growth check `W(u)/u^a → ∞`.

use std::io::Write as IoWrite;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifest::fmt_float;
use crate::quadrature;

#[derive(Debug, Error, PartialEq)]
pub enum BihariError {
    #[error("integrand is singular at the lower limit: g(|x0|) = 0")]
    SingularIntegrand,
    #[error("|x0| must be positive, got {0}")]
    NonpositiveX0(f64),
    #[error("u grid must be non-negative and strictly increasing")]
    InvalidGrid,
    #[error("profile covers {covered:.2} decades of u, need at least {needed}")]
    GridTooShort { covered: f64, needed: f64 },
    #[error("invalid comparison function: {0}")]
    InvalidG(String),
}

/// A continuous, non-decreasing, non-negative comparison function `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GSpec {
    /// `g(u) = u^β` (for plans, `β = 1 − (1+ζ)a`); has `g(0) = 0`.
    Power { beta: f64 },
    /// `g(u) = C (1 + u)^λ`, the envelope of the generalized logistic
    /// nonlinearity; note `g(0) = C > 0`.
    PowerShifted { c: f64, lambda: f64 },
    /// Sampled `g`, interpolated monotone-piecewise-linearly and clamped to
    /// its end values outside the sampled range (which preserves the
    /// non-decreasing invariant by construction).
    Table { u: Vec<f64>, g: Vec<f64> },
}

impl GSpec {
    pub fn power(beta: f64) -> Result<Self, BihariError> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(BihariError::InvalidG(format!(
                "power exponent must be positive, got {beta}"
            )));
        }
        Ok(GSpec::Power { beta })
    }

    pub fn power_shifted(c: f64, lambda: f64) -> Result<Self, BihariError> {
        if !(c >= 0.0 && lambda >= 0.0) {
            return Err(BihariError::InvalidG(format!(
                "need C >= 0 and lambda >= 0, got C={c}, lambda={lambda}"
            )));
        }
        Ok(GSpec::PowerShifted { c, lambda })
    }

    pub fn table(u: Vec<f64>, g: Vec<f64>) -> Result<Self, BihariError> {
        let ok = u.len() == g.len()
            && u.len() >= 2
            && u[0] >= 0.0
            && u.windows(2).all(|w| w[1] > w[0])
            && g.iter().all(|&v| v >= 0.0)
            && g.windows(2).all(|w| w[1] >= w[0]);
        if !ok {
            return Err(BihariError::InvalidG(
                "table must have increasing u and non-decreasing, non-negative g".into(),
            ));
        }
        Ok(GSpec::Table { u, g })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            GSpec::Power { beta } => x.powf(*beta),
            GSpec::PowerShifted { c, lambda } => c * (1.0 + x).powf(*lambda),
            GSpec::Table { u, g } => {
                if x <= u[0] {
                    return g[0];
                }
                if x >= *u.last().unwrap() {
                    return *g.last().unwrap();
                }
                let i = u.partition_point(|&v| v <= x);
                let (u0, u1, g0, g1) = (u[i - 1], u[i], g[i - 1], g[i]);
                g0 + (g1 - g0) * (x - u0) / (u1 - u0)
            }
        }
    }
}

/// `W` evaluated cumulatively on an increasing grid of `u` values.
#[derive(Debug, Clone, PartialEq)]
pub struct BihariProfile {
    u_grid: Vec<f64>,
    w_values: Vec<f64>,
    x0_abs: f64,
    p3: f64,
}

impl BihariProfile {
    pub fn u_grid(&self) -> &[f64] {
        &self.u_grid
    }

    pub fn w_values(&self) -> &[f64] {
        &self.w_values
    }

    pub fn x0_abs(&self) -> f64 {
        self.x0_abs
    }

    pub fn p3(&self) -> f64 {
        self.p3
    }

    /// CSV export with columns `u,W`.
    pub fn write_csv<W: IoWrite>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "u,W")?;
        for (u, w) in self.u_grid.iter().zip(&self.w_values) {
            writeln!(out, "{},{}", fmt_float(*u), fmt_float(*w))?;
        }
        Ok(())
    }
}

/// Relative quadrature target per panel.
const PANEL_REL_TOL: f64 = 1e-8;

/// Evaluate `W(u) = ∫₀ᵘ dξ / g(|x₀| + ξ^{1/p₃})^{p₃}` at every grid point
/// by adaptive panel quadrature (each panel spans consecutive grid points,
/// so the values accumulate).
///
/// Requires `x0_abs > 0` and `g(x0_abs) > 0`; the integrand is then finite
/// at `ξ = 0` and smooth away from it.
pub fn eval_w(
    g: &GSpec,
    x0_abs: f64,
    p3: f64,
    u_grid: &[f64],
) -> Result<BihariProfile, BihariError> {
    if !(x0_abs > 0.0) {
        return Err(BihariError::NonpositiveX0(x0_abs));
    }
    if u_grid.is_empty() || u_grid[0] < 0.0 || u_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(BihariError::InvalidGrid);
    }
    if !(g.eval(x0_abs) > 0.0) {
        return Err(BihariError::SingularIntegrand);
    }
    let integrand = |xi: f64| g.eval(x0_abs + xi.powf(1.0 / p3)).powf(-p3);
    let mut w_values = Vec::with_capacity(u_grid.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &u in u_grid {
        acc += quadrature::integrate(&integrand, prev, u, PANEL_REL_TOL, 0.0);
        w_values.push(acc);
        prev = u;
    }
    Ok(BihariProfile { u_grid: u_grid.to_vec(), w_values, x0_abs, p3 })
}

/// Finite proxy for `lim_{u→∞} W(u)/u^a = +∞`: true iff `W(u)/u^a` is
/// strictly increasing on the grid across the last three decades of `u`
/// AND its value grows by more than a factor 2 across the last decade.
///
/// A limit cannot be asserted from finite data; this proxy is falsifiable
/// and deliberately conservative — profiles whose superlinear margin is
/// very thin (growth slower than `u^{0.30}` per decade) are rejected even
/// though the limit may still be infinite.
pub fn check_superlinear(profile: &BihariProfile, a: f64) -> Result<bool, BihariError> {
    let u = &profile.u_grid;
    let first_positive = u
        .iter()
        .copied()
        .find(|&v| v > 0.0)
        .ok_or(BihariError::InvalidGrid)?;
    let u_max = *u.last().unwrap();
    let covered = (u_max / first_positive).log10();
    if covered < 4.0 {
        return Err(BihariError::GridTooShort { covered, needed: 4.0 });
    }
    let phi: Vec<f64> = u
        .iter()
        .zip(&profile.w_values)
        .map(|(&u, &w)| if u > 0.0 { w / u.powf(a) } else { f64::NAN })
        .collect();
    // strictly increasing across the last three decades
    let start = u_max / 1e3;
    let mut prev: Option<f64> = None;
    for (i, &ui) in u.iter().enumerate() {
        if ui < start {
            continue;
        }
        if let Some(p) = prev {
            if phi[i] <= p {
                return Ok(false);
            }
        }
        prev = Some(phi[i]);
    }
    // ratio across the last decade
    let i_last = u.len() - 1;
    let i_dec = u.partition_point(|&v| v <= u_max / 10.0) - 1;
    Ok(phi[i_last] / phi[i_dec] > 2.0)
}
