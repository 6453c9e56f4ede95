//! Numerical solution and asymptotic analysis of sublinear fractional
//! initial-value problems.
//!
//! The initial value problem `D_{0+}^α (x − x₀) = f(t, x)`, `x(0) = x₀`,
//! with a Riemann–Liouville operator of order `α ∈ (0, 1)`, is equivalent to
//! the weakly singular Volterra integral equation
//!
//! ```text
//! x(t) = x₀ + ∫₀ᵗ f(s, x(s)) (t − s)^(α−1) ds
//! ```
//!
//! This crate solves that equation by product integration on graded meshes
//! and verifies, on the computed paths, the growth estimates that hold for
//! sublinear nonlinearities `|f(t, x)| ≤ h(t) g(|x| / (t+1)^α)`:
//! an `o(t^{aα})` upper estimate driven by a Bihari comparison functional,
//! and a matching power-law lower bound for a slowly-decaying coefficient
//! family that shows the estimate is nearly optimal.
//!
//! Module map:
//!
//! - [`param_plan`] — selection and validation of the exponent tuple
//!   `(α, λ, ζ, a, p₁, p₂, p₃)` with its interpolation identity
//!   `1/p₁ + 1/p₂ + 1/p₃ = 1` and all chained inequalities.
//! - [`bihari`] — the comparison functional
//!   `W(u) = ∫₀ᵘ dξ / g(|x₀| + ξ^{1/p₃})^{p₃}` and its superlinear growth
//!   check.
//! - [`problems`] — declarative constructors for the problem families
//!   (constant forcing, linear relaxation, sublinear cooling, generalized
//!   logistic, sharpness) with closed-form or series oracles attached.
//! - [`mesh`] — graded and long-horizon (graded head + geometric tail)
//!   time meshes.
//! - [`solver`] — the product-trapezoidal marching scheme, a whole-path
//!   Picard mode with a weighted-metric contraction configuration, and a
//!   uniqueness probe.
//! - [`asymptotics`] — Mittag–Leffler evaluation, tail exponent fitting,
//!   decade-ratio upper-estimate verification, theorem diagnostics and the
//!   sharpness report.
//! - [`commands`] — the `plan` / `solve` / `sharpness` command fronts used
//!   by the `fivp` binary, including run manifests.
//! - [`reference`] — independent reference evaluations (complementary error
//!   function, Beta moments) used by the verification suite as oracles.
//!
//! Every operation is a pure function of its inputs; all produced values
//! are immutable and safe to share across threads.

pub mod asymptotics;
pub mod bihari;
pub mod commands;
pub mod manifest;
pub mod mesh;
pub mod param_plan;
pub mod problems;
pub mod quadrature;
pub mod reference;
pub mod solver;

pub use asymptotics::{
    fit_growth_exponent, mittag_leffler, theorem_diagnostics, verify_sharpness,
    verify_upper_estimate, ExponentFit, SharpnessReport, TheoremDiagnostics,
};
pub use bihari::{check_superlinear, eval_w, BihariProfile, GSpec};
pub use mesh::Mesh;
pub use param_plan::{
    build_plan, check_h_growth, p2_bounds, validate_orders, zeta_bound, OrderPair, ParamPlan,
    Regime,
};
pub use problems::{CoefficientSpec, Convention, ProblemSpec};
pub use solver::{
    product_weights, solve_picard, solve_step, uniqueness_probe, ContractionConfig, SolutionPath,
};
