//! Numerical check of the quantities that drive the growth-estimate proof.
//!
//! For a computed path `x` with `y = x − x₀`, the proof controls
//!
//! ```text
//! z(t)  = ∫₀ᵗ g((|y(s)| + |x₀|) / (s+1)^α)^{p₃} ds,
//! lhs4(t) = W(|y|^{p₃}) / (|y|^{p₃})^a · (|y| / (t+1)^α)^{a p₃} ≤ M₁,
//! ```
//!
//! together with `z(t)/t → g(0) = 0`. Both are measurable on the grid:
//! the supremum of `lhs4` is the empirical `M₁` (no a-priori value
//! exists), and the tail of `z(t)/t` must decrease across the last two
//! decades.

use std::io::Write as IoWrite;

use super::AsymptoticsError;
use crate::bihari::{eval_w, GSpec};
use crate::manifest::fmt_float;
use crate::param_plan::ParamPlan;
use crate::solver::SolutionPath;

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremDiagnostics {
    times: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    b: Vec<f64>,
    lhs4: Vec<f64>,
    m1_estimate: f64,
}

impl TheoremDiagnostics {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// `y(t) = x(t) − x₀`.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Cumulative comparison integral `z(t)`.
    pub fn z(&self) -> &[f64] {
        &self.z
    }

    /// `B(x, t) = x(t) / (t+1)^α`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Left side of the bounded-product inequality.
    pub fn lhs4(&self) -> &[f64] {
        &self.lhs4
    }

    /// Empirical supremum of `lhs4` over the grid.
    pub fn m1_estimate(&self) -> f64 {
        self.m1_estimate
    }

    /// `z(t)/t` at the grid node nearest to `t`.
    pub fn z_over_t_at(&self, t: f64) -> f64 {
        let i = nearest_node(&self.times, t);
        self.z[i] / self.times[i]
    }

    /// Step-2 limit behavior: `z(t)/t` at the horizon is below its value
    /// two decades earlier.
    pub fn z_ratio_decreasing(&self) -> bool {
        let t_end = *self.times.last().unwrap();
        self.z_over_t_at(t_end) < self.z_over_t_at(t_end / 100.0)
    }

    /// CSV export with columns `t,y,z,B,lhs4`.
    pub fn write_csv<W: IoWrite>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,y,z,B,lhs4")?;
        for i in 0..self.times.len() {
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt_float(self.times[i]),
                fmt_float(self.y[i]),
                fmt_float(self.z[i]),
                fmt_float(self.b[i]),
                fmt_float(self.lhs4[i])
            )?;
        }
        Ok(())
    }
}

fn nearest_node(times: &[f64], t: f64) -> usize {
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, &ti) in times.iter().enumerate() {
        let d = (ti - t).abs();
        if d < best_dist {
            best_dist = d;
            best = i;
        }
    }
    best
}

/// Compute the proof diagnostics for a path under a plan and comparison
/// function. The plan must match the path's kernel order (and, for power
/// comparison functions, the identity `(1+ζ)a = 1 − λ` forces the power to
/// equal the path's nonlinearity exponent).
pub fn theorem_diagnostics(
    path: &SolutionPath,
    plan: &ParamPlan,
    g: &GSpec,
) -> Result<TheoremDiagnostics, AsymptoticsError> {
    if (plan.alpha() - path.alpha()).abs() > 1e-12 {
        return Err(AsymptoticsError::PlanMismatch(format!(
            "plan alpha = {} vs path alpha = {}",
            plan.alpha(),
            path.alpha()
        )));
    }
    if let (Some(lambda), GSpec::Power { beta }) = (path.lambda(), g) {
        let expected = 1.0 - (1.0 + plan.zeta()) * plan.a();
        if (lambda - plan.lambda()).abs() > 1e-12 || (beta - expected).abs() > 1e-12 {
            return Err(AsymptoticsError::PlanMismatch(format!(
                "power envelope beta = {beta} vs 1-(1+zeta)a = {expected} \
                 (path lambda = {lambda})"
            )));
        }
    }

    let alpha = path.alpha();
    let p3 = plan.p3();
    let a = plan.a();
    let x0_abs = path.x0().abs();
    let times = path.times().to_vec();
    let y: Vec<f64> = path.values().iter().map(|&x| x - path.x0()).collect();
    let b: Vec<f64> = path
        .values()
        .iter()
        .zip(&times)
        .map(|(&x, &t)| x / (t + 1.0).powf(alpha))
        .collect();

    // z by cumulative trapezoid of the comparison integrand
    let integrand: Vec<f64> = y
        .iter()
        .zip(&times)
        .map(|(&yi, &t)| g.eval((yi.abs() + x0_abs) / (t + 1.0).powf(alpha)).powf(p3))
        .collect();
    let mut z = Vec::with_capacity(times.len());
    z.push(0.0);
    for i in 1..times.len() {
        let dz = 0.5 * (integrand[i] + integrand[i - 1]) * (times[i] - times[i - 1]);
        z.push(z[i - 1] + dz);
    }

    // W at the needed arguments |y|^{p3}: evaluate cumulatively on the
    // sorted distinct positive values, then map each node back
    let mut u_needed: Vec<f64> = y
        .iter()
        .map(|&yi| yi.abs().powf(p3))
        .filter(|&u| u > 0.0)
        .collect();
    u_needed.sort_by(|p, q| p.total_cmp(q));
    u_needed.dedup();
    let w_at = if u_needed.is_empty() {
        None
    } else {
        Some(eval_w(g, x0_abs, p3, &u_needed)?)
    };

    let lhs4: Vec<f64> = y
        .iter()
        .zip(&times)
        .map(|(&yi, &t)| {
            let u = yi.abs().powf(p3);
            if u <= 0.0 {
                return 0.0;
            }
            let profile = w_at.as_ref().expect("positive u implies a profile");
            let idx = profile
                .u_grid()
                .binary_search_by(|v| v.total_cmp(&u))
                .expect("u was inserted into the grid");
            let w = profile.w_values()[idx];
            w / u.powf(a) * (yi.abs() / (t + 1.0).powf(alpha)).powf(a * p3)
        })
        .collect();
    let m1_estimate = lhs4.iter().cloned().fold(0.0, f64::max);

    Ok(TheoremDiagnostics { times, y, z, b, lhs4, m1_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Mesh;
    use crate::param_plan::{build_plan, validate_orders, Regime};
    use crate::problems::ProblemSpec;
    use crate::solver::solve_step;

    fn worked_plan() -> ParamPlan {
        let orders = validate_orders(0.5, 0.2, Regime::Strict).unwrap();
        build_plan(&orders, 6.0, 0.1).unwrap()
    }

    #[test]
    fn zero_forcing_gives_zero_diagnostics() {
        let p = ProblemSpec::constant(1.0, 0.0, 0.5).unwrap();
        let mesh = Mesh::graded(10.0, 64, 2.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        let plan = worked_plan();
        let g = GSpec::power(0.2).unwrap();
        let diag = theorem_diagnostics(&path, &plan, &g).unwrap();
        assert!(diag.y().iter().all(|&v| v == 0.0));
        assert!(diag.lhs4().iter().all(|&v| v == 0.0));
        assert_eq!(diag.m1_estimate(), 0.0);
        // z grows even for y = 0 (g(|x0|/(s+1)^alpha) > 0), monotone
        assert!(diag.z().windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn wrong_alpha_is_rejected() {
        let p = ProblemSpec::constant(1.0, 0.0, 0.4).unwrap();
        let mesh = Mesh::graded(10.0, 16, 2.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        let plan = worked_plan();
        let g = GSpec::power(0.2).unwrap();
        assert!(matches!(
            theorem_diagnostics(&path, &plan, &g),
            Err(AsymptoticsError::PlanMismatch(_))
        ));
    }

    #[test]
    fn wrong_power_envelope_is_rejected() {
        let p = ProblemSpec::sharpness(1.0, 0.5, 0.2, 6.0, 0.1).unwrap();
        let mesh = Mesh::graded(10.0, 32, 4.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        let plan = worked_plan();
        let g = GSpec::power(0.35).unwrap();
        assert!(matches!(
            theorem_diagnostics(&path, &plan, &g),
            Err(AsymptoticsError::PlanMismatch(_))
        ));
    }

    #[test]
    fn b_quantity_matches_definition() {
        let p = ProblemSpec::constant(1.0, 2.0, 0.5).unwrap();
        let mesh = Mesh::graded(10.0, 32, 4.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        let diag = theorem_diagnostics(&path, &worked_plan(), &GSpec::power(0.2).unwrap()).unwrap();
        for i in [1usize, 7, 32] {
            let t = path.times()[i];
            let expect = path.values()[i] / (t + 1.0).powf(0.5);
            assert!((diag.b()[i] - expect).abs() < 1e-14);
        }
    }
}
