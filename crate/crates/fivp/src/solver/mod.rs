//! Marching and Picard solvers for the weakly singular integral equation
//! `x(t) = x₀ + κ ∫₀ᵗ f(s, x(s)) (t − s)^{α−1} ds`.
//!
//! The marching scheme discretizes the convolution by product-trapezoidal
//! integration (exact kernel against the piecewise-linear interpolant of
//! `f(·, x(·))`) and closes each node with a damped scalar fixed point —
//! the diagonal weight `w_{n,n}` vanishes under refinement, so the scalar
//! map is eventually contractive, with a safeguarded bisection fallback on
//! coarse meshes.
//!
//! The Picard mode iterates the whole-path operator
//! `T(x)(t) = x₀ + κ ∫₀ᵗ f(s, x(s)) (t − s)^{α−1} ds` from a constant
//! start; a [`ContractionConfig`] fixes the exponents `(p, q)` and the
//! weight scale `L` of the weighted metric
//! `d_L(x, y) = sup_t |x(t) − y(t)| / H_L(t)` under which the operator is
//! a contraction of coefficient `C(α,p) L^{−1/q} < 1`. Since `H_L ≥ 1`,
//! stopping on the unweighted successive difference also certifies the
//! weighted criterion; both are reported.

mod weights;

pub use weights::product_weights;
pub(crate) use weights::{cell_weights, Compensated};

use std::io::Write as IoWrite;

use serde::Serialize;
use thiserror::Error;

use crate::manifest::fmt_float;
use crate::mesh::{Mesh, MeshError};
use crate::problems::{Convention, Family, ProblemSpec};

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("scalar step solve diverged at node {node} (t = {t})")]
    StepDivergence { node: usize, t: f64 },
    #[error(
        "positivity violated at node {node}: x = {value} < x0 = {x0}; \
         this signals a scheme bug for non-negative data"
    )]
    PositivityViolation { node: usize, value: f64, x0: f64 },
    #[error("Picard iteration did not converge after {iterations} sweeps (last diff {last_diff})")]
    MaxIterationsExceeded { iterations: usize, last_diff: f64 },
    #[error("invalid contraction configuration: {0}")]
    InvalidContraction(String),
    #[error("invalid path data: {0}")]
    BadPath(String),
}

/// Stopping tolerances of the implicit per-node solve: converged when the
/// increment drops below `tol_abs` or below `tol_rel` relative to the
/// iterate, whichever happens first.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub max_inner: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol_abs: 1e-12, tol_rel: 1e-10, max_inner: 200 }
    }
}

/// Iteration record of a Picard solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PicardInfo {
    pub iterations: usize,
    /// Final weighted sup-distance `sup_t |Δx(t)| / H_L(t)`.
    pub weighted_distance: f64,
}

/// Monotone time grid plus solution values and per-node residuals (the
/// defect of the discrete equation at each node).
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPath {
    mesh: Mesh,
    values: Vec<f64>,
    residuals: Vec<f64>,
    convention: Convention,
    alpha: f64,
    lambda: Option<f64>,
    picard: Option<PicardInfo>,
}

impl SolutionPath {
    /// Wrap an externally produced series (analysis helpers accept any
    /// monotone positive-time path, e.g. synthetic power laws in tests).
    pub fn from_samples(times: Vec<f64>, values: Vec<f64>, alpha: f64) -> Result<Self, SolveError> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(SolveError::BadPath(
                "need at least two samples with matching lengths".into(),
            ));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(SolveError::BadPath("times must be strictly increasing".into()));
        }
        let residuals = vec![0.0; values.len()];
        let mesh = Mesh::from_raw_nodes(times)?;
        Ok(SolutionPath {
            mesh,
            values,
            residuals,
            convention: Convention::Main,
            alpha,
            lambda: None,
            picard: None,
        })
    }

    pub fn times(&self) -> &[f64] {
        self.mesh.nodes()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> Option<f64> {
        self.lambda
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn x0(&self) -> f64 {
        self.values[0]
    }

    pub fn t_end(&self) -> f64 {
        self.mesh.t_end()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn picard_info(&self) -> Option<PicardInfo> {
        self.picard
    }

    /// Supremum distance to another path on the same grid.
    pub fn sup_distance(&self, other: &SolutionPath) -> f64 {
        assert_eq!(self.len(), other.len(), "paths live on different grids");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Maximum relative error against a reference function, skipping nodes
    /// where the reference vanishes.
    pub fn max_relative_error<F: Fn(f64) -> f64>(&self, reference: F) -> f64 {
        self.times()
            .iter()
            .zip(&self.values)
            .filter_map(|(&t, &x)| {
                let r = reference(t);
                (r != 0.0).then(|| ((x - r) / r).abs())
            })
            .fold(0.0, f64::max)
    }

    /// CSV export with columns `t,x,residual`.
    pub fn write_csv<W: IoWrite>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,x,residual")?;
        for i in 0..self.values.len() {
            writeln!(
                out,
                "{},{},{}",
                fmt_float(self.times()[i]),
                fmt_float(self.values[i]),
                fmt_float(self.residuals[i])
            )?;
        }
        Ok(())
    }
}

/// Effective forcing in the `Main` normalization: the `IntegrIvp`
/// convention folds `Γ(α)^{-1}` into `f`.
fn main_scale(problem: &ProblemSpec) -> f64 {
    match problem.convention {
        Convention::Main => 1.0,
        Convention::IntegrIvp => 1.0 / libm::tgamma(problem.alpha),
    }
}

/// Positivity floor: for non-negative data the scheme must keep
/// `x_n ≥ x₀ − 1e-10` (every kernel increment is non-negative).
const POSITIVITY_SLACK: f64 = 1e-10;

fn check_positivity(problem: &ProblemSpec, values: &[f64]) -> Result<(), SolveError> {
    if !problem.nonnegative_data() {
        return Ok(());
    }
    let x0 = problem.x0;
    for (node, &v) in values.iter().enumerate() {
        if v < x0 - POSITIVITY_SLACK {
            return Err(SolveError::PositivityViolation { node, value: v, x0 });
        }
    }
    Ok(())
}

/// Solve by marching with the default tolerances.
pub fn solve_step(problem: &ProblemSpec, mesh: &Mesh) -> Result<SolutionPath, SolveError> {
    solve_step_with(problem, mesh, &SolverOptions::default())
}

/// Marching scheme: at node `n` solve
/// `x_n = x₀ + Σ_{j<n} w_{n,j} f(t_j, x_j) + w_{n,n} f(t_n, x_n)`
/// by damped fixed point with a safeguarded-bisection fallback.
pub fn solve_step_with(
    problem: &ProblemSpec,
    mesh: &Mesh,
    opts: &SolverOptions,
) -> Result<SolutionPath, SolveError> {
    let scale = main_scale(problem);
    let alpha = problem.alpha;
    let nodes = mesh.nodes();
    let n_total = mesh.n();
    let x0 = problem.x0;

    let mut values = Vec::with_capacity(n_total + 1);
    let mut fvals = Vec::with_capacity(n_total + 1);
    let mut residuals = Vec::with_capacity(n_total + 1);
    values.push(x0);
    fvals.push(scale * problem.eval_f(nodes[0], x0));
    residuals.push(0.0);

    for n in 1..=n_total {
        let tn = nodes[n];
        let mut acc = Compensated::new(x0);
        let mut w_nn = 0.0;
        for j in 0..n {
            let u = tn - nodes[j];
            let h = nodes[j + 1] - nodes[j];
            let cw = cell_weights(u, h, alpha);
            acc.add(cw.left * fvals[j]);
            if j + 1 < n {
                acc.add(cw.right * fvals[j + 1]);
            } else {
                w_nn = cw.right;
            }
        }
        let known = acc.total();
        let f_here = |x: f64| scale * problem.eval_f(tn, x);
        let x_n = solve_node(known, w_nn, &f_here, values[n - 1], x0, opts)
            .ok_or(SolveError::StepDivergence { node: n, t: tn })?;
        let f_n = f_here(x_n);
        residuals.push((x_n - (known + w_nn * f_n)).abs());
        values.push(x_n);
        fvals.push(f_n);
    }

    check_positivity(problem, &values)?;
    Ok(SolutionPath {
        mesh: mesh.clone(),
        values,
        residuals,
        convention: problem.convention,
        alpha,
        lambda: problem.lambda(),
        picard: None,
    })
}

/// Scalar solve of `x = known + w f(x)`: plain fixed point, damping 0.5
/// after 10 non-contracting steps, then bisection on a bracket grown from
/// `[min(x₀, x), x + 10 |increment|]`.
fn solve_node<F: Fn(f64) -> f64>(
    known: f64,
    w: f64,
    f: &F,
    start: f64,
    x0: f64,
    opts: &SolverOptions,
) -> Option<f64> {
    let g = |x: f64| known + w * f(x);
    let mut x = start;
    let mut damping = 1.0;
    let mut prev_step = f64::INFINITY;
    let mut non_contracting = 0usize;
    let mut last_increment: f64 = 1.0;
    for _ in 0..opts.max_inner {
        let gx = g(x);
        let step = gx - x;
        if !step.is_finite() {
            break;
        }
        if step.abs() <= opts.tol_abs || step.abs() <= opts.tol_rel * x.abs().max(gx.abs()) {
            return Some(gx);
        }
        if step.abs() >= prev_step {
            non_contracting += 1;
            if non_contracting >= 10 {
                damping = 0.5;
            }
        }
        prev_step = step.abs();
        last_increment = step;
        x += damping * step;
    }

    // Fallback: bisection on psi(x) = x − g(x) over an expanding bracket.
    let psi = |x: f64| x - g(x);
    let mut lo = x0.min(x);
    let mut hi = x + 10.0 * last_increment.abs().max(opts.tol_abs);
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut psi_lo = psi(lo);
    let mut psi_hi = psi(hi);
    let mut tries = 0;
    while psi_lo * psi_hi > 0.0 {
        let width = (hi - lo).max(1.0);
        lo -= width;
        hi += width;
        psi_lo = psi(lo);
        psi_hi = psi(hi);
        tries += 1;
        if tries > 60 || !psi_lo.is_finite() || !psi_hi.is_finite() {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let pm = psi(mid);
        if pm.abs() <= opts.tol_abs || (hi - lo).abs() <= opts.tol_rel * mid.abs().max(1.0) {
            return Some(mid);
        }
        if pm * psi_lo <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            psi_lo = pm;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Exponents and weight scale of the weighted-metric contraction:
/// `1 < p < min{1/α, 1/(1−α)}`, `1/p + 1/q = 1`, and
/// `L > C(α,p)^q` for `C(α,p) = p^{1/q−α} Γ(1 − p(1−α))`, which makes the
/// Picard operator a contraction of coefficient `C(α,p) L^{−1/q} < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionConfig {
    pub p: f64,
    pub q: f64,
    pub l: f64,
    pub max_iterations: usize,
    pub tolerance: f64,
}

/// `C(α, p) = p^{1/q − α} · Γ(1 − p(1−α))`.
pub fn contraction_constant(alpha: f64, p: f64) -> f64 {
    let q = p / (p - 1.0);
    p.powf(1.0 / q - alpha) * libm::tgamma(1.0 - p * (1.0 - alpha))
}

impl ContractionConfig {
    /// Midpoint defaults: `p` halfway through its admissible interval and
    /// `L = 2 C(α,p)^q`.
    pub fn for_order(alpha: f64) -> Result<Self, SolveError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(SolveError::InvalidContraction(format!(
                "need 0 < alpha < 1 for the weighted metric, got {alpha}"
            )));
        }
        let p_max = (1.0 / alpha).min(1.0 / (1.0 - alpha));
        let p = 0.5 * (1.0 + p_max);
        let q = p / (p - 1.0);
        let l = 2.0 * contraction_constant(alpha, p).powf(q);
        let cfg = ContractionConfig { p, q, l, max_iterations: 400, tolerance: 1e-12 };
        cfg.validate(alpha)?;
        Ok(cfg)
    }

    pub fn validate(&self, alpha: f64) -> Result<(), SolveError> {
        let p_max = (1.0 / alpha).min(1.0 / (1.0 - alpha));
        if !(self.p > 1.0 && self.p < p_max) {
            return Err(SolveError::InvalidContraction(format!(
                "p = {} outside (1, {p_max})",
                self.p
            )));
        }
        if (1.0 / self.p + 1.0 / self.q - 1.0).abs() > 1e-12 {
            return Err(SolveError::InvalidContraction(format!(
                "p = {}, q = {} are not conjugate",
                self.p, self.q
            )));
        }
        let c = contraction_constant(alpha, self.p);
        if !(self.l > c.powf(self.q)) {
            return Err(SolveError::InvalidContraction(format!(
                "L = {} must exceed C(alpha,p)^q = {}",
                self.l,
                c.powf(self.q)
            )));
        }
        let coeff = self.coefficient(alpha);
        if !(coeff < 1.0) {
            return Err(SolveError::InvalidContraction(format!(
                "contraction coefficient {coeff} is not below 1"
            )));
        }
        if !(self.tolerance > 0.0) || self.max_iterations == 0 {
            return Err(SolveError::InvalidContraction(
                "tolerance must be positive and max_iterations nonzero".into(),
            ));
        }
        Ok(())
    }

    /// Contraction coefficient `C(α,p) · L^{−1/q}`.
    pub fn coefficient(&self, alpha: f64) -> f64 {
        contraction_constant(alpha, self.p) * self.l.powf(-1.0 / self.q)
    }
}

/// Triangular cache of weight rows; kept only while it stays well under
/// typical memory budgets (128 MB of f64).
const WEIGHT_CACHE_ENTRIES: usize = 16_000_000;

struct WeightTable {
    flat: Option<Vec<f64>>,
    nodes: Vec<f64>,
    alpha: f64,
}

impl WeightTable {
    fn build(nodes: &[f64], alpha: f64) -> Self {
        let n_total = nodes.len() - 1;
        let entries = (n_total + 1) * (n_total + 2) / 2;
        let flat = if entries <= WEIGHT_CACHE_ENTRIES {
            let mut flat = vec![0.0; entries];
            for n in 1..=n_total {
                let row = &mut flat[n * (n + 1) / 2..n * (n + 1) / 2 + n + 1];
                let tn = nodes[n];
                for j in 0..n {
                    let u = tn - nodes[j];
                    let h = nodes[j + 1] - nodes[j];
                    let cw = cell_weights(u, h, alpha);
                    row[j] += cw.left;
                    row[j + 1] += cw.right;
                }
            }
            Some(flat)
        } else {
            None
        };
        WeightTable { flat, nodes: nodes.to_vec(), alpha }
    }

    /// `out[n] = Σ_j w_{n,j} φ[j]` for every row, `out[0] = 0`.
    fn apply(&self, phi: &[f64], out: &mut [f64]) {
        let n_total = self.nodes.len() - 1;
        out[0] = 0.0;
        if let Some(flat) = &self.flat {
            for n in 1..=n_total {
                let row = &flat[n * (n + 1) / 2..n * (n + 1) / 2 + n + 1];
                let mut acc = Compensated::new(0.0);
                for (w, f) in row.iter().zip(phi) {
                    acc.add(w * f);
                }
                out[n] = acc.total();
            }
        } else {
            for n in 1..=n_total {
                let tn = self.nodes[n];
                let mut acc = Compensated::new(0.0);
                for j in 0..n {
                    let u = tn - self.nodes[j];
                    let h = self.nodes[j + 1] - self.nodes[j];
                    let cw = cell_weights(u, h, self.alpha);
                    acc.add(cw.left * phi[j]);
                    acc.add(cw.right * phi[j + 1]);
                }
                out[n] = acc.total();
            }
        }
    }
}

/// Pointwise Lipschitz envelope `F(t)` with
/// `|f(t,x) − f(t,y)| ≤ F(t) |x − y|` on `[x₀, ∞)`, built from the
/// mean-value constant `c = λ (2/x₀)^{1−λ}` for the power families.
fn lipschitz_envelope(problem: &ProblemSpec, scale: f64) -> impl Fn(f64) -> f64 + '_ {
    let x0 = problem.x0;
    let alpha = problem.alpha;
    move |t: f64| -> f64 {
        let base = match &problem.family {
            Family::Constant { .. } => 0.0,
            Family::LinearRelaxation { tau0 } => tau0.powf(-alpha),
            Family::SublinearCooling { lambda, .. } | Family::Sharpness { lambda, .. } => {
                let c = lambda * (2.0 / x0).powf(1.0 - lambda);
                c * problem.coefficient_h(t).unwrap_or(0.0)
            }
            Family::Logistic { lambda, mu, p_norm, .. } => {
                let c = lambda * (2.0 / x0).powf(1.0 - lambda);
                let extra = p_norm * (lambda - mu) * (2.0 / x0).powf(1.0 + mu - lambda);
                (c + extra) * problem.coefficient_h(t).unwrap_or(0.0)
            }
        };
        scale * base
    }
}

/// Whole-path Picard iteration `x^{(k+1)} = T(x^{(k)})` from the constant
/// start `x^{(0)} ≡ x₀`.
pub fn solve_picard(
    problem: &ProblemSpec,
    mesh: &Mesh,
    cfg: &ContractionConfig,
) -> Result<SolutionPath, SolveError> {
    solve_picard_from(problem, mesh, cfg, problem.x0)
}

/// Picard iteration from the constant start `x^{(0)} ≡ start`.
pub fn solve_picard_from(
    problem: &ProblemSpec,
    mesh: &Mesh,
    cfg: &ContractionConfig,
    start: f64,
) -> Result<SolutionPath, SolveError> {
    cfg.validate(problem.alpha)?;
    let scale = main_scale(problem);
    let nodes = mesh.nodes();
    let n_total = mesh.n();
    let x0 = problem.x0;
    let table = WeightTable::build(nodes, problem.alpha);

    // log H_L(t) = log k(t) + t + (L/q) ∫₀ᵗ [k F]^q; the weight grows like
    // e^t, so everything stays in log space.
    let mut k_of_t = vec![0.0; n_total + 1];
    let f_at_x0: Vec<f64> = nodes
        .iter()
        .map(|&t| (scale * problem.eval_f(t, x0)).abs())
        .collect();
    table.apply(&f_at_x0, &mut k_of_t);
    for v in k_of_t.iter_mut() {
        *v += 1.0 + x0.abs();
    }
    let envelope = lipschitz_envelope(problem, scale);
    let mut log_hl = vec![0.0; n_total + 1];
    let mut cum = 0.0;
    let mut prev_int = (k_of_t[0] * envelope(nodes[0])).powf(cfg.q);
    log_hl[0] = k_of_t[0].ln();
    for i in 1..=n_total {
        let integrand = (k_of_t[i] * envelope(nodes[i])).powf(cfg.q);
        cum += 0.5 * (integrand + prev_int) * (nodes[i] - nodes[i - 1]);
        prev_int = integrand;
        log_hl[i] = k_of_t[i].ln() + nodes[i] + (cfg.l / cfg.q) * cum;
    }

    let mut x = vec![start; n_total + 1];
    x[0] = x0;
    let mut fv = vec![0.0; n_total + 1];
    let mut applied = vec![0.0; n_total + 1];
    let mut diffs = vec![0.0; n_total + 1];
    let mut consecutive_ok = 0usize;
    let mut info = PicardInfo { iterations: 0, weighted_distance: f64::INFINITY };
    let mut sup_diff = f64::INFINITY;

    for iteration in 1..=cfg.max_iterations {
        for i in 0..=n_total {
            fv[i] = scale * problem.eval_f(nodes[i], x[i]);
        }
        table.apply(&fv, &mut applied);
        sup_diff = 0.0;
        let mut weighted = 0.0f64;
        let mut scale_max = 0.0f64;
        for i in 0..=n_total {
            let next = x0 + applied[i];
            let d = (next - x[i]).abs();
            diffs[i] = d;
            sup_diff = sup_diff.max(d);
            scale_max = scale_max.max(next.abs());
            if d > 0.0 {
                weighted = weighted.max((d.ln() - log_hl[i]).exp());
            }
            x[i] = next;
        }
        x[0] = x0;
        info.iterations = iteration;
        info.weighted_distance = weighted;
        // H_L >= 1 makes the weighted criterion implied by the plain one;
        // ask for two consecutive quiet sweeps before accepting.
        if sup_diff <= cfg.tolerance * (1.0 + scale_max) && weighted <= cfg.tolerance {
            consecutive_ok += 1;
            if consecutive_ok >= 2 || sup_diff == 0.0 {
                check_positivity(problem, &x)?;
                return Ok(SolutionPath {
                    mesh: mesh.clone(),
                    values: x,
                    residuals: diffs,
                    convention: problem.convention,
                    alpha: problem.alpha,
                    lambda: problem.lambda(),
                    picard: Some(info),
                });
            }
        } else {
            consecutive_ok = 0;
        }
    }
    Err(SolveError::MaxIterationsExceeded {
        iterations: cfg.max_iterations,
        last_diff: sup_diff,
    })
}

/// Uniqueness probe: run the Picard iteration from `x₀` and from
/// `x₀ + perturbation` and return the sup-distance of the converged paths.
/// The contraction is global in the weighted space, so the distance must
/// fall below ten times the solver tolerance for any perturbation.
pub fn uniqueness_probe(
    problem: &ProblemSpec,
    mesh: &Mesh,
    cfg: &ContractionConfig,
    perturbation: f64,
) -> Result<f64, SolveError> {
    let base = solve_picard_from(problem, mesh, cfg, problem.x0)?;
    let shifted = solve_picard_from(problem, mesh, cfg, problem.x0 + perturbation)?;
    Ok(base.sup_distance(&shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::CoefficientSpec;
    use approx::assert_relative_eq;

    fn cooling_problem() -> ProblemSpec {
        // h(t) = (1+t)^{-1} on a dense sample table
        let t: Vec<f64> = (0..=4000).map(|i| i as f64 * 0.005).collect();
        let v: Vec<f64> = t.iter().map(|&s| 1.0 / (1.0 + s)).collect();
        let h = CoefficientSpec::table(t, v).unwrap();
        ProblemSpec::sublinear_cooling(1.0, 0.5, 0.2, h).unwrap()
    }

    #[test]
    fn zero_forcing_stays_at_x0() {
        let p = ProblemSpec::constant(1.0, 0.0, 0.5).unwrap();
        let mesh = Mesh::graded(10.0, 64, 4.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        assert!(path.values().iter().all(|&v| v == 1.0));
        assert!(path.residuals().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn constant_forcing_matches_closed_form() {
        for &alpha in &[0.3, 0.5, 0.8] {
            let p = ProblemSpec::constant(1.0, 2.0, alpha).unwrap();
            let mesh = Mesh::graded_for_order(10.0, 256, alpha).unwrap();
            let path = solve_step(&p, &mesh).unwrap();
            let err = path.max_relative_error(|t| p.exact_solution(t).unwrap());
            // product integration is exact on constants; only rounding left
            assert!(err < 1e-12, "alpha={alpha}: err={err}");
        }
    }

    #[test]
    fn linear_relaxation_coarse_accuracy() {
        let p = ProblemSpec::linear_relaxation(1.0, 1.0, 0.5).unwrap();
        let mesh = Mesh::graded_for_order(5.0, 512, 0.5).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        let err = path.max_relative_error(|t| p.exact_solution(t).unwrap());
        assert!(err < 5e-6, "err={err}");
    }

    #[test]
    fn convention_rescaling_is_exact() {
        // solving in integr-ivp equals solving in main with f/Γ(α)
        let alpha = 0.5;
        let gamma = libm::tgamma(alpha);
        let main = ProblemSpec::constant(1.0, 2.0 / gamma, alpha).unwrap();
        let ivp = ProblemSpec::constant(1.0, 2.0, alpha)
            .unwrap()
            .with_convention(Convention::IntegrIvp);
        let mesh = Mesh::graded(4.0, 128, 4.0).unwrap();
        let a = solve_step(&main, &mesh).unwrap();
        let b = solve_step(&ivp, &mesh).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert_relative_eq!(x, y, max_relative = 1e-12);
        }
    }

    #[test]
    fn positivity_holds_for_nonnegative_data() {
        let p = cooling_problem();
        let mesh = Mesh::graded(10.0, 128, 4.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        assert!(path.min_value() >= 1.0 - 1e-10);
    }

    #[test]
    fn picard_zero_forcing_converges_first_sweep() {
        let p = ProblemSpec::constant(1.0, 0.0, 0.5).unwrap();
        let mesh = Mesh::graded(5.0, 32, 2.0).unwrap();
        let cfg = ContractionConfig::for_order(0.5).unwrap();
        let path = solve_picard(&p, &mesh, &cfg).unwrap();
        assert_eq!(path.picard_info().unwrap().iterations, 1);
        assert!(path.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn picard_constant_forcing_is_exact_by_second_sweep() {
        let p = ProblemSpec::constant(1.0, 2.0, 0.5).unwrap();
        let mesh = Mesh::graded(5.0, 64, 4.0).unwrap();
        let cfg = ContractionConfig::for_order(0.5).unwrap();
        let path = solve_picard(&p, &mesh, &cfg).unwrap();
        // f does not depend on x: the first sweep lands on the fixed point,
        // the second confirms it (diff 0)
        assert!(path.picard_info().unwrap().iterations <= 2);
        let err = path.max_relative_error(|t| p.exact_solution(t).unwrap());
        assert!(err < 1e-12, "err={err}");
    }

    #[test]
    fn picard_agrees_with_marching() {
        let p = cooling_problem();
        let mesh = Mesh::graded(10.0, 256, 4.0).unwrap();
        let cfg = ContractionConfig::for_order(0.5).unwrap();
        let step = solve_step(&p, &mesh).unwrap();
        let picard = solve_picard(&p, &mesh, &cfg).unwrap();
        let dist = step.sup_distance(&picard);
        assert!(dist < 1e-8, "dist={dist}");
    }

    #[test]
    fn uniqueness_probe_zero_perturbation_is_zero() {
        let p = cooling_problem();
        let mesh = Mesh::graded(5.0, 64, 4.0).unwrap();
        let cfg = ContractionConfig::for_order(0.5).unwrap();
        let d = uniqueness_probe(&p, &mesh, &cfg, 0.0).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn contraction_config_invariants() {
        let cfg = ContractionConfig::for_order(0.5).unwrap();
        assert!(cfg.p > 1.0 && cfg.p < 2.0);
        assert_relative_eq!(1.0 / cfg.p + 1.0 / cfg.q, 1.0, max_relative = 1e-14);
        assert!(cfg.coefficient(0.5) < 1.0);
        // C(0.5, 1.5) = 1.5^{1/3 - 1/2} Γ(1/4)
        let c = contraction_constant(0.5, 1.5);
        assert_relative_eq!(
            c,
            1.5f64.powf(-1.0 / 6.0) * libm::tgamma(0.25),
            max_relative = 1e-13
        );
        let bad = ContractionConfig { p: 3.0, q: 1.5, l: 100.0, max_iterations: 10, tolerance: 1e-10 };
        assert!(bad.validate(0.5).is_err());
    }

    #[test]
    fn from_samples_validates() {
        assert!(SolutionPath::from_samples(vec![0.0, 1.0], vec![1.0, 2.0], 0.5).is_ok());
        assert!(SolutionPath::from_samples(vec![1.0, 1.0], vec![1.0, 2.0], 0.5).is_err());
        assert!(SolutionPath::from_samples(vec![0.0], vec![1.0], 0.5).is_err());
    }

    #[test]
    fn csv_export_shape() {
        let p = ProblemSpec::constant(1.0, 1.0, 0.5).unwrap();
        let mesh = Mesh::graded(1.0, 4, 2.0).unwrap();
        let path = solve_step(&p, &mesh).unwrap();
        let mut buf = Vec::new();
        path.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,x,residual\n"));
        assert_eq!(text.lines().count(), 6);
    }
}
