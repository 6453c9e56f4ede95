//! Desk-scale sharpness experiment: for the slowly-decaying coefficient
//! H(t) = (t+1)^{-alpha*lambda} t^{-(1+eps)/p2}, the computed solution
//! must grow at least like t^{(1-lambda)alpha - (1+eps)/p2} while the
//! upper estimate caps it at o(t^{a*alpha}). The fitted tail exponent
//! lands between the two, so the estimate is nearly optimal.
//!
//! (The command-line equivalent is `fivp sharpness --alpha 0.5
//! --lambda 0.2 --p2 6 --zeta 0.1 --epsilon 0.1 --T 1e4 --out sharp`.)

use fivp::asymptotics::verify_sharpness;
use fivp::param_plan::{build_plan, validate_orders, Regime};
use fivp::problems::ProblemSpec;
use fivp::solver::solve_step;
use fivp::Mesh;

fn main() {
    let (alpha, lambda, p2, zeta, epsilon) = (0.5, 0.2, 6.0, 0.1, 0.1);
    let orders = validate_orders(alpha, lambda, Regime::Strict).unwrap();
    let plan = build_plan(&orders, p2, zeta).unwrap();
    let problem = ProblemSpec::sharpness(1.0, alpha, lambda, p2, epsilon).unwrap();

    // 256 nodes/decade is plenty for the exponent (the acceptance run uses
    // 2048); the tail fit is mesh-converged to ~5 digits already
    let mesh = Mesh::long_horizon(1e4, 256, 2.0 / alpha).unwrap();
    println!("solving on {} nodes to T = 1e4 ...", mesh.n());
    let path = solve_step(&problem, &mesh).unwrap();

    let report = verify_sharpness(&path, &plan, epsilon, None).unwrap();
    println!("lower exponent (1-λ)α - (1+ε)/p₂ = {:.5}", report.lower_exponent);
    println!("  (p₃ variant of the same expression: {:.5})", report.lower_exponent_p3_variant);
    println!("upper exponent aα                = {:.5}", report.upper_exponent);
    println!(
        "fitted tail exponent             = {:.5}  (window [{:.0}, {:.0}])",
        report.fit.exponent, report.fit.window.0, report.fit.window.1
    );
    println!(
        "fitted above lower bound: {} | below upper bound: {}",
        report.fitted_above_lower, report.fitted_below_upper
    );
    println!("decade-ratio o(t^aα) proxy: {}", report.upper_estimate.pass);
    println!("gap aα - lower = {:.5} < Ω·α = {:.5}: {}",
        report.omega.gap,
        report.omega.omega_bound * alpha,
        report.omega.gap_below_omega_alpha
    );
    if let Some(reason) = &report.omega.not_armed_reason {
        println!("η₀ refinement not armed: {reason}");
    }
    println!("\nverdict: {}", if report.verdict { "pass" } else { "fail" });
}
