//! Sublinear cooling with a slowly-decaying coefficient: solve to a long
//! horizon, fit the tail growth exponent, and confirm the o(t^{a*alpha})
//! estimate on the computed path.

use fivp::asymptotics::{fit_growth_exponent, verify_upper_estimate};
use fivp::param_plan::{build_plan, validate_orders, Regime};
use fivp::problems::{CoefficientSpec, ProblemSpec};
use fivp::solver::solve_step;
use fivp::Mesh;

fn main() {
    let (alpha, lambda) = (0.5, 0.2);
    let orders = validate_orders(alpha, lambda, Regime::Loose).unwrap();
    let plan = build_plan(&orders, 6.0, 0.1).unwrap();

    // h(t) = t^{-0.3} for t >= 1 (and 1 before): in L^{p2} for p2 = 6
    let h = CoefficientSpec::power_decay(0.3).unwrap();
    let problem = ProblemSpec::sublinear_cooling(1.0, alpha, lambda, h).unwrap();

    let t_end = 1e4;
    let mesh = Mesh::long_horizon(t_end, 512, 2.0 / alpha).unwrap();
    let path = solve_step(&problem, &mesh).unwrap();
    println!(
        "solved to T = {t_end:.0} on {} nodes; x(T) = {:.6}, min x = {:.6}",
        path.len(),
        path.values().last().unwrap(),
        path.min_value()
    );

    let fit = fit_growth_exponent(&path, (t_end / 100.0, t_end)).unwrap();
    println!(
        "tail fit on [{:.0}, {:.0}]: x ~ {:.4} t^{:.4} (rms residual {:.1e})",
        fit.window.0,
        fit.window.1,
        fit.intercept.exp(),
        fit.exponent,
        fit.rms_residual
    );

    let upper = plan.upper_exponent();
    let check = verify_upper_estimate(&path, upper).unwrap();
    println!("\ndecade maxima of x(t)/t^(a*alpha) with a*alpha = {upper:.4}:");
    for d in &check.decades {
        println!("  [{:9.0}, {:9.0})  max = {:.6}", d.t_lo, d.t_hi, d.max_ratio);
    }
    println!("o(t^(a*alpha)) proxy: {}", if check.pass { "pass" } else { "fail" });
}
