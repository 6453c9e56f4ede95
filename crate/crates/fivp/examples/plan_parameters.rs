//! Walk through the exponent-selection algorithm: pick orders, inspect the
//! admissible intervals for p2 and zeta, build the plan, and print the
//! invariants it satisfies.

use fivp::param_plan::{build_plan, p2_bounds, validate_orders, zeta_bound, Regime};

fn main() {
    let orders = validate_orders(0.5, 0.2, Regime::Strict).expect("orders are admissible");
    println!("orders: alpha = {}, lambda = {}", orders.alpha(), orders.lambda());

    let (lo, hi) = p2_bounds(&orders);
    println!("admissible p2 interval: ({lo:.6}, {hi:.6})");

    let p2 = 6.0;
    let bound = zeta_bound(&orders, p2).expect("p2 inside its interval");
    println!("zeta bound at p2 = {p2}: {bound:.6}");

    let plan = build_plan(&orders, p2, 0.1).expect("plan construction");
    println!("\nplan as JSON:\n{}", serde_json::to_string_pretty(&plan).unwrap());

    println!("\nderived quantities:");
    println!("  1/p1 + 1/p2 + 1/p3 - 1 = {:+.2e}", 1.0 / plan.p1() + 1.0 / plan.p2() + 1.0 / plan.p3() - 1.0);
    println!("  upper growth exponent a*alpha = {:.6}", plan.upper_exponent());
    println!(
        "  coefficient-norm exponent (p3/p1)(1 - p1(1-alpha)) = {:.6} < alpha = {}",
        plan.h_growth_exponent(),
        plan.alpha()
    );
}
