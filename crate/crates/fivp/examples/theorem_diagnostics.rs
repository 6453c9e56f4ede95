//! Track the quantities the growth proof manipulates on a concrete run:
//! y = x - x0, the comparison integral z(t), B(x,t) = x/(t+1)^alpha, and
//! the bounded product lhs4 whose supremum estimates M1. Writes all four
//! series to diagnostics.csv.

use std::fs::File;

use fivp::asymptotics::theorem_diagnostics;
use fivp::bihari::GSpec;
use fivp::param_plan::{build_plan, validate_orders, Regime};
use fivp::problems::ProblemSpec;
use fivp::solver::solve_step;
use fivp::Mesh;

fn main() {
    let (alpha, lambda, p2, zeta, epsilon) = (0.5, 0.2, 6.0, 0.1, 0.1);
    let orders = validate_orders(alpha, lambda, Regime::Strict).unwrap();
    let plan = build_plan(&orders, p2, zeta).unwrap();
    let problem = ProblemSpec::sharpness(1.0, alpha, lambda, p2, epsilon).unwrap();
    let mesh = Mesh::long_horizon(1e4, 256, 2.0 / alpha).unwrap();
    let path = solve_step(&problem, &mesh).unwrap();

    let g = GSpec::power(lambda).unwrap();
    let diag = theorem_diagnostics(&path, &plan, &g).unwrap();

    println!("       t          y(t)         z(t)/t        B(x,t)       lhs4");
    for decade in [1.0, 10.0, 100.0, 1000.0, 10000.0] {
        let i = diag
            .times()
            .iter()
            .position(|&t| t >= decade)
            .unwrap();
        let t = diag.times()[i];
        println!(
            "{t:10.1}  {:12.6}  {:12.6}  {:12.6}  {:10.6}",
            diag.y()[i],
            diag.z()[i] / t,
            diag.b()[i],
            diag.lhs4()[i]
        );
    }
    println!("\nempirical M1 (sup of lhs4): {:.6}", diag.m1_estimate());
    println!(
        "z(t)/t decreasing across the last two decades: {}",
        diag.z_ratio_decreasing()
    );

    let out = "diagnostics.csv";
    diag.write_csv(File::create(out).unwrap()).unwrap();
    println!("wrote {out}");
}
