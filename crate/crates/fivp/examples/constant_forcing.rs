//! Solve the constant-forcing problem, whose exact solution
//! `x(t) = x0 + (f0/alpha) t^alpha` makes it the basic solver oracle.

use fivp::problems::ProblemSpec;
use fivp::solver::solve_step;
use fivp::Mesh;

fn main() {
    for alpha in [0.3, 0.5, 0.8] {
        let problem = ProblemSpec::constant(1.0, 2.0, alpha).unwrap();
        let mesh = Mesh::graded_for_order(10.0, 2048, alpha).unwrap();
        let path = solve_step(&problem, &mesh).unwrap();
        let err = path.max_relative_error(|t| problem.exact_solution(t).unwrap());
        let worst_residual = path.residuals().iter().cloned().fold(0.0, f64::max);
        println!(
            "alpha = {alpha}: x(10) = {:.12} (exact {:.12}), max rel err = {err:.2e}, \
             max residual = {worst_residual:.2e}",
            path.values().last().unwrap(),
            problem.exact_solution(10.0).unwrap()
        );
    }
    println!("\nproduct integration is exact for forcing constant in x:");
    println!("the only error left is floating-point rounding.");
}
