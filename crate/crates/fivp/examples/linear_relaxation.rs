//! Fractional linear relaxation: the solution decays like the
//! Mittag–Leffler function E_alpha(-(t/tau0)^alpha) ~ t^{-alpha}, much
//! slower than any exponential.

use fivp::asymptotics::mittag_leffler;
use fivp::problems::ProblemSpec;
use fivp::solver::solve_step;
use fivp::Mesh;

fn main() {
    let alpha = 0.5;
    let tau0 = 1.0;
    let problem = ProblemSpec::linear_relaxation(1.0, tau0, alpha).unwrap();
    let mesh = Mesh::graded_for_order(5.0, 2048, alpha).unwrap();
    let path = solve_step(&problem, &mesh).unwrap();

    println!("   t      solver          E_1/2(-sqrt(t))   rel err");
    for target in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let (i, &t) = path
            .times()
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - target).abs().total_cmp(&(b.1 - target).abs()))
            .unwrap();
        let exact = mittag_leffler(alpha, -(t / tau0).powf(alpha)).unwrap();
        let x = path.values()[i];
        println!(
            "{t:7.3}  {x:.12}  {exact:.12}  {:.2e}",
            ((x - exact) / exact).abs()
        );
    }
    let err = path.max_relative_error(|t| problem.exact_solution(t).unwrap());
    println!("\nmax relative error on the whole path: {err:.2e}");
    println!("(compare with exponential decay: e^-5 = {:.2e}, E_1/2(-sqrt 5) = {:.4})",
        (-5.0f64).exp(),
        mittag_leffler(alpha, -(5.0f64).sqrt()).unwrap()
    );
}
