//! Product-integration weights for the kernel `(t_n − s)^{α−1}` against a
//! piecewise-linear interpolant.
//!
//! On a cell `[t_j, t_{j+1}]` the two moment integrals
//!
//! ```text
//! M0 = ∫ (t_n − s)^{α−1} ds,   M1 = ∫ (t_n − s)^{α−1} (s − t_j) ds
//! ```
//!
//! have closed forms in `u = t_n − t_j`, `x = h/u`:
//! `M0 = u^α A(x)/α` and `M1 = u^{1+α} P(x)/(α(1+α))` with
//! `A(x) = 1 − (1−x)^α` and `P(x) = 1 − (1−x)^α (1 + αx)`.
//! Evaluating `A` and `P` naively as differences loses up to half the
//! mantissa for the far-field cells (`x ≪ 1`) and puts a rounding floor
//! around 1e-7 under the long-horizon sums, so both are computed through
//! `expm1`/`log1p` (and, for `α = 1/2`, through an algebraic form with no
//! cancellation at all).

/// Weight contribution of one cell: the integral over `[t_j, t_{j+1}]`
/// equals `left · f(t_j) + right · f(t_{j+1})` for the linear interpolant.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CellWeights {
    pub left: f64,
    pub right: f64,
}

/// Weights for the cell at distance `u = t_n − t_j` of width `h`.
///
/// Requires `0 < h <= u`; `h = u` is the cell touching the kernel
/// singularity.
#[inline]
pub(crate) fn cell_weights(u: f64, h: f64, alpha: f64) -> CellWeights {
    debug_assert!(u > 0.0 && h > 0.0 && h <= u * (1.0 + 1e-12));
    let x = (h / u).min(1.0);
    if alpha == 0.5 {
        // s = sqrt(1−x): A = x/(1+s), P = x²(2+s)/(2(1+s)²), all positive
        // rational expressions in s — no cancellation anywhere.
        let s = (1.0 - x).max(0.0).sqrt();
        let root_u = u.sqrt();
        let one_plus_s = 1.0 + s;
        let left = root_u * (2.0 * x / (3.0 * one_plus_s * one_plus_s)) * (1.0 + 2.0 * s);
        let right = root_u * (2.0 / 3.0) * x * (2.0 + s) / (one_plus_s * one_plus_s);
        CellWeights { left, right }
    } else {
        // A = −expm1(α ln1p(−x)); P = −expm1(α ln1p(−x) + ln1p(αx)).
        // At x = 1 the logs hit −∞ and both collapse to 1 exactly. For
        // x ≪ 1 the two log terms inside P cancel to O(x²), so P switches
        // to its series there: P = α(1+α)x²[1/2 + (1−α)x/3 + (1−α)(2−α)x²/8 + …].
        let lx = (-x).ln_1p();
        let a = -(alpha * lx).exp_m1();
        let p = if x < 1e-4 {
            alpha
                * (1.0 + alpha)
                * x
                * x
                * (0.5 + (1.0 - alpha) * x * (1.0 / 3.0 + (2.0 - alpha) * x / 8.0))
        } else {
            -(alpha * lx + (alpha * x).ln_1p()).exp_m1()
        };
        let ua = u.powf(alpha);
        let right = ua * p / (alpha * (1.0 + alpha) * x);
        let left = ua * (a / alpha) - right;
        CellWeights { left, right }
    }
}

/// Row `n` of the product-integration weight matrix: `w` such that
/// `Σ_j w[j] φ(t_j) = ∫₀^{t_n} (t_n − s)^{α−1} φ̂(s) ds` exactly for the
/// piecewise-linear interpolant `φ̂`.
pub fn product_weights(nodes: &[f64], alpha: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1 && n < nodes.len(), "row index {n} out of range");
    let tn = nodes[n];
    let mut w = vec![0.0; n + 1];
    for j in 0..n {
        let u = tn - nodes[j];
        let h = nodes[j + 1] - nodes[j];
        let cw = cell_weights(u, h, alpha);
        w[j] += cw.left;
        w[j + 1] += cw.right;
    }
    w
}

/// Neumaier-compensated accumulator for the long kernel sums.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub fn new(init: f64) -> Self {
        Compensated { sum: init, carry: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }
}
