//! Tail growth-exponent estimation and the decade-ratio test that
//! operationalizes `x(t) = o(t^q)` on finite data.

use std::io::Write as IoWrite;

use serde::Serialize;

use super::AsymptoticsError;
use crate::manifest::fmt_float;
use crate::solver::SolutionPath;

/// Least-squares fit of `ln x` against `ln t` over a window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentFit {
    pub exponent: f64,
    /// Intercept of the log-log line, i.e. `ln c` for `x ≈ c t^exponent`.
    pub intercept: f64,
    pub rms_residual: f64,
    pub window: (f64, f64),
    pub n_points: usize,
}

/// Fit the tail growth exponent on path nodes inside `window = (lo, hi)`.
/// The window must span at least two decades and contain only positive
/// solution values.
pub fn fit_growth_exponent(
    path: &SolutionPath,
    window: (f64, f64),
) -> Result<ExponentFit, AsymptoticsError> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) || hi / lo < 100.0 * (1.0 - 1e-12) {
        return Err(AsymptoticsError::WindowTooShort(format!(
            "window ({lo}, {hi}) spans {:.3} decades, need >= 2",
            if lo > 0.0 { (hi / lo).log10() } else { f64::NEG_INFINITY }
        )));
    }
    if hi > path.t_end() * (1.0 + 1e-12) {
        return Err(AsymptoticsError::WindowTooShort(format!(
            "window end {hi} exceeds path horizon {}",
            path.t_end()
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &x) in path.times().iter().zip(path.values()) {
        if t < lo || t > hi {
            continue;
        }
        if x <= 0.0 {
            return Err(AsymptoticsError::NonpositiveValues { t });
        }
        xs.push(t.ln());
        ys.push(x.ln());
    }
    let n = xs.len();
    if n < 4 {
        return Err(AsymptoticsError::WindowTooShort(format!(
            "only {n} nodes inside window, need >= 4"
        )));
    }
    let nf = n as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let mx = sx / nf;
    let my = sy / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (exponent * x + intercept);
            r * r
        })
        .sum();
    Ok(ExponentFit {
        exponent,
        intercept,
        rms_residual: (ss_res / nf).sqrt(),
        window,
        n_points: n,
    })
}

/// Maximum of `x(t)/t^q` over one decade.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecadeMax {
    pub decade: usize,
    pub t_lo: f64,
    pub t_hi: f64,
    pub max_ratio: f64,
}

/// Result of the decade-ratio test for `x(t) = o(t^q)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpperEstimate {
    pub exponent: f64,
    pub pass: bool,
    pub strictly_decreasing_last3: bool,
    pub final_below_half_first: bool,
    pub decades: Vec<DecadeMax>,
}

impl UpperEstimate {
    /// CSV trace with columns `decade,maxRatio`.
    pub fn write_csv<W: IoWrite>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "decade,maxRatio")?;
        for d in &self.decades {
            writeln!(out, "{},{}", d.decade, fmt_float(d.max_ratio))?;
        }
        Ok(())
    }
}

/// Finite proxy for `x(t) = o(t^q)`: split `[1, T]` into decades
/// `[10^k, 10^{k+1})`, take the maximum of `x(t)/t^q` over each, and pass
/// iff the maxima are strictly decreasing over the last three decades AND
/// the final-decade maximum is below half the first-decade maximum.
///
/// A path that grows exactly like `t^q` keeps its decade maxima constant
/// and fails both clauses, so the proxy cannot over-claim at the boundary
/// exponent.
pub fn verify_upper_estimate(
    path: &SolutionPath,
    exponent: f64,
) -> Result<UpperEstimate, AsymptoticsError> {
    let t_end = path.t_end();
    let n_decades = (t_end.log10() + 1e-9).floor() as i64;
    if n_decades < 3 {
        return Err(AsymptoticsError::HorizonTooShort(format!(
            "need >= 3 decades beyond t = 1, horizon is {t_end}"
        )));
    }
    let n_decades = n_decades as usize;
    let mut decades = Vec::with_capacity(n_decades);
    for k in 0..n_decades {
        let lo = 10f64.powi(k as i32);
        let last = k + 1 == n_decades;
        let hi = if last { t_end } else { 10f64.powi(k as i32 + 1) };
        let mut max_ratio = f64::NEG_INFINITY;
        for (&t, &x) in path.times().iter().zip(path.values()) {
            let inside = t >= lo && if last { t <= hi * (1.0 + 1e-12) } else { t < hi };
            if inside {
                max_ratio = max_ratio.max(x / t.powf(exponent));
            }
        }
        if !max_ratio.is_finite() {
            return Err(AsymptoticsError::HorizonTooShort(format!(
                "no path nodes inside decade [{lo}, {hi})"
            )));
        }
        decades.push(DecadeMax { decade: k, t_lo: lo, t_hi: hi, max_ratio });
    }
    let last3 = &decades[n_decades - 3..];
    let strictly_decreasing_last3 =
        last3[0].max_ratio > last3[1].max_ratio && last3[1].max_ratio > last3[2].max_ratio;
    let final_below_half_first =
        decades[n_decades - 1].max_ratio < 0.5 * decades[0].max_ratio;
    Ok(UpperEstimate {
        exponent,
        pass: strictly_decreasing_last3 && final_below_half_first,
        strictly_decreasing_last3,
        final_below_half_first,
        decades,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn power_path(c: f64, q: f64, t_end: f64, per_decade: usize) -> SolutionPath {
        let lo = 1e-2f64;
        let n = ((t_end / lo).log10() * per_decade as f64).round() as usize;
        let times: Vec<f64> = (0..=n)
            .map(|i| lo * 10f64.powf(i as f64 / per_decade as f64))
            .collect();
        let values: Vec<f64> = times.iter().map(|&t| c * t.powf(q)).collect();
        SolutionPath::from_samples(times, values, 0.5).unwrap()
    }

    #[test]
    fn exact_power_law_recovered() {
        let path = power_path(3.0, 0.4, 1e6, 16);
        let fit = fit_growth_exponent(&path, (1.0, 1e6)).unwrap();
        assert_relative_eq!(fit.exponent, 0.4, epsilon = 1e-10);
        assert_relative_eq!(fit.intercept, 3f64.ln(), epsilon = 1e-9);
        assert!(fit.rms_residual < 1e-12);
    }

    #[test]
    fn noisy_power_law_recovered_within_a_percent() {
        // 1% multiplicative noise
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let clean = power_path(2.0, 0.7, 1e6, 32);
        let values: Vec<f64> = clean
            .values()
            .iter()
            .map(|&v| v * (1.0 + 0.01 * (rng.gen::<f64>() * 2.0 - 1.0)))
            .collect();
        let noisy =
            SolutionPath::from_samples(clean.times().to_vec(), values, 0.5).unwrap();
        let fit = fit_growth_exponent(&noisy, (1.0, 1e6)).unwrap();
        assert!((fit.exponent - 0.7).abs() < 0.01, "exponent {}", fit.exponent);
    }

    #[test]
    fn additive_offset_biases_the_fit_low_but_within_slack() {
        // x = 1 + 4 sqrt(t) (the constant-forcing closed form): the
        // additive 1 drags the fitted exponent below 0.5, but on
        // [1e2, 1e4] it stays within 0.02
        let per_decade = 32;
        let times: Vec<f64> = (0..=(4 * per_decade))
            .map(|i| 10f64.powf(i as f64 / per_decade as f64))
            .collect();
        let values: Vec<f64> = times.iter().map(|&t| 1.0 + 4.0 * t.sqrt()).collect();
        let path = SolutionPath::from_samples(times, values, 0.5).unwrap();
        let fit = fit_growth_exponent(&path, (1e2, 1e4)).unwrap();
        assert!(fit.exponent < 0.5, "offset must bias low, got {}", fit.exponent);
        assert!((fit.exponent - 0.5).abs() < 0.02, "exponent {}", fit.exponent);
    }

    #[test]
    fn window_validation() {
        let path = power_path(1.0, 0.5, 1e4, 16);
        assert!(matches!(
            fit_growth_exponent(&path, (10.0, 500.0)),
            Err(AsymptoticsError::WindowTooShort(_))
        ));
        assert!(matches!(
            fit_growth_exponent(&path, (1.0, 1e6)),
            Err(AsymptoticsError::WindowTooShort(_))
        ));
    }

    #[test]
    fn sign_change_rejected() {
        let times: Vec<f64> = (1..=600).map(|i| i as f64).collect();
        let values: Vec<f64> = times.iter().map(|&t| t - 300.5).collect();
        let path = SolutionPath::from_samples(times, values, 0.5).unwrap();
        assert!(matches!(
            fit_growth_exponent(&path, (1.0, 600.0)),
            Err(AsymptoticsError::NonpositiveValues { .. })
        ));
    }

    #[test]
    fn upper_estimate_passes_above_the_true_exponent() {
        // x = t^0.3 tested against 0.5: ratio decays a full decade-power
        // of 0.2 per decade
        let path = power_path(1.0, 0.3, 1e4, 16);
        let check = verify_upper_estimate(&path, 0.5).unwrap();
        assert!(check.pass, "{check:?}");
    }

    #[test]
    fn upper_estimate_fails_at_the_true_exponent() {
        let path = power_path(1.0, 0.3, 1e4, 16);
        let check = verify_upper_estimate(&path, 0.3).unwrap();
        assert!(!check.strictly_decreasing_last3);
        assert!(!check.pass);
    }

    #[test]
    fn upper_estimate_needs_three_decades() {
        let path = power_path(1.0, 0.3, 100.0, 16);
        assert!(matches!(
            verify_upper_estimate(&path, 0.5),
            Err(AsymptoticsError::HorizonTooShort(_))
        ));
    }

    #[test]
    fn csv_trace_shape() {
        let path = power_path(1.0, 0.3, 1e4, 16);
        let check = verify_upper_estimate(&path, 0.5).unwrap();
        let mut buf = Vec::new();
        check.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("decade,maxRatio\n"));
        assert_eq!(text.lines().count(), 1 + check.decades.len());
    }
}
