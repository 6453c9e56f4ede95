//! Adaptive Gauss–Kronrod quadrature on finite panels.
//!
//! The integrands handled here (Bihari comparison integrands, the spectral
//! representation of the Mittag–Leffler function) are smooth on the interior
//! of their panels, so a G7/K15 pair with bisection on the worst panel is
//! enough to reach relative targets around 1e-12.

/// 15-point Kronrod nodes on [0, 1] of the symmetric G7/K15 pair
/// (positive half; the negative half mirrors it).
const KRONROD_NODES: [f64; 8] = [
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
];

/// 7-point Gauss weights for the nodes at even Kronrod indices.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
];

/// One G7/K15 evaluation on [a, b]: returns (kronrod value, |K15 − G7|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kronrod = KRONROD_WEIGHTS[0] * fc;
    let mut gauss = GAUSS_WEIGHTS[0] * fc;
    for i in 1..8 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 0 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Integrate `f` over [a, b] adaptively to a relative target `rel_tol`
/// (with `abs_tol` as a floor for integrals near zero).
///
/// Panels are bisected worst-first; the recursion depth is bounded, and the
/// returned value is the best available estimate even if the bound is hit,
/// which matches how the callers use it (their tolerances are far looser
/// than the quadrature target).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }
    let (value, error) = gk15(f, a, b);
    let mut panels = vec![Panel { a, b, value, error }];
    for _ in 0..52 {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        if err <= rel_tol * total.abs() + abs_tol {
            break;
        }
        // bisect the worst panel
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval no longer splittable in f64; keep the estimate
            let (value, error) = gk15(f, a, b);
            panels.push(Panel { a, b, value, error: 0.0 * error });
            continue;
        }
        let (v1, e1) = gk15(f, a, mid);
        let (v2, e2) = gk15(f, mid, b);
        panels.push(Panel { a, b: mid, value: v1, error: e1 });
        panels.push(Panel { a: mid, b, value: v2, error: e2 });
        if panels.len() > 4000 {
            break;
        }
    }
    panels.iter().map(|p| p.value).sum()
}
