//! Adaptive Gauss-Kronrod quadrature (7-point Gauss / 15-point Kronrod pair)
//! and a composite Simpson rule on uniform grids.

/// Kronrod abscissae on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Gauss weights for the embedded 7-point rule (abscissae XGK[1], XGK[3], ...).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 7/15 panel. Returns (kronrod value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut result_gauss = WG[3] * fc;
    let mut result_kronrod = WGK[7] * fc;

    for k in 0..7 {
        let abscissa = half * XGK[k];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        result_kronrod += WGK[k] * (f1 + f2);
        if k % 2 == 1 {
            result_gauss += WG[k / 2] * (f1 + f2);
        }
    }

    let value = result_kronrod * half;
    let err = ((result_kronrod - result_gauss) * half).abs();
    (value, err)
}

fn adaptive_rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth >= 48 {
        return value;
    }
    let mid = 0.5 * (a + b);
    adaptive_rec(f, a, mid, 0.5 * tol, depth + 1) + adaptive_rec(f, mid, b, 0.5 * tol, depth + 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` by adaptive
/// bisection of Gauss-Kronrod 7/15 panels.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a > b {
        return -adaptive(f, b, a, tol);
    }
    adaptive_rec(&f, a, b, tol, 0)
}

/// Composite Simpson on uniformly spaced samples. With an even sample count the
/// last interval is handled by the trapezoid rule.
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let mut sum = 0.0;
    let pairs = (n - 1) / 2;
    for p in 0..pairs {
        let i = 2 * p;
        sum += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
    }
    if (n - 1) % 2 == 1 {
        // leftover interval
        sum += 0.5 * h * (values[n - 2] + values[n - 1]);
    }
    sum
}
