//! Derivative-free 1-D minimization: coarse scan to bracket the best basin,
//! then golden-section refinement. Functions may return +∞ at poles.

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9; // (√5 − 1)/2

/// Golden-section search on [lo, hi], assuming the minimum sits inside.
/// Returns (argmin, min). Robust to plateaus and to f returning +∞.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_GOLDEN * (b - a);
    let mut x2 = a + INV_GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // The interval cannot shrink below the float spacing at its own
    // magnitude, so an absolute xtol finer than that would never be reached;
    // widen it by ~one ulp of the endpoints to guarantee termination.
    while b - a > xtol + 0.5 * f64::EPSILON * (a.abs() + b.abs()) {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_GOLDEN * (b - a);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (a + b);
    let fm = f(xm);
    // pick the best of the three live points
    let mut best = (xm, fm);
    if f1 < best.1 {
        best = (x1, f1);
    }
    if f2 < best.1 {
        best = (x2, f2);
    }
    best
}

/// Scan `n` equispaced points to locate the best basin, then refine it by
/// golden section on the bracketing interval. Handles multimodal functions
/// as long as the global basin is wider than the scan step.
pub fn scan_then_golden<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n: usize,
    xtol: f64,
) -> (f64, f64) {
    debug_assert!(n >= 2 && lo < hi);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best_i = 0usize;
    let mut best_v = f64::INFINITY;
    for i in 0..n {
        let x = lo + step * i as f64;
        let v = f(x);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let a = lo + step * best_i.saturating_sub(1) as f64;
    let b = (lo + step * (best_i + 1) as f64).min(hi);
    let (x, v) = golden_min(&f, a, b, xtol);
    if v <= best_v {
        (x, v)
    } else {
        (lo + step * best_i as f64, best_v)
    }
}

/// Minimize a periodic function of the angle over [0, 2π): dense grid, then
/// golden refinement around the best grid point (wrapping at the seam).
/// Returns (θ*, f(θ*)).
pub fn min_on_circle<F: Fn(f64) -> f64>(f: F, grid: usize) -> (f64, f64) {
    debug_assert!(grid >= 8);
    let two_pi = std::f64::consts::TAU;
    let step = two_pi / grid as f64;
    let mut best_i = 0usize;
    let mut best_v = f64::INFINITY;
    for i in 0..grid {
        let v = f(step * i as f64);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let center = step * best_i as f64;
    // search the two adjacent cells; evaluate f with the angle wrapped
    let (x, v) = golden_min(
        |t| f(t.rem_euclid(two_pi)),
        center - step,
        center + step,
        1e-12,
    );
    if v <= best_v {
        (x.rem_euclid(two_pi), v)
    } else {
        (center, best_v)
    }
}
