//! Scalar root finding, quadrature and one-dimensional minimization.
//!
//! Everything here works on plain `Fn(f64) -> f64` closures; the callers own
//! the bracketing logic that is specific to their problem.

/// Bisection for a non-decreasing function `g` with `g(lo) <= 0 <= g(hi)`.
///
/// Stops once the bracket is narrower than `abs_tol + rel_tol * |mid|` or after
/// the bracket can no longer shrink in floating point.
pub fn bisect_increasing<F>(g: F, mut lo: f64, mut hi: f64, abs_tol: f64, rel_tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo <= hi);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if hi - lo <= abs_tol + rel_tol * mid.abs() {
            break;
        }
        let v = g(mid);
        if v == 0.0 {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// The interval is first split into `panels` equal pieces; each piece is
/// refined until the local Richardson estimate falls below its share of
/// `abs_tol + rel_tol * |coarse estimate|`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, panels: usize, rel_tol: f64, abs_tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return 0.0;
    }
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let nodes: Vec<f64> = (0..=panels).map(|i| a + width * i as f64).collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let mids: Vec<f64> = (0..panels).map(|i| f(0.5 * (nodes[i] + nodes[i + 1]))).collect();
    let coarse: f64 = (0..panels).map(|i| simpson(values[i], mids[i], values[i + 1], nodes[i], nodes[i + 1])).sum();
    let tol = (abs_tol + rel_tol * coarse.abs()) / panels as f64;
    (0..panels)
        .map(|i| {
            let whole = simpson(values[i], mids[i], values[i + 1], nodes[i], nodes[i + 1]);
            simpson_rec(&f, nodes[i], nodes[i + 1], values[i], mids[i], values[i + 1], whole, tol, 48)
        })
        .sum()
}

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmin, min)`.
pub fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..500 {
        if hi - lo <= rel_tol * (x1.abs() + x2.abs()) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `n` points spaced evenly in log scale over `[lo, hi]`, both ends included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo);
    if n == 1 {
        return vec![hi];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| if i + 1 == n { hi } else { (a + (b - a) * i as f64 / (n - 1) as f64).exp() }).collect()
}

/// Sum in index order with Neumaier compensation. Reduction order is fixed so
/// results are bit-stable across runs.
pub fn stable_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
