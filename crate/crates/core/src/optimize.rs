//! One-dimensional optimization on a closed interval: a dense grid locates
//! the basin, golden-section search refines it.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarOptimum {
    pub t: f64,
    pub value: f64,
}

/// Golden-section minimization of `f` on `[lo, hi]` until the bracket is
/// narrower than `xtol`. Returns the best point evaluated.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> ScalarOptimum {
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > xtol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        if x1 >= x2 {
            break;
        }
    }
    if f1 <= f2 {
        ScalarOptimum { t: x1, value: f1 }
    } else {
        ScalarOptimum { t: x2, value: f2 }
    }
}

/// Minimizes `f` over `[lo, hi]`: evaluates `grid_points` evenly spaced
/// points plus any `extra` candidates inside the interval, then runs golden
/// section between the neighbours of the best candidate.
pub fn grid_golden_minimize<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    extra: &[f64],
    xtol: f64,
) -> ScalarOptimum {
    let n = grid_points.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let mut ts: Vec<f64> = (0..n).map(|i| if i + 1 == n { hi } else { lo + step * i as f64 }).collect();
    ts.extend(extra.iter().copied().filter(|t| (lo..=hi).contains(t)));
    ts.sort_by(f64::total_cmp);
    ts.dedup();

    let values: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] || values[best].is_nan() {
            best = i;
        }
    }
    let grid_best = ScalarOptimum { t: ts[best], value: values[best] };
    let left = ts[best.saturating_sub(1)];
    let right = ts[(best + 1).min(ts.len() - 1)];
    let refined = golden_section(&f, left, right, xtol);
    if refined.value < grid_best.value {
        refined
    } else {
        grid_best
    }
}

/// Maximizing counterpart of [`grid_golden_minimize`].
pub fn grid_golden_maximize<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    extra: &[f64],
    xtol: f64,
) -> ScalarOptimum {
    let m = grid_golden_minimize(|t| -f(t), lo, hi, grid_points, extra, xtol);
    ScalarOptimum { t: m.t, value: -m.value }
}
