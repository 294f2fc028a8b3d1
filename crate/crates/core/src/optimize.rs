//! Grid search with golden-section refinement, for maxima of smooth
//! functions of one angle.

/// Result of a one-dimensional maximization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
    /// Convergence gap of the refinement that produced `value`.
    pub gap: f64,
}

/// How many grid local maxima are refined.
const REFINED_PEAKS: usize = 4;
/// Golden-section stops once the bracket is this narrow.
const BRACKET_WIDTH: f64 = 1e-10;

/// Maximizes `f` over `[lo, hi]` sampled at `n` points, then refines the
/// best grid local maxima by golden-section search on the neighbouring
/// cells. With `periodic`, `hi` is identified with `lo` and is not sampled.
///
/// Ties keep the smallest argument.
pub fn maximize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, periodic: bool) -> Maximum {
    let n = n.max(3);
    let step = if periodic { (hi - lo) / n as f64 } else { (hi - lo) / (n - 1) as f64 };
    let values: Vec<f64> = (0..n).map(|k| f(lo + step * k as f64)).collect();

    let mut best = Maximum { arg: lo, value: values[0], gap: 0.0 };
    for (k, &v) in values.iter().enumerate() {
        if v > best.value {
            best = Maximum { arg: lo + step * k as f64, value: v, gap: 0.0 };
        }
    }

    let neighbour = |k: usize, d: isize| -> Option<usize> {
        let j = k as isize + d;
        if periodic {
            Some(j.rem_euclid(n as isize) as usize)
        } else if j < 0 || j >= n as isize {
            None
        } else {
            Some(j as usize)
        }
    };
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&k| {
            let left = neighbour(k, -1).map_or(true, |j| values[k] >= values[j]);
            let right = neighbour(k, 1).map_or(true, |j| values[k] >= values[j]);
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(REFINED_PEAKS);

    for k in peaks {
        let centre = lo + step * k as f64;
        let mut a = centre - step;
        let mut b = centre + step;
        if !periodic {
            a = a.max(lo);
            b = b.min(hi);
        }
        let m = golden_section(&f, a, b);
        if m.value > best.value {
            best = m;
        } else if best.gap == 0.0 && (m.arg - best.arg).abs() < step {
            best.gap = m.gap;
        }
    }
    if periodic {
        best.arg = lo + (best.arg - lo).rem_euclid(hi - lo);
    }
    best
}

/// Golden-section search for a maximum in `[a, b]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> Maximum {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > BRACKET_WIDTH {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let (arg, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    Maximum { arg, value, gap: (fc - fd).abs() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn finds_off_grid_maximum() {
        let m = maximize(|t| (t - 0.123_456_789).cos(), 0.0, TAU, 16, true);
        assert!((m.arg - 0.123_456_789).abs() < 1e-7);
        assert!((m.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_maximum_on_interval() {
        let m = maximize(|t| t, 0.0, PI, 32, false);
        assert!((m.arg - PI).abs() < 1e-9);
    }

    #[test]
    fn picks_global_among_several_peaks() {
        let f = |t: f64| (3.0 * t).cos() + 0.1 * (t - 2.0).cos();
        let m = maximize(f, 0.0, TAU, 64, true);
        let brute = (0..200_000)
            .map(|k| f(TAU * k as f64 / 200_000.0))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(m.value >= brute - 1e-12);
    }

    #[test]
    fn constant_function_keeps_first_argument() {
        let m = maximize(|_| 2.0, 0.0, 1.0, 10, false);
        assert_eq!(m.value, 2.0);
        assert_eq!(m.arg, 0.0);
    }
}
