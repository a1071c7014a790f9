//! One-dimensional golden-section search.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimizes `f` on `[a, b]` assuming it is unimodal there. Returns `(x, f(x))`.
///
/// Stops when the bracket is shorter than `tol` or after `max_iter` steps.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..max_iter {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Golden-section refinement around a coarse minimizer `x0` (value `f0`) inside `[a, b]`.
///
/// Never returns anything worse than the coarse point.
pub fn refine_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, x0: f64, f0: f64) -> (f64, f64) {
    let (x, fx) = golden_section_min(&mut f, a, b, 1e-13, 200);
    if fx < f0 {
        (x, fx)
    } else {
        (x0, f0)
    }
}

/// Maximizing counterpart of [`refine_min`].
pub fn refine_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, x0: f64, f0: f64) -> (f64, f64) {
    let (x, fx) = refine_min(|t| -f(t), a, b, x0, -f0);
    (x, -fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let (x, fx) = golden_section_min(|x| (x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-12, 500);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn finds_kink_minimum() {
        let (x, _) = golden_section_min(|x| (x - 0.123).abs(), 0.0, 1.0, 1e-13, 500);
        assert!((x - 0.123).abs() < 1e-12);
    }

    #[test]
    fn refine_keeps_coarse_point() {
        // not unimodal on the bracket: golden search may miss, coarse value survives
        let f = |x: f64| if x == 0.5 { -10.0 } else { x };
        let (x, fx) = refine_min(f, 0.0, 1.0, 0.5, -10.0);
        assert_eq!((x, fx), (0.5, -10.0));
        let (x, fx) = refine_max(|x| -(x - 0.25) * (x - 0.25), 0.0, 1.0, 0.0, -0.0625);
        assert!((x - 0.25).abs() < 1e-6 && fx.abs() < 1e-12);
    }
}
