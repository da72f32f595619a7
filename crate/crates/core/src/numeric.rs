//! Small numerical helpers: monotone bisection and adaptive Simpson
//! quadrature.

/// Smallest `x` in `[lo, hi]` (to within `tol`) with `pred(x)` true, for a
/// predicate that is false then true along the interval. Returns `hi` if the
/// predicate never flips.
pub fn bisect_first_true<F>(mut lo: f64, mut hi: f64, tol: f64, mut pred: F) -> f64
where
    F: FnMut(f64) -> bool,
{
    if pred(lo) {
        return lo;
    }
    // 200 halvings exhaust f64 resolution on any finite interval
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_threshold() {
        let x = bisect_first_true(0.0, 10.0, 1e-10, |x| x * x >= 2.0);
        assert!((x - core::f64::consts::SQRT_2).abs() < 1e-9);
        assert_eq!(bisect_first_true(1.0, 2.0, 1e-9, |_| true), 1.0);
        assert_eq!(bisect_first_true(1.0, 2.0, 1e-9, |_| false), 2.0);
    }

    #[test]
    fn simpson_polynomials_and_sqrt() {
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-10);
        let v = integrate(libm::sqrt, 0.0, 1.0, 1e-10);
        assert!((v - 2.0 / 3.0).abs() < 1e-8);
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-9), 0.0);
    }
}
