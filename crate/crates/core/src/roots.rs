//! Bracketed scalar root finding.

/// Bisection on `[a, b]`; `f(a)` and `f(b)` must have opposite signs.
///
/// Stops when the bracket is shorter than `xtol` or `f` vanishes exactly.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Bisection down to `coarse`, then safeguarded Newton steps using `df`.
pub fn bisect_newton<F, D>(f: F, df: D, a: f64, b: f64, xtol: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (lo, hi) = (a.min(b), a.max(b));
    let coarse = (1e-6 * (hi - lo)).max(xtol);
    let mut x = bisect(&f, a, b, coarse);
    for _ in 0..8 {
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let step = f(x) / d;
        let next = x - step;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
        if step.abs() <= xtol {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15);
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        let r = bisect_newton(|x| x * x - 2.0, |x| 2.0 * x, 2.0, 0.0, 1e-15);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }
}
