//! Bracketed scalar root finding shared by the critical-point scan, turning
//! point location and action inversion.

/// Bisection on a sign-changing bracket until the bracket is shorter than `xtol`.
///
/// Returns `None` when `f(a)` and `f(b)` have the same strict sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, xtol: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol || m == a || m == b {
            return Some(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Newton iteration safeguarded by bisection on a bracket `[a, b]` with a sign change.
///
/// `fdf` returns the value and the derivative. Iteration stops when the step
/// falls below `xtol` or the function value vanishes.
pub fn safeguarded_newton<F: Fn(f64) -> (f64, f64)>(
    fdf: F,
    mut a: f64,
    mut b: f64,
    xtol: f64,
) -> Option<f64> {
    let (fa, _) = fdf(a);
    let (fb, _) = fdf(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let rising = fb > 0.0;
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return Some(x);
        }
        if (fx > 0.0) == rising {
            b = x;
        } else {
            a = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx.is_finite() && dfx != 0.0 && newton > a.min(b) && newton < a.max(b) {
            newton
        } else {
            0.5 * (a + b)
        };
        let step = (next - x).abs();
        x = next;
        if step <= xtol || (b - a).abs() <= xtol {
            return Some(x);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_rejects_same_sign() {
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_none());
    }

    #[test]
    fn newton_matches_closed_form() {
        let r = safeguarded_newton(|x| (x.cos() - x, -x.sin() - 1.0), 0.0, 1.0, 1e-15).unwrap();
        assert!((r.cos() - r).abs() < 1e-15);
    }
}
