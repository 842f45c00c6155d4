//! One-dimensional minimisation and root finding used to cross-check the
//! closed-form operating points.

/// Minimiser of `f` over `[lo, hi]` in logarithmic coordinates.
///
/// A coarse log grid brackets the minimum, golden-section search refines it.
/// Returns `(argmin, min)`.
pub fn minimize_log<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> (f64, f64) {
    assert!(lo > 0.0 && hi > lo, "minimize_log needs 0 < lo < hi");
    let (a, b) = (lo.ln(), hi.ln());
    let g = |u: f64| f(u.exp());
    let u = golden(&g, a, b, 200);
    (u.exp(), g(u))
}

/// Grid-bracketed golden-section search on `[a, b]`, returning the argmin.
pub fn golden<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, grid: usize) -> f64 {
    let step = (b - a) / grid as f64;
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for i in 0..=grid {
        let v = f(a + step * i as f64);
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    let mut lo = a + step * best.saturating_sub(1) as f64;
    let mut hi = (a + step * (best + 1) as f64).min(b);

    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (hi - lo).abs() <= 1e-14 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        x1
    } else {
        x2
    }
}

/// Root of a monotone function by bisection; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = f(lo);
    if flo == 0.0 {
        return Some(lo);
    }
    if flo.signum() == f(hi).signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_log_minimum() {
        let (x, v) = minimize_log(|x| x + 4.0 / x, 1e-6, 1e6);
        assert!((x - 2.0).abs() < 1e-7);
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn bisects() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        assert!(bisect(|x| x * x + 1.0, 0.0, 2.0).is_none());
    }
}
