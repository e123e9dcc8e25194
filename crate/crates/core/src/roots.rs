//! Safeguarded Newton-bisection on a sign-changing bracket.

/// Converged root with the final bracket that certifies it. `x` is the
/// iterate with the smallest `|g|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Root {
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
}

const MAX_ITER: usize = 2000;

/// Absolute bracket width below which a root at the origin is accepted.
const MIN_SCALE: f64 = 1e-300;

/// Root of `g` in `[a, b]` where `g(a)` and `g(b)` differ in sign (or vanish).
///
/// `g` returns `(value, derivative)`. Newton steps are taken when they land
/// strictly inside the bracket and shrink it fast enough; otherwise the step
/// is a bisection. Stops once the bracket is narrower than `tol * |x|`, when
/// `g` vanishes, or when the bracket endpoints are adjacent floats.
pub(crate) fn newton_bisect<G>(mut g: G, a: f64, b: f64, tol: f64) -> Root
where
    G: FnMut(f64) -> (f64, f64),
{
    let (ga, _) = g(a);
    if ga == 0.0 {
        return Root { x: a, lo: a, hi: a };
    }
    let (gb, _) = g(b);
    if gb == 0.0 {
        return Root { x: b, lo: b, hi: b };
    }
    debug_assert!(ga.signum() != gb.signum(), "bracket does not straddle a root");
    // xl: side where g < 0, xh: side where g > 0
    let (mut xl, mut xh) = if ga < 0.0 { (a, b) } else { (b, a) };
    let mut x = 0.5 * (a + b);
    let mut dx_old = (b - a).abs();
    let mut dx = dx_old;
    let (mut best, mut best_g) = if ga.abs() < gb.abs() {
        (a, ga.abs())
    } else {
        (b, gb.abs())
    };

    for _ in 0..MAX_ITER {
        let (gx, dgx) = g(x);
        if gx == 0.0 {
            return Root { x, lo: x, hi: x };
        }
        if gx.abs() <= best_g {
            best = x;
            best_g = gx.abs();
        }
        if gx < 0.0 {
            xl = x;
        } else {
            xh = x;
        }
        let (lo, hi) = if xl < xh { (xl, xh) } else { (xh, xl) };
        let scale = tol * x.abs().max(MIN_SCALE);
        if hi - lo <= scale {
            return Root { x: best, lo, hi };
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Root { x: best, lo, hi };
        }

        let newton = x - gx / dgx;
        let fast = newton.is_finite() && newton > lo && newton < hi && (2.0 * gx).abs() <= (dx_old * dgx).abs();
        dx_old = dx;
        let mut next = if fast { newton } else { mid };
        dx = next - x;

        if fast && dx.abs() < 0.5 * scale {
            // Newton has converged; probe half a tolerance past the
            // step to certify the bracket width.
            let probe = x + 0.5 * scale * dx.signum();
            if probe > lo && probe < hi {
                next = probe;
                dx = next - x;
            } else {
                next = mid;
                dx = next - x;
            }
        }
        x = next;
    }
    let (lo, hi) = if xl < xh { (xl, xh) } else { (xh, xl) };
    Root { x: best, lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let r = newton_bisect(|x| (x * x - 2.0, 2.0 * x), 0.0, 2.0, 1e-15);
        assert!((r.x - core::f64::consts::SQRT_2).abs() < 4e-16);
        assert!(r.hi - r.lo <= 1e-15 * 2.0);
        assert!(r.lo <= r.x && r.x <= r.hi);
    }

    #[test]
    fn flat_derivative_falls_back_to_bisection() {
        // derivative lies about the slope; bisection must still converge
        let r = newton_bisect(|x| (x * x * x, 0.0), -1.0, 3.0, 1e-14);
        assert!(r.x.abs() < 1e-13);
    }

    #[test]
    fn endpoint_root() {
        let r = newton_bisect(|x| (x - 1.0, 1.0), 1.0, 2.0, 1e-14);
        assert_eq!(r.x, 1.0);
    }

    #[test]
    fn reversed_orientation() {
        let r = newton_bisect(|x| (libm::cos(x) - x, -libm::sin(x) - 1.0), 0.0, 1.0, 1e-15);
        assert!((r.x - 0.739_085_133_215_160_6).abs() < 3e-16);
    }
}
