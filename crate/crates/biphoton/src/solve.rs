use crate::scalar::Real;

/// Outcome of a bracketed scalar root solve.
#[derive(Clone, Copy, Debug)]
pub struct Root<R> {
    pub x: R,
    /// f at the returned point, not at the final bracket edge.
    pub residual: R,
    pub iterations: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveFailure {
    /// The endpoints do not straddle a sign change.
    NoSignChange,
    /// The function produced a non-finite value.
    NonFinite,
}

const MAX_ITER: u32 = 200;

/// Finds a root of `f` inside `[lo, hi]`, where `f(lo)` and `f(hi)`
/// have opposite signs.
///
/// Even iterations try a secant step (falling back to the midpoint when
/// the secant point leaves the bracket); odd iterations bisect
/// unconditionally, so the bracket at least halves every two
/// iterations. The loop runs the bracket down to machine width and
/// returns the evaluated point with the smallest |f| seen, which keeps
/// the residual at the level of the function's own rounding noise.
pub fn solve_bracketed<R: Real>(
    f: impl Fn(R) -> R,
    lo: R,
    hi: R,
) -> Result<Root<R>, SolveFailure> {
    let zero = R::zero();
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() || !fb.is_finite() {
        return Err(SolveFailure::NonFinite);
    }
    if fa == zero {
        return Ok(Root { x: a, residual: zero, iterations: 0 });
    }
    if fb == zero {
        return Ok(Root { x: b, residual: zero, iterations: 0 });
    }
    if (fa > zero) == (fb > zero) {
        return Err(SolveFailure::NoSignChange);
    }

    let (mut best_x, mut best_f) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    let mut iterations = 0;
    for it in 0..MAX_ITER {
        let lo_edge = a.min(b);
        let hi_edge = a.max(b);
        let mid = (a + b) * R::half();
        // No representable point strictly inside the bracket is left.
        if mid <= lo_edge || mid >= hi_edge {
            break;
        }
        let mut x = mid;
        if it % 2 == 0 && fb != fa {
            let s = b - fb * (b - a) / (fb - fa);
            // A NaN secant point fails both comparisons and keeps the midpoint.
            if s > lo_edge && s < hi_edge {
                x = s;
            }
        }
        let fx = f(x);
        iterations = it + 1;
        if !fx.is_finite() {
            return Err(SolveFailure::NonFinite);
        }
        if fx.abs() < best_f.abs() {
            best_x = x;
            best_f = fx;
        }
        if fx == zero {
            return Ok(Root { x, residual: zero, iterations });
        }
        if (fx > zero) == (fa > zero) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Ok(Root { x: best_x, residual: best_f, iterations })
}
