use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the crate is generic over.
///
/// Blanket-implemented for anything sufficiently float-like, which in
/// practice means `f32` and `f64`. Accuracy statements in the docs and
/// the test suite assume `f64`; the `f32` instantiation exists for
/// size and speed experiments.
pub trait Real:
    Float
    + FromPrimitive
    + NumAssign
    + core::fmt::Debug
    + core::fmt::Display
    + core::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
    /// Pulls an `f64` literal into the scalar type.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal not representable in this scalar type")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn pi() -> Self {
        Self::lit(core::f64::consts::PI)
    }

    fn tau() -> Self {
        Self::lit(core::f64::consts::TAU)
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + NumAssign
        + core::fmt::Debug
        + core::fmt::Display
        + core::fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

/// sin(x)/x continued through the origin.
pub fn sinc<R: Real>(x: R) -> R {
    if x == R::zero() {
        R::one()
    } else {
        x.sin() / x
    }
}

/// Wraps an angle into [0, 2pi).
pub fn wrap_angle<R: Real>(phi: R) -> R {
    let tau = R::tau();
    let r = phi % tau;
    if r < R::zero() {
        r + tau
    } else {
        r
    }
}
