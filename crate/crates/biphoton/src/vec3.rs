use core::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

/// Real 3-vector in the crystal frame (x, y transverse; z along the pump).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3<R> {
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: Real> Vec3<R> {
    pub fn new(x: R, y: R, z: R) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(R::zero(), R::zero(), R::zero())
    }

    pub fn unit_x() -> Self {
        Vec3::new(R::one(), R::zero(), R::zero())
    }

    pub fn unit_y() -> Self {
        Vec3::new(R::zero(), R::one(), R::zero())
    }

    pub fn unit_z() -> Self {
        Vec3::new(R::zero(), R::zero(), R::one())
    }

    pub fn dot(self, rhs: Self) -> R {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn cross(self, rhs: Self) -> Self {
        Vec3::new(
            self.y * rhs.z - self.z * rhs.y,
            self.z * rhs.x - self.x * rhs.z,
            self.x * rhs.y - self.y * rhs.x,
        )
    }

    pub fn norm_sq(self) -> R {
        self.dot(self)
    }

    pub fn norm(self) -> R {
        self.norm_sq().sqrt()
    }

    /// Unit vector along `self`; caller guarantees a nonzero input.
    pub fn normalized(self) -> Self {
        self * self.norm().recip()
    }

    /// Reflection off a side wall normal to y.
    pub fn mirror_y(self) -> Self {
        Vec3::new(self.x, -self.y, self.z)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl<R: Real> Add for Vec3<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<R: Real> Sub for Vec3<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<R: Real> Neg for Vec3<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<R: Real> Mul<R> for Vec3<R> {
    type Output = Self;
    fn mul(self, s: R) -> Self {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}
