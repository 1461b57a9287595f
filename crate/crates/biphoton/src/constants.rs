use crate::scalar::Real;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;

pub fn speed_of_light<R: Real>() -> R {
    R::lit(SPEED_OF_LIGHT)
}

pub fn vacuum_permittivity<R: Real>() -> R {
    R::lit(VACUUM_PERMITTIVITY)
}

pub fn hbar<R: Real>() -> R {
    R::lit(HBAR)
}

/// Vacuum wave number of an angular frequency.
pub fn vacuum_wavenumber<R: Real>(omega: R) -> R {
    omega / speed_of_light::<R>()
}
