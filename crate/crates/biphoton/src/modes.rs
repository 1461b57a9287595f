//! Eigenmodes of the crystal box: four plane waves locked together by
//! wall reflections, with definite parity under the y mirror.

use num_complex::Complex;

use crate::constants::{hbar, vacuum_permittivity, vacuum_wavenumber};
use crate::crystal::{
    box_phase_integral, kz_ordinary, kz_extraordinary, mirror_kx_e, polarization_vector,
    CrystalConfig, ModeKind,
};
use crate::error::{Error, Result};
use crate::scalar::{wrap_angle, Real};
use crate::vec3::Vec3;

/// Mirror symmetry class of a mode under y -> -y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Base boundary phases of the two x-direction wave families. Even
/// modes repeat them pairwise; odd modes shift the y-reflected partner
/// of each family by pi.
#[derive(Clone, Copy, Debug)]
pub struct ModePhases<R> {
    pub phi1: R,
    pub phi3: R,
}

impl<R: Real> ModePhases<R> {
    pub fn zero() -> Self {
        ModePhases { phi1: R::zero(), phi3: R::zero() }
    }
}

/// One plane-wave constituent of a mode.
///
/// For internal modes `pol` is a unit vector orthogonal to `k` (to
/// rounding). External beam descriptions reuse this type with
/// first-order tilt vectors that are neither unit nor exactly
/// transverse.
#[derive(Clone, Copy, Debug)]
pub struct PlaneWaveComponent<R> {
    pub k: Vec3<R>,
    pub pol: Vec3<R>,
    /// Boundary phase, wrapped into [0, 2pi).
    pub phase: R,
}

/// Four-component eigenmode of the crystal box.
#[derive(Clone, Debug)]
pub struct EigenMode<R> {
    pub kind: ModeKind,
    pub parity: Parity,
    pub omega: R,
    /// (k_mx, k_my) with k_mx >= 0 and k_my > 0.
    pub label: (R, R),
    pub components: [PlaneWaveComponent<R>; 4],
    /// Scale that makes the mode self-product equal hbar omega / 2.
    pub norm_const: R,
}

/// Identity of a mode inside a multi-mode state: branch plus label.
///
/// Labels must be finite; ordering is lexicographic on
/// (kind, k_x, k_y) so the key can index sorted maps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeKey<R> {
    pub kind: ModeKind,
    pub kx: R,
    pub ky: R,
}

impl<R: Real> ModeKey<R> {
    pub fn new(kind: ModeKind, kx: R, ky: R) -> Self {
        ModeKey { kind, kx, ky }
    }
}

impl<R: Real> Eq for ModeKey<R> {}

impl<R: Real> PartialOrd for ModeKey<R> {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: Real> Ord for ModeKey<R> {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.kx.partial_cmp(&other.kx).expect("mode label must be finite"))
            .then_with(|| self.ky.partial_cmp(&other.ky).expect("mode label must be finite"))
    }
}

/// Builds the four-wave eigenmode at a label with default boundary
/// phases (zero base phases).
pub fn build_internal_mode<R: Real>(
    kind: ModeKind,
    k_mx: R,
    k_my: R,
    omega: R,
    parity: Parity,
    crystal: &CrystalConfig<R>,
) -> Result<EigenMode<R>> {
    build_internal_mode_with_phases(kind, k_mx, k_my, omega, parity, ModePhases::zero(), crystal)
}

/// Builds the four-wave eigenmode at a label.
///
/// The label's partial wave (k_mx, k_my, k_z) is joined by its images
/// under the y mirror and under reflection off the x walls. For the
/// ordinary branch the x-reflected wave carries -k_mx; for the
/// extraordinary branch it carries the surface partner -k'_ex, which
/// on a tilted axis differs from -k_mx. A wave with k_mx = 0 never
/// meets the x walls, the four waves collapse pairwise, and the
/// x-reflected component is the wave itself.
pub fn build_internal_mode_with_phases<R: Real>(
    kind: ModeKind,
    k_mx: R,
    k_my: R,
    omega: R,
    parity: Parity,
    phases: ModePhases<R>,
    crystal: &CrystalConfig<R>,
) -> Result<EigenMode<R>> {
    assert!(
        k_mx >= R::zero() && k_my > R::zero(),
        "mode label requires k_mx >= 0 and k_my > 0"
    );
    let zero = R::zero();
    let (kz, back_x) = match kind {
        ModeKind::Ordinary => (kz_ordinary(k_mx, k_my, omega, crystal)?, k_mx),
        ModeKind::Extraordinary => {
            let kz = kz_extraordinary(k_mx, k_my, omega, crystal)?;
            let back = if k_mx == zero {
                zero
            } else {
                mirror_kx_e(kz, k_my, omega, crystal)?
            };
            (kz, back)
        }
    };
    let kvecs = [
        Vec3::new(k_mx, k_my, kz),
        Vec3::new(k_mx, -k_my, kz),
        Vec3::new(-back_x, k_my, kz),
        Vec3::new(-back_x, -k_my, kz),
    ];
    let pi = R::pi();
    let raw_phases = match parity {
        Parity::Even => [phases.phi1, phases.phi1, phases.phi3, phases.phi3],
        Parity::Odd => [phases.phi1, phases.phi1 + pi, phases.phi3, phases.phi3 + pi],
    };
    let mut components = [PlaneWaveComponent {
        k: Vec3::zero(),
        pol: Vec3::zero(),
        phase: zero,
    }; 4];
    for (i, (&k, &phase)) in kvecs.iter().zip(raw_phases.iter()).enumerate() {
        let pol = polarization_vector(kind, k, crystal)?;
        debug_assert!(pol.dot(k).abs() <= R::lit(1e-12) * k.norm());
        components[i] = PlaneWaveComponent { k, pol, phase: wrap_angle(phase) };
    }
    let mut mode = EigenMode {
        kind,
        parity,
        omega,
        label: (k_mx, k_my),
        components,
        norm_const: R::one(),
    };
    let raw = inner_product_unscaled(&mode, &mode, crystal).re;
    assert!(raw > zero, "mode self-product must be positive");
    mode.norm_const = (hbar::<R>() * omega * R::half() / raw).sqrt();
    Ok(mode)
}

/// Dielectric-weighted overlap of two modes over the crystal box.
///
/// Every pair of plane-wave constituents contributes its polarization
/// contraction, the product of effective indices |k|/k0 of the two
/// waves, the conjugated boundary phases, and the box integral of the
/// wave-vector difference, which factors into per-axis sinc terms.
/// Modes normalized by their `norm_const` self-produce hbar omega / 2.
pub fn mode_inner_product<R: Real>(
    m1: &EigenMode<R>,
    m2: &EigenMode<R>,
    crystal: &CrystalConfig<R>,
) -> Complex<R> {
    // Different carrier frequencies are orthogonal through the time
    // average, which the spatial box integral cannot see. The product
    // is defined within one frequency sector and zero across sectors.
    if m1.omega != m2.omega {
        return Complex::new(R::zero(), R::zero());
    }
    let raw = inner_product_unscaled(m1, m2, crystal);
    raw * Complex::new(m1.norm_const * m2.norm_const, R::zero())
}

fn inner_product_unscaled<R: Real>(
    m1: &EigenMode<R>,
    m2: &EigenMode<R>,
    crystal: &CrystalConfig<R>,
) -> Complex<R> {
    let k0_1 = vacuum_wavenumber(m1.omega);
    let k0_2 = vacuum_wavenumber(m2.omega);
    let eps0 = vacuum_permittivity::<R>();
    let mut acc = Complex::new(R::zero(), R::zero());
    for c1 in &m1.components {
        let n1 = c1.k.norm() / k0_1;
        for c2 in &m2.components {
            let n2 = c2.k.norm() / k0_2;
            let geom = box_phase_integral(c1.k - c2.k, crystal);
            let weight = eps0 * n1 * n2 * c1.pol.dot(c2.pol) * geom;
            acc += Complex::from_polar(weight, c1.phase - c2.phase);
        }
    }
    acc
}

/// First-order description of the free-space beam a box mode turns
/// into outside the crystal, at vacuum wave number omega / c.
///
/// The two entries are the +k_y and -k_y plane waves; the second
/// carries the relative boundary phase `phi`. Their `pol` vectors are
/// the first-order tilt brackets: for the ordinary branch a y-like
/// vector picking up an x component proportional to k_y cot(theta) and
/// a compensating z tilt, for the extraordinary branch an x-like
/// vector picking up the matching y component. They are not normalized.
pub fn external_mode<R: Real>(
    kind: ModeKind,
    k_y: R,
    omega: R,
    crystal: &CrystalConfig<R>,
) -> Result<[PlaneWaveComponent<R>; 2]> {
    external_mode_with_phase(kind, k_y, omega, crystal, R::zero())
}

pub fn external_mode_with_phase<R: Real>(
    kind: ModeKind,
    k_y: R,
    omega: R,
    crystal: &CrystalConfig<R>,
    phi: R,
) -> Result<[PlaneWaveComponent<R>; 2]> {
    let k0 = vacuum_wavenumber(omega);
    let rad = k0 * k0 - k_y * k_y;
    if rad <= R::zero() {
        return Err(Error::EvanescentMode { surface: "vacuum" });
    }
    let kz = rad.sqrt();
    let mix = k_y * crystal.theta.cos() / (crystal.theta.sin() * crystal.n_o * k0);
    let tilt = k_y / k0;
    let (pol_plus, pol_minus) = match kind {
        ModeKind::Ordinary => (
            Vec3::new(mix, R::one(), -tilt),
            Vec3::new(-mix, R::one(), tilt),
        ),
        ModeKind::Extraordinary => (
            Vec3::new(R::one(), -mix, R::zero()),
            Vec3::new(R::one(), mix, R::zero()),
        ),
    };
    Ok([
        PlaneWaveComponent {
            k: Vec3::new(R::zero(), k_y, kz),
            pol: pol_plus,
            phase: R::zero(),
        },
        PlaneWaveComponent {
            k: Vec3::new(R::zero(), -k_y, kz),
            pol: pol_minus,
            phase: wrap_angle(phi),
        },
    ])
}
