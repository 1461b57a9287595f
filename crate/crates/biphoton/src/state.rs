//! Two-photon states: the degenerate pair, the plane-pump mode sum,
//! and the Gaussian-pump state on its transverse matching plane.

use num_complex::Complex;

use crate::crystal::{CrystalConfig, ModeKind, slope_coefficients};
use crate::error::{Error, Result};
use crate::modes::{build_internal_mode, Parity};
use crate::phasematch::{matrix_element, mismatch_residual, DegenerateGeometry};
use crate::scalar::Real;
use crate::vec3::Vec3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PumpKind {
    Plane,
    Gaussian,
}

/// Classical pump driving the pair creation, traveling along z.
#[derive(Clone, Copy, Debug)]
pub struct PumpBeam<R> {
    pub kind: PumpKind,
    pub omega_p: R,
    pub k_p: R,
    /// Transverse amplitude width in wave-number space; only meaningful
    /// for a Gaussian pump.
    pub sigma: R,
    pub pol: Vec3<R>,
}

impl<R: Real> PumpBeam<R> {
    pub fn plane(omega_p: R, k_p: R, pol: Vec3<R>) -> Self {
        PumpBeam { kind: PumpKind::Plane, omega_p, k_p, sigma: R::zero(), pol }
    }

    pub fn gaussian(omega_p: R, k_p: R, sigma: R, pol: Vec3<R>) -> Result<Self> {
        if !(sigma > R::zero() && sigma.is_finite()) {
            return Err(Error::InvalidConfig("gaussian pump needs sigma > 0".into()));
        }
        Ok(PumpBeam { kind: PumpKind::Gaussian, omega_p, k_p, sigma, pol })
    }
}

/// One ordinary/extraordinary mode pair and its creation amplitude.
/// Labels are (k_x, k_y); Gaussian states use signed k_x labels.
#[derive(Clone, Copy, Debug)]
pub struct ModePairAmplitude<R> {
    pub label_o: (R, R),
    pub label_e: (R, R),
    pub amp: Complex<R>,
}

/// Transverse lattice the pairs were enumerated on.
#[derive(Clone, Copy, Debug)]
pub struct GridInfo<R> {
    pub dk_x: R,
    pub dk_y: R,
    pub extent_x: R,
    pub extent_y: R,
}

impl<R: Real> GridInfo<R> {
    pub fn point() -> Self {
        GridInfo {
            dk_x: R::zero(),
            dk_y: R::zero(),
            extent_x: R::zero(),
            extent_y: R::zero(),
        }
    }
}

/// Superposition of ordinary/extraordinary pair excitations with
/// amplitudes normalized to unit total weight.
#[derive(Clone, Debug)]
pub struct TwoPhotonState<R> {
    pub pairs: Vec<ModePairAmplitude<R>>,
    pub geometry: DegenerateGeometry<R>,
    pub grid: GridInfo<R>,
}

/// Label lattice for the plane-pump mode enumeration: x labels run
/// 0, dk_x, .., (nx - 1) dk_x; y labels are k_yd + j dk_y for
/// |j| <= ny_half, keeping only positive labels.
#[derive(Clone, Copy, Debug)]
pub struct PlaneWaveGrid<R> {
    pub nx: usize,
    pub ny_half: usize,
    pub dk_x: R,
    pub dk_y: R,
}

/// Offset lattice for the Gaussian-pump state: each free offset axis
/// takes `points` samples across +- span_sigmas * sigma.
#[derive(Clone, Copy, Debug)]
pub struct GaussianGrid<R> {
    pub points: usize,
    pub span_sigmas: R,
}

impl<R: Real> Default for GaussianGrid<R> {
    fn default() -> Self {
        GaussianGrid { points: 33, span_sigmas: R::lit(4.0) }
    }
}

/// The bare degenerate pair: one ordinary mode at (0, k_yd) paired
/// with one extraordinary mode at (0, k_yd), unit amplitude.
pub fn build_degenerate_pair_state<R: Real>(
    geometry: &DegenerateGeometry<R>,
) -> TwoPhotonState<R> {
    let label = (R::zero(), geometry.k_yd);
    TwoPhotonState {
        pairs: vec![ModePairAmplitude {
            label_o: label,
            label_e: label,
            amp: Complex::new(R::one(), R::zero()),
        }],
        geometry: *geometry,
        grid: GridInfo::point(),
    }
}

/// Enumerates even-parity mode pairs on the label lattice around the
/// degenerate point, keeps those whose wave-vector mismatch against
/// the pump stays under one longitudinal lattice spacing 2 pi / L_z,
/// and weights them by the pair-creation matrix element.
///
/// Only the even mirror class is enumerated: mixed classes carry zero
/// amplitude, and at the collapsed k_x = 0 labels the odd-odd pair
/// duplicates the even-even one up to overall sign, so enumerating
/// both would cancel the sum instead of doubling it.
pub fn build_state_planewave<R: Real>(
    pump: &PumpBeam<R>,
    geometry: &DegenerateGeometry<R>,
    crystal: &CrystalConfig<R>,
    grid: &PlaneWaveGrid<R>,
) -> Result<TwoPhotonState<R>> {
    if grid.nx == 0 || grid.dk_x < R::zero() || grid.dk_y <= R::zero() {
        return Err(Error::InvalidConfig(
            "plane-wave grid needs nx >= 1, dk_x >= 0, dk_y > 0".into(),
        ));
    }
    let omega_s = geometry.omega_s;
    let mut labels = Vec::new();
    for ix in 0..grid.nx {
        let kx = grid.dk_x * R::from_usize(ix).unwrap();
        let j_lo = -(grid.ny_half as isize);
        for j in j_lo..=(grid.ny_half as isize) {
            let ky = geometry.k_yd + grid.dk_y * R::lit(j as f64);
            if ky > R::zero() {
                labels.push((kx, ky));
            }
        }
    }
    let mut modes_o = Vec::with_capacity(labels.len());
    let mut modes_e = Vec::with_capacity(labels.len());
    for &(kx, ky) in &labels {
        modes_o.push(build_internal_mode(ModeKind::Ordinary, kx, ky, omega_s, Parity::Even, crystal)?);
        modes_e.push(build_internal_mode(ModeKind::Extraordinary, kx, ky, omega_s, Parity::Even, crystal)?);
    }
    let window = R::tau() / crystal.l_z;
    let mut pairs = Vec::new();
    for (lo, mode_o) in labels.iter().zip(&modes_o) {
        for (le, mode_e) in labels.iter().zip(&modes_e) {
            if mismatch_residual(mode_o, mode_e, geometry.k_p) >= window {
                continue;
            }
            let amp = matrix_element(pump, mode_o, mode_e, crystal);
            pairs.push(ModePairAmplitude { label_o: *lo, label_e: *le, amp });
        }
    }
    normalize_pairs(&mut pairs)?;
    Ok(TwoPhotonState {
        pairs,
        geometry: *geometry,
        grid: GridInfo {
            dk_x: grid.dk_x,
            dk_y: grid.dk_y,
            extent_x: grid.dk_x * R::from_usize(grid.nx.saturating_sub(1)).unwrap(),
            extent_y: grid.dk_y * R::from_usize(grid.ny_half).unwrap(),
        },
    })
}

/// Transverse amplitude profile of the Gaussian pump as a function of
/// the signal/idler offset differences it has to absorb.
pub fn gaussian_factor<R: Real>(dx: R, dy: R, sigma: R) -> R {
    (-(dx * dx + dy * dy) / (R::two() * sigma * sigma)).exp()
}

/// Builds the Gaussian-pump state on the transverse matching plane.
///
/// Three offsets (ordinary x, extraordinary x, ordinary y) run freely
/// over the lattice; the extraordinary y offset is pinned by the
/// longitudinal first-order constraint
/// a_ox k_ox + a_ex k_ex + a_oy k_oy + a_ey k_ey = 0. Each kept cell
/// is weighted by the pump profile over the transverse mismatch it
/// absorbs, divided by |a_ey| as the constraint's solving density.
pub fn build_state_gaussian<R: Real>(
    pump: &PumpBeam<R>,
    geometry: &DegenerateGeometry<R>,
    crystal: &CrystalConfig<R>,
    grid: &GaussianGrid<R>,
) -> Result<TwoPhotonState<R>> {
    if pump.kind != PumpKind::Gaussian {
        return Err(Error::InvalidConfig("gaussian state needs a gaussian pump".into()));
    }
    if grid.points < 2 || !(grid.span_sigmas > R::zero()) {
        return Err(Error::InvalidConfig(
            "gaussian grid needs points >= 2 and span_sigmas > 0".into(),
        ));
    }
    let slopes = slope_coefficients(geometry.k_yd, geometry.omega_s, crystal)?;
    if slopes.a_ey.abs() < R::lit(1e-15) {
        return Err(Error::DegenerateConstraint {
            coeff: slopes.a_ey.to_f64().unwrap_or(f64::NAN),
        });
    }
    let sigma = pump.sigma;
    let span = grid.span_sigmas * sigma;
    let n = grid.points;
    let step = R::two() * span / R::from_usize(n - 1).unwrap();
    let axis: Vec<R> = (0..n)
        .map(|i| -span + step * R::from_usize(i).unwrap())
        .collect();
    let inv_density = slopes.a_ey.abs().recip();
    let mut pairs = Vec::new();
    for &k_ox in &axis {
        for &k_ex in &axis {
            for &k_oy in &axis {
                let k_ey = -(slopes.a_ox * k_ox + slopes.a_ex * k_ex + slopes.a_oy * k_oy)
                    / slopes.a_ey;
                let factor = gaussian_factor(k_ox - k_ex, k_oy - k_ey, sigma);
                // The peak factor is 1, so this floor caps the dropped
                // probability mass near 1e-24 of the total while keeping
                // the pair list, and every Fock scan over it, small.
                if factor < R::lit(1e-12) {
                    continue;
                }
                let w = factor * inv_density;
                pairs.push(ModePairAmplitude {
                    label_o: (k_ox, geometry.k_yd + k_oy),
                    label_e: (k_ex, geometry.k_yd + k_ey),
                    amp: Complex::new(w, R::zero()),
                });
            }
        }
    }
    normalize_pairs(&mut pairs)?;
    Ok(TwoPhotonState {
        pairs,
        geometry: *geometry,
        grid: GridInfo { dk_x: step, dk_y: step, extent_x: span, extent_y: span },
    })
}

/// Scales amplitudes to unit total weight. Scaling by the largest
/// modulus first keeps the squared terms representable in narrow
/// scalars even when the raw amplitudes are far below one.
fn normalize_pairs<R: Real>(pairs: &mut [ModePairAmplitude<R>]) -> Result<()> {
    let mut peak = R::zero();
    for p in pairs.iter() {
        peak = peak.max(p.amp.norm());
    }
    if !(peak > R::zero()) {
        return Err(Error::NoPhaseMatch);
    }
    let inv_peak = peak.recip();
    let mut total = R::zero();
    for p in pairs.iter() {
        let scaled = p.amp * Complex::new(inv_peak, R::zero());
        total += scaled.norm_sqr();
    }
    let scale = inv_peak / total.sqrt();
    for p in pairs.iter_mut() {
        p.amp = p.amp * Complex::new(scale, R::zero());
    }
    Ok(())
}
