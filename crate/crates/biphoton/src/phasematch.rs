//! Degenerate emission geometry and the pair-creation matrix element.

use num_complex::Complex;

use crate::constants::{vacuum_permittivity, vacuum_wavenumber};
use crate::crystal::{kz_extraordinary, kz_ordinary, box_phase_integral, CrystalConfig};
use crate::error::{Error, Result};
use crate::modes::EigenMode;
use crate::scalar::Real;
use crate::solve::{solve_bracketed, SolveFailure};
use crate::state::PumpBeam;
use crate::vec3::Vec3;

/// Geometry of the degenerate emission pair at half the pump frequency.
///
/// The ordinary photon leaves at transverse (0, k_yd), the
/// extraordinary photon at (0, -k_yd). `epsilon` is the small
/// polarization-mixing parameter k_yd cot(theta) / (n_o k0), and
/// `mixing` the per-unit-wave-number version cot(theta) / (n_o k0),
/// so a mode labeled (K_x, K_y) mixes by (K_y - K_x) * mixing.
/// `k_s`, `k_i` and the unnormalized transverse vectors `e_ys`, `e_yi`
/// describe the beams outside the crystal.
#[derive(Clone, Copy, Debug)]
pub struct DegenerateGeometry<R> {
    pub k_yd: R,
    pub epsilon: R,
    pub mixing: R,
    pub k_s: Vec3<R>,
    pub k_i: Vec3<R>,
    pub e_ys: Vec3<R>,
    pub e_yi: Vec3<R>,
    pub omega_s: R,
    pub k0: R,
    pub k_p: R,
}

/// Assembles the degenerate geometry at a given transverse split,
/// taking the matched pump wave number from the surfaces themselves.
/// `crystal.pump_index` is not consulted.
pub fn degenerate_geometry<R: Real>(
    k_yd: R,
    omega_p: R,
    crystal: &CrystalConfig<R>,
) -> Result<DegenerateGeometry<R>> {
    let omega_s = omega_p * R::half();
    let k0 = vacuum_wavenumber(omega_s);
    let k_p = kz_ordinary(R::zero(), k_yd, omega_s, crystal)?
        + kz_extraordinary(R::zero(), -k_yd, omega_s, crystal)?;
    let rad = k0 * k0 - k_yd * k_yd;
    if rad <= R::zero() {
        return Err(Error::EvanescentMode { surface: "vacuum" });
    }
    let kz_vac = rad.sqrt();
    let mixing = crystal.theta.cos() / (crystal.theta.sin() * crystal.n_o * k0);
    let tilt = k_yd / k0;
    Ok(DegenerateGeometry {
        k_yd,
        epsilon: k_yd * mixing,
        mixing,
        k_s: Vec3::new(R::zero(), k_yd, kz_vac),
        k_i: Vec3::new(R::zero(), -k_yd, kz_vac),
        e_ys: Vec3::new(R::zero(), R::one(), -tilt),
        e_yi: Vec3::new(R::zero(), R::one(), tilt),
        omega_s,
        k0,
        k_p,
    })
}

/// Finds the transverse split k_yd at which the degenerate pair's
/// longitudinal wave numbers sum to the pump wave number
/// pump_index * omega_p / c.
///
/// The sum f(k_yd) = k_oz(0, k_yd) + k_ez(0, -k_yd) decreases in
/// k_yd (checked on a coarse scan; violation aborts), so the root is
/// bracketed on [0, 0.99 min(n_o, n_e) k0], inside which both surfaces
/// propagate. A pump matched at the collinear point to rounding
/// accuracy snaps to k_yd = 0 exactly.
pub fn solve_degenerate_kyd<R: Real>(
    omega_p: R,
    crystal: &CrystalConfig<R>,
) -> Result<DegenerateGeometry<R>> {
    crystal.validate()?;
    let omega_s = omega_p * R::half();
    let k0 = vacuum_wavenumber(omega_s);
    let k_p = crystal.pump_index * vacuum_wavenumber(omega_p);
    let f = |kyd: R| {
        kz_ordinary(R::zero(), kyd, omega_s, crystal)
            .expect("ordinary surface propagates inside the search bracket")
            + kz_extraordinary(R::zero(), -kyd, omega_s, crystal)
                .expect("extraordinary surface propagates inside the search bracket")
    };
    let hi = R::lit(0.99) * crystal.n_o.min(crystal.n_e_principal) * k0;

    let f0 = f(R::zero());
    if (f0 - k_p).abs() <= R::lit(8.0) * R::epsilon() * k_p {
        return degenerate_geometry(R::zero(), omega_p, crystal);
    }

    let steps = 8;
    let mut prev = f0;
    for i in 1..=steps {
        let x = hi * R::from_usize(i).unwrap() / R::from_usize(steps).unwrap();
        let cur = f(x);
        assert!(
            cur <= prev + R::lit(1e-12) * k0,
            "emission sum must decrease with the transverse split: f({x:?}) = {cur:?} after {prev:?}"
        );
        prev = cur;
    }

    match solve_bracketed(|kyd| f(kyd) - k_p, R::zero(), hi) {
        Ok(root) => degenerate_geometry(root.x, omega_p, crystal),
        Err(SolveFailure::NoSignChange) => Err(Error::NoPhaseMatch),
        Err(SolveFailure::NonFinite) => Err(Error::NoConvergence),
    }
}

/// Pair-creation amplitude between an ordinary and an extraordinary
/// box mode under the given pump.
///
/// Sums over the sixteen pairs of plane-wave constituents: each pair
/// contributes the polarization contraction scaled by the effective
/// susceptibility, the box integral of the wave-vector mismatch
/// k_p z - k_o - k_e, and the conjugated boundary phases. Pairs whose
/// mirror classes differ cancel pairwise and give zero to rounding.
pub fn matrix_element<R: Real>(
    pump: &PumpBeam<R>,
    mode_o: &EigenMode<R>,
    mode_e: &EigenMode<R>,
    crystal: &CrystalConfig<R>,
) -> Complex<R> {
    debug_assert!(
        ((mode_o.omega + mode_e.omega) / pump.omega_p - R::one()).abs() <= R::lit(1e-9),
        "mode frequencies must sum to the pump frequency"
    );
    let pump_k = Vec3::new(R::zero(), R::zero(), pump.k_p);
    let scale = R::two() * vacuum_permittivity::<R>() * crystal.chi_eff;
    let mut acc = Complex::new(R::zero(), R::zero());
    for co in &mode_o.components {
        for ce in &mode_e.components {
            let mismatch = pump_k - co.k - ce.k;
            let weight = scale * co.pol.dot(ce.pol) * box_phase_integral(mismatch, crystal);
            acc += Complex::from_polar(weight, -(co.phase + ce.phase));
        }
    }
    acc
}

/// Mirror selection rule: 1 when the two modes share parity, else 0.
/// Mixed-parity pairs have identically vanishing pair-creation
/// amplitude.
pub fn parity_coefficient<R: Real>(mode_o: &EigenMode<R>, mode_e: &EigenMode<R>) -> u8 {
    u8::from(mode_o.parity == mode_e.parity)
}

/// Smallest wave-vector mismatch against the pump over the two
/// momentum-conserving pairings of plane-wave constituents: the
/// label wave of one mode with the fully reflected wave of the other.
pub fn mismatch_residual<R: Real>(
    mode_o: &EigenMode<R>,
    mode_e: &EigenMode<R>,
    k_p: R,
) -> R {
    let pump_k = Vec3::new(R::zero(), R::zero(), k_p);
    let a = (mode_o.components[0].k + mode_e.components[3].k - pump_k).norm();
    let b = (mode_o.components[1].k + mode_e.components[2].k - pump_k).norm();
    a.min(b)
}
