//! Uniaxial dispersion: wave-vector surfaces, wall-reflection partners,
//! polarization geometry, and emission-cone slope coefficients.

use crate::constants::vacuum_wavenumber;
use crate::error::{Error, Result};
use crate::scalar::{sinc, Real};
use crate::solve::{solve_bracketed, SolveFailure};
use crate::vec3::Vec3;

/// Which eigenwave branch of the crystal a wave belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeKind {
    Ordinary,
    Extraordinary,
}

impl ModeKind {
    pub fn short_name(self) -> &'static str {
        match self {
            ModeKind::Ordinary => "o",
            ModeKind::Extraordinary => "e",
        }
    }
}

/// Crystal box geometry and material parameters.
///
/// The optic axis lies in the x-z plane at polar angle `theta` from the
/// z direction. `n_o` and `n_e_principal` are the indices at the signal
/// frequency; pump dispersion enters only through `pump_index`, which
/// sets the pump wave number inside the crystal.
#[derive(Clone, Copy, Debug)]
pub struct CrystalConfig<R> {
    pub l_x: R,
    pub l_y: R,
    pub l_z: R,
    pub n_o: R,
    pub n_e_principal: R,
    pub theta: R,
    /// Effective quadratic susceptibility (m/V) with the pump
    /// polarization already contracted in.
    pub chi_eff: R,
    pub pump_index: R,
}

impl<R: Real> CrystalConfig<R> {
    pub fn optic_axis(&self) -> Vec3<R> {
        Vec3::new(self.theta.sin(), R::zero(), self.theta.cos())
    }

    pub fn volume(&self) -> R {
        self.l_x * self.l_y * self.l_z
    }

    pub fn lengths(&self) -> [R; 3] {
        [self.l_x, self.l_y, self.l_z]
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: R, name: &str| -> Result<()> {
            if v > R::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive and finite")))
            }
        };
        pos(self.l_x, "l_x")?;
        pos(self.l_y, "l_y")?;
        pos(self.l_z, "l_z")?;
        pos(self.n_o, "n_o")?;
        pos(self.n_e_principal, "n_e_principal")?;
        pos(self.pump_index, "pump_index")?;
        if !(self.theta > R::zero() && self.theta < R::pi()) {
            return Err(Error::InvalidConfig(
                "theta must lie strictly between 0 and pi".into(),
            ));
        }
        if !self.chi_eff.is_finite() {
            return Err(Error::InvalidConfig("chi_eff must be finite".into()));
        }
        Ok(())
    }

    /// Inverse squared indices (u, v) of the index ellipsoid.
    fn inv_sq_indices(&self) -> (R, R) {
        let u = (self.n_o * self.n_o).recip();
        let v = (self.n_e_principal * self.n_e_principal).recip();
        (u, v)
    }
}

/// Longitudinal wave number on the ordinary surface.
pub fn kz_ordinary<R: Real>(k_x: R, k_y: R, omega: R, crystal: &CrystalConfig<R>) -> Result<R> {
    let nk = crystal.n_o * vacuum_wavenumber(omega);
    let rad = nk * nk - k_x * k_x - k_y * k_y;
    if rad < R::zero() {
        return Err(Error::EvanescentMode { surface: "ordinary" });
    }
    Ok(rad.sqrt())
}

/// Direction-dependent refractive index of the extraordinary branch.
///
/// `dir` need not be normalized but must be nonzero.
pub fn extraordinary_index<R: Real>(dir: Vec3<R>, crystal: &CrystalConfig<R>) -> R {
    let (u, v) = crystal.inv_sq_indices();
    let cos_psi = dir.normalized().dot(crystal.optic_axis());
    let cos2 = cos_psi * cos_psi;
    let sin2 = R::one() - cos2;
    (cos2 * u + sin2 * v).sqrt().recip()
}

/// Implicit extraordinary-surface function: zero exactly on the
/// surface, negative inside it. Polynomial in k, so it is safe to
/// evaluate anywhere, including k = 0.
pub fn e_surface_gap<R: Real>(k: Vec3<R>, k0: R, crystal: &CrystalConfig<R>) -> R {
    let (u, v) = crystal.inv_sq_indices();
    let ka = k.dot(crystal.optic_axis());
    ka * ka * (u - v) + k.norm_sq() * v - k0 * k0
}

/// Longitudinal wave number on the extraordinary surface.
///
/// Solves the implicit surface equation for k_z in [0, max(n_o, n_e) k0]
/// by bracketed bisection with secant refinement. Transverse points the
/// surface reaches only on a tilted lobe with no k_z-axis sign change
/// are reported as evanescent; waves of interest here travel near the
/// z direction, far from that edge.
pub fn kz_extraordinary<R: Real>(
    k_x: R,
    k_y: R,
    omega: R,
    crystal: &CrystalConfig<R>,
) -> Result<R> {
    let k0 = vacuum_wavenumber(omega);
    // A few ulps of headroom: a collinear root on an isotropic surface
    // sits exactly at n k0, where the gap can round to either sign.
    let hi = crystal.n_o.max(crystal.n_e_principal) * k0
        * (R::one() + R::lit(8.0) * R::epsilon());
    let f = |kz: R| e_surface_gap(Vec3::new(k_x, k_y, kz), k0, crystal);
    match solve_bracketed(f, R::zero(), hi) {
        Ok(root) => Ok(root.x),
        Err(SolveFailure::NoSignChange) => {
            Err(Error::EvanescentMode { surface: "extraordinary" })
        }
        Err(SolveFailure::NonFinite) => Err(Error::NoConvergence),
    }
}

/// Magnitude of the x wave-number an extraordinary wave picks up after
/// reflecting off a wall normal to x, given the conserved (k_y, k_z).
///
/// The reflected partial wave lives on the same surface with the same
/// k_y and k_z but negative k_x; this returns that component's
/// magnitude. On a tilted axis the surface is not symmetric in k_x, so
/// the result generally differs from the incident |k_x|; it reduces to
/// |k_x| when the x direction is a symmetry axis (isotropic crystal, or
/// the optic axis in the x-y plane or along z). When the surface has no
/// negative-k_x point at this (k_y, k_z) the partner wave does not
/// propagate and the mode construction fails as evanescent.
pub fn mirror_kx_e<R: Real>(k_ez: R, k_y: R, omega: R, crystal: &CrystalConfig<R>) -> Result<R> {
    let k0 = vacuum_wavenumber(omega);
    let evanescent = Error::EvanescentMode { surface: "extraordinary" };
    let f = |kx: R| e_surface_gap(Vec3::new(kx, k_y, k_ez), k0, crystal);
    // The surface section at fixed (k_y, k_z) is an upward parabola in
    // k_x; its vertex is the only interior minimum. A negative root
    // exists exactly when the gap is non-positive somewhere on the
    // non-positive half-axis, and the search can stop at the vertex.
    let (u, v) = crystal.inv_sq_indices();
    let axis = crystal.optic_axis();
    let quad = axis.x * axis.x * (u - v) + v;
    let lin = R::two() * axis.x * axis.z * k_ez * (u - v);
    let vertex = -lin / (R::two() * quad);
    let hi = vertex.min(R::zero());
    let f_hi = f(hi);
    if f_hi > R::zero() {
        return Err(evanescent);
    }
    if f_hi == R::zero() {
        return Ok(-hi);
    }
    let lo = -(crystal.n_o.max(crystal.n_e_principal)) * k0;
    match solve_bracketed(f, lo, hi) {
        Ok(root) => Ok(-root.x),
        Err(SolveFailure::NoSignChange) => Err(evanescent),
        Err(SolveFailure::NonFinite) => Err(Error::NoConvergence),
    }
}

/// Unit polarization vector of the given branch at wave vector `k`.
///
/// Ordinary waves oscillate along k x a, extraordinary waves along the
/// component of the optic axis a transverse to k (the displacement
/// direction, exactly orthogonal to k). The overall sign is fixed by
/// the first nonzero rule: positive y component, else positive x, else
/// positive z.
pub fn polarization_vector<R: Real>(
    kind: ModeKind,
    k: Vec3<R>,
    crystal: &CrystalConfig<R>,
) -> Result<Vec3<R>> {
    let axis = crystal.optic_axis();
    let k_norm = k.norm();
    if !(k_norm > R::zero()) {
        return Err(Error::DegenerateDirection);
    }
    let raw = match kind {
        ModeKind::Ordinary => k.cross(axis),
        ModeKind::Extraordinary => {
            let khat = k * k_norm.recip();
            axis - khat * axis.dot(khat)
        }
    };
    // Both constructions collapse when k is parallel to the axis.
    let tiny = R::lit(1e-12);
    if raw.norm() <= tiny {
        return Err(Error::DegenerateDirection);
    }
    Ok(canonical_sign(raw.normalized()))
}

fn canonical_sign<R: Real>(v: Vec3<R>) -> Vec3<R> {
    let zero = R::zero();
    let lead = if v.y != zero {
        v.y
    } else if v.x != zero {
        v.x
    } else {
        v.z
    };
    if lead < zero {
        -v
    } else {
        v
    }
}

/// First-order growth of the longitudinal wave numbers in the mode
/// labels, taken at the degenerate emission label (0, k_yd).
///
/// Both surfaces are even in k_y, so the physical carrier at -k_yd
/// shares these magnitudes; the derivatives here are with respect to
/// the signed label offsets, which is the convention the transverse
/// matching constraint of the pumped state is written in. At positive
/// k_yd both y slopes are non-positive. The ordinary surface is a
/// sphere, so its slopes are analytic; the extraordinary slopes are
/// central differences with step 1e-6 k0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeCoefficients<R> {
    pub a_ox: R,
    pub a_ex: R,
    pub a_oy: R,
    pub a_ey: R,
}

pub fn slope_coefficients<R: Real>(
    k_yd: R,
    omega_s: R,
    crystal: &CrystalConfig<R>,
) -> Result<SlopeCoefficients<R>> {
    let k0 = vacuum_wavenumber(omega_s);
    let k_oz = kz_ordinary(R::zero(), k_yd, omega_s, crystal)?;
    if !(k_oz > R::zero()) {
        return Err(Error::EvanescentMode { surface: "ordinary" });
    }
    let a_ox = R::zero();
    let a_oy = -k_yd / k_oz;
    let h = R::lit(1e-6) * k0;
    let half_h = (R::two() * h).recip();
    let a_ex = (kz_extraordinary(h, k_yd, omega_s, crystal)?
        - kz_extraordinary(-h, k_yd, omega_s, crystal)?)
        * half_h;
    let a_ey = (kz_extraordinary(R::zero(), k_yd + h, omega_s, crystal)?
        - kz_extraordinary(R::zero(), k_yd - h, omega_s, crystal)?)
        * half_h;
    Ok(SlopeCoefficients { a_ox, a_ex, a_oy, a_ey })
}

/// Integral of exp(i d . r) over the crystal box, which factors into a
/// product of length-weighted sinc terms, one per axis.
pub fn box_phase_integral<R: Real>(d: Vec3<R>, crystal: &CrystalConfig<R>) -> R {
    let half = R::half();
    crystal.l_x * sinc(d.x * crystal.l_x * half)
        * crystal.l_y * sinc(d.y * crystal.l_y * half)
        * crystal.l_z * sinc(d.z * crystal.l_z * half)
}
