//! Outside-the-crystal beam descriptions: per-mode annihilation forms,
//! analyzer projections, and waveplate actions on the transverse basis.

use std::collections::BTreeSet;

use num_complex::Complex;

use crate::crystal::ModeKind;
use crate::error::{Error, Result};
use crate::modes::ModeKey;
use crate::phasematch::DegenerateGeometry;
use crate::scalar::Real;
use crate::state::TwoPhotonState;
use crate::vec3::Vec3;

/// Which of the two emission beams an object belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Beam {
    Signal,
    Idler,
}

/// Waveplate placed in a beam, described by its action on the
/// (x, transverse-y) components of every mode coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveplateVariant {
    /// No plate.
    None,
    /// Exchanges the x and transverse-y components.
    Swap,
    /// Negates the transverse-y component.
    PiPhase,
    /// Swap followed by the transverse-y negation.
    SwapPi,
}

/// One mode's vector coefficient in a beam's annihilation operator.
#[derive(Clone, Copy, Debug)]
pub struct FormTerm<R> {
    pub key: ModeKey<R>,
    pub coeff: Vec3<R>,
}

/// A beam's annihilation operator as a sum of mode annihilators with
/// real vector coefficients; `phase` is the common boundary phase of
/// the beam, applied at projection time.
#[derive(Clone, Debug)]
pub struct AnnihilationForm<R> {
    pub beam: Beam,
    /// Transverse-y basis vector of this beam (unnormalized).
    pub basis_y: Vec3<R>,
    pub terms: Vec<FormTerm<R>>,
    pub phase: R,
}

/// The annihilation operator after projecting every coefficient onto
/// an analyzer direction.
#[derive(Clone, Debug)]
pub struct ScalarForm<R> {
    pub beam: Beam,
    pub terms: Vec<(ModeKey<R>, Complex<R>)>,
}

/// Linear analyzer at `angle` from the x direction toward the beam's
/// transverse-y vector.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzerSetting<R> {
    pub angle: R,
    pub beam: Beam,
    pub basis_y: Vec3<R>,
}

impl<R: Real> AnalyzerSetting<R> {
    pub fn new(angle: R, beam: Beam, geometry: &DegenerateGeometry<R>) -> Self {
        let basis_y = match beam {
            Beam::Signal => geometry.e_ys,
            Beam::Idler => geometry.e_yi,
        };
        AnalyzerSetting { angle, beam, basis_y }
    }

    pub fn direction(&self) -> Vec3<R> {
        Vec3::unit_x() * self.angle.cos() + self.basis_y * self.angle.sin()
    }
}

/// Builds the annihilation form of one beam over all modes the state
/// populates, with zero idler boundary phase.
pub fn beam_field_form<R: Real>(
    beam: Beam,
    state: &TwoPhotonState<R>,
    geometry: &DegenerateGeometry<R>,
) -> AnnihilationForm<R> {
    beam_field_form_with_phase(beam, state, geometry, R::zero())
}

/// Builds the annihilation form of one beam over all modes the state
/// populates.
///
/// A mode labeled (K_x, K_y) mixes polarizations by
/// eps_K = (K_y - K_x) * mixing. In the signal beam an ordinary mode
/// annihilates with coefficient e_ys - eps_K x and an extraordinary
/// mode with x + eps_K e_ys; in the idler beam the mixing enters with
/// the opposite sign and the whole form carries the relative boundary
/// phase `phi`.
pub fn beam_field_form_with_phase<R: Real>(
    beam: Beam,
    state: &TwoPhotonState<R>,
    geometry: &DegenerateGeometry<R>,
    phi: R,
) -> AnnihilationForm<R> {
    let mut keys: BTreeSet<ModeKey<R>> = BTreeSet::new();
    for pair in &state.pairs {
        keys.insert(ModeKey::new(ModeKind::Ordinary, pair.label_o.0, pair.label_o.1));
        keys.insert(ModeKey::new(ModeKind::Extraordinary, pair.label_e.0, pair.label_e.1));
    }
    let x = Vec3::unit_x();
    let (basis_y, mix_sign, phase) = match beam {
        Beam::Signal => (geometry.e_ys, -R::one(), R::zero()),
        Beam::Idler => (geometry.e_yi, R::one(), phi),
    };
    let terms = keys
        .into_iter()
        .map(|key| {
            let eps_k = (key.ky - key.kx) * geometry.mixing * mix_sign;
            let coeff = match key.kind {
                ModeKind::Ordinary => basis_y + x * eps_k,
                ModeKind::Extraordinary => x - basis_y * eps_k,
            };
            FormTerm { key, coeff }
        })
        .collect();
    AnnihilationForm { beam, basis_y, terms, phase }
}

/// Projects a beam form onto an analyzer direction, yielding scalar
/// mode coefficients with the beam's boundary phase attached.
pub fn project<R: Real>(
    form: &AnnihilationForm<R>,
    analyzer: &AnalyzerSetting<R>,
) -> Result<ScalarForm<R>> {
    if form.beam != analyzer.beam {
        return Err(Error::BasisMismatch);
    }
    let dir = analyzer.direction();
    let rot = Complex::from_polar(R::one(), form.phase);
    let terms = form
        .terms
        .iter()
        .map(|t| (t.key, rot * Complex::new(dir.dot(t.coeff), R::zero())))
        .collect();
    Ok(ScalarForm { beam: form.beam, terms })
}

/// Applies a waveplate to a beam form.
///
/// Coefficients live in the span of x and the beam's transverse-y
/// vector, whose x and y components are exactly 0 and 1, so the two
/// basis weights can be read off componentwise and reassembled after
/// the variant's exchange and sign action.
pub fn waveplate_transform<R: Real>(
    form: &AnnihilationForm<R>,
    variant: WaveplateVariant,
) -> AnnihilationForm<R> {
    let x = Vec3::unit_x();
    let terms = form
        .terms
        .iter()
        .map(|t| {
            let a = t.coeff.x;
            let b = t.coeff.y;
            let (a2, b2) = match variant {
                WaveplateVariant::None => (a, b),
                WaveplateVariant::Swap => (b, a),
                WaveplateVariant::PiPhase => (a, -b),
                WaveplateVariant::SwapPi => (b, -a),
            };
            FormTerm { key: t.key, coeff: x * a2 + form.basis_y * b2 }
        })
        .collect();
    AnnihilationForm {
        beam: form.beam,
        basis_y: form.basis_y,
        terms,
        phase: form.phase,
    }
}
