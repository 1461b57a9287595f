//! Two-photon states from type-II parametric down-conversion in a
//! finite rectangular crystal with a tilted uniaxial axis.
//!
//! The crystal's side walls lock each photon into a four-plane-wave
//! box mode with definite mirror parity. The crate builds those modes,
//! solves the degenerate phase-matching geometry, assembles the
//! two-photon state for plane and Gaussian pumps, and evaluates
//! polarization correlations twice: through closed-form counting
//! rates and through a small Fock-space oracle that knows nothing
//! about the closed forms.
//!
//! Everything is generic over the floating scalar; the accuracy
//! statements in the docs and tests hold for `f64`.

pub mod constants;
pub mod correlation;
pub mod crystal;
pub mod error;
pub mod field;
pub mod fockcore;
pub mod modes;
pub mod phasematch;
pub mod scalar;
pub mod solve;
pub mod state;
pub mod vec3;

pub use error::{Error, Result};
pub use scalar::Real;
pub use vec3::Vec3;

pub use crystal::{CrystalConfig, ModeKind, SlopeCoefficients};
pub use field::{AnalyzerSetting, AnnihilationForm, Beam, ScalarForm, WaveplateVariant};
pub use fockcore::FockKet;
pub use modes::{EigenMode, ModeKey, Parity, PlaneWaveComponent};
pub use phasematch::DegenerateGeometry;
pub use state::{ModePairAmplitude, PumpBeam, PumpKind, TwoPhotonState};
pub use correlation::{CorrelationScan, ScanMode};

pub type CrystalConfig64 = crystal::CrystalConfig<f64>;
pub type CrystalConfig32 = crystal::CrystalConfig<f32>;
pub type SlopeCoefficients64 = crystal::SlopeCoefficients<f64>;
pub type SlopeCoefficients32 = crystal::SlopeCoefficients<f32>;
pub type EigenMode64 = modes::EigenMode<f64>;
pub type EigenMode32 = modes::EigenMode<f32>;
pub type DegenerateGeometry64 = phasematch::DegenerateGeometry<f64>;
pub type DegenerateGeometry32 = phasematch::DegenerateGeometry<f32>;
pub type PumpBeam64 = state::PumpBeam<f64>;
pub type PumpBeam32 = state::PumpBeam<f32>;
pub type TwoPhotonState64 = state::TwoPhotonState<f64>;
pub type TwoPhotonState32 = state::TwoPhotonState<f32>;
pub type AnnihilationForm64 = field::AnnihilationForm<f64>;
pub type AnnihilationForm32 = field::AnnihilationForm<f32>;
pub type FockKet64 = fockcore::FockKet<f64>;
pub type FockKet32 = fockcore::FockKet<f32>;
pub type CorrelationScan64 = correlation::CorrelationScan<f64>;
pub type CorrelationScan32 = correlation::CorrelationScan<f32>;
