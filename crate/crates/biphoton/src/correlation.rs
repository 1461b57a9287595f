//! Polarization correlations: closed-form counting rates, the
//! Fock-space oracle, sin^2 fits, and the Bell-type combination.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{
    beam_field_form, project, waveplate_transform, AnalyzerSetting, AnnihilationForm, Beam,
    WaveplateVariant,
};
use crate::fockcore::{fourth_order_expectation, lift, FockKet};
use crate::phasematch::DegenerateGeometry;
use crate::scalar::Real;
use crate::state::TwoPhotonState;

/// Which pair of analyzers a scan drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Analyzer 1 in the signal beam, analyzer 2 in the idler beam.
    Coincidence,
    /// Both analyzers in the signal beam.
    SameBeam,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanPoint<R> {
    pub angle1: R,
    pub angle2: R,
    pub closed: R,
    pub oracle: R,
}

#[derive(Clone, Debug)]
pub struct CorrelationScan<R> {
    pub mode: ScanMode,
    pub variant: WaveplateVariant,
    pub epsilon: R,
    pub n1: usize,
    pub n2: usize,
    pub points: Vec<ScanPoint<R>>,
}

/// Rectangular analyzer-angle grid over [0, pi) x [0, pi).
#[derive(Clone, Copy, Debug)]
pub struct AngleGrid {
    pub n1: usize,
    pub n2: usize,
}

impl Default for AngleGrid {
    fn default() -> Self {
        AngleGrid { n1: 37, n2: 37 }
    }
}

/// Closed signal-beam coefficients (ordinary, extraordinary) at
/// analyzer angle x, with the waveplate already folded in. These are
/// the unit-transverse-basis forms; the oracle differs from them by
/// the basis normalization, an overall constant on the whole scan.
fn closed_signal_coeffs<R: Real>(variant: WaveplateVariant, x: R, eps: R) -> (R, R) {
    let (s, c) = (x.sin(), x.cos());
    match variant {
        WaveplateVariant::None => (s - eps * c, c + eps * s),
        WaveplateVariant::Swap => (c - eps * s, s + eps * c),
        WaveplateVariant::PiPhase => (-(s + eps * c), c - eps * s),
        WaveplateVariant::SwapPi => (c + eps * s, eps * c - s),
    }
}

fn closed_idler_coeffs<R: Real>(y: R, eps: R) -> (R, R) {
    let (s, c) = (y.sin(), y.cos());
    (s + eps * c, c - eps * s)
}

/// Closed-form counting rate for any scan mode and waveplate variant,
/// as the squared two-path interference bracket.
pub fn closed_value<R: Real>(
    mode: ScanMode,
    variant: WaveplateVariant,
    angle1: R,
    angle2: R,
    eps: R,
) -> R {
    let (so, se) = closed_signal_coeffs(variant, angle1, eps);
    let bracket = match mode {
        ScanMode::Coincidence => {
            let (io, ie) = closed_idler_coeffs(angle2, eps);
            so * ie + se * io
        }
        ScanMode::SameBeam => {
            let (so2, se2) = closed_signal_coeffs(variant, angle2, eps);
            so * se2 + so2 * se
        }
    };
    bracket * bracket
}

/// Coincidence rate between analyzers at alpha (signal) and beta
/// (idler) with no waveplate; equals (1 + eps^2)^2 sin^2(alpha + beta).
pub fn coincidence_closed<R: Real>(alpha: R, beta: R, eps: R) -> R {
    closed_value(ScanMode::Coincidence, WaveplateVariant::None, alpha, beta, eps)
}

/// Same-beam pair rate at analyzers alpha, alpha' in the signal beam;
/// equals (1 + eps^2)^2 sin^2(alpha + alpha' - 2 atan(eps)).
pub fn same_beam_closed<R: Real>(alpha: R, alpha_prime: R, eps: R) -> R {
    closed_value(ScanMode::SameBeam, WaveplateVariant::None, alpha, alpha_prime, eps)
}

/// The two closed expressions for the same-beam fringe offset.
///
/// `exact` is 2 atan(eps), which the fitted offset reproduces to
/// rounding. `small_tilt` is the first-order-in-tilt expression
/// atan(2 k_yd / sqrt(n_o^2 k0^2 tan^2(theta) - k_yd^2)); the two
/// agree to O(eps^3).
#[derive(Clone, Copy, Debug)]
pub struct GammaOffsets<R> {
    pub exact: R,
    pub small_tilt: R,
}

pub fn gamma_offset<R: Real>(
    geometry: &DegenerateGeometry<R>,
    n_o: R,
    theta: R,
) -> Result<GammaOffsets<R>> {
    let exact = R::two() * geometry.epsilon.atan();
    let t = theta.tan();
    let nk = n_o * geometry.k0;
    let rad = nk * nk * t * t - geometry.k_yd * geometry.k_yd;
    if rad <= R::zero() {
        return Err(Error::DomainError(
            "transverse split exceeds the small-tilt offset formula's reach",
        ));
    }
    let small_tilt = (R::two() * geometry.k_yd / rad.sqrt()).atan();
    Ok(GammaOffsets { exact, small_tilt })
}

/// Counting-rate oracle: the state lifted to a Fock ket once, plus the
/// two beam forms the scan projects. Closed forms are never consulted.
pub struct OracleEvaluator<R: Real> {
    ket: FockKet<R>,
    first: AnnihilationForm<R>,
    second: AnnihilationForm<R>,
    geometry: DegenerateGeometry<R>,
}

impl<R: Real> OracleEvaluator<R> {
    pub fn new(state: &TwoPhotonState<R>, mode: ScanMode, variant: WaveplateVariant) -> Self {
        Self::with_idler_phase(state, mode, variant, R::zero())
    }

    /// Same, with an explicit idler boundary phase; counting rates must
    /// not depend on it.
    pub fn with_idler_phase(
        state: &TwoPhotonState<R>,
        mode: ScanMode,
        variant: WaveplateVariant,
        phi: R,
    ) -> Self {
        let geometry = state.geometry;
        let ket = lift(state);
        let signal = waveplate_transform(
            &beam_field_form(Beam::Signal, state, &geometry),
            variant,
        );
        let second = match mode {
            ScanMode::Coincidence => crate::field::beam_field_form_with_phase(
                Beam::Idler,
                state,
                &geometry,
                phi,
            ),
            ScanMode::SameBeam => signal.clone(),
        };
        OracleEvaluator { ket, first: signal, second, geometry }
    }

    /// Counting rate at analyzer angles (angle1 on the first beam,
    /// angle2 on the second).
    pub fn value(&self, angle1: R, angle2: R) -> R {
        let a1 = AnalyzerSetting::new(angle1, self.first.beam, &self.geometry);
        let a2 = AnalyzerSetting::new(angle2, self.second.beam, &self.geometry);
        let p1 = project(&self.first, &a1).expect("analyzer built for the first beam");
        let p2 = project(&self.second, &a2).expect("analyzer built for the second beam");
        fourth_order_expectation(&self.ket, &p1, &p2)
    }
}

/// Scans closed form and oracle over the angle grid.
pub fn scan<R: Real>(
    state: &TwoPhotonState<R>,
    mode: ScanMode,
    variant: WaveplateVariant,
    grid: &AngleGrid,
) -> Result<CorrelationScan<R>> {
    if grid.n1 < 2 || grid.n2 < 2 {
        return Err(Error::InvalidConfig("angle grid needs at least 2 steps per axis".into()));
    }
    let eps = state.geometry.epsilon;
    let eval = OracleEvaluator::new(state, mode, variant);
    let pi = R::pi();
    let mut points = Vec::with_capacity(grid.n1 * grid.n2);
    for i in 0..grid.n1 {
        let a1 = pi * R::from_usize(i).unwrap() / R::from_usize(grid.n1).unwrap();
        for j in 0..grid.n2 {
            let a2 = pi * R::from_usize(j).unwrap() / R::from_usize(grid.n2).unwrap();
            points.push(ScanPoint {
                angle1: a1,
                angle2: a2,
                closed: closed_value(mode, variant, a1, a2, eps),
                oracle: eval.value(a1, a2),
            });
        }
    }
    Ok(CorrelationScan { mode, variant, epsilon: eps, n1: grid.n1, n2: grid.n2, points })
}

/// Renders a scan as CSV with full-precision decimal values.
pub fn scan_to_csv<R: Real>(scan: &CorrelationScan<R>) -> String {
    let mut out = String::with_capacity(scan.points.len() * 100 + 32);
    out.push_str("angle1,angle2,closed,oracle\n");
    for p in &scan.points {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            p.angle1, p.angle2, p.closed, p.oracle
        );
    }
    out
}

/// Least-squares fit of A sin^2(x - x0) to the samples.
#[derive(Clone, Copy, Debug)]
pub struct FitResult<R> {
    pub amplitude: R,
    pub offset: R,
    pub r_squared: R,
}

/// Fits A sin^2(x - x0) by linear least squares on the equivalent
/// model c0 + c1 cos(2x) + c2 sin(2x), then A = 2 c0 and
/// x0 = atan2(-c2, -c1) / 2.
pub fn fit_sin_squared<R: Real>(xs: &[R], ys: &[R]) -> FitResult<R> {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 3, "sin^2 fit needs at least three samples");
    let zero = R::zero();
    let mut ata = [[zero; 3]; 3];
    let mut atb = [zero; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let row = [R::one(), (x + x).cos(), (x + x).sin()];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * y;
        }
    }
    let c = solve3(ata, atb);
    let amplitude = R::two() * c[0];
    let offset = (-c[2]).atan2(-c[1]) * R::half();
    let n = R::from_usize(xs.len()).unwrap();
    let mean = ys.iter().fold(zero, |acc, &y| acc + y) / n;
    let mut ss_res = zero;
    let mut ss_tot = zero;
    for (&x, &y) in xs.iter().zip(ys) {
        let fit = c[0] + c[1] * (x + x).cos() + c[2] * (x + x).sin();
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - mean) * (y - mean);
    }
    let r_squared = if ss_tot > zero {
        R::one() - ss_res / ss_tot
    } else if ss_res > zero {
        zero
    } else {
        R::one()
    };
    FitResult { amplitude, offset, r_squared }
}

fn solve3<R: Real>(mut a: [[R; 3]; 3], mut b: [R; 3]) -> [R; 3] {
    for col in 0..3 {
        let mut pivot = col;
        for row in (col + 1)..3 {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let lead = a[col][col];
        assert!(lead.abs() > R::zero(), "singular fit system");
        for row in (col + 1)..3 {
            let f = a[row][col] / lead;
            for k in col..3 {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = [R::zero(); 3];
    for col in (0..3).rev() {
        let mut acc = b[col];
        for k in (col + 1)..3 {
            acc = acc - a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    x
}

/// Correlator E at one analyzer pair, from the four orthogonal
/// outcome rates.
fn correlator<R: Real>(eval: &OracleEvaluator<R>, a: R, b: R) -> Result<R> {
    let ortho = R::pi() * R::half();
    let pp = eval.value(a, b);
    let pm = eval.value(a, b + ortho);
    let mp = eval.value(a + ortho, b);
    let mm = eval.value(a + ortho, b + ortho);
    let total = pp + pm + mp + mm;
    if !(total > R::zero()) {
        return Err(Error::DegenerateSettings);
    }
    Ok((pp + mm - pm - mp) / total)
}

/// Bell-type combination over the four analyzer settings
/// [a, a', b, b']: S = E(a,b') + E(a',b) + E(a',b') - E(a,b).
///
/// For the degenerate pair E(a,b) = -cos(2(a+b)), and the settings
/// (0, pi/4, pi/8, 3 pi/8) drive |S| to 2 sqrt(2). With all four
/// settings equal the combination collapses to 2 E(a,a).
pub fn chsh_parameter<R: Real>(state: &TwoPhotonState<R>, settings: [R; 4]) -> Result<R> {
    let eval = OracleEvaluator::new(state, ScanMode::Coincidence, WaveplateVariant::None);
    let [a, a2, b, b2] = settings;
    let e_ab = correlator(&eval, a, b)?;
    let e_ab2 = correlator(&eval, a, b2)?;
    let e_a2b = correlator(&eval, a2, b)?;
    let e_a2b2 = correlator(&eval, a2, b2)?;
    Ok(e_ab2 + e_a2b + e_a2b2 - e_ab)
}
