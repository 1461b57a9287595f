use approx::assert_relative_eq;
use biphoton::correlation::{
    chsh_parameter, coincidence_closed, fit_sin_squared, gamma_offset, same_beam_closed, scan,
    scan_to_csv, AngleGrid, OracleEvaluator, ScanMode,
};
use biphoton::constants::SPEED_OF_LIGHT;
use biphoton::crystal::CrystalConfig;
use biphoton::field::WaveplateVariant;
use biphoton::phasematch::{degenerate_geometry, DegenerateGeometry};
use biphoton::state::{build_degenerate_pair_state, TwoPhotonState};
use biphoton::Error;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

const OMEGA_P: f64 = 2.0 * SPEED_OF_LIGHT;

fn cfg() -> CrystalConfig<f64> {
    CrystalConfig {
        l_x: 4.0,
        l_y: 3.0,
        l_z: 5.0,
        n_o: 1.54,
        n_e_principal: 1.66,
        theta: 0.8,
        chi_eff: 1.0,
        pump_index: 1.6,
    }
}

fn pair_state(k_yd: f64) -> (DegenerateGeometry<f64>, TwoPhotonState<f64>) {
    let g = degenerate_geometry(k_yd, OMEGA_P, &cfg()).unwrap();
    let state = build_degenerate_pair_state(&g);
    (g, state)
}

const VARIANTS: [WaveplateVariant; 4] = [
    WaveplateVariant::None,
    WaveplateVariant::Swap,
    WaveplateVariant::PiPhase,
    WaveplateVariant::SwapPi,
];

#[test]
fn coincidence_closed_is_scaled_sine_squared() {
    for eps in [0.0f64, 0.05, 0.2] {
        let pre = (1.0 + eps * eps).powi(2);
        for i in 0..25 {
            for j in 0..25 {
                let a = i as f64 * 0.26;
                let b = j as f64 * 0.26 - 3.0;
                let expect = pre * (a + b).sin().powi(2);
                let got = coincidence_closed(a, b, eps);
                assert!((got - expect).abs() <= 1e-14 * pre);
                if expect > 1e-4 * pre {
                    assert_relative_eq!(got, expect, max_relative = 1e-12);
                }
            }
        }
    }
}

#[test]
fn same_beam_closed_is_shifted_sine_squared() {
    for eps in [0.0f64, 0.05, 0.2] {
        let pre = (1.0 + eps * eps).powi(2);
        let gamma = 2.0 * f64::atan(eps);
        for i in 0..25 {
            for j in 0..25 {
                let a = i as f64 * 0.26;
                let b = j as f64 * 0.26 - 3.0;
                let expect = pre * (a + b - gamma).sin().powi(2);
                let got = same_beam_closed(a, b, eps);
                assert!((got - expect).abs() <= 1e-13 * pre);
            }
        }
    }
}

// Rotating either analyzer by a quarter turn swaps a channel for its
// orthogonal complement, so the two rates always sum to the prefactor.
#[test]
fn complementary_channels_sum_to_prefactor() {
    for eps in [0.0f64, 0.05, 0.2] {
        let pre = (1.0 + eps * eps).powi(2);
        assert_relative_eq!(coincidence_closed(FRAC_PI_4, FRAC_PI_4, eps), pre, max_relative = 1e-14);
        for a in [0.0, 0.4, 1.1, 2.9] {
            for b in [0.2, 0.9, 1.7] {
                let total = coincidence_closed(a, b, eps) + coincidence_closed(a + FRAC_PI_2, b, eps);
                assert_relative_eq!(total, pre, max_relative = 1e-13);
            }
        }
    }
}

#[test]
fn waveplate_variants_select_coincidence_quadrature() {
    use biphoton::correlation::closed_value;
    let eps = 0.13f64;
    let pre = (1.0 + eps * eps).powi(2);
    for i in 0..20 {
        for j in 0..20 {
            let a = i as f64 * 0.31;
            let b = j as f64 * 0.33 - 2.0;
            let shapes = [
                (a + b).sin().powi(2),
                (a - b).cos().powi(2),
                (a - b).sin().powi(2),
                (a + b).cos().powi(2),
            ];
            for (variant, shape) in VARIANTS.iter().zip(shapes) {
                let got = closed_value(ScanMode::Coincidence, *variant, a, b, eps);
                assert!((got - pre * shape).abs() <= 1e-13 * pre, "{variant:?}");
            }
        }
    }
}

// Same-beam variants keep the summed-angle abscissa; the waveplate only
// flips the sign of the interference offset.
#[test]
fn waveplate_variants_flip_same_beam_offset() {
    use biphoton::correlation::closed_value;
    let eps = 0.13f64;
    let pre = (1.0 + eps * eps).powi(2);
    let gamma = 2.0 * f64::atan(eps);
    let signs = [1.0, -1.0, -1.0, 1.0];
    for i in 0..20 {
        for j in 0..20 {
            let a = i as f64 * 0.31;
            let b = j as f64 * 0.33 - 2.0;
            for (variant, sign) in VARIANTS.iter().zip(signs) {
                let got = closed_value(ScanMode::SameBeam, *variant, a, b, eps);
                let expect = pre * (a + b - sign * gamma).sin().powi(2);
                assert!((got - expect).abs() <= 1e-13 * pre, "{variant:?}");
            }
        }
    }
}

#[test]
fn closed_rates_have_half_turn_period() {
    use biphoton::correlation::closed_value;
    let eps = 0.09;
    for mode in [ScanMode::Coincidence, ScanMode::SameBeam] {
        for variant in VARIANTS {
            for (a, b) in [(0.3, 0.8), (1.2, 2.5), (0.0, 0.45)] {
                let base = closed_value(mode, variant, a, b, eps);
                let s1 = closed_value(mode, variant, a + PI, b, eps);
                let s2 = closed_value(mode, variant, a, b + PI, eps);
                assert_relative_eq!(s1, base, max_relative = 1e-10, epsilon = 1e-13);
                assert_relative_eq!(s2, base, max_relative = 1e-10, epsilon = 1e-13);
            }
        }
    }
}

#[test]
fn interference_offsets_at_tenth_mixing() {
    let c = cfg();
    let probe = degenerate_geometry(1e-3, OMEGA_P, &c).unwrap();
    // mixing is independent of the transverse split, so this lands the
    // polarization mixing weight exactly on 0.1
    let k_yd = 0.1 / probe.mixing;
    let g = degenerate_geometry(k_yd, OMEGA_P, &c).unwrap();
    assert_relative_eq!(g.epsilon, 0.1, max_relative = 1e-12);
    let go = gamma_offset(&g, c.n_o, c.theta).unwrap();
    assert_relative_eq!(go.exact, 1.993_373_049_823_240_76e-1, max_relative = 1e-12);
    assert_relative_eq!(go.small_tilt, 1.983_641_824_912_816_54e-1, max_relative = 1e-12);
    assert_relative_eq!(go.exact, 2.0 * f64::atan(g.epsilon), max_relative = 1e-14);
}

#[test]
fn offset_formulas_agree_to_cubic_order() {
    let c = cfg();
    let probe = degenerate_geometry(1e-3, OMEGA_P, &c).unwrap();
    for eps in [0.01, 0.02, 0.05, 0.1, 0.2] {
        let g = degenerate_geometry(eps / probe.mixing, OMEGA_P, &c).unwrap();
        let go = gamma_offset(&g, c.n_o, c.theta).unwrap();
        let diff = (go.exact - go.small_tilt).abs();
        assert!(diff > 0.0);
        assert!(diff <= 2.0 * eps.powi(3), "eps {eps}: diff {diff:e}");
    }
}

#[test]
fn offsets_vanish_without_transverse_split() {
    let c = cfg();
    let g = degenerate_geometry(0.0, OMEGA_P, &c).unwrap();
    let go = gamma_offset(&g, c.n_o, c.theta).unwrap();
    assert_eq!(go.exact, 0.0);
    assert_eq!(go.small_tilt, 0.0);
}

#[test]
fn offset_rejects_split_beyond_small_tilt_reach() {
    let mut c = cfg();
    c.theta = 0.01;
    let g = degenerate_geometry(0.5, OMEGA_P, &c).unwrap();
    match gamma_offset(&g, c.n_o, c.theta) {
        Err(Error::DomainError(_)) => {}
        other => panic!("expected a domain error, got {other:?}"),
    }
}

#[test]
fn scan_rejects_degenerate_grids() {
    let (_, state) = pair_state(0.05);
    for grid in [AngleGrid { n1: 1, n2: 8 }, AngleGrid { n1: 8, n2: 0 }] {
        match scan(&state, ScanMode::Coincidence, WaveplateVariant::None, &grid) {
            Err(Error::InvalidConfig(_)) => {}
            other => panic!("expected config rejection, got {other:?}"),
        }
    }
}

#[test]
fn scan_covers_half_turn_row_major() {
    let (g, state) = pair_state(0.05);
    let grid = AngleGrid { n1: 4, n2: 5 };
    let s = scan(&state, ScanMode::Coincidence, WaveplateVariant::None, &grid).unwrap();
    assert_eq!(s.points.len(), 20);
    assert_eq!((s.n1, s.n2), (4, 5));
    assert_eq!(s.epsilon, g.epsilon);
    for i in 0..4 {
        for j in 0..5 {
            let p = &s.points[i * 5 + j];
            assert_relative_eq!(p.angle1, PI * i as f64 / 4.0, epsilon = 1e-15);
            assert_relative_eq!(p.angle2, PI * j as f64 / 5.0, epsilon = 1e-15);
        }
    }
}

// The oracle projects onto the unnormalized transverse basis, so every
// coincidence rate carries the squared norm of both beam axes. With
// g^2 = 1 + (k_yd / k0)^2 the two columns differ by exactly g^4.
#[test]
fn oracle_matches_closed_up_to_basis_norm() {
    for k_yd in [1e-5, 1e-2, 0.1] {
        let (_, state) = pair_state(k_yd);
        let s = scan(
            &state,
            ScanMode::Coincidence,
            WaveplateVariant::None,
            &AngleGrid::default(),
        )
        .unwrap();
        let g4 = (1.0 + k_yd * k_yd).powi(2);
        let mut num = 0.0;
        let mut den = 0.0;
        for p in &s.points {
            assert!((p.oracle - g4 * p.closed).abs() <= 1e-13);
            num += p.closed * p.oracle;
            den += p.oracle * p.oracle;
        }
        assert_relative_eq!(num / den, 1.0 / g4, max_relative = 1e-13);
    }
}

// Same-beam rates pick up a term in the angle difference that the
// closed form drops; its weight eps (g^4 - 1) is cubic in the split.
#[test]
fn same_beam_oracle_keeps_difference_term() {
    let k_yd = 0.1;
    let (g, state) = pair_state(k_yd);
    let eps = g.epsilon;
    let g2 = 1.0 + k_yd * k_yd;
    let g4 = g2 * g2;
    let signs = [1.0, -1.0, -1.0, 1.0];
    for (variant, sign) in VARIANTS.iter().zip(signs) {
        let s = scan(&state, ScanMode::SameBeam, *variant, &AngleGrid::default()).unwrap();
        for p in &s.points {
            let x = p.angle1 + p.angle2;
            let d = p.angle1 - p.angle2;
            let bracket = g2 * (1.0 - eps * eps) * x.sin()
                - sign * eps * (g4 + 1.0) * x.cos()
                + sign * eps * (g4 - 1.0) * d.cos();
            assert!((p.oracle - bracket * bracket).abs() <= 1e-13, "{variant:?}");
        }
    }
}

#[test]
fn narrow_split_scan_collapses_onto_closed_form() {
    let (_, state) = pair_state(1e-5);
    let s = scan(
        &state,
        ScanMode::Coincidence,
        WaveplateVariant::None,
        &AngleGrid::default(),
    )
    .unwrap();
    let mut num = 0.0;
    let mut den = 0.0;
    for p in &s.points {
        assert!((p.closed - p.oracle).abs() <= 1e-9);
        num += p.closed * p.oracle;
        den += p.oracle * p.oracle;
    }
    let ls = num / den;
    for p in &s.points {
        assert!((p.closed - ls * p.oracle).abs() <= 1e-13);
    }
}

#[test]
fn csv_round_trip_and_determinism() {
    let (_, state) = pair_state(0.1);
    let grid = AngleGrid { n1: 2, n2: 2 };
    let s = scan(&state, ScanMode::Coincidence, WaveplateVariant::None, &grid).unwrap();
    let csv = scan_to_csv(&s);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "angle1,angle2,closed,oracle");
    assert_eq!(lines.len(), 5);
    assert!(csv.ends_with('\n'));
    for (p, line) in s.points.iter().zip(&lines[1..]) {
        let expect = format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            p.angle1, p.angle2, p.closed, p.oracle
        );
        assert_eq!(*line, expect);
        for field in line.split(',') {
            assert!(field.parse::<f64>().unwrap().is_finite());
        }
    }
    let again = scan(&state, ScanMode::Coincidence, WaveplateVariant::None, &grid).unwrap();
    assert_eq!(scan_to_csv(&again), csv);
}

#[test]
fn fit_recovers_amplitude_and_offset() {
    let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.07).collect();
    for (amp, x0) in [(2.3, 0.4), (0.7, 1.4), (1.0, -0.9)] {
        let ys: Vec<f64> = xs.iter().map(|&x| amp * (x - x0).sin().powi(2)).collect();
        let f = fit_sin_squared(&xs, &ys);
        assert_relative_eq!(f.amplitude, amp, max_relative = 1e-12);
        assert_relative_eq!(f.offset, x0, epsilon = 1e-12);
        assert!(f.r_squared > 1.0 - 1e-12);
    }
}

// Flat data carries no phase information; the offset is arbitrary but
// amplitude and fit quality must still come out right.
#[test]
fn fit_handles_flat_data() {
    let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.07).collect();
    let f = fit_sin_squared(&xs, &vec![0.5; 40]);
    assert_relative_eq!(f.amplitude, 1.0, max_relative = 1e-12);
    assert_eq!(f.r_squared, 1.0);
    let f0 = fit_sin_squared(&xs, &vec![0.0; 40]);
    assert_eq!(f0.amplitude, 0.0);
    assert_eq!(f0.r_squared, 1.0);
}

#[test]
#[should_panic(expected = "singular fit system")]
fn fit_rejects_collinear_abscissa() {
    let xs = [0.2, 0.2, 0.2, 0.2];
    let ys = [0.0, 1.0, 2.0, 3.0];
    fit_sin_squared(&xs, &ys);
}

#[test]
#[should_panic(expected = "sin^2 fit needs at least three samples")]
fn fit_rejects_short_input() {
    fit_sin_squared(&[0.0, 1.0], &[0.0, 1.0]);
}

#[test]
fn idler_boundary_phase_drops_out_of_rates() {
    let (_, state) = pair_state(0.1);
    let plain = OracleEvaluator::new(&state, ScanMode::Coincidence, WaveplateVariant::None);
    let rotated =
        OracleEvaluator::with_idler_phase(&state, ScanMode::Coincidence, WaveplateVariant::None, 1.3);
    for i in 0..5 {
        for j in 0..5 {
            let (a, b) = (i as f64 * 0.6, j as f64 * 0.55);
            assert_relative_eq!(
                rotated.value(a, b),
                plain.value(a, b),
                max_relative = 1e-13,
                epsilon = 1e-14
            );
        }
    }
}

// Collinear pairs have no polarization mixing, so the oracle traced
// over one analyzer angle is a pure sin^2 whose offset reads off the
// variant's quadrature.
#[test]
fn variant_fit_offsets_without_split() {
    let (_, state) = pair_state(0.0);
    let b0 = 0.35;
    let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.077).collect();
    let expected = [-b0, b0 - FRAC_PI_2, b0, -b0 + FRAC_PI_2];
    for (variant, x0) in VARIANTS.iter().zip(expected) {
        let eval = OracleEvaluator::new(&state, ScanMode::Coincidence, *variant);
        let ys: Vec<f64> = xs.iter().map(|&x| eval.value(x, b0)).collect();
        let f = fit_sin_squared(&xs, &ys);
        assert_relative_eq!(f.amplitude, 1.0, max_relative = 1e-12);
        assert!(f.r_squared > 1.0 - 1e-12);
        let wrap = (f.offset - x0).rem_euclid(PI);
        let dist = wrap.min(PI - wrap);
        assert!(dist < 1e-10, "{variant:?}: offset {} vs {x0}", f.offset);
    }
}

#[test]
fn same_beam_fit_recovers_offset_sign() {
    let k_yd = 1e-2;
    let (g, state) = pair_state(k_yd);
    let gamma = 2.0 * f64::atan(g.epsilon);
    let scale = (1.0 + k_yd * k_yd).powi(2) * (1.0 + g.epsilon * g.epsilon).powi(2);
    let signs = [1.0, -1.0, -1.0, 1.0];
    for (variant, sign) in VARIANTS.iter().zip(signs) {
        let s = scan(&state, ScanMode::SameBeam, *variant, &AngleGrid::default()).unwrap();
        let xs: Vec<f64> = s.points.iter().map(|p| p.angle1 + p.angle2).collect();
        let ys: Vec<f64> = s.points.iter().map(|p| p.oracle).collect();
        let f = fit_sin_squared(&xs, &ys);
        assert!((f.offset - sign * gamma).abs() <= 1e-8, "{variant:?}");
        assert_relative_eq!(f.amplitude, scale, max_relative = 1e-9);
        assert!(f.r_squared > 1.0 - 1e-9);
    }
}

// The correlator divides out the common rate scale, so the pinned
// settings saturate the quantum bound at any split.
#[test]
fn pinned_settings_reach_quantum_bound() {
    let pinned = [0.0, FRAC_PI_4, FRAC_PI_8, 3.0 * FRAC_PI_8];
    for k_yd in [0.0, 1e-2, 0.1] {
        let (_, state) = pair_state(k_yd);
        let s = chsh_parameter(&state, pinned).unwrap();
        assert_relative_eq!(s, 2.0 * 2.0f64.sqrt(), max_relative = 1e-12);
    }
}

#[test]
fn correlator_is_summed_angle_cosine() {
    let (_, state) = pair_state(0.1);
    for (a, b) in [
        (0.31, 1.17),
        (0.0, 0.0),
        (1.9, 2.6),
        (0.45, 0.45),
        (2.2, 0.1),
    ] {
        // all-but-one equal settings reduce the combination to twice a
        // single correlator value
        let s = chsh_parameter(&state, [a, a, b, b]).unwrap();
        let expect = -2.0 * (2.0 * (a + b)).cos();
        assert_relative_eq!(s, expect, max_relative = 1e-12, epsilon = 1e-12);
    }
    let a = 0.3;
    let s = chsh_parameter(&state, [a, a, a, a]).unwrap();
    assert_relative_eq!(s, -2.0 * (4.0 * a).cos(), max_relative = 1e-12);
}
