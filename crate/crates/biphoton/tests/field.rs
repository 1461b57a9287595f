use approx::assert_relative_eq;
use biphoton::constants::SPEED_OF_LIGHT;
use biphoton::field::{
    beam_field_form, beam_field_form_with_phase, project, waveplate_transform, AnalyzerSetting,
    AnnihilationForm, Beam, WaveplateVariant,
};
use biphoton::phasematch::degenerate_geometry;
use biphoton::state::build_degenerate_pair_state;
use biphoton::{CrystalConfig, Error, ModeKind, Vec3};

const OMEGA_P: f64 = 2.0 * SPEED_OF_LIGHT;

fn cfg() -> CrystalConfig<f64> {
    CrystalConfig {
        l_x: 4.0,
        l_y: 3.0,
        l_z: 5.0,
        n_o: 1.54,
        n_e_principal: 1.66,
        theta: 0.8,
        chi_eff: 1e-12,
        pump_index: 1.5,
    }
}

fn coeff_of(form: &AnnihilationForm<f64>, kind: ModeKind) -> Vec3<f64> {
    form.terms
        .iter()
        .find(|t| t.key.kind == kind)
        .expect("branch present")
        .coeff
}

#[test]
fn analyzer_direction_spans_x_and_transverse_y() {
    let c = cfg();
    let g = degenerate_geometry(0.3, OMEGA_P, &c).unwrap();
    let a = AnalyzerSetting::new(0.7, Beam::Signal, &g);
    let d = a.direction();
    assert_relative_eq!(d.x, 0.7f64.cos(), max_relative = 1e-15);
    assert_relative_eq!(d.y, 0.7f64.sin(), max_relative = 1e-15);
    assert_relative_eq!(d.z, -0.3 * 0.7f64.sin(), max_relative = 1e-15);
    let ai = AnalyzerSetting::new(0.7, Beam::Idler, &g);
    assert_relative_eq!(ai.direction().z, 0.3 * 0.7f64.sin(), max_relative = 1e-15);
}

#[test]
fn form_coefficients_follow_mixing_signs() {
    let c = cfg();
    let kyd = 0.3;
    let g = degenerate_geometry(kyd, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    let eps = kyd * g.mixing;

    let sig = beam_field_form(Beam::Signal, &s, &g);
    assert_eq!(sig.terms.len(), 2);
    let so = coeff_of(&sig, ModeKind::Ordinary);
    assert_relative_eq!(so.x, -eps, max_relative = 1e-15);
    assert_eq!(so.y, 1.0);
    assert_relative_eq!(so.z, -kyd, max_relative = 1e-15);
    let se = coeff_of(&sig, ModeKind::Extraordinary);
    assert_eq!(se.x, 1.0);
    assert_relative_eq!(se.y, eps, max_relative = 1e-15);
    assert_relative_eq!(se.z, -kyd * eps, max_relative = 1e-15);

    // the idler mixes with the opposite sign on its own transverse basis
    let idl = beam_field_form(Beam::Idler, &s, &g);
    let io = coeff_of(&idl, ModeKind::Ordinary);
    assert_relative_eq!(io.x, eps, max_relative = 1e-15);
    assert_eq!(io.y, 1.0);
    assert_relative_eq!(io.z, kyd, max_relative = 1e-15);
    let ie = coeff_of(&idl, ModeKind::Extraordinary);
    assert_eq!(ie.x, 1.0);
    assert_relative_eq!(ie.y, -eps, max_relative = 1e-15);
    assert_relative_eq!(ie.z, -kyd * eps, max_relative = 1e-15);
}

#[test]
fn collinear_forms_have_no_mixing() {
    let c = cfg();
    let g = degenerate_geometry(0.0, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    for beam in [Beam::Signal, Beam::Idler] {
        let form = beam_field_form(beam, &s, &g);
        let o = coeff_of(&form, ModeKind::Ordinary);
        assert_eq!((o.x, o.y, o.z), (0.0, 1.0, 0.0));
        let e = coeff_of(&form, ModeKind::Extraordinary);
        assert_eq!((e.x, e.y, e.z), (1.0, 0.0, 0.0));
    }
}

#[test]
fn projection_recovers_analyzer_components() {
    // collinear geometry: the o branch projects to sin(angle), the e
    // branch to cos(angle), with no mixing correction
    let c = cfg();
    let g = degenerate_geometry(0.0, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    let form = beam_field_form(Beam::Signal, &s, &g);
    let a = AnalyzerSetting::new(0.7, Beam::Signal, &g);
    let p = project(&form, &a).unwrap();
    for (key, val) in &p.terms {
        let expect = match key.kind {
            ModeKind::Ordinary => 0.7f64.sin(),
            ModeKind::Extraordinary => 0.7f64.cos(),
        };
        assert_relative_eq!(val.re, expect, max_relative = 1e-15);
        assert_eq!(val.im, 0.0);
    }
}

#[test]
fn projection_full_bracket_at_finite_split() {
    // o branch: g^2 sin(a) - eps cos(a), e branch: cos(a) + eps g^2 sin(a)
    // with g^2 the squared length of the unnormalized transverse basis
    let c = cfg();
    let kyd = 0.3;
    let g = degenerate_geometry(kyd, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    let eps = kyd * g.mixing;
    let g2 = 1.0 + kyd * kyd;
    let form = beam_field_form(Beam::Signal, &s, &g);
    let a = AnalyzerSetting::new(0.7, Beam::Signal, &g);
    let p = project(&form, &a).unwrap();
    let (sin, cos) = (0.7f64.sin(), 0.7f64.cos());
    for (key, val) in &p.terms {
        let expect = match key.kind {
            ModeKind::Ordinary => g2 * sin - eps * cos,
            ModeKind::Extraordinary => cos + eps * g2 * sin,
        };
        assert_relative_eq!(val.re, expect, max_relative = 1e-14);
    }
}

#[test]
fn projection_rejects_cross_beam_analyzer() {
    let c = cfg();
    let g = degenerate_geometry(0.3, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    let form = beam_field_form(Beam::Signal, &s, &g);
    let a = AnalyzerSetting::new(0.7, Beam::Idler, &g);
    assert_eq!(project(&form, &a).unwrap_err(), Error::BasisMismatch);
}

#[test]
fn projection_carries_idler_boundary_phase() {
    let c = cfg();
    let g = degenerate_geometry(0.3, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    let phi = 1.3;
    let zero = beam_field_form(Beam::Idler, &s, &g);
    let with = beam_field_form_with_phase(Beam::Idler, &s, &g, phi);
    let a = AnalyzerSetting::new(0.7, Beam::Idler, &g);
    let p0 = project(&zero, &a).unwrap();
    let p1 = project(&with, &a).unwrap();
    let rot = num_complex::Complex::from_polar(1.0, phi);
    for ((_, v0), (_, v1)) in p0.terms.iter().zip(&p1.terms) {
        assert!((v0 * rot - v1).norm() < 1e-15);
    }
    // the signal beam ignores the idler phase
    let sig = beam_field_form_with_phase(Beam::Signal, &s, &g, phi);
    assert_eq!(sig.phase, 0.0);
}

#[test]
fn waveplate_composition_table() {
    let c = cfg();
    let g = degenerate_geometry(0.3, OMEGA_P, &c).unwrap();
    let s = build_degenerate_pair_state(&g);
    let form = beam_field_form(Beam::Signal, &s, &g);

    let close = |a: &AnnihilationForm<f64>, b: &AnnihilationForm<f64>, sign: f64| {
        for (ta, tb) in a.terms.iter().zip(&b.terms) {
            assert_eq!(ta.key, tb.key);
            assert!((ta.coeff - tb.coeff * sign).norm() < 1e-15);
        }
    };

    let swap = waveplate_transform(&form, WaveplateVariant::Swap);
    close(&waveplate_transform(&swap, WaveplateVariant::Swap), &form, 1.0);
    let pi = waveplate_transform(&form, WaveplateVariant::PiPhase);
    close(&waveplate_transform(&pi, WaveplateVariant::PiPhase), &form, 1.0);
    // swap then pi-phase is the combined variant
    let sp = waveplate_transform(&swap, WaveplateVariant::PiPhase);
    close(&sp, &waveplate_transform(&form, WaveplateVariant::SwapPi), 1.0);
    // the combined variant squares to an overall sign flip
    let sp2 = waveplate_transform(
        &waveplate_transform(&form, WaveplateVariant::SwapPi),
        WaveplateVariant::SwapPi,
    );
    close(&sp2, &form, -1.0);
    // identity passes through
    close(&waveplate_transform(&form, WaveplateVariant::None), &form, 1.0);
}

#[test]
fn analyzer_orthogonality_defect_is_quadratic_in_tilt() {
    let c = cfg();
    let half_pi = std::f64::consts::FRAC_PI_2;
    for kyd in [0.0, 0.1, 0.3] {
        let g = degenerate_geometry(kyd, OMEGA_P, &c).unwrap();
        let a = AnalyzerSetting::new(0.7, Beam::Signal, &g);
        let b = AnalyzerSetting::new(0.7 + half_pi, Beam::Signal, &g);
        let dot = a.direction().dot(b.direction());
        let predicted = 0.7f64.sin() * 0.7f64.cos() * (g.e_ys.norm_sq() - 1.0);
        assert!((dot - predicted).abs() < 1e-15);
        if kyd == 0.0 {
            assert!(dot.abs() < 1e-15);
        }
    }
}
