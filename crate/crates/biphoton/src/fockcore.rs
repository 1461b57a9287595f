//! Minimal two-photon Fock algebra: sparse kets over occupation
//! patterns and application of beam annihilation forms.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::crystal::ModeKind;
use crate::field::ScalarForm;
use crate::modes::ModeKey;
use crate::scalar::Real;
use crate::state::TwoPhotonState;

/// Sorted occupation pattern: (mode, count) with counts 1 or 2 and at
/// most two photons in total.
pub type Occupation<R> = Vec<(ModeKey<R>, u8)>;

/// Sparse ket over occupation patterns. The empty pattern is vacuum.
#[derive(Clone, Debug, Default)]
pub struct FockKet<R: Real> {
    pub amps: BTreeMap<Occupation<R>, Complex<R>>,
}

const MAX_PHOTONS: u8 = 2;

fn photon_count<R: Real>(occ: &Occupation<R>) -> u8 {
    occ.iter().map(|&(_, n)| n).sum()
}

impl<R: Real> FockKet<R> {
    pub fn new() -> Self {
        FockKet { amps: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        let mut ket = FockKet::new();
        ket.amps.insert(Vec::new(), Complex::new(R::one(), R::zero()));
        ket
    }

    /// Adds amplitude on a pattern, checking sortedness and the photon
    /// cap.
    pub fn add(&mut self, occ: Occupation<R>, amp: Complex<R>) {
        assert!(
            occ.windows(2).all(|w| w[0].0 < w[1].0),
            "occupation pattern must be sorted with unique keys"
        );
        assert!(occ.iter().all(|&(_, n)| (1..=MAX_PHOTONS).contains(&n)));
        assert!(photon_count(&occ) <= MAX_PHOTONS, "photon cap exceeded");
        let entry = self
            .amps
            .entry(occ)
            .or_insert_with(|| Complex::new(R::zero(), R::zero()));
        *entry += amp;
    }

    /// The ket a pair of creation operators makes from vacuum. Equal
    /// modes double-occupy and pick up the bosonic sqrt(2).
    pub fn two_photon(a: ModeKey<R>, b: ModeKey<R>, amp: Complex<R>) -> Self {
        let mut ket = FockKet::new();
        if a == b {
            let boosted = amp * Complex::new(R::two().sqrt(), R::zero());
            ket.add(vec![(a, 2)], boosted);
        } else {
            let occ = if a < b { vec![(a, 1), (b, 1)] } else { vec![(b, 1), (a, 1)] };
            ket.add(occ, amp);
        }
        ket
    }

    pub fn norm_sq(&self) -> R {
        let mut total = R::zero();
        for amp in self.amps.values() {
            total += amp.norm_sqr();
        }
        total
    }
}

/// Turns a pair-amplitude state into the corresponding two-photon ket.
/// Distinct-mode pairs map one to one, so a normalized state lifts to
/// a unit-norm ket.
pub fn lift<R: Real>(state: &TwoPhotonState<R>) -> FockKet<R> {
    let mut ket = FockKet::new();
    for pair in &state.pairs {
        let key_o = ModeKey::new(ModeKind::Ordinary, pair.label_o.0, pair.label_o.1);
        let key_e = ModeKey::new(ModeKind::Extraordinary, pair.label_e.0, pair.label_e.1);
        let addend = FockKet::two_photon(key_o, key_e, pair.amp);
        for (occ, amp) in addend.amps {
            ket.add(occ, amp);
        }
    }
    ket
}

/// Applies a projected annihilation form to a ket: every occupied mode
/// with a coefficient loses one photon, weighted by coefficient times
/// sqrt(count).
pub fn apply_form<R: Real>(form: &ScalarForm<R>, ket: &FockKet<R>) -> FockKet<R> {
    let mut coeffs: BTreeMap<ModeKey<R>, Complex<R>> = BTreeMap::new();
    for &(key, c) in &form.terms {
        let entry = coeffs
            .entry(key)
            .or_insert_with(|| Complex::new(R::zero(), R::zero()));
        *entry += c;
    }
    let mut out = FockKet::new();
    for (occ, &amp) in &ket.amps {
        for (idx, &(key, count)) in occ.iter().enumerate() {
            let Some(&c) = coeffs.get(&key) else { continue };
            let scale = if count == 2 { R::two().sqrt() } else { R::one() };
            let mut reduced = occ.clone();
            if count == 2 {
                reduced[idx].1 = 1;
            } else {
                reduced.remove(idx);
            }
            out.add(reduced, amp * c * Complex::new(scale, R::zero()));
        }
    }
    out
}

/// Squared norm after two annihilations: the fourth-order correlator
/// behind a coincidence or same-beam counting rate. `a` acts first;
/// for the mode sets used here the order does not matter.
pub fn fourth_order_expectation<R: Real>(
    psi: &FockKet<R>,
    a: &ScalarForm<R>,
    b: &ScalarForm<R>,
) -> R {
    apply_form(b, &apply_form(a, psi)).norm_sq()
}
