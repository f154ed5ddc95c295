mod common;

use common::*;
use proptest::prelude::*;
use salvetti::spectra::{
    classes_up_to, compare_actions, conjugate_profiles, l1_ball_min, l1_length, l1_stable_slope,
    length_spectrum, m1_of_action, min_over_profiles, verify_bounds, Cat0Interval, Comparison,
    VerifyOptions,
};
use salvetti::words::{conjugacy_canonical, enumerate_ball};
use salvetti::{Automorphism, Letter, Rational};

#[test]
fn triple_agreement_on_small_balls() {
    for (name, spec) in action_family() {
        for g in enumerate_ball(spec.raag(), 4).unwrap() {
            let formula = l1_length(&g, &spec).unwrap().value;
            assert_eq!(formula, l1_stable_slope(&g, &spec).unwrap(), "{name}: {g}");
            assert_eq!(formula, l1_ball_min(&g, &spec, None).unwrap(), "{name}: {g}");
        }
    }
}

#[test]
fn profiles_serve_every_width_assignment() {
    let spec = standard(C5);
    let h = el(spec.raag(), "a b c a'");
    let profiles = conjugate_profiles(&h, 2);
    for widths in [vec![r(1, 1); 5], vec![r(1, 4), r(4, 1), r(1, 2), r(2, 1), r(3, 1)]] {
        let scaled = salvetti::ActionSpec::new(spec.raag(), widths.clone(), None).unwrap();
        assert_eq!(min_over_profiles(&profiles, &widths), l1_length(&h, &scaled).unwrap().value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lengths_are_class_functions(family_index in 0usize..6, g in letters(5, 6), k in letters(5, 4)) {
        let (_, spec) = action_family().swap_remove(family_index);
        let raag = spec.raag().clone();
        let keep = |v: Vec<Letter>| -> Vec<Letter> { v.into_iter().filter(|l| l.generator() < raag.rank()).collect() };
        let g = element(&raag, keep(g));
        let k = element(&raag, keep(k));
        let conj = g.conjugate(&k).unwrap();
        prop_assert_eq!(conjugacy_canonical(&conj).unwrap(), conjugacy_canonical(&g).unwrap());
        prop_assert_eq!(l1_length(&conj, &spec).unwrap().value, l1_length(&g, &spec).unwrap().value);
        let n = 3;
        prop_assert_eq!(
            l1_length(&g.pow(n), &spec).unwrap().value,
            l1_length(&g, &spec).unwrap().value * Rational::from_integer(n)
        );
    }

    #[test]
    fn twisting_reindexes_the_spectrum(g in letters(3, 6)) {
        let spec = standard(PATH);
        let raag = spec.raag().clone();
        let phi = Automorphism::transvection(&raag, 0, 1)
            .unwrap()
            .compose(&Automorphism::graph_symmetry(&raag, &[2, 1, 0]).unwrap())
            .unwrap();
        let twisted = spec.with_twist(Some(phi.clone())).unwrap();
        let g = element(&raag, g);
        prop_assert_eq!(
            l1_length(&g, &twisted).unwrap().value,
            l1_length(&phi.apply(&g).unwrap(), &spec).unwrap().value
        );
    }
}

#[test]
fn spectra_scale_and_compare() {
    for (name, spec) in action_family() {
        let classes = classes_up_to(spec.raag(), 3).unwrap();
        let spectrum = length_spectrum(&spec, &classes).unwrap();
        let doubled = spec.scaled(r(2, 1)).unwrap();
        let spectrum2 = length_spectrum(&doubled, &classes).unwrap();
        assert_eq!(spectrum.projectivized(), spectrum2.projectivized(), "{name}");
        assert_eq!(spectrum2.m1, spectrum.m1 * r(2, 1));
        assert_eq!(
            compare_actions(&spec, &doubled, &classes).unwrap(),
            Comparison::ProjectivelyEqual { ratio: r(2, 1) }
        );
        let inner = Automorphism::conjugation(&el(spec.raag(), "a b'"));
        let conjugated = match spec.twist() {
            Some(phi) => phi.compose(&inner).unwrap(),
            None => inner,
        };
        let conj = spec.with_twist(Some(conjugated)).unwrap();
        assert_eq!(
            compare_actions(&spec, &conj, &classes).unwrap(),
            Comparison::ProjectivelyEqual { ratio: r(1, 1) },
            "{name}"
        );
        for c in &classes {
            let l = spectrum.entries[c];
            assert_eq!(spectrum.cat0_interval(c), Some(Cat0Interval::from_l1(l)));
            assert!(spectrum.scaled(c).unwrap() <= Rational::from_integer(c.cyclic_len() as i64));
        }
    }
}

#[test]
fn identity_class_is_excluded() {
    let spec = standard(EDGE);
    let classes = classes_up_to(spec.raag(), 2).unwrap();
    assert!(classes.iter().all(|c| !c.representative().is_identity()));
    // a, a', b, b', a a, a' a', b b, b' b', a b, a b', a' b, a' b'
    assert_eq!(classes.len(), 12);
}

#[test]
fn m1_is_attained_on_fourth_powers_when_untwisted() {
    let spec = standard(C5);
    let (m1, witness) = m1_of_action(&spec).unwrap();
    assert_eq!(m1, r(4, 1));
    assert_eq!(witness.len(), 4);
}

#[test]
fn path_report() {
    let spec = standard(PATH);
    let report = verify_bounds(&spec, &VerifyOptions::default()).unwrap();
    assert!(report.all_passed);
    assert_eq!(report.check("proposition_key_a").unwrap().worst_ratio, Some(r(1, 4)));
    assert_eq!(report.check("d_star").unwrap().margin, r(0, 1));
    let scaled = verify_bounds(&spec.scaled(r(3, 1)).unwrap(), &VerifyOptions::default()).unwrap();
    for (a, b) in report.checks.iter().zip(&scaled.checks) {
        assert_eq!(a.pass, b.pass);
        assert_eq!(a.instances, b.instances);
        if a.name != "k_membership" && a.name != "d_star" {
            assert_eq!(a.margin * r(3, 1), b.margin, "{}", a.name);
        } else {
            assert_eq!(a.margin, b.margin, "{}", a.name);
        }
    }
}

#[test]
fn report_serializes_rationals_as_strings() {
    let spec = standard(EDGE);
    let report = verify_bounds(&spec, &VerifyOptions { radius: 3, samples: 5, ..Default::default() }).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["m1"], "4/1");
    assert_eq!(json["checks"][0]["name"], "theorem_a1");
}
