use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use siegel_kr::admissible::{enumerate_adm, is_admissible, AdmissiblePoset};
use siegel_kr::affine::simple_affine;
use siegel_kr::alcove::{alcove_to_element, element_to_alcove};
use siegel_kr::prank0::{fixed_point_free_elements, lift_to_adm0};
use siegel_kr::strata::{is_superspecial, prank, strata_table};
use siegel_kr::verify::{kr_candidates, run_suite};
use siegel_kr::{bruhat_leq, tau, AffineElement, SignedPermutation, TranslationVector};

fn arb_element(max_g: usize) -> impl Strategy<Value = AffineElement> {
    (1..=max_g).prop_flat_map(|g| {
        let w = Just((1..=g as u8).collect::<Vec<u8>>()).prop_shuffle();
        let signs = proptest::collection::vec(any::<bool>(), g);
        let half = proptest::collection::vec(-2i32..=3, g);
        (Just(g), w, signs, half, -1i32..=3).prop_map(|(g, sigma, signs, half, c)| {
            let n = 2 * g;
            let mut map = vec![0u8; n];
            for i in 0..g {
                let (a, b) = (sigma[i], (n + 1) as u8 - sigma[i]);
                let (a, b) = if signs[i] { (b, a) } else { (a, b) };
                map[i] = a;
                map[n - 1 - i] = b;
            }
            let mut lambda = vec![0; n];
            for i in 0..g {
                lambda[i] = half[i];
                lambda[n - 1 - i] = c - half[i];
            }
            AffineElement::from_parts(lambda, map).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduced_word_reproduces_the_element(x in arb_element(4)) {
        let word = x.reduced_word().unwrap();
        prop_assert_eq!(word.letters.len(), x.length());
        prop_assert_eq!(word.omega_power, x.omega_power());
        prop_assert_eq!(AffineElement::from_word(&word.letters, word.omega_power, x.g()).unwrap(), x);
    }

    #[test]
    fn length_is_inverse_invariant(x in arb_element(5)) {
        prop_assert_eq!(x.inverse().length(), x.length());
        prop_assert_eq!(&x * &x.inverse(), AffineElement::identity(x.g()));
    }

    #[test]
    fn simple_reflections_change_length_by_one(x in arb_element(4), i in 0usize..5) {
        let g = x.g();
        let i = i % (g + 1);
        let y = &simple_affine(i, g).unwrap() * &x;
        prop_assert_eq!(y.length().abs_diff(x.length()), 1);
        prop_assert_eq!(y.length() < x.length(), x.is_left_descent(i));
    }

    #[test]
    fn bruhat_is_reflexive_and_respects_length(x in arb_element(4), y in arb_element(4)) {
        prop_assert!(bruhat_leq(&x, &x));
        if x.g() == y.g() && bruhat_leq(&x, &y) && x != y {
            prop_assert!(x.length() < y.length());
            prop_assert!(!bruhat_leq(&y, &x));
        }
    }

    #[test]
    fn admissible_iff_permissible(x in arb_element(4)) {
        prop_assert_eq!(is_admissible(&x), element_to_alcove(&x).is_permissible());
    }

    #[test]
    fn alcove_round_trip(x in arb_element(5)) {
        prop_assert_eq!(alcove_to_element(&element_to_alcove(&x)).unwrap(), x);
    }
}

#[test]
fn admissible_counts() {
    // oracle: permissible alcoves in a box containing Adm(μ)
    for (g, expected) in [(1, 3), (2, 13), (3, 79), (4, 633)] {
        let scan = kr_candidates(g).iter().filter(|x| element_to_alcove(x).is_permissible()).count();
        assert_eq!(scan, expected);
        assert_eq!(enumerate_adm(g).unwrap().len(), expected);
    }
}

/// Breadth-first search on the Bruhat graph below the maxima, through
/// arbitrary reflections `x ↦ xr` of smaller length. No reduced words involved.
fn adm_by_reflections(g: usize) -> BTreeSet<AffineElement> {
    let reflections: Vec<AffineElement> = {
        let mut found = HashSet::new();
        let gens: Vec<AffineElement> = (0..=g).map(|i| simple_affine(i, g).unwrap()).collect();
        let mut queue: VecDeque<AffineElement> = gens.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            if r.length() > 2 * g * g + 1 || !found.insert(r.clone()) {
                continue;
            }
            for s in &gens {
                queue.push_back(&(s * &r) * s);
            }
        }
        found.into_iter().collect()
    };
    let maxima = siegel_kr::admissible::maximal_elements(g);
    let mut seen: BTreeSet<AffineElement> = maxima.iter().cloned().collect();
    let mut queue: VecDeque<AffineElement> = maxima.into_iter().collect();
    while let Some(y) = queue.pop_front() {
        for r in &reflections {
            let z = &y * r;
            if z.length() < y.length() && seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}

#[test]
fn enumeration_matches_reflection_search() {
    for g in 1..=3 {
        let poset = enumerate_adm(g).unwrap();
        let found: BTreeSet<AffineElement> = poset.elements.iter().cloned().collect();
        assert_eq!(found, adm_by_reflections(g), "g = {g}");
    }
}

#[test]
fn poset_json_round_trip() {
    for g in 1..=3 {
        let poset = enumerate_adm(g).unwrap();
        assert_eq!(AdmissiblePoset::from_json(&poset.to_json().unwrap()).unwrap(), poset);
    }
}

#[test]
fn every_maximal_translation_is_admissible_and_above_tau() {
    for g in 1..=4 {
        let t_mu = AffineElement::translation(TranslationVector::mu(g));
        assert!(is_admissible(&t_mu));
        assert!(bruhat_leq(&tau(g), &t_mu));
        assert_eq!(t_mu.length(), g * (g + 1) / 2);
    }
}

#[test]
fn prank_zero_strata_are_the_lifts() {
    for g in 1..=3 {
        let from_table: BTreeSet<AffineElement> =
            strata_table(g).unwrap().into_iter().filter(|r| r.p_rank == 0).map(|r| r.x).collect();
        let lifted: BTreeSet<AffineElement> =
            fixed_point_free_elements(g).unwrap().iter().map(|w| lift_to_adm0(w).unwrap()).collect();
        assert_eq!(from_table, lifted);
    }
}

#[test]
fn superspecial_strata_have_prank_zero() {
    for g in 1..=4 {
        for x in enumerate_adm(g).unwrap().elements {
            if is_superspecial(&x).unwrap() {
                assert_eq!(prank(&x).unwrap(), 0, "{x}");
            }
        }
    }
}

#[test]
fn finite_group_order() {
    for (g, order) in [(1, 2), (2, 8), (3, 48), (4, 384)] {
        assert_eq!(SignedPermutation::all_elements(g).len(), order);
    }
}

#[test]
fn suites_pass_at_rank_three() {
    for report in run_suite("all", 3, 5).unwrap() {
        assert!(report.passed, "{report:?}");
    }
}
