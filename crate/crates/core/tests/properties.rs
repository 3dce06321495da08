mod common;

use common::*;
use lunaquot::abelian::GradingGroup;
use lunaquot::gradedalg::{invariant_subring, GradedRing};
use lunaquot::luna::{
    base_change, default_probes, is_strongly_equivariant, luna_verdict, quotient_morphism, GradedRingMap,
};
use lunaquot::poly::{BaseField, Polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_maps() -> Vec<(String, GradedRingMap)> {
    fixtures()
        .into_iter()
        .flat_map(|(file, s)| s.maps.into_iter().map(move |m| (format!("{file}/{}", m.name), m.map)))
        .collect()
}

#[test]
fn luna_criterion_agrees_with_strong_equivariance() {
    let maps = all_maps();
    assert!(maps.len() >= 12);
    for (name, f) in maps {
        let strong = is_strongly_equivariant(&f).unwrap().holds;
        let luna = luna_verdict(&f, &default_probes(f.target()).unwrap()).unwrap();
        assert_eq!(luna.criterion_holds, strong, "{name}");
    }
}

#[test]
fn strong_maps_preserve_cut_ideals() {
    let mut checked = 0;
    for (name, f) in all_maps() {
        if f.source().group().is_integers() && is_strongly_equivariant(&f).unwrap().holds {
            check_cut_ideals(&f).unwrap_or_else(|m| panic!("{name}: {m}"));
            checked += 1;
        }
    }
    assert!(checked >= 5);
}

#[test]
fn fixed_loci_of_smooth_fixtures_are_smooth() {
    for (file, s) in fixtures() {
        for r in &s.rings {
            check_smooth_fixed_locus(&r.ring).unwrap_or_else(|m| panic!("{file}/{}: {m}", r.name));
        }
    }
}

#[test]
fn fixed_locus_of_a_node_is_detected_singular() {
    let a = GradedRing::from_strings(
        BaseField::Rational,
        GradingGroup::free(1),
        &[("x", &[0]), ("y", &[0])],
        &["x*y"],
    )
    .unwrap();
    let o = lunaquot::gradedalg::RationalPoint::origin(&a).unwrap();
    assert!(!smooth_point(&a, &o).unwrap());
}

#[test]
fn cotangent_dimensions_are_constant_on_orbits() {
    let q = BaseField::Rational;
    for (name, f) in all_maps() {
        for t in [q.from_i64(2), q.from_i64(-1), q.from_i64(3).inv()] {
            check_orbit_invariance(&f, &t).unwrap_or_else(|m| panic!("{name}: {m}"));
        }
    }
}

#[test]
fn quotients_of_surjections_are_surjective() {
    for (name, f) in all_maps() {
        let images = f.images().to_vec();
        let b = f.target();
        let onto = (0..b.nvars()).all(|i| {
            lunaquot::groebner::subalgebra_membership(&b.var(i), &images, b.relations())
                .unwrap()
                .is_some()
        });
        if onto {
            assert!(quotient_morphism(&f).unwrap().is_surjective().unwrap(), "{name}");
        }
    }
}

fn same_ring(a: &GradedRing, b: &GradedRing) -> bool {
    a.names() == b.names() && a.degrees() == b.degrees() && a.relations().equals(b.relations()).unwrap()
}

#[test]
fn composites_and_base_changes_of_strong_maps_are_strong() {
    let strong: Vec<(String, GradedRingMap)> = all_maps()
        .into_iter()
        .filter(|(_, f)| is_strongly_equivariant(f).unwrap().holds)
        .collect();
    for (n1, f) in &strong {
        for (n2, g) in &strong {
            if same_ring(f.target(), g.source()) {
                let fg = f
                    .compose(&GradedRingMap::new(f.target().clone(), g.target().clone(), g.images().to_vec()).unwrap())
                    .unwrap();
                assert!(is_strongly_equivariant(&fg).unwrap().holds, "{n1} then {n2}");
            }
        }
        // base change along the identity and along another strong map out of A
        let id = GradedRingMap::identity(f.source().clone());
        assert!(
            is_strongly_equivariant(&base_change(f, &id).unwrap()).unwrap().holds,
            "{n1}"
        );
        for (n2, g) in &strong {
            if same_ring(g.source(), f.source()) {
                let g = GradedRingMap::new(f.source().clone(), g.target().clone(), g.images().to_vec()).unwrap();
                let bc = base_change(f, &g).unwrap();
                assert!(is_strongly_equivariant(&bc).unwrap().holds, "{n1} along {n2}");
            }
        }
    }
}

#[test]
fn random_hilbert_bases_match_box_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let s = random_system(&mut rng);
        check_hilbert_basis(&s, 6).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groebner_bases_stay_homogeneous(
        degs in prop::collection::vec(-2i64..3, 2..4),
        picks in prop::collection::vec(prop::collection::vec((0u32..3, -3i64..4), 1..4), 1..4),
    ) {
        let names = ["a", "b", "c"];
        let vars: Vec<(&str, &[i64])> = degs.iter().enumerate().map(|(i, d)| (names[i], std::slice::from_ref(d))).collect();
        let ring = GradedRing::from_strings(BaseField::Rational, GradingGroup::free(1), &vars, &[]).unwrap();
        let n = ring.nvars();
        let gens: Vec<Polynomial> = picks
            .iter()
            .filter_map(|terms| {
                let mut p = Polynomial::zero(BaseField::Rational, n);
                for (i, &(e, c)) in terms.iter().enumerate() {
                    let mut ex = vec![0; n];
                    ex[i % n] = e;
                    ex[(i + 1) % n] += 1;
                    p = &p + &ring.monomial(&ex).scale(&BaseField::Rational.from_i64(c));
                }
                // keep the top homogeneous component
                p.homogeneous_components(ring.group(), ring.degrees()).unwrap().into_values().last()
            })
            .collect();
        prop_assume!(!gens.is_empty());
        prop_assert_eq!(check_homogeneous_basis(&ring, &gens), Ok(()));
    }

    #[test]
    fn invariants_can_be_taken_one_factor_at_a_time(seed in any::<u64>()) {
        let a = random_z2_ring(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(check_two_step_invariants(&a), Ok(()));
    }

    #[test]
    fn minimal_generator_counts_match_subset_search(seed in any::<u64>()) {
        let (a, gens) = random_mingens_instance(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(check_mingens(&a, &gens), Ok(()));
    }

    #[test]
    fn invariant_presentations_are_consistent(seed in any::<u64>()) {
        let a = random_z2_ring(&mut ChaCha8Rng::seed_from_u64(seed));
        let inv = invariant_subring(&a).unwrap();
        prop_assert!(inv.verify(&a).unwrap());
        for g in &inv.generators {
            prop_assert!(a.homogeneity(g).unwrap().lies_in(&a.group().zero()));
        }
    }
}
