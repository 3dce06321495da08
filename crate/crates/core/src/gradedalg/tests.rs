use proptest::prelude::*;

use super::*;

const Q: BaseField = BaseField::Rational;

fn z() -> GradingGroup {
    GradingGroup::free(1)
}

fn ring(group: GradingGroup, vars: &[(&str, &[i64])], rels: &[&str]) -> GradedRing {
    GradedRing::from_strings(Q, group, vars, rels).unwrap()
}

fn ideal_in(names: &[String], src: &[&str]) -> Ideal {
    let gens = src.iter().map(|s| parse_polynomial(s, names, Q).unwrap()).collect();
    Ideal::new(Q, names.len(), gens).unwrap()
}

#[test]
fn validation() {
    ring(z(), &[("x", &[1]), ("y", &[1]), ("z", &[-2])], &["x^2*z - y^2*z"]);
    let err = GradedRing::from_strings(Q, z(), &[("x", &[1]), ("y", &[1])], &["x + y^2"]).unwrap_err();
    match err {
        Error::NotHomogeneous { what, components } => {
            assert!(what.contains("x + y^2") || what.contains("y^2 + x"), "{what}");
            assert!(
                components.contains("(1): x") && components.contains("(2): y^2"),
                "{components}"
            );
        }
        e => panic!("{e:?}"),
    }
    ring(z(), &[("x", &[1])], &[]);
    assert!(GradedRing::from_strings(Q, z(), &[("x", &[1]), ("x", &[2])], &[]).is_err());
}

#[test]
fn invariants_of_sign_action() {
    let a = ring(GradingGroup::cyclic(2).unwrap(), &[("x", &[1]), ("y", &[1])], &[]);
    let inv = invariant_subring(&a).unwrap();
    let shown: Vec<String> = inv.generators.iter().map(|g| a.show(g)).collect();
    assert_eq!(shown, vec!["x^2", "x*y", "y^2"]);
    assert_eq!(inv.names, vec!["u1", "u2", "u3"]);
    assert!(inv.relations.equals(&ideal_in(&inv.names, &["u1*u3 - u2^2"])).unwrap());
    assert!(inv.verify(&a).unwrap());
}

#[test]
fn invariants_of_open_immersion_example() {
    let a = ring(z(), &[("x", &[1]), ("y", &[-1]), ("z", &[-1])], &[]);
    let inv = invariant_subring(&a).unwrap();
    let shown: Vec<String> = inv.generators.iter().map(|g| a.show(g)).collect();
    assert_eq!(shown, vec!["x*y", "x*z"]);
    assert!(inv.relations.is_zero() || inv.relation_basis().is_empty());
}

#[test]
fn invariants_of_trivial_grading() {
    let a = ring(z(), &[("x", &[0]), ("y", &[0])], &["x*y - 1"]);
    let inv = invariant_subring(&a).unwrap();
    assert_eq!(inv.len(), 2);
    assert!(inv.relations.equals(&ideal_in(&inv.names, &["u1*u2 - 1"])).unwrap());
}

#[test]
fn coinvariant_examples() {
    let a = ring(z(), &[("x", &[0]), ("y", &[1]), ("z", &[-1])], &["x*y*z - y*z"]);
    let c = coinvariants(&a).unwrap();
    assert_eq!(c.names(), &["x".to_string()]);
    assert!(c.relations().is_zero());

    let a = ring(z(), &[("x", &[1]), ("y", &[-1])], &["x*y - 1"]);
    let c = coinvariants(&a).unwrap();
    assert_eq!(c.nvars(), 0);
    assert!(c.relations().is_unit());

    let a = ring(z(), &[("x", &[0])], &["x^2 - x"]);
    let c = coinvariants(&a).unwrap();
    assert!(c.relations().equals(a.relations()).unwrap());
}

#[test]
fn graded_pieces() {
    let a = ring(z(), &[("x", &[1]), ("y", &[-1])], &[]);
    let p = graded_piece(&a, &z().element(&[2]).unwrap()).unwrap();
    assert_eq!(p.iter().map(|g| a.show(g)).collect::<Vec<_>>(), vec!["x^2"]);

    let a = ring(z(), &[("x", &[1]), ("y", &[1]), ("z", &[-2])], &[]);
    let p = graded_piece(&a, &z().element(&[1]).unwrap()).unwrap();
    assert_eq!(p.iter().map(|g| a.show(g)).collect::<Vec<_>>(), vec!["x", "y"]);

    let a = ring(z(), &[("x", &[2])], &[]);
    assert!(graded_piece(&a, &z().element(&[1]).unwrap()).unwrap().is_empty());
}

#[test]
fn maximal_ideals_at_fixed_points() {
    let a = ring(z(), &[("x", &[1]), ("y", &[1])], &[]);
    let m = fixed_point_max_ideal(&a, &RationalPoint::origin(&a).unwrap()).unwrap();
    assert!(m.equals(&ideal_in(a.names(), &["x", "y"])).unwrap());

    let a = ring(z(), &[("x", &[0]), ("y", &[1])], &[]);
    let m = fixed_point_max_ideal(&a, &RationalPoint::from_i64(&a, &[3, 0]).unwrap()).unwrap();
    assert!(m.equals(&ideal_in(a.names(), &["x - 3", "y"])).unwrap());

    let bad = RationalPoint::from_i64(&a, &[3, 1]).unwrap();
    assert!(matches!(fixed_point_max_ideal(&a, &bad), Err(Error::NotFixedPoint(_))));
}

#[test]
fn points_must_satisfy_relations() {
    let a = ring(z(), &[("x", &[1]), ("y", &[-1])], &["x*y - 1"]);
    assert!(matches!(
        RationalPoint::from_i64(&a, &[1, 2]),
        Err(Error::InvalidPoint(_))
    ));
    assert!(RationalPoint::from_i64(&a, &[2, 1]).is_err());
    assert!(RationalPoint::new(&a, vec![Q.from_i64(2), Q.from_ratio(&1.into(), &2.into()).unwrap()]).is_ok());
}

#[test]
fn minimal_generator_examples() {
    let a = ring(z(), &[("x", &[1]), ("y", &[1])], &[]);
    let o = RationalPoint::origin(&a).unwrap();
    let gens: Vec<Polynomial> = ["x", "y", "x^2 + y*x"].iter().map(|s| a.parse(s).unwrap()).collect();
    assert_eq!(minimal_homogeneous_generators(&a, &gens, &o).unwrap(), vec![0, 1]);
    let gens: Vec<Polynomial> = ["x", "x^2"].iter().map(|s| a.parse(s).unwrap()).collect();
    assert_eq!(minimal_homogeneous_generators(&a, &gens, &o).unwrap(), vec![0]);
    let gens = vec![a.parse("x").unwrap()];
    assert_eq!(minimal_homogeneous_generators(&a, &gens, &o).unwrap(), vec![0]);
    let inhom = vec![a.parse("x + y^2").unwrap()];
    assert!(matches!(
        minimal_homogeneous_generators(&a, &inhom, &o),
        Err(Error::NotHomogeneous { .. })
    ));
}

#[test]
fn cartier_examples() {
    let a = ring(z(), &[("x", &[1]), ("y", &[1])], &[]);
    let o = RationalPoint::origin(&a).unwrap();
    let p = |v: &[&str]| v.iter().map(|s| a.parse(s).unwrap()).collect::<Vec<_>>();
    assert_eq!(
        cartier_at_fixed_point(&a, &p(&["x^2"]), &o).unwrap(),
        CartierVerdict::Principal(a.parse("x^2").unwrap())
    );
    assert_eq!(
        cartier_at_fixed_point(&a, &p(&["x", "y"]), &o).unwrap(),
        CartierVerdict::NotPrincipal { rank: 2 }
    );
    assert_eq!(
        cartier_at_fixed_point(&a, &p(&["x^2", "x^3"]), &o).unwrap(),
        CartierVerdict::Principal(a.parse("x^2").unwrap())
    );
}

#[test]
fn simplification_drops_solved_generators() {
    // k[x,y]/(xy - 1) graded by Z: invariants generated by xy, which is 1
    let a = ring(z(), &[("x", &[1]), ("y", &[-1])], &["x*y - 1"]);
    let inv = invariant_subring(&a).unwrap();
    assert_eq!(inv.len(), 1);
    let s = inv.simplified("u").unwrap();
    assert_eq!(s.len(), 0);
    assert!(s.relations.is_zero());
}

/// Brute force: smallest subset whose span together with m·M contains M.
fn brute_min(a: &GradedRing, gens: &[Polynomial], x: &RationalPoint) -> usize {
    let m = fixed_point_max_ideal_generators(a, x).unwrap();
    let mut mm = Vec::new();
    for u in &m {
        for g in gens {
            mm.push(u * g);
        }
    }
    let base = a.relations().extend(mm).unwrap();
    (0..=gens.len())
        .find(|&k| {
            (0u32..1 << gens.len())
                .filter(|s| s.count_ones() as usize == k)
                .any(|s| {
                    let sub: Vec<Polynomial> = (0..gens.len())
                        .filter(|i| s >> i & 1 == 1)
                        .map(|i| gens[i].clone())
                        .collect();
                    let i = base.extend(sub).unwrap();
                    gens.iter().all(|g| i.contains(g).unwrap())
                })
        })
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generator_count_is_minimal_and_order_free(
        picks in prop::collection::vec((0u32..3, 0u32..3, -2i64..3), 1..5),
        rot in 0usize..5,
    ) {
        let a = ring(z(), &[("x", &[1]), ("y", &[1]), ("w", &[0])], &[]);
        let o = RationalPoint::origin(&a).unwrap();
        // homogeneous elements of degree i+j built from x^i y^j and w
        let gens: Vec<Polynomial> = picks
            .iter()
            .map(|&(i, j, c)| {
                let t = a.monomial(&[i, j, 0]);
                let other = a.monomial(&[i + j, 0, 1]);
                &t + &other.scale(&Q.from_i64(c))
            })
            .filter(|g| !g.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let keep = minimal_homogeneous_generators(&a, &gens, &o).unwrap();
        prop_assert_eq!(keep.len(), brute_min(&a, &gens, &o));
        let mut shuffled = gens.clone();
        shuffled.rotate_left(rot % gens.len());
        prop_assert_eq!(minimal_homogeneous_generators(&a, &shuffled, &o).unwrap().len(), keep.len());
    }

    #[test]
    fn invariant_generators_have_degree_zero(degs in prop::collection::vec(-3i64..4, 1..4)) {
        let names: Vec<String> = (0..degs.len()).map(|i| format!("t{i}")).collect();
        let vars: Vec<(&str, &[i64])> = names.iter().zip(&degs).map(|(n, d)| (n.as_str(), std::slice::from_ref(d))).collect();
        let a = ring(z(), &vars, &[]);
        let inv = invariant_subring(&a).unwrap();
        for g in &inv.generators {
            prop_assert!(a.homogeneity(g).unwrap().lies_in(&z().zero()));
        }
        prop_assert!(inv.verify(&a).unwrap());
    }
}
