//! Acceptance suite: one test per release criterion, each printing a
//! pass line (visible with `cargo test --test acceptance -- --nocapture`).
//! Expected values are frozen from hand evaluation or from the brute-force
//! enumeration oracles in `sgpd_core::enumerate`.

use std::collections::BTreeSet;

use sgpd_core::axioms;
use sgpd_core::enumerate::{
    all_mappings, associative_tables, dense_is_categorical, dense_is_left_restriction,
    sample_left_restriction, star_candidates, star_map_from_dense,
};
use sgpd_core::fixtures;
use sgpd_core::partialmaps::{
    enumerate_pt_op, enumerate_ptop, ptop_morphism_count, FiberedFunction,
};
use sgpd_core::representation::{
    self, build_embedding, check_restriction_isomorphism, inverse_embedding_check, verify_embedding,
};
use sgpd_core::structure;
use sgpd_core::szendrei::{self, build_sz, DEFAULT_BLOCK_GUARD};
use sgpd_core::{ElementId, ElementMapping, RestrictionSemigroupoid, StarMap};

fn restriction_fixtures() -> Vec<(&'static str, RestrictionSemigroupoid)> {
    vec![
        ("SL2", fixtures::sl2()),
        ("Z2", fixtures::z2()),
        ("DISJ", fixtures::disj()),
    ]
}

#[test]
fn c1_axiom_suite() {
    for (name, rs) in restriction_fixtures() {
        assert!(
            axioms::check_associativity(rs.base()).passed(),
            "{name} associativity"
        );
        assert!(
            axioms::check_left_restriction(&rs).passed(),
            "{name} left restriction"
        );
        assert!(
            axioms::check_distinct_set(rs.base(), rs.distinct_set()).passed(),
            "{name} distinct set"
        );
    }

    let nc = fixtures::nc();
    assert!(
        axioms::check_associativity(&nc).passed(),
        "NC associativity"
    );
    let witness = structure::check_categorical(&nc).expect("NC must not be categorical");
    let ids = fixtures::ids(&nc, &["a", "b", "c", "d"]);
    assert_eq!(witness.s, ids[0]);
    assert_eq!(witness.t, ids[1]);
    assert_eq!(witness.right_s, vec![ids[2]]);
    assert_eq!(witness.right_t, vec![ids[2], ids[3]]);
    println!("criterion 1 (axiom suite on fixtures): PASS");
}

#[test]
fn c2_left_restriction_implies_categorical_exhaustively() {
    let mut lr_structures = 0usize;
    for n in 1..=3usize {
        let stars = star_candidates(n);
        for table in associative_tables(n) {
            let real = table.to_semigroupoid();
            assert!(axioms::is_associative(&real), "dense filter must agree");
            for star in &stars {
                let fast = dense_is_left_restriction(&table, star);
                let rs = RestrictionSemigroupoid::with_star_image(
                    real.clone(),
                    star_map_from_dense(star),
                )
                .unwrap();
                // dual route: dense scan against the report checker
                assert_eq!(fast, axioms::is_left_restriction(&rs));
                if fast {
                    lr_structures += 1;
                    assert!(
                        dense_is_categorical(&table),
                        "left restriction structure fails categoricity: {table:?} {star:?}"
                    );
                    assert!(structure::is_categorical(rs.base()));
                }
            }
        }
    }
    assert!(lr_structures > 100, "sweep found only {lr_structures}");
    println!(
        "criterion 2 (every left restriction structure on <=3 elements is categorical, {lr_structures} checked): PASS"
    );
}

#[test]
fn c3_characterization_is_an_exact_biconditional() {
    let mut checked = 0usize;
    for n in 1..=3usize {
        let stars = star_candidates(n);
        for table in associative_tables(n) {
            let real = table.to_semigroupoid();
            let mut memo: Vec<(BTreeSet<ElementId>, Option<StarMap>)> = Vec::new();
            for star in &stars {
                let star_map = star_map_from_dense(star);
                let image = star_map.image();
                let induced = match memo.iter().find(|(e, _)| e == &image) {
                    Some((_, cached)) => cached.clone(),
                    None => {
                        let out = structure::characterize_left_restriction(&real, &image);
                        memo.push((image.clone(), out.star.clone()));
                        out.star
                    }
                };
                let rs = RestrictionSemigroupoid::with_star_image(real.clone(), star_map.clone())
                    .unwrap();
                let direct = axioms::is_left_restriction(&rs);
                let via_characterization = induced.as_ref() == Some(&star_map);
                assert_eq!(
                    direct, via_characterization,
                    "biconditional fails on {table:?} with star {star:?}"
                );
                checked += 1;
            }
        }
    }
    println!("criterion 3 (characterization biconditional over {checked} table/star pairs): PASS");
}

#[test]
fn c4_fiber_category_counts_and_isomorphism() {
    let trivial = FiberedFunction::trivial(vec!["1".into(), "2".into()]);
    assert_eq!(ptop_morphism_count(&trivial), 9);
    let enumerated = enumerate_ptop(&trivial, 64).unwrap();
    assert_eq!(enumerated.table.len(), 9);
    assert!(axioms::check_left_restriction(&enumerated.table).passed());

    // match each fiber morphism with its underlying partial map in the
    // directly built reversed partial-map monoid
    let direct = enumerate_pt_op(2, 64).unwrap();
    assert_eq!(direct.table.len(), 9);
    let mapping = ElementMapping::new(
        9,
        9,
        enumerated
            .morphisms
            .iter()
            .map(|m| {
                ElementId::new(
                    direct
                        .maps
                        .iter()
                        .position(|pm| pm == &m.map)
                        .expect("same partial maps on both sides"),
                )
            })
            .collect(),
    )
    .unwrap();
    let report = check_restriction_isomorphism(&enumerated.table, &direct.table, &mapping);
    assert!(report.passed(), "{:?}", report.violations);

    let split = FiberedFunction::new(
        vec!["1".into(), "2".into()],
        vec!["a".into(), "b".into()],
        vec![0, 1],
    )
    .unwrap();
    assert_eq!(ptop_morphism_count(&split), 8);
    assert_eq!(enumerate_ptop(&split, 64).unwrap().table.len(), 8);
    println!("criterion 4 (fiber category counts 9 and 8, isomorphic to the reversed partial-map monoid): PASS");
}

#[test]
fn c5_embedding_theorem() {
    for (name, rs) in restriction_fixtures() {
        let e = build_embedding(&rs).unwrap();
        assert!(verify_embedding(&e).passed(), "{name}");
    }
    let samples = sample_left_restriction(42, 100, 6);
    assert_eq!(samples.len(), 100);
    for (i, rs) in samples.iter().enumerate() {
        let e = build_embedding(rs).unwrap_or_else(|err| panic!("sample {i}: {err}"));
        let report = verify_embedding(&e);
        assert!(report.passed(), "sample {i}: {:?}", report.violations);
    }

    let z2 = fixtures::z2();
    let inv = StarMap::new(fixtures::ids(z2.base(), &["1", "g"]));
    assert!(inverse_embedding_check(&z2, &inv).unwrap().passed());
    for rs in [fixtures::sl2(), fixtures::disj()] {
        let inv = StarMap::identity(rs.len());
        assert!(inverse_embedding_check(&rs, &inv).unwrap().passed());
    }
    println!("criterion 5 (restriction embedding verified on fixtures and 100 samples): PASS");
}

#[test]
fn c6_expansion_and_factorization() {
    let z2 = fixtures::z2();
    let sz = build_sz(&z2, DEFAULT_BLOCK_GUARD).unwrap();
    let names: Vec<&str> = sz.table.element_ids().map(|i| sz.table.name(i)).collect();
    assert_eq!(names, vec!["{1|1}", "{1,g|1}", "{1,g|g}"]);

    for (name, rs) in restriction_fixtures() {
        let sz = build_sz(&rs, DEFAULT_BLOCK_GUARD).unwrap();
        assert!(
            axioms::check_left_restriction(&sz.table).passed(),
            "expansion of {name}"
        );
        assert!(
            axioms::check_distinct_set(sz.table.base(), sz.table.distinct_set()).passed(),
            "distinct set of the expansion of {name}"
        );
    }

    let mut premorphisms = 0usize;
    let mut morphisms = 0usize;
    for (_, s) in restriction_fixtures() {
        let sz = build_sz(&s, DEFAULT_BLOCK_GUARD).unwrap();
        for (_, t) in restriction_fixtures() {
            // round trip 1: premorphisms S -> T factor and come back
            for phi in all_mappings(s.len(), t.len()) {
                if !szendrei::is_premorphism(&s, &t, &phi) {
                    continue;
                }
                premorphisms += 1;
                let bar = szendrei::factorize(&sz, &t, &phi).unwrap();
                assert!(representation::check_restriction_morphism(&sz.table, &t, &bar).passed());
                for x in s.element_ids() {
                    assert_eq!(bar.apply(sz.iota_id(x)), phi.apply(x), "bar . iota = phi");
                }
                assert_eq!(
                    szendrei::premorphism_from_morphism(&sz, &t, &bar).unwrap(),
                    phi
                );
            }
            // round trip 2: restriction morphisms Sz(S) -> T are recovered
            // from the premorphism they induce
            for psi in all_mappings(sz.len(), t.len()) {
                if !representation::is_restriction_morphism(&sz.table, &t, &psi) {
                    continue;
                }
                morphisms += 1;
                let phi = szendrei::premorphism_from_morphism(&sz, &t, &psi).unwrap();
                assert!(szendrei::check_premorphism(&s, &t, &phi).passed());
                assert_eq!(szendrei::factorize(&sz, &t, &phi).unwrap(), psi);
            }
        }
    }
    assert!(premorphisms > 0 && morphisms > 0);
    println!(
        "criterion 6 (expansion of the 2-group plus {premorphisms} premorphism and {morphisms} morphism round trips): PASS"
    );
}

#[test]
fn c7_order_formula_agrees_with_the_natural_order() {
    let mut expansions: Vec<(RestrictionSemigroupoid, _)> = restriction_fixtures()
        .into_iter()
        .map(|(_, rs)| {
            let sz = build_sz(&rs, DEFAULT_BLOCK_GUARD).unwrap();
            (rs, sz)
        })
        .collect();
    expansions.push({
        let chain = fixtures::chain();
        let sz = build_sz(&chain, DEFAULT_BLOCK_GUARD).unwrap();
        (chain, sz)
    });
    let mut pairs = 0usize;
    for (rs, sz) in &expansions {
        let order = structure::natural_order(&sz.table).unwrap();
        for x in sz.table.element_ids() {
            for y in sz.table.element_ids() {
                assert_eq!(
                    szendrei::sz_order(rs, sz.element(x), sz.element(y)),
                    order.holds(x, y)
                );
                pairs += 1;
            }
        }
    }
    println!("criterion 7 (expansion order formula on {pairs} pairs): PASS");
}

#[test]
fn c8_expansion_is_functorial_and_natural() {
    // all restriction morphisms among the fixtures
    let fixture_list: Vec<RestrictionSemigroupoid> = restriction_fixtures()
        .into_iter()
        .map(|(_, rs)| rs)
        .collect();
    let mut instances: Vec<(usize, usize, ElementMapping)> = Vec::new();
    for (i, s) in fixture_list.iter().enumerate() {
        for (j, t) in fixture_list.iter().enumerate() {
            for f in all_mappings(s.len(), t.len()) {
                if representation::is_restriction_morphism(s, t, &f) {
                    instances.push((i, j, f));
                }
            }
        }
    }
    assert!(!instances.is_empty());

    // plus 50 random instances between sampled structures
    let sampled = sample_left_restriction(23, 12, 4);
    let base = fixture_list.len();
    let mut all: Vec<RestrictionSemigroupoid> = fixture_list.clone();
    all.extend(sampled);
    'outer: for (i, s) in all.iter().enumerate() {
        for (j, t) in all.iter().enumerate() {
            if i < base && j < base {
                continue; // fixtures already enumerated
            }
            for f in all_mappings(s.len(), t.len()) {
                if representation::is_restriction_morphism(s, t, &f) {
                    instances.push((i, j, f));
                    if instances.len() >= 200 {
                        break 'outer;
                    }
                }
            }
        }
    }
    assert!(
        instances.len() >= 50 + 16,
        "found {} instances",
        instances.len()
    );

    let expansions: Vec<_> = all
        .iter()
        .map(|rs| build_sz(rs, DEFAULT_BLOCK_GUARD).unwrap())
        .collect();

    // functor preserves identities
    for (rs, sz) in all.iter().zip(&expansions) {
        let id = ElementMapping::identity(rs.len());
        assert_eq!(
            szendrei::sz_functor(sz, sz, &id).unwrap(),
            ElementMapping::identity(sz.len())
        );
        // the projection is a surjective restriction morphism
        let eta = szendrei::eta(sz);
        assert!(representation::check_restriction_morphism(&sz.table, rs, &eta).passed());
        let hit: BTreeSet<ElementId> = eta.as_slice().iter().copied().collect();
        assert_eq!(hit.len(), rs.len());
    }

    // naturality for every instance
    for (i, j, f) in &instances {
        let report = szendrei::verify_naturality(&expansions[*i], &expansions[*j], f).unwrap();
        assert!(report.passed());
    }

    // composition law on composable instance pairs
    let mut compositions = 0usize;
    for (i, j, f) in &instances {
        for (j2, k, g) in &instances {
            if j2 != j || compositions >= 300 {
                continue;
            }
            let gf = f.then(g);
            let sz_f = szendrei::sz_functor(&expansions[*i], &expansions[*j], f).unwrap();
            let sz_g = szendrei::sz_functor(&expansions[*j], &expansions[*k], g).unwrap();
            let sz_gf = szendrei::sz_functor(&expansions[*i], &expansions[*k], &gf).unwrap();
            assert_eq!(sz_f.then(&sz_g), sz_gf);
            compositions += 1;
        }
    }
    assert!(compositions >= 50);
    println!(
        "criterion 8 (functor laws and naturality on {} morphisms, {compositions} compositions): PASS",
        instances.len()
    );
}

#[test]
fn c9_category_units_and_unitarity() {
    let disj = fixtures::disj();
    let sz = build_sz(&disj, DEFAULT_BLOCK_GUARD).unwrap();
    let cs = szendrei::sz_category_structure(&sz).unwrap();
    assert_eq!(cs.objects.len(), 2);
    // explicit re-check that each unit is a two-sided identity
    for &u in &cs.units {
        for x in sz.table.element_ids() {
            if let Some(p) = sz.table.product(u, x) {
                assert_eq!(p, x);
            }
            if let Some(p) = sz.table.product(x, u) {
                assert_eq!(p, x);
            }
        }
    }

    let mut premorphisms = 0usize;
    for phi in all_mappings(2, 2) {
        if !szendrei::is_premorphism(&disj, &disj, &phi) {
            continue;
        }
        premorphisms += 1;
        let bar = szendrei::factorize(&sz, &disj, &phi).unwrap();
        let phi_unitary = szendrei::check_unitary(&disj, &disj, &phi).unwrap();
        let bar_unitary = szendrei::check_unitary(&sz.table, &disj, &bar).unwrap();
        assert_eq!(phi_unitary, bar_unitary);
    }
    assert!(premorphisms > 0);
    println!(
        "criterion 9 (expansion units of the two-object category, unitarity matches on {premorphisms} premorphisms): PASS"
    );
}
