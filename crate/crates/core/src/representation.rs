//! The representation pipeline: every left restriction semigroupoid embeds
//! into the category of partial maps between the fibers of its domain
//! assignment. This module builds that embedding, verifies all of its
//! claimed properties, specializes it to inverse semigroupoids and to
//! semigroups, and provides the table-level morphism taxonomy (morphism,
//! rigid morphism, restriction morphism, isomorphism) used throughout.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::axioms::{AxiomReport, Violation};
use crate::partialmaps::{
    is_bijective, jop_inverse, ptop_compose, ptop_star, FiberId, FiberedFunction, PTOpMorphism,
    PartialMap, PartialMapError,
};
use crate::semigroupoid::{
    ElementId, ElementMapping, RestrictionSemigroupoid, Semigroupoid, StarMap,
};
use crate::structure::{self, Graphing, StructureError};

#[derive(Debug, Error)]
pub enum RepresentationError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    PartialMap(#[from] PartialMapError),
    #[error("product {0} {1} undefined; the input does not satisfy the left restriction laws")]
    UndefinedProduct(ElementId, ElementId),
    #[error("not a semigroup: some pair is not composable")]
    NotASemigroup,
}

/// The embedding of a left restriction semigroupoid into the fiber
/// category of its domain assignment: for each element `s`, a partial map
/// `t -> ts` defined on `{ t : t s* = t }`, packaged as the morphism
/// `(D(s), alpha_s, R(s))`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: RestrictionSemigroupoid,
    pub graphing: Graphing,
    pub pi: FiberedFunction,
    pub images: Vec<PTOpMorphism>,
}

impl Embedding {
    pub fn image(&self, s: ElementId) -> &PTOpMorphism {
        &self.images[s.index()]
    }
}

/// Builds the embedding over the canonical graphing.
pub fn build_embedding(rs: &RestrictionSemigroupoid) -> Result<Embedding, RepresentationError> {
    let g = structure::graphing(rs.base())?;
    build_embedding_with(rs, g)
}

/// Builds the embedding over a caller-supplied graphing (the domain and
/// range assignment of a categorical semigroupoid is not unique; any
/// verified graphing works).
pub fn build_embedding_with(
    rs: &RestrictionSemigroupoid,
    graphing: Graphing,
) -> Result<Embedding, RepresentationError> {
    let n = rs.len();
    let point_names: Vec<String> = rs.element_ids().map(|s| rs.name(s).to_string()).collect();
    let fiber_names: Vec<String> = graphing.objects().to_vec();
    let assignment: Vec<usize> = rs
        .element_ids()
        .map(|s| graphing.dom_of(s).index())
        .collect();
    let pi = FiberedFunction::new(point_names, fiber_names, assignment)?;

    let mut images = Vec::with_capacity(n);
    for s in rs.element_ids() {
        let star_s = rs.star_of(s);
        let mut pairs = Vec::new();
        for t in rs.element_ids() {
            if rs.product(t, star_s) == Some(t) {
                let ts = rs
                    .product(t, s)
                    .ok_or(RepresentationError::UndefinedProduct(t, s))?;
                pairs.push((t.index(), ts.index()));
            }
        }
        let map = PartialMap::from_pairs(n, pairs)?;
        let image = PTOpMorphism::new(
            &pi,
            FiberId::new(graphing.dom_of(s).index()),
            map,
            FiberId::new(graphing.ran_of(s).index()),
        )?;
        images.push(image);
    }
    Ok(Embedding {
        source: rs.clone(),
        graphing,
        pi,
        images,
    })
}

/// Verifies everything the representation theorem asserts about an
/// embedding: it is a morphism into the fiber category (`morphism`), it
/// reflects composability (`rigid`), it is injective (`injective`), and it
/// preserves the unary operation (`star`).
pub fn verify_embedding(e: &Embedding) -> AxiomReport {
    let rs = &e.source;
    let mut violations = Vec::new();
    for s in rs.element_ids() {
        for t in rs.element_ids() {
            let img_composable = e.image(s).target_fiber == e.image(t).source_fiber;
            match rs.product(s, t) {
                Some(st) => {
                    if !img_composable {
                        violations.push(Violation {
                            rule: "morphism",
                            witnesses: vec![s, t],
                            message: "images of a composable pair do not compose".to_string(),
                        });
                        continue;
                    }
                    let composed = ptop_compose(e.image(s), e.image(t)).expect("fibers match");
                    if &composed != e.image(st) {
                        violations.push(Violation {
                            rule: "morphism",
                            witnesses: vec![s, t],
                            message: "alpha(s) alpha(t) differs from alpha(st)".to_string(),
                        });
                    }
                }
                None => {
                    if img_composable {
                        violations.push(Violation {
                            rule: "rigid",
                            witnesses: vec![s, t],
                            message: "images compose although the pair does not".to_string(),
                        });
                    }
                }
            }
        }
    }
    for s in rs.element_ids() {
        for t in rs.element_ids() {
            if s < t && e.image(s) == e.image(t) {
                violations.push(Violation {
                    rule: "injective",
                    witnesses: vec![s, t],
                    message: "distinct elements share an image".to_string(),
                });
            }
        }
        if e.image(rs.star_of(s)) != &ptop_star(e.image(s)) {
            violations.push(Violation {
                rule: "star",
                witnesses: vec![s],
                message: "alpha(s*) differs from alpha(s)*".to_string(),
            });
        }
    }
    violations.sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    AxiomReport { violations }
}

/// Checks the inverse-semigroupoid specialization: with `inv` an inverse
/// operation compatible with the star map (`s* = s inv(s)`), every image
/// is a partial bijection, inverses map to inverses, and the image of
/// `alpha_s` is exactly the domain of `alpha_{inv(s)}`.
pub fn inverse_embedding_check(
    rs: &RestrictionSemigroupoid,
    inv: &StarMap,
) -> Result<AxiomReport, RepresentationError> {
    let mut violations = Vec::new();
    for s in rs.element_ids() {
        let si = inv.of(s);
        let s_si = rs.product(s, si);
        let si_s = rs.product(si, s);
        let ok = match (s_si, si_s) {
            (Some(p), Some(q)) => {
                rs.product(p, s) == Some(s)
                    && rs.product(si, p) == Some(si)
                    && rs.product(q, si) == Some(si)
            }
            _ => false,
        };
        if !ok {
            violations.push(Violation {
                rule: "inv-op",
                witnesses: vec![s],
                message: "inv is not an inverse operation at s".to_string(),
            });
        }
        if s_si != Some(rs.star_of(s)) {
            violations.push(Violation {
                rule: "inv-star",
                witnesses: vec![s],
                message: "star(s) must equal s inv(s)".to_string(),
            });
        }
    }
    if !violations.is_empty() {
        return Ok(AxiomReport { violations });
    }

    let e = build_embedding(rs)?;
    for s in rs.element_ids() {
        let alpha_s = e.image(s);
        if !is_bijective(alpha_s) {
            violations.push(Violation {
                rule: "bijective",
                witnesses: vec![s],
                message: "alpha_s is not a partial bijection".to_string(),
            });
            continue;
        }
        let alpha_inv = e.image(inv.of(s));
        match jop_inverse(alpha_s) {
            Ok(expected) => {
                if alpha_inv != &expected {
                    violations.push(Violation {
                        rule: "inverse",
                        witnesses: vec![s],
                        message: "alpha(inv(s)) differs from alpha(s)^-1".to_string(),
                    });
                }
            }
            Err(_) => unreachable!("bijectivity checked above"),
        }
        if alpha_s.map.image() != alpha_inv.map.domain_set() {
            violations.push(Violation {
                rule: "image-dom",
                witnesses: vec![s],
                message: "image of alpha_s differs from domain of alpha_inv(s)".to_string(),
            });
        }
    }
    violations.sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    Ok(AxiomReport { violations })
}

/// The classical special case: a left restriction structure whose every
/// pair is composable embeds into the partial maps of its own carrier,
/// over a single object.
pub fn wagner_preston_semigroup(
    rs: &RestrictionSemigroupoid,
) -> Result<Embedding, RepresentationError> {
    if !rs.base().is_total() {
        return Err(RepresentationError::NotASemigroup);
    }
    let e = build_embedding(rs)?;
    if e.graphing.object_count() != 1 {
        return Err(StructureError::Contradiction(
            "a total table must graph over a single object".to_string(),
        )
        .into());
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Table-level morphism taxonomy.

/// Checks that `f` is a morphism: composable pairs map to composable pairs
/// and products are preserved.
pub fn check_morphism(s: &Semigroupoid, t: &Semigroupoid, f: &ElementMapping) -> AxiomReport {
    let mut violations = Vec::new();
    for a in s.element_ids() {
        for b in s.element_ids() {
            if let Some(ab) = s.product(a, b) {
                match t.product(f.apply(a), f.apply(b)) {
                    None => violations.push(Violation {
                        rule: "morphism-comp",
                        witnesses: vec![a, b],
                        message: "images of a composable pair are not composable".to_string(),
                    }),
                    Some(img) => {
                        if img != f.apply(ab) {
                            violations.push(Violation {
                                rule: "morphism-prod",
                                witnesses: vec![a, b],
                                message: "f(s)f(t) differs from f(st)".to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    AxiomReport { violations }
}

/// Checks that `f` is a rigid morphism: a morphism that also reflects
/// composability.
pub fn check_rigid_morphism(s: &Semigroupoid, t: &Semigroupoid, f: &ElementMapping) -> AxiomReport {
    let mut report = check_morphism(s, t, f);
    for a in s.element_ids() {
        for b in s.element_ids() {
            if !s.is_composable(a, b) && t.is_composable(f.apply(a), f.apply(b)) {
                report.violations.push(Violation {
                    rule: "rigid",
                    witnesses: vec![a, b],
                    message: "images compose although the pair does not".to_string(),
                });
            }
        }
    }
    report
        .violations
        .sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    report
}

/// Checks that `f` is a restriction morphism: a morphism that additionally
/// preserves the unary operation.
pub fn check_restriction_morphism(
    s: &RestrictionSemigroupoid,
    t: &RestrictionSemigroupoid,
    f: &ElementMapping,
) -> AxiomReport {
    let mut report = check_morphism(s.base(), t.base(), f);
    for a in s.element_ids() {
        if f.apply(s.star_of(a)) != t.star_of(f.apply(a)) {
            report.violations.push(Violation {
                rule: "star",
                witnesses: vec![a],
                message: "f(s*) differs from f(s)*".to_string(),
            });
        }
    }
    report
        .violations
        .sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    report
}

/// Early-exit variant of [`check_restriction_morphism`].
pub fn is_restriction_morphism(
    s: &RestrictionSemigroupoid,
    t: &RestrictionSemigroupoid,
    f: &ElementMapping,
) -> bool {
    for a in s.element_ids() {
        if f.apply(s.star_of(a)) != t.star_of(f.apply(a)) {
            return false;
        }
        for b in s.element_ids() {
            if let Some(ab) = s.product(a, b) {
                if t.product(f.apply(a), f.apply(b)) != Some(f.apply(ab)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that `f` is a restriction isomorphism: a bijective rigid
/// restriction morphism.
pub fn check_restriction_isomorphism(
    s: &RestrictionSemigroupoid,
    t: &RestrictionSemigroupoid,
    f: &ElementMapping,
) -> AxiomReport {
    let mut report = AxiomReport::merge([
        check_rigid_morphism(s.base(), t.base(), f),
        check_restriction_morphism(s, t, f),
    ]);
    let image: BTreeSet<ElementId> = f.as_slice().iter().copied().collect();
    if image.len() != s.len() || image.len() != t.len() {
        report.violations.push(Violation {
            rule: "bijective",
            witnesses: vec![],
            message: format!(
                "mapping hits {} of {} target elements from {} sources",
                image.len(),
                t.len(),
                s.len()
            ),
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::semigroupoid::StarMap;

    #[test]
    fn embedding_images_match_hand_evaluation() {
        let z2 = fixtures::z2();
        let e = build_embedding(&z2).unwrap();
        let ids = fixtures::ids(z2.base(), &["1", "g"]);
        let (one, g) = (ids[0], ids[1]);
        // alpha_1 is the identity on both elements, alpha_g is the swap
        assert_eq!(e.image(one).map, PartialMap::identity(2));
        assert_eq!(
            e.image(g).map,
            PartialMap::from_pairs(2, [(0, 1), (1, 0)]).unwrap()
        );

        let sl2 = fixtures::sl2();
        let e = build_embedding(&sl2).unwrap();
        let ids = fixtures::ids(sl2.base(), &["e", "f"]);
        // dom(alpha_e) = { t : te = t } = {e}
        assert_eq!(
            e.image(ids[0]).map,
            PartialMap::from_pairs(2, [(0, 0)]).unwrap()
        );
        assert_eq!(e.image(ids[1]).map, PartialMap::identity(2));

        let disj = fixtures::disj();
        let e = build_embedding(&disj).unwrap();
        let p = disj.base().id_of("p").unwrap();
        assert_eq!(e.image(p).map, PartialMap::from_pairs(2, [(0, 0)]).unwrap());
    }

    #[test]
    fn embeddings_verify_on_fixtures() {
        for rs in [
            fixtures::sl2(),
            fixtures::z2(),
            fixtures::disj(),
            fixtures::chain(),
        ] {
            let e = build_embedding(&rs).unwrap();
            let report = verify_embedding(&e);
            assert!(report.passed(), "{:?}", report.violations);
        }
    }

    #[test]
    fn corrupted_images_fail_injectivity() {
        let z2 = fixtures::z2();
        let mut e = build_embedding(&z2).unwrap();
        e.images[1] = e.images[0].clone();
        let report = verify_embedding(&e);
        assert!(report.violated_rules().contains("injective"));
    }

    #[test]
    fn star_in_domain_of_alpha() {
        for rs in [
            fixtures::sl2(),
            fixtures::z2(),
            fixtures::disj(),
            fixtures::chain(),
        ] {
            let e = build_embedding(&rs).unwrap();
            for s in rs.element_ids() {
                let star = rs.star_of(s);
                assert!(e
                    .image(s)
                    .map
                    .get(crate::partialmaps::PointId::new(star.index()))
                    .is_some());
            }
        }
    }

    #[test]
    fn inverse_checks_on_fixtures() {
        let z2 = fixtures::z2();
        let inv = StarMap::new(fixtures::ids(z2.base(), &["1", "g"]));
        assert!(inverse_embedding_check(&z2, &inv).unwrap().passed());

        let sl2 = fixtures::sl2();
        assert!(inverse_embedding_check(&sl2, &StarMap::identity(2))
            .unwrap()
            .passed());

        let disj = fixtures::disj();
        assert!(inverse_embedding_check(&disj, &StarMap::identity(2))
            .unwrap()
            .passed());
    }

    #[test]
    fn wagner_preston_needs_a_semigroup() {
        let z2 = fixtures::z2();
        let e = wagner_preston_semigroup(&z2).unwrap();
        assert_eq!(e.graphing.object_count(), 1);

        assert!(matches!(
            wagner_preston_semigroup(&fixtures::disj()),
            Err(RepresentationError::NotASemigroup)
        ));
    }

    #[test]
    fn morphism_taxonomy() {
        let z2 = fixtures::z2();
        let id = ElementMapping::identity(2);
        assert!(check_restriction_isomorphism(&z2, &z2, &id).passed());

        // collapse g to 1: a restriction morphism, but not rigid from DISJ
        let one = z2.base().id_of("1").unwrap();
        let collapse = ElementMapping::new(2, 2, vec![one, one]).unwrap();
        assert!(check_restriction_morphism(&z2, &z2, &collapse).passed());
        assert!(is_restriction_morphism(&z2, &z2, &collapse));

        let disj = fixtures::disj();
        let to_one = ElementMapping::new(2, 2, vec![one, one]).unwrap();
        let report = check_rigid_morphism(disj.base(), z2.base(), &to_one);
        assert!(report.violated_rules().contains("rigid"));
    }
}
