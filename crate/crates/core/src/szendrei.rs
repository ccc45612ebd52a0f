//! The Szendrei expansion of a left restriction semigroupoid: pairs
//! `(A, a)` of an element together with a finite history set from its
//! identity-relation block, composed by `(A,a)(B,b) = ((ab)*A u aB, ab)`.
//!
//! The expansion turns premorphisms into restriction morphisms: every
//! premorphism out of `S` factors uniquely through the generator map
//! `iota(s) = ({s*, s}, s)`, and composing a restriction morphism out of
//! the expansion with `iota` is always a premorphism. The module also
//! carries the categorical side: object structure and identity elements of
//! the expansion of a category, unitarity of maps, the expansion functor on
//! restriction morphisms, and the projection onto the base structure with
//! its naturality square.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::axioms::{AxiomReport, Violation};
use crate::representation;
use crate::semigroupoid::{
    ElementId, ElementMapping, RestrictionSemigroupoid, Semigroupoid, StarMap,
};
use crate::structure::{self, StructureError, VertexId};

/// Default cap on the size of an identity-relation block: the number of
/// expansion elements anchored at `a` is exponential in the block of `a`.
pub const DEFAULT_BLOCK_GUARD: usize = 16;

#[derive(Debug, Error)]
pub enum SzError {
    #[error("identity-relation block of size {largest} exceeds the guard {guard}")]
    GuardExceeded { largest: usize, guard: usize },
    #[error("product {0} {1} undefined; the input does not satisfy the left restriction laws")]
    UndefinedProduct(ElementId, ElementId),
    #[error("intermediate product undefined in the target while evaluating the factorization")]
    ProductUndefined,
    #[error("the supplied mapping is not a restriction morphism")]
    NotRestrictionMorphism,
    #[error("object {0} has no two-sided identity element")]
    MissingIdentity(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("expansion invariant broken: {0}")]
    Internal(String),
}

/// An element `(A, a)` of the expansion: the anchor `a`, its star, and a
/// finite set of same-block companions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SzElement {
    pub set: BTreeSet<ElementId>,
    pub anchor: ElementId,
}

impl SzElement {
    pub fn name(&self, base: &Semigroupoid) -> String {
        let members: Vec<&str> = self.set.iter().map(|&m| base.name(m)).collect();
        format!("{{{}|{}}}", members.join(","), base.name(self.anchor))
    }
}

/// Checks the element invariants: `a` and `a*` belong to `A`, and `A` stays
/// inside the identity-relation block of `a`.
pub fn sz_element_is_valid(rs: &RestrictionSemigroupoid, x: &SzElement) -> bool {
    if !x.set.contains(&x.anchor) || !x.set.contains(&rs.star_of(x.anchor)) {
        return false;
    }
    let blocks = structure::tilde_l(rs.base(), rs.distinct_set());
    x.set.iter().all(|&m| blocks.same(m, x.anchor))
}

/// Composes two expansion elements: `None` when the anchors do not compose.
pub fn sz_compose(
    rs: &RestrictionSemigroupoid,
    x: &SzElement,
    y: &SzElement,
) -> Result<Option<SzElement>, SzError> {
    let ab = match rs.product(x.anchor, y.anchor) {
        Some(v) => v,
        None => return Ok(None),
    };
    let star_ab = rs.star_of(ab);
    let mut set = BTreeSet::new();
    for &m in &x.set {
        set.insert(
            rs.product(star_ab, m)
                .ok_or(SzError::UndefinedProduct(star_ab, m))?,
        );
    }
    for &m in &y.set {
        set.insert(
            rs.product(x.anchor, m)
                .ok_or(SzError::UndefinedProduct(x.anchor, m))?,
        );
    }
    Ok(Some(SzElement { set, anchor: ab }))
}

/// The unary operation of the expansion: `(A, a)* = (A, a*)`.
pub fn sz_star(rs: &RestrictionSemigroupoid, x: &SzElement) -> SzElement {
    SzElement {
        set: x.set.clone(),
        anchor: rs.star_of(x.anchor),
    }
}

/// The natural-order formula on the expansion:
/// `(A,a) <= (B,b) iff a <= b and a* B is a subset of A`.
pub fn sz_order(rs: &RestrictionSemigroupoid, x: &SzElement, y: &SzElement) -> bool {
    if !structure::natural_leq(rs, x.anchor, y.anchor) {
        return false;
    }
    let star_a = rs.star_of(x.anchor);
    y.set.iter().all(|&m| {
        rs.product(star_a, m)
            .map(|v| x.set.contains(&v))
            .unwrap_or(false)
    })
}

/// The generator map into the expansion: `iota(s) = ({s*, s}, s)`.
pub fn iota(rs: &RestrictionSemigroupoid, s: ElementId) -> SzElement {
    let mut set = BTreeSet::new();
    set.insert(s);
    set.insert(rs.star_of(s));
    SzElement { set, anchor: s }
}

/// Writes an expansion element as a generator word: the companions of the
/// anchor (everything in `A` except `a*` and `a`, ascending) followed by
/// the anchor. Re-evaluating `iota(s_1)* ... iota(s_{n-1})* iota(s_n)`
/// in the expansion reproduces the element.
pub fn generator_decomposition(rs: &RestrictionSemigroupoid, x: &SzElement) -> Vec<ElementId> {
    let star_a = rs.star_of(x.anchor);
    let mut word: Vec<ElementId> = x
        .set
        .iter()
        .copied()
        .filter(|&m| m != star_a && m != x.anchor)
        .collect();
    word.push(x.anchor);
    word
}

/// Evaluates a generator word inside the expansion: all factors starred
/// except the last. Returns `None` if some step fails to compose, which
/// cannot happen for words produced by [`generator_decomposition`].
pub fn evaluate_generator_word(
    rs: &RestrictionSemigroupoid,
    word: &[ElementId],
) -> Result<Option<SzElement>, SzError> {
    let (&last, starred) = word.split_last().expect("generator words are nonempty");
    let mut acc: Option<SzElement> = None;
    for &s in starred {
        let factor = sz_star(rs, &iota(rs, s));
        acc = match acc {
            None => Some(factor),
            Some(prev) => match sz_compose(rs, &prev, &factor)? {
                Some(v) => Some(v),
                None => return Ok(None),
            },
        };
    }
    let last = iota(rs, last);
    match acc {
        None => Ok(Some(last)),
        Some(prev) => sz_compose(rs, &prev, &last),
    }
}

/// The fully materialized expansion: its elements, their table with the
/// induced star map and distinct set, and the generator images.
#[derive(Clone, Debug)]
pub struct SzExpansion {
    pub source: RestrictionSemigroupoid,
    pub table: RestrictionSemigroupoid,
    pub elements: Vec<SzElement>,
    index: BTreeMap<SzElement, ElementId>,
    iota_ids: Vec<ElementId>,
}

impl SzExpansion {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: ElementId) -> &SzElement {
        &self.elements[id.index()]
    }

    pub fn id_of(&self, x: &SzElement) -> Option<ElementId> {
        self.index.get(x).copied()
    }

    /// The id of `iota(s)` in the table.
    pub fn iota_id(&self, s: ElementId) -> ElementId {
        self.iota_ids[s.index()]
    }
}

/// Enumerates the expansion of a left restriction semigroupoid. For each
/// anchor `a`, the history sets range over all subsets of the block of `a`
/// that contain `a` and `a*`; `guard` caps the block size since the element
/// count is exponential in it.
pub fn build_sz(rs: &RestrictionSemigroupoid, guard: usize) -> Result<SzExpansion, SzError> {
    let blocks = structure::tilde_l(rs.base(), rs.distinct_set());
    if let Some(largest) = blocks.blocks().iter().map(|b| b.len()).max() {
        if largest > guard {
            return Err(SzError::GuardExceeded { largest, guard });
        }
    }

    let mut elements = Vec::new();
    for a in rs.element_ids() {
        let block = blocks
            .block_of(a)
            .expect("every element belongs to a block");
        let star_a = rs.star_of(a);
        if !block.contains(&star_a) {
            return Err(SzError::Internal(format!(
                "star of {} escapes its block; the input is not left restriction",
                rs.name(a)
            )));
        }
        let required: BTreeSet<ElementId> = [a, star_a].into_iter().collect();
        let free: Vec<ElementId> = block
            .iter()
            .copied()
            .filter(|m| !required.contains(m))
            .collect();
        for mask in 0u32..(1 << free.len()) {
            let mut set = required.clone();
            for (i, &m) in free.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set.insert(m);
                }
            }
            elements.push(SzElement { set, anchor: a });
        }
    }

    let index: BTreeMap<SzElement, ElementId> = elements
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), ElementId::new(i)))
        .collect();

    let names: Vec<String> = elements.iter().map(|x| x.name(rs.base())).collect();
    let mut entries = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            if let Some(product) = sz_compose(rs, x, y)? {
                let id = index
                    .get(&product)
                    .ok_or_else(|| {
                        SzError::Internal(format!(
                            "product {} escapes the enumeration",
                            product.name(rs.base())
                        ))
                    })?
                    .index();
                entries.push(((i, j), id));
            }
        }
    }
    let base = Semigroupoid::from_entries(names, entries).expect("indices in range");

    let star = StarMap::new(
        elements
            .iter()
            .map(|x| index[&sz_star(rs, x)])
            .collect::<Vec<_>>(),
    );

    // distinct set: anchors in E whose history set absorbs left
    // multiplication by the anchor
    let mut distinct = BTreeSet::new();
    for (i, x) in elements.iter().enumerate() {
        if !rs.distinct_set().contains(&x.anchor) {
            continue;
        }
        let absorbed = x.set.iter().all(|&m| {
            rs.product(x.anchor, m)
                .map(|v| x.set.contains(&v))
                .unwrap_or(false)
        });
        if absorbed {
            distinct.insert(ElementId::new(i));
        }
    }

    let table = RestrictionSemigroupoid::new(base, star, distinct)
        .expect("star map covers the enumeration");
    let iota_ids = rs
        .element_ids()
        .map(|s| {
            index.get(&iota(rs, s)).copied().ok_or_else(|| {
                SzError::Internal(format!("iota({}) missing from the enumeration", rs.name(s)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(SzExpansion {
        source: rs.clone(),
        table,
        elements,
        index,
        iota_ids,
    })
}

/// Verifies the premorphism conditions for `phi : S -> T`: composable
/// pairs satisfy `phi(s)phi(t) = phi(s)* phi(st)` with both sides defined
/// (`pre-a`), and `phi(s)* <= phi(s*)` in the natural order (`pre-b`).
/// When both hold, the derived consequences are re-checked as well
/// (`pm1`-`pm5`); those are theorems, so a failure there signals a broken
/// input structure or a bug rather than a bad `phi`.
pub fn check_premorphism(
    s: &RestrictionSemigroupoid,
    t: &RestrictionSemigroupoid,
    phi: &ElementMapping,
) -> AxiomReport {
    let mut violations = Vec::new();
    for a in s.element_ids() {
        for b in s.element_ids() {
            let ab = match s.product(a, b) {
                Some(v) => v,
                None => continue,
            };
            let fa = phi.apply(a);
            let fb = phi.apply(b);
            let lhs = t.product(fa, fb);
            let rhs = t.product(t.star_of(fa), phi.apply(ab));
            if lhs.is_none() || rhs.is_none() || lhs != rhs {
                violations.push(Violation {
                    rule: "pre-a",
                    witnesses: vec![a, b],
                    message: "phi(s)phi(t) must be defined and equal phi(s)* phi(st)".to_string(),
                });
            }
        }
    }
    for a in s.element_ids() {
        let fa = phi.apply(a);
        if !structure::natural_leq(t, t.star_of(fa), phi.apply(s.star_of(a))) {
            violations.push(Violation {
                rule: "pre-b",
                witnesses: vec![a],
                message: "phi(s)* must lie below phi(s*)".to_string(),
            });
        }
    }
    if !violations.is_empty() {
        violations.sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
        return AxiomReport { violations };
    }

    // Derived consequences.
    let t_idem: BTreeSet<ElementId> = t.base().idempotents().into_iter().collect();
    for &e in &s.base().idempotents() {
        if !t_idem.contains(&phi.apply(e)) {
            violations.push(Violation {
                rule: "pm1",
                witnesses: vec![e],
                message: "idempotents must map to idempotents".to_string(),
            });
        }
    }
    for &e in s.distinct_set() {
        if !t.distinct_set().contains(&phi.apply(e)) {
            violations.push(Violation {
                rule: "pm2",
                witnesses: vec![e],
                message: "distinct-set members must map into the target distinct set".to_string(),
            });
        }
        for &f in s.distinct_set() {
            if s.product(e, f) == Some(e) && !structure::natural_leq(t, phi.apply(e), phi.apply(f))
            {
                violations.push(Violation {
                    rule: "pm3",
                    witnesses: vec![e, f],
                    message: "order on the distinct set must be preserved".to_string(),
                });
            }
        }
    }
    for u in s.element_ids() {
        for v in s.element_ids() {
            if structure::natural_leq(s, u, v)
                && !structure::natural_leq(t, phi.apply(u), phi.apply(v))
            {
                violations.push(Violation {
                    rule: "pm4",
                    witnesses: vec![u, v],
                    message: "natural order must be preserved".to_string(),
                });
            }
            if s.is_composable(u, v) {
                let uv_star = s
                    .product(u, s.star_of(v))
                    .expect("compositions with stars are defined for composable pairs");
                let lhs = t.product(phi.apply(u), phi.apply(v));
                let rhs = t.product(phi.apply(uv_star), phi.apply(v));
                if lhs.is_none() || lhs != rhs {
                    violations.push(Violation {
                        rule: "pm5",
                        witnesses: vec![u, v],
                        message: "phi(s)phi(t) must equal phi(st*)phi(t)".to_string(),
                    });
                }
            }
        }
    }
    violations.sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    AxiomReport { violations }
}

/// Early-exit check of the two premorphism conditions.
pub fn is_premorphism(
    s: &RestrictionSemigroupoid,
    t: &RestrictionSemigroupoid,
    phi: &ElementMapping,
) -> bool {
    for a in s.element_ids() {
        let fa = phi.apply(a);
        if !structure::natural_leq(t, t.star_of(fa), phi.apply(s.star_of(a))) {
            return false;
        }
        for b in s.element_ids() {
            if let Some(ab) = s.product(a, b) {
                let lhs = t.product(fa, phi.apply(b));
                let rhs = t.product(t.star_of(fa), phi.apply(ab));
                if lhs.is_none() || lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Factorizes a premorphism through the expansion: the restriction
/// morphism `Sz(S) -> T` sending `(A, a)` to the product of the starred
/// images of `A` minus `a*`, times `phi(a)`, evaluated left to right.
pub fn factorize(
    sz: &SzExpansion,
    t: &RestrictionSemigroupoid,
    phi: &ElementMapping,
) -> Result<ElementMapping, SzError> {
    let s = &sz.source;
    let mut images = Vec::with_capacity(sz.len());
    for x in &sz.elements {
        let star_a = s.star_of(x.anchor);
        let mut acc: Option<ElementId> = None;
        for &m in x.set.iter().filter(|&&m| m != star_a) {
            let factor = t.star_of(phi.apply(m));
            acc = Some(match acc {
                None => factor,
                Some(prev) => t.product(prev, factor).ok_or(SzError::ProductUndefined)?,
            });
        }
        let last = phi.apply(x.anchor);
        let value = match acc {
            None => last,
            Some(prev) => t.product(prev, last).ok_or(SzError::ProductUndefined)?,
        };
        images.push(value);
    }
    ElementMapping::new(sz.len(), t.len(), images).map_err(|e| SzError::Internal(e.to_string()))
}

/// The converse construction: composing a restriction morphism
/// `psi : Sz(S) -> T` with the generator map yields a premorphism
/// `S -> T`. The mapping is verified to be a restriction morphism first.
pub fn premorphism_from_morphism(
    sz: &SzExpansion,
    t: &RestrictionSemigroupoid,
    psi: &ElementMapping,
) -> Result<ElementMapping, SzError> {
    if !representation::is_restriction_morphism(&sz.table, t, psi) {
        return Err(SzError::NotRestrictionMorphism);
    }
    let images = sz
        .source
        .element_ids()
        .map(|s| psi.apply(sz.iota_id(s)))
        .collect();
    ElementMapping::new(sz.source.len(), t.len(), images)
        .map_err(|e| SzError::Internal(e.to_string()))
}

/// The object structure of a left restriction category presented as a
/// table: its graphing plus, for each object, the element acting as a
/// two-sided identity on everything composable with it.
#[derive(Clone, Debug)]
pub struct CategoryStructure {
    pub graphing: structure::Graphing,
    pub identities: Vec<ElementId>,
}

/// Detects the identity element of every graphing object, failing on the
/// first object that has none.
pub fn category_structure(rs: &RestrictionSemigroupoid) -> Result<CategoryStructure, SzError> {
    let graphing = structure::graphing(rs.base())?;
    let mut identities = Vec::with_capacity(graphing.object_count());
    for v in 0..graphing.object_count() {
        let v = VertexId::new(v);
        let found = rs.element_ids().find(|&c| {
            graphing.dom_of(c) == v
                && graphing.ran_of(c) == v
                && rs.element_ids().all(|x| {
                    (rs.product(c, x).map(|p| p == x).unwrap_or(true))
                        && (rs.product(x, c).map(|p| p == x).unwrap_or(true))
                })
        });
        match found {
            Some(c) => identities.push(c),
            None => {
                return Err(SzError::MissingIdentity(
                    graphing.object_name(v).to_string(),
                ))
            }
        }
    }
    Ok(CategoryStructure {
        graphing,
        identities,
    })
}

/// The object structure of the expansion of a category: same objects as
/// the base, with identity elements `u_e = ({1_e}, 1_e)`, each verified to
/// be a two-sided identity of the expansion table.
#[derive(Clone, Debug)]
pub struct SzCategoryStructure {
    pub objects: Vec<String>,
    pub units: Vec<ElementId>,
}

pub fn sz_category_structure(sz: &SzExpansion) -> Result<SzCategoryStructure, SzError> {
    let cs = category_structure(&sz.source)?;
    let mut units = Vec::with_capacity(cs.identities.len());
    for &one in &cs.identities {
        let unit = SzElement {
            set: [one].into_iter().collect(),
            anchor: one,
        };
        let id = sz.id_of(&unit).ok_or_else(|| {
            SzError::Internal(format!(
                "({{{0}}}, {0}) missing from the expansion; identities must be star-fixed",
                sz.source.name(one)
            ))
        })?;
        for x in sz.table.element_ids() {
            let left_ok = sz.table.product(id, x).map(|p| p == x).unwrap_or(true);
            let right_ok = sz.table.product(x, id).map(|p| p == x).unwrap_or(true);
            if !left_ok || !right_ok {
                return Err(SzError::Internal(format!(
                    "{} is not a two-sided identity of the expansion",
                    sz.element(id).name(sz.source.base())
                )));
            }
        }
        units.push(id);
    }
    Ok(SzCategoryStructure {
        objects: cs.graphing.objects().to_vec(),
        units,
    })
}

/// True when `phi` sends every identity of the source category to an
/// identity of the target category. Both sides must carry identities.
pub fn check_unitary(
    s: &RestrictionSemigroupoid,
    t: &RestrictionSemigroupoid,
    phi: &ElementMapping,
) -> Result<bool, SzError> {
    let cs = category_structure(s)?;
    let ct = category_structure(t)?;
    let target_identities: BTreeSet<ElementId> = ct.identities.into_iter().collect();
    Ok(cs
        .identities
        .iter()
        .all(|&one| target_identities.contains(&phi.apply(one))))
}

/// The expansion of a restriction morphism: `(A, a) -> (f(A), f(a))`. The
/// supplied mapping is verified to be a restriction morphism first.
pub fn sz_functor(
    sz_source: &SzExpansion,
    sz_target: &SzExpansion,
    f: &ElementMapping,
) -> Result<ElementMapping, SzError> {
    if !representation::is_restriction_morphism(&sz_source.source, &sz_target.source, f) {
        return Err(SzError::NotRestrictionMorphism);
    }
    let images = sz_source
        .elements
        .iter()
        .map(|x| {
            let image = SzElement {
                set: x.set.iter().map(|&m| f.apply(m)).collect(),
                anchor: f.apply(x.anchor),
            };
            sz_target.id_of(&image).ok_or_else(|| {
                SzError::Internal(format!(
                    "image {} missing from the target expansion",
                    image.name(sz_target.source.base())
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ElementMapping::new(sz_source.len(), sz_target.len(), images)
        .map_err(|e| SzError::Internal(e.to_string()))
}

/// The projection of the expansion onto its base: `(A, a) -> a`, a
/// surjective restriction morphism.
pub fn eta(sz: &SzExpansion) -> ElementMapping {
    ElementMapping::new(
        sz.len(),
        sz.source.len(),
        sz.elements.iter().map(|x| x.anchor).collect(),
    )
    .expect("anchors index the source")
}

/// Checks the naturality square of the projection for a restriction
/// morphism `f : S -> T`: `f(eta_S(x)) = eta_T(Sz(f)(x))` elementwise.
pub fn verify_naturality(
    sz_source: &SzExpansion,
    sz_target: &SzExpansion,
    f: &ElementMapping,
) -> Result<AxiomReport, SzError> {
    let szf = sz_functor(sz_source, sz_target, f)?;
    let eta_s = eta(sz_source);
    let eta_t = eta(sz_target);
    let mut violations = Vec::new();
    for x in sz_source.table.element_ids() {
        if f.apply(eta_s.apply(x)) != eta_t.apply(szf.apply(x)) {
            violations.push(Violation {
                rule: "naturality",
                witnesses: vec![x],
                message: "f . eta differs from eta . Sz(f)".to_string(),
            });
        }
    }
    Ok(AxiomReport { violations })
}
