//! Derived structure of a (left restriction) semigroupoid: the partial
//! orders on the distinct set and on the whole carrier, the left/right
//! identity relations, categoricity, the underlying graph structure, and
//! the congruence-based characterization of left restriction structures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::axioms::{self, AxiomReport, Violation};
use crate::semigroupoid::{ElementId, RestrictionSemigroupoid, Semigroupoid, StarMap};

/// Index of a vertex of a graphing.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(usize);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// Witness that two right-composability sets overlap without being equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoricalWitness {
    pub s: ElementId,
    pub t: ElementId,
    pub overlap: ElementId,
    pub right_s: Vec<ElementId>,
    pub right_t: Vec<ElementId>,
}

impl fmt::Display for CategoricalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S^{} and S^{} share {} but differ",
            self.s, self.t, self.overlap
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("semigroupoid is not categorical: {0}")]
    NotCategorical(CategoricalWitness),
    #[error("graphing construction failed: {0}")]
    GraphingFailed(String),
    #[error("derived-structure contradiction (broken precondition or bug): {0}")]
    Contradiction(String),
}

/// A reflexive antisymmetric transitive relation on a carrier of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    carrier: Vec<ElementId>,
    pairs: BTreeSet<(ElementId, ElementId)>,
}

impl PartialOrder {
    fn checked(
        carrier: Vec<ElementId>,
        pairs: BTreeSet<(ElementId, ElementId)>,
    ) -> Result<Self, StructureError> {
        for &a in &carrier {
            if !pairs.contains(&(a, a)) {
                return Err(StructureError::NotPartialOrder(format!(
                    "not reflexive at {a}"
                )));
            }
        }
        for &(a, b) in &pairs {
            if a != b && pairs.contains(&(b, a)) {
                return Err(StructureError::NotPartialOrder(format!(
                    "antisymmetry fails on {a}, {b}"
                )));
            }
            for &c in &carrier {
                if pairs.contains(&(b, c)) && !pairs.contains(&(a, c)) {
                    return Err(StructureError::NotPartialOrder(format!(
                        "transitivity fails on {a}, {b}, {c}"
                    )));
                }
            }
        }
        Ok(PartialOrder { carrier, pairs })
    }

    pub fn holds(&self, a: ElementId, b: ElementId) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn carrier(&self) -> &[ElementId] {
        &self.carrier
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.pairs.iter().copied()
    }
}

/// A partition of a finite carrier into disjoint blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition<T> {
    blocks: Vec<Vec<T>>,
    index: BTreeMap<T, usize>,
}

impl<T: Copy + Ord> Partition<T> {
    /// Builds a partition from blocks; blocks are sorted internally and
    /// ordered by their least member, so the representation is canonical.
    pub fn from_blocks(blocks: Vec<Vec<T>>) -> Self {
        let mut blocks: Vec<Vec<T>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort();
                b.dedup();
                b
            })
            .collect();
        blocks.sort();
        let mut index = BTreeMap::new();
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                index.insert(x, i);
            }
        }
        Partition { blocks, index }
    }

    /// The partition into singletons (the identity relation).
    pub fn discrete(carrier: impl IntoIterator<Item = T>) -> Self {
        Partition::from_blocks(carrier.into_iter().map(|x| vec![x]).collect())
    }

    /// The partition with a single block.
    pub fn indiscrete(carrier: impl IntoIterator<Item = T>) -> Self {
        Partition::from_blocks(vec![carrier.into_iter().collect()])
    }

    pub fn same(&self, a: T, b: T) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn blocks(&self) -> &[Vec<T>] {
        &self.blocks
    }

    pub fn block_of(&self, a: T) -> Option<&[T]> {
        self.index.get(&a).map(|&i| self.blocks[i].as_slice())
    }

    pub fn carrier_len(&self) -> usize {
        self.index.len()
    }
}

/// A directed-graph structure over a semigroupoid: vertices plus domain and
/// range assignments such that composability is exactly `dom(s) = ran(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graphing {
    objects: Vec<String>,
    dom: Vec<VertexId>,
    ran: Vec<VertexId>,
}

impl Graphing {
    pub fn new(objects: Vec<String>, dom: Vec<VertexId>, ran: Vec<VertexId>) -> Self {
        Graphing { objects, dom, ran }
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, v: VertexId) -> &str {
        &self.objects[v.0]
    }

    pub fn dom_of(&self, s: ElementId) -> VertexId {
        self.dom[s.index()]
    }

    pub fn ran_of(&self, s: ElementId) -> VertexId {
        self.ran[s.index()]
    }
}

/// The image of the star map, `{ s* : s in S }`. For a structure passing
/// the left restriction laws this is the canonical distinct set and a
/// subset of the idempotents.
pub fn star_image(rs: &RestrictionSemigroupoid) -> BTreeSet<ElementId> {
    let image = rs.star().image();
    debug_assert!({
        let idem: BTreeSet<ElementId> = rs.base().idempotents().into_iter().collect();
        image.is_subset(&idem) || !axioms::is_left_restriction(rs)
    });
    image
}

/// The partial order `e <= f iff (e,f) composable and e = ef` on a distinct
/// set. Fails when the relation is not an order, meaning `e_set` was not a
/// valid distinct set.
pub fn order_e(
    s: &Semigroupoid,
    e_set: &BTreeSet<ElementId>,
) -> Result<PartialOrder, StructureError> {
    let carrier: Vec<ElementId> = e_set.iter().copied().collect();
    let mut pairs = BTreeSet::new();
    for &e in &carrier {
        for &f in &carrier {
            if s.product(e, f) == Some(e) {
                pairs.insert((e, f));
            }
        }
    }
    PartialOrder::checked(carrier, pairs)
}

/// Single natural-order comparison: `s <= t iff (s*, t) composable and
/// s* t = s`.
pub fn natural_leq(rs: &RestrictionSemigroupoid, s: ElementId, t: ElementId) -> bool {
    rs.product(rs.star_of(s), t) == Some(s)
}

/// The natural order on the whole carrier. Requires the left restriction
/// laws; the function cross-checks the equivalent existential form
/// (`s <= t iff et = s for some e in the star image`) and that the
/// restriction to the star image coincides with [`order_e`], failing with
/// a contradiction if either theorem breaks.
pub fn natural_order(rs: &RestrictionSemigroupoid) -> Result<PartialOrder, StructureError> {
    let carrier: Vec<ElementId> = rs.element_ids().collect();
    let mut pairs = BTreeSet::new();
    for &s in &carrier {
        for &t in &carrier {
            if natural_leq(rs, s, t) {
                pairs.insert((s, t));
            }
        }
    }
    let image = star_image(rs);
    for &s in &carrier {
        for &t in &carrier {
            let direct = pairs.contains(&(s, t));
            let via_e = image.iter().any(|&e| rs.product(e, t) == Some(s));
            if direct != via_e {
                return Err(StructureError::Contradiction(format!(
                    "natural order and its existential form disagree on ({s}, {t})"
                )));
            }
        }
    }
    let order = PartialOrder::checked(carrier, pairs)?;
    let on_e = order_e(rs.base(), &image)?;
    for &e in on_e.carrier() {
        for &f in on_e.carrier() {
            if order.holds(e, f) != on_e.holds(e, f) {
                return Err(StructureError::Contradiction(format!(
                    "natural order restricted to the star image disagrees with the e-order on ({e}, {f})"
                )));
            }
        }
    }
    Ok(order)
}

fn left_signature(
    s: &Semigroupoid,
    e_set: &BTreeSet<ElementId>,
    x: ElementId,
) -> Vec<(bool, bool)> {
    e_set
        .iter()
        .map(|&e| {
            let comp = s.is_composable(e, x);
            (comp, comp && s.product(e, x) == Some(x))
        })
        .collect()
}

fn right_signature(
    s: &Semigroupoid,
    e_set: &BTreeSet<ElementId>,
    x: ElementId,
) -> Vec<(bool, bool)> {
    e_set
        .iter()
        .map(|&e| {
            let comp = s.is_composable(x, e);
            (comp, comp && s.product(x, e) == Some(x))
        })
        .collect()
}

fn partition_by_signature<F>(s: &Semigroupoid, signature: F) -> Partition<ElementId>
where
    F: Fn(ElementId) -> Vec<(bool, bool)>,
{
    let mut groups: BTreeMap<Vec<(bool, bool)>, Vec<ElementId>> = BTreeMap::new();
    for x in s.element_ids() {
        groups.entry(signature(x)).or_default().push(x);
    }
    Partition::from_blocks(groups.into_values().collect())
}

/// Elements are related when they have the same left identities from
/// `e_set` and the same left composability with it.
pub fn tilde_l(s: &Semigroupoid, e_set: &BTreeSet<ElementId>) -> Partition<ElementId> {
    partition_by_signature(s, |x| left_signature(s, e_set, x))
}

/// Mirror of [`tilde_l`] on the right.
pub fn tilde_r(s: &Semigroupoid, e_set: &BTreeSet<ElementId>) -> Partition<ElementId> {
    partition_by_signature(s, |x| right_signature(s, e_set, x))
}

/// Scans all pairs of right-composability sets for an overlap without
/// equality. `None` means the semigroupoid is categorical. The dual scan on
/// left sets always agrees (a set-combinatorial fact, asserted in debug).
pub fn check_categorical(s: &Semigroupoid) -> Option<CategoricalWitness> {
    let rows: Vec<BTreeSet<ElementId>> = s
        .element_ids()
        .map(|x| s.right_set(x).into_iter().collect())
        .collect();
    let mut witness = None;
    'outer: for (i, a) in rows.iter().enumerate() {
        for (j, b) in rows.iter().enumerate().skip(i + 1) {
            if a != b {
                if let Some(&common) = a.intersection(b).next() {
                    witness = Some(CategoricalWitness {
                        s: ElementId::new(i),
                        t: ElementId::new(j),
                        overlap: common,
                        right_s: a.iter().copied().collect(),
                        right_t: b.iter().copied().collect(),
                    });
                    break 'outer;
                }
            }
        }
    }
    debug_assert_eq!(witness.is_none(), dual_categorical(s));
    witness
}

fn dual_categorical(s: &Semigroupoid) -> bool {
    let cols: Vec<BTreeSet<ElementId>> = s
        .element_ids()
        .map(|x| s.left_set(x).into_iter().collect())
        .collect();
    for (i, a) in cols.iter().enumerate() {
        for b in cols.iter().skip(i + 1) {
            if a != b && a.intersection(b).next().is_some() {
                return false;
            }
        }
    }
    true
}

pub fn is_categorical(s: &Semigroupoid) -> bool {
    check_categorical(s).is_none()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so class representatives are stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Builds the canonical graphing of a categorical semigroupoid.
///
/// Domain and range vertices are the classes of the finest equivalence
/// forced by the graph laws: `dom(s) ~ ran(t)` for every composable pair,
/// and `dom(st) ~ dom(t)`, `ran(st) ~ ran(s)`. If that closure ever
/// identifies `dom(s)` with `ran(t)` for a non-composable pair, no graphing
/// exists at all and the construction reports failure. Vertices hit by some
/// range variable are named after the least such element; pure-domain
/// classes (elements composing with nothing on their right) are sinks named
/// `⊥<element>`. The result is re-verified before being returned.
pub fn graphing(s: &Semigroupoid) -> Result<Graphing, StructureError> {
    if let Some(witness) = check_categorical(s) {
        return Err(StructureError::NotCategorical(witness));
    }
    let n = s.len();
    // variables: dom(i) = i, ran(i) = n + i
    let mut uf = UnionFind::new(2 * n);
    for (a, b) in s.composable_pairs() {
        uf.union(a.index(), n + b.index());
        let ab = s.product(a, b).ok_or_else(|| {
            StructureError::GraphingFailed(format!(
                "missing product for composable pair ({a}, {b})"
            ))
        })?;
        uf.union(ab.index(), b.index());
        uf.union(n + ab.index(), n + a.index());
    }
    for a in s.element_ids() {
        for b in s.element_ids() {
            if !s.is_composable(a, b) && uf.find(a.index()) == uf.find(n + b.index()) {
                return Err(StructureError::GraphingFailed(format!(
                    "graph laws force dom({}) = ran({}) but the pair is not composable",
                    s.name(a),
                    s.name(b)
                )));
            }
        }
    }

    // Name and order classes: range-bearing classes first, by least range
    // element; pure-domain sinks after, by least domain element.
    let mut class_ran_min: BTreeMap<usize, ElementId> = BTreeMap::new();
    let mut class_dom_min: BTreeMap<usize, ElementId> = BTreeMap::new();
    for i in (0..n).rev() {
        class_dom_min.insert(uf.find(i), ElementId::new(i));
        class_ran_min.insert(uf.find(n + i), ElementId::new(i));
    }
    let mut roots: Vec<usize> = (0..2 * n).map(|v| uf.find(v)).collect();
    roots.sort();
    roots.dedup();
    roots.sort_by_key(|r| match class_ran_min.get(r) {
        Some(&t) => (0, t),
        None => (1, class_dom_min[r]),
    });
    let mut vertex_of_root = BTreeMap::new();
    let mut objects = Vec::new();
    for (v, &root) in roots.iter().enumerate() {
        vertex_of_root.insert(root, VertexId(v));
        let name = match class_ran_min.get(&root) {
            Some(&t) => s.name(t).to_string(),
            None => format!("⊥{}", s.name(class_dom_min[&root])),
        };
        objects.push(name);
    }
    let dom = (0..n).map(|i| vertex_of_root[&uf.find(i)]).collect();
    let ran = (0..n).map(|i| vertex_of_root[&uf.find(n + i)]).collect();
    let g = Graphing { objects, dom, ran };

    let report = verify_graphing(s, &g);
    if !report.passed() {
        let first = &report.violations[0];
        return Err(StructureError::GraphingFailed(format!(
            "constructed graphing fails {}: {}",
            first.rule, first.message
        )));
    }
    Ok(g)
}

/// Checks the graph laws: composability is exactly `dom(s) = ran(t)`
/// (rule `gs2-comp`), products inherit domain and range (`gs2-prod`), and
/// composable triples associate (`gs3`).
pub fn verify_graphing(s: &Semigroupoid, g: &Graphing) -> AxiomReport {
    let mut violations = Vec::new();
    for a in s.element_ids() {
        for b in s.element_ids() {
            let composable = s.is_composable(a, b);
            let matched = g.dom_of(a) == g.ran_of(b);
            if composable != matched {
                violations.push(Violation {
                    rule: "gs2-comp",
                    witnesses: vec![a, b],
                    message: format!(
                        "(s,t) composable = {composable} but dom(s) = ran(t) is {matched}"
                    ),
                });
                continue;
            }
            if composable {
                let ab = match s.product(a, b) {
                    Some(v) => v,
                    None => continue,
                };
                if g.dom_of(ab) != g.dom_of(b) || g.ran_of(ab) != g.ran_of(a) {
                    violations.push(Violation {
                        rule: "gs2-prod",
                        witnesses: vec![a, b],
                        message: "product must satisfy dom(st) = dom(t), ran(st) = ran(s)"
                            .to_string(),
                    });
                }
            }
        }
    }
    for a in s.element_ids() {
        for b in s.element_ids() {
            if g.dom_of(a) != g.ran_of(b) {
                continue;
            }
            for c in s.element_ids() {
                if g.dom_of(b) != g.ran_of(c) {
                    continue;
                }
                let left = s.product(a, b).and_then(|ab| s.product(ab, c));
                let right = s.product(b, c).and_then(|bc| s.product(a, bc));
                if left.is_none() || left != right {
                    violations.push(Violation {
                        rule: "gs3",
                        witnesses: vec![a, b, c],
                        message: "matched triple fails associativity".to_string(),
                    });
                }
            }
        }
    }
    let mut report = AxiomReport { violations };
    report
        .violations
        .sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    report
}

/// Checks the left congruence laws for a pair of equivalences: related
/// elements have related ranges (`lc1`), and left multiplication by a
/// common composable element preserves relatedness (`lc2`).
pub fn check_left_congruence(
    s: &Semigroupoid,
    g: &Graphing,
    rho0: &Partition<VertexId>,
    rho1: &Partition<ElementId>,
) -> AxiomReport {
    let mut violations = Vec::new();
    for block in rho1.blocks() {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                if !rho0.same(g.ran_of(x), g.ran_of(y)) {
                    violations.push(Violation {
                        rule: "lc1",
                        witnesses: vec![x, y],
                        message: "related elements must have related ranges".to_string(),
                    });
                }
                for u in s.element_ids() {
                    if let (Some(ux), Some(uy)) = (s.product(u, x), s.product(u, y)) {
                        if !rho1.same(ux, uy) {
                            violations.push(Violation {
                                rule: "lc2",
                                witnesses: vec![u, x, y],
                                message: format!(
                                    "products {} and {} are not related",
                                    s.name(ux),
                                    s.name(uy)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    let mut report = AxiomReport { violations };
    report
        .violations
        .sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    report
}

/// Mirror of [`check_left_congruence`]: related elements have related
/// domains (`rc1`) and right multiplication preserves relatedness (`rc2`).
pub fn check_right_congruence(
    s: &Semigroupoid,
    g: &Graphing,
    rho0: &Partition<VertexId>,
    rho1: &Partition<ElementId>,
) -> AxiomReport {
    let mut violations = Vec::new();
    for block in rho1.blocks() {
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                if !rho0.same(g.dom_of(x), g.dom_of(y)) {
                    violations.push(Violation {
                        rule: "rc1",
                        witnesses: vec![x, y],
                        message: "related elements must have related domains".to_string(),
                    });
                }
                for u in s.element_ids() {
                    if let (Some(xu), Some(yu)) = (s.product(x, u), s.product(y, u)) {
                        if !rho1.same(xu, yu) {
                            violations.push(Violation {
                                rule: "rc2",
                                witnesses: vec![x, y, u],
                                message: format!(
                                    "products {} and {} are not related",
                                    s.name(xu),
                                    s.name(yu)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    let mut report = AxiomReport { violations };
    report
        .violations
        .sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
    report
}

/// Outcome of [`characterize_left_restriction`]: the induced star map when
/// the three conditions hold, otherwise a report of everything that failed.
#[derive(Clone, Debug)]
pub struct Characterization {
    pub star: Option<StarMap>,
    pub report: AxiomReport,
}

impl Characterization {
    pub fn succeeded(&self) -> bool {
        self.star.is_some()
    }
}

/// Decides whether `(S, E)` carries a left restriction structure with star
/// image `E`, by the three-condition characterization: every element's
/// identity-relation block contains exactly one member of `E` (`r1`), the
/// relation is a left congruence (`r2`, tested through the graphing;
/// reported untestable when the semigroupoid is not categorical), and
/// `se = (se)* s` for composable `(s, e)` (`r3`). On success the unique
/// candidate star map is returned after a cross-check against the direct
/// axiom scan.
pub fn characterize_left_restriction(
    s: &Semigroupoid,
    e_set: &BTreeSet<ElementId>,
) -> Characterization {
    let ds = axioms::check_distinct_set(s, e_set);
    if !ds.passed() {
        return Characterization {
            star: None,
            report: ds,
        };
    }

    let blocks = tilde_l(s, e_set);
    let mut violations = Vec::new();
    let mut induced: Vec<Option<ElementId>> = vec![None; s.len()];
    for block in blocks.blocks() {
        let members: Vec<ElementId> = block
            .iter()
            .copied()
            .filter(|x| e_set.contains(x))
            .collect();
        if members.len() != 1 {
            violations.push(Violation {
                rule: "r1",
                witnesses: block.clone(),
                message: format!(
                    "block contains {} members of the distinct set, expected exactly one",
                    members.len()
                ),
            });
            continue;
        }
        for &x in block {
            induced[x.index()] = Some(members[0]);
        }
    }

    let star = if violations.is_empty() {
        Some(StarMap::new(
            induced.into_iter().map(|v| v.unwrap()).collect(),
        ))
    } else {
        None
    };

    match graphing(s) {
        Ok(g) => {
            let rho0 = Partition::discrete((0..g.object_count()).map(VertexId::new));
            for v in check_left_congruence(s, &g, &rho0, &blocks).violations {
                violations.push(Violation {
                    rule: "r2",
                    witnesses: v.witnesses,
                    message: v.message,
                });
            }
        }
        Err(err) => {
            violations.push(Violation {
                rule: "r2-untestable",
                witnesses: vec![],
                message: format!("left congruence needs a graphing: {err}"),
            });
        }
    }

    if let Some(star) = &star {
        for x in s.element_ids() {
            for &e in e_set {
                if let Some(xe) = s.product(x, e) {
                    if s.product(star.of(xe), x) != Some(xe) {
                        violations.push(Violation {
                            rule: "r3",
                            witnesses: vec![x, e],
                            message: "se must equal (se)* s".to_string(),
                        });
                    }
                }
            }
        }
    }

    if !violations.is_empty() {
        violations.sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
        return Characterization {
            star: None,
            report: AxiomReport { violations },
        };
    }

    // Both directions of the characterization: the induced star must pass
    // the direct axiom scan with exactly this image.
    let star = star.unwrap();
    let rs = RestrictionSemigroupoid::new(s.clone(), star.clone(), e_set.clone())
        .expect("induced star is total by construction");
    debug_assert_eq!(&star.image(), e_set);
    if !axioms::is_left_restriction(&rs) {
        return Characterization {
            star: None,
            report: AxiomReport {
                violations: vec![Violation {
                    rule: "internal",
                    witnesses: vec![],
                    message: "r1-r3 hold but the induced star fails the direct axiom scan"
                        .to_string(),
                }],
            },
        };
    }
    Characterization {
        star: Some(star),
        report: AxiomReport::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn star_image_of_fixtures() {
        let z2 = fixtures::z2();
        assert_eq!(star_image(&z2), fixtures::id_set(z2.base(), &["1"]));
        let sl2 = fixtures::sl2();
        assert_eq!(star_image(&sl2), fixtures::id_set(sl2.base(), &["e", "f"]));
    }

    #[test]
    fn order_on_distinct_set() {
        let sl2 = fixtures::sl2();
        let order = order_e(sl2.base(), sl2.distinct_set()).unwrap();
        let ids = fixtures::ids(sl2.base(), &["e", "f"]);
        let (e, f) = (ids[0], ids[1]);
        assert!(order.holds(e, f));
        assert!(order.holds(e, e) && order.holds(f, f));
        assert!(!order.holds(f, e));

        let disj = fixtures::disj();
        let order = order_e(disj.base(), disj.distinct_set()).unwrap();
        assert_eq!(order.pairs().count(), 2); // only reflexive pairs

        let z2 = fixtures::z2();
        let order = order_e(z2.base(), z2.distinct_set()).unwrap();
        assert_eq!(order.pairs().count(), 1);
    }

    #[test]
    fn natural_order_on_fixtures() {
        let z2 = fixtures::z2();
        let order = natural_order(&z2).unwrap();
        // identity order: 1*g = g != 1
        assert_eq!(order.pairs().count(), 2);

        let sl2 = fixtures::sl2();
        let order = natural_order(&sl2).unwrap();
        let ids = fixtures::ids(sl2.base(), &["e", "f"]);
        let (e, f) = (ids[0], ids[1]);
        assert!(order.holds(e, f));
        assert!(!order.holds(f, e));
        assert_eq!(order.pairs().count(), 3);

        // es <= s whenever e is a left-composable member of E
        for rs in [
            fixtures::sl2(),
            fixtures::z2(),
            fixtures::disj(),
            fixtures::chain(),
        ] {
            let order = natural_order(&rs).unwrap();
            for &e in rs.distinct_set() {
                for s in rs.element_ids() {
                    if let Some(es) = rs.product(e, s) {
                        assert!(order.holds(es, s));
                    }
                }
            }
        }
    }

    #[test]
    fn tilde_relations_on_fixtures() {
        let sl2 = fixtures::sl2();
        let blocks = tilde_l(sl2.base(), sl2.distinct_set());
        assert_eq!(blocks.blocks().len(), 2);

        let z2 = fixtures::z2();
        let blocks = tilde_l(z2.base(), z2.distinct_set());
        assert_eq!(blocks.blocks().len(), 1);

        let disj = fixtures::disj();
        let blocks = tilde_l(disj.base(), disj.distinct_set());
        assert_eq!(blocks.blocks().len(), 2);

        // duality with the opposite structure
        for rs in [fixtures::sl2(), fixtures::z2(), fixtures::disj()] {
            assert_eq!(
                tilde_r(rs.base(), rs.distinct_set()),
                tilde_l(&rs.base().opposite(), rs.distinct_set())
            );
        }
    }

    #[test]
    fn categoricity_and_witness() {
        assert!(is_categorical(fixtures::sl2().base()));
        assert!(is_categorical(fixtures::z2().base()));
        assert!(is_categorical(fixtures::disj().base()));

        let nc = fixtures::nc();
        let witness = check_categorical(&nc).expect("nc must not be categorical");
        let ids = fixtures::ids(&nc, &["a", "b", "c", "d"]);
        let (a, b, c, d) = (ids[0], ids[1], ids[2], ids[3]);
        assert_eq!(witness.s, a);
        assert_eq!(witness.t, b);
        assert_eq!(witness.overlap, c);
        assert_eq!(witness.right_s, vec![c]);
        assert_eq!(witness.right_t, vec![c, d]);
    }

    #[test]
    fn graphing_of_fixtures() {
        let disj = fixtures::disj();
        let g = graphing(disj.base()).unwrap();
        assert_eq!(g.object_count(), 2);
        let ids = fixtures::ids(disj.base(), &["p", "q"]);
        assert_eq!(g.dom_of(ids[0]), g.ran_of(ids[0]));
        assert_eq!(g.dom_of(ids[1]), g.ran_of(ids[1]));
        assert_ne!(g.dom_of(ids[0]), g.dom_of(ids[1]));
        assert!(verify_graphing(disj.base(), &g).passed());

        for rs in [fixtures::z2(), fixtures::sl2()] {
            let g = graphing(rs.base()).unwrap();
            assert_eq!(g.object_count(), 1);
            assert!(verify_graphing(rs.base(), &g).passed());
        }

        assert!(matches!(
            graphing(&fixtures::nc()),
            Err(StructureError::NotCategorical(_))
        ));
    }

    #[test]
    fn graphing_merges_forced_sinks() {
        // s and u = xs both compose with nothing on their right; the graph
        // laws force dom(u) = dom(s), so they must share one sink vertex.
        let chain = fixtures::chain();
        let g = graphing(chain.base()).unwrap();
        assert!(verify_graphing(chain.base(), &g).passed());
        let ids = fixtures::ids(chain.base(), &["s", "u"]);
        assert_eq!(g.dom_of(ids[0]), g.dom_of(ids[1]));
        assert!(g.object_name(g.dom_of(ids[0])).starts_with('⊥'));
        assert_eq!(g.object_count(), 3);
    }

    #[test]
    fn verify_graphing_flags_bad_assignments() {
        let disj = fixtures::disj();
        let bad = Graphing::new(
            vec!["v".to_string()],
            vec![VertexId(0), VertexId(0)],
            vec![VertexId(0), VertexId(0)],
        );
        let report = verify_graphing(disj.base(), &bad);
        assert!(report.violated_rules().contains("gs2-comp"));
    }

    #[test]
    fn congruence_checks() {
        let z2 = fixtures::z2();
        let g = graphing(z2.base()).unwrap();
        let rho0 = Partition::discrete((0..g.object_count()).map(VertexId::new));

        let identity = Partition::discrete(z2.element_ids());
        assert!(check_left_congruence(z2.base(), &g, &rho0, &identity).passed());
        assert!(check_right_congruence(z2.base(), &g, &rho0, &identity).passed());

        // lumping 1 and g is still a left congruence on a group
        let lump = Partition::indiscrete(z2.element_ids());
        assert!(check_left_congruence(z2.base(), &g, &rho0, &lump).passed());

        let sl2 = fixtures::sl2();
        let g = graphing(sl2.base()).unwrap();
        let rho0 = Partition::discrete((0..g.object_count()).map(VertexId::new));
        let blocks = tilde_l(sl2.base(), sl2.distinct_set());
        assert!(check_left_congruence(sl2.base(), &g, &rho0, &blocks).passed());
    }

    #[test]
    fn characterization_on_fixtures() {
        let sl2 = fixtures::sl2();
        let out = characterize_left_restriction(sl2.base(), sl2.distinct_set());
        assert_eq!(out.star.as_ref(), Some(sl2.star()));

        let z2 = fixtures::z2();
        let out = characterize_left_restriction(z2.base(), z2.distinct_set());
        assert_eq!(out.star.as_ref(), Some(z2.star()));

        let disj = fixtures::disj();
        let only_p = fixtures::id_set(disj.base(), &["p"]);
        let out = characterize_left_restriction(disj.base(), &only_p);
        assert!(!out.succeeded());
        assert!(out.report.violated_rules().contains("r1"));
    }
}
