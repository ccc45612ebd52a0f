//! Finite semigroupoids: an element set, a set of composable pairs, and a
//! partial composition table, plus the unary star map and distinct set that
//! upgrade one to a restriction semigroupoid candidate.
//!
//! Values here are plain data. Whether a table is associative, or whether a
//! star map satisfies the left restriction laws, is decided by the checkers
//! in [`crate::axioms`]; invalid tables are representable on purpose so that
//! they can be diagnosed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Index of an element in declaration order.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(usize);

impl ElementId {
    pub fn new(index: usize) -> Self {
        ElementId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("element {id} out of range (structure has {len} elements)")]
    InvalidElement { id: usize, len: usize },
    #[error("expected a mapping for all {expected} elements, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("every pair must be composable for a semigroup, `{0} {1}` is not")]
    NotASemigroup(String, String),
}

/// A finite semigroupoid: named elements, a set of composable pairs and a
/// composition table defined on those pairs.
///
/// `composable` and `table` are stored separately so that ill-formed inputs
/// (a table entry for a pair never declared composable) are representable;
/// [`Semigroupoid::validate`] reports such defects instead of panicking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Semigroupoid {
    names: Vec<String>,
    composable: BTreeSet<(ElementId, ElementId)>,
    table: BTreeMap<(ElementId, ElementId), ElementId>,
}

/// Outcome of [`Semigroupoid::validate`]: one entry per violated rule.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

impl Semigroupoid {
    /// Builds a semigroupoid whose composable set is exactly the set of keys
    /// of `entries`. Indices are 0-based positions into `names`.
    pub fn from_entries<I>(names: Vec<String>, entries: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = ((usize, usize), usize)>,
    {
        let len = names.len();
        let check = |i: usize| {
            if i < len {
                Ok(ElementId(i))
            } else {
                Err(CoreError::InvalidElement { id: i, len })
            }
        };
        let mut composable = BTreeSet::new();
        let mut table = BTreeMap::new();
        for ((s, t), v) in entries {
            let key = (check(s)?, check(t)?);
            composable.insert(key);
            table.insert(key, check(v)?);
        }
        Ok(Semigroupoid {
            names,
            composable,
            table,
        })
    }

    /// Builds a semigroupoid from raw parts without consistency checks.
    /// Use [`Semigroupoid::validate`] to diagnose the result.
    pub fn from_parts(
        names: Vec<String>,
        composable: BTreeSet<(ElementId, ElementId)>,
        table: BTreeMap<(ElementId, ElementId), ElementId>,
    ) -> Self {
        Semigroupoid {
            names,
            composable,
            table,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn element_ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.names.len()).map(ElementId)
    }

    pub fn name(&self, id: ElementId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId)
    }

    pub fn is_composable(&self, s: ElementId, t: ElementId) -> bool {
        self.composable.contains(&(s, t))
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.composable.iter().copied()
    }

    pub fn composable_len(&self) -> usize {
        self.composable.len()
    }

    /// The composition table value for a pair, `None` when the pair is not
    /// composable. Ids outside the element range are treated as absent.
    pub fn product(&self, s: ElementId, t: ElementId) -> Option<ElementId> {
        if self.composable.contains(&(s, t)) {
            self.table.get(&(s, t)).copied()
        } else {
            None
        }
    }

    /// Like [`Semigroupoid::product`] but rejects out-of-range ids instead of
    /// treating them as undefined. `Ok(None)` means the pair is genuinely not
    /// composable, which is a normal outcome of a partial operation.
    pub fn compose(&self, s: ElementId, t: ElementId) -> Result<Option<ElementId>, CoreError> {
        let len = self.len();
        for id in [s, t] {
            if id.0 >= len {
                return Err(CoreError::InvalidElement { id: id.0, len });
            }
        }
        Ok(self.product(s, t))
    }

    /// Elements `f` with `ff` defined and `ff = f`, in declaration order.
    pub fn idempotents(&self) -> Vec<ElementId> {
        self.element_ids()
            .filter(|&f| self.product(f, f) == Some(f))
            .collect()
    }

    /// The right-composability set `{ t : (s,t) composable }`.
    pub fn right_set(&self, s: ElementId) -> Vec<ElementId> {
        self.element_ids()
            .filter(|&t| self.is_composable(s, t))
            .collect()
    }

    /// The left-composability set `{ t : (t,s) composable }`.
    pub fn left_set(&self, s: ElementId) -> Vec<ElementId> {
        self.element_ids()
            .filter(|&t| self.is_composable(t, s))
            .collect()
    }

    /// Checks the type invariants: table keys are exactly the composable
    /// pairs, all ids are in range and names are unique and nonempty.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let len = self.len();
        let mut seen = BTreeSet::new();
        for name in &self.names {
            if name.is_empty() {
                issues.push("empty element name".to_string());
            }
            if !seen.insert(name) {
                issues.push(format!("duplicate name `{name}`"));
            }
        }
        for &(s, t) in &self.composable {
            if s.0 >= len || t.0 >= len {
                issues.push(format!("composable pair ({}, {}) out of range", s.0, t.0));
            } else if !self.table.contains_key(&(s, t)) {
                issues.push(format!(
                    "missing table entry for composable pair ({}, {})",
                    self.names[s.0], self.names[t.0]
                ));
            }
        }
        for (&(s, t), &v) in &self.table {
            if !self.composable.contains(&(s, t)) {
                issues.push(format!("table key ({}, {}) not composable", s.0, t.0));
            }
            if v.0 >= len {
                issues.push(format!("table value {} out of range", v.0));
            }
        }
        ValidationReport { issues }
    }

    /// The opposite semigroupoid: `(t,s)` is composable exactly when `(s,t)`
    /// was, with the same products.
    pub fn opposite(&self) -> Semigroupoid {
        Semigroupoid {
            names: self.names.clone(),
            composable: self.composable.iter().map(|&(s, t)| (t, s)).collect(),
            table: self.table.iter().map(|(&(s, t), &v)| ((t, s), v)).collect(),
        }
    }

    /// True when every ordered pair is composable (the structure is a
    /// semigroup presented as a semigroupoid).
    pub fn is_total(&self) -> bool {
        self.composable.len() == self.len() * self.len()
    }
}

/// A total unary map on the element set, used both for the `*` of a left
/// restriction structure and the `+` of a right restriction structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarMap {
    star: Vec<ElementId>,
}

impl StarMap {
    pub fn new(star: Vec<ElementId>) -> Self {
        StarMap { star }
    }

    pub fn identity(len: usize) -> Self {
        StarMap {
            star: (0..len).map(ElementId).collect(),
        }
    }

    pub fn constant(len: usize, value: ElementId) -> Self {
        StarMap {
            star: vec![value; len],
        }
    }

    pub fn of(&self, s: ElementId) -> ElementId {
        self.star[s.0]
    }

    pub fn len(&self) -> usize {
        self.star.len()
    }

    pub fn is_empty(&self) -> bool {
        self.star.is_empty()
    }

    pub fn image(&self) -> BTreeSet<ElementId> {
        self.star.iter().copied().collect()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.star
    }
}

/// A semigroupoid together with a star map and a designated distinct set.
///
/// Nothing is verified at construction beyond index ranges; run
/// [`crate::axioms::check_left_restriction`] and
/// [`crate::axioms::check_distinct_set`] to certify the structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RestrictionSemigroupoid {
    base: Semigroupoid,
    star: StarMap,
    distinct_set: BTreeSet<ElementId>,
}

impl RestrictionSemigroupoid {
    pub fn new(
        base: Semigroupoid,
        star: StarMap,
        distinct_set: BTreeSet<ElementId>,
    ) -> Result<Self, CoreError> {
        if star.len() != base.len() {
            return Err(CoreError::SizeMismatch {
                expected: base.len(),
                got: star.len(),
            });
        }
        let len = base.len();
        for id in star.as_slice().iter().chain(distinct_set.iter()) {
            if id.0 >= len {
                return Err(CoreError::InvalidElement { id: id.0, len });
            }
        }
        Ok(RestrictionSemigroupoid {
            base,
            star,
            distinct_set,
        })
    }

    /// Convenience constructor taking `E` to be the image of the star map,
    /// the canonical distinct set of a left restriction semigroupoid.
    pub fn with_star_image(base: Semigroupoid, star: StarMap) -> Result<Self, CoreError> {
        let image = star.image();
        Self::new(base, star, image)
    }

    pub fn base(&self) -> &Semigroupoid {
        &self.base
    }

    pub fn star(&self) -> &StarMap {
        &self.star
    }

    pub fn star_of(&self, s: ElementId) -> ElementId {
        self.star.of(s)
    }

    pub fn distinct_set(&self) -> &BTreeSet<ElementId> {
        &self.distinct_set
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn element_ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.base.element_ids()
    }

    pub fn name(&self, id: ElementId) -> &str {
        self.base.name(id)
    }

    pub fn product(&self, s: ElementId, t: ElementId) -> Option<ElementId> {
        self.base.product(s, t)
    }

    pub fn is_composable(&self, s: ElementId, t: ElementId) -> bool {
        self.base.is_composable(s, t)
    }

    /// Opposite structure with the same unary map and distinct set. Reading
    /// the star field as `+`, the opposite of a left restriction structure
    /// is a right restriction structure and vice versa.
    pub fn opposite(&self) -> RestrictionSemigroupoid {
        RestrictionSemigroupoid {
            base: self.base.opposite(),
            star: self.star.clone(),
            distinct_set: self.distinct_set.clone(),
        }
    }
}

/// A total function between the element sets of two semigroupoids,
/// the raw material for morphism and premorphism checks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementMapping {
    map: Vec<ElementId>,
}

impl ElementMapping {
    /// A mapping from a structure with `source_len` elements into a structure
    /// with `target_len` elements.
    pub fn new(
        source_len: usize,
        target_len: usize,
        map: Vec<ElementId>,
    ) -> Result<Self, CoreError> {
        if map.len() != source_len {
            return Err(CoreError::SizeMismatch {
                expected: source_len,
                got: map.len(),
            });
        }
        for id in &map {
            if id.0 >= target_len {
                return Err(CoreError::InvalidElement {
                    id: id.0,
                    len: target_len,
                });
            }
        }
        Ok(ElementMapping { map })
    }

    pub fn identity(len: usize) -> Self {
        ElementMapping {
            map: (0..len).map(ElementId).collect(),
        }
    }

    pub fn apply(&self, s: ElementId) -> ElementId {
        self.map[s.0]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.map
    }

    /// Composition `after . self` (apply `self` first).
    pub fn then(&self, after: &ElementMapping) -> ElementMapping {
        ElementMapping {
            map: self.map.iter().map(|&s| after.apply(s)).collect(),
        }
    }
}
