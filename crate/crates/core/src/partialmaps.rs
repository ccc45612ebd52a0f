//! Partial maps of a finite set and the category of partial maps between
//! fibers of a surjection, with its left restriction structure and the
//! inverse subcategory of partial bijections.
//!
//! A partial map stores its ambient set size, its domain, and a value for
//! each domain point; the image is whatever the values hit, so surjectivity
//! onto the image holds by construction.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::semigroupoid::{ElementId, RestrictionSemigroupoid, Semigroupoid, StarMap};

/// Index of a point of the ambient set `X`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointId(usize);

impl PointId {
    pub fn new(index: usize) -> Self {
        PointId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

/// Index of a fiber (a point of `Y`).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FiberId(usize);

impl FiberId {
    pub fn new(index: usize) -> Self {
        FiberId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialMapError {
    #[error("point {0} out of range for ambient set of size {1}")]
    PointOutOfRange(usize, usize),
    #[error("maps live over different ambient sets ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("map is not a bijection onto its image")]
    NotBijective,
    #[error("fiber assignment misses fiber {0}: not surjective")]
    NotSurjective(usize),
    #[error("morphism maps outside its declared fibers: {0}")]
    FiberMismatch(String),
    #[error("morphisms are not composable: source fiber {0} vs target fiber {1}")]
    NotComposable(usize, usize),
    #[error("enumeration needs {needed} morphisms, guard is {guard}")]
    GuardExceeded { needed: u128, guard: u128 },
}

/// A partial map of an ambient set: a total function from a subset of the
/// points into the points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PartialMap {
    ambient: usize,
    entries: BTreeMap<PointId, PointId>,
}

impl PartialMap {
    pub fn empty(ambient: usize) -> Self {
        PartialMap {
            ambient,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(ambient: usize) -> Self {
        Self::identity_on(ambient, (0..ambient).map(PointId))
    }

    /// The identity map restricted to `points`.
    pub fn identity_on(ambient: usize, points: impl IntoIterator<Item = PointId>) -> Self {
        PartialMap {
            ambient,
            entries: points.into_iter().map(|p| (p, p)).collect(),
        }
    }

    pub fn from_pairs(
        ambient: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PartialMapError> {
        let mut entries = BTreeMap::new();
        for (k, v) in pairs {
            if k >= ambient {
                return Err(PartialMapError::PointOutOfRange(k, ambient));
            }
            if v >= ambient {
                return Err(PartialMapError::PointOutOfRange(v, ambient));
            }
            entries.insert(PointId(k), PointId(v));
        }
        Ok(PartialMap { ambient, entries })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, p: PointId) -> Option<PointId> {
        self.entries.get(&p).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = PointId> + '_ {
        self.entries.keys().copied()
    }

    pub fn domain_set(&self) -> BTreeSet<PointId> {
        self.entries.keys().copied().collect()
    }

    pub fn image(&self) -> BTreeSet<PointId> {
        self.entries.values().copied().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.image().len() == self.entries.len()
    }

    /// The inverse of a partial bijection.
    pub fn inverted(&self) -> Result<PartialMap, PartialMapError> {
        if !self.is_bijective() {
            return Err(PartialMapError::NotBijective);
        }
        Ok(PartialMap {
            ambient: self.ambient,
            entries: self.entries.iter().map(|(&k, &v)| (v, k)).collect(),
        })
    }
}

/// `f` after `g`: defined on the points of `dom(g)` that `g` sends into
/// `dom(f)`, with value `f(g(x))`. Both maps must share an ambient set.
pub fn star_compose(f: &PartialMap, g: &PartialMap) -> PartialMap {
    debug_assert_eq!(f.ambient, g.ambient);
    let entries = g
        .entries
        .iter()
        .filter_map(|(&x, &gx)| f.get(gx).map(|fgx| (x, fgx)))
        .collect();
    PartialMap {
        ambient: f.ambient,
        entries,
    }
}

/// The reversed composition: `bullet_compose(f, g) = star_compose(g, f)`.
pub fn bullet_compose(f: &PartialMap, g: &PartialMap) -> PartialMap {
    star_compose(g, f)
}

/// The identity map on `dom(f)`: the unary operation of both restriction
/// structures carried by the partial maps.
pub fn domain_identity(f: &PartialMap) -> PartialMap {
    PartialMap::identity_on(f.ambient, f.domain())
}

/// A surjection from a finite point set onto a finite set of fibers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberedFunction {
    point_names: Vec<String>,
    fiber_names: Vec<String>,
    assignment: Vec<FiberId>,
    fibers: Vec<Vec<PointId>>,
}

impl FiberedFunction {
    pub fn new(
        point_names: Vec<String>,
        fiber_names: Vec<String>,
        assignment: Vec<usize>,
    ) -> Result<Self, PartialMapError> {
        if assignment.len() != point_names.len() {
            return Err(PartialMapError::PointOutOfRange(
                assignment.len(),
                point_names.len(),
            ));
        }
        let mut fibers = vec![Vec::new(); fiber_names.len()];
        for (p, &f) in assignment.iter().enumerate() {
            if f >= fiber_names.len() {
                return Err(PartialMapError::PointOutOfRange(f, fiber_names.len()));
            }
            fibers[f].push(PointId(p));
        }
        if let Some(empty) = fibers.iter().position(|f| f.is_empty()) {
            return Err(PartialMapError::NotSurjective(empty));
        }
        Ok(FiberedFunction {
            point_names,
            fiber_names,
            assignment: assignment.into_iter().map(FiberId).collect(),
            fibers,
        })
    }

    /// The constant surjection onto a single fiber.
    pub fn trivial(point_names: Vec<String>) -> Self {
        let len = point_names.len();
        FiberedFunction::new(point_names, vec!["*".to_string()], vec![0; len])
            .expect("a single fiber over a nonempty set is surjective")
    }

    pub fn point_count(&self) -> usize {
        self.point_names.len()
    }

    pub fn fiber_count(&self) -> usize {
        self.fiber_names.len()
    }

    pub fn point_name(&self, p: PointId) -> &str {
        &self.point_names[p.0]
    }

    pub fn fiber_name(&self, f: FiberId) -> &str {
        &self.fiber_names[f.0]
    }

    pub fn fiber_of(&self, p: PointId) -> FiberId {
        self.assignment[p.0]
    }

    pub fn fiber(&self, f: FiberId) -> &[PointId] {
        &self.fibers[f.0]
    }

    pub fn fiber_ids(&self) -> impl Iterator<Item = FiberId> {
        (0..self.fiber_names.len()).map(FiberId)
    }
}

/// A morphism of the category of partial maps between fibers: a partial
/// map from the fiber over `source_fiber` into the fiber over
/// `target_fiber`. As a graph arrow its domain object is `target_fiber`
/// and its range object is `source_fiber`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PTOpMorphism {
    pub target_fiber: FiberId,
    pub map: PartialMap,
    pub source_fiber: FiberId,
}

impl PTOpMorphism {
    pub fn new(
        pi: &FiberedFunction,
        target_fiber: FiberId,
        map: PartialMap,
        source_fiber: FiberId,
    ) -> Result<Self, PartialMapError> {
        for p in map.domain() {
            if pi.fiber_of(p) != source_fiber {
                return Err(PartialMapError::FiberMismatch(format!(
                    "domain point {} lies outside the source fiber {}",
                    pi.point_name(p),
                    pi.fiber_name(source_fiber)
                )));
            }
        }
        for p in map.image() {
            if pi.fiber_of(p) != target_fiber {
                return Err(PartialMapError::FiberMismatch(format!(
                    "image point {} lies outside the target fiber {}",
                    pi.point_name(p),
                    pi.fiber_name(target_fiber)
                )));
            }
        }
        Ok(PTOpMorphism {
            target_fiber,
            map,
            source_fiber,
        })
    }
}

/// The identity morphism at a fiber.
pub fn ptop_identity(pi: &FiberedFunction, fiber: FiberId) -> PTOpMorphism {
    PTOpMorphism {
        target_fiber: fiber,
        map: PartialMap::identity_on(pi.point_count(), pi.fiber(fiber).iter().copied()),
        source_fiber: fiber,
    }
}

/// Composes `left` with `right` (left factor first, as in the table product
/// of the ambient semigroupoid). The pair composes exactly when the domain
/// object of `left` equals the range object of `right`, i.e.
/// `left.target_fiber == right.source_fiber`; the underlying partial map of
/// the composite applies `left.map` first and `right.map` second.
pub fn ptop_compose(
    left: &PTOpMorphism,
    right: &PTOpMorphism,
) -> Result<PTOpMorphism, PartialMapError> {
    if left.target_fiber != right.source_fiber {
        return Err(PartialMapError::NotComposable(
            right.source_fiber.0,
            left.target_fiber.0,
        ));
    }
    Ok(PTOpMorphism {
        target_fiber: right.target_fiber,
        map: star_compose(&right.map, &left.map),
        source_fiber: left.source_fiber,
    })
}

/// The restriction of a morphism: the identity on its map's domain, viewed
/// as an endomorphism of the source fiber.
pub fn ptop_star(m: &PTOpMorphism) -> PTOpMorphism {
    PTOpMorphism {
        target_fiber: m.source_fiber,
        map: domain_identity(&m.map),
        source_fiber: m.source_fiber,
    }
}

pub fn is_bijective(m: &PTOpMorphism) -> bool {
    m.map.is_bijective()
}

/// The inverse of a bijective morphism, with source and target swapped.
pub fn jop_inverse(m: &PTOpMorphism) -> Result<PTOpMorphism, PartialMapError> {
    Ok(PTOpMorphism {
        target_fiber: m.source_fiber,
        map: m.map.inverted()?,
        source_fiber: m.target_fiber,
    })
}

/// Number of morphisms of the fiber category: for each ordered fiber pair
/// `(x, y)`, every subset of the fiber over `y` mapped totally into the
/// fiber over `x`.
pub fn ptop_morphism_count(pi: &FiberedFunction) -> u128 {
    let mut total: u128 = 0;
    for x in pi.fiber_ids() {
        for y in pi.fiber_ids() {
            let base = 1 + pi.fiber(x).len() as u128;
            total += base.pow(pi.fiber(y).len() as u32);
        }
    }
    total
}

fn morphism_name(pi: &FiberedFunction, m: &PTOpMorphism) -> String {
    let body: Vec<String> = m
        .map
        .entries()
        .map(|(k, v)| format!("{}>{}", pi.point_name(k), pi.point_name(v)))
        .collect();
    format!(
        "{}|{}|{}",
        pi.fiber_name(m.target_fiber),
        if body.is_empty() {
            "_".to_string()
        } else {
            body.join(",")
        },
        pi.fiber_name(m.source_fiber)
    )
}

/// All partial maps from subsets of `source` into `target`, in a canonical
/// order (domains by ascending bitmask, values by odometer).
fn maps_between(ambient: usize, source: &[PointId], target: &[PointId]) -> Vec<PartialMap> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << source.len()) {
        let domain: Vec<PointId> = source
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if domain.is_empty() {
            out.push(PartialMap::empty(ambient));
            continue;
        }
        let mut counters = vec![0usize; domain.len()];
        loop {
            let entries: BTreeMap<PointId, PointId> = domain
                .iter()
                .zip(&counters)
                .map(|(&p, &c)| (p, target[c]))
                .collect();
            out.push(PartialMap { ambient, entries });
            let mut i = 0;
            loop {
                if i == counters.len() {
                    break;
                }
                counters[i] += 1;
                if counters[i] < target.len() {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
            if i == counters.len() {
                break;
            }
        }
    }
    out
}

/// The fiber category materialized as a finite composition table, together
/// with the morphisms backing each element.
#[derive(Clone, Debug)]
pub struct EnumeratedPtop {
    pub pi: FiberedFunction,
    pub morphisms: Vec<PTOpMorphism>,
    pub table: RestrictionSemigroupoid,
}

/// Enumerates every morphism of the fiber category of `pi` and builds its
/// composition table and star map. The element count is checked against
/// `guard` before anything is materialized.
pub fn enumerate_ptop(
    pi: &FiberedFunction,
    guard: usize,
) -> Result<EnumeratedPtop, PartialMapError> {
    let needed = ptop_morphism_count(pi);
    if needed > guard as u128 {
        return Err(PartialMapError::GuardExceeded {
            needed,
            guard: guard as u128,
        });
    }

    let mut morphisms = Vec::new();
    for target in pi.fiber_ids() {
        for source in pi.fiber_ids() {
            for map in maps_between(pi.point_count(), pi.fiber(source), pi.fiber(target)) {
                morphisms.push(PTOpMorphism {
                    target_fiber: target,
                    map,
                    source_fiber: source,
                });
            }
        }
    }
    let index: BTreeMap<&PTOpMorphism, usize> =
        morphisms.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let names = morphisms.iter().map(|m| morphism_name(pi, m)).collect();
    let mut entries = Vec::new();
    for (i, a) in morphisms.iter().enumerate() {
        for (j, b) in morphisms.iter().enumerate() {
            if a.target_fiber == b.source_fiber {
                let ab = ptop_compose(a, b).expect("fibers match");
                entries.push(((i, j), index[&ab]));
            }
        }
    }
    let base = Semigroupoid::from_entries(names, entries).expect("enumerated indices are in range");
    let star = StarMap::new(
        morphisms
            .iter()
            .map(|m| ElementId::new(index[&ptop_star(m)]))
            .collect(),
    );
    let table = RestrictionSemigroupoid::with_star_image(base, star).expect("star map is total");
    Ok(EnumeratedPtop {
        pi: pi.clone(),
        morphisms,
        table,
    })
}

/// The monoid of all partial maps of an `x_size`-point set, as a finite
/// table: composition is `f` after `g`, the unary operation is the
/// domain identity, and every pair is composable.
#[derive(Clone, Debug)]
pub struct EnumeratedPt {
    pub maps: Vec<PartialMap>,
    pub table: RestrictionSemigroupoid,
}

fn enumerate_pt_with<F>(
    x_size: usize,
    guard: usize,
    compose: F,
) -> Result<EnumeratedPt, PartialMapError>
where
    F: Fn(&PartialMap, &PartialMap) -> PartialMap,
{
    let needed = (1 + x_size as u128).pow(x_size as u32);
    if needed > guard as u128 {
        return Err(PartialMapError::GuardExceeded {
            needed,
            guard: guard as u128,
        });
    }
    let points: Vec<PointId> = (0..x_size).map(PointId).collect();
    let maps = maps_between(x_size, &points, &points);
    let index: BTreeMap<&PartialMap, usize> =
        maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let names = maps
        .iter()
        .map(|m| {
            let body: Vec<String> = m
                .entries()
                .map(|(k, v)| format!("{}>{}", k.index(), v.index()))
                .collect();
            if body.is_empty() {
                "[_]".to_string()
            } else {
                format!("[{}]", body.join(","))
            }
        })
        .collect();
    let mut entries = Vec::new();
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            entries.push(((i, j), index[&compose(f, g)]));
        }
    }
    let base = Semigroupoid::from_entries(names, entries).expect("indices in range");
    let star = StarMap::new(
        maps.iter()
            .map(|m| ElementId::new(index[&domain_identity(m)]))
            .collect(),
    );
    let table = RestrictionSemigroupoid::with_star_image(base, star).expect("star total");
    Ok(EnumeratedPt { maps, table })
}

/// The partial-map monoid with composition `f (star) g = f after g` and the
/// domain identity as `+`; a right restriction monoid.
pub fn enumerate_pt(x_size: usize, guard: usize) -> Result<EnumeratedPt, PartialMapError> {
    enumerate_pt_with(x_size, guard, star_compose)
}

/// The reversed partial-map monoid with composition `f (bullet) g = g
/// after f` and the domain identity as `*`; a left restriction monoid.
/// Built directly from [`bullet_compose`], independently of
/// [`enumerate_pt`] and of the table-level `opposite`.
pub fn enumerate_pt_op(x_size: usize, guard: usize) -> Result<EnumeratedPt, PartialMapError> {
    enumerate_pt_with(x_size, guard, bullet_compose)
}
