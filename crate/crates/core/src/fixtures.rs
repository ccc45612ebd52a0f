//! Standard fixtures shared by the unit, property and acceptance tests.
//!
//! Each restriction fixture is certified by the axiom checkers in this
//! crate's test suite before anything else relies on it as ground truth.

use std::collections::BTreeSet;

use crate::semigroupoid::{ElementId, RestrictionSemigroupoid, Semigroupoid, StarMap};

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Two-element meet semilattice `e <= f` with star = identity, E = {e, f}.
pub fn sl2() -> RestrictionSemigroupoid {
    let base = Semigroupoid::from_entries(
        names(&["e", "f"]),
        [((0, 0), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 1)],
    )
    .unwrap();
    RestrictionSemigroupoid::with_star_image(base, StarMap::identity(2)).unwrap()
}

/// The two-element group with star constant at the identity, E = {1}.
pub fn z2() -> RestrictionSemigroupoid {
    let base = Semigroupoid::from_entries(
        names(&["1", "g"]),
        [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 0)],
    )
    .unwrap();
    RestrictionSemigroupoid::with_star_image(base, StarMap::constant(2, ElementId::new(0))).unwrap()
}

/// Two disjoint one-element groups: a two-object category with only
/// identity arrows. star = identity, E = {p, q}.
pub fn disj() -> RestrictionSemigroupoid {
    let base = Semigroupoid::from_entries(names(&["p", "q"]), [((0, 0), 0), ((1, 1), 1)]).unwrap();
    RestrictionSemigroupoid::with_star_image(base, StarMap::identity(2)).unwrap()
}

/// An associative semigroupoid that is not categorical: the right sets
/// overlap without being equal (`S^a = {c}` vs `S^b = {c, d}`).
pub fn nc() -> Semigroupoid {
    Semigroupoid::from_entries(
        names(&["a", "b", "c", "d"]),
        [
            ((0, 2), 0), // ac = a
            ((1, 2), 0), // bc = a
            ((1, 3), 0), // bd = a
            ((2, 2), 2), // cc = c
            ((3, 2), 3), // dc = d
        ],
    )
    .unwrap()
}

/// A deliberately broken table: (x,y) and (y,x) are composable but the
/// product pair (xy, x) is missing, so case s1 of associativity fails on
/// the triple (x, y, x).
pub fn broken_assoc() -> Semigroupoid {
    Semigroupoid::from_entries(names(&["x", "y"]), [((0, 1), 0), ((1, 0), 1)]).unwrap()
}

/// A composable chain with no identity at the initial object: arrows
/// s : A -> B, x : B -> C, their composite u = xs : A -> C, and local
/// identities at B and C only. Left restriction with s* = eB and
/// x* = u* = eC. Both s and u compose with nothing on their right, which
/// exercises the sink handling of the graphing construction.
pub fn chain() -> RestrictionSemigroupoid {
    // 0 = s, 1 = x, 2 = u, 3 = eB, 4 = eC
    let base = Semigroupoid::from_entries(
        names(&["s", "x", "u", "eB", "eC"]),
        [
            ((3, 0), 0), // eB s = s
            ((1, 0), 2), // x s = u
            ((3, 3), 3),
            ((1, 3), 1), // x eB = x
            ((4, 1), 1), // eC x = x
            ((4, 2), 2), // eC u = u
            ((4, 4), 4),
        ],
    )
    .unwrap();
    let star = StarMap::new([3, 4, 4, 3, 4].map(ElementId::new).to_vec());
    RestrictionSemigroupoid::with_star_image(base, star).unwrap()
}

/// Element ids looked up by name, for readable test assertions.
pub fn ids(s: &Semigroupoid, names: &[&str]) -> Vec<ElementId> {
    names.iter().map(|n| s.id_of(n).unwrap()).collect()
}

pub fn id_set(s: &Semigroupoid, names: &[&str]) -> BTreeSet<ElementId> {
    ids(s, names).into_iter().collect()
}
