//! Executable verifiers for the semigroupoid axiom systems: associativity
//! of the partial operation, the left and right restriction laws, their
//! bilateral compatibility, and the distinct-set conditions.
//!
//! Every checker comes in two flavours: a report mode that scans all tuples
//! and collects every violation with concrete witnesses (deterministically
//! ordered), and a boolean mode with early exit for search loops.

use std::collections::BTreeSet;

use crate::exec;
use crate::semigroupoid::{ElementId, RestrictionSemigroupoid, Semigroupoid, StarMap};

/// One broken rule instance. `witnesses` names the concrete elements that
/// reproduce the failure when replayed through the composition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub witnesses: Vec<ElementId>,
    pub message: String,
}

impl Violation {
    fn new(rule: &'static str, witnesses: &[ElementId], message: String) -> Self {
        Violation {
            rule,
            witnesses: witnesses.to_vec(),
            message,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated_rules(&self) -> BTreeSet<&'static str> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| (&a.witnesses, a.rule).cmp(&(&b.witnesses, b.rule)));
        AxiomReport { violations }
    }

    pub fn merge(reports: impl IntoIterator<Item = AxiomReport>) -> Self {
        let mut all = Vec::new();
        for r in reports {
            all.extend(r.violations);
        }
        AxiomReport::from_violations(all)
    }
}

fn fmt_pair(s: &Semigroupoid, a: ElementId, b: ElementId) -> String {
    format!("({}, {})", s.name(a), s.name(b))
}

/// Checks the triple condition of the partial associativity law: whenever
/// one of the hypothesis cases s1/s2/s3 holds for (s, t, r), all four pairs
/// (s,t), (t,r), (st,r), (s,tr) must be composable and (st)r = s(tr).
fn associativity_violation(
    s: &Semigroupoid,
    a: ElementId,
    b: ElementId,
    c: ElementId,
) -> Option<Violation> {
    let ab = s.product(a, b);
    let bc = s.product(b, c);
    let case1 = ab.is_some() && bc.is_some();
    let case2 = ab.is_some_and(|ab| s.is_composable(ab, c));
    let case3 = bc.is_some_and(|bc| s.is_composable(a, bc));
    let rule = if case1 {
        "s1"
    } else if case2 {
        "s2"
    } else if case3 {
        "s3"
    } else {
        return None;
    };

    let mut missing = Vec::new();
    if ab.is_none() {
        missing.push(format!("(s,t) = {}", fmt_pair(s, a, b)));
    }
    if bc.is_none() {
        missing.push(format!("(t,r) = {}", fmt_pair(s, b, c)));
    }
    if let Some(ab) = ab {
        if !s.is_composable(ab, c) {
            missing.push(format!("(st,r) = {}", fmt_pair(s, ab, c)));
        }
    }
    if let Some(bc) = bc {
        if !s.is_composable(a, bc) {
            missing.push(format!("(s,tr) = {}", fmt_pair(s, a, bc)));
        }
    }
    if !missing.is_empty() {
        return Some(Violation::new(
            rule,
            &[a, b, c],
            format!(
                "case {rule} applies but {} not composable",
                missing.join(", ")
            ),
        ));
    }
    let left = s.product(ab.unwrap(), c).unwrap();
    let right = s.product(a, bc.unwrap()).unwrap();
    if left != right {
        return Some(Violation::new(
            rule,
            &[a, b, c],
            format!("(st)r = {} but s(tr) = {}", s.name(left), s.name(right)),
        ));
    }
    None
}

/// Exhaustive scan of every element triple (O(n^3)).
pub fn check_associativity(s: &Semigroupoid) -> AxiomReport {
    let n = s.len();
    let violations = exec::flat_map_indexed(n, |i| {
        let a = ElementId::new(i);
        let mut out = Vec::new();
        for b in s.element_ids() {
            for c in s.element_ids() {
                out.extend(associativity_violation(s, a, b, c));
            }
        }
        out
    });
    AxiomReport::from_violations(violations)
}

/// Early-exit variant of [`check_associativity`].
pub fn is_associative(s: &Semigroupoid) -> bool {
    for a in s.element_ids() {
        for b in s.element_ids() {
            for c in s.element_ids() {
                if associativity_violation(s, a, b, c).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

fn lr1_ok(rs: &RestrictionSemigroupoid, s: ElementId) -> bool {
    rs.product(rs.star_of(s), s) == Some(s)
}

fn dom_ok(rs: &RestrictionSemigroupoid, s: ElementId, t: ElementId) -> bool {
    rs.is_composable(s, t) == rs.is_composable(s, rs.star_of(t))
}

fn commute_ok(rs: &RestrictionSemigroupoid, e: ElementId, f: ElementId) -> bool {
    let ef = rs.is_composable(e, f);
    let fe = rs.is_composable(f, e);
    ef == fe && (!ef || rs.product(e, f) == rs.product(f, e))
}

fn lr3_ok(rs: &RestrictionSemigroupoid, e: ElementId, t: ElementId) -> bool {
    // assumes (e, t) composable with e in the star image
    match rs.product(e, t) {
        Some(et) => rs.product(e, rs.star_of(t)) == Some(rs.star_of(et)),
        None => false,
    }
}

fn lr4_ok(rs: &RestrictionSemigroupoid, s: ElementId, t: ElementId) -> bool {
    // assumes (s, t) composable
    match rs.product(s, t) {
        Some(st) => {
            let lhs = rs.product(s, rs.star_of(t));
            let rhs = rs.product(rs.star_of(st), s);
            lhs.is_some() && lhs == rhs
        }
        None => false,
    }
}

/// Verifies the left restriction laws lr1-lr4 for the star map, plus the
/// derived domain compatibility `(s,t) composable iff (s,t*) composable`
/// (rule id `lr-dom`). lr2 is quantified over the image of the star map.
pub fn check_left_restriction(rs: &RestrictionSemigroupoid) -> AxiomReport {
    let n = rs.len();
    let image: Vec<ElementId> = rs.star().image().into_iter().collect();

    let mut violations = exec::flat_map_indexed(n, |i| {
        let s = ElementId::new(i);
        let mut out = Vec::new();
        if !lr1_ok(rs, s) {
            out.push(Violation::new(
                "lr1",
                &[s],
                format!(
                    "s* s should equal s: {} {} = {:?}",
                    rs.name(rs.star_of(s)),
                    rs.name(s),
                    rs.product(rs.star_of(s), s).map(|v| rs.name(v).to_string())
                ),
            ));
        }
        for t in rs.element_ids() {
            if !dom_ok(rs, s, t) {
                out.push(Violation::new(
                    "lr-dom",
                    &[s, t],
                    format!(
                        "(s,t) composable must agree with (s,t*): {} vs ({}, {})",
                        rs.is_composable(s, t),
                        rs.name(s),
                        rs.name(rs.star_of(t))
                    ),
                ));
            }
            if rs.is_composable(s, t) && !lr4_ok(rs, s, t) {
                out.push(Violation::new(
                    "lr4",
                    &[s, t],
                    "s t* should equal (st)* s".to_string(),
                ));
            }
        }
        out
    });

    for &e in &image {
        for &f in &image {
            if !commute_ok(rs, e, f) {
                violations.push(Violation::new(
                    "lr2",
                    &[e, f],
                    "star images must commute where composable".to_string(),
                ));
            }
        }
        for t in rs.element_ids() {
            if rs.is_composable(e, t) && !lr3_ok(rs, e, t) {
                violations.push(Violation::new(
                    "lr3",
                    &[e, t],
                    "(s* t)* should equal s* t*".to_string(),
                ));
            }
        }
    }

    AxiomReport::from_violations(violations)
}

/// Early-exit variant of [`check_left_restriction`].
pub fn is_left_restriction(rs: &RestrictionSemigroupoid) -> bool {
    for s in rs.element_ids() {
        if !lr1_ok(rs, s) {
            return false;
        }
    }
    for s in rs.element_ids() {
        for t in rs.element_ids() {
            if !dom_ok(rs, s, t) {
                return false;
            }
            if rs.is_composable(s, t) && !lr4_ok(rs, s, t) {
                return false;
            }
            let e = rs.star_of(s);
            let f = rs.star_of(t);
            if !commute_ok(rs, e, f) {
                return false;
            }
            if rs.is_composable(e, t) && !lr3_ok(rs, e, t) {
                return false;
            }
        }
    }
    true
}

fn rr1_ok(rs: &RestrictionSemigroupoid, s: ElementId) -> bool {
    rs.product(s, rs.star_of(s)) == Some(s)
}

fn rr_dom_ok(rs: &RestrictionSemigroupoid, s: ElementId, t: ElementId) -> bool {
    rs.is_composable(s, t) == rs.is_composable(rs.star_of(s), t)
}

fn rr3_ok(rs: &RestrictionSemigroupoid, s: ElementId, t: ElementId) -> bool {
    // assumes (s, t+) composable
    match rs.product(s, rs.star_of(t)) {
        Some(st) => rs.product(rs.star_of(s), rs.star_of(t)) == Some(rs.star_of(st)),
        None => false,
    }
}

fn rr4_ok(rs: &RestrictionSemigroupoid, s: ElementId, t: ElementId) -> bool {
    // assumes (s, t) composable
    match rs.product(s, t) {
        Some(st) => {
            let lhs = rs.product(rs.star_of(s), t);
            let rhs = rs.product(t, rs.star_of(st));
            lhs.is_some() && lhs == rhs
        }
        None => false,
    }
}

/// Verifies the right restriction laws rr1-rr4, reading the star field of
/// the structure as the `+` operation. rr3 is quantified over pairs with
/// `(s, t+)` composable, the exact mirror of lr3 under the opposite
/// operation, so that a structure passes this checker precisely when its
/// opposite passes [`check_left_restriction`].
pub fn check_right_restriction(rs: &RestrictionSemigroupoid) -> AxiomReport {
    let n = rs.len();
    let image: Vec<ElementId> = rs.star().image().into_iter().collect();

    let mut violations = exec::flat_map_indexed(n, |i| {
        let s = ElementId::new(i);
        let mut out = Vec::new();
        if !rr1_ok(rs, s) {
            out.push(Violation::new(
                "rr1",
                &[s],
                "s s+ should equal s".to_string(),
            ));
        }
        for t in rs.element_ids() {
            if !rr_dom_ok(rs, s, t) {
                out.push(Violation::new(
                    "rr-dom",
                    &[s, t],
                    "(s,t) composable must agree with (s+,t)".to_string(),
                ));
            }
            if rs.is_composable(s, rs.star_of(t)) && !rr3_ok(rs, s, t) {
                out.push(Violation::new(
                    "rr3",
                    &[s, t],
                    "(s t+)+ should equal s+ t+".to_string(),
                ));
            }
            if rs.is_composable(s, t) && !rr4_ok(rs, s, t) {
                out.push(Violation::new(
                    "rr4",
                    &[s, t],
                    "s+ t should equal t (st)+".to_string(),
                ));
            }
        }
        out
    });

    for &e in &image {
        for &f in &image {
            if !commute_ok(rs, e, f) {
                violations.push(Violation::new(
                    "rr2",
                    &[e, f],
                    "plus images must commute where composable".to_string(),
                ));
            }
        }
    }

    AxiomReport::from_violations(violations)
}

/// Early-exit variant of [`check_right_restriction`].
pub fn is_right_restriction(rs: &RestrictionSemigroupoid) -> bool {
    for s in rs.element_ids() {
        if !rr1_ok(rs, s) {
            return false;
        }
        for t in rs.element_ids() {
            if !rr_dom_ok(rs, s, t) {
                return false;
            }
            if rs.is_composable(s, rs.star_of(t)) && !rr3_ok(rs, s, t) {
                return false;
            }
            if rs.is_composable(s, t) && !rr4_ok(rs, s, t) {
                return false;
            }
            if !commute_ok(rs, rs.star_of(s), rs.star_of(t)) {
                return false;
            }
        }
    }
    true
}

/// Verifies the bilateral laws: the star field as a left restriction, the
/// supplied `plus` as a right restriction, and the compatibility identities
/// `(s*)+ = s*` and `(s+)* = s+` (rule id `compat`).
pub fn check_bilateral(rs: &RestrictionSemigroupoid, plus: &StarMap) -> AxiomReport {
    let left = check_left_restriction(rs);
    let with_plus = RestrictionSemigroupoid::new(rs.base().clone(), plus.clone(), plus.image())
        .expect("plus map must cover the element set");
    let right = check_right_restriction(&with_plus);

    let mut compat = Vec::new();
    for s in rs.element_ids() {
        let star_s = rs.star_of(s);
        let plus_s = plus.of(s);
        if plus.of(star_s) != star_s {
            compat.push(Violation::new(
                "compat",
                &[s],
                format!(
                    "(s*)+ = {} but s* = {}",
                    rs.name(plus.of(star_s)),
                    rs.name(star_s)
                ),
            ));
        }
        if rs.star_of(plus_s) != plus_s {
            compat.push(Violation::new(
                "compat",
                &[s],
                format!(
                    "(s+)* = {} but s+ = {}",
                    rs.name(rs.star_of(plus_s)),
                    rs.name(plus_s)
                ),
            ));
        }
    }
    AxiomReport::merge([left, right, AxiomReport::from_violations(compat)])
}

/// Order `e <= f iff (e,f) composable and e = ef`, evaluated on a candidate
/// distinct set.
fn order_leq(s: &Semigroupoid, e: ElementId, f: ElementId) -> bool {
    s.product(e, f) == Some(e)
}

/// Reachability classes of the relation `e ~ f iff (e,f) composable`,
/// restricted to `members`.
fn reachability_classes(s: &Semigroupoid, members: &[ElementId]) -> Vec<Vec<ElementId>> {
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    let mut assigned: Vec<Option<usize>> = vec![None; members.len()];
    for start in 0..members.len() {
        if assigned[start].is_some() {
            continue;
        }
        let class_id = classes.len();
        let mut stack = vec![start];
        assigned[start] = Some(class_id);
        let mut block = Vec::new();
        while let Some(i) = stack.pop() {
            block.push(members[i]);
            for j in 0..members.len() {
                if assigned[j].is_none()
                    && (s.is_composable(members[i], members[j])
                        || s.is_composable(members[j], members[i]))
                {
                    assigned[j] = Some(class_id);
                    stack.push(j);
                }
            }
        }
        block.sort();
        classes.push(block);
    }
    classes
}

/// Verifies that `e_set` is a distinct set: a nonempty commuting set of
/// idempotents, partially ordered by `e <= f iff e = ef`, decomposing into
/// meet semilattices along the composability classes.
pub fn check_distinct_set(s: &Semigroupoid, e_set: &BTreeSet<ElementId>) -> AxiomReport {
    let mut violations = Vec::new();
    if e_set.is_empty() {
        violations.push(Violation::new(
            "ds-nonempty",
            &[],
            "empty distinct set".to_string(),
        ));
        return AxiomReport::from_violations(violations);
    }
    let members: Vec<ElementId> = e_set.iter().copied().collect();

    for &e in &members {
        if s.product(e, e) != Some(e) {
            violations.push(Violation::new(
                "ds-idem",
                &[e],
                format!("{} is not idempotent", s.name(e)),
            ));
        }
    }

    for &e in &members {
        for &f in &members {
            if !s.is_composable(e, f) {
                continue;
            }
            if !s.is_composable(f, e) {
                violations.push(Violation::new(
                    "ds-closed",
                    &[e, f],
                    format!(
                        "{} composable but {} is not",
                        fmt_pair(s, e, f),
                        fmt_pair(s, f, e)
                    ),
                ));
                continue;
            }
            let ef = s.product(e, f);
            let fe = s.product(f, e);
            if ef != fe {
                violations.push(Violation::new(
                    "ds-closed",
                    &[e, f],
                    "products ef and fe differ".to_string(),
                ));
            }
            if let Some(ef) = ef {
                if !e_set.contains(&ef) {
                    violations.push(Violation::new(
                        "ds-closed",
                        &[e, f],
                        format!("product {} falls outside the set", s.name(ef)),
                    ));
                }
            }
        }
    }

    // Partial order axioms for e <= f iff e = ef.
    for &e in &members {
        if !order_leq(s, e, e) {
            violations.push(Violation::new(
                "ds-order",
                &[e],
                format!("{} is not below itself", s.name(e)),
            ));
        }
        for &f in &members {
            if e != f && order_leq(s, e, f) && order_leq(s, f, e) {
                violations.push(Violation::new(
                    "ds-order",
                    &[e, f],
                    "antisymmetry fails".to_string(),
                ));
            }
            for &g in &members {
                if order_leq(s, e, f) && order_leq(s, f, g) && !order_leq(s, e, g) {
                    violations.push(Violation::new(
                        "ds-order",
                        &[e, f, g],
                        "transitivity fails".to_string(),
                    ));
                }
            }
        }
    }

    // Each composability class must have all pairwise meets.
    for class in reachability_classes(s, &members) {
        for &e in &class {
            for &f in &class {
                let lows: Vec<ElementId> = class
                    .iter()
                    .copied()
                    .filter(|&j| order_leq(s, j, e) && order_leq(s, j, f))
                    .collect();
                let has_meet = lows
                    .iter()
                    .any(|&m| lows.iter().all(|&j| order_leq(s, j, m)));
                if !has_meet {
                    violations.push(Violation::new(
                        "ds-meet",
                        &[e, f],
                        format!("no meet for {}", fmt_pair(s, e, f)),
                    ));
                }
            }
        }
    }

    AxiomReport::from_violations(violations)
}

/// Early-exit variant of [`check_distinct_set`].
pub fn is_distinct_set(s: &Semigroupoid, e_set: &BTreeSet<ElementId>) -> bool {
    if e_set.is_empty() {
        return false;
    }
    let members: Vec<ElementId> = e_set.iter().copied().collect();
    for &e in &members {
        if s.product(e, e) != Some(e) {
            return false;
        }
    }
    for &e in &members {
        for &f in &members {
            if s.is_composable(e, f) {
                if !s.is_composable(f, e) || s.product(e, f) != s.product(f, e) {
                    return false;
                }
                if let Some(ef) = s.product(e, f) {
                    if !e_set.contains(&ef) {
                        return false;
                    }
                }
            }
            if e != f && order_leq(s, e, f) && order_leq(s, f, e) {
                return false;
            }
            for &g in &members {
                if order_leq(s, e, f) && order_leq(s, f, g) && !order_leq(s, e, g) {
                    return false;
                }
            }
        }
    }
    for class in reachability_classes(s, &members) {
        for &e in &class {
            for &f in &class {
                let lows: Vec<ElementId> = class
                    .iter()
                    .copied()
                    .filter(|&j| order_leq(s, j, e) && order_leq(s, j, f))
                    .collect();
                if !lows
                    .iter()
                    .any(|&m| lows.iter().all(|&j| order_leq(s, j, m)))
                {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::semigroupoid::StarMap;

    #[test]
    fn fixtures_are_associative() {
        for rs in [
            fixtures::sl2(),
            fixtures::z2(),
            fixtures::disj(),
            fixtures::chain(),
        ] {
            let report = check_associativity(rs.base());
            assert!(report.passed(), "{:?}", report.violations);
        }
        assert!(check_associativity(&fixtures::nc()).passed());

        // corrupting gg to g in the 2-group table yields a semilattice
        // with identity, still associative: not every corruption is a
        // counterexample, which is why the broken fixture is constructed
        // around a missing pair instead
        let corrupted = Semigroupoid::from_entries(
            ["1", "g"].map(String::from).to_vec(),
            [((0, 0), 0), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)],
        )
        .unwrap();
        assert!(check_associativity(&corrupted).passed());
    }

    #[test]
    fn broken_table_is_flagged_with_its_witness() {
        let bad = fixtures::broken_assoc();
        let report = check_associativity(&bad);
        assert!(!report.passed());
        let ids = fixtures::ids(&bad, &["x", "y"]);
        let (x, y) = (ids[0], ids[1]);
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "s1" && v.witnesses == vec![x, y, x]));
        assert!(!is_associative(&bad));
    }

    #[test]
    fn restriction_fixtures_pass_left_laws() {
        for rs in [
            fixtures::sl2(),
            fixtures::z2(),
            fixtures::disj(),
            fixtures::chain(),
        ] {
            let report = check_left_restriction(&rs);
            assert!(report.passed(), "{:?}", report.violations);
            assert!(is_left_restriction(&rs));
        }
    }

    #[test]
    fn identity_star_on_a_group_fails_lr1() {
        let z2 = fixtures::z2();
        let wrong =
            RestrictionSemigroupoid::with_star_image(z2.base().clone(), StarMap::identity(2))
                .unwrap();
        let report = check_left_restriction(&wrong);
        let g = z2.base().id_of("g").unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "lr1" && v.witnesses == vec![g]));
    }

    #[test]
    fn right_laws_hold_on_symmetric_fixtures_and_opposites() {
        for rs in [fixtures::sl2(), fixtures::z2(), fixtures::disj()] {
            assert!(check_right_restriction(&rs).passed());
        }
        // The chain is genuinely one-sided: only its opposite is right
        // restriction.
        let chain = fixtures::chain();
        assert!(!is_right_restriction(&chain));
        assert!(check_right_restriction(&chain.opposite()).passed());
        assert!(!is_left_restriction(&chain.opposite()));
    }

    #[test]
    fn bilateral_laws() {
        let sl2 = fixtures::sl2();
        assert!(check_bilateral(&sl2, &StarMap::identity(2)).passed());

        let z2 = fixtures::z2();
        let one = z2.base().id_of("1").unwrap();
        assert!(check_bilateral(&z2, &StarMap::constant(2, one)).passed());

        let mixed = check_bilateral(&z2, &StarMap::identity(2));
        assert!(mixed.violated_rules().contains("compat"));
    }

    #[test]
    fn distinct_set_checks() {
        let sl2 = fixtures::sl2();
        assert!(check_distinct_set(sl2.base(), sl2.distinct_set()).passed());
        let disj = fixtures::disj();
        assert!(check_distinct_set(disj.base(), disj.distinct_set()).passed());

        let empty = BTreeSet::new();
        let report = check_distinct_set(sl2.base(), &empty);
        assert_eq!(report.violations[0].rule, "ds-nonempty");
        assert!(!is_distinct_set(sl2.base(), &empty));

        // A non-idempotent member is rejected.
        let z2 = fixtures::z2();
        let both = fixtures::id_set(z2.base(), &["1", "g"]);
        let report = check_distinct_set(z2.base(), &both);
        assert!(report.violated_rules().contains("ds-idem"));
    }
}
