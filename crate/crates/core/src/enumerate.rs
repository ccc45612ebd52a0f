//! Exhaustive enumeration of small semigroupoids and random generation of
//! left restriction structures.
//!
//! The sweep over every partial table on `n` elements is the brute-force
//! oracle behind the categoricity and characterization properties: tables
//! are encoded as base-`(n+1)` integers (digit 0 = undefined) and filtered
//! by fast dense checks, with the survivors cross-checked against the
//! report-producing checkers by the test suite. This is the hottest loop
//! in the crate and runs data-parallel under the `parallel` feature.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec;
use crate::partialmaps::{enumerate_ptop, FiberedFunction};
use crate::semigroupoid::{
    ElementId, ElementMapping, RestrictionSemigroupoid, Semigroupoid, StarMap,
};
use crate::szendrei;

/// A partial composition table in dense row-major form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseTable {
    pub n: usize,
    cells: Vec<Option<u8>>,
}

impl DenseTable {
    /// Builds a table from row-major cells; `cells[s * n + t]` is the
    /// product of `(s, t)` or `None` when the pair is not composable.
    pub fn from_cells(n: usize, cells: Vec<Option<u8>>) -> Self {
        assert_eq!(cells.len(), n * n);
        DenseTable { n, cells }
    }

    pub fn decode(n: usize, mut code: u64) -> Self {
        let base = (n + 1) as u64;
        let mut cells = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let digit = code % base;
            code /= base;
            cells.push(if digit == 0 {
                None
            } else {
                Some((digit - 1) as u8)
            });
        }
        DenseTable { n, cells }
    }

    #[inline]
    pub fn get(&self, s: usize, t: usize) -> Option<u8> {
        self.cells[s * self.n + t]
    }

    pub fn defined_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Converts to the map-backed representation with names `x0, x1, ...`.
    pub fn to_semigroupoid(&self) -> Semigroupoid {
        let names = (0..self.n).map(|i| format!("x{i}")).collect();
        let entries = (0..self.n).flat_map(|s| {
            (0..self.n).filter_map(move |t| self.get(s, t).map(|v| ((s, t), v as usize)))
        });
        Semigroupoid::from_entries(names, entries).expect("dense indices are in range")
    }
}

/// Number of partial tables on `n` elements: `(n+1)^(n*n)`.
pub fn table_space_size(n: usize) -> u64 {
    ((n + 1) as u64).pow((n * n) as u32)
}

/// Dense mirror of the associativity scan.
pub fn dense_is_associative(t: &DenseTable) -> bool {
    let n = t.n;
    for a in 0..n {
        for b in 0..n {
            let ab = t.get(a, b);
            for c in 0..n {
                let bc = t.get(b, c);
                let case1 = ab.is_some() && bc.is_some();
                let case2 = ab.is_some_and(|ab| t.get(ab as usize, c).is_some());
                let case3 = bc.is_some_and(|bc| t.get(a, bc as usize).is_some());
                if !(case1 || case2 || case3) {
                    continue;
                }
                let (ab, bc) = match (ab, bc) {
                    (Some(x), Some(y)) => (x, y),
                    _ => return false,
                };
                let left = t.get(ab as usize, c);
                let right = t.get(a, bc as usize);
                if left.is_none() || left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// Dense mirror of the left restriction scan for a candidate star map.
pub fn dense_is_left_restriction(t: &DenseTable, star: &[u8]) -> bool {
    let n = t.n;
    for (s, &star_s) in star.iter().enumerate().take(n) {
        if t.get(star_s as usize, s) != Some(s as u8) {
            return false;
        }
    }
    for s in 0..n {
        let e = star[s] as usize;
        for x in 0..n {
            let sx = star[x] as usize;
            // composability must not distinguish x from star(x)
            if t.get(s, x).is_some() != t.get(s, sx).is_some() {
                return false;
            }
            // star images commute
            if t.get(e, sx).is_some() != t.get(sx, e).is_some() {
                return false;
            }
            if t.get(e, sx).is_some() && t.get(e, sx) != t.get(sx, e) {
                return false;
            }
            // (s* x)* = s* x*
            if let Some(ex) = t.get(e, x) {
                if t.get(e, sx) != Some(star[ex as usize]) {
                    return false;
                }
            }
            // s x* = (sx)* s
            if let Some(sx_val) = t.get(s, x) {
                let lhs = t.get(s, sx);
                let rhs = t.get(star[sx_val as usize] as usize, s);
                if lhs.is_none() || lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Dense mirror of the categoricity scan: right-composability rows must be
/// pairwise equal or disjoint.
pub fn dense_is_categorical(t: &DenseTable) -> bool {
    let n = t.n;
    let rows: Vec<u32> = (0..n)
        .map(|s| {
            (0..n)
                .filter(|&x| t.get(s, x).is_some())
                .fold(0u32, |m, x| m | 1 << x)
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (rows[i], rows[j]);
            if a != b && a & b != 0 {
                return false;
            }
        }
    }
    true
}

/// All associative partial tables on `n` elements, by exhaustive sweep of
/// the `(n+1)^(n*n)` table space.
pub fn associative_tables(n: usize) -> Vec<DenseTable> {
    let space = table_space_size(n);
    let codes = exec::filter_codes(space, |code| {
        dense_is_associative(&DenseTable::decode(n, code))
    });
    codes
        .into_iter()
        .map(|code| DenseTable::decode(n, code))
        .collect()
}

/// All `n^n` candidate star maps on `n` elements.
pub fn star_candidates(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = (n as u64).pow(n as u32);
    for mut code in 0..total {
        let mut star = Vec::with_capacity(n);
        for _ in 0..n {
            star.push((code % n as u64) as u8);
            code /= n as u64;
        }
        out.push(star);
    }
    out
}

pub fn star_map_from_dense(star: &[u8]) -> StarMap {
    StarMap::new(star.iter().map(|&v| ElementId::new(v as usize)).collect())
}

/// Every left restriction structure on at most `max_n` elements, as
/// map-backed values: each associative table paired with each star map
/// passing the dense scan.
pub fn left_restriction_pool(max_n: usize) -> Vec<RestrictionSemigroupoid> {
    let mut pool = Vec::new();
    for n in 1..=max_n {
        let stars = star_candidates(n);
        for table in associative_tables(n) {
            for star in &stars {
                if dense_is_left_restriction(&table, star) {
                    let rs = RestrictionSemigroupoid::with_star_image(
                        table.to_semigroupoid(),
                        star_map_from_dense(star),
                    )
                    .expect("dense star maps are total");
                    pool.push(rs);
                }
            }
        }
    }
    pool
}

/// The substructure generated by `seeds`: closed under products and the
/// star map, with the table restricted accordingly and the distinct set
/// taken to be the star image. A star-closed product-closed subset of a
/// left restriction structure is again left restriction.
pub fn closed_substructure(
    rs: &RestrictionSemigroupoid,
    seeds: &[ElementId],
) -> RestrictionSemigroupoid {
    let mut keep: BTreeSet<ElementId> = seeds.iter().copied().collect();
    for &s in seeds {
        keep.insert(rs.star_of(s));
    }
    loop {
        let mut grew = false;
        let members: Vec<ElementId> = keep.iter().copied().collect();
        for &a in &members {
            for &b in &members {
                if let Some(ab) = rs.product(a, b) {
                    if keep.insert(ab) {
                        keep.insert(rs.star_of(ab));
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let members: Vec<ElementId> = keep.iter().copied().collect();
    let rank = |id: ElementId| members.iter().position(|&m| m == id).expect("closed");
    let names = members.iter().map(|&m| rs.name(m).to_string()).collect();
    let entries = members.iter().enumerate().flat_map(|(i, &a)| {
        members
            .iter()
            .enumerate()
            .filter_map(move |(j, &b)| rs.product(a, b).map(|ab| ((i, j), rank(ab))))
            .collect::<Vec<_>>()
    });
    let base = Semigroupoid::from_entries(names, entries).expect("closure keeps indices valid");
    let star = StarMap::new(
        members
            .iter()
            .map(|&m| ElementId::new(rank(rs.star_of(m))))
            .collect(),
    );
    RestrictionSemigroupoid::with_star_image(base, star).expect("closure keeps the star total")
}

/// Deterministic sample of left restriction structures with at most
/// `max_elements` elements: a seeded mix of the exhaustive pool on up to 3
/// elements, random star-closed substructures of partial-map categories,
/// and expansions of small pool members.
pub fn sample_left_restriction(
    seed: u64,
    count: usize,
    max_elements: usize,
) -> Vec<RestrictionSemigroupoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<RestrictionSemigroupoid> = left_restriction_pool(3)
        .into_iter()
        .filter(|rs| rs.len() <= max_elements)
        .collect();

    let mut hosts = Vec::new();
    for points in 2..=3usize {
        let names = (0..points).map(|i| format!("p{i}")).collect();
        hosts.push(enumerate_ptop(&FiberedFunction::trivial(names), 1 << 12).expect("small"));
    }
    hosts.push(
        enumerate_ptop(
            &FiberedFunction::new(
                vec!["p0".into(), "p1".into(), "p2".into()],
                vec!["a".into(), "b".into()],
                vec![0, 0, 1],
            )
            .expect("surjective"),
            1 << 12,
        )
        .expect("small"),
    );

    let mut seen = BTreeSet::new();
    let mut out: Vec<RestrictionSemigroupoid> = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let candidate = match attempts % 3 {
            0 => pool.choose(&mut rng).cloned(),
            1 => {
                let host = &hosts[rng.gen_range(0..hosts.len())].table;
                let k = rng.gen_range(1..=2usize);
                let seeds: Vec<ElementId> = (0..k)
                    .map(|_| ElementId::new(rng.gen_range(0..host.len())))
                    .collect();
                let sub = closed_substructure(host, &seeds);
                (sub.len() <= max_elements).then_some(sub)
            }
            _ => pool.choose(&mut rng).and_then(|rs| {
                szendrei::build_sz(rs, 8)
                    .ok()
                    .map(|sz| sz.table)
                    .filter(|t| t.len() <= max_elements && !t.is_empty())
            }),
        };
        if let Some(rs) = candidate {
            let key = format!("{rs:?}");
            if seen.insert(key) {
                out.push(rs);
            }
        }
    }
    // top up with repeats from the pool if dedup starved the sample
    let mut i = 0;
    while out.len() < count && !pool.is_empty() {
        out.push(pool[i % pool.len()].clone());
        i += 1;
    }
    out
}

/// Every total mapping between element sets of the given sizes, in
/// odometer order (`target_len^source_len` maps).
pub fn all_mappings(source_len: usize, target_len: usize) -> Vec<ElementMapping> {
    let total = (target_len as u64).pow(source_len as u32);
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total {
        let mut map = Vec::with_capacity(source_len);
        for _ in 0..source_len {
            map.push(ElementId::new((code % target_len as u64) as usize));
            code /= target_len as u64;
        }
        out.push(ElementMapping::new(source_len, target_len, map).expect("odometer in range"));
    }
    out
}
