//! `(d, k)`-reducibility of induced subgraphs, decided exhaustively.
//!
//! For `H = G[X]` put `f = deg_H + delta` with `delta(v) = k - deg_G(v)`.
//! `H` is reducible when it is colorable from every assignment of lists of
//! sizes `f` with one vertex pinned to a single color (FIX), and from every
//! assignment of sizes `f - 1_I` for each `d`-independent set `I` of `H`
//! with `|I| <= k - 2`, the empty set included (FORB).

mod choosability;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::coloring::ListAssignment;
use crate::error::{Error, Result};
use crate::planar::{PlanarGraph, Vertex};
use choosability::{find_bad_assignment, Small};

/// Default vertex cap for the exhaustive checker.
pub const DEFAULT_CAP: usize = 12;

/// Integer bound per vertex slot (entries may go below zero, which makes
/// the bound unsatisfiable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    values: Vec<i64>,
}

impl DegreeBound {
    pub fn new(capacity: usize) -> Self {
        DegreeBound { values: vec![0; capacity] }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        DegreeBound { values }
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.values.get(v).copied().unwrap_or(0)
    }

    pub fn set(&mut self, v: Vertex, x: i64) {
        if v >= self.values.len() {
            self.values.resize(v + 1, 0);
        }
        self.values[v] = x;
    }

    /// Same bound with `v` pinned to 1.
    pub fn down(&self, v: Vertex) -> Self {
        let mut b = self.clone();
        b.set(v, 1);
        b
    }

    /// Same bound lowered by one on `set`.
    pub fn minus(&self, set: &[Vertex]) -> Self {
        let mut b = self.clone();
        for &v in set {
            b.set(v, b.get(v) - 1);
        }
        b
    }
}

/// `v -> k - deg_G(v)` on `h`.
pub fn delta(g: &PlanarGraph, h: &[Vertex], k: usize) -> DegreeBound {
    let mut b = DegreeBound::new(g.capacity());
    for &v in h {
        b.set(v, k as i64 - g.degree(v) as i64);
    }
    b
}

/// `deg_H + delta_{G,k}` on `h`.
pub fn base_bound(g: &PlanarGraph, h: &[Vertex], k: usize) -> DegreeBound {
    let sub = g.induced_subgraph(h.iter().copied());
    let d = delta(g, h, k);
    let mut b = DegreeBound::new(g.capacity());
    for &v in h {
        b.set(v, sub.degree(v) as i64 + d.get(v));
    }
    b
}

/// Whether `h` is colorable from every assignment with list sizes at least
/// `f`, and a concrete bad assignment (sizes exactly `f`) otherwise.
pub fn colorable_for_all_assignments(
    h: &PlanarGraph,
    f: &DegreeBound,
    cap: usize,
) -> Result<(bool, Option<ListAssignment>)> {
    let verts: Vec<Vertex> = h.vertices().collect();
    if verts.len() > cap.min(64) {
        return Err(Error::CapExceeded { size: verts.len(), cap });
    }
    let mut local = vec![usize::MAX; h.capacity()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let adj = verts.iter().map(|&v| h.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << local[u])).collect();
    let sizes: Vec<i64> = verts.iter().map(|&v| f.get(v)).collect();
    match find_bad_assignment(&Small { adj }, &sizes) {
        None => Ok((true, None)),
        Some(lists) => {
            let mut l = ListAssignment::empty(h.capacity());
            for (i, list) in lists.into_iter().enumerate() {
                l.set(verts[i], list);
            }
            Ok((false, Some(l)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Fix(Vertex),
    Forb(Vec<Vertex>),
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Fix(v) => write!(f, "FIX {v}"),
            Condition::Forb(set) => {
                write!(f, "FORB {{")?;
                for (i, v) in set.iter().enumerate() {
                    write!(f, "{}{v}", if i == 0 { "" } else { " " })?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: Condition,
    pub bound: DegreeBound,
    pub lists: ListAssignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducibilityVerdict {
    pub reducible: bool,
    pub witness: Option<Witness>,
}

fn checked_subgraph(g: &PlanarGraph, h: &[Vertex], cap: usize) -> Result<(Vec<Vertex>, PlanarGraph)> {
    let set: BTreeSet<Vertex> = h.iter().copied().collect();
    if let Some(&v) = set.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::InvalidVertex(v));
    }
    if set.len() > cap {
        return Err(Error::CapExceeded { size: set.len(), cap });
    }
    let verts: Vec<Vertex> = set.into_iter().collect();
    let sub = g.induced_subgraph(verts.iter().copied());
    Ok((verts, sub))
}

fn first_failure<I>(sub: &PlanarGraph, cases: I, cap: usize) -> Result<Option<Witness>>
where
    I: IntoParallelIterator<Item = (Condition, DegreeBound)>,
    I::Iter: IndexedParallelIterator,
{
    let found = cases
        .into_par_iter()
        .map(|(condition, bound)| {
            colorable_for_all_assignments(sub, &bound, cap)
                .map(|(ok, lists)| (!ok).then(|| Witness { condition, bound, lists: lists.unwrap() }))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    found.unwrap_or(Ok(None))
}

/// FIX: for every `v`, colorable from all `(deg_H + delta) down v` assignments.
pub fn check_fix(g: &PlanarGraph, h: &[Vertex], k: usize, cap: usize) -> Result<(bool, Option<Witness>)> {
    let (verts, sub) = checked_subgraph(g, h, cap)?;
    let f = base_bound(g, &verts, k);
    let cases: Vec<_> = verts.iter().map(|&v| (Condition::Fix(v), f.down(v))).collect();
    let w = first_failure(&sub, cases, cap)?;
    Ok((w.is_none(), w))
}

/// `d`-independent sets of `sub` of size at most `max`, in lexicographic
/// order by size then vertices, starting with the empty set.
pub fn independent_sets(sub: &PlanarGraph, d: usize, max: usize) -> Vec<Vec<Vertex>> {
    let verts: Vec<Vertex> = sub.vertices().collect();
    let dist: Vec<Vec<Option<usize>>> = verts.iter().map(|&v| sub.distances_from(v)).collect();
    let far = |i: usize, j: usize| dist[i][verts[j]].is_none_or(|x| x > d);
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for set in &layer {
            let start = set.last().map_or(0, |&i| i + 1);
            for j in start..verts.len() {
                if set.iter().all(|&i| far(i, j)) {
                    let mut s = set.clone();
                    s.push(j);
                    next.push(s);
                }
            }
        }
        out.extend(next.iter().map(|s| s.iter().map(|&i| verts[i]).collect()));
        layer = next;
    }
    out
}

/// FORB: for every `d`-independent `I` with `|I| <= k - 2`, colorable from
/// all `(deg_H + delta - 1_I)` assignments.
pub fn check_forb(g: &PlanarGraph, h: &[Vertex], k: usize, d: usize, cap: usize) -> Result<(bool, Option<Witness>)> {
    let (verts, sub) = checked_subgraph(g, h, cap)?;
    let f = base_bound(g, &verts, k);
    // FORB forces every list to keep two colors after one removal
    if let Some(&v) = verts.iter().find(|&&v| f.get(v) < 2) {
        let bound = f.minus(&[v]);
        let (_, lists) = colorable_for_all_assignments(&sub, &bound, cap)?;
        let w = Witness { condition: Condition::Forb(vec![v]), bound, lists: lists.expect("bound below one") };
        return Ok((false, Some(w)));
    }
    let cases: Vec<_> = independent_sets(&sub, d, k.saturating_sub(2))
        .into_iter()
        .map(|set| {
            let b = f.minus(&set);
            (Condition::Forb(set), b)
        })
        .collect();
    let w = first_failure(&sub, cases, cap)?;
    Ok((w.is_none(), w))
}

/// FIX and FORB together; the witness is the first failure (FIX before
/// FORB).
pub fn is_reducible(g: &PlanarGraph, h: &[Vertex], d: usize, k: usize, cap: usize) -> Result<ReducibilityVerdict> {
    let (fix, w) = check_fix(g, h, k, cap)?;
    if !fix {
        return Ok(ReducibilityVerdict { reducible: false, witness: w });
    }
    let (forb, w) = check_forb(g, h, k, d, cap)?;
    Ok(ReducibilityVerdict { reducible: forb, witness: w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::solve;
    use crate::gen;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bound(pairs: &[(Vertex, i64)]) -> DegreeBound {
        let mut b = DegreeBound::new(0);
        for &(v, x) in pairs {
            b.set(v, x);
        }
        b
    }

    /// Independent oracle: every assignment of exact-size lists drawn from
    /// `0..universe`, checked with the plain solver.
    fn brute_all_assignments(h: &PlanarGraph, f: &DegreeBound, universe: u32) -> bool {
        let verts: Vec<Vertex> = h.vertices().collect();
        let choices: Vec<Vec<Vec<u32>>> =
            verts.iter().map(|&v| subsets_of(universe, f.get(v).max(0) as usize)).collect();
        if verts.iter().any(|&v| f.get(v) <= 0) {
            return false;
        }
        let mut idx = vec![0; verts.len()];
        loop {
            let mut l = ListAssignment::empty(h.capacity());
            for (i, &v) in verts.iter().enumerate() {
                l.set(v, choices[i][idx[i]].iter().copied());
            }
            if solve(h, &l).is_none() {
                return false;
            }
            let mut i = 0;
            loop {
                if i == verts.len() {
                    return true;
                }
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    fn subsets_of(n: u32, k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for m in 0u32..(1 << n) {
            if m.count_ones() as usize == k {
                out.push((0..n).filter(|&c| m >> c & 1 == 1).collect());
            }
        }
        out
    }

    fn replay_fails(h: &PlanarGraph, w: &Witness) -> bool {
        h.vertices().all(|v| w.lists.size(v) as i64 == w.bound.get(v).max(0)) && solve(h, &w.lists).is_none()
    }

    #[test]
    fn delta_values() {
        let g = gen::star(4);
        let d = delta(&g, &[0, 1], 4);
        assert_eq!(d.get(0), 0);
        assert_eq!(d.get(1), 3);
        let c = gen::cube();
        assert_eq!(delta(&c, &[0], 4).get(0), 1);
        let p = gen::path(3);
        assert_eq!(delta(&p, &[1], 4).get(1), 2);
    }

    #[test]
    fn universal_examples() {
        let one = gen::path(1);
        assert!(colorable_for_all_assignments(&one, &bound(&[(0, 1)]), 12).unwrap().0);
        let edge = gen::path(2);
        assert!(colorable_for_all_assignments(&edge, &bound(&[(0, 1), (1, 2)]), 12).unwrap().0);
        let (ok, w) = colorable_for_all_assignments(&edge, &bound(&[(0, 1), (1, 1)]), 12).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!(w.get(0), w.get(1));
        assert_eq!(w.size(0), 1);
        let (ok, w) = colorable_for_all_assignments(&one, &bound(&[(0, 0)]), 12).unwrap();
        assert!(!ok && w.unwrap().size(0) == 0);
        assert!(matches!(
            colorable_for_all_assignments(&gen::path(13), &bound(&[]), 12),
            Err(Error::CapExceeded { size: 13, cap: 12 })
        ));
    }

    #[test]
    fn small_configurations() {
        // degree-two vertex in the middle of a path of a cycle
        let c = gen::cycle(6);
        assert!(check_fix(&c, &[0], 4, 12).unwrap().0);
        assert!(check_forb(&c, &[0], 4, 1, 12).unwrap().0);
        assert!(is_reducible(&c, &[0], 1, 4, 12).unwrap().reducible);
        // adjacent degree-three pair in the cube
        let cube = gen::cube();
        assert!(check_fix(&cube, &[0, 1], 4, 12).unwrap().0);
        assert!(check_forb(&cube, &[0, 1], 4, 1, 12).unwrap().0);
        // single degree-three vertex: FIX holds, FORB fails with {v}
        let (ok, w) = check_forb(&cube, &[0], 4, 1, 12).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap().condition, Condition::Forb(vec![0]));
        // single degree-four vertex
        let g = gen::grid(3, 3);
        assert!(check_fix(&g, &[4], 4, 12).unwrap().0);
        let v = is_reducible(&g, &[4], 1, 4, 12).unwrap();
        assert!(!v.reducible);
        let w = v.witness.unwrap();
        assert!(matches!(w.condition, Condition::Forb(_)));
        assert!(replay_fails(&g.induced_subgraph([4]), &w));
    }

    #[test]
    fn independent_set_enumeration() {
        let p = gen::path(3);
        assert_eq!(independent_sets(&p, 1, 2), vec![vec![], vec![0], vec![1], vec![2], vec![0, 2]]);
        assert_eq!(independent_sets(&p, 2, 2), vec![vec![], vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut negatives = 0;
        for _ in 0..150 {
            let g = gen::random_triangle_free(6, &mut rng);
            if g.vertex_count() > 5 {
                continue;
            }
            let top = if g.vertex_count() == 5 { 2 } else { 3 };
            let mut f = DegreeBound::new(g.capacity());
            for v in g.vertices() {
                f.set(v, rng.gen_range(1..=top));
            }
            let total: i64 = g.vertices().map(|v| f.get(v)).sum();
            let universe = (total as u32).min(6);
            let (ok, w) = colorable_for_all_assignments(&g, &f, 12).unwrap();
            assert_eq!(ok, brute_all_assignments(&g, &f, universe), "{g:?} {f:?}");
            if let Some(w) = w {
                negatives += 1;
                assert!(solve(&g, &w).is_none());
                assert!(g.vertices().all(|v| w.size(v) as i64 == f.get(v)));
                // renaming colors keeps it bad
                let mut perm: Vec<u32> = (0..64).collect();
                perm.shuffle(&mut rng);
                let mut renamed = ListAssignment::empty(g.capacity());
                for v in g.vertices() {
                    renamed.set(v, w.get(v).iter().map(|&c| perm[c as usize]));
                }
                assert!(solve(&g, &renamed).is_none());
            }
        }
        assert!(negatives > 10);
    }

    #[test]
    fn monotone_in_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..60 {
            let g = gen::random_triangle_free(9, &mut rng);
            let mut f = DegreeBound::new(g.capacity());
            for v in g.vertices() {
                f.set(v, rng.gen_range(1..=3));
            }
            if colorable_for_all_assignments(&g, &f, 12).unwrap().0 {
                let v = g.vertices().nth(rng.gen_range(0..g.vertex_count())).unwrap();
                let mut up = f.clone();
                up.set(v, f.get(v) + 1);
                assert!(colorable_for_all_assignments(&g, &up, 12).unwrap().0);
            }
        }
    }
}
