//! List colorings: exact search, counting and enumeration, plus the
//! degree-list sufficient conditions and the kernel reduction in
//! [`kernel`].

pub mod kernel;

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::planar::{PlanarGraph, Vertex};

pub use kernel::{
    blocks, cor_rem_colorable, gallai_condition, is_complete, is_odd_cycle, reduce_kernel, reduce_kernel_shuffled,
    reduce_kernel_sizes, KernelReduction, KernelStep,
};

pub type Color = u32;

/// Default vertex cap for [`enumerate_colorings`].
pub const ENUMERATION_CAP: usize = 31;

/// Sorted, duplicate-free color list per vertex slot.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn empty(capacity: usize) -> Self {
        ListAssignment { lists: vec![Vec::new(); capacity] }
    }

    pub fn from_lists(lists: Vec<Vec<Color>>) -> Self {
        let mut l = ListAssignment::empty(lists.len());
        for (v, list) in lists.into_iter().enumerate() {
            l.set(v, list);
        }
        l
    }

    pub fn set<I: IntoIterator<Item = Color>>(&mut self, v: Vertex, colors: I) {
        if v >= self.lists.len() {
            self.lists.resize(v + 1, Vec::new());
        }
        let mut list: Vec<Color> = colors.into_iter().collect();
        list.sort_unstable();
        list.dedup();
        self.lists[v] = list;
    }

    pub fn get(&self, v: Vertex) -> &[Color] {
        self.lists.get(v).map_or(&[], |l| l.as_slice())
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.get(v).len()
    }

    pub fn capacity(&self) -> usize {
        self.lists.len()
    }

    /// Every vertex of `g` has at least one listed color slot reserved.
    pub fn covers(&self, g: &PlanarGraph) -> bool {
        g.vertices().all(|v| v < self.lists.len())
    }

    /// Sizes indexed by vertex slot.
    pub fn sizes(&self) -> Vec<usize> {
        self.lists.iter().map(Vec::len).collect()
    }
}

/// Partial map vertex -> color.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn new(capacity: usize) -> Self {
        Coloring { colors: vec![None; capacity] }
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        if v >= self.colors.len() {
            self.colors.resize(v + 1, None);
        }
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        if let Some(slot) = self.colors.get_mut(v) {
            *slot = None;
        }
    }

    /// Colored vertices in id order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// Proper on `g`, every vertex of `g` colored from its list.
    pub fn is_valid(&self, g: &PlanarGraph, l: &ListAssignment) -> bool {
        g.vertices().all(|v| match self.get(v) {
            Some(c) => l.get(v).binary_search(&c).is_ok() && g.neighbors(v).iter().all(|&u| self.get(u) != Some(c)),
            None => false,
        })
    }

    /// Restriction to the vertices of `g`.
    pub fn restrict(&self, g: &PlanarGraph) -> Coloring {
        let mut out = Coloring::new(g.capacity());
        for v in g.vertices() {
            if let Some(c) = self.get(v) {
                out.set(v, c);
            }
        }
        out
    }
}

/// Finds an `L`-coloring of `g` by backtracking over vertices in order of
/// decreasing degree (ties by id), trying colors in ascending order.
pub fn solve(g: &PlanarGraph, l: &ListAssignment) -> Option<Coloring> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut coloring = Coloring::new(g.capacity());
    if backtrack(g, l, &order, 0, &mut coloring) {
        Some(coloring)
    } else {
        None
    }
}

fn available(g: &PlanarGraph, l: &ListAssignment, coloring: &Coloring, v: Vertex, c: Color) -> bool {
    g.neighbors(v).iter().all(|&u| coloring.get(u) != Some(c)) && l.get(v).binary_search(&c).is_ok()
}

fn backtrack(g: &PlanarGraph, l: &ListAssignment, order: &[Vertex], i: usize, coloring: &mut Coloring) -> bool {
    let Some(&v) = order.get(i) else { return true };
    for &c in l.get(v) {
        if !available(g, l, coloring, v, c) {
            continue;
        }
        coloring.set(v, c);
        // forward check: uncolored neighbors keep some option
        let alive = g
            .neighbors(v)
            .iter()
            .all(|&u| coloring.get(u).is_some() || l.get(u).iter().any(|&d| available(g, l, coloring, u, d)));
        if alive && backtrack(g, l, order, i + 1, coloring) {
            return true;
        }
        coloring.unset(v);
    }
    false
}

/// Visits every `L`-coloring in lexicographic order (vertices by id, colors
/// ascending). The visitor may stop the walk early.
pub fn for_each_coloring<F>(g: &PlanarGraph, l: &ListAssignment, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&Coloring) -> ControlFlow<()>,
{
    let order: Vec<Vertex> = g.vertices().collect();
    let mut coloring = Coloring::new(g.capacity());
    walk(g, l, &order, 0, &mut coloring, &mut visit)
}

fn walk<F>(
    g: &PlanarGraph,
    l: &ListAssignment,
    order: &[Vertex],
    i: usize,
    coloring: &mut Coloring,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Coloring) -> ControlFlow<()>,
{
    let Some(&v) = order.get(i) else { return visit(coloring) };
    for &c in l.get(v) {
        if available(g, l, coloring, v, c) {
            coloring.set(v, c);
            let flow = walk(g, l, order, i + 1, coloring, visit);
            coloring.unset(v);
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// All `L`-colorings in lexicographic order; refuses graphs above `cap`
/// vertices.
pub fn enumerate_colorings(g: &PlanarGraph, l: &ListAssignment, cap: usize) -> Result<Vec<Coloring>> {
    if g.vertex_count() > cap {
        return Err(Error::CapExceeded { size: g.vertex_count(), cap });
    }
    let mut out = Vec::new();
    let _ = for_each_coloring(g, l, |c| {
        out.push(c.clone());
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Exact number of `L`-colorings. Components are counted separately by a
/// dynamic program over a vertex order, keyed by the colors of the placed
/// vertices that still have unplaced neighbors.
pub fn count_colorings(g: &PlanarGraph, l: &ListAssignment) -> Result<u128> {
    let mut total: u128 = 1;
    for comp in g.components() {
        let c = count_component(g, l, &comp)?;
        total = total.checked_mul(c).ok_or(Error::CapExceeded { size: g.vertex_count(), cap: 128 })?;
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

fn count_component(g: &PlanarGraph, l: &ListAssignment, comp: &[Vertex]) -> Result<u128> {
    let n = g.capacity();
    let mut placed_nbrs = vec![0usize; n];
    let mut order = Vec::with_capacity(comp.len());
    let mut remaining: Vec<Vertex> = comp.to_vec();
    while !remaining.is_empty() {
        let (idx, _) =
            remaining.iter().enumerate().max_by_key(|&(_, &v)| (placed_nbrs[v], std::cmp::Reverse(v))).unwrap();
        let v = remaining.swap_remove(idx);
        order.push(v);
        for &u in g.neighbors(v) {
            placed_nbrs[u] += 1;
        }
    }

    let overflow = || Error::CapExceeded { size: comp.len(), cap: 128 };
    let mut placed = vec![false; n];
    let mut frontier: Vec<Vertex> = Vec::new();
    let mut states: HashMap<Vec<Color>, u128> = HashMap::from([(Vec::new(), 1)]);
    for &v in &order {
        placed[v] = true;
        let nbr_slots: Vec<usize> =
            frontier.iter().enumerate().filter(|(_, &u)| g.has_edge(u, v)).map(|(i, _)| i).collect();
        frontier.push(v);
        let keep: Vec<bool> = frontier.iter().map(|&u| g.neighbors(u).iter().any(|&w| !placed[w])).collect();
        let mut next: HashMap<Vec<Color>, u128> = HashMap::new();
        for (state, count) in states {
            for &c in l.get(v) {
                if nbr_slots.iter().any(|&i| state[i] == c) {
                    continue;
                }
                let key: Vec<Color> = state
                    .iter()
                    .copied()
                    .chain(std::iter::once(c))
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(x, _)| x)
                    .collect();
                let slot = next.entry(key).or_insert(0);
                *slot = slot.checked_add(count).ok_or_else(overflow)?;
            }
        }
        frontier = frontier.iter().zip(&keep).filter(|(_, &k)| k).map(|(&u, _)| u).collect();
        states = next;
        if states.is_empty() {
            return Ok(0);
        }
    }
    states.into_values().try_fold(0u128, |a, b| a.checked_add(b).ok_or_else(overflow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: try every element of the product of the lists.
    fn brute_count(g: &PlanarGraph, l: &ListAssignment) -> u128 {
        let vs: Vec<Vertex> = g.vertices().collect();
        let mut idx = vec![0usize; vs.len()];
        if vs.iter().any(|&v| l.size(v) == 0) {
            return 0;
        }
        let mut count = 0;
        loop {
            let mut c = Coloring::new(g.capacity());
            for (i, &v) in vs.iter().enumerate() {
                c.set(v, l.get(v)[idx[i]]);
            }
            if c.is_valid(g, l) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == vs.len() {
                    return count;
                }
                idx[i] += 1;
                if idx[i] < l.size(vs[i]) {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn single_vertex_takes_its_color() {
        let g = gen::path(1);
        let l = ListAssignment::from_lists(vec![vec![7]]);
        assert_eq!(solve(&g, &l).unwrap().get(0), Some(7));
    }

    #[test]
    fn odd_cycle_is_not_two_colorable() {
        let g = gen::cycle(5);
        assert!(solve(&g, &gen::uniform_lists(&g, &[1, 2])).is_none());
        assert_eq!(count_colorings(&g, &gen::uniform_lists(&g, &[1, 2])).unwrap(), 0);
    }

    #[test]
    fn four_cycle_with_shifted_pairs() {
        let g = gen::cycle(4);
        let l = ListAssignment::from_lists(vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]);
        let c = solve(&g, &l).unwrap();
        assert!(c.is_valid(&g, &l));
        assert_eq!(count_colorings(&g, &l).unwrap(), brute_count(&g, &l));
    }

    #[test]
    fn small_counts() {
        let edge = gen::path(2);
        assert_eq!(count_colorings(&edge, &gen::uniform_lists(&edge, &[1, 2])).unwrap(), 2);
        let c4 = gen::cycle(4);
        // chromatic polynomial of C4 at q = 3
        let q: u128 = 3;
        assert_eq!(count_colorings(&c4, &gen::uniform_lists(&c4, &[1, 2, 3])).unwrap(), (q - 1).pow(4) + (q - 1));
        let empty = PlanarGraph::from_rotation(vec![]).unwrap();
        assert_eq!(count_colorings(&empty, &ListAssignment::default()).unwrap(), 1);
        assert_eq!(enumerate_colorings(&empty, &ListAssignment::default(), 31).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_order_and_cap() {
        let g = gen::path(2);
        let l = gen::uniform_lists(&g, &[1, 2, 3]);
        let all = enumerate_colorings(&g, &l, 31).unwrap();
        let pairs: Vec<(Color, Color)> = all.iter().map(|c| (c.get(0).unwrap(), c.get(1).unwrap())).collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)]);
        let big = gen::path(32);
        assert!(matches!(
            enumerate_colorings(&big, &gen::uniform_lists(&big, &[1, 2]), 31),
            Err(Error::CapExceeded { size: 32, cap: 31 })
        ));
    }

    #[test]
    fn counts_match_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let g = gen::random_triangle_free(8, &mut rng);
            let l = gen::random_lists(&g, 2, 4, &mut rng);
            let count = count_colorings(&g, &l).unwrap();
            assert_eq!(count, brute_count(&g, &l));
            assert_eq!(count as usize, enumerate_colorings(&g, &l, 31).unwrap().len());
            assert_eq!(count > 0, solve(&g, &l).is_some());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn solutions_are_valid(seed in any::<u64>(), size in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = gen::random_triangle_free(14, &mut rng);
            let l = gen::random_lists(&g, size, 5, &mut rng);
            match solve(&g, &l) {
                Some(c) => prop_assert!(c.is_valid(&g, &l)),
                None => prop_assert_eq!(count_colorings(&g, &l).unwrap(), 0),
            }
        }
    }
}
