//! Decides whether a small graph is colorable from every list assignment
//! with prescribed list sizes.
//!
//! The search never enumerates assignments on the whole graph directly.
//! First it simplifies:
//!
//! * a vertex with a one-color list is deleted and its neighbors lose one
//!   from their sizes (a counterexample for the rest gets the deleted color
//!   added back to the neighbors);
//! * a vertex whose size exceeds its degree, or a block of vertices with
//!   sizes at least their degrees that is neither complete nor an odd cycle,
//!   can always be colored last and is deleted.
//!
//! Every remaining component is then searched for a minimal bad induced
//! subgraph `S`: connected, closed under the rules above, and carrying an
//! uncolorable assignment in which every color of every list also occurs on
//! a neighbor (otherwise that vertex could be dropped). Assignments are
//! generated up to renaming of colors: a list may use colors seen before or
//! the next unused ones, never skipping.

type Mask = u64;

const MAX_COLORS: usize = 128;

/// Small graph on vertices `0..n` with adjacency bitmasks.
#[derive(Clone, Debug)]
pub(crate) struct Small {
    pub adj: Vec<Mask>,
}

impl Small {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn deg_in(&self, v: usize, set: Mask) -> usize {
        (self.adj[v] & set).count_ones() as usize
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn bit(i: usize) -> Mask {
    1 << i
}

/// Connected components of `set`.
fn components(g: &Small, set: Mask) -> Vec<Mask> {
    let mut rest = set;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = bit(rest.trailing_zeros() as usize);
        loop {
            let grown = bits(comp).fold(comp, |acc, v| acc | (g.adj[v] & set));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// Vertex sets of the blocks of `g[set]` with at least three vertices.
fn big_blocks(g: &Small, set: Mask) -> Vec<Mask> {
    struct St<'a> {
        g: &'a Small,
        set: Mask,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Mask>,
    }
    fn dfs(s: &mut St, v: usize, parent: usize) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for u in bits(s.g.adj[v] & s.set) {
            if u == parent {
                continue;
            }
            if s.disc[u] == 0 {
                s.stack.push((v, u));
                dfs(s, u, v);
                s.low[v] = s.low[v].min(s.low[u]);
                if s.low[u] >= s.disc[v] {
                    let mut block = 0;
                    while let Some((a, b)) = s.stack.pop() {
                        block |= bit(a) | bit(b);
                        if (a, b) == (v, u) {
                            break;
                        }
                    }
                    if block.count_ones() >= 3 {
                        s.out.push(block);
                    }
                }
            } else if s.disc[u] < s.disc[v] {
                s.stack.push((v, u));
                s.low[v] = s.low[v].min(s.disc[u]);
            }
        }
    }
    let n = g.n();
    let mut s = St { g, set, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in bits(set) {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

fn is_clique(g: &Small, set: Mask) -> bool {
    bits(set).all(|v| g.adj[v] & set == set & !bit(v))
}

fn is_odd_cycle(g: &Small, set: Mask) -> bool {
    set.count_ones() % 2 == 1 && bits(set).all(|v| g.deg_in(v, set) == 2)
}

/// One application of a deletion rule, or `None` at a fixpoint.
fn removable(g: &Small, set: Mask, f: &[i64]) -> Option<Mask> {
    if let Some(v) = bits(set).find(|&v| f[v] > g.deg_in(v, set) as i64) {
        return Some(bit(v));
    }
    let tight = bits(set).filter(|&v| f[v] >= g.deg_in(v, set) as i64).fold(0, |m, v| m | bit(v));
    big_blocks(g, tight).into_iter().find(|&b| !is_clique(g, b) && !is_odd_cycle(g, b))
}

enum Step {
    /// Vertex with a single color, with the neighbors alive at that moment.
    Pinned(usize, Mask),
    Dropped,
}

/// Lists per local vertex, colors as small integers.
pub(crate) type Lists = Vec<Vec<u32>>;

/// `Some(bad lists)` when `g` is not colorable from some assignment with
/// sizes `f` (entries below one make that trivially so), `None` otherwise.
pub(crate) fn find_bad_assignment(g: &Small, f: &[i64]) -> Option<Lists> {
    let n = g.n();
    assert!(n <= 64, "at most 64 vertices");
    let mut f = f.to_vec();
    let mut alive: Mask = if n == 64 { !0 } else { bit(n) - 1 };
    let mut log = Vec::new();
    let bad_core: Option<(Mask, Lists)> = loop {
        if let Some(v) = bits(alive).find(|&v| f[v] <= 0) {
            break Some((bit(v), vec![Vec::new(); n]));
        }
        if let Some(v) = bits(alive).find(|&v| f[v] == 1) {
            let nb = g.adj[v] & alive;
            for u in bits(nb) {
                f[u] -= 1;
            }
            alive &= !bit(v);
            log.push(Step::Pinned(v, nb));
            continue;
        }
        if let Some(m) = removable(g, alive, &f) {
            alive &= !m;
            log.push(Step::Dropped);
            continue;
        }
        break components(g, alive).into_iter().find_map(|comp| search_component(g, comp, &f));
    };
    let (core, mut lists) = bad_core?;
    // every vertex outside the core gets its current size in fresh colors,
    // then pinned vertices are put back in reverse order
    let mut next = lists.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
    for v in 0..n {
        if core & bit(v) == 0 {
            let k = f[v].max(0) as u32;
            lists[v] = (next..next + k).collect();
            next += k;
        }
    }
    for step in log.iter().rev() {
        if let Step::Pinned(v, nb) = *step {
            lists[v] = vec![next];
            for u in bits(nb) {
                lists[u].push(next);
            }
            next += 1;
        }
    }
    Some(lists)
}

/// Searches connected closed subsets of `comp` for a tight bad assignment,
/// smallest subsets first.
fn search_component(g: &Small, comp: Mask, f: &[i64]) -> Option<(Mask, Lists)> {
    let mut subsets = connected_subsets(g, comp);
    subsets.sort_by_key(|&s| (s.count_ones(), s));
    for s in subsets {
        if bits(s).any(|v| f[v] < 2) || removable(g, s, f).is_some() {
            continue;
        }
        if let Some(l) = TightSearch::new(g, s, f).run() {
            return Some((s, l));
        }
    }
    None
}

/// All connected vertex subsets of `comp` with at least two vertices.
fn connected_subsets(g: &Small, comp: Mask) -> Vec<Mask> {
    // grow from each minimum vertex, extending only by larger vertices
    let mut out = Vec::new();
    for root in bits(comp) {
        let allowed = comp & !(bit(root) - 1);
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![bit(root)];
        while let Some(s) = stack.pop() {
            if !seen.insert(s) {
                continue;
            }
            if s.count_ones() >= 2 {
                out.push(s);
            }
            let frontier = bits(s).fold(0, |m, v| m | g.adj[v]) & allowed & !s;
            for u in bits(frontier) {
                stack.push(s | bit(u));
            }
        }
    }
    out
}

struct TightSearch<'a> {
    g: &'a Small,
    set: Mask,
    order: Vec<usize>,
    pos: Vec<usize>,
    f: &'a [i64],
    lists: Vec<u128>,
    /// Position after which every neighbor of the vertex has a list.
    closes_at: Vec<usize>,
}

impl<'a> TightSearch<'a> {
    fn new(g: &'a Small, set: Mask, f: &'a [i64]) -> Self {
        // breadth-first order from the vertex of largest degree
        let start = bits(set).max_by_key(|&v| (g.deg_in(v, set), std::cmp::Reverse(v))).unwrap();
        let mut order = vec![start];
        let mut seen = bit(start);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for u in bits(g.adj[v] & set & !seen) {
                seen |= bit(u);
                order.push(u);
            }
            i += 1;
        }
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let closes_at = (0..g.n())
            .map(|v| {
                if set & bit(v) == 0 {
                    return usize::MAX;
                }
                bits(g.adj[v] & set).map(|u| pos[u]).chain([pos[v]]).max().unwrap()
            })
            .collect();
        TightSearch { g, set, order, pos, f, lists: vec![0; g.n()], closes_at }
    }

    fn run(mut self) -> Option<Lists> {
        if self.assign(0, 0) {
            Some(self.lists.iter().map(|&m| (0..128u32).filter(|&c| m >> c & 1 == 1).collect()).collect())
        } else {
            None
        }
    }

    /// Colors of `v` all occur on some neighbor.
    fn tight_at(&self, v: usize) -> bool {
        let around = bits(self.g.adj[v] & self.set).fold(0u128, |m, u| m | self.lists[u]);
        self.lists[v] & !around == 0
    }

    fn assign(&mut self, i: usize, used: usize) -> bool {
        if i == self.order.len() {
            return !colorable(self.g, self.set, &self.lists);
        }
        let v = self.order[i];
        let k = self.f[v] as usize;
        let has_later_nbr = bits(self.g.adj[v] & self.set).any(|u| self.pos[u] > i);
        let max_new = if has_later_nbr { k } else { 0 };
        for new in 0..=max_new {
            let old = k - new;
            if old > used || used + new > MAX_COLORS {
                continue;
            }
            let fresh: u128 = ((1u128 << new) - 1) << used;
            let mut found = false;
            for_each_subset(used, old, &mut |sub| {
                self.lists[v] = sub | fresh;
                let closed_ok = std::iter::once(v)
                    .chain(bits(self.g.adj[v] & self.set))
                    .filter(|&w| self.closes_at[w] == i)
                    .all(|w| self.tight_at(w));
                if closed_ok && self.assign(i + 1, used + new) {
                    found = true;
                    return true;
                }
                false
            });
            if found {
                return true;
            }
        }
        self.lists[v] = 0;
        false
    }
}

/// Calls `visit` on every `k`-subset of `0..n` as a bitmask until it
/// returns true.
fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(u128) -> bool) -> bool {
    fn rec(start: usize, n: usize, k: usize, acc: u128, visit: &mut dyn FnMut(u128) -> bool) -> bool {
        if k == 0 {
            return visit(acc);
        }
        for i in start..=n - k {
            if rec(i + 1, n, k - 1, acc | 1u128 << i, visit) {
                return true;
            }
        }
        false
    }
    if k > n {
        return false;
    }
    rec(0, n, k, 0, visit)
}

/// Plain colorability of `g[set]` from bitmask lists.
pub(crate) fn colorable(g: &Small, set: Mask, lists: &[u128]) -> bool {
    fn rec(g: &Small, uncolored: Mask, avail: &mut [u128]) -> bool {
        if uncolored == 0 {
            return true;
        }
        let v = bits(uncolored).min_by_key(|&v| avail[v].count_ones()).unwrap();
        let mut options = avail[v];
        while options != 0 {
            let c = options.trailing_zeros();
            options &= options - 1;
            let nb = g.adj[v] & uncolored;
            let saved: Vec<(usize, u128)> = bits(nb).map(|u| (u, avail[u])).collect();
            let mut dead = false;
            for u in bits(nb) {
                avail[u] &= !(1u128 << c);
                dead |= avail[u] == 0;
            }
            if !dead && rec(g, uncolored & !bit(v), avail) {
                return true;
            }
            for (u, a) in saved {
                avail[u] = a;
            }
        }
        false
    }
    let mut avail = lists.to_vec();
    if bits(set).any(|v| avail[v] == 0) {
        return false;
    }
    rec(g, set, &mut avail)
}
