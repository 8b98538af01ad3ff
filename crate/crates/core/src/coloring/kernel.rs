use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{solve, ListAssignment};
use crate::error::{Error, Result};
use crate::planar::{PlanarGraph, Vertex};

/// Vertex sets of the 2-connected blocks of `g` (bridges give 2-sets,
/// isolated vertices singletons), sorted.
pub fn blocks(g: &PlanarGraph) -> Vec<Vec<Vertex>> {
    let mask: Vec<bool> = (0..g.capacity()).map(|v| g.contains(v)).collect();
    blocks_within(g, &mask)
}

/// Blocks of the subgraph induced by the flagged vertices.
pub(crate) fn blocks_within(g: &PlanarGraph, alive: &[bool]) -> Vec<Vec<Vertex>> {
    struct St<'a> {
        g: &'a PlanarGraph,
        alive: &'a [bool],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Vertex, Vertex)>,
        out: Vec<Vec<Vertex>>,
    }
    fn dfs(s: &mut St, v: Vertex, parent: Option<Vertex>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for &u in s.g.neighbors(v) {
            if !s.alive[u] || Some(u) == parent {
                continue;
            }
            if s.disc[u] == 0 {
                s.stack.push((v, u));
                dfs(s, u, Some(v));
                s.low[v] = s.low[v].min(s.low[u]);
                if s.low[u] >= s.disc[v] {
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = s.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (v, u) {
                            break;
                        }
                    }
                    s.out.push(block.into_iter().collect());
                }
            } else if s.disc[u] < s.disc[v] {
                s.stack.push((v, u));
                s.low[v] = s.low[v].min(s.disc[u]);
            }
        }
    }
    let n = g.capacity();
    let mut s = St { g, alive, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if alive[v] && s.disc[v] == 0 {
            if !g.neighbors(v).iter().any(|&u| alive[u]) {
                s.disc[v] = usize::MAX;
                s.out.push(vec![v]);
                continue;
            }
            dfs(&mut s, v, None);
        }
    }
    let mut out = s.out;
    out.sort();
    out
}

pub fn is_complete(g: &PlanarGraph, set: &[Vertex]) -> bool {
    set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// `set` induces a cycle of odd length.
pub fn is_odd_cycle(g: &PlanarGraph, set: &[Vertex]) -> bool {
    set.len() >= 3
        && set.len() % 2 == 1
        && set.iter().all(|&v| g.neighbors(v).iter().filter(|u| set.contains(u)).count() == 2)
        && g.induced_subgraph(set.iter().copied()).is_connected()
}

/// The degree-list condition: every list is at least as large as the degree,
/// and either some list is larger or some block is neither complete nor an
/// odd cycle. When it holds the graph is `L`-colorable.
pub fn gallai_condition(g: &PlanarGraph, l: &ListAssignment) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.vertices().any(|v| l.size(v) < g.degree(v)) {
        return Ok(false);
    }
    if g.vertices().any(|v| l.size(v) > g.degree(v)) {
        return Ok(true);
    }
    Ok(blocks(g).iter().any(|b| b.len() >= 3 && !is_complete(g, b) && !is_odd_cycle(g, b)))
}

/// Guarantee for extending colorings of `g - v` to `v`: with `n_i` neighbors
/// of `v` in the `i`-th component of `g - v`, each component is charged
/// `n_i - 1` when its lists are degree-sized and it forms, together with
/// `v`, a block that is neither complete nor an odd cycle, and `n_i`
/// otherwise. Returns whether `|L(v)|` beats the total charge.
pub fn cor_rem_colorable(g: &PlanarGraph, v: Vertex, l: &ListAssignment) -> Result<bool> {
    if !g.contains(v) {
        return Err(Error::InvalidVertex(v));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(u) = g.vertices().find(|&u| l.size(u) == 0) {
        return Err(Error::precondition(format!("vertex {u} has an empty list")));
    }
    let rest = g.without([v]);
    if solve(&rest, l).is_none() {
        return Err(Error::precondition(format!("graph minus {v} has no coloring from the lists")));
    }
    let mut total = 0;
    for comp in rest.components() {
        let n_i = comp.iter().filter(|&&u| g.has_edge(u, v)).count();
        let sized = comp.iter().all(|&u| l.size(u) >= g.degree(u));
        let gi = g.induced_subgraph(comp.iter().copied().chain([v]));
        let flexible = blocks(&gi).iter().any(|b| b.len() >= 3 && !is_complete(&gi, b) && !is_odd_cycle(&gi, b));
        total += if sized && flexible { n_i - 1 } else { n_i };
    }
    Ok(l.size(v) > total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelStep {
    /// List larger than the current degree.
    Slack(Vertex),
    /// 2-connected set with lists at least the degree, neither complete nor
    /// an odd cycle.
    Block(Vec<Vertex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReduction {
    pub kernel: BTreeSet<Vertex>,
    pub removed: Vec<KernelStep>,
}

impl KernelReduction {
    pub fn kernel_graph(&self, g: &PlanarGraph) -> PlanarGraph {
        g.induced_subgraph(self.kernel.iter().copied())
    }
}

fn alive_degree(g: &PlanarGraph, alive: &[bool], v: Vertex) -> usize {
    g.neighbors(v).iter().filter(|&&u| alive[u]).count()
}

fn candidates(g: &PlanarGraph, sizes: &[usize], alive: &[bool]) -> Vec<KernelStep> {
    let n = g.capacity();
    let size = |v: Vertex| sizes.get(v).copied().unwrap_or(0);
    let mut out: Vec<KernelStep> =
        (0..n).filter(|&v| alive[v] && size(v) > alive_degree(g, alive, v)).map(KernelStep::Slack).collect();
    let tight: Vec<bool> = (0..n).map(|v| alive[v] && size(v) >= alive_degree(g, alive, v)).collect();
    for b in blocks_within(g, &tight) {
        if b.len() >= 3 && !is_complete(g, &b) && !is_odd_cycle(g, &b) {
            out.push(KernelStep::Block(b));
        }
    }
    out
}

fn reduce_with<F>(g: &PlanarGraph, sizes: &[usize], mut pick: F) -> KernelReduction
where
    F: FnMut(Vec<KernelStep>) -> KernelStep,
{
    let mut alive: Vec<bool> = (0..g.capacity()).map(|v| g.contains(v)).collect();
    let mut removed = Vec::new();
    loop {
        let cands = candidates(g, sizes, &alive);
        if cands.is_empty() {
            break;
        }
        let step = pick(cands);
        match &step {
            KernelStep::Slack(v) => alive[*v] = false,
            KernelStep::Block(b) => b.iter().for_each(|&v| alive[v] = false),
        }
        removed.push(step);
    }
    KernelReduction { kernel: (0..g.capacity()).filter(|&v| alive[v]).collect(), removed }
}

/// Applies the two removal rules until neither applies, using list sizes
/// `sizes[v]`. Slack removals go first (smallest id), then blocks.
pub fn reduce_kernel_sizes(g: &PlanarGraph, sizes: &[usize]) -> KernelReduction {
    reduce_with(g, sizes, |mut c| c.swap_remove(0))
}

pub fn reduce_kernel(g: &PlanarGraph, l: &ListAssignment) -> KernelReduction {
    reduce_kernel_sizes(g, &l.sizes())
}

/// Same reduction with the applicable step chosen at random each round.
pub fn reduce_kernel_shuffled<R: Rng>(g: &PlanarGraph, l: &ListAssignment, rng: &mut R) -> KernelReduction {
    let sizes = l.sizes();
    reduce_with(g, &sizes, |c| c.choose(rng).unwrap().clone())
}
