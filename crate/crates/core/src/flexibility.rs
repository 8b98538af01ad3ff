//! Random list colorings built by peeling reducible configurations, and the
//! request, estimation and counting checks layered on top.
//!
//! A [`Peeling`] removes one reducible configuration `Y` at a time until
//! the graph is empty. Sampling colors the peeled blocks in reverse: each
//! block picks uniformly among the colorings of `G[Y]` from the lists minus
//! the colors already used on its neighbors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coloring::{count_colorings, for_each_coloring, Color, Coloring, ListAssignment};
use crate::configurations::{find_reducible, ConfigKind};
use crate::error::{Error, Result};
use crate::planar::{PlanarGraph, Vertex};

/// Smallest list size the sampler accepts.
pub const MIN_LIST: usize = 4;

/// Default cap on the number of colorings a single block may have.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

pub use crate::io::Request;

/// `(vertex, color) -> weight`.
pub type WeightedRequest<W> = BTreeMap<(Vertex, Color), W>;

/// `k^(-b(k-1))`.
pub fn theoretical_epsilon(k: u32, b: u32) -> Result<BigRational> {
    if k < 3 || b < 1 {
        return Err(Error::precondition(format!("epsilon needs k >= 3 and b >= 1, got k={k} b={b}")));
    }
    let denom = num_traits::pow(BigInt::from(k), (b * (k - 1)) as usize);
    Ok(BigRational::new(BigInt::one(), denom))
}

/// One peeled block.
#[derive(Clone, Debug)]
pub struct Block {
    pub kind: ConfigKind,
    pub vertices: Vec<Vertex>,
    sub: PlanarGraph,
}

/// The sequence of reducible configurations removed from a graph, in
/// removal order.
#[derive(Clone, Debug)]
pub struct Peeling {
    graph: PlanarGraph,
    blocks: Vec<Block>,
    budget: u128,
}

impl Peeling {
    pub fn new(g: &PlanarGraph) -> Result<Self> {
        if let Some(t) = g.find_triangle() {
            return Err(Error::NotTriangleFree(t));
        }
        let mut rest = g.clone();
        let mut blocks = Vec::new();
        while rest.vertex_count() > 0 {
            let cfg = find_reducible(&rest)?;
            blocks.push(Block {
                kind: cfg.kind,
                sub: g.induced_subgraph(cfg.vertices.iter().copied()),
                vertices: cfg.vertices.clone(),
            });
            rest = rest.without(cfg.vertices);
        }
        Ok(Peeling { graph: g.clone(), blocks, budget: DEFAULT_BUDGET })
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn graph(&self) -> &PlanarGraph {
        &self.graph
    }

    fn check_lists(&self, l: &ListAssignment) -> Result<()> {
        match self.graph.vertices().find(|&v| l.size(v) < MIN_LIST) {
            Some(v) => Err(Error::precondition(format!("vertex {v} has {} colors, need {MIN_LIST}", l.size(v)))),
            None => Ok(()),
        }
    }

    /// Deterministic in `(graph, l, seed)`. Block `i` draws from stream `i`
    /// of a ChaCha8 generator seeded with `seed`.
    pub fn sample(&self, l: &ListAssignment, seed: u64) -> Result<Coloring> {
        self.check_lists(l)?;
        self.sample_unchecked(l, seed)
    }

    fn sample_unchecked(&self, l: &ListAssignment, seed: u64) -> Result<Coloring> {
        let g = &self.graph;
        let mut coloring = Coloring::new(g.capacity());
        for (level, block) in self.blocks.iter().enumerate().rev() {
            let mut rest = ListAssignment::empty(g.capacity());
            for &y in &block.vertices {
                let used: Vec<Color> = g.neighbors(y).iter().filter_map(|&u| coloring.get(u)).collect();
                rest.set(y, l.get(y).iter().copied().filter(|c| !used.contains(c)));
            }
            let total = count_colorings(&block.sub, &rest)?;
            if total == 0 {
                return Err(Error::InternalNoColoring(block.vertices.clone()));
            }
            if total > self.budget {
                return Err(Error::BudgetExceeded(usize::try_from(total).unwrap_or(usize::MAX)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(level as u64);
            let mut skip = rng.gen_range(0..total);
            let _ = for_each_coloring(&block.sub, &rest, |c| {
                if skip > 0 {
                    skip -= 1;
                    return ControlFlow::Continue(());
                }
                for &y in &block.vertices {
                    coloring.set(y, c.get(y).expect("block coloring is total"));
                }
                ControlFlow::Break(())
            });
        }
        debug_assert!(coloring.is_valid(g, l));
        Ok(coloring)
    }

    fn samples(
        &self,
        l: &ListAssignment,
        trials: u64,
        seed: u64,
    ) -> impl ParallelIterator<Item = (u64, Result<Coloring>)> + '_ {
        let l = l.clone();
        (0..trials).into_par_iter().map(move |i| {
            let s = seed.wrapping_add(i);
            (s, self.sample_unchecked(&l, s))
        })
    }
}

/// One sample from a fresh [`Peeling`] of `g`.
pub fn sample_coloring(g: &PlanarGraph, l: &ListAssignment, seed: u64) -> Result<Coloring> {
    Peeling::new(g)?.sample(l, seed)
}

/// Hit counts of `(vertex, color)` pairs over a run of samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SampleStats {
    pub trials: u64,
    /// Every pair `(v, c)` with `c` in `L(v)`, including those never hit.
    pub counts: BTreeMap<(Vertex, Color), u64>,
}

impl SampleStats {
    fn zero(g: &PlanarGraph, l: &ListAssignment) -> Self {
        let counts = g.vertices().flat_map(|v| l.get(v).iter().map(move |&c| ((v, c), 0))).collect();
        SampleStats { trials: 0, counts }
    }

    fn record(mut self, c: &Coloring) -> Self {
        self.trials += 1;
        for (key, n) in self.counts.iter_mut() {
            if c.get(key.0) == Some(key.1) {
                *n += 1;
            }
        }
        self
    }

    /// Pairwise sum; both sides must cover the same pairs.
    pub fn merge(mut self, other: SampleStats) -> Self {
        self.trials += other.trials;
        for (key, n) in other.counts {
            *self.counts.entry(key).or_insert(0) += n;
        }
        self
    }

    /// `None` before any trial or when there are no pairs.
    pub fn min_empirical_prob(&self) -> Option<Ratio<u64>> {
        if self.trials == 0 {
            return None;
        }
        let least = *self.counts.values().min()?;
        Some(Ratio::new(least, self.trials))
    }

    pub fn argmin(&self) -> Option<(Vertex, Color)> {
        self.counts.iter().min_by_key(|&(k, n)| (*n, *k)).map(|(k, _)| *k)
    }

    pub fn row_sums(&self) -> BTreeMap<Vertex, u64> {
        let mut rows = BTreeMap::new();
        for (&(v, _), &n) in &self.counts {
            *rows.entry(v).or_insert(0) += n;
        }
        rows
    }
}

impl fmt::Display for SampleStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials {}", self.trials)?;
        for (&(v, c), n) in &self.counts {
            writeln!(f, "pair {v} {c} {n}")?;
        }
        match (self.min_empirical_prob(), self.argmin()) {
            (Some(p), Some((v, c))) => writeln!(f, "min {}/{} at {v} {c}", p.numer(), p.denom()),
            _ => writeln!(f, "min none"),
        }
    }
}

/// Samples on seeds `seed .. seed + trials` and counts hits. Every sample is
/// checked to be a proper coloring from `l`.
pub fn estimate_probabilities(g: &PlanarGraph, l: &ListAssignment, trials: u64, seed: u64) -> Result<SampleStats> {
    let peel = Peeling::new(g)?;
    peel.check_lists(l)?;
    let zero = SampleStats::zero(g, l);
    peel.samples(l, trials, seed)
        .try_fold(
            || zero.clone(),
            |acc, (_, c)| {
                let c = c?;
                if !c.is_valid(g, l) {
                    return Err(Error::InternalNoColoring(invalid_at(g, l, &c)));
                }
                Ok(acc.record(&c))
            },
        )
        .try_reduce(|| zero.clone(), |a, b| Ok(a.merge(b)))
}

fn invalid_at(g: &PlanarGraph, l: &ListAssignment, c: &Coloring) -> Vec<Vertex> {
    g.vertices()
        .filter(|&v| match c.get(v) {
            Some(col) => l.get(v).binary_search(&col).is_err() || g.neighbors(v).iter().any(|&u| c.get(u) == Some(col)),
            None => true,
        })
        .collect()
}

/// Empirical probability that no pair in `pairs` is realized.
pub fn estimate_avoidance(
    g: &PlanarGraph,
    l: &ListAssignment,
    pairs: &[(Vertex, Color)],
    trials: u64,
    seed: u64,
) -> Result<Ratio<u64>> {
    let peel = Peeling::new(g)?;
    peel.check_lists(l)?;
    let avoided = peel
        .samples(l, trials, seed)
        .map(|(_, c)| c.map(|c| u64::from(pairs.iter().all(|&(v, col)| c.get(v) != Some(col)))))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(Ratio::new(avoided, trials.max(1)))
}

/// Best sample found for a request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequestOutcome<S> {
    pub best: Coloring,
    pub seed: u64,
    pub score: S,
    /// Score over the best possible score; `1` for an empty request.
    pub fraction: S,
}

fn best_of<S, F>(peel: &Peeling, l: &ListAssignment, trials: u64, seed: u64, score: F) -> Result<(u64, Coloring, S)>
where
    S: PartialOrd + Send,
    F: Fn(&Coloring) -> S + Sync,
{
    if trials == 0 {
        return Err(Error::precondition("at least one trial is needed"));
    }
    let best = peel
        .samples(l, trials, seed)
        .map(|(s, c)| c.map(|c| (s, score(&c), c)))
        .try_reduce_with(|a, b| {
            // ties keep the earlier seed
            let b_wins = b.1 > a.1 || (b.1 == a.1 && b.0 < a.0);
            Ok(if b_wins { b } else { a })
        })
        .expect("trials > 0")?;
    Ok((best.0, best.2, best.1))
}

fn check_pair(g: &PlanarGraph, l: &ListAssignment, v: Vertex, c: Color) -> Result<()> {
    if !g.contains(v) {
        return Err(Error::InvalidVertex(v));
    }
    if l.get(v).binary_search(&c).is_err() {
        return Err(Error::precondition(format!("color {c} is not in the list of vertex {v}")));
    }
    Ok(())
}

/// Keeps the sample honoring the most requested colors.
pub fn satisfy_request(
    g: &PlanarGraph,
    l: &ListAssignment,
    r: &Request,
    trials: u64,
    seed: u64,
) -> Result<RequestOutcome<Ratio<u64>>> {
    for (&v, &c) in r {
        check_pair(g, l, v, c)?;
    }
    let peel = Peeling::new(g)?;
    peel.check_lists(l)?;
    let hits = |c: &Coloring| r.iter().filter(|&(&v, &col)| c.get(v) == Some(col)).count() as u64;
    let (s, best, n) = best_of(&peel, l, trials, seed, hits)?;
    let fraction = if r.is_empty() { Ratio::one() } else { Ratio::new(n, r.len() as u64) };
    Ok(RequestOutcome { best, seed: s, score: Ratio::from_integer(n), fraction })
}

/// Keeps the sample collecting the most weight. `fraction` is the collected
/// weight over `w(G, L)`.
pub fn satisfy_weighted<W>(
    g: &PlanarGraph,
    l: &ListAssignment,
    w: &WeightedRequest<W>,
    trials: u64,
    seed: u64,
) -> Result<RequestOutcome<W>>
where
    W: Clone + num_traits::Num + PartialOrd + Send + Sync,
{
    for ((v, c), x) in w {
        check_pair(g, l, *v, *c)?;
        if *x < W::zero() {
            return Err(Error::precondition(format!("negative weight on {v} {c}")));
        }
    }
    let peel = Peeling::new(g)?;
    peel.check_lists(l)?;
    let total = w.values().fold(W::zero(), |a, x| a + x.clone());
    let value = |c: &Coloring| c.iter().filter_map(|(v, col)| w.get(&(v, col))).fold(W::zero(), |a, x| a + x.clone());
    let (s, best, score) = best_of(&peel, l, trials, seed, value)?;
    let fraction = if total.is_zero() { W::one() } else { score.clone() / total };
    Ok(RequestOutcome { best, seed: s, score, fraction })
}

/// Result of comparing the number of colorings with `2^(n/b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountCheck {
    pub count: u128,
    pub n: usize,
    pub b: u32,
    /// `count^b >= 2^n`, decided in integers.
    pub holds: bool,
}

impl CountCheck {
    pub fn bound(&self) -> f64 {
        2f64.powf(self.n as f64 / f64::from(self.b))
    }
}

impl fmt::Display for CountCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "count {}", self.count)?;
        writeln!(f, "bound 2^({}/{})", self.n, self.b)?;
        writeln!(f, "holds {}", self.holds)
    }
}

pub fn check_counting_bound(g: &PlanarGraph, l: &ListAssignment, b: u32) -> Result<CountCheck> {
    if b == 0 {
        return Err(Error::precondition("b must be positive"));
    }
    let count = count_colorings(g, l)?;
    let n = g.vertex_count();
    let lhs = num_traits::pow(BigUint::from(count), b as usize);
    let rhs = BigUint::one() << n;
    Ok(CountCheck { count, n, b, holds: lhs >= rhs })
}

#[cfg(test)]
mod tests;
