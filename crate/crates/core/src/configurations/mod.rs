//! Reducible configurations of triangle-free plane graphs and the search
//! that always finds one with at most 31 vertices.

mod stalks;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::planar::{canonical_cycle, find_minimal_nonface_cycle, subgraph_in_disk, write_graph, PlanarGraph, Vertex};
use crate::reducibility::{is_reducible, ReducibilityVerdict};

pub use stalks::{find_stalks, good_neighbors, is_excellent, ExtendedStalk, Extension, Stalk, StalkKind};

/// Largest configuration the search ever returns.
pub const MAX_CONFIG_SIZE: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConfigKind {
    SmallDeg2,
    Small33,
    MainRedu,
    FiveRedu,
    Spec4,
}

impl ConfigKind {
    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::SmallDeg2 => "small-deg2",
            ConfigKind::Small33 => "small-33",
            ConfigKind::MainRedu => "mainredu",
            ConfigKind::FiveRedu => "fiveredu",
            ConfigKind::Spec4 => "spec4",
        }
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An induced subgraph claimed (1,4)-reducible, with what witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    /// Sorted vertex set of the induced subgraph.
    pub vertices: Vec<Vertex>,
    pub center: Option<Vertex>,
    pub stalks: Vec<Stalk>,
    pub extended: Option<ExtendedStalk>,
    /// 4-faces used by the five-vertex and two-square shapes.
    pub faces: Vec<Vec<Vertex>>,
    /// The degree-3 neighbors added to the two-square shape.
    pub extra: Vec<Vertex>,
    /// Cycle bounding the disk the search ran in.
    pub disk_cycle: Option<Vec<Vertex>>,
    pub size_bound: usize,
}

impl Configuration {
    fn new(kind: ConfigKind, vertices: BTreeSet<Vertex>, size_bound: usize) -> Self {
        Configuration {
            kind,
            vertices: vertices.into_iter().collect(),
            center: None,
            stalks: Vec::new(),
            extended: None,
            faces: Vec::new(),
            extra: Vec::new(),
            disk_cycle: None,
            size_bound,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Runs the reducibility oracle in `g`; `None` when over `cap`.
    pub fn verify(&self, g: &PlanarGraph, cap: usize) -> Result<Option<ReducibilityVerdict>> {
        if self.len() > cap {
            return Ok(None);
        }
        is_reducible(g, &self.vertices, 1, 4, cap).map(Some)
    }

    /// Multi-line description: the header line, then witnesses.
    pub fn describe(&self) -> String {
        let mut out = format!("{self}\n");
        if let Some(c) = &self.disk_cycle {
            out += &format!("disk-cycle:{}\n", join(c));
        }
        if let Some(v) = self.center {
            out += &format!("center {v}\n");
        }
        for s in &self.stalks {
            out += &format!("{s}\n");
        }
        if let Some(e) = &self.extended {
            out += &format!("extended {e}\n");
        }
        for f in &self.faces {
            out += &format!("face:{}\n", join(f));
        }
        if !self.extra.is_empty() {
            out += &format!("extra:{}\n", join(&self.extra));
        }
        out
    }
}

fn join(xs: &[Vertex]) -> String {
    xs.iter().map(|x| format!(" {x}")).collect()
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config {} vertices:{}", self.kind, join(&self.vertices))
    }
}

/// A vertex of degree at most two, else the first adjacent pair of
/// degree-3 vertices.
pub fn find_small(g: &PlanarGraph) -> Option<Configuration> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 2) {
        return Some(Configuration::new(ConfigKind::SmallDeg2, BTreeSet::from([v]), 1));
    }
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        if let Some(u) = g.neighbors(v).iter().copied().filter(|&u| u > v && g.degree(u) == 3).min() {
            return Some(Configuration::new(ConfigKind::Small33, BTreeSet::from([v, u]), 2));
        }
    }
    None
}

fn check_disk(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<()> {
    if !g.short_cycles_are_facial() {
        return Err(Error::precondition("a cycle of length at most five does not bound a face"));
    }
    if let Some(o) = g.outer_face() {
        let outer = g.face(o).vertex_set();
        if !outer.is_subset(c) && !c.is_empty() {
            return Err(Error::precondition("the outer face is not bounded by the given cycle"));
        }
    }
    Ok(())
}

/// Smaller by size, then by vertex sequence.
fn smaller(a: &BTreeSet<Vertex>, b: &BTreeSet<Vertex>) -> bool {
    (a.len(), a) < (b.len(), b)
}

/// Candidate stalks per root: a few of the smallest without a bud, plus
/// the first one for each bud.
fn candidates(g: &PlanarGraph, c: &BTreeSet<Vertex>, v: Vertex) -> BTreeMap<Vertex, Vec<Stalk>> {
    const PER_ROOT: usize = 4;
    let mut by_root: BTreeMap<Vertex, Vec<Stalk>> = BTreeMap::new();
    let mut all = find_stalks(g, c, v);
    all.sort_by_key(|s| (s.vertices().len(), s.kind));
    for s in all {
        let list = by_root.entry(s.root()).or_default();
        let dup = list.iter().any(|t| t.bud() == s.bud() && (s.bud().is_some() || t.vertices() == s.vertices()));
        let plain = list.iter().filter(|t| t.bud().is_none()).count();
        if !dup && (s.bud().is_some() || plain < PER_ROOT) {
            list.push(s);
        }
    }
    by_root
}

struct Pick<'a> {
    options: Vec<&'a [Stalk]>,
    chosen: Vec<&'a Stalk>,
    best: Option<(BTreeSet<Vertex>, Vec<Stalk>)>,
}

impl<'a> Pick<'a> {
    fn run(&mut self, i: usize, union: &BTreeSet<Vertex>, buds: &mut Vec<Vertex>) {
        if self.best.as_ref().is_some_and(|(b, _)| union.len() > b.len()) {
            return;
        }
        if i == self.options.len() {
            if self.best.as_ref().is_none_or(|(b, _)| smaller(union, b)) {
                self.best = Some((union.clone(), self.chosen.iter().map(|s| (*s).clone()).collect()));
            }
            return;
        }
        let opts = self.options[i];
        for s in opts {
            if let Some(w) = s.bud() {
                if buds.contains(&w) {
                    continue;
                }
            }
            let mut next = union.clone();
            next.extend(s.vertices());
            if let Some(w) = s.bud() {
                buds.push(w);
            }
            self.chosen.push(s);
            self.run(i + 1, &next, buds);
            self.chosen.pop();
            if s.bud().is_some() {
                buds.pop();
            }
        }
    }
}

/// Best choice of `d - 1` good neighbors of `v` with distinct buds.
fn mainredu_at(g: &PlanarGraph, c: &BTreeSet<Vertex>, v: Vertex) -> Option<(BTreeSet<Vertex>, Vec<Stalk>)> {
    let d = g.degree(v);
    if d < 3 || c.contains(&v) {
        return None;
    }
    let cand = candidates(g, c, v);
    let roots: Vec<Vertex> = cand.keys().copied().collect();
    if roots.len() < d - 1 {
        return None;
    }
    let mut best: Option<(BTreeSet<Vertex>, Vec<Stalk>)> = None;
    // roots.len() is d - 1 or d; leave out at most one
    let skips: Vec<Option<Vertex>> =
        if roots.len() == d - 1 { vec![None] } else { roots.iter().map(|&r| Some(r)).collect() };
    for skip in skips {
        let options: Vec<&[Stalk]> = roots.iter().filter(|&&r| Some(r) != skip).map(|r| cand[r].as_slice()).collect();
        let mut pick = Pick { options, chosen: Vec::new(), best: best.clone() };
        pick.run(0, &BTreeSet::from([v]), &mut Vec::new());
        best = pick.best;
    }
    best
}

/// A vertex off `c` of degree `d >= 3` with `d - 1` good neighbors using
/// pairwise distinct buds. Over all such vertices the smallest union of
/// stalks wins, ties to the smaller center.
pub fn find_mainredu(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<Option<Configuration>> {
    check_disk(g, c)?;
    Ok(mainredu_unchecked(g, c))
}

fn mainredu_unchecked(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Option<Configuration> {
    let mut best: Option<Configuration> = None;
    for v in g.vertices() {
        if let Some(cfg) = find_mainredu_at(g, c, v) {
            if cfg.len() <= MAX_CONFIG_SIZE && best.as_ref().is_none_or(|b| cfg.len() < b.len()) {
                best = Some(cfg);
            }
        }
    }
    best
}

/// The smallest stalk configuration centered at `v`, of any size.
pub fn find_mainredu_at(g: &PlanarGraph, c: &BTreeSet<Vertex>, v: Vertex) -> Option<Configuration> {
    let (h, stalks) = mainredu_at(g, c, v)?;
    let mut cfg = Configuration::new(ConfigKind::MainRedu, h, 6 * g.degree(v) - 5);
    cfg.center = Some(v);
    cfg.stalks = stalks;
    Some(cfg)
}

/// Smallest configuration of a list, ties to the smaller vertex sequence.
fn least(all: Vec<Configuration>) -> Option<Configuration> {
    all.into_iter().min_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)))
}

/// Boundary cycle of a 4-face read from `v`, if the face is a 4-cycle.
fn square_from(g: &PlanarGraph, f: usize, v: Vertex) -> Option<[Vertex; 4]> {
    let face = g.face(f);
    if face.len() != 4 || !face.is_cycle() {
        return None;
    }
    let i = face.walk.iter().position(|&x| x == v)?;
    let w = |k: usize| face.walk[(i + k) % 4];
    Some([w(0), w(1), w(2), w(3)])
}

/// A degree-5 vertex on a (5,3,4,3) 4-face plus an excellent neighbor
/// outside the face.
pub fn find_5redu(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<Option<Configuration>> {
    check_disk(g, c)?;
    Ok(fiveredu_unchecked(g, c))
}

fn fiveredu_unchecked(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Option<Configuration> {
    least(all_fiveredu(g, c))
}

/// Every five-vertex-face configuration, one per center, face and
/// excellent neighbor.
pub fn all_fiveredu(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Vec<Configuration> {
    let off = |x: Vertex, d: usize| !c.contains(&x) && g.degree(x) == d;
    let mut all = Vec::new();
    for v in g.vertices().filter(|&v| off(v, 5)) {
        let faces: BTreeSet<usize> = g.faces_around(v).iter().copied().collect();
        for f in faces {
            let Some([_, v1, v2, v3]) = square_from(g, f, v) else { continue };
            if !(off(v1, 3) && off(v2, 4) && off(v3, 3)) {
                continue;
            }
            for &x in g.neighbors(v) {
                if x == v1 || x == v3 {
                    continue;
                }
                let Some(ext) = is_excellent(g, c, v, x) else { continue };
                let mut h = BTreeSet::from([v, v1, v2, v3]);
                h.extend(ext.vertices());
                let mut cfg = Configuration::new(ConfigKind::FiveRedu, h, 10);
                cfg.center = Some(v);
                cfg.faces = vec![vec![v, v1, v2, v3]];
                cfg.extended = Some(ext);
                all.push(cfg);
            }
        }
    }
    all
}

/// The vertex of 4-face `f` adjacent to `b` other than `a`, where `ab` is
/// an edge of the face.
fn across(g: &PlanarGraph, f: usize, a: Vertex, b: Vertex) -> Option<Vertex> {
    let sq = square_from(g, f, b)?;
    if sq[1] == a {
        Some(sq[3])
    } else if sq[3] == a {
        Some(sq[1])
    } else {
        None
    }
}

/// Two 4-faces `v1 v2 v3 v4` and `v1 v2 v3' v4'` on a common edge with
/// `v1 v2 v4 v3' v4'` of degree 4 and `v3` of degree 3, or of degree 4
/// with two degree-3 neighbors (added to the configuration).
pub fn find_spec4(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<Option<Configuration>> {
    check_disk(g, c)?;
    Ok(spec4_unchecked(g, c))
}

fn spec4_unchecked(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Option<Configuration> {
    least(all_spec4(g, c))
}

/// Every two-square configuration, one per labeled pair of faces.
pub fn all_spec4(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Vec<Configuration> {
    let off = |x: Vertex, d: usize| !c.contains(&x) && g.degree(x) == d;
    let mut all = Vec::new();
    for (a, b) in g.edges() {
        for (v1, v2) in [(a, b), (b, a)] {
            if !(off(v1, 4) && off(v2, 4)) {
                continue;
            }
            let fa = g.face_of_dart(v1, v2).expect("edge");
            let fb = g.face_of_dart(v2, v1).expect("edge");
            if fa == fb {
                continue;
            }
            for (f1, f2) in [(fa, fb), (fb, fa)] {
                let (Some(v3), Some(v4), Some(v3p), Some(v4p)) =
                    (across(g, f1, v1, v2), across(g, f1, v2, v1), across(g, f2, v1, v2), across(g, f2, v2, v1))
                else {
                    continue;
                };
                let six = BTreeSet::from([v1, v2, v3, v4, v3p, v4p]);
                if six.len() != 6 || !(off(v4, 4) && off(v3p, 4) && off(v4p, 4)) || c.contains(&v3) {
                    continue;
                }
                let extra: Vec<Vertex> = match g.degree(v3) {
                    3 => Vec::new(),
                    4 => {
                        let z: Vec<Vertex> =
                            g.neighbors(v3).iter().copied().filter(|&x| x != v2 && x != v4 && off(x, 3)).collect();
                        if z.len() != 2 {
                            continue;
                        }
                        z
                    }
                    _ => continue,
                };
                let mut h = six;
                h.extend(extra.iter().copied());
                let mut cfg = Configuration::new(ConfigKind::Spec4, h, 8);
                cfg.faces = vec![vec![v1, v2, v3, v4], vec![v1, v2, v3p, v4p]];
                let mut z = extra;
                z.sort_unstable();
                cfg.extra = z;
                all.push(cfg);
            }
        }
    }
    all
}

/// Runs the whole search on `g0`: small configurations per component,
/// else the disk of a minimal non-facial short cycle and the three
/// stalk-based finders. Not finding anything is reported as a
/// [`Error::TheoremViolation`] with a dump of the instance.
pub fn find_reducible(g0: &PlanarGraph) -> Result<Configuration> {
    if let Some(t) = g0.find_triangle() {
        return Err(Error::NotTriangleFree(t));
    }
    let comps = g0.components();
    let Some(first) = comps.first() else {
        return Err(Error::precondition("the graph has no vertices"));
    };
    let g = g0.induced_subgraph(first.iter().copied());
    if let Some(cfg) = find_small(&g) {
        return Ok(cfg);
    }
    let (inner, cycle) = match disk_instance(&g) {
        Ok(x) => x,
        Err(Error::PreconditionViolated(msg)) if msg.contains("no face") => return Err(violation(&g, None, &msg)),
        Err(e) => return Err(e),
    };
    let c: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let found = mainredu_unchecked(&inner, &c)
        .or_else(|| fiveredu_unchecked(&inner, &c))
        .or_else(|| spec4_unchecked(&inner, &c));
    match found {
        Some(mut cfg) => {
            cfg.disk_cycle = Some(canonical_cycle(&cycle));
            Ok(cfg)
        }
        None => Err(violation(&inner, Some(&cycle), "no reducible configuration in the disk")),
    }
}

/// The disk subgraph the search works in, with its bounding cycle: the
/// outer face (or the first short face) becomes `C0`, and the disk is that
/// of a minimal non-facial cycle of length at most five. Needs a connected
/// graph of minimum degree at least three.
pub fn disk_instance(g: &PlanarGraph) -> Result<(PlanarGraph, Vec<Vertex>)> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let outer = g.outer_face().filter(|&f| g.face(f).len() <= 5 && g.face(f).is_cycle());
    let c0 =
        outer.or_else(|| g.short_cycle_face()).ok_or_else(|| Error::precondition("no face of length at most five"))?;
    let g = g.clone().with_outer_face(Some(c0));
    let disk = match find_minimal_nonface_cycle(&g)? {
        Some(d) => d,
        None => g.disk_of(&g.face(c0).walk)?,
    };
    let inner = subgraph_in_disk(&g, &disk)?;
    Ok((inner, disk.cycle))
}

fn violation(g: &PlanarGraph, cycle: Option<&[Vertex]>, what: &str) -> Error {
    let mut dump = format!("{what}\n");
    if let Some(c) = cycle {
        dump += &format!("disk-cycle:{}\n", join(c));
        let cs: BTreeSet<Vertex> = c.iter().copied().collect();
        dump += "searches: mainredu none, fiveredu none, spec4 none\n";
        if let Ok(report) = crate::discharging::verify(g, &cs) {
            dump += &report.to_string();
        }
    }
    dump += &write_graph(g);
    Error::TheoremViolation(dump)
}
