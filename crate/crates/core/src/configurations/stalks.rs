use std::collections::BTreeSet;
use std::fmt;

use crate::planar::{PlanarGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StalkKind {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl fmt::Display for StalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StalkKind::A => "a",
            StalkKind::B => "b",
            StalkKind::C => "c",
            StalkKind::D => "d",
            StalkKind::E => "e",
            StalkKind::F => "f",
        };
        f.write_str(s)
    }
}

/// A `v`-stalk. Labels follow the six shapes:
///
/// * (a) `v v1`, `deg v1 = 3`;
/// * (b) `v v1 v2`, degrees 4, 3;
/// * (c) 4-cycle `v v1 v2 v3`, degrees 4, 4, 3, bud `v3`;
/// * (d) `v v1 v2 v3` plus `v2 v3'`, degrees 4, 4, 3, 3;
/// * (e) `v v1 v2 v3` plus `v1 v2' v3`, degrees 4, 4, 4 (`v2'`), 3;
/// * (f) `v v1 v2 v3 v4` plus `v1 v2' v3` and `v3 v4'`, degrees 4 on
///   `v1 v2 v2' v3`, 3 on `v4 v4'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stalk {
    pub kind: StalkKind,
    pub base: Vertex,
    pub v1: Vertex,
    pub v2: Option<Vertex>,
    pub v2p: Option<Vertex>,
    pub v3: Option<Vertex>,
    pub v3p: Option<Vertex>,
    pub v4: Option<Vertex>,
    pub v4p: Option<Vertex>,
}

impl Stalk {
    fn new(kind: StalkKind, base: Vertex, v1: Vertex) -> Self {
        Stalk { kind, base, v1, v2: None, v2p: None, v3: None, v3p: None, v4: None, v4p: None }
    }

    pub fn root(&self) -> Vertex {
        self.v1
    }

    pub fn bud(&self) -> Option<Vertex> {
        if self.kind == StalkKind::C {
            self.v3
        } else {
            None
        }
    }

    /// `(label, vertex)` pairs, base first.
    pub fn labeled(&self) -> Vec<(&'static str, Vertex)> {
        let mut out = vec![("v", self.base), ("v1", self.v1)];
        for (name, x) in
            [("v2", self.v2), ("v2'", self.v2p), ("v3", self.v3), ("v3'", self.v3p), ("v4", self.v4), ("v4'", self.v4p)]
        {
            if let Some(x) = x {
                out.push((name, x));
            }
        }
        out
    }

    /// All vertices including the base.
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.labeled().into_iter().map(|(_, x)| x).collect()
    }

    /// Edges of the defining shape.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let (v, v1) = (self.base, self.v1);
        let mut e = vec![(v, v1)];
        let u = |x: Option<Vertex>| x.expect("label present for this kind");
        match self.kind {
            StalkKind::A => {}
            StalkKind::B => e.push((v1, u(self.v2))),
            StalkKind::C => e.extend([(v1, u(self.v2)), (u(self.v2), u(self.v3)), (u(self.v3), v)]),
            StalkKind::D => e.extend([(v1, u(self.v2)), (u(self.v2), u(self.v3)), (u(self.v2), u(self.v3p))]),
            StalkKind::E => {
                e.extend([(v1, u(self.v2)), (u(self.v2), u(self.v3)), (v1, u(self.v2p)), (u(self.v2p), u(self.v3))])
            }
            StalkKind::F => e.extend([
                (v1, u(self.v2)),
                (u(self.v2), u(self.v3)),
                (v1, u(self.v2p)),
                (u(self.v2p), u(self.v3)),
                (u(self.v3), u(self.v4)),
                (u(self.v3), u(self.v4p)),
            ]),
        }
        e
    }

    /// Required degree of each labeled vertex other than the base.
    pub fn required_degrees(&self) -> Vec<(Vertex, usize)> {
        let mut out = Vec::new();
        let four = |out: &mut Vec<(Vertex, usize)>, x: Option<Vertex>| out.extend(x.map(|x| (x, 4)));
        let three = |out: &mut Vec<(Vertex, usize)>, x: Option<Vertex>| out.extend(x.map(|x| (x, 3)));
        match self.kind {
            StalkKind::A => out.push((self.v1, 3)),
            StalkKind::B => {
                out.push((self.v1, 4));
                three(&mut out, self.v2);
            }
            StalkKind::C | StalkKind::D => {
                out.push((self.v1, 4));
                four(&mut out, self.v2);
                three(&mut out, self.v3);
                three(&mut out, self.v3p);
            }
            StalkKind::E => {
                out.push((self.v1, 4));
                four(&mut out, self.v2);
                four(&mut out, self.v2p);
                three(&mut out, self.v3);
            }
            StalkKind::F => {
                out.push((self.v1, 4));
                four(&mut out, self.v2);
                four(&mut out, self.v2p);
                four(&mut out, self.v3);
                three(&mut out, self.v4);
                three(&mut out, self.v4p);
            }
        }
        out
    }

    /// Re-checks shape, degrees, distinctness and disjointness from `c`
    /// (the base may lie on `c`).
    pub fn is_valid(&self, g: &PlanarGraph, c: &BTreeSet<Vertex>) -> bool {
        let labeled = self.labeled();
        let distinct = self.vertices().len() == labeled.len();
        distinct
            && labeled.iter().all(|&(_, x)| g.contains(x))
            && labeled[1..].iter().all(|(_, x)| !c.contains(x))
            && self.edges().iter().all(|&(a, b)| g.has_edge(a, b))
            && self.required_degrees().iter().all(|&(x, d)| g.degree(x) == d)
    }

    /// Ordering used to pick a canonical witness: kind, size, labels.
    fn key(&self) -> (StalkKind, usize, Vec<Vertex>) {
        (self.kind, self.vertices().len(), self.labeled().iter().map(|&(_, x)| x).collect())
    }
}

impl fmt::Display for Stalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stalk {}", self.kind)?;
        for (name, x) in self.labeled() {
            write!(f, " {name}={x}")?;
        }
        Ok(())
    }
}

/// All `v`-stalks whose vertices other than `v` avoid `c`.
pub fn find_stalks(g: &PlanarGraph, c: &BTreeSet<Vertex>, v: Vertex) -> Vec<Stalk> {
    let deg = |x: Vertex| g.degree(x);
    let ok = |x: Vertex, d: usize| x != v && !c.contains(&x) && deg(x) == d;
    let mut out = Vec::new();
    if !g.contains(v) {
        return out;
    }
    for &v1 in g.neighbors(v) {
        if ok(v1, 3) {
            out.push(Stalk::new(StalkKind::A, v, v1));
        }
        if !ok(v1, 4) {
            continue;
        }
        let around: Vec<Vertex> = g.neighbors(v1).iter().copied().filter(|&x| x != v).collect();
        for &v2 in &around {
            if ok(v2, 3) {
                let mut s = Stalk::new(StalkKind::B, v, v1);
                s.v2 = Some(v2);
                out.push(s);
            }
            if !ok(v2, 4) {
                continue;
            }
            // (c): v3 closes a 4-cycle back to v
            for &v3 in g.neighbors(v2) {
                if v3 != v1 && ok(v3, 3) && g.has_edge(v3, v) {
                    let mut s = Stalk::new(StalkKind::C, v, v1);
                    s.v2 = Some(v2);
                    s.v3 = Some(v3);
                    out.push(s);
                }
            }
            // (d): two degree-3 neighbors of v2
            let threes: Vec<Vertex> = g.neighbors(v2).iter().copied().filter(|&x| x != v1 && ok(x, 3)).collect();
            for (i, &a) in threes.iter().enumerate() {
                for &b in &threes[i + 1..] {
                    let mut s = Stalk::new(StalkKind::D, v, v1);
                    s.v2 = Some(v2);
                    s.v3 = Some(a);
                    s.v3p = Some(b);
                    out.push(s);
                }
            }
        }
        // (e) and (f): two degree-4 neighbors v2 < v2' of v1 with a common
        // neighbor v3 other than v1
        for (i, &v2) in around.iter().enumerate() {
            for &v2p in &around[i + 1..] {
                let (v2, v2p) = (v2.min(v2p), v2.max(v2p));
                if !ok(v2, 4) || !ok(v2p, 4) {
                    continue;
                }
                for &v3 in g.neighbors(v2) {
                    if v3 == v1 || !g.has_edge(v3, v2p) {
                        continue;
                    }
                    if ok(v3, 3) {
                        let mut s = Stalk::new(StalkKind::E, v, v1);
                        s.v2 = Some(v2);
                        s.v2p = Some(v2p);
                        s.v3 = Some(v3);
                        out.push(s);
                    }
                    if ok(v3, 4) {
                        let ends: Vec<Vertex> = g
                            .neighbors(v3)
                            .iter()
                            .copied()
                            .filter(|&x| x != v2 && x != v2p && x != v1 && ok(x, 3))
                            .collect();
                        for (j, &a) in ends.iter().enumerate() {
                            for &b in &ends[j + 1..] {
                                let mut s = Stalk::new(StalkKind::F, v, v1);
                                s.v2 = Some(v2);
                                s.v2p = Some(v2p);
                                s.v3 = Some(v3);
                                s.v4 = Some(a);
                                s.v4p = Some(b);
                                out.push(s);
                            }
                        }
                    }
                }
            }
        }
    }
    out.retain(|s| s.is_valid(g, c));
    out.sort_by_key(Stalk::key);
    out
}

/// Each `(v, C)`-good neighbor once, with its canonical witness: earliest
/// kind, then fewest vertices, then smallest labels.
pub fn good_neighbors(g: &PlanarGraph, c: &BTreeSet<Vertex>, v: Vertex) -> Vec<(Vertex, Stalk)> {
    let mut out: Vec<(Vertex, Stalk)> = Vec::new();
    for s in find_stalks(g, c, v) {
        if !out.iter().any(|(x, _)| *x == s.v1) {
            out.push((s.v1, s));
        }
    }
    out.sort_by_key(|(x, _)| *x);
    out
}

/// The three ways a (b) stalk can be extended.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    /// Edge `v1 v2'`, `deg v2' = 3`.
    Pendant { v2p: Vertex },
    /// 4-cycle `v1 v2 v3' v2'`, `deg v2' = deg v3' = 4`.
    Square { v2p: Vertex, v3p: Vertex },
    /// 4-cycle `v1 v2' v3' v`, `deg v2' = 4`, `deg v3' = 3`.
    Back { v2p: Vertex, v3p: Vertex },
}

impl Extension {
    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            Extension::Pendant { v2p } => vec![v2p],
            Extension::Square { v2p, v3p } | Extension::Back { v2p, v3p } => vec![v2p, v3p],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedStalk {
    pub stalk: Stalk,
    pub extension: Option<Extension>,
}

impl ExtendedStalk {
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        let mut s = self.stalk.vertices();
        if let Some(e) = &self.extension {
            s.extend(e.vertices());
        }
        s
    }
}

impl fmt::Display for ExtendedStalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.stalk)?;
        match &self.extension {
            None => Ok(()),
            Some(Extension::Pendant { v2p }) => write!(f, " ext pendant v2'={v2p}"),
            Some(Extension::Square { v2p, v3p }) => write!(f, " ext square v2'={v2p} v3'={v3p}"),
            Some(Extension::Back { v2p, v3p }) => write!(f, " ext back v2'={v2p} v3'={v3p}"),
        }
    }
}

fn extensions(g: &PlanarGraph, c: &BTreeSet<Vertex>, s: &Stalk) -> Vec<Extension> {
    let (v, v1, v2) = (s.base, s.v1, s.v2.expect("(b) stalk has v2"));
    let off = |x: Vertex, d: usize| !c.contains(&x) && g.degree(x) == d && x != v && x != v1 && x != v2;
    let mut out = Vec::new();
    for &v2p in g.neighbors(v1) {
        if off(v2p, 3) {
            out.push(Extension::Pendant { v2p });
        }
        if off(v2p, 4) {
            for &v3p in g.neighbors(v2p) {
                if v3p != v1 && off(v3p, 4) && g.has_edge(v3p, v2) {
                    out.push(Extension::Square { v2p, v3p });
                }
                if v3p != v1 && off(v3p, 3) && g.has_edge(v3p, v) {
                    out.push(Extension::Back { v2p, v3p });
                }
            }
        }
    }
    out
}

/// Extended stalk witnessing that `x` is `(v, C)`-excellent: good via
/// (a), (d), (e) or (f), or via (b) with one of the three extensions.
/// Smallest witness first; `None` when `x` is not excellent.
pub fn is_excellent(g: &PlanarGraph, c: &BTreeSet<Vertex>, v: Vertex, x: Vertex) -> Option<ExtendedStalk> {
    let mut best: Option<ExtendedStalk> = None;
    for s in find_stalks(g, c, v).into_iter().filter(|s| s.v1 == x) {
        let candidates: Vec<ExtendedStalk> = match s.kind {
            StalkKind::A | StalkKind::D | StalkKind::E | StalkKind::F => {
                vec![ExtendedStalk { stalk: s, extension: None }]
            }
            StalkKind::B => extensions(g, c, &s)
                .into_iter()
                .map(|e| ExtendedStalk { stalk: s.clone(), extension: Some(e) })
                .collect(),
            StalkKind::C => Vec::new(),
        };
        for e in candidates {
            let better = match &best {
                None => true,
                Some(b) => {
                    (e.vertices().len(), e.vertices().into_iter().collect::<Vec<_>>())
                        < (b.vertices().len(), b.vertices().into_iter().collect::<Vec<_>>())
                }
            };
            if better {
                best = Some(e);
            }
        }
    }
    best
}
