//! Plane graphs given by rotation systems.
//!
//! A [`PlanarGraph`] stores, for every vertex, its neighbors in clockwise
//! order. Faces are traced once at construction: the dart `u -> v` is
//! followed by `v -> w` where `w` is the successor of `u` in the rotation at
//! `v`. Vertex ids are stable: induced subgraphs keep the ids of the parent
//! graph and simply mark the remaining slots absent.

mod cycles;
mod format;

pub use cycles::{find_minimal_nonface_cycle, subgraph_in_disk, DiskCycle};
pub use format::{parse_graph, write_graph};

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type FaceId = usize;

/// A facial walk. `walk[i] -> walk[i + 1]` (cyclically) are the darts of the
/// face, so an edge traversed twice (a bridge) contributes two slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub walk: Vec<Vertex>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Angles as `(prev, tip, next)` triples, one per slot of the walk.
    pub fn angles(&self) -> impl Iterator<Item = (Vertex, Vertex, Vertex)> + '_ {
        let n = self.walk.len();
        (0..n).map(move |i| (self.walk[(i + n - 1) % n], self.walk[i], self.walk[(i + 1) % n]))
    }

    /// Darts `(tail, head)` along the walk.
    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.walk.len();
        (0..n).map(move |i| (self.walk[i], self.walk[(i + 1) % n]))
    }

    /// True when the walk visits no vertex twice.
    pub fn is_cycle(&self) -> bool {
        let set: BTreeSet<_> = self.walk.iter().collect();
        set.len() == self.walk.len() && self.walk.len() >= 3
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.walk.iter().copied().collect()
    }
}

#[derive(Clone, Debug)]
pub struct PlanarGraph {
    rotation: Vec<Vec<Vertex>>,
    present: Vec<bool>,
    /// `twin[v][i]` is the index of `v` in the rotation of `rotation[v][i]`.
    twin: Vec<Vec<usize>>,
    faces: Vec<Face>,
    /// `angle_face[v][i]`: face holding the angle at `v` between
    /// `rotation[v][i]` and its clockwise successor.
    angle_face: Vec<Vec<FaceId>>,
    outer: Option<FaceId>,
}

impl PartialEq for PlanarGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation
            && self.present == other.present
            && self.outer_walk_key() == other.outer_walk_key()
    }
}

impl Eq for PlanarGraph {}

impl PlanarGraph {
    /// Builds a graph on vertices `0..rotation.len()`, all present.
    pub fn from_rotation(rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        let present = vec![true; rotation.len()];
        Self::from_parts(present, rotation)
    }

    /// Builds a graph where only the flagged slots are vertices. Absent slots
    /// must have empty rotations.
    pub fn from_parts(present: Vec<bool>, rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        assert_eq!(present.len(), rotation.len());
        let n = rotation.len();
        let mut twin = Vec::with_capacity(n);
        for (v, nbrs) in rotation.iter().enumerate() {
            if !present[v] && !nbrs.is_empty() {
                return Err(Error::InvalidVertex(v));
            }
            let mut seen = BTreeSet::new();
            let mut tw = Vec::with_capacity(nbrs.len());
            for &u in nbrs {
                if u >= n || !present[u] {
                    return Err(Error::InvalidVertex(u));
                }
                if u == v {
                    return Err(Error::SelfLoop(v));
                }
                if !seen.insert(u) {
                    return Err(Error::DuplicateNeighbor { v, u });
                }
                match rotation[u].iter().position(|&w| w == v) {
                    Some(j) => tw.push(j),
                    None => return Err(Error::AsymmetricRotation { u: v, v: u }),
                }
            }
            twin.push(tw);
        }
        let mut g = PlanarGraph { rotation, present, twin, faces: Vec::new(), angle_face: Vec::new(), outer: None };
        g.trace();
        Ok(g)
    }

    fn trace(&mut self) {
        let n = self.rotation.len();
        let unset = usize::MAX;
        let mut angle_face: Vec<Vec<FaceId>> = self.rotation.iter().map(|r| vec![unset; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..n {
            for i in 0..self.rotation[v].len() {
                if angle_face[v][i] != unset {
                    continue;
                }
                // dart rotation[v][i] -> v
                let id = faces.len();
                let mut walk = Vec::new();
                let (mut head, mut idx) = (v, i);
                loop {
                    angle_face[head][idx] = id;
                    walk.push(self.rotation[head][idx]);
                    let deg = self.rotation[head].len();
                    let next_idx = (idx + 1) % deg;
                    let next = self.rotation[head][next_idx];
                    let back = self.twin[head][next_idx];
                    head = next;
                    idx = back;
                    if head == v && idx == i {
                        break;
                    }
                }
                faces.push(Face { id, walk });
            }
        }
        self.faces = faces;
        self.angle_face = angle_face;
    }

    /// Marks the face whose boundary walk is `cycle` (read cyclically, either
    /// direction) as the outer face. When two faces match, the one traversed
    /// in the given direction wins.
    pub fn with_outer_cycle(mut self, cycle: &[Vertex]) -> Result<Self> {
        let mut candidates = Vec::new();
        for f in &self.faces {
            if let Some(forward) = cyclic_match(&f.walk, cycle) {
                candidates.push((f.id, forward));
            }
        }
        let pick = candidates.iter().find(|(_, fwd)| *fwd).or_else(|| candidates.first()).map(|&(id, _)| id);
        match pick {
            Some(id) => {
                self.outer = Some(id);
                Ok(self)
            }
            None => Err(Error::UnknownOuterFace(cycle.to_vec())),
        }
    }

    pub fn with_outer_face(mut self, face: Option<FaceId>) -> Self {
        self.outer = face;
        self
    }

    fn outer_walk_key(&self) -> Option<Vec<Vertex>> {
        self.outer.map(|f| canonical_cycle(&self.faces[f].walk))
    }

    /// Number of vertex slots (one more than the largest possible id).
    pub fn capacity(&self) -> usize {
        self.rotation.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.present.len() && self.present[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.present.len()).filter(move |&v| self.present[v])
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.rotation.iter().enumerate().flat_map(|(v, r)| r.iter().filter(move |&&u| v < u).map(move |&u| (v, u)))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    /// Neighbors of `v` in clockwise order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if !self.contains(u) || !self.contains(v) {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.rotation[a].contains(&b)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer
    }

    /// Face containing the dart `u -> v`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<FaceId> {
        let i = self.rotation.get(v)?.iter().position(|&w| w == u)?;
        Some(self.angle_face[v][i])
    }

    /// Face holding the angle at `v` that starts at rotation slot `i`.
    pub fn angle_face(&self, v: Vertex, i: usize) -> FaceId {
        self.angle_face[v][i]
    }

    /// Faces around `v` in rotation order, one per angle.
    pub fn faces_around(&self, v: Vertex) -> &[FaceId] {
        &self.angle_face[v]
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.capacity()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.rotation[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `|V| - |E| + |F|` with faces as traced (isolated vertices own no face).
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    pub fn find_triangle(&self) -> Option<[Vertex; 3]> {
        for (u, v) in self.edges() {
            for &w in &self.rotation[u] {
                if w != v && self.has_edge(v, w) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    return Some(t);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    /// Subgraph induced by `keep`, with rotations restricted and ids kept.
    /// The outer face survives when its boundary walk is still a face.
    pub fn induced_subgraph<I: IntoIterator<Item = Vertex>>(&self, keep: I) -> PlanarGraph {
        let mut present = vec![false; self.capacity()];
        for v in keep {
            if self.contains(v) {
                present[v] = true;
            }
        }
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, r)| if present[v] { r.iter().copied().filter(|&u| present[u]).collect() } else { Vec::new() })
            .collect();
        let g = PlanarGraph::from_parts(present, rotation).expect("restriction of a valid rotation system is valid");
        match self.outer {
            Some(f) => {
                let walk = &self.faces[f].walk;
                let keep_outer = walk.iter().all(|&v| g.contains(v))
                    && g.faces.iter().any(|h| h.walk.len() == walk.len() && cyclic_match(&h.walk, walk) == Some(true));
                if keep_outer {
                    let id = g
                        .faces
                        .iter()
                        .find(|h| h.walk.len() == walk.len() && cyclic_match(&h.walk, walk) == Some(true))
                        .map(|h| h.id);
                    g.with_outer_face(id)
                } else {
                    g
                }
            }
            None => g,
        }
    }

    /// Graph minus the given vertices.
    pub fn without<I: IntoIterator<Item = Vertex>>(&self, remove: I) -> PlanarGraph {
        let gone: BTreeSet<Vertex> = remove.into_iter().collect();
        self.induced_subgraph(self.vertices().filter(|v| !gone.contains(v)).collect::<Vec<_>>())
    }

    /// BFS distances from `s` (`None` for unreachable or absent vertices).
    pub fn distances_from(&self, s: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.capacity()];
        if !self.contains(s) {
            return dist;
        }
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &self.rotation[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Graph distance, `None` meaning infinite.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.distances_from(u).get(v).copied().flatten()
    }

    /// True iff all pairwise distances in this graph exceed `d`.
    pub fn is_d_independent(&self, set: &[Vertex], d: usize) -> bool {
        for (i, &u) in set.iter().enumerate() {
            let dist = self.distances_from(u);
            for &v in &set[i + 1..] {
                if u == v {
                    return false;
                }
                if let Some(x) = dist[v] {
                    if x <= d {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Faces of length at most `max_len` whose walks are cycles, keyed by
    /// canonical vertex sequence.
    pub(crate) fn cycle_faces(&self, max_len: usize) -> HashMap<Vec<Vertex>, Vec<FaceId>> {
        let mut map: HashMap<Vec<Vertex>, Vec<FaceId>> = HashMap::new();
        for f in &self.faces {
            if f.len() <= max_len && f.is_cycle() {
                map.entry(canonical_cycle(&f.walk)).or_default().push(f.id);
            }
        }
        map
    }

    /// All cycles of length at most `max_len`, each listed once in canonical
    /// form (smallest vertex first, then the smaller of its two neighbors).
    pub fn short_cycles(&self, max_len: usize) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(max_len);
        for s in self.vertices() {
            path.clear();
            path.push(s);
            self.extend_cycles(s, max_len, &mut path, &mut out);
        }
        out.sort();
        out
    }

    fn extend_cycles(&self, s: Vertex, max_len: usize, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for &u in &self.rotation[last] {
            if u == s && path.len() >= 3 && path[1] < path[path.len() - 1] {
                out.push(path.clone());
            }
            if u > s && path.len() < max_len && !path.contains(&u) {
                path.push(u);
                self.extend_cycles(s, max_len, path, out);
                path.pop();
            }
        }
    }

    /// A face of length at most five bounded by a cycle, preferring the
    /// designated outer face, then the shortest and lexicographically first.
    pub fn short_cycle_face(&self) -> Option<FaceId> {
        if let Some(f) = self.outer {
            if self.faces[f].len() <= 5 && self.faces[f].is_cycle() {
                return Some(f);
            }
        }
        self.faces
            .iter()
            .filter(|f| f.len() <= 5 && f.is_cycle())
            .min_by_key(|f| (f.len(), canonical_cycle(&f.walk)))
            .map(|f| f.id)
    }
}

/// Rotates and possibly reverses a cycle so that it starts at its smallest
/// vertex and continues towards the smaller of that vertex's two neighbors.
pub fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let (start, _) = cycle.iter().enumerate().min_by_key(|&(_, v)| v).unwrap();
    let fwd: Vec<_> = (0..n).map(|i| cycle[(start + i) % n]).collect();
    let bwd: Vec<_> = (0..n).map(|i| cycle[(start + n - i) % n]).collect();
    fwd.min(bwd)
}

/// `Some(true)` if `walk` equals `cycle` up to rotation, `Some(false)` if it
/// equals the reversal, `None` otherwise.
fn cyclic_match(walk: &[Vertex], cycle: &[Vertex]) -> Option<bool> {
    let n = walk.len();
    if n != cycle.len() || n == 0 {
        return None;
    }
    for shift in 0..n {
        if (0..n).all(|i| walk[(shift + i) % n] == cycle[i]) {
            return Some(true);
        }
    }
    for shift in 0..n {
        if (0..n).all(|i| walk[(shift + n - i) % n] == cycle[i]) {
            return Some(false);
        }
    }
    None
}
