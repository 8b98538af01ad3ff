//! Fixture graphs and random triangle-free plane graphs for tests.
//!
//! Small fixtures are given as straight-line drawings; the rotation at each
//! vertex is read off by sorting neighbors clockwise. Random instances are
//! grown by face operations (vertex insertion, chords, edge deletion) on a
//! rotation system, or taken as the vertex-face incidence graph of a random
//! plane graph, which is a quadrangulation and therefore triangle-free.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coloring::ListAssignment;
use crate::planar::{PlanarGraph, Vertex};

/// Rotation system read from a straight-line drawing.
pub fn from_drawing(points: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> PlanarGraph {
    let n = points.len();
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        rot[u].push(v);
        rot[v].push(u);
    }
    for (v, nbrs) in rot.iter_mut().enumerate() {
        let (x, y) = points[v];
        // clockwise = decreasing polar angle
        nbrs.sort_by(|&a, &b| {
            let ta = (points[a].1 - y).atan2(points[a].0 - x);
            let tb = (points[b].1 - y).atan2(points[b].0 - x);
            tb.partial_cmp(&ta).unwrap()
        });
    }
    PlanarGraph::from_rotation(rot).expect("drawing gives a valid rotation system")
}

pub fn cycle(n: usize) -> PlanarGraph {
    let pts: Vec<_> = (0..n)
        .map(|i| {
            let t = -(i as f64) * std::f64::consts::TAU / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_drawing(&pts, &edges)
}

pub fn path(n: usize) -> PlanarGraph {
    let pts: Vec<_> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    from_drawing(&pts, &edges)
}

pub fn star(leaves: usize) -> PlanarGraph {
    let mut pts = vec![(0.0, 0.0)];
    let mut edges = Vec::new();
    for i in 0..leaves {
        let t = -(i as f64) * std::f64::consts::TAU / leaves as f64;
        pts.push((t.cos(), t.sin()));
        edges.push((0, i + 1));
    }
    from_drawing(&pts, &edges)
}

/// `rows x cols` grid; vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> PlanarGraph {
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            pts.push((c as f64, r as f64));
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    from_drawing(&pts, &edges)
}

/// Cube drawn as two nested squares: outer `0..4`, inner `4..8`, spokes
/// `i - (i + 4)`.
pub fn cube() -> PlanarGraph {
    nested_squares(2)
}

/// Three nested squares with spokes (minimum degree three). Outer face is
/// the outermost square; the middle square is the unique smallest
/// non-facial short cycle.
pub fn nested_cubes() -> PlanarGraph {
    nested_squares(3).with_outer_cycle(&[0, 1, 2, 3]).unwrap()
}

fn nested_squares(layers: usize) -> PlanarGraph {
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for l in 0..layers {
        let s = (layers - l) as f64;
        for (i, &(x, y)) in [(-s, s), (s, s), (s, -s), (-s, -s)].iter().enumerate() {
            pts.push((x, y));
            let v = 4 * l + i;
            edges.push((v, 4 * l + (i + 1) % 4));
            if l > 0 {
                edges.push((v - 4, v));
            }
        }
    }
    from_drawing(&pts, &edges)
}

pub fn k4() -> PlanarGraph {
    let pts = [(0.0, 2.0), (2.0, -1.0), (-2.0, -1.0), (0.0, 0.0)];
    from_drawing(&pts, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
}

/// A pentagon with a path of length four joining two of its corners; girth
/// five.
pub fn petersen_fragment() -> PlanarGraph {
    let mut pts: Vec<(f64, f64)> = (0..5)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 - i as f64 * std::f64::consts::TAU / 5.0;
            (t.cos(), t.sin())
        })
        .collect();
    pts.extend([(0.5, 2.0), (1.5, 2.0), (2.0, 1.0)]);
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 7), (7, 2)];
    from_drawing(&pts, &edges)
}

/// Two 4-faces `0 1 2 3` and `0 1 4 5` sharing the edge `0 1`.
pub fn domino() -> PlanarGraph {
    let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, -1.0), (0.0, -1.0)];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 0)];
    from_drawing(&pts, &edges)
}

#[doc(hidden)]
pub fn from_edges_planar_fixture_domino() -> PlanarGraph {
    domino()
}

/// Every vertex gets the same list.
pub fn uniform_lists(g: &PlanarGraph, colors: &[u32]) -> ListAssignment {
    let mut l = ListAssignment::empty(g.capacity());
    for v in g.vertices() {
        l.set(v, colors.iter().copied());
    }
    l
}

/// Random `size`-subsets of `0..palette`.
pub fn random_lists<R: Rng>(g: &PlanarGraph, size: usize, palette: u32, rng: &mut R) -> ListAssignment {
    let all: Vec<u32> = (0..palette).collect();
    let mut l = ListAssignment::empty(g.capacity());
    for v in g.vertices() {
        l.set(v, all.choose_multiple(rng, size).copied());
    }
    l
}

/// Mutable rotation system used while growing random instances.
#[derive(Clone, Debug)]
struct Embedding {
    rot: Vec<Vec<Vertex>>,
}

impl Embedding {
    fn graph(&self) -> PlanarGraph {
        PlanarGraph::from_rotation(self.rot.clone()).expect("embedding stays valid")
    }

    fn insert_after(&mut self, at: Vertex, after: Vertex, new: Vertex) {
        let i = self.rot[at].iter().position(|&w| w == after).expect("corner exists");
        self.rot[at].insert(i + 1, new);
    }

    /// New vertex inside the face `walk`, joined to the walk positions
    /// `attach` (strictly increasing).
    fn insert_vertex(&mut self, walk: &[Vertex], attach: &[usize]) -> Vertex {
        let x = self.rot.len();
        self.rot.push(Vec::new());
        let n = walk.len();
        for &p in attach {
            let w = walk[p];
            let prev = walk[(p + n - 1) % n];
            if self.rot[w].is_empty() {
                self.rot[w].push(x);
            } else {
                self.insert_after(w, prev, x);
            }
        }
        self.rot[x] = attach.iter().rev().map(|&p| walk[p]).collect();
        x
    }

    fn add_chord(&mut self, walk: &[Vertex], i: usize, j: usize) {
        let n = walk.len();
        let (a, b) = (walk[i], walk[j]);
        self.insert_after(a, walk[(i + n - 1) % n], b);
        self.insert_after(b, walk[(j + n - 1) % n], a);
    }

    fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.rot[u].retain(|&w| w != v);
        self.rot[v].retain(|&w| w != u);
    }
}

fn is_two_connected(g: &PlanarGraph) -> bool {
    if !g.is_connected() {
        return false;
    }
    g.vertices().all(|v| g.without([v]).is_connected())
}

/// Grows a triangle-free plane graph by random face operations starting from
/// a short cycle: pendant vertices, vertices attached to two or three
/// pairwise far corners of a face, and chords between far corners.
pub fn random_grown<R: Rng>(n: usize, rng: &mut R) -> PlanarGraph {
    if n < 4 {
        return path(n.max(1));
    }
    let start = rng.gen_range(4..=5).min(n);
    let mut emb = Embedding { rot: cycle(start).rotation().to_vec() };
    let mut guard = 0;
    while emb.rot.len() < n && guard < 10_000 {
        guard += 1;
        let g = emb.graph();
        let faces = g.faces();
        let f = &faces[rng.gen_range(0..faces.len())];
        let walk = f.walk.clone();
        let len = walk.len();
        match rng.gen_range(0..10) {
            0 => {
                let p = rng.gen_range(0..len);
                emb.insert_vertex(&walk, &[p]);
            }
            1..=4 => {
                let t = if len >= 6 && rng.gen_bool(0.6) { 3 } else { 2 };
                if let Some(att) = far_positions(&g, &walk, t, rng) {
                    emb.insert_vertex(&walk, &att);
                }
            }
            _ => {
                if let Some((i, j)) = far_pair(&g, &walk, rng) {
                    emb.add_chord(&walk, i, j);
                }
            }
        }
    }
    let g = emb.graph();
    debug_assert!(g.is_triangle_free());
    g
}

/// Picks `t` walk positions, pairwise non-adjacent in the graph, splitting
/// the face into pieces of length at least four.
fn far_positions<R: Rng>(g: &PlanarGraph, walk: &[Vertex], t: usize, rng: &mut R) -> Option<Vec<usize>> {
    let n = walk.len();
    for _ in 0..20 {
        let mut pos: Vec<usize> = (0..n).collect();
        pos.shuffle(rng);
        let mut att: Vec<usize> = pos[..t.min(n)].to_vec();
        att.sort_unstable();
        if att.len() < t {
            return None;
        }
        let gaps_ok = (0..t).all(|k| {
            let next = if k + 1 < t { att[k + 1] } else { att[0] + n };
            next - att[k] >= 2
        });
        let verts: BTreeSet<Vertex> = att.iter().map(|&p| walk[p]).collect();
        let distinct = verts.len() == t;
        let apart = att.iter().enumerate().all(|(k, &a)| att[k + 1..].iter().all(|&b| !g.has_edge(walk[a], walk[b])));
        if gaps_ok && distinct && apart {
            return Some(att);
        }
    }
    None
}

/// Two walk positions whose vertices are at distance at least three, so the
/// chord makes no triangle and both new faces have length at least four.
fn far_pair<R: Rng>(g: &PlanarGraph, walk: &[Vertex], rng: &mut R) -> Option<(usize, usize)> {
    let n = walk.len();
    if n < 6 {
        return None;
    }
    for _ in 0..20 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let (i, j) = (i.min(j), i.max(j));
        if j - i < 3 || n - (j - i) < 3 {
            continue;
        }
        let (a, b) = (walk[i], walk[j]);
        if a == b || walk.iter().filter(|&&w| w == a).count() > 1 || walk.iter().filter(|&&w| w == b).count() > 1 {
            continue;
        }
        match g.distance(a, b) {
            Some(d) if d >= 3 => return Some((i, j)),
            _ => {}
        }
    }
    None
}

/// Random 2-connected plane graph of minimum degree three: a stacked
/// triangulation on `p` vertices thinned by random edge deletions.
fn random_sparse_plane<R: Rng>(p: usize, deletions: usize, rng: &mut R) -> PlanarGraph {
    let tri = from_drawing(&[(0.0, 1.0), (1.0, -1.0), (-1.0, -1.0)], &[(0, 1), (1, 2), (2, 0)]);
    let mut emb = Embedding { rot: tri.rotation().to_vec() };
    while emb.rot.len() < p {
        let g = emb.graph();
        let f = &g.faces()[rng.gen_range(0..g.faces().len())];
        let walk = f.walk.clone();
        emb.insert_vertex(&walk, &[0, 1, 2]);
    }
    let mut done = 0;
    let mut tries = 0;
    while done < deletions && tries < 20 * deletions + 20 {
        tries += 1;
        let g = emb.graph();
        let edges: Vec<_> = g.edges().filter(|&(u, v)| g.degree(u) > 3 && g.degree(v) > 3).collect();
        let Some(&(u, v)) = edges.choose(rng) else { break };
        let mut trial = emb.clone();
        trial.remove_edge(u, v);
        if is_two_connected(&trial.graph()) {
            emb = trial;
            done += 1;
        }
    }
    emb.graph()
}

/// Vertex-face incidence graph of `m`: vertices of `m` keep their ids, face
/// `f` becomes vertex `m.capacity() + f`. Every face has length four.
pub fn radial_graph(m: &PlanarGraph) -> PlanarGraph {
    let p = m.capacity();
    let nf = m.faces().len();
    let build = |reverse: bool| {
        let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); p + nf];
        for v in m.vertices() {
            rot[v] = m.faces_around(v).iter().map(|&f| p + f).collect();
        }
        for f in m.faces() {
            let mut w = f.walk.clone();
            if reverse {
                w.reverse();
            }
            rot[p + f.id] = w;
        }
        PlanarGraph::from_rotation(rot).ok()
    };
    [false, true]
        .into_iter()
        .filter_map(build)
        .find(|r| r.faces().iter().all(|f| f.len() == 4))
        .expect("one orientation of the incidence rotation is consistent")
}

/// Quadrangulation-based instance with minimum degree three, optionally
/// perturbed by edge deletions (keeping minimum degree three) and chords.
pub fn random_quadrangulation<R: Rng>(max_n: usize, rng: &mut R) -> PlanarGraph {
    let max_p = ((max_n + 4) / 3).max(4);
    let p = rng.gen_range(4..=max_p);
    let deletions = rng.gen_range(0..=p.saturating_sub(4) + 2);
    let m = random_sparse_plane(p, deletions, rng);
    let mut emb = Embedding { rot: radial_graph(&m).rotation().to_vec() };
    let perturb = rng.gen_range(0..4);
    for _ in 0..perturb {
        let g = emb.graph();
        if rng.gen_bool(0.5) {
            let edges: Vec<_> = g.edges().filter(|&(u, v)| g.degree(u) > 3 && g.degree(v) > 3).collect();
            if let Some(&(u, v)) = edges.choose(rng) {
                let mut trial = emb.clone();
                trial.remove_edge(u, v);
                if trial.graph().is_connected() {
                    emb = trial;
                }
            }
        } else {
            let big: Vec<_> = g.faces().iter().filter(|f| f.len() >= 6).cloned().collect();
            if let Some(f) = big.choose(rng) {
                if let Some((i, j)) = far_pair(&g, &f.walk, rng) {
                    emb.add_chord(&f.walk, i, j);
                }
            }
        }
    }
    emb.graph()
}

/// Random triangulation on `p` vertices: a stacked triangulation evened out
/// by degree-balancing edge flips.
fn random_triangulation<R: Rng>(p: usize, rng: &mut R) -> Embedding {
    let tri = from_drawing(&[(0.0, 1.0), (1.0, -1.0), (-1.0, -1.0)], &[(0, 1), (1, 2), (2, 0)]);
    let mut emb = Embedding { rot: tri.rotation().to_vec() };
    while emb.rot.len() < p {
        let g = emb.graph();
        let f = &g.faces()[rng.gen_range(0..g.faces().len())];
        let walk = f.walk.clone();
        emb.insert_vertex(&walk, &[0, 1, 2]);
    }
    for _ in 0..6 * p {
        let g = emb.graph();
        let edges: Vec<_> = g.edges().collect();
        let &(u, v) = edges.choose(rng).expect("edges");
        let (Some(f1), Some(f2)) = (g.face_of_dart(u, v), g.face_of_dart(v, u)) else { continue };
        let third = |f: usize| g.face(f).walk.iter().copied().find(|&x| x != u && x != v);
        let (Some(w), Some(x)) = (third(f1), third(f2)) else { continue };
        if w == x || g.has_edge(w, x) || g.degree(u) <= 3 || g.degree(v) <= 3 {
            continue;
        }
        if g.degree(w) + g.degree(x) + 2 > g.degree(u) + g.degree(v) && rng.gen_bool(0.8) {
            continue;
        }
        let mut trial = emb.clone();
        trial.remove_edge(u, v);
        let h = trial.graph();
        let Some(quad) = h.faces().iter().find(|f| f.len() == 4 && f.walk.contains(&w) && f.walk.contains(&x)) else {
            continue;
        };
        let walk = quad.walk.clone();
        let i = walk.iter().position(|&y| y == w).unwrap();
        let j = walk.iter().position(|&y| y == x).unwrap();
        trial.add_chord(&walk, i.min(j), i.max(j));
        emb = trial;
    }
    emb
}

fn has_small_configuration(g: &PlanarGraph) -> bool {
    g.vertices().any(|v| g.degree(v) <= 2 || (g.degree(v) == 3 && g.neighbors(v).iter().any(|&u| g.degree(u) == 3)))
}

/// Triangle-free plane graph with minimum degree three and no two adjacent
/// vertices of degree three, at most `max_n` vertices (`max_n >= 20`).
///
/// Built as the vertex-face incidence graph of a thinned random
/// triangulation, then perturbed by deletions and chords that keep both
/// properties. These are the instances on which the stalk-based finders
/// have to do the work.
pub fn random_small_free<R: Rng>(max_n: usize, rng: &mut R) -> PlanarGraph {
    assert!(max_n >= 20, "random_small_free needs max_n >= 20, got {max_n}");
    let max_p = ((max_n + 4) / 3).max(8);
    loop {
        let p = rng.gen_range(8..=max_p);
        let mut m = random_triangulation(p, rng);
        let deletions = rng.gen_range(0..=p / 2);
        for _ in 0..3 * deletions {
            let g = m.graph();
            let edges: Vec<_> = g.edges().filter(|&(u, v)| g.degree(u) > 4 && g.degree(v) > 4).collect();
            let Some(&(u, v)) = edges.choose(rng) else { break };
            let mut trial = m.clone();
            trial.remove_edge(u, v);
            if is_two_connected(&trial.graph()) {
                m = trial;
            }
            if m.graph().faces().len() + deletions <= 2 * p - 4 {
                break;
            }
        }
        let mut emb = Embedding { rot: radial_graph(&m.graph()).rotation().to_vec() };
        for _ in 0..rng.gen_range(0..6) {
            let g = emb.graph();
            if rng.gen_bool(0.6) {
                let edges: Vec<_> = g
                    .edges()
                    .filter(|&(u, v)| {
                        let ok = |a: Vertex, b: Vertex| {
                            g.degree(a) >= 5
                                && g.degree(b) == 4
                                && g.neighbors(b).iter().all(|&y| y == a || g.degree(y) != 3)
                        };
                        ok(u, v) || ok(v, u)
                    })
                    .collect();
                if let Some(&(u, v)) = edges.choose(rng) {
                    let mut trial = emb.clone();
                    trial.remove_edge(u, v);
                    if trial.graph().is_connected() {
                        emb = trial;
                    }
                }
            } else {
                let big: Vec<_> = g.faces().iter().filter(|f| f.len() >= 6).cloned().collect();
                if let Some(f) = big.choose(rng) {
                    if let Some((i, j)) = far_pair(&g, &f.walk, rng) {
                        emb.add_chord(&f.walk, i, j);
                    }
                }
            }
        }
        let g = emb.graph();
        if g.vertex_count() <= max_n && g.is_triangle_free() && !has_small_configuration(&g) {
            return g;
        }
    }
}

/// Mixed corpus member: roughly half grown graphs (many low degrees), half
/// quadrangulation-based graphs of minimum degree three.
pub fn random_triangle_free<R: Rng>(max_n: usize, rng: &mut R) -> PlanarGraph {
    let g = if rng.gen_bool(0.4) {
        let n = rng.gen_range(1..=max_n.max(1));
        random_grown(n, rng)
    } else {
        random_quadrangulation(max_n, rng)
    };
    debug_assert!(g.is_triangle_free());
    debug_assert!(g.vertex_count() <= max_n.max(8), "{} > {max_n}", g.vertex_count());
    g
}
