use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{canonical_cycle, FaceId, PlanarGraph, Vertex};
use crate::error::{Error, Result};

/// A short cycle together with the faces and vertices on its inner side
/// (the side away from the outer face).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskCycle {
    pub cycle: Vec<Vertex>,
    pub interior_faces: BTreeSet<FaceId>,
    pub interior_vertices: BTreeSet<Vertex>,
}

impl DiskCycle {
    /// The open disk is itself a face.
    pub fn is_facial(&self) -> bool {
        self.interior_faces.len() == 1
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }
}

impl PlanarGraph {
    /// Splits the faces by `cycle`: everything reachable from the outer face
    /// in the dual without crossing an edge of the cycle is outside.
    pub fn disk_of(&self, cycle: &[Vertex]) -> Result<DiskCycle> {
        let outer =
            self.outer_face().ok_or_else(|| Error::precondition("inside of a cycle needs a designated outer face"))?;
        let n = cycle.len();
        let mut on_cycle: HashSet<(Vertex, Vertex)> = HashSet::new();
        for i in 0..n {
            let (a, b) = (cycle[i], cycle[(i + 1) % n]);
            if !self.has_edge(a, b) {
                return Err(Error::precondition(format!("{cycle:?} is not a cycle of the graph")));
            }
            on_cycle.insert((a.min(b), a.max(b)));
        }
        let mut outside = vec![false; self.faces().len()];
        outside[outer] = true;
        let mut queue = VecDeque::from([outer]);
        while let Some(f) = queue.pop_front() {
            for (u, v) in self.faces()[f].darts() {
                if on_cycle.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                let g = self.face_of_dart(v, u).expect("twin dart exists");
                if !outside[g] {
                    outside[g] = true;
                    queue.push_back(g);
                }
            }
        }
        let interior_faces: BTreeSet<FaceId> = (0..outside.len()).filter(|&f| !outside[f]).collect();
        let cycle_set: BTreeSet<Vertex> = cycle.iter().copied().collect();
        let interior_vertices = interior_faces
            .iter()
            .flat_map(|&f| self.faces()[f].walk.iter().copied())
            .filter(|v| !cycle_set.contains(v))
            .collect();
        Ok(DiskCycle { cycle: cycle.to_vec(), interior_faces, interior_vertices })
    }

    /// True when every cycle of length at most five bounds a face.
    pub fn short_cycles_are_facial(&self) -> bool {
        let facial = self.cycle_faces(5);
        self.short_cycles(5).iter().all(|c| facial.contains_key(c))
    }
}

/// Finds the short (at most five) cycle whose open disk is not a face and
/// holds the fewest faces; ties go to the lexicographically smallest
/// canonical vertex sequence.
pub fn find_minimal_nonface_cycle(g: &PlanarGraph) -> Result<Option<DiskCycle>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(t) = g.find_triangle() {
        return Err(Error::NotTriangleFree(t));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 3) {
        return Err(Error::precondition(format!(
            "vertex {v} has degree {}; reduce small configurations first",
            g.degree(v)
        )));
    }
    let outer = g.outer_face().ok_or_else(|| Error::precondition("no outer face designated"))?;
    let of = g.face(outer);
    if of.len() > 5 || !of.is_cycle() {
        return Err(Error::precondition(format!(
            "outer face {outer} is not bounded by a cycle of length at most five"
        )));
    }
    let mut best: Option<DiskCycle> = None;
    for c in g.short_cycles(5) {
        let disk = g.disk_of(&c)?;
        if disk.is_facial() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => (disk.interior_faces.len(), &disk.cycle) < (b.interior_faces.len(), &b.cycle),
        };
        if better {
            best = Some(disk);
        }
    }
    Ok(best)
}

/// The part of `g` drawn in the closed disk of `c`, with `c` bounding the
/// new outer face.
pub fn subgraph_in_disk(g: &PlanarGraph, c: &DiskCycle) -> Result<PlanarGraph> {
    let keep: BTreeSet<Vertex> = c.cycle.iter().copied().chain(c.interior_vertices.iter().copied()).collect();
    let sub = g.induced_subgraph(keep.iter().copied());
    // The dart of the first cycle edge whose face lies outside the disk
    // stays on the exterior after restriction.
    let (a, b) = (c.cycle[0], c.cycle[1]);
    let fwd = g.face_of_dart(a, b).expect("cycle edge");
    let (tail, head) = if c.interior_faces.contains(&fwd) { (b, a) } else { (a, b) };
    let outer = sub.face_of_dart(tail, head).expect("cycle edge kept");
    debug_assert_eq!(
        canonical_cycle(&sub.face(outer).walk),
        canonical_cycle(&c.cycle),
        "exterior of the disk is bounded by the cycle"
    );
    Ok(sub.with_outer_face(Some(outer)))
}
