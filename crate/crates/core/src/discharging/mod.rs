//! The exact discharging ledger on a disk subgraph: initial charges, the
//! transfer rules R0 to R3, face classes and the audit of 4-faces.
//!
//! Vertices off the outer cycle `C` start with `deg - 4`, vertices on it
//! with `deg - 7/3`, inner faces with `|f| - 4` and the outer face with 0,
//! for a total of `-4 + 2|C|/3`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Signed;

use crate::configurations::{all_spec4, find_mainredu_at, find_stalks, is_excellent, StalkKind};
use crate::error::{Error, Result};
use crate::planar::{FaceId, PlanarGraph, Vertex};

/// Exact rational scalars the ledger can run on.
pub trait ExactScalar: Clone + Ord + Signed + Debug + Send + Sync {
    fn frac(p: i64, q: i64) -> Self;
    /// Always `p/q`.
    fn to_pq(&self) -> String;
}

impl<T> ExactScalar for Ratio<T>
where
    T: Clone + Integer + Signed + Display + Debug + From<i64> + Send + Sync,
{
    fn frac(p: i64, q: i64) -> Self {
        Ratio::new(T::from(p), T::from(q))
    }

    fn to_pq(&self) -> String {
        crate::io::ratio(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Ch0,
    Ch1,
    Ch2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeMap<T> {
    pub stage: Stage,
    pub vertex: BTreeMap<Vertex, T>,
    /// Indexed by face id.
    pub face: Vec<T>,
}

impl<T: ExactScalar> ChargeMap<T> {
    pub fn total(&self) -> T {
        self.vertex.values().chain(self.face.iter()).fold(T::zero(), |a, x| a + x.clone())
    }

    fn move_face_to_vertex(&mut self, f: FaceId, v: Vertex, x: &T) {
        self.face[f] = self.face[f].clone() - x.clone();
        let e = self.vertex.get_mut(&v).expect("vertex has a charge");
        *e = e.clone() + x.clone();
    }

    fn move_face_to_face(&mut self, f: FaceId, g: FaceId, x: &T) {
        self.face[f] = self.face[f].clone() - x.clone();
        self.face[g] = self.face[g].clone() + x.clone();
    }

    fn move_vertex_to_face(&mut self, v: Vertex, f: FaceId, x: &T) {
        let e = self.vertex.get_mut(&v).expect("vertex has a charge");
        *e = e.clone() - x.clone();
        self.face[f] = self.face[f].clone() + x.clone();
    }
}

/// Degree category of a vertex on a 4-face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cat {
    /// Degree at least five, or on `C`.
    Big,
    Three,
    Four,
    /// Off `C` with degree at most two.
    Low,
}

impl Cat {
    fn symbol(self) -> char {
        match self {
            Cat::Big => 'B',
            Cat::Three => '3',
            Cat::Four => '4',
            Cat::Low => 'x',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub face: FaceId,
    /// Boundary cycle, present for 4-faces bounded by a cycle.
    pub cycle: Option<[Vertex; 4]>,
    pub pattern: Option<[Cat; 4]>,
    pub poor: bool,
    pub light: bool,
    pub very_light: bool,
    /// A (B,B,4,3)-face.
    pub big_big_four_three: bool,
    pub rich: Vec<Vertex>,
}

impl FaceClass {
    pub fn n_r(&self) -> usize {
        self.rich.len()
    }

    /// Pattern read from the lexicographically least rotation/reflection.
    pub fn pattern_string(&self) -> Option<String> {
        let p = self.pattern?;
        let best = dihedral().iter().map(|idx| idx.map(|i| p[i])).min()?;
        Some(best.iter().map(|c| c.symbol()).collect())
    }

    fn tags(&self) -> Vec<String> {
        let mut t = Vec::new();
        if let Some(p) = self.pattern_string() {
            t.push(format!("pattern={p}"));
        }
        for (on, name) in [(self.poor, "poor"), (self.light, "light"), (self.very_light, "very-light")] {
            if on {
                t.push(name.to_string());
            }
        }
        if self.cycle.is_some() {
            t.push(format!("nr={}", self.n_r()));
        }
        t
    }
}

fn dihedral() -> [[usize; 4]; 8] {
    let mut out = [[0; 4]; 8];
    for s in 0..4 {
        out[s] = [s, (s + 1) % 4, (s + 2) % 4, (s + 3) % 4];
        out[4 + s] = [s, (s + 3) % 4, (s + 2) % 4, (s + 1) % 4];
    }
    out
}

/// Index arrays `idx` with `cats[idx[i]] == pat[i]` for all `i`.
fn matches(cats: &[Cat; 4], pat: [Cat; 4]) -> Vec<[usize; 4]> {
    dihedral().into_iter().filter(|idx| (0..4).all(|i| cats[idx[i]] == pat[i])).collect()
}

struct Ctx<'a> {
    g: &'a PlanarGraph,
    c: &'a BTreeSet<Vertex>,
}

impl Ctx<'_> {
    fn off(&self, v: Vertex) -> bool {
        !self.c.contains(&v)
    }

    /// Neighbors of degree three off `C`.
    fn threes(&self, v: Vertex) -> usize {
        self.g.neighbors(v).iter().filter(|&&u| self.off(u) && self.g.degree(u) == 3).count()
    }

    fn cat(&self, v: Vertex) -> Cat {
        match self.g.degree(v) {
            _ if !self.off(v) => Cat::Big,
            d if d >= 5 => Cat::Big,
            4 => Cat::Four,
            3 => Cat::Three,
            _ => Cat::Low,
        }
    }

    fn is_outer(&self, f: FaceId) -> bool {
        self.g.outer_face() == Some(f)
    }
}

fn ctx_check<'a>(g: &'a PlanarGraph, c: &'a BTreeSet<Vertex>) -> Result<Ctx<'a>> {
    let outer = g.outer_face().ok_or_else(|| Error::precondition("the disk graph needs a designated outer face"))?;
    if g.face(outer).vertex_set() != *c || !g.face(outer).is_cycle() {
        return Err(Error::precondition("the outer face is not bounded by the given cycle"));
    }
    Ok(Ctx { g, c })
}

/// Charges before any rule.
pub fn initial_charges<T: ExactScalar>(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<ChargeMap<T>> {
    let cx = ctx_check(g, c)?;
    let vertex = g
        .vertices()
        .map(|v| {
            let d = g.degree(v) as i64;
            let x = if cx.off(v) { T::frac(d - 4, 1) } else { T::frac(3 * d - 7, 3) };
            (v, x)
        })
        .collect();
    let face =
        g.faces().iter().map(|f| if cx.is_outer(f.id) { T::zero() } else { T::frac(f.len() as i64 - 4, 1) }).collect();
    Ok(ChargeMap { stage: Stage::Ch0, vertex, face })
}

/// Pattern, flags and rich vertices of face `f`. Faces other than 4-cycles
/// get an empty class.
pub fn classify_face(g: &PlanarGraph, c: &BTreeSet<Vertex>, f: FaceId) -> FaceClass {
    let cx = Ctx { g, c };
    classify(&cx, f)
}

fn classify(cx: &Ctx, f: FaceId) -> FaceClass {
    let face = cx.g.face(f);
    let mut class = FaceClass {
        face: f,
        cycle: None,
        pattern: None,
        poor: false,
        light: false,
        very_light: false,
        big_big_four_three: false,
        rich: Vec::new(),
    };
    if face.len() != 4 || !face.is_cycle() || cx.is_outer(f) {
        return class;
    }
    let w = [face.walk[0], face.walk[1], face.walk[2], face.walk[3]];
    let cats = w.map(|v| cx.cat(v));
    class.cycle = Some(w);
    class.pattern = Some(cats);
    let small = |v: Vertex| cx.off(v) && cx.g.degree(v) <= 4;
    class.poor = w.iter().all(|&v| small(v)) && w.iter().any(|&v| cx.g.degree(v) == 3 || cx.threes(v) >= 2);
    for i in 0..4 {
        let v = w[i];
        if !small(v) && (small(w[(i + 1) % 4]) || small(w[(i + 3) % 4])) {
            class.rich.push(v);
        }
    }
    use Cat::{Big as B, Four as F, Three as T};
    class.very_light = !matches(&cats, [B, T, F, T]).is_empty();
    let heavy_four = matches(&cats, [B, F, B, T]).iter().any(|idx| cx.threes(w[idx[1]]) >= 2);
    class.light = class.very_light
        || !matches(&cats, [B, T, B, T]).is_empty()
        || heavy_four
        || !matches(&cats, [B, F, F, T]).is_empty()
        || !matches(&cats, [B, F, T, F]).is_empty();
    class.big_big_four_three = !matches(&cats, [B, B, F, T]).is_empty();
    class
}

pub fn classify_all(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Vec<FaceClass> {
    let cx = Ctx { g, c };
    (0..g.faces().len()).map(|f| classify(&cx, f)).collect()
}

/// R0, R1 and R2 applied to `ch0`.
pub fn apply_r0_r1_r2<T: ExactScalar>(
    g: &PlanarGraph,
    c: &BTreeSet<Vertex>,
    ch0: &ChargeMap<T>,
) -> Result<ChargeMap<T>> {
    if ch0.stage != Stage::Ch0 {
        return Err(Error::precondition("R0 to R2 expect initial charges"));
    }
    let cx = ctx_check(g, c)?;
    let classes = classify_all(g, c);
    let third = T::frac(1, 3);
    let sixth = T::frac(1, 6);
    let mut ch = ch0.clone();
    ch.stage = Stage::Ch1;
    for face in g.faces() {
        let f = face.id;
        if cx.is_outer(f) {
            continue;
        }
        for (prev, v, _next) in face.angles() {
            let d = g.degree(v);
            // R0
            if (cx.off(v) && d == 3) || (!cx.off(v) && d == 2) {
                ch.move_face_to_vertex(f, v, &third);
            }
            // R1
            if cx.off(v) && d == 4 {
                let rot = g.neighbors(v);
                let i = rot.iter().position(|&x| x == prev).expect("walk follows edges");
                debug_assert_eq!(g.angle_face(v, i), f);
                let (v3, v4) = (rot[(i + 2) % 4], rot[(i + 3) % 4]);
                if [v3, v4].iter().all(|&x| cx.off(x) && g.degree(x) == 3) {
                    ch.move_face_to_face(f, g.angle_face(v, (i + 2) % 4), &sixth);
                }
            }
        }
        // R2
        for (u, v) in face.darts() {
            let other = g.face_of_dart(v, u).expect("twin dart");
            if other == f || !classes[other].poor {
                continue;
            }
            let ok = |x: Vertex| cx.off(x) && g.degree(x) == 4 && cx.threes(x) < 2;
            if ok(u) && ok(v) {
                ch.move_face_to_face(f, other, &sixth);
            }
        }
    }
    Ok(ch)
}

/// A negative 4-face with no rich vertex to pay for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unpaid<T> {
    pub face: FaceId,
    pub charge: T,
}

fn r3<T: ExactScalar>(ch1: &ChargeMap<T>, classes: &[FaceClass]) -> (ChargeMap<T>, Vec<Unpaid<T>>) {
    let mut ch = ch1.clone();
    ch.stage = Stage::Ch2;
    let mut unpaid = Vec::new();
    for class in classes.iter().filter(|k| k.cycle.is_some()) {
        let x = &ch1.face[class.face];
        if !x.is_negative() {
            continue;
        }
        if class.rich.is_empty() {
            unpaid.push(Unpaid { face: class.face, charge: x.clone() });
            continue;
        }
        let share = -x.clone() / T::frac(class.n_r() as i64, 1);
        for &v in &class.rich {
            ch.move_vertex_to_face(v, class.face, &share);
        }
    }
    (ch, unpaid)
}

/// R3: every rich vertex of a negative 4-face pays an equal share.
pub fn apply_r3<T: ExactScalar>(ch1: &ChargeMap<T>, classes: &[FaceClass]) -> Result<ChargeMap<T>> {
    if ch1.stage != Stage::Ch1 {
        return Err(Error::precondition("R3 expects charges after R0 to R2"));
    }
    let (ch, unpaid) = r3(ch1, classes);
    match unpaid.first() {
        Some(u) => Err(Error::NoRichVertexOnNegativeFace { face: u.face, charge: u.charge.to_pq() }),
        None => Ok(ch),
    }
}

/// Which case of the 4-face audit a face falls into after R0 to R2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bucket {
    Nonnegative,
    VeryLight,
    Light,
    GoodNeighbor,
    OutOfBucket,
}

impl Bucket {
    pub fn name(self) -> &'static str {
        match self {
            Bucket::Nonnegative => "nonnegative",
            Bucket::VeryLight => "very-light",
            Bucket::Light => "light",
            Bucket::GoodNeighbor => "good-neighbor",
            Bucket::OutOfBucket => "out-of-bucket",
        }
    }
}

/// Every rich vertex has a good neighbor on the face using no bud, which
/// is also excellent unless the face is a (B,B,4,3)-face.
fn rich_have_good_neighbors(cx: &Ctx, class: &FaceClass) -> bool {
    let w = class.cycle.expect("4-face");
    class.rich.iter().all(|&v| {
        let i = w.iter().position(|&x| x == v).expect("rich vertex on face");
        let stalks = find_stalks(cx.g, cx.c, v);
        [w[(i + 1) % 4], w[(i + 3) % 4]].iter().any(|&u| {
            stalks.iter().any(|s| s.root() == u && s.kind != StalkKind::C)
                && (class.big_big_four_three || is_excellent(cx.g, cx.c, v, u).is_some())
        })
    })
}

fn bucket_of<T: ExactScalar>(cx: &Ctx, class: &FaceClass, ch1: &T) -> Bucket {
    if !ch1.is_negative() {
        return Bucket::Nonnegative;
    }
    let nr = class.n_r() as i64;
    if class.very_light && *ch1 == T::frac(-nr, 2) {
        return Bucket::VeryLight;
    }
    if class.light && T::frac(-nr, 3) <= *ch1 && *ch1 < T::frac(-nr, 6) {
        return Bucket::Light;
    }
    if T::frac(-nr, 6) <= *ch1 && rich_have_good_neighbors(cx, class) {
        return Bucket::GoodNeighbor;
    }
    Bucket::OutOfBucket
}

/// Largest stalk configuration that still excuses a face from the audit.
pub const LOCAL_CONFIG_LIMIT: usize = 19;

/// A face is excused from the audit when a reducible configuration touches
/// it: an adjacent pair of degree-3 vertices off `C` meeting the face, a
/// stalk configuration of at most [`LOCAL_CONFIG_LIMIT`] vertices centered
/// on it, or a two-square configuration using it.
fn excused(cx: &Ctx, class: &FaceClass, squares: &[BTreeSet<Vertex>]) -> bool {
    let w = class.cycle.expect("4-face");
    let three = |v: Vertex| cx.off(v) && cx.g.degree(v) == 3;
    let set: BTreeSet<Vertex> = w.iter().copied().collect();
    w.iter().any(|&v| three(v) && cx.g.neighbors(v).iter().any(|&u| three(u)))
        || w.iter().any(|&v| find_mainredu_at(cx.g, cx.c, v).is_some_and(|k| k.len() <= LOCAL_CONFIG_LIMIT))
        || squares.contains(&set)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceReport<T> {
    pub face: FaceId,
    pub len: usize,
    pub outer: bool,
    pub class: FaceClass,
    pub bucket: Option<Bucket>,
    /// Out of every bucket but next to a configuration.
    pub excused: bool,
    pub ch1: T,
    pub ch2: T,
}

impl<T> FaceReport<T> {
    pub fn tags(&self) -> String {
        let mut t = vec![if self.outer { "outer".to_string() } else { format!("len{}", self.len) }];
        t.extend(self.class.tags());
        if let Some(b) = self.bucket {
            t.push(format!("bucket={}", b.name()));
        }
        if self.excused {
            t.push("excused".to_string());
        }
        t.join(",")
    }
}

/// Everything the ledger computed on one disk instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DischargeReport<T> {
    pub cycle_len: usize,
    pub totals: [T; 3],
    pub negative_vertices: Vec<(Vertex, T)>,
    pub negative_faces: Vec<(FaceId, T)>,
    pub faces: Vec<FaceReport<T>>,
    pub unpaid: Vec<Unpaid<T>>,
    pub ch2: ChargeMap<T>,
}

impl<T: ExactScalar> DischargeReport<T> {
    pub fn total(&self) -> &T {
        &self.totals[0]
    }

    /// The three totals agree and equal `-4 + 2|C|/3`.
    pub fn is_conserved(&self) -> bool {
        let expected = T::frac(2 * self.cycle_len as i64 - 12, 3);
        self.totals.iter().all(|t| *t == expected)
    }

    pub fn count(&self, b: Bucket) -> usize {
        self.faces.iter().filter(|f| f.bucket == Some(b)).count()
    }

    /// Out-of-bucket faces with no configuration nearby.
    pub fn unexcused(&self) -> usize {
        self.faces.iter().filter(|f| f.bucket == Some(Bucket::OutOfBucket) && !f.excused).count()
    }

    /// Inner 4-faces with negative final charge.
    pub fn negative_four_faces(&self) -> usize {
        self.faces.iter().filter(|f| f.class.cycle.is_some() && f.ch2.is_negative()).count()
    }
}

impl<T: ExactScalar> Display for DischargeReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total {}", self.total().to_pq())?;
        for (v, x) in &self.negative_vertices {
            writeln!(f, "neg vertex {v} {}", x.to_pq())?;
        }
        for (id, x) in &self.negative_faces {
            writeln!(f, "neg face {id} {}", x.to_pq())?;
        }
        for r in &self.faces {
            writeln!(f, "face {} class {} ch1 {} ch2 {}", r.face, r.tags(), r.ch1.to_pq(), r.ch2.to_pq())?;
        }
        for u in &self.unpaid {
            writeln!(f, "unpaid face {} {}", u.face, u.charge.to_pq())?;
        }
        for b in [Bucket::Nonnegative, Bucket::VeryLight, Bucket::Light, Bucket::GoodNeighbor, Bucket::OutOfBucket] {
            writeln!(f, "audit {} {}", b.name(), self.count(b))?;
        }
        writeln!(f, "audit unexcused {}", self.unexcused())?;
        Ok(())
    }
}

/// Runs the whole ledger on a disk graph whose outer face is bounded by
/// `c`. Negative final charges are reported, not treated as errors.
pub fn verify_with<T: ExactScalar>(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<DischargeReport<T>> {
    let cx = ctx_check(g, c)?;
    if let Some(t) = g.find_triangle() {
        return Err(Error::NotTriangleFree(t));
    }
    if let Some(v) = g.vertices().find(|&v| cx.off(v) && g.degree(v) < 3) {
        return Err(Error::precondition(format!("vertex {v} off the outer cycle has degree {}", g.degree(v))));
    }
    let ch0 = initial_charges::<T>(g, c)?;
    let ch1 = apply_r0_r1_r2(g, c, &ch0)?;
    let classes = classify_all(g, c);
    let (ch2, unpaid) = r3(&ch1, &classes);
    let squares: Vec<BTreeSet<Vertex>> =
        all_spec4(g, c).iter().flat_map(|k| k.faces.iter().map(|f| f.iter().copied().collect())).collect();
    let faces = classes
        .into_iter()
        .map(|class| {
            let id = class.face;
            let bucket = class.cycle.map(|_| bucket_of(&cx, &class, &ch1.face[id]));
            let excused = bucket == Some(Bucket::OutOfBucket) && excused(&cx, &class, &squares);
            FaceReport {
                face: id,
                len: g.face(id).len(),
                outer: cx.is_outer(id),
                class,
                bucket,
                excused,
                ch1: ch1.face[id].clone(),
                ch2: ch2.face[id].clone(),
            }
        })
        .collect();
    let negative_vertices = ch2.vertex.iter().filter(|(_, x)| x.is_negative()).map(|(&v, x)| (v, x.clone())).collect();
    let negative_faces =
        ch2.face.iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(i, x)| (i, x.clone())).collect();
    Ok(DischargeReport {
        cycle_len: c.len(),
        totals: [ch0.total(), ch1.total(), ch2.total()],
        negative_vertices,
        negative_faces,
        faces,
        unpaid,
        ch2,
    })
}

/// [`verify_with`] on the default charge type.
pub fn verify(g: &PlanarGraph, c: &BTreeSet<Vertex>) -> Result<DischargeReport<crate::Charge>> {
    verify_with(g, c)
}

#[cfg(test)]
mod tests;
