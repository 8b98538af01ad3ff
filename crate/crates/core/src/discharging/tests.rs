use super::*;
use crate::configurations::disk_instance;
use crate::gen;
use crate::Charge;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(p: i64, d: i64) -> Charge {
    Charge::new(p, d)
}

fn corpus(count: usize, seed: u64) -> Vec<(PlanarGraph, BTreeSet<Vertex>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g = gen::random_small_free(60, &mut rng);
            let (inner, cycle) = disk_instance(&g).unwrap();
            (inner, cycle.into_iter().collect())
        })
        .collect()
}

fn disk(g: PlanarGraph, cycle: &[Vertex]) -> (PlanarGraph, BTreeSet<Vertex>) {
    (g.with_outer_cycle(cycle).unwrap(), cycle.iter().copied().collect())
}

#[test]
fn initial_totals() {
    let (g, c) = disk(gen::cube(), &[0, 1, 2, 3]);
    let ch0 = initial_charges::<Charge>(&g, &c).unwrap();
    assert_eq!(ch0.total(), q(-4, 3));
    assert_eq!(ch0.vertex[&0], q(2, 3));
    assert_eq!(ch0.vertex[&5], q(-1, 1));

    let (g, c) = disk(gen::cycle(5), &[0, 1, 2, 3, 4]);
    let ch0 = initial_charges::<Charge>(&g, &c).unwrap();
    assert_eq!(ch0.total(), q(-2, 3));
    let r = verify(&g, &c).unwrap();
    assert!(r.to_string().starts_with("total -2/3\n"));
    // degree-2 vertices on C end at zero
    assert!(r.ch2.vertex.values().all(|x| x.is_zero()));
}

#[test]
fn degree_three_vertices_are_paid() {
    let (g, c) = disk(gen::cube(), &[0, 1, 2, 3]);
    let ch0 = initial_charges::<Charge>(&g, &c).unwrap();
    let ch1 = apply_r0_r1_r2(&g, &c, &ch0).unwrap();
    for v in 4..8 {
        assert_eq!(ch1.vertex[&v], q(0, 1));
    }
    assert_eq!(ch1.total(), ch0.total());
    assert!(matches!(apply_r3(&ch0, &classify_all(&g, &c)), Err(Error::PreconditionViolated(_))));
    assert!(matches!(apply_r0_r1_r2(&g, &c, &ch1), Err(Error::PreconditionViolated(_))));
}

/// A 4-cycle `0 1 2 3` whose vertices are brought to the given degrees
/// with leaves; leaves of vertex `i` listed in `deep` get two leaves of
/// their own (degree three).
fn padded_square(degrees: [usize; 4], deep: &[usize]) -> PlanarGraph {
    let mut pts: Vec<(f64, f64)> = vec![(-1.0, 1.0), (1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    for (i, &d) in degrees.iter().enumerate() {
        let (x, y) = pts[i];
        for k in 0..d - 2 {
            let t = y.atan2(x) + 0.5 * (k as f64 - (d - 3) as f64 / 2.0);
            let id = pts.len();
            pts.push((x + t.cos(), y + t.sin()));
            edges.push((i, id));
            if deep.contains(&i) {
                for s in [-0.3, 0.3] {
                    let leaf = pts.len();
                    pts.push((x + 1.3 * (t + s).cos(), y + 1.3 * (t + s).sin()));
                    edges.push((id, leaf));
                }
            }
        }
    }
    gen::from_drawing(&pts, &edges)
}

fn square_face(g: &PlanarGraph) -> FaceId {
    g.faces().iter().find(|f| f.vertex_set() == BTreeSet::from([0, 1, 2, 3])).expect("square is a face").id
}

#[test]
fn face_classes() {
    let none = BTreeSet::new();
    let g = padded_square([5, 3, 4, 3], &[]);
    let k = classify_face(&g, &none, square_face(&g));
    assert!(k.very_light && k.light && !k.poor);
    assert_eq!((k.n_r(), k.pattern_string().unwrap()), (1, "B343".to_string()));

    let g = padded_square([5, 5, 4, 3], &[]);
    let k = classify_face(&g, &none, square_face(&g));
    assert!(!k.light && k.big_big_four_three);
    assert_eq!(k.n_r(), 2);

    let g = padded_square([4, 4, 4, 4], &[0]);
    let k = classify_face(&g, &none, square_face(&g));
    assert!(k.poor && !k.light);
    assert_eq!(k.n_r(), 0);
    let g = padded_square([4, 4, 4, 4], &[]);
    assert!(!classify_face(&g, &none, square_face(&g)).poor);

    // (B,4,B,3) is light only when the 4-vertex has two degree-3 neighbors
    let g = padded_square([5, 4, 5, 3], &[]);
    assert!(!classify_face(&g, &none, square_face(&g)).light);
    let g = padded_square([5, 4, 5, 3], &[1]);
    assert!(classify_face(&g, &none, square_face(&g)).light);

    // membership in C makes a vertex big and rich
    let g = padded_square([3, 3, 4, 3], &[]);
    let k = classify_face(&g, &BTreeSet::from([0]), square_face(&g));
    assert!(k.very_light);
    assert_eq!(k.rich, vec![0]);
}

#[test]
fn ledger_on_corpus() {
    let (mut bucketed, mut unpaid) = (0, 0);
    for (g, c) in corpus(40, 17) {
        let r = verify(&g, &c).unwrap();
        assert!(r.is_conserved(), "{r}");
        let ch0 = initial_charges::<Charge>(&g, &c).unwrap();
        let ch1 = apply_r0_r1_r2(&g, &c, &ch0).unwrap();
        for (v, x) in &ch1.vertex {
            assert!(*x >= ch0.vertex[v].max(q(0, 1)), "vertex {v}");
        }
        for x in r.ch2.vertex.values().chain(r.ch2.face.iter()) {
            assert_eq!(72 % x.denom(), 0);
        }
        for f in &r.faces {
            match f.bucket {
                Some(Bucket::OutOfBucket) => assert!(f.excused, "face {}\n{r}", f.face),
                Some(_) => {
                    bucketed += 1;
                    assert!(!f.ch2.is_negative());
                    if f.ch1.is_negative() {
                        assert!(f.ch2.is_zero() && f.class.n_r() > 0);
                    }
                }
                None => {}
            }
        }
        for u in &r.unpaid {
            unpaid += 1;
            assert!(r.faces[u.face].excused);
        }
        let strict = apply_r3(&ch1, &classify_all(&g, &c));
        assert_eq!(strict.is_err(), !r.unpaid.is_empty());
        if let Ok(ch2) = strict {
            assert_eq!(ch2, r.ch2);
        }
    }
    assert!(bucketed > 100 && unpaid > 0, "{bucketed} {unpaid}");
}

#[test]
fn scalar_types_agree() {
    for (g, c) in corpus(5, 3) {
        let small = verify(&g, &c).unwrap().to_string();
        let big = verify_with::<BigRational>(&g, &c).unwrap().to_string();
        assert_eq!(small, big);
    }
}

#[test]
fn report_lines() {
    let (g, c) = corpus(1, 8).pop().unwrap();
    let text = verify(&g, &c).unwrap().to_string();
    let first = text.lines().next().unwrap();
    assert_eq!(first, format!("total {}/3", 2 * c.len() as i64 - 12));
    for line in text.lines() {
        let w: Vec<&str> = line.split(' ').collect();
        match w[0] {
            "total" => assert_eq!(w.len(), 2),
            "neg" => assert!(w.len() == 4 && (w[1] == "vertex" || w[1] == "face") && w[3].contains('/')),
            "face" => assert!(w.len() == 8 && w[2] == "class" && w[4] == "ch1" && w[6] == "ch2"),
            "unpaid" | "audit" => {}
            other => panic!("unexpected line kind {other}"),
        }
    }
}

#[test]
fn preconditions() {
    let (g, _) = disk(gen::cube(), &[0, 1, 2, 3]);
    assert!(matches!(verify(&g, &BTreeSet::from([4, 5, 6, 7])), Err(Error::PreconditionViolated(_))));
    let grid = gen::grid(3, 3);
    assert!(verify(&grid, &BTreeSet::new()).is_err());
}
