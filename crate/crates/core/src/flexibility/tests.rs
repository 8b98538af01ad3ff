use super::*;
use crate::gen;
use num_bigint::BigInt;
use num_traits::Zero;

fn four(g: &PlanarGraph) -> ListAssignment {
    gen::uniform_lists(g, &[1, 2, 3, 4])
}

/// Independent oracle: every element of the product of the lists.
fn brute_colorings(g: &PlanarGraph, l: &ListAssignment) -> Vec<Coloring> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut partial = vec![Coloring::new(g.capacity())];
    for &v in &vs {
        let mut next = Vec::new();
        for c in &partial {
            for &col in l.get(v) {
                let mut d = c.clone();
                d.set(v, col);
                next.push(d);
            }
        }
        partial = next;
    }
    partial.into_iter().filter(|c| c.is_valid(g, l)).collect()
}

#[test]
fn epsilon_values() {
    let e = theoretical_epsilon(4, 31).unwrap();
    assert_eq!(e, BigRational::new(BigInt::one(), BigInt::one() << 186));
    assert_eq!(theoretical_epsilon(4, 1).unwrap(), BigRational::new(1.into(), 64.into()));
    assert_eq!(theoretical_epsilon(3, 1).unwrap(), BigRational::new(1.into(), 9.into()));
    assert!(theoretical_epsilon(2, 1).is_err());
    assert!(theoretical_epsilon(4, 0).is_err());
}

#[test]
fn empty_graph_gives_empty_coloring() {
    let g = PlanarGraph::from_rotation(Vec::new()).unwrap();
    let c = sample_coloring(&g, &ListAssignment::default(), 1).unwrap();
    assert_eq!(c.iter().count(), 0);
}

#[test]
fn single_vertex_is_uniform() {
    let g = gen::path(1);
    let stats = estimate_probabilities(&g, &four(&g), 10_000, 0).unwrap();
    for n in stats.counts.values() {
        assert!((2200..=2800).contains(n), "{stats}");
    }
    let p = stats.min_empirical_prob().unwrap();
    assert!(p >= Ratio::new(22, 100) && p <= Ratio::new(28, 100));
    // chi-square with 3 degrees of freedom, far below the 0.1% point 16.27
    let chi: f64 = stats.counts.values().map(|&n| (n as f64 - 2500.0).powi(2) / 2500.0).sum();
    assert!(chi < 16.27, "{chi}");
}

#[test]
fn samples_are_proper_and_deterministic() {
    for g in [gen::cycle(4), gen::cube(), gen::grid(3, 4), gen::nested_cubes()] {
        let l = four(&g);
        let peel = Peeling::new(&g).unwrap();
        let mut covered: Vec<Vertex> = peel.blocks().iter().flat_map(|b| b.vertices.clone()).collect();
        covered.sort_unstable();
        assert_eq!(covered, g.vertices().collect::<Vec<_>>());
        for seed in 0..50 {
            let c = peel.sample(&l, seed).unwrap();
            assert!(c.is_valid(&g, &l));
            assert_eq!(c, sample_coloring(&g, &l, seed).unwrap());
        }
    }
}

#[test]
fn stats_rows_sum_to_trials_and_merge() {
    let g = gen::cube();
    let l = four(&g);
    let all = estimate_probabilities(&g, &l, 400, 5).unwrap();
    assert!(all.row_sums().values().all(|&s| s == 400));
    let a = estimate_probabilities(&g, &l, 150, 5).unwrap();
    let b = estimate_probabilities(&g, &l, 250, 155).unwrap();
    assert_eq!(a.merge(b), all);
    assert!(all.min_empirical_prob().unwrap() > Ratio::zero());
}

#[test]
fn blocks_are_uniform_given_the_rest() {
    // the last block is colored first, from the full lists
    let g = gen::cycle(4);
    let l = four(&g);
    let peel = Peeling::new(&g).unwrap();
    let last = peel.blocks().last().unwrap();
    let sub = g.induced_subgraph(last.vertices.iter().copied());
    let expected = brute_colorings(&sub, &l).len() as f64;
    let mut seen = BTreeMap::new();
    let trials = 20_000;
    for seed in 0..trials {
        let c = peel.sample(&l, seed).unwrap();
        let key: Vec<Color> = last.vertices.iter().map(|&v| c.get(v).unwrap()).collect();
        *seen.entry(key).or_insert(0u32) += 1;
    }
    assert_eq!(seen.len() as f64, expected);
    let mean = trials as f64 / expected;
    for n in seen.values() {
        assert!((f64::from(*n) - mean).abs() < 0.2 * mean, "{seen:?}");
    }
}

#[test]
fn small_lists_are_rejected() {
    let g = gen::cycle(4);
    let l = gen::uniform_lists(&g, &[1, 2, 3]);
    assert!(matches!(sample_coloring(&g, &l, 0), Err(Error::PreconditionViolated(_))));
}

#[test]
fn tight_budget_is_reported() {
    let g = gen::path(1);
    let peel = Peeling::new(&g).unwrap().with_budget(2);
    assert_eq!(peel.sample(&four(&g), 0), Err(Error::BudgetExceeded(4)));
}

#[test]
fn requests() {
    let g = gen::cube();
    let l = four(&g);
    let one = Request::from([(3, 2)]);
    let out = satisfy_request(&g, &l, &one, 1000, 0).unwrap();
    assert_eq!(out.fraction, Ratio::one());
    assert_eq!(out.best.get(3), Some(2));
    assert_eq!(out.best, sample_coloring(&g, &l, out.seed).unwrap());

    let none = satisfy_request(&g, &l, &Request::new(), 10, 0).unwrap();
    assert_eq!(none.fraction, Ratio::one());

    // far ends of a path: some coloring honors both
    let p = gen::path(9);
    let lp = four(&p);
    let r = Request::from([(0, 1), (8, 1)]);
    assert!(brute_colorings(&p, &lp).iter().any(|c| c.get(0) == Some(1) && c.get(8) == Some(1)));
    assert_eq!(satisfy_request(&p, &lp, &r, 1000, 3).unwrap().fraction, Ratio::one());

    assert!(satisfy_request(&g, &l, &Request::from([(3, 9)]), 10, 0).is_err());
    assert!(matches!(satisfy_request(&g, &l, &Request::from([(30, 1)]), 10, 0), Err(Error::InvalidVertex(30))));
}

#[test]
fn uniform_weights_give_a_quarter() {
    let g = gen::grid(3, 3);
    let l = four(&g);
    let w: WeightedRequest<BigRational> =
        g.vertices().flat_map(|v| (1..=4).map(move |c| ((v, c), BigRational::new(3.into(), 7.into())))).collect();
    for seed in 0..20 {
        let out = satisfy_weighted(&g, &l, &w, 1, seed).unwrap();
        assert_eq!(out.fraction, BigRational::new(1.into(), 4.into()));
    }
}

#[test]
fn single_weight_is_a_request() {
    let g = gen::cube();
    let l = four(&g);
    let w: WeightedRequest<Ratio<i64>> = [((5, 4), Ratio::from_integer(2))].into();
    let weighted = satisfy_weighted(&g, &l, &w, 300, 9).unwrap();
    let plain = satisfy_request(&g, &l, &Request::from([(5, 4)]), 300, 9).unwrap();
    assert_eq!(weighted.fraction, Ratio::one());
    assert_eq!((weighted.seed, weighted.best), (plain.seed, plain.best));
}

#[test]
fn random_weights_near_exact_best() {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = gen::grid(2, 5);
    let l = gen::random_lists(&g, 4, 6, &mut rng);
    let w: WeightedRequest<Ratio<i64>> = g
        .vertices()
        .flat_map(|v| l.get(v).to_vec().into_iter().map(move |c| (v, c)))
        .map(|key| (key, Ratio::from_integer(rng.gen_range(0..100))))
        .collect();
    let value = |c: &Coloring| c.iter().map(|(v, col)| w[&(v, col)]).sum::<Ratio<i64>>();
    let exact = brute_colorings(&g, &l).iter().map(value).max().unwrap();
    let out = satisfy_weighted(&g, &l, &w, 10_000, 0).unwrap();
    assert_eq!(out.score, value(&out.best));
    assert!(out.score >= exact * Ratio::new(9, 10), "{} vs {exact}", out.score);
}

#[test]
fn negative_weights_are_rejected() {
    let g = gen::path(2);
    let w: WeightedRequest<Ratio<i64>> = [((0, 1), Ratio::from_integer(-1))].into();
    assert!(satisfy_weighted(&g, &four(&g), &w, 5, 0).is_err());
}

#[test]
fn avoidance_of_one_color() {
    let g = gen::path(1);
    let p = estimate_avoidance(&g, &four(&g), &[(0, 1)], 4000, 2).unwrap();
    assert!(p > Ratio::new(70, 100) && p < Ratio::new(80, 100));
}

#[test]
fn counting_bound() {
    for g in [gen::path(1), gen::cycle(4), gen::cube()] {
        let l = four(&g);
        let check = check_counting_bound(&g, &l, 31).unwrap();
        assert_eq!(check.count, brute_colorings(&g, &l).len() as u128);
        assert!(check.holds);
        assert!(check.count as f64 >= check.bound());
    }
    assert_eq!(check_counting_bound(&gen::path(1), &four(&gen::path(1)), 31).unwrap().count, 4);
    // one coloring on 40 vertices falls short of 2^(40/31)
    let g = gen::path(40);
    let l = ListAssignment::from_lists((0..40).map(|i| vec![i % 2]).collect());
    let check = check_counting_bound(&g, &l, 31).unwrap();
    assert_eq!(check.count, 1);
    assert!(!check.holds);
}
