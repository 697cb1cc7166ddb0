use evohist::domain::{dominates, non_dominated_subset, DecisionVector};
use evohist::embedding::{classical_mds, pairwise_sq_distances, Space};
use evohist::emit::{read_history_from, write_history_to};
use evohist::metrics::{hypervolume_exact, ExplorationProfile};
use evohist::optimizer::{
    self, crowding_distance, fast_nondominated_sort, polynomial_mutation, sbx_crossover, Algorithm,
    OperatorConfig, RunConfig,
};
use evohist::problems::{Problem, ProblemSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// small integer grid so ties and equal coordinates are common
fn objective(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0u8..6).prop_map(f64::from), m)
}

fn cloud(m: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(objective(m), 1..max)
}

fn unit(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..=1.0f64, n)
}

fn planar_distances(points: &[[f64; 2]]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            out.push(((points[i][0] - points[j][0]).powi(2) + (points[i][1] - points[j][1]).powi(2)).sqrt());
        }
    }
    out
}

proptest! {
    #[test]
    fn dominance_is_a_strict_partial_order(a in objective(3), b in objective(3), c in objective(3)) {
        prop_assert!(!dominates(&a, &a).unwrap());
        prop_assert!(!(dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap()));
        if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
            prop_assert!(dominates(&a, &c).unwrap());
        }
    }

    #[test]
    fn non_dominated_subset_is_exact(points in cloud(3, 30)) {
        let keep = non_dominated_subset(&points).unwrap();
        prop_assert!(!keep.is_empty());
        for i in 0..points.len() {
            let dominated = points.iter().any(|q| dominates(q, &points[i]).unwrap());
            prop_assert_eq!(keep.contains(&i), !dominated);
        }
    }

    #[test]
    fn fronts_partition_and_respect_dominance(points in cloud(4, 40)) {
        let fronts = fast_nondominated_sort(&points).unwrap();
        let mut rank = vec![usize::MAX; points.len()];
        for (r, f) in fronts.iter().enumerate() {
            prop_assert!(!f.is_empty());
            for &i in f {
                prop_assert_eq!(rank[i], usize::MAX);
                rank[i] = r;
            }
        }
        for i in 0..points.len() {
            for j in 0..points.len() {
                if dominates(&points[i], &points[j]).unwrap() {
                    prop_assert!(rank[i] < rank[j]);
                }
            }
        }
    }

    #[test]
    fn crowding_is_non_negative(points in cloud(3, 20)) {
        let d = crowding_distance(&points).unwrap();
        prop_assert_eq!(d.len(), points.len());
        prop_assert!(d.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn dtlz2_front_is_unit_sphere(position in unit(2)) {
        let spec = ProblemSpec::with_default_k(Problem::Dtlz2, 3).unwrap();
        let mut x = position;
        x.extend(std::iter::repeat_n(0.5, spec.num_variables() - 2));
        let y = spec.evaluate(&x).unwrap();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dtlz1_front_is_simplex(position in unit(4)) {
        let spec = ProblemSpec::with_default_k(Problem::Dtlz1, 5).unwrap();
        let mut x = position;
        x.extend(std::iter::repeat_n(0.5, spec.num_variables() - 4));
        let y = spec.evaluate(&x).unwrap();
        prop_assert!((y.iter().sum::<f64>() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn objectives_are_non_negative(p in 0usize..5, x in unit(14)) {
        let problem = Problem::ALL[p];
        let spec = ProblemSpec::new(problem, 3, 12).unwrap();
        let y = spec.evaluate(&x).unwrap();
        prop_assert!(y.iter().all(|v| v.is_finite() && *v >= 0.0));
    }

    #[test]
    fn operators_stay_in_unit_box(a in unit(8), b in unit(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = OperatorConfig { crossover_probability: 1.0, mutation_probability: 1.0, ..OperatorConfig::default() };
        let (p1, p2) = (DecisionVector::new(a).unwrap(), DecisionVector::new(b).unwrap());
        let (c1, c2) = sbx_crossover(&p1, &p2, &cfg, &mut rng);
        let m = polynomial_mutation(&c1, &cfg, &mut rng);
        for v in c1.iter().chain(c2.iter()).chain(m.iter()) {
            prop_assert!((0.0..=1.0).contains(v));
        }
    }

    #[test]
    fn hypervolume_monotone_under_insertion(
        front in prop::collection::vec(unit(3), 1..8),
        extra in unit(3),
    ) {
        let r = [1.0, 1.0, 1.0];
        let before = hypervolume_exact(&front, &r).unwrap();
        let mut more = front.clone();
        more.push(extra);
        prop_assert!(hypervolume_exact(&more, &r).unwrap() >= before - 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&before));
    }

    #[test]
    fn hypervolume_permutation_invariant(front in prop::collection::vec(unit(4), 1..8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let r = [1.0; 4];
        let mut shuffled = front.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let (a, b) = (hypervolume_exact(&front, &r).unwrap(), hypervolume_exact(&shuffled, &r).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn mds_invariant_under_rigid_motion(
        planar in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 2), 4..20),
        yaw in 0.0..std::f64::consts::TAU,
        tilt in 0.0..std::f64::consts::TAU,
        shift in prop::collection::vec(-5.0..5.0f64, 3),
    ) {
        // rank-2 input, so the planar embedding is determined up to rigid motion
        let points: Vec<Vec<f64>> = planar.iter().map(|p| vec![p[0], p[1], 0.0]).collect();
        let (sy, cy) = yaw.sin_cos();
        let (st, ct) = tilt.sin_cos();
        let moved: Vec<Vec<f64>> = points
            .iter()
            .map(|p| {
                let (x, y) = (cy * p[0] - sy * p[1], sy * p[0] + cy * p[1]);
                vec![x + shift[0], ct * y + shift[1], st * y + shift[2]]
            })
            .collect();
        let a = classical_mds(&pairwise_sq_distances(&points).unwrap()).unwrap();
        let b = classical_mds(&pairwise_sq_distances(&moved).unwrap()).unwrap();
        prop_assert!((a.eigenvalues.0 - b.eigenvalues.0).abs() <= 1e-9 * a.eigenvalues.0.max(1.0));
        for (x, y) in planar_distances(&a.coordinates).iter().zip(planar_distances(&b.coordinates)) {
            prop_assert!((x - y).abs() < 1e-6, "{} vs {}", x, y);
        }
    }

    #[test]
    fn exploration_scores_scale_free(
        clouds in prop::collection::vec(prop::collection::vec(unit(3), 2..10), 1..5),
        scale in 0.01..100.0f64,
    ) {
        let scaled: Vec<Vec<Vec<f64>>> = clouds
            .iter()
            .map(|c| c.iter().map(|p| p.iter().map(|v| v * scale).collect()).collect())
            .collect();
        let a = ExplorationProfile::from_point_clouds(Space::Search, &clouds).unwrap();
        let b = ExplorationProfile::from_point_clouds(Space::Search, &scaled).unwrap();
        for (x, y) in a.scores.iter().flatten().zip(b.scores.iter().flatten()) {
            prop_assert!((0.0..=1.0).contains(x));
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn history_round_trips(seed in any::<u64>(), half_pop in 2usize..8, gens in 1usize..6, p in 0usize..5) {
        let spec = ProblemSpec::with_default_k(Problem::ALL[p], 3).unwrap();
        let pop = 2 * half_pop;
        let cfg = RunConfig {
            population_size: pop,
            evaluation_budget: pop * gens,
            seed,
            algorithm: Algorithm::Nsga2,
            partitions: None,
        };
        let h = optimizer::run(&spec, &cfg, &OperatorConfig::default()).unwrap();
        let mut bytes = Vec::new();
        write_history_to(&h, &mut bytes).unwrap();
        let back = read_history_from(bytes.as_slice()).unwrap();
        prop_assert_eq!(&back, &h);
        let mut again = Vec::new();
        write_history_to(&back, &mut again).unwrap();
        prop_assert_eq!(again, bytes);
    }
}
