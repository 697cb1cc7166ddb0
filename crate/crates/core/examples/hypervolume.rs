//! Exact and Monte Carlo hypervolume, and a per-generation trace.

use evohist::metrics::{hypervolume_exact, hypervolume_mc, hypervolume_trace, ReferencePolicy};
use evohist::optimizer::{self, Algorithm, OperatorConfig, RunConfig};
use evohist::problems::{Problem, ProblemSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> evohist::Result<()> {
    let front = [vec![0.2, 0.6], vec![0.6, 0.2]];
    println!("exact 2-D: {}", hypervolume_exact(&front, &[1.0, 1.0])?);

    let front3 = [vec![0.2, 0.5, 0.7], vec![0.6, 0.1, 0.4], vec![0.4, 0.4, 0.3]];
    let exact = hypervolume_exact(&front3, &[1.0; 3])?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (est, se) = hypervolume_mc(&front3, &[1.0; 3], 1_000_000, &mut rng)?;
    println!("exact 3-D: {exact:.6}  Monte Carlo: {est:.6} +- {se:.6}");

    let spec = ProblemSpec::with_default_k(Problem::Dtlz4, 3)?;
    let cfg = RunConfig {
        population_size: 92,
        evaluation_budget: 20_000,
        seed: 1,
        algorithm: Algorithm::Nsga2,
        partitions: None,
    };
    let history = optimizer::run(&spec, &cfg, &OperatorConfig::default())?;
    let trace = hypervolume_trace(&history, &ReferencePolicy::Fixed(vec![1.1; 3]))?;
    for (g, v) in trace.values.iter().enumerate().step_by(25) {
        println!("  gen {g:>4}  hv {v:.5}");
    }
    Ok(())
}
