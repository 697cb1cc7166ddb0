//! Exploration-exploitation scores across a run, in both spaces.

use evohist::embedding::Space;
use evohist::metrics::{exploration_fraction, exploration_profile, spearman_correlation};
use evohist::optimizer::{self, Algorithm, OperatorConfig, RunConfig};
use evohist::problems::{Problem, ProblemSpec};

fn main() -> evohist::Result<()> {
    let spec = ProblemSpec::with_default_k(Problem::Dtlz2, 3)?;
    let cfg = RunConfig {
        population_size: 92,
        evaluation_budget: 30_000,
        seed: 42,
        algorithm: Algorithm::Nsga2,
        partitions: None,
    };
    let history = optimizer::run(&spec, &cfg, &OperatorConfig::default())?;

    for space in [Space::Search, Space::Objective] {
        let profile = exploration_profile(&history, space)?;
        let fractions: Vec<f64> = (0..profile.num_generations())
            .map(|t| exploration_fraction(&profile, t))
            .collect::<evohist::Result<_>>()?;
        let generations: Vec<f64> = (0..fractions.len()).map(|t| t as f64).collect();
        println!("{space}: overall median nn distance {:.4e}", profile.overall_median);
        for t in (0..fractions.len()).step_by(50) {
            println!("  gen {t:>4}  exploring {:.2}", fractions[t]);
        }
        match spearman_correlation(&generations, &fractions) {
            Some(rho) => println!("  Spearman(generation, exploring fraction) = {rho:.3}"),
            None => println!("  exploring fraction is constant"),
        }
    }
    Ok(())
}
