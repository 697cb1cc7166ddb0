//! Optimise DTLZ2 with NSGA-II and report convergence to the unit sphere.
//!
//! cargo run --release --example optimise_dtlz -- [problem] [objectives] [seed]

use evohist::optimizer::{self, default_population_size, Algorithm, OperatorConfig, RunConfig};
use evohist::problems::{Problem, ProblemSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let problem: Problem = args.next().as_deref().unwrap_or("dtlz2").parse()?;
    let m: usize = args.next().map_or(Ok(3), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(42), |s| s.parse())?;

    let spec = ProblemSpec::with_default_k(problem, m)?;
    let cfg = RunConfig {
        population_size: default_population_size(m),
        evaluation_budget: 30_000,
        seed,
        algorithm: Algorithm::default_for(m),
        partitions: None,
    };
    let history = optimizer::run(&spec, &cfg, &OperatorConfig::default())?;

    println!("{} M={m} D={} {}: {} generations", spec.name(), spec.num_variables(), cfg.algorithm, history.num_generations());
    for record in history.generations.iter().step_by(20).chain(history.last()) {
        let mut residuals: Vec<f64> =
            record.objectives().map(|y| spec.front_residual(y)).collect::<Result<_, _>>()?;
        residuals.sort_by(f64::total_cmp);
        println!("  gen {:>4}  median front residual {:.4}", record.generation, residuals[residuals.len() / 2]);
    }
    Ok(())
}
