//! Write a run history as JSON lines and read it back bit-for-bit.

use evohist::emit::{read_history, write_history};
use evohist::optimizer::{self, Algorithm, OperatorConfig, RunConfig};
use evohist::problems::{Problem, ProblemSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = ProblemSpec::with_default_k(Problem::Dtlz1, 3)?;
    let cfg = RunConfig {
        population_size: 40,
        evaluation_budget: 2_000,
        seed: 11,
        algorithm: Algorithm::Nsga2,
        partitions: None,
    };
    let history = optimizer::run(&spec, &cfg, &OperatorConfig::default())?;

    let dir = std::env::temp_dir().join("evohist-history-io");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("history.jsonl");
    write_history(&history, &path)?;
    let back = read_history(&path)?;
    println!("{}: {} bytes, {} generations", path.display(), std::fs::metadata(&path)?.len(), back.num_generations());
    println!("identical after round trip: {}", back == history);
    Ok(())
}
