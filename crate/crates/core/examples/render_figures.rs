//! Embed a DTLZ7 history in both spaces and draw the SVG figures.
//!
//! cargo run --release --example render_figures -- [output-dir]

use evohist::embedding::{embed_history, Space, DEFAULT_MAX_POINTS};
use evohist::emit::{render_history_figure, render_hv_figure, FigureOptions};
use evohist::metrics::{exploration_profile, hypervolume_trace, ReferencePolicy};
use evohist::optimizer::{self, Algorithm, OperatorConfig, RunConfig};
use evohist::problems::{Problem, ProblemSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).map_or_else(|| std::env::temp_dir().join("evohist-figures"), Into::into);
    std::fs::create_dir_all(&out)?;

    let spec = ProblemSpec::with_default_k(Problem::Dtlz7, 3)?;
    let cfg = RunConfig {
        population_size: 92,
        evaluation_budget: 20_000,
        seed: 42,
        algorithm: Algorithm::Nsga2,
        partitions: None,
    };
    let history = optimizer::run(&spec, &cfg, &OperatorConfig::default())?;
    let opts = FigureOptions::default();

    let profile = exploration_profile(&history, Space::Search)?;
    for space in [Space::Search, Space::Objective] {
        let embedding = embed_history(&history, space, DEFAULT_MAX_POINTS)?;
        let path = out.join(format!("{space}.svg"));
        std::fs::write(&path, render_history_figure(&embedding, &profile, &opts)?)?;
        println!("{} ({} points, stride {})", path.display(), embedding.points.len(), embedding.stride);
    }
    let trace = hypervolume_trace(&history, &ReferencePolicy::Auto)?;
    let path = out.join("hv.svg");
    std::fs::write(&path, render_hv_figure(&trace, &opts)?)?;
    println!("{}", path.display());
    Ok(())
}
