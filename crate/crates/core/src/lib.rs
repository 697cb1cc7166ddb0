//! Search-history visualisation for evolutionary multi- and many-objective
//! optimisation.
//!
//! The crate optimises DTLZ benchmark problems with NSGA-II or NSGA-III,
//! records every generation, embeds the concatenated history in two dimensions
//! with classical multidimensional scaling, scores each individual on an
//! exploration-exploitation scale, tracks hypervolume, and renders static SVG
//! figures of the result.
//!
//! ```no_run
//! use evohist::{embedding, metrics, optimizer, problems};
//!
//! let spec = problems::ProblemSpec::with_default_k(problems::Problem::Dtlz2, 3)?;
//! let config = optimizer::RunConfig {
//!     population_size: 92,
//!     evaluation_budget: 9_200,
//!     seed: 42,
//!     algorithm: optimizer::Algorithm::Nsga2,
//!     partitions: None,
//! };
//! let history = optimizer::run(&spec, &config, &optimizer::OperatorConfig::default())?;
//! let embedding = embedding::embed_history(&history, embedding::Space::Objective, 10_000)?;
//! let profile = metrics::exploration_profile(&history, embedding::Space::Search)?;
//! # Ok::<(), evohist::Error>(())
//! ```

pub mod cli;
pub mod domain;
pub mod embedding;
pub mod emit;
mod error;
pub mod metrics;
pub mod optimizer;
pub mod problems;

pub use error::{Error, Result};
