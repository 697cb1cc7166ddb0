//! NSGA-II and NSGA-III generational loops with full history recording.

mod operators;
mod reference;
mod run;
mod selection;
mod sorting;

use std::fmt;
use std::str::FromStr;

pub use operators::{
    polynomial_mutation, polynomial_perturb, sbx_crossover, sbx_offspring, sbx_spread,
};
pub use reference::{binomial, das_dennis, direction_count, ReferenceDirectionSet, MAX_DIRECTIONS};
pub use run::{default_partitions, default_population_size, run, RunRng, RNG_ALGORITHM};
pub use selection::{nsga2_select, nsga3_select, Survivors};
pub use sorting::{crowding_distance, fast_nondominated_sort, ranks_from_fronts};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Nsga2,
    Nsga3,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Nsga3 => "nsga3",
        }
    }

    /// NSGA-II for up to three objectives, NSGA-III beyond.
    pub fn default_for(num_objectives: usize) -> Self {
        if num_objectives <= 3 {
            Algorithm::Nsga2
        } else {
            Algorithm::Nsga3
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nsga2" => Ok(Algorithm::Nsga2),
            "nsga3" => Ok(Algorithm::Nsga3),
            other => Err(Error::config(format!(
                "unknown algorithm '{other}' (expected nsga2 or nsga3)"
            ))),
        }
    }
}

/// Variation operator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorConfig {
    pub crossover_probability: f64,
    /// Probability of mutating each decision variable.
    pub mutation_probability: f64,
    pub sbx_eta: f64,
    pub pm_eta: f64,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        Self {
            crossover_probability: 0.8,
            mutation_probability: 0.1,
            sbx_eta: 15.0,
            pm_eta: 7.0,
        }
    }
}

impl OperatorConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("crossover_probability", self.crossover_probability),
            ("mutation_probability", self.mutation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::config(format!("{name} must lie in [0, 1], got {p}")));
            }
        }
        for (name, eta) in [("sbx_eta", self.sbx_eta), ("pm_eta", self.pm_eta)] {
            if !(eta > 0.0 && eta.is_finite()) {
                return Err(Error::config(format!("{name} must be positive, got {eta}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub population_size: usize,
    pub evaluation_budget: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    /// Das-Dennis partitions for NSGA-III; `None` picks [`default_partitions`].
    pub partitions: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return Err(Error::config(format!(
                "population size must be even and at least 4, got {}",
                self.population_size
            )));
        }
        if self.evaluation_budget < self.population_size {
            return Err(Error::config(format!(
                "evaluation budget {} is smaller than the population size {}",
                self.evaluation_budget, self.population_size
            )));
        }
        Ok(())
    }
}
