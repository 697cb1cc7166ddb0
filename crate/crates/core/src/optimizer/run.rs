use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::operators::{polynomial_mutation, sbx_crossover};
use super::reference::{das_dennis, direction_count, ReferenceDirectionSet};
use super::selection::{nsga2_select, nsga3_select};
use super::sorting::{crowding_distance, fast_nondominated_sort};
use super::{Algorithm, OperatorConfig, RunConfig};
use crate::domain::{DecisionVector, GenerationRecord, Individual, RunHistory};
use crate::error::{Error, Result};
use crate::problems::ProblemSpec;

/// The single random stream of a run, seeded with `ChaCha8Rng::seed_from_u64`.
pub type RunRng = ChaCha8Rng;

/// Identifier of the generator, written to history headers.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64";

/// Das-Dennis partitions used by default for `m` objectives.
pub fn default_partitions(m: usize) -> usize {
    match m {
        0..=2 => 99,
        3 => 12,
        4 => 8,
        5 => 6,
        _ => 4,
    }
}

/// Default population: the default direction count rounded up to a multiple of 4.
pub fn default_population_size(m: usize) -> usize {
    let count = direction_count(m, default_partitions(m)).unwrap_or(u128::MAX);
    let count = usize::try_from(count).unwrap_or(usize::MAX / 2);
    count.div_ceil(4) * 4
}

fn reference_directions(m: usize, config: &RunConfig) -> Result<ReferenceDirectionSet> {
    let pop = config.population_size as u128;
    let p = match config.partitions {
        Some(p) => p,
        None => {
            let preferred = default_partitions(m);
            if direction_count(m, preferred).is_some_and(|c| c <= pop) {
                preferred
            } else {
                (1..preferred)
                    .rev()
                    .find(|&p| direction_count(m, p).is_some_and(|c| c <= pop))
                    .ok_or_else(|| {
                        Error::config(format!(
                            "population {pop} is too small for any reference direction set with {m} objectives"
                        ))
                    })?
            }
        }
    };
    let set = das_dennis(m, p)?;
    if set.len() > config.population_size {
        return Err(Error::config(format!(
            "{} reference directions exceed the population size {}",
            set.len(),
            config.population_size
        )));
    }
    Ok(set)
}

struct Population {
    members: Vec<Individual>,
    rank: Vec<usize>,
    crowding: Vec<f64>,
}

fn evaluate(spec: &ProblemSpec, x: DecisionVector) -> Result<Individual> {
    let y = spec.evaluate(&x)?;
    Ok(Individual { x, y })
}

/// Binary tournament on (rank, crowding distance), ties to the lower index.
fn tournament<R: Rng + ?Sized>(pop: &Population, rng: &mut R) -> usize {
    let n = pop.members.len();
    let a = rng.gen_range(0..n);
    let b = rng.gen_range(0..n);
    let key = |i: usize| (pop.rank[i], std::cmp::Reverse(ordered(pop.crowding[i])), i);
    if key(a) <= key(b) {
        a
    } else {
        b
    }
}

fn ordered(v: f64) -> u64 {
    // monotone map of non-negative floats (including +inf) onto integers
    v.to_bits()
}

/// Runs NSGA-II or NSGA-III and returns every generation, starting with the
/// uniformly random initial population.
///
/// The loop stops as soon as the consumed evaluations reach the budget, so a
/// run performs `ceil(budget / N)` generations of `N` evaluations each.
pub fn run(spec: &ProblemSpec, config: &RunConfig, operators: &OperatorConfig) -> Result<RunHistory> {
    config.validate()?;
    operators.validate()?;
    let m = spec.num_objectives();
    let d = spec.num_variables();
    let n = config.population_size;
    let directions = match config.algorithm {
        Algorithm::Nsga3 => Some(reference_directions(m, config)?),
        Algorithm::Nsga2 => None,
    };

    let mut rng = RunRng::seed_from_u64(config.seed);
    let members = (0..n)
        .map(|_| {
            let x: Vec<f64> = (0..d).map(|_| rng.gen()).collect();
            evaluate(spec, DecisionVector::clamped(x))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut population = {
        let objs: Vec<&[f64]> = members.iter().map(|i| i.y.as_slice()).collect();
        let fronts = fast_nondominated_sort(&objs)?;
        let mut rank = vec![0; n];
        let mut crowding = vec![0.0; n];
        for (r, front) in fronts.iter().enumerate() {
            let pts: Vec<&[f64]> = front.iter().map(|&i| objs[i]).collect();
            for (&i, c) in front.iter().zip(crowding_distance(&pts)?) {
                rank[i] = r;
                crowding[i] = c;
            }
        }
        Population { members, rank, crowding }
    };

    let mut history = RunHistory {
        problem_name: spec.name().to_string(),
        num_objectives: m,
        num_variables: d,
        algorithm: config.algorithm,
        population_size: n,
        evaluation_budget: config.evaluation_budget,
        seed: config.seed,
        operators: *operators,
        generations: vec![GenerationRecord { generation: 0, members: population.members.clone() }],
    };
    let mut evaluations = n;

    while evaluations < config.evaluation_budget {
        let mut offspring = Vec::with_capacity(n);
        while offspring.len() < n {
            let (a, b) = match config.algorithm {
                Algorithm::Nsga2 => (tournament(&population, &mut rng), tournament(&population, &mut rng)),
                Algorithm::Nsga3 => (rng.gen_range(0..n), rng.gen_range(0..n)),
            };
            let (c1, c2) = sbx_crossover(
                &population.members[a].x,
                &population.members[b].x,
                operators,
                &mut rng,
            );
            let c1 = polynomial_mutation(&c1, operators, &mut rng);
            let c2 = polynomial_mutation(&c2, operators, &mut rng);
            offspring.push(evaluate(spec, c1)?);
            if offspring.len() < n {
                offspring.push(evaluate(spec, c2)?);
            }
        }
        evaluations += n;

        let combined: Vec<Individual> = population.members.drain(..).chain(offspring).collect();
        let objs: Vec<&[f64]> = combined.iter().map(|i| i.y.as_slice()).collect();
        population = match &directions {
            None => {
                let s = nsga2_select(&objs, n)?;
                Population {
                    members: s.indices.iter().map(|&i| combined[i].clone()).collect(),
                    rank: s.rank,
                    crowding: s.crowding,
                }
            }
            Some(dirs) => {
                let idx = nsga3_select(&objs, n, dirs, &mut rng)?;
                Population {
                    members: idx.iter().map(|&i| combined[i].clone()).collect(),
                    rank: vec![0; n],
                    crowding: vec![0.0; n],
                }
            }
        };
        history.generations.push(GenerationRecord {
            generation: history.generations.len(),
            members: population.members.clone(),
        });
    }
    Ok(history)
}
