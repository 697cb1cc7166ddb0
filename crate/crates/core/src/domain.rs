//! Domain types shared across the crate and the Pareto-dominance primitives.
//!
//! All objectives are minimised. Comparisons are exact: two equal objective
//! vectors never dominate each other, so duplicates may co-exist in a
//! non-dominated set.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::optimizer::{Algorithm, OperatorConfig};

/// A point of the search space, every component in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector(Vec<f64>);

impl DecisionVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Domain { index, value });
        }
        Ok(Self(values))
    }

    /// Builds a vector by clamping every component into the unit box.
    pub fn clamped(mut values: Vec<f64>) -> Self {
        for v in &mut values {
            *v = v.clamp(0.0, 1.0);
        }
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for DecisionVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// A point of the objective space; all components finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::contract(format!(
                "objective {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// One candidate solution: a decision vector and its evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: DecisionVector,
    pub y: ObjectiveVector,
}

/// The full population of one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub members: Vec<Individual>,
}

impl GenerationRecord {
    pub fn objectives(&self) -> impl Iterator<Item = &[f64]> {
        self.members.iter().map(|m| m.y.as_slice())
    }

    pub fn decisions(&self) -> impl Iterator<Item = &[f64]> {
        self.members.iter().map(|m| m.x.as_slice())
    }
}

/// Run metadata plus the ordered sequence of generation populations,
/// generation 0 being the initial population.
#[derive(Debug, Clone, PartialEq)]
pub struct RunHistory {
    pub problem_name: String,
    pub num_objectives: usize,
    pub num_variables: usize,
    pub algorithm: Algorithm,
    pub population_size: usize,
    pub evaluation_budget: usize,
    pub seed: u64,
    pub operators: OperatorConfig,
    pub generations: Vec<GenerationRecord>,
}

impl RunHistory {
    pub fn num_generations(&self) -> usize {
        self.generations.len()
    }

    pub fn last(&self) -> Option<&GenerationRecord> {
        self.generations.last()
    }

    /// Checks the structural invariants: generation indices `0..n`, uniform
    /// population size and vector lengths.
    pub fn validate(&self) -> Result<()> {
        if self.num_objectives < 2 {
            return Err(Error::contract("a run needs at least 2 objectives"));
        }
        if self.num_variables < self.num_objectives {
            return Err(Error::contract("D must be at least M"));
        }
        if self.population_size < 2 {
            return Err(Error::contract("population size must be at least 2"));
        }
        for (t, record) in self.generations.iter().enumerate() {
            if record.generation != t {
                return Err(Error::contract(format!(
                    "generation at position {t} carries index {}",
                    record.generation
                )));
            }
            if record.members.len() != self.population_size {
                return Err(Error::contract(format!(
                    "generation {t} has {} members, expected {}",
                    record.members.len(),
                    self.population_size
                )));
            }
            for m in &record.members {
                if m.x.len() != self.num_variables || m.y.len() != self.num_objectives {
                    return Err(Error::contract(format!(
                        "generation {t} has a member of the wrong dimensionality"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Pareto dominance for minimisation: `a` is no worse than `b` everywhere and
/// strictly better somewhere.
pub fn dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::contract(format!(
            "cannot compare objective vectors of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(dominates_unchecked(a, b))
}

#[inline]
pub(crate) fn dominates_unchecked(a: &[f64], b: &[f64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Indices of the points not dominated by any other point, ascending.
pub fn non_dominated_subset<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<usize>> {
    let first = points
        .first()
        .ok_or_else(|| Error::contract("non-dominated subset of an empty set"))?;
    let m = first.as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != m) {
        return Err(Error::contract("points have differing lengths"));
    }
    Ok((0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .any(|q| dominates_unchecked(q.as_ref(), points[i].as_ref()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_examples() {
        assert!(dominates(&[1.0, 2.0, 3.0], &[2.0, 2.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(!dominates(&[1.0, 3.0], &[3.0, 1.0]).unwrap());
        assert!(!dominates(&[3.0, 1.0], &[1.0, 3.0]).unwrap());
    }

    #[test]
    fn dominance_length_mismatch() {
        assert!(matches!(
            dominates(&[1.0], &[1.0, 2.0]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn subset_examples() {
        assert_eq!(non_dominated_subset(&[vec![1.0, 1.0]]).unwrap(), vec![0]);
        let pts = vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        assert_eq!(non_dominated_subset(&pts).unwrap(), vec![0, 1]);
        let empty: Vec<Vec<f64>> = Vec::new();
        assert!(non_dominated_subset(&empty).is_err());
    }

    #[test]
    fn duplicates_coexist() {
        let pts = vec![vec![0.5, 0.5], vec![0.5, 0.5], vec![0.6, 0.6]];
        assert_eq!(non_dominated_subset(&pts).unwrap(), vec![0, 1]);
    }

    #[test]
    fn vector_constructors() {
        assert!(matches!(
            DecisionVector::new(vec![0.0, 1.5]),
            Err(Error::Domain { index: 1, .. })
        ));
        assert_eq!(DecisionVector::clamped(vec![-0.1, 1.2]).as_slice(), &[0.0, 1.0]);
        assert!(ObjectiveVector::new(vec![1.0, f64::NAN]).is_err());
    }
}
