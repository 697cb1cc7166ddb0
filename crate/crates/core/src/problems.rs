//! The DTLZ1-4 and DTLZ7 benchmark problems, scalable in the number of
//! objectives `M`.
//!
//! Decision vectors have `D = k + M - 1` components. The first `M - 1` are
//! position variables; the trailing `k` are distance variables that feed the
//! `g` function and are optimal at 0.5 (0 for DTLZ7).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::domain::ObjectiveVector;
use crate::error::{Error, Result};

/// Exponent applied to the position variables of DTLZ4.
pub const DTLZ4_ALPHA: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Dtlz1,
    Dtlz2,
    Dtlz3,
    Dtlz4,
    Dtlz7,
}

impl Problem {
    pub const ALL: [Problem; 5] = [
        Problem::Dtlz1,
        Problem::Dtlz2,
        Problem::Dtlz3,
        Problem::Dtlz4,
        Problem::Dtlz7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Dtlz1 => "dtlz1",
            Problem::Dtlz2 => "dtlz2",
            Problem::Dtlz3 => "dtlz3",
            Problem::Dtlz4 => "dtlz4",
            Problem::Dtlz7 => "dtlz7",
        }
    }

    /// Default number of distance variables.
    pub fn default_k(self) -> usize {
        match self {
            Problem::Dtlz1 => 5,
            Problem::Dtlz7 => 20,
            _ => 10,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown problem '{s}' (expected one of dtlz1, dtlz2, dtlz3, dtlz4, dtlz7)"
                ))
            })
    }
}

/// A concrete problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemSpec {
    pub problem: Problem,
    num_objectives: usize,
    k: usize,
}

impl ProblemSpec {
    pub fn new(problem: Problem, num_objectives: usize, k: usize) -> Result<Self> {
        if num_objectives < 2 {
            return Err(Error::config("problems need at least 2 objectives"));
        }
        if k == 0 {
            return Err(Error::config("k must be positive"));
        }
        Ok(Self { problem, num_objectives, k })
    }

    /// Instance with the default `k` for the problem.
    pub fn with_default_k(problem: Problem, num_objectives: usize) -> Result<Self> {
        Self::new(problem, num_objectives, problem.default_k())
    }

    pub fn num_objectives(&self) -> usize {
        self.num_objectives
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_variables(&self) -> usize {
        self.k + self.num_objectives - 1
    }

    pub fn name(&self) -> &'static str {
        self.problem.name()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<ObjectiveVector> {
        let d = self.num_variables();
        if x.len() != d {
            return Err(Error::contract(format!(
                "{} expects {d} decision variables, got {}",
                self.name(),
                x.len()
            )));
        }
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::Domain { index, value });
        }
        let values = self.evaluate_unchecked(x);
        ObjectiveVector::new(values)
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let m = self.num_objectives;
        let (pos, dist) = x.split_at(m - 1);
        match self.problem {
            Problem::Dtlz1 => linear_front(pos, g_rastrigin(dist)),
            Problem::Dtlz2 => spherical_front(pos.iter().copied(), m, g_sphere(dist)),
            Problem::Dtlz3 => spherical_front(pos.iter().copied(), m, g_rastrigin(dist)),
            Problem::Dtlz4 => spherical_front(
                pos.iter().map(|&xi| xi.powf(DTLZ4_ALPHA)),
                m,
                g_sphere(dist),
            ),
            Problem::Dtlz7 => dtlz7(pos, dist, m),
        }
    }

    /// Distance-to-front proxy, zero on the Pareto front.
    ///
    /// DTLZ1 uses the plane `sum f = 0.5`, DTLZ2-4 the unit sphere. For DTLZ7
    /// it is the gap between `f_M` and the smallest `f_M` reachable for the
    /// given leading objectives (the `g = 1` surface); this is not a Euclidean
    /// distance to the disconnected front.
    pub fn front_residual(&self, y: &[f64]) -> Result<f64> {
        let m = self.num_objectives;
        if y.len() != m {
            return Err(Error::contract(format!(
                "expected {m} objectives, got {}",
                y.len()
            )));
        }
        Ok(match self.problem {
            Problem::Dtlz1 => (y.iter().sum::<f64>() - 0.5).abs(),
            Problem::Dtlz2 | Problem::Dtlz3 | Problem::Dtlz4 => {
                (y.iter().map(|v| v * v).sum::<f64>().sqrt() - 1.0).abs()
            }
            Problem::Dtlz7 => {
                let lead = &y[..m - 1];
                let best = 2.0 * dtlz7_h(lead, 1.0, m);
                (y[m - 1] - best).abs()
            }
        })
    }
}

/// Rastrigin-style multimodal distance function used by DTLZ1 and DTLZ3.
pub fn g_rastrigin(dist: &[f64]) -> f64 {
    let sum: f64 = dist
        .iter()
        .map(|&xi| {
            let z = xi - 0.5;
            z * z - (20.0 * PI * z).cos()
        })
        .sum();
    100.0 * (dist.len() as f64 + sum)
}

/// Sphere distance function used by DTLZ2 and DTLZ4.
pub fn g_sphere(dist: &[f64]) -> f64 {
    dist.iter().map(|&xi| (xi - 0.5) * (xi - 0.5)).sum()
}

fn linear_front(pos: &[f64], g: f64) -> Vec<f64> {
    let m = pos.len() + 1;
    let scale = 0.5 * (1.0 + g);
    (0..m)
        .map(|obj| {
            // f_{obj+1} uses the first m-1-obj position variables, then one (1 - x) factor.
            let keep = m - 1 - obj;
            let mut f = scale * pos[..keep].iter().product::<f64>();
            if obj > 0 {
                f *= 1.0 - pos[keep];
            }
            f
        })
        .collect()
}

fn spherical_front(pos: impl Iterator<Item = f64>, m: usize, g: f64) -> Vec<f64> {
    let angles: Vec<f64> = pos.map(|xi| xi * FRAC_PI_2).collect();
    let scale = 1.0 + g;
    (0..m)
        .map(|obj| {
            let keep = m - 1 - obj;
            let mut f = scale * angles[..keep].iter().map(|a| a.cos()).product::<f64>();
            if obj > 0 {
                f *= angles[keep].sin();
            }
            f
        })
        .collect()
}

fn dtlz7_h(lead: &[f64], g: f64, m: usize) -> f64 {
    m as f64
        - lead
            .iter()
            .map(|&f| f / (1.0 + g) * (1.0 + (3.0 * PI * f).sin()))
            .sum::<f64>()
}

fn dtlz7(pos: &[f64], dist: &[f64], m: usize) -> Vec<f64> {
    let g = 1.0 + 9.0 / dist.len() as f64 * dist.iter().sum::<f64>();
    let mut f: Vec<f64> = pos.to_vec();
    f.push((1.0 + g) * dtlz7_h(pos, g, m));
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: Problem, m: usize) -> ProblemSpec {
        ProblemSpec::with_default_k(p, m).unwrap()
    }

    #[test]
    fn default_dimensions() {
        assert_eq!(spec(Problem::Dtlz1, 3).num_variables(), 7);
        assert_eq!(spec(Problem::Dtlz2, 3).num_variables(), 12);
        assert_eq!(spec(Problem::Dtlz7, 5).num_variables(), 24);
    }

    #[test]
    fn dtlz1_midpoint() {
        let s = spec(Problem::Dtlz1, 3);
        let y = s.evaluate(&vec![0.5; s.num_variables()]).unwrap();
        assert_eq!(y.as_slice(), &[0.125, 0.125, 0.25]);
    }

    #[test]
    fn dtlz2_corner() {
        let s = spec(Problem::Dtlz2, 3);
        let mut x = vec![0.5; s.num_variables()];
        x[0] = 0.0;
        x[1] = 0.0;
        assert_eq!(s.evaluate(&x).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn dtlz7_origin() {
        let s = spec(Problem::Dtlz7, 3);
        let y = s.evaluate(&vec![0.0; s.num_variables()]).unwrap();
        assert_eq!(y.as_slice(), &[0.0, 0.0, 6.0]);
    }

    #[test]
    fn dtlz4_bias_collapses_angle() {
        let s = spec(Problem::Dtlz4, 3);
        let y = s.evaluate(&vec![0.5; s.num_variables()]).unwrap();
        for (a, b) in y.iter().zip([1.0, 0.0, 0.0]) {
            assert!((a - b).abs() < 1e-9, "{y:?}");
        }
    }

    #[test]
    fn out_of_bounds_names_index() {
        let s = spec(Problem::Dtlz2, 3);
        let mut x = vec![0.5; s.num_variables()];
        x[4] = 1.01;
        assert!(matches!(s.evaluate(&x), Err(Error::Domain { index: 4, .. })));
    }

    #[test]
    fn residual_examples() {
        assert_eq!(spec(Problem::Dtlz1, 3).front_residual(&[0.125, 0.125, 0.25]).unwrap(), 0.0);
        assert_eq!(spec(Problem::Dtlz2, 3).front_residual(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(spec(Problem::Dtlz2, 3).front_residual(&[2.0, 0.0, 0.0]).unwrap(), 1.0);
        // DTLZ7 optimum: distance variables at 0.
        let s = spec(Problem::Dtlz7, 3);
        let mut x = vec![0.0; s.num_variables()];
        x[0] = 0.3;
        x[1] = 0.8;
        let y = s.evaluate(&x).unwrap();
        assert!(s.front_residual(&y).unwrap() < 1e-12);
    }

    #[test]
    fn unknown_name_is_config_error() {
        assert!(matches!("dtlz5".parse::<Problem>(), Err(Error::Config(_))));
        assert_eq!("dtlz4".parse::<Problem>().unwrap(), Problem::Dtlz4);
    }

    #[test]
    fn g_functions_zero_at_half() {
        assert!(g_rastrigin(&[0.5; 5]).abs() < 1e-12);
        assert_eq!(g_sphere(&[0.5; 10]), 0.0);
        assert!(g_rastrigin(&[0.4, 0.5]) > 0.0);
    }
}
