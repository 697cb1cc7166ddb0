//! Two-dimensional embedding of a run history with classical (Torgerson)
//! multidimensional scaling.
//!
//! The populations of the sampled generations are concatenated into one
//! multiset, either in the search space (decision vectors) or in the objective
//! space (objective vectors, unscaled). Pairwise squared Euclidean distances
//! are double-centred into a Gram matrix whose two leading eigenpairs give the
//! coordinates.

mod eigen;

use std::fmt;
use std::str::FromStr;

use crate::domain::RunHistory;
use crate::error::{Error, Result};

/// Default bound on the number of embedded points.
pub const DEFAULT_MAX_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Search,
    Objective,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Search => "search",
            Space::Objective => "objective",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "search" => Ok(Space::Search),
            "objective" => Ok(Space::Objective),
            other => Err(Error::config(format!(
                "unknown space '{other}' (expected search or objective)"
            ))),
        }
    }
}

/// Vectors drawn from a history, with their (generation, member) provenance.
#[derive(Debug, Clone)]
pub struct Sample<'a> {
    pub vectors: Vec<&'a [f64]>,
    pub provenance: Vec<(usize, usize)>,
    pub stride: usize,
    pub generations: Vec<usize>,
}

/// Smallest stride `s` with `ceil(n_gen / s) * population <= max_points`.
pub fn stride_for(n_gen: usize, population: usize, max_points: usize) -> usize {
    (1..=n_gen.max(1))
        .find(|&s| n_gen.div_ceil(s) * population <= max_points)
        .unwrap_or(n_gen.max(1))
}

/// Generations kept for stride `s`: `0, s, 2s, ...` with the last slot given to
/// the final generation, `ceil(n_gen / s)` in total.
pub fn sampled_generations(n_gen: usize, stride: usize) -> Vec<usize> {
    if n_gen == 0 {
        return Vec::new();
    }
    let count = n_gen.div_ceil(stride);
    let mut gens: Vec<usize> = (0..count - 1).map(|i| i * stride).collect();
    gens.push(n_gen - 1);
    gens
}

/// Concatenates the sampled generations into a single multiset.
pub fn concatenate(history: &RunHistory, space: Space, max_points: usize) -> Result<Sample<'_>> {
    if history.generations.is_empty() {
        return Err(Error::contract("history has no generations"));
    }
    let pop = history.population_size;
    if max_points < 2 * pop {
        return Err(Error::contract(format!(
            "max_points {max_points} is below twice the population size ({pop})"
        )));
    }
    let n_gen = history.num_generations();
    let stride = stride_for(n_gen, pop, max_points);
    let generations = sampled_generations(n_gen, stride);
    let mut vectors = Vec::new();
    let mut provenance = Vec::new();
    for &g in &generations {
        for (i, member) in history.generations[g].members.iter().enumerate() {
            vectors.push(match space {
                Space::Search => member.x.as_slice(),
                Space::Objective => member.y.as_slice(),
            });
            provenance.push((g, i));
        }
    }
    Ok(Sample { vectors, provenance, stride, generations })
}

/// Symmetric squared-distance matrix with zero diagonal, stored as its strict
/// upper triangle in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SqDistances {
    n: usize,
    upper: Vec<f64>,
}

impl SqDistances {
    /// Builds from the entries `f(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                upper.push(f(i, j));
            }
        }
        Self { n, upper }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn offset(&self, i: usize) -> usize {
        i * self.n - i * (i + 1) / 2
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => 0.0,
            Ordering::Less => self.upper[self.offset(i) + (j - i - 1)],
            Ordering::Greater => self.upper[self.offset(j) + (i - j - 1)],
        }
    }

    /// Entries `(i, j)` for `j > i`.
    pub(crate) fn upper_row(&self, i: usize) -> &[f64] {
        let start = self.offset(i);
        &self.upper[start..start + (self.n - i - 1)]
    }

    pub fn max_entry(&self) -> f64 {
        self.upper.iter().copied().fold(0.0, f64::max)
    }
}

/// Squared Euclidean distances between all pairs of vectors.
pub fn pairwise_sq_distances<V: AsRef<[f64]>>(vectors: &[V]) -> Result<SqDistances> {
    if let Some(first) = vectors.first() {
        let d = first.as_ref().len();
        if vectors.iter().any(|v| v.as_ref().len() != d) {
            return Err(Error::contract("vectors have differing dimensionality"));
        }
    }
    Ok(SqDistances::from_fn(vectors.len(), |i, j| {
        vectors[i]
            .as_ref()
            .iter()
            .zip(vectors[j].as_ref())
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }))
}

/// Output of [`classical_mds`].
#[derive(Debug, Clone, PartialEq)]
pub struct MdsResult {
    pub coordinates: Vec<[f64; 2]>,
    pub eigenvalues: (f64, f64),
    /// Set when every point coincides; coordinates are then all zero.
    pub degenerate: bool,
}

/// Classical MDS to two dimensions.
///
/// Coordinates in column `k` are `v_k * sqrt(max(l_k, 0))` for the two leading
/// eigenpairs of `B = -1/2 J D J`. Each eigenvector is oriented so that its
/// largest-magnitude entry (first one on ties) is positive.
pub fn classical_mds(dist: &SqDistances) -> Result<MdsResult> {
    let n = dist.len();
    if n < 2 {
        return Err(Error::contract("classical MDS needs at least two points"));
    }
    if dist.upper.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::contract("squared distances must be finite and non-negative"));
    }
    let max_entry = dist.max_entry();
    let degenerate = || MdsResult {
        coordinates: vec![[0.0; 2]; n],
        eigenvalues: (0.0, 0.0),
        degenerate: true,
    };
    if max_entry == 0.0 {
        return Ok(degenerate());
    }

    let pairs = eigen::top_eigenpairs(dist, 2.min(n));
    let l1 = pairs.values[0];
    if l1 <= 1e-12 * max_entry {
        return Ok(degenerate());
    }
    let l2 = pairs.values.get(1).copied().unwrap_or(0.0);

    let mut coordinates = vec![[0.0; 2]; n];
    for (k, (vector, value)) in pairs.vectors.iter().zip([l1, l2]).enumerate() {
        let sign = orientation(vector);
        let scale = value.max(0.0).sqrt() * sign;
        for (c, v) in coordinates.iter_mut().zip(vector) {
            c[k] = v * scale;
        }
    }
    Ok(MdsResult { coordinates, eigenvalues: (l1, l2), degenerate: false })
}

fn orientation(v: &[f64]) -> f64 {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// One embedded individual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedPoint {
    pub e1: f64,
    pub e2: f64,
    pub generation: usize,
    pub member_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub space: Space,
    pub points: Vec<EmbeddedPoint>,
    pub stride: usize,
    pub eigenvalues: (f64, f64),
    pub degenerate: bool,
}

impl Embedding {
    pub fn final_generation(&self) -> Option<usize> {
        self.points.iter().map(|p| p.generation).max()
    }

    /// Points belonging to generation `g`.
    pub fn generation(&self, g: usize) -> impl Iterator<Item = &EmbeddedPoint> {
        self.points.iter().filter(move |p| p.generation == g)
    }
}

/// Concatenate, measure and embed a history in one step.
pub fn embed_history(history: &RunHistory, space: Space, max_points: usize) -> Result<Embedding> {
    let sample = concatenate(history, space, max_points)?;
    let mds = classical_mds(&pairwise_sq_distances(&sample.vectors)?)?;
    let points = mds
        .coordinates
        .iter()
        .zip(&sample.provenance)
        .map(|(c, &(g, i))| EmbeddedPoint { e1: c[0], e2: c[1], generation: g, member_index: i })
        .collect();
    Ok(Embedding {
        space,
        points,
        stride: sample.stride,
        eigenvalues: mds.eigenvalues,
        degenerate: mds.degenerate,
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn embedded_sq(c: &[[f64; 2]], i: usize, j: usize) -> f64 {
        (c[i][0] - c[j][0]).powi(2) + (c[i][1] - c[j][1]).powi(2)
    }

    #[test]
    fn stride_examples() {
        assert_eq!(stride_for(10, 10, 100), 1);
        assert_eq!(stride_for(1000, 100, 10_000), 10);
        let gens = sampled_generations(1000, 10);
        assert_eq!(gens.len(), 100);
        assert_eq!(gens[0], 0);
        assert_eq!(*gens.last().unwrap(), 999);
        assert_eq!(sampled_generations(10, 1), (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn sq_distance_examples() {
        let d = pairwise_sq_distances(&[vec![0.0, 0.0], vec![3.0, 0.0]]).unwrap();
        assert_eq!(d.get(0, 1), 9.0);
        assert_eq!(d.get(1, 0), 9.0);
        assert_eq!(d.get(1, 1), 0.0);
        let d = pairwise_sq_distances(&vec![vec![1.0; 4]; 5]).unwrap();
        assert_eq!(d.max_entry(), 0.0);
    }

    #[test]
    fn sq_distances_match_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pts: Vec<Vec<f64>> = (0..20).map(|_| (0..5).map(|_| rng.gen()).collect()).collect();
        let d = pairwise_sq_distances(&pts).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                let s: f64 = pts[i].iter().zip(&pts[j]).map(|(a, b)| (a - b) * (a - b)).sum();
                assert!((d.get(i, j) - s).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn two_points() {
        let d = pairwise_sq_distances(&[vec![1.0, 1.0], vec![4.0, 5.0]]).unwrap();
        let r = classical_mds(&d).unwrap();
        let c = &r.coordinates;
        assert!((c[0][0].abs() - 2.5).abs() < 1e-12);
        assert!((c[0][0] + c[1][0]).abs() < 1e-12);
        assert!(c[0][1].abs() < 1e-12 && c[1][1].abs() < 1e-12);
    }

    #[test]
    fn unit_square_in_ten_dimensions() {
        let mut pts = vec![vec![0.0; 10]; 4];
        pts[1][0] = 1.0;
        pts[2][1] = 1.0;
        pts[3][0] = 1.0;
        pts[3][1] = 1.0;
        let d = pairwise_sq_distances(&pts).unwrap();
        let r = classical_mds(&d).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((embedded_sq(&r.coordinates, i, j).sqrt() - d.get(i, j).sqrt()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let d = pairwise_sq_distances(&vec![vec![0.3, 0.2]; 6]).unwrap();
        let r = classical_mds(&d).unwrap();
        assert!(r.degenerate);
        assert!(r.coordinates.iter().all(|c| c == &[0.0, 0.0]));
    }

    #[test]
    fn too_few_points() {
        let d = pairwise_sq_distances(&[vec![0.3, 0.2]]).unwrap();
        assert!(classical_mds(&d).is_err());
    }

    #[test]
    fn largest_entry_is_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pts: Vec<Vec<f64>> = (0..15).map(|_| (0..4).map(|_| rng.gen()).collect()).collect();
        let r = classical_mds(&pairwise_sq_distances(&pts).unwrap()).unwrap();
        for k in 0..2 {
            let col: Vec<f64> = r.coordinates.iter().map(|c| c[k]).collect();
            let top = col.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
            assert!(top > 0.0);
        }
    }

    #[test]
    fn iterative_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 150;
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..40).map(|_| rng.gen()).collect()).collect();
        let d = pairwise_sq_distances(&pts).unwrap();
        let dense = eigen::dense_top(&d, 2);
        let iter = eigen::subspace_top(&d, 2);
        for k in 0..2 {
            assert!((dense.values[k] - iter.values[k]).abs() <= 1e-8 * dense.values[0]);
            let dot: f64 = dense.vectors[k].iter().zip(&iter.vectors[k]).map(|(a, b)| a * b).sum();
            assert!((dot.abs() - 1.0).abs() < 1e-7, "k={k} dot={dot}");
        }
    }

    #[test]
    fn large_planar_set_uses_iterative_path_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = eigen::DENSE_LIMIT + 100;
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let (a, b): (f64, f64) = (rng.gen(), rng.gen());
                vec![a + b, a - b, 2.0 * a, 0.5, b]
            })
            .collect();
        let d = pairwise_sq_distances(&pts).unwrap();
        let r = classical_mds(&d).unwrap();
        for (i, j) in [(0, 1), (3, 400), (17, n - 1)] {
            assert!((embedded_sq(&r.coordinates, i, j) - d.get(i, j)).abs() < 1e-9);
        }
    }

    #[test]
    fn space_names() {
        assert_eq!("search".parse::<Space>().unwrap(), Space::Search);
        assert!("both".parse::<Space>().is_err());
    }
}
