use crate::domain::{GenerationRecord, RunHistory};
use crate::embedding::Space;
use crate::error::{Error, Result};

/// Median of a non-empty slice; the lower of the two middle values for even
/// lengths.
pub fn lower_median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty slice");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[(sorted.len() - 1) / 2]
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Distance from every point to its nearest other point.
pub fn nearest_neighbour_distances_of<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<f64>> {
    if points.len() < 2 {
        return Err(Error::contract("nearest-neighbour distances need at least two points"));
    }
    let n = points.len();
    let mut nearest = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean(points[i].as_ref(), points[j].as_ref());
            nearest[i] = nearest[i].min(d);
            nearest[j] = nearest[j].min(d);
        }
    }
    Ok(nearest)
}

/// Nearest-neighbour distance of every member of a generation in `space`.
pub fn nearest_neighbour_distances(generation: &GenerationRecord, space: Space) -> Result<Vec<f64>> {
    match space {
        Space::Search => nearest_neighbour_distances_of(&generation.decisions().collect::<Vec<_>>()),
        Space::Objective => {
            nearest_neighbour_distances_of(&generation.objectives().collect::<Vec<_>>())
        }
    }
}

/// Per-generation exploration-exploitation scores.
///
/// `m(t)` is the median nearest-neighbour distance in generation `t` and the
/// overall median `D*` is the median of the `m(t)`. A point scores
/// `min(d / (2 D*), 1)`: below 0.5 it is exploiting, otherwise exploring.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplorationProfile {
    pub space: Space,
    pub per_generation_median: Vec<f64>,
    pub overall_median: f64,
    /// `scores[t][i]` for member `i` of generation `t`.
    pub scores: Vec<Vec<f64>>,
}

impl ExplorationProfile {
    /// Builds the profile from per-generation nearest-neighbour distances.
    pub fn from_distances(space: Space, distances: Vec<Vec<f64>>) -> Result<Self> {
        if distances.is_empty() || distances.iter().any(Vec::is_empty) {
            return Err(Error::contract("every generation needs at least one distance"));
        }
        let per_generation_median: Vec<f64> = distances.iter().map(|d| lower_median(d)).collect();
        let overall_median = lower_median(&per_generation_median);
        let scores = distances
            .iter()
            .map(|gen| gen.iter().map(|&d| score(d, overall_median)).collect())
            .collect();
        Ok(Self { space, per_generation_median, overall_median, scores })
    }

    /// Builds the profile directly from point clouds, one per generation.
    pub fn from_point_clouds<P: AsRef<[f64]>>(space: Space, clouds: &[Vec<P>]) -> Result<Self> {
        let distances = clouds
            .iter()
            .map(|c| nearest_neighbour_distances_of(c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_distances(space, distances)
    }

    pub fn score(&self, generation: usize, member: usize) -> Option<f64> {
        self.scores.get(generation)?.get(member).copied()
    }

    pub fn num_generations(&self) -> usize {
        self.scores.len()
    }
}

fn score(d: f64, overall: f64) -> f64 {
    if overall > 0.0 {
        (d / (2.0 * overall)).min(1.0)
    } else if d > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Exploration profile of a whole history in `space`.
pub fn exploration_profile(history: &RunHistory, space: Space) -> Result<ExplorationProfile> {
    let distances = history
        .generations
        .iter()
        .map(|g| nearest_neighbour_distances(g, space))
        .collect::<Result<Vec<_>>>()?;
    ExplorationProfile::from_distances(space, distances)
}

/// Fraction of generation `t` scoring at least 0.5 (exploring).
pub fn exploration_fraction(profile: &ExplorationProfile, t: usize) -> Result<f64> {
    let scores = profile
        .scores
        .get(t)
        .ok_or_else(|| Error::contract(format!("generation {t} is outside the profile")))?;
    Ok(scores.iter().filter(|&&s| s >= 0.5).count() as f64 / scores.len() as f64)
}

/// Average ranks (1-based), ties sharing the mean of their positions.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && values[order[end + 1]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end) as f64 / 2.0 + 1.0;
        for &i in &order[start..=end] {
            ranks[i] = rank;
        }
        start = end + 1;
    }
    ranks
}

/// Spearman rank correlation; `None` when either input is constant or the
/// lengths differ.
pub fn spearman_correlation(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        None
    } else {
        Some(cov / (vx * vy).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn line(n: usize, spacing: f64) -> Vec<Vec<f64>> {
        (0..n).map(|i| vec![i as f64 * spacing, 0.0]).collect()
    }

    #[test]
    fn median_convention() {
        assert_eq!(lower_median(&[4.0, 1.0, 3.0, 2.0]), 2.0);
        assert_eq!(lower_median(&[5.0, 1.0, 3.0]), 3.0);
    }

    #[test]
    fn nearest_neighbour_examples() {
        assert_eq!(nearest_neighbour_distances_of(&vec![vec![0.2, 0.2]; 4]).unwrap(), vec![0.0; 4]);
        assert_eq!(
            nearest_neighbour_distances_of(&[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap(),
            vec![5.0, 5.0]
        );
        assert!(nearest_neighbour_distances_of(&[vec![0.0]]).is_err());
    }

    #[test]
    fn nearest_neighbour_matches_full_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let pts: Vec<Vec<f64>> = (0..30).map(|_| (0..6).map(|_| rng.gen()).collect()).collect();
        let fast = nearest_neighbour_distances_of(&pts).unwrap();
        for i in 0..30 {
            let brute = (0..30)
                .filter(|&j| j != i)
                .map(|j| euclidean(&pts[i], &pts[j]))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(fast[i], brute);
        }
    }

    #[test]
    fn identical_clouds_score_one_half() {
        let clouds = vec![line(8, 0.25); 5];
        let p = ExplorationProfile::from_point_clouds(Space::Search, &clouds).unwrap();
        assert!(p.per_generation_median.iter().all(|&m| m == 0.25));
        assert!(p.scores.iter().flatten().all(|&s| s == 0.5));
    }

    #[test]
    fn coincident_generation_scores_zero() {
        let clouds = vec![line(6, 1.0), vec![vec![0.5, 0.5]; 6], line(6, 2.0)];
        let p = ExplorationProfile::from_point_clouds(Space::Search, &clouds).unwrap();
        assert!(p.scores[1].iter().all(|&s| s == 0.0));
        assert_eq!(exploration_fraction(&p, 1).unwrap(), 0.0);
    }

    #[test]
    fn zero_overall_median_conventions() {
        let p = ExplorationProfile::from_distances(
            Space::Objective,
            vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]],
        )
        .unwrap();
        assert_eq!(p.overall_median, 0.0);
        assert_eq!(p.scores[1], vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn wide_generation_fully_exploring() {
        let clouds = vec![line(5, 1.0), line(5, 1.0), line(5, 3.0)];
        let p = ExplorationProfile::from_point_clouds(Space::Search, &clouds).unwrap();
        assert_eq!(exploration_fraction(&p, 2).unwrap(), 1.0);
        assert!(exploration_fraction(&p, 3).is_err());
    }

    #[test]
    fn random_generation_explores_more_than_converged() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let random: Vec<Vec<f64>> = (0..40).map(|_| (0..5).map(|_| rng.gen()).collect()).collect();
        let converged: Vec<Vec<f64>> = (0..40)
            .map(|_| (0..5).map(|_| 0.5 + 0.01 * (rng.gen::<f64>() - 0.5)).collect())
            .collect();
        let p = ExplorationProfile::from_point_clouds(Space::Search, &[random, converged]).unwrap();
        assert!(exploration_fraction(&p, 0).unwrap() > exploration_fraction(&p, 1).unwrap());
    }

    #[test]
    fn spearman_basics() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(spearman_correlation(&xs, &[10.0, 20.0, 30.0, 40.0]), Some(1.0));
        assert_eq!(spearman_correlation(&xs, &[4.0, 3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman_correlation(&xs, &[1.0, 1.0, 1.0, 1.0]), None);
        assert_eq!(ranks(&[3.0, 1.0, 3.0]), vec![2.5, 1.0, 2.5]);
    }
}
