//! Environmental selection for NSGA-II (crowding) and NSGA-III (reference
//! direction niching).

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::reference::ReferenceDirectionSet;
use super::sorting::{crowding_distance, fast_nondominated_sort};
use crate::error::{Error, Result};

/// Indices chosen from the combined population together with the rank and
/// crowding distance each survivor had inside the combined population.
#[derive(Debug, Clone, PartialEq)]
pub struct Survivors {
    pub indices: Vec<usize>,
    pub rank: Vec<usize>,
    pub crowding: Vec<f64>,
}

/// Fronts needed to reach `target`: the fully accepted ones and the one that
/// has to be split (if any).
fn split_fronts(fronts: &[Vec<usize>], target: usize) -> (usize, usize) {
    let mut taken = 0;
    for (r, front) in fronts.iter().enumerate() {
        if taken + front.len() >= target {
            return (r, taken);
        }
        taken += front.len();
    }
    unreachable!("combined population smaller than target")
}

/// NSGA-II survival: whole fronts by rank, the last one truncated by
/// descending crowding distance with ties going to the lower index.
pub fn nsga2_select<P: AsRef<[f64]>>(combined: &[P], target: usize) -> Result<Survivors> {
    if combined.len() < target {
        return Err(Error::contract(format!(
            "cannot select {target} from {} individuals",
            combined.len()
        )));
    }
    let mut out = Survivors { indices: Vec::new(), rank: Vec::new(), crowding: Vec::new() };
    if target == 0 {
        return Ok(out);
    }
    let fronts = fast_nondominated_sort(combined)?;
    let (last, _) = split_fronts(&fronts, target);
    for (r, front) in fronts[..=last].iter().enumerate() {
        let pts: Vec<&[f64]> = front.iter().map(|&i| combined[i].as_ref()).collect();
        let cd = crowding_distance(&pts)?;
        let mut order: Vec<usize> = (0..front.len()).collect();
        if r == last {
            order.sort_by(|&a, &b| cd[b].total_cmp(&cd[a]).then(front[a].cmp(&front[b])));
            order.truncate(target - out.indices.len());
        }
        for k in order {
            out.indices.push(front[k]);
            out.rank.push(r);
            out.crowding.push(cd[k]);
        }
    }
    Ok(out)
}

/// Objective vectors translated by the ideal point and scaled by the
/// hyperplane intercepts.
fn normalise(points: &[&[f64]]) -> Vec<Vec<f64>> {
    let m = points[0].len();
    let ideal: Vec<f64> = (0..m)
        .map(|j| points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let translated: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().zip(&ideal).map(|(v, z)| v - z).collect())
        .collect();

    // extreme point per axis via the achievement scalarising function
    let extremes: Vec<usize> = (0..m)
        .map(|axis| {
            let asf = |p: &Vec<f64>| {
                p.iter()
                    .enumerate()
                    .map(|(i, v)| v / if i == axis { 1.0 } else { 1e-6 })
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let mut best = 0;
            let mut best_val = asf(&translated[0]);
            for (i, p) in translated.iter().enumerate().skip(1) {
                let v = asf(p);
                if v < best_val {
                    best = i;
                    best_val = v;
                }
            }
            best
        })
        .collect();

    let intercepts = hyperplane_intercepts(&translated, &extremes).unwrap_or_else(|| {
        (0..m)
            .map(|j| translated.iter().map(|p| p[j]).fold(0.0, f64::max))
            .collect()
    });
    let intercepts: Vec<f64> = intercepts
        .into_iter()
        .map(|a| if a > 1e-12 { a } else { 1.0 })
        .collect();

    translated
        .into_iter()
        .map(|p| p.iter().zip(&intercepts).map(|(v, a)| v / a).collect())
        .collect()
}

/// Axis intercepts of the hyperplane through the extreme points, or `None`
/// when the system is singular or yields non-positive intercepts.
fn hyperplane_intercepts(translated: &[Vec<f64>], extremes: &[usize]) -> Option<Vec<f64>> {
    let m = extremes.len();
    let mut distinct = extremes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < m {
        return None;
    }
    let e = DMatrix::from_fn(m, m, |r, c| translated[extremes[r]][c]);
    let b = e.lu().solve(&DVector::from_element(m, 1.0))?;
    let intercepts: Vec<f64> = b.iter().map(|v| 1.0 / v).collect();
    if intercepts.iter().all(|a| a.is_finite() && *a > 1e-6) {
        Some(intercepts)
    } else {
        None
    }
}

/// Nearest reference line (through the origin) and the perpendicular distance
/// to it. Ties go to the lower direction index.
fn associate(point: &[f64], directions: &ReferenceDirectionSet) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (j, w) in directions.directions.iter().enumerate() {
        let ww: f64 = w.iter().map(|v| v * v).sum();
        let t = w.iter().zip(point).map(|(a, b)| a * b).sum::<f64>() / ww;
        let d2: f64 = point.iter().zip(w).map(|(p, wi)| (p - t * wi).powi(2)).sum();
        if d2 < best.1 {
            best = (j, d2);
        }
    }
    (best.0, best.1.sqrt())
}

/// NSGA-III survival. Whole fronts are accepted by rank; the partially
/// accepted front is resolved by niching on `directions`, with random choices
/// drawn from `rng`.
pub fn nsga3_select<P: AsRef<[f64]>, R: Rng + ?Sized>(
    combined: &[P],
    target: usize,
    directions: &ReferenceDirectionSet,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if combined.len() < target {
        return Err(Error::contract(format!(
            "cannot select {target} from {} individuals",
            combined.len()
        )));
    }
    if directions.is_empty() {
        return Err(Error::contract("NSGA-III needs at least one reference direction"));
    }
    if target == 0 {
        return Ok(Vec::new());
    }
    let fronts = fast_nondominated_sort(combined)?;
    let (last, accepted) = split_fronts(&fronts, target);
    let mut selected: Vec<usize> = fronts[..last].iter().flatten().copied().collect();
    if accepted + fronts[last].len() == target {
        selected.extend_from_slice(&fronts[last]);
        return Ok(selected);
    }

    let pool: Vec<usize> = fronts[..=last].iter().flatten().copied().collect();
    let pool_points: Vec<&[f64]> = pool.iter().map(|&i| combined[i].as_ref()).collect();
    let normalised = normalise(&pool_points);
    let association: Vec<(usize, f64)> =
        normalised.iter().map(|p| associate(p, directions)).collect();

    let mut niche = vec![0usize; directions.len()];
    for (dir, _) in &association[..accepted] {
        niche[*dir] += 1;
    }
    // positions in `pool` of the last front's members still available
    let mut candidates: Vec<usize> = (accepted..pool.len()).collect();
    let mut excluded = vec![false; directions.len()];
    let mut remaining = target - accepted;

    while remaining > 0 {
        let min_count = niche
            .iter()
            .zip(&excluded)
            .filter(|(_, &ex)| !ex)
            .map(|(&c, _)| c)
            .min()
            .expect("a non-excluded direction remains while candidates exist");
        let lightest: Vec<usize> = (0..niche.len())
            .filter(|&j| !excluded[j] && niche[j] == min_count)
            .collect();
        let dir = pick(&lightest, rng);

        let members: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&c| association[c].0 == dir)
            .collect();
        if members.is_empty() {
            excluded[dir] = true;
            continue;
        }
        let chosen = if niche[dir] == 0 {
            let mut best = members[0];
            for &c in &members[1..] {
                if association[c].1 < association[best].1 {
                    best = c;
                }
            }
            best
        } else {
            pick(&members, rng)
        };
        candidates.retain(|&c| c != chosen);
        selected.push(pool[chosen]);
        niche[dir] += 1;
        remaining -= 1;
    }
    Ok(selected)
}

/// Uniform choice; consumes no randomness when there is a single option.
fn pick<R: Rng + ?Sized>(options: &[usize], rng: &mut R) -> usize {
    if options.len() == 1 {
        options[0]
    } else {
        options[rng.gen_range(0..options.len())]
    }
}
