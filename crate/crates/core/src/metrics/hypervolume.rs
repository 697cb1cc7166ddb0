//! Hypervolume indicator: exact computation by recursive exclusive-volume
//! decomposition over limit sets, and a Monte Carlo estimator.

use rand::Rng;

use crate::domain::{dominates_unchecked, non_dominated_subset, RunHistory};
use crate::error::{Error, Result};

/// Largest objective count accepted by [`hypervolume_exact`].
pub const MAX_EXACT_OBJECTIVES: usize = 5;

fn check_reference(reference: &[f64]) -> Result<()> {
    if reference.iter().any(|r| !r.is_finite()) {
        return Err(Error::contract("reference point must be finite"));
    }
    Ok(())
}

/// Members that strictly dominate the reference point, i.e. lie strictly
/// inside it on every axis.
fn inside<'a, P: AsRef<[f64]>>(front: &'a [P], reference: &[f64]) -> Result<Vec<&'a [f64]>> {
    front
        .iter()
        .map(AsRef::as_ref)
        .filter_map(|p| {
            if p.len() != reference.len() {
                return Some(Err(Error::contract(
                    "front member and reference point differ in length",
                )));
            }
            p.iter().zip(reference).all(|(a, r)| a < r).then_some(Ok(p))
        })
        .collect()
}

/// Drops points weakly dominated by another point (keeping the first of any
/// duplicates).
fn prune(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let keep: Vec<bool> = (0..points.len())
        .map(|i| {
            !points.iter().enumerate().any(|(j, q)| {
                j != i && (dominates_unchecked(q, &points[i]) || (q == &points[i] && j < i))
            })
        })
        .collect();
    points.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

fn box_volume(p: &[f64], reference: &[f64]) -> f64 {
    p.iter().zip(reference).map(|(a, r)| r - a).product()
}

/// `a - b` as an unevaluated pair `hi + lo` with no rounding loss.
fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let hi = a - b;
    let bb = a - hi;
    (hi, (a - (hi + bb)) + (bb - b))
}

/// Neumaier summation, fed with error-free products, so 2-D areas come out
/// correctly rounded in ordinary cases.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn add_product(&mut self, (h1, l1): (f64, f64), (h2, l2): (f64, f64)) {
        let p = h1 * h2;
        self.add(p);
        self.add(h1.mul_add(h2, -p));
        self.add(h1 * l2 + l1 * h2 + l1 * l2);
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Hypervolume of a mutually non-dominated set lying inside the reference.
fn volume(mut points: Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    match points.len() {
        0 => return 0.0,
        1 => return box_volume(&points[0], reference),
        _ => {}
    }
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then_with(|| b[1].total_cmp(&a[1])));
    if reference.len() == 2 {
        // sweep: first objective ascending implies second descending
        let mut total = CompensatedSum::default();
        for (i, p) in points.iter().enumerate() {
            let right = points.get(i + 1).map_or(reference[0], |q| q[0]);
            total.add_product(two_diff(right, p[0]), two_diff(reference[1], p[1]));
        }
        return total.value();
    }
    (0..points.len())
        .map(|i| {
            let p = &points[i];
            let limit: Vec<Vec<f64>> = points[i + 1..]
                .iter()
                .map(|q| q.iter().zip(p).map(|(a, b)| a.max(*b)).collect())
                .collect();
            box_volume(p, reference) - volume(prune(limit), reference)
        })
        .sum()
}

/// Exact hypervolume dominated by `front` and bounded by `reference`.
///
/// Members that do not strictly dominate the reference contribute nothing;
/// dominated members are discarded before the computation.
pub fn hypervolume_exact<P: AsRef<[f64]>>(front: &[P], reference: &[f64]) -> Result<f64> {
    let m = reference.len();
    if !(2..=MAX_EXACT_OBJECTIVES).contains(&m) {
        return Err(Error::UnsupportedDimension(m));
    }
    check_reference(reference)?;
    let points: Vec<Vec<f64>> = inside(front, reference)?.into_iter().map(<[f64]>::to_vec).collect();
    Ok(volume(prune(points), reference))
}

/// Monte Carlo estimate of the hypervolume with its binomial standard error.
///
/// Samples uniformly in the box spanned by the componentwise minimum of the
/// contributing members and the reference point.
pub fn hypervolume_mc<P: AsRef<[f64]>, R: Rng + ?Sized>(
    front: &[P],
    reference: &[f64],
    samples: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if samples < 10_000 {
        return Err(Error::contract("Monte Carlo hypervolume needs at least 10^4 samples"));
    }
    check_reference(reference)?;
    let points = inside(front, reference)?;
    if points.is_empty() {
        return Ok((0.0, 0.0));
    }
    let m = reference.len();
    let lower: Vec<f64> = (0..m)
        .map(|j| points.iter().map(|p| p[j]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_vol = box_volume(&lower, reference);

    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (j, s) in sample.iter_mut().enumerate() {
            *s = lower[j] + rng.gen::<f64>() * (reference[j] - lower[j]);
        }
        if points.iter().any(|p| p.iter().zip(&sample).all(|(a, s)| a <= s)) {
            hits += 1;
        }
    }
    let fraction = hits as f64 / samples as f64;
    let std_error = box_vol * (fraction * (1.0 - fraction) / samples as f64).sqrt();
    Ok((fraction * box_vol, std_error))
}

/// How the reference point of a trace is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferencePolicy {
    /// Componentwise maximum over the whole history, scaled by 1.1.
    Auto,
    Fixed(Vec<f64>),
}

/// Hypervolume of every generation's non-dominated subset against one fixed
/// reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct HypervolumeTrace {
    pub reference: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn auto_reference(history: &RunHistory) -> Vec<f64> {
    let mut reference = vec![f64::NEG_INFINITY; history.num_objectives];
    for member in history.generations.iter().flat_map(|g| &g.members) {
        for (r, &y) in reference.iter_mut().zip(member.y.iter()) {
            *r = r.max(y);
        }
    }
    reference.into_iter().map(|r| r * 1.1).collect()
}

pub fn hypervolume_trace(history: &RunHistory, policy: &ReferencePolicy) -> Result<HypervolumeTrace> {
    let reference = match policy {
        ReferencePolicy::Auto => auto_reference(history),
        ReferencePolicy::Fixed(r) => {
            if r.len() != history.num_objectives {
                return Err(Error::config(format!(
                    "reference point has {} components, history has {} objectives",
                    r.len(),
                    history.num_objectives
                )));
            }
            r.clone()
        }
    };
    let values = history
        .generations
        .iter()
        .map(|g| {
            let objs: Vec<&[f64]> = g.objectives().collect();
            let front: Vec<&[f64]> = non_dominated_subset(&objs)?.into_iter().map(|i| objs[i]).collect();
            hypervolume_exact(&front, &reference)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HypervolumeTrace { reference, values })
}
