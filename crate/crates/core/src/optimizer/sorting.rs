//! Fast non-dominated sorting and crowding distance.

use crate::domain::dominates_unchecked;
use crate::error::{Error, Result};

/// Partitions `points` into Pareto fronts, best first.
///
/// Each front lists indices in ascending order; every index appears in exactly
/// one front. Runs in `O(M N^2)`.
pub fn fast_nondominated_sort<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<Vec<usize>>> {
    let n = points.len();
    if n == 0 {
        return Err(Error::contract("cannot sort an empty population"));
    }
    let m = points[0].as_ref().len();
    if points.iter().any(|p| p.as_ref().len() != m) {
        return Err(Error::contract("points have differing lengths"));
    }

    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (points[i].as_ref(), points[j].as_ref());
            if dominates_unchecked(a, b) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if dominates_unchecked(b, a) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    Ok(fronts)
}

/// Front rank of every point, derived from [`fast_nondominated_sort`].
pub fn ranks_from_fronts(fronts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut rank = vec![0; n];
    for (r, front) in fronts.iter().enumerate() {
        for &i in front {
            rank[i] = r;
        }
    }
    rank
}

/// Crowding distance of every member of a front.
///
/// Fronts of at most two members get infinite distance throughout. Otherwise
/// exact duplicates of an earlier member get 0 and the remaining members are
/// scored on the de-duplicated front: per objective the extreme members get
/// infinity and interior members accumulate `(next - prev) / range`. An
/// objective with zero range contributes nothing to interior members.
pub fn crowding_distance<P: AsRef<[f64]>>(front: &[P]) -> Result<Vec<f64>> {
    let n = front.len();
    if n == 0 {
        return Err(Error::contract("crowding distance of an empty front"));
    }
    if n <= 2 {
        return Ok(vec![f64::INFINITY; n]);
    }
    let m = front[0].as_ref().len();

    let mut distance = vec![0.0; n];
    let unique: Vec<usize> = (0..n)
        .filter(|&i| (0..i).all(|j| front[j].as_ref() != front[i].as_ref()))
        .collect();
    if unique.len() <= 2 {
        for &i in &unique {
            distance[i] = f64::INFINITY;
        }
        return Ok(distance);
    }

    let mut order = unique.clone();
    for obj in 0..m {
        let value = |i: usize| front[i].as_ref()[obj];
        // stable: ties keep ascending index order
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)));
        let first = order[0];
        let last = order[order.len() - 1];
        let range = value(last) - value(first);
        distance[first] = f64::INFINITY;
        distance[last] = f64::INFINITY;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            distance[mid] += (value(next) - value(prev)) / range;
        }
    }
    Ok(distance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_example() {
        let pts = vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(
            fast_nondominated_sort(&pts).unwrap(),
            vec![vec![0, 1], vec![2], vec![3]]
        );
    }

    #[test]
    fn mutually_non_dominating_is_one_front() {
        let pts: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, 9.0 - i as f64]).collect();
        let fronts = fast_nondominated_sort(&pts).unwrap();
        assert_eq!(fronts, vec![(0..10).collect::<Vec<_>>()]);
    }

    #[test]
    fn crowding_two_points() {
        let d = crowding_distance(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(d, vec![f64::INFINITY; 2]);
    }

    #[test]
    fn crowding_three_points() {
        let d = crowding_distance(&[vec![0.0, 2.0], vec![1.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(d[1], 2.0);
        assert!(d[0].is_infinite() && d[2].is_infinite());
    }

    #[test]
    fn crowding_duplicates_get_zero() {
        let front = [
            vec![0.0, 2.0],
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            vec![1.0, 1.0],
            vec![2.0, 0.0],
        ];
        let d = crowding_distance(&front).unwrap();
        assert_eq!(d[1], 2.0);
        assert_eq!(d[2], 0.0);
        assert_eq!(d[3], 0.0);
    }

    #[test]
    fn crowding_zero_range_axis_is_finite() {
        let front = [vec![0.0, 1.0], vec![0.5, 1.0], vec![1.0, 1.0]];
        let d = crowding_distance(&front).unwrap();
        assert!(d.iter().all(|v| !v.is_nan()));
        assert!(d.iter().any(|v| v.is_infinite()));
    }

    #[test]
    fn empty_inputs_are_rejected() {
        let empty: Vec<Vec<f64>> = vec![];
        assert!(fast_nondominated_sort(&empty).is_err());
        assert!(crowding_distance(&empty).is_err());
    }
}
