//! Das-Dennis reference directions on the unit simplex.

use crate::error::{Error, Result};

/// Largest direction set [`das_dennis`] will enumerate.
pub const MAX_DIRECTIONS: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceDirectionSet {
    pub directions: Vec<Vec<f64>>,
    pub partitions: usize,
}

impl ReferenceDirectionSet {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn num_objectives(&self) -> usize {
        self.directions.first().map_or(0, Vec::len)
    }
}

/// `C(n, k)`, or `None` once it exceeds `u128`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Number of directions for `m` objectives and `p` partitions: `C(m + p - 1, p)`.
pub fn direction_count(m: usize, p: usize) -> Option<u128> {
    binomial((m + p - 1) as u64, p as u64)
}

/// All vectors with components in `{0, 1/p, ..., 1}` summing to one, in
/// ascending lexicographic order.
pub fn das_dennis(m: usize, p: usize) -> Result<ReferenceDirectionSet> {
    if m < 2 {
        return Err(Error::config("reference directions need at least 2 objectives"));
    }
    if p < 1 {
        return Err(Error::config("reference directions need at least 1 partition"));
    }
    match direction_count(m, p) {
        Some(c) if c <= MAX_DIRECTIONS => {}
        _ => {
            return Err(Error::config(format!(
                "{m} objectives with {p} partitions exceeds {MAX_DIRECTIONS} reference directions"
            )))
        }
    }

    let mut directions = Vec::new();
    let mut parts = vec![0usize; m];
    compositions(&mut parts, 0, p, &mut |c| {
        directions.push(c.iter().map(|&q| q as f64 / p as f64).collect());
    });
    Ok(ReferenceDirectionSet { directions, partitions: p })
}

fn compositions(parts: &mut [usize], pos: usize, left: usize, emit: &mut impl FnMut(&[usize])) {
    if pos == parts.len() - 1 {
        parts[pos] = left;
        emit(parts);
        return;
    }
    for q in 0..=left {
        parts[pos] = q;
        compositions(parts, pos + 1, left - q, emit);
    }
}
