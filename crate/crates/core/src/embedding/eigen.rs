//! Leading eigenpairs of the double-centred Gram matrix of a squared-distance
//! matrix.
//!
//! Small problems go through a full symmetric eigendecomposition. Larger ones
//! use block subspace iteration with Rayleigh-Ritz extraction, driven by a
//! matrix-free product with `B = -1/2 J D J`, so only the packed distance
//! matrix is ever stored.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SqDistances;

/// Largest `n` handled by the dense decomposition.
pub(crate) const DENSE_LIMIT: usize = 400;

const BLOCK: usize = 32;
const MAX_ITERATIONS: usize = 500;
const RESIDUAL_TOLERANCE: f64 = 1e-10;
const START_SEED: u64 = 0x6d64_735f_7374_6172;

/// Eigenpairs sorted by descending eigenvalue; `vectors[k]` has length `n`.
pub(crate) struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

pub(crate) fn top_eigenpairs(dist: &SqDistances, k: usize) -> Eigenpairs {
    if dist.len() <= DENSE_LIMIT {
        dense_top(dist, k)
    } else {
        subspace_top(dist, k)
    }
}

/// `B = -1/2 J D J` materialised.
pub(crate) fn gram_matrix(dist: &SqDistances) -> DMatrix<f64> {
    let n = dist.len();
    let row_mean: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| dist.get(i, j)).sum::<f64>() / n as f64)
        .collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    DMatrix::from_fn(n, n, |i, j| -0.5 * (dist.get(i, j) - row_mean[i] - row_mean[j] + grand))
}

pub(crate) fn dense_top(dist: &SqDistances, k: usize) -> Eigenpairs {
    let eig = SymmetricEigen::new(gram_matrix(dist));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order.truncate(k);
    Eigenpairs {
        values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        vectors: order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
            .collect(),
    }
}

/// `B X` for a block `X` (n x p, column-major) without forming `B`.
fn apply_gram(dist: &SqDistances, x: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, p) = x.shape();
    // centre the columns, then store row-major for the packed sweep
    let mut w = vec![0.0; n * p];
    for c in 0..p {
        let col = x.column(c);
        let mean = col.sum() / n as f64;
        for r in 0..n {
            w[r * p + c] = col[r] - mean;
        }
    }
    let mut u = vec![0.0; n * p];
    for i in 0..n {
        let row = dist.upper_row(i);
        let (head, tail) = u.split_at_mut((i + 1) * p);
        let ui = &mut head[i * p..];
        let wi = &w[i * p..(i + 1) * p];
        for (off, &dij) in row.iter().enumerate() {
            let j = i + 1 + off;
            let wj = &w[j * p..(j + 1) * p];
            let uj = &mut tail[off * p..(off + 1) * p];
            for c in 0..p {
                ui[c] += dij * wj[c];
                uj[c] += dij * wi[c];
            }
        }
    }
    let mut out = DMatrix::zeros(n, p);
    for c in 0..p {
        let mean = (0..n).map(|r| u[r * p + c]).sum::<f64>() / n as f64;
        for r in 0..n {
            out[(r, c)] = -0.5 * (u[r * p + c] - mean);
        }
    }
    out
}

fn orthonormalise(m: DMatrix<f64>) -> DMatrix<f64> {
    m.qr().q()
}

pub(crate) fn subspace_top(dist: &SqDistances, k: usize) -> Eigenpairs {
    let n = dist.len();
    let p = BLOCK.min(n).max(k);
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut basis = orthonormalise(DMatrix::from_fn(n, p, |_, _| rng.gen::<f64>() - 0.5));

    let mut best = None;
    for _ in 0..MAX_ITERATIONS {
        let image = apply_gram(dist, &basis);
        let projected = basis.transpose() * &image;
        let projected = (&projected + projected.transpose()) * 0.5;
        let eig = SymmetricEigen::new(projected);
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let rotation = DMatrix::from_fn(p, p, |r, c| eig.eigenvectors[(r, order[c])]);
        let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let ritz = &basis * &rotation;
        let ritz_image = &image * &rotation;

        let scale = values[0].abs().max(f64::MIN_POSITIVE);
        let converged = (0..k).all(|c| {
            let residual = (ritz_image.column(c) - ritz.column(c) * values[c]).norm();
            residual <= RESIDUAL_TOLERANCE * scale
        });
        let pairs = Eigenpairs {
            values: values[..k].to_vec(),
            vectors: (0..k).map(|c| ritz.column(c).iter().copied().collect()).collect(),
        };
        if converged {
            return pairs;
        }
        best = Some(pairs);
        basis = orthonormalise(ritz_image);
    }
    best.expect("at least one iteration ran")
}
