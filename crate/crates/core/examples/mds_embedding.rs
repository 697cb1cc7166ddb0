//! Classical MDS recovers a planar configuration hidden in 10 dimensions.

use evohist::embedding::{classical_mds, pairwise_sq_distances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> evohist::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // two random orthogonal-ish directions spanning a plane in 10-D
    let u: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let v: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let points: Vec<Vec<f64>> = (0..40)
        .map(|_| {
            let (a, b): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            (0..10).map(|j| 0.5 + a * u[j] + b * v[j]).collect()
        })
        .collect();

    let d = pairwise_sq_distances(&points)?;
    let mds = classical_mds(&d)?;
    let mut worst: f64 = 0.0;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let (p, q) = (mds.coordinates[i], mds.coordinates[j]);
            let embedded = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
            worst = worst.max((embedded - d.get(i, j).sqrt()).abs());
        }
    }
    println!("eigenvalues {:?}", mds.eigenvalues);
    println!("largest distance error {worst:.3e}");
    Ok(())
}
