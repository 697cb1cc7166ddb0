//! Variation operators: simulated binary crossover and bounded polynomial
//! mutation on the unit box.
//!
//! Each operator has a deterministic core taking the uniform draws explicitly,
//! and an rng-driven wrapper that fixes the order in which draws are consumed.

use rand::Rng;

use super::OperatorConfig;
use crate::domain::DecisionVector;

/// SBX spread factor for a uniform draw `u` in `[0, 1)`.
pub fn sbx_spread(u: f64, eta: f64) -> f64 {
    let exponent = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(exponent)
    }
}

/// Raw SBX children for explicit per-variable draws, before clamping.
///
/// `c1 = 0.5((1 + b) p1 + (1 - b) p2)` and `c2 = 0.5((1 - b) p1 + (1 + b) p2)`,
/// so the per-variable mean of the parents is preserved.
pub fn sbx_offspring(p1: &[f64], p2: &[f64], draws: &[f64], eta: f64) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(p1.len(), p2.len(), "parents differ in length");
    assert_eq!(p1.len(), draws.len(), "one draw per variable");
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for ((&a, &b), &u) in p1.iter().zip(p2).zip(draws) {
        if a == b {
            c1.push(a);
            c2.push(b);
            continue;
        }
        let beta = sbx_spread(u, eta);
        c1.push(0.5 * ((1.0 + beta) * a + (1.0 - beta) * b));
        c2.push(0.5 * ((1.0 - beta) * a + (1.0 + beta) * b));
    }
    (c1, c2)
}

/// Simulated binary crossover.
///
/// Draw order: one uniform to decide whether crossover happens, then (only if
/// it does) one uniform per variable.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &DecisionVector,
    p2: &DecisionVector,
    config: &OperatorConfig,
    rng: &mut R,
) -> (DecisionVector, DecisionVector) {
    let r: f64 = rng.gen();
    if r >= config.crossover_probability {
        return (p1.clone(), p2.clone());
    }
    let draws: Vec<f64> = (0..p1.len()).map(|_| rng.gen()).collect();
    let (c1, c2) = sbx_offspring(p1, p2, &draws, config.sbx_eta);
    (DecisionVector::clamped(c1), DecisionVector::clamped(c2))
}

/// Bounded polynomial mutation of a single variable in `[0, 1]` for draw `u`.
pub fn polynomial_perturb(x: f64, u: f64, eta: f64) -> f64 {
    let power = 1.0 / (eta + 1.0);
    // distances to the lower and upper bound
    let delta_low = x;
    let delta_high = 1.0 - x;
    let delta_q = if u < 0.5 {
        let xy = 1.0 - delta_low;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
        val.powf(power) - 1.0
    } else {
        let xy = 1.0 - delta_high;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
        1.0 - val.powf(power)
    };
    (x + delta_q).clamp(0.0, 1.0)
}

/// Polynomial mutation applied independently to each variable.
///
/// Draw order per variable: one uniform for the mutation decision, then one
/// more for the perturbation when it mutates.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &DecisionVector,
    config: &OperatorConfig,
    rng: &mut R,
) -> DecisionVector {
    let values = x
        .iter()
        .map(|&xi| {
            let r: f64 = rng.gen();
            if r < config.mutation_probability {
                let u: f64 = rng.gen();
                polynomial_perturb(xi, u, config.pm_eta)
            } else {
                xi
            }
        })
        .collect();
    DecisionVector::clamped(values)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn midpoint_draw_copies_parents() {
        let p1 = [0.1, 0.7, 0.3];
        let p2 = [0.9, 0.2, 0.35];
        let (c1, c2) = sbx_offspring(&p1, &p2, &[0.5; 3], 15.0);
        assert_eq!(c1, p1);
        assert_eq!(c2, p2);
    }

    #[test]
    fn identical_parents_are_fixed_point() {
        let p = DecisionVector::new(vec![0.2, 0.4, 0.9]).unwrap();
        let cfg = OperatorConfig { crossover_probability: 1.0, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (c1, c2) = sbx_crossover(&p, &p, &cfg, &mut rng);
            assert_eq!(c1, p);
            assert_eq!(c2, p);
        }
    }

    #[test]
    fn mean_is_preserved_before_clamping() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let p1: Vec<f64> = (0..6).map(|_| rng.gen()).collect();
            let p2: Vec<f64> = (0..6).map(|_| rng.gen()).collect();
            let u: Vec<f64> = (0..6).map(|_| rng.gen()).collect();
            let (c1, c2) = sbx_offspring(&p1, &p2, &u, 15.0);
            for i in 0..6 {
                let lhs = 0.5 * (c1[i] + c2[i]);
                let rhs = 0.5 * (p1[i] + p2[i]);
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            }
        }
    }

    #[test]
    fn no_crossover_returns_copies() {
        let p1 = DecisionVector::new(vec![0.1, 0.2]).unwrap();
        let p2 = DecisionVector::new(vec![0.8, 0.9]).unwrap();
        let cfg = OperatorConfig { crossover_probability: 0.0, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(sbx_crossover(&p1, &p2, &cfg, &mut rng), (p1, p2));
    }

    #[test]
    fn mutation_midpoint_is_identity() {
        for x in [0.0, 0.13, 0.5, 0.99, 1.0] {
            assert_eq!(polynomial_perturb(x, 0.5, 7.0), x);
        }
    }

    #[test]
    fn zero_probability_never_mutates() {
        let x = DecisionVector::new(vec![0.3; 12]).unwrap();
        let cfg = OperatorConfig { mutation_probability: 0.0, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(polynomial_mutation(&x, &cfg, &mut rng), x);
    }

    #[test]
    fn mutation_is_symmetric_at_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| polynomial_perturb(0.5, rng.gen(), 7.0))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn mutation_stays_in_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let x: f64 = rng.gen();
            let y = polynomial_perturb(x, rng.gen(), 7.0);
            assert!((0.0..=1.0).contains(&y));
        }
    }
}
