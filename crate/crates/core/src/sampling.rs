//! Random inputs for property sweeps.

use std::ops::RangeInclusive;

use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactlin::{det_columns, vector_volume, Int, Matrix};
use crate::frieze::{enumerate_triangulations, FriezeSequence, Triangulation};
use crate::pluecker::pluecker_of_matrix;

/// Draws a `k x n` matrix with entries in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rng: &mut R, k: usize, n: usize, bound: i64) -> Matrix {
    let data = (0..k * n).map(|_| Int::from(rng.gen_range(-bound..=bound))).collect();
    Matrix::new(k, n, data).expect("positive dimensions")
}

/// Rejection-samples a matrix whose maximal minors are all nonzero.
pub fn random_nowhere_zero<R: Rng>(rng: &mut R, k: usize, n: usize, bound: i64) -> Matrix {
    loop {
        let x = random_matrix(rng, k, n, bound);
        if pluecker_of_matrix(&x).is_ok_and(|s| s.first_zero().is_none()) {
            return x;
        }
    }
}

/// Rejection-samples a matrix with primitive columns, all increasing
/// minors positive, and frozen product at most `max_d`. The shape is
/// redrawn on every attempt (`k` from `ks`, `n` from `k..=n_max`) since
/// wide positive shapes are rare among random matrices.
pub fn random_positive_configuration<R: Rng>(
    rng: &mut R,
    ks: RangeInclusive<usize>,
    n_max: usize,
    bound: i64,
    max_d: &Int,
) -> Matrix {
    loop {
        let k = rng.gen_range(ks.clone());
        let n = rng.gen_range(k..=n_max.max(k));
        let x = random_matrix(rng, k, n, bound);
        if (0..n).any(|j| !vector_volume(&x.column(j)).is_one()) {
            continue;
        }
        let positive = crate::exactlin::combinations(n, k).all(|c| {
            let cols: Vec<Vec<Int>> = c.iter().map(|&j| x.column(j)).collect();
            let refs: Vec<&[Int]> = cols.iter().map(Vec::as_slice).collect();
            det_columns(&refs).is_positive()
        });
        if positive && &FriezeSequence::from_matrix(&x).frozen_product() <= max_d {
            return x;
        }
    }
}

/// A uniformly chosen triangulation of the `n`-gon (`n <= 12`).
pub fn random_triangulation<R: Rng>(rng: &mut R, n: usize) -> Triangulation {
    enumerate_triangulations(n)
        .expect("n within enumeration range")
        .choose(rng)
        .cloned()
        .expect("at least one triangulation")
}

/// A random increasing subset of `1..=n` with at least `min` elements.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, min: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
        if s.len() >= min {
            return s;
        }
    }
}
