//! Integer representations of nowhere-zero specializations.
//!
//! The construction recurses on `k`: the first row of the matrix is
//! `(delta, a_2, ..., a_n)` where `delta` is the gcd of the values on
//! subsets containing label 1, and the remaining rows represent the
//! `(k-1, n-1)` specialization `t -> p[1, t+1] / delta`.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{combinations, gcd_bezout, Int, Matrix};
use crate::pluecker::{first_violation, pluecker_of_matrix, Specialization};

/// Integer matrix whose maximal minors are exactly the values of `s`.
///
/// Requires every value to be nonzero and all Plücker relations to hold.
pub fn realize(s: &Specialization) -> Result<Matrix> {
    s.require_nonzero()?;
    if let Some(v) = first_violation(s) {
        return Err(Error::InconsistentSpecialization(v.to_string()));
    }
    let x = realize_unchecked(s)?;
    let back = pluecker_of_matrix(&x)?;
    if &back != s {
        return Err(Error::InternalPostconditionFailure(
            "realized matrix does not reproduce the prescribed minors".into(),
        ));
    }
    Ok(x)
}

/// The recursion without the up-front relation check and final audit.
pub(crate) fn realize_unchecked(s: &Specialization) -> Result<Matrix> {
    let (k, n) = (s.k(), s.n());
    if k == 1 {
        let row: Vec<Int> = (1..=n).map(|i| s.get(&[i]).clone()).collect();
        return Matrix::new(1, n, row);
    }

    // (k-1)-subsets of {2..n}, lexicographic
    let tails: Vec<Vec<usize>> = combinations(n - 1, k - 1)
        .map(|c| c.iter().map(|i| i + 2).collect())
        .collect();
    let first_values: Vec<Int> = tails
        .iter()
        .map(|t| {
            let mut idx = Vec::with_capacity(k);
            idx.push(1);
            idx.extend_from_slice(t);
            s.get(&idx).clone()
        })
        .collect();
    let (delta, lambdas) = gcd_bezout(&first_values);
    if delta.is_zero() {
        return Err(Error::ZeroValue(
            std::iter::once(1).chain(tails[0].iter().copied()).collect(),
        ));
    }

    // a_j = sum over tails of lambda_tail * p[j, tail]
    let mut first_row = Vec::with_capacity(n);
    first_row.push(delta.clone());
    let mut word = vec![0; k];
    for j in 2..=n {
        let mut a = Int::zero();
        for (tail, lambda) in tails.iter().zip(&lambdas) {
            if lambda.is_zero() {
                continue;
            }
            word[0] = j;
            word[1..].copy_from_slice(tail);
            a += lambda * s.value_at(&word);
        }
        first_row.push(a);
    }

    // t -> p[1, t+1] / delta on (k-1)-subsets of {1..n-1}
    let sub = Specialization::from_fn(k - 1, n - 1, |t| {
        let mut idx = Vec::with_capacity(k);
        idx.push(1);
        idx.extend(t.iter().map(|i| i + 1));
        let (q, r) = s.get(&idx).div_rem(&delta);
        if !r.is_zero() {
            return Err(Error::InternalPostconditionFailure(format!(
                "{delta} does not divide the value at {idx:?}"
            )));
        }
        Ok(q)
    })?;
    let lower = realize_unchecked(&sub)?;

    let mut x = Matrix::zeros(k, n);
    for (j, v) in first_row.into_iter().enumerate() {
        x[(0, j)] = v;
    }
    for i in 0..k - 1 {
        for j in 0..n - 1 {
            x[(i + 1, j + 1)] = lower[(i, j)].clone();
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::int;
    use std::collections::BTreeMap;

    #[test]
    fn rank_one_is_the_value_row() {
        let map: BTreeMap<_, _> = [(vec![1], int(2)), (vec![2], int(5)), (vec![3], int(7))]
            .into_iter()
            .collect();
        let s = Specialization::from_map(1, 3, &map).unwrap();
        assert_eq!(realize(&s).unwrap(), Matrix::from_i64(&[[2, 5, 7]]));
    }

    #[test]
    fn all_threes() {
        let s = Specialization::constant(2, 3, int(3)).unwrap();
        let x = realize(&s).unwrap();
        assert_eq!(pluecker_of_matrix(&x).unwrap(), s);
        assert_eq!(x[(1, 0)], int(0));
    }

    #[test]
    fn square_case() {
        let s = Specialization::constant(3, 3, int(-7)).unwrap();
        let x = realize(&s).unwrap();
        assert_eq!(pluecker_of_matrix(&x).unwrap(), s);
    }

    #[test]
    fn rejects_zero_and_inconsistent_values() {
        let x = Matrix::from_i64(&[[1, 0, 1], [0, 1, 0]]);
        let s = pluecker_of_matrix(&x).unwrap();
        assert!(matches!(realize(&s), Err(Error::ZeroValue(v)) if v == vec![1, 3]));

        let bad = Specialization::constant(2, 4, int(1)).unwrap();
        assert!(matches!(
            realize(&bad),
            Err(Error::InconsistentSpecialization(_))
        ));
    }

    #[test]
    fn random_matrices_round_trip() {
        let rows = [[3, -1, 2, 5, 1], [1, 4, -2, 1, 7], [2, 2, 1, -3, 1]];
        let x = Matrix::from_i64(&rows);
        let s = pluecker_of_matrix(&x).unwrap();
        s.require_nonzero().unwrap();
        let y = realize(&s).unwrap();
        assert_eq!(pluecker_of_matrix(&y).unwrap(), s);
    }
}
