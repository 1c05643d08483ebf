//! Exact ranks: Gaussian elimination over `F_p`, fraction-free (Bareiss)
//! elimination over `ℚ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::commutation::{mul_mod, pow_mod, Field, FieldValue};

/// Rank of a dense matrix over `F_p` with entries already reduced mod `p`.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for j in c..ncols {
            rows[rank][j] = mul_mod(rows[rank][j], inv, p);
        }
        for i in rank + 1..rows.len() {
            let f = rows[i][c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                let sub = mul_mod(f, rows[rank][j], p);
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `ℚ`: each row is scaled to integers, then Bareiss elimination
/// keeps every intermediate entry a minor of the integer matrix.
pub fn rank_rational(rows: Vec<Vec<BigRational>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.into_iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..m.len() {
            for j in c + 1..ncols {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank of a matrix of field values (rows of equal length).
pub fn rank(field: &Field, rows: Vec<Vec<FieldValue>>) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|v| match v {
                            FieldValue::Modular(x) => x,
                            FieldValue::Rational(_) => unreachable!("mixed fields"),
                        })
                        .collect()
                })
                .collect(),
            *p,
        ),
        Field::Rationals => rank_rational(
            rows.into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|v| match v {
                            FieldValue::Rational(x) => x,
                            FieldValue::Modular(_) => unreachable!("mixed fields"),
                        })
                        .collect()
                })
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Plain Gauss–Jordan over `ℚ`.
    fn naive_rank(mut m: Vec<Vec<BigRational>>) -> usize {
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    for j in 0..ncols {
                        let s = &f * &m[rank][j];
                        m[i][j] -= s;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 101), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![3, 4]], 2), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![3, 4]], 101), 2);
        assert_eq!(rank_mod_p(vec![], 7), 0);
        assert_eq!(rank_rational(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]), 1);
        assert_eq!(rank_rational(vec![vec![q(0, 1), q(0, 1)]]), 0);
    }

    proptest! {
        #[test]
        fn bareiss_matches_gauss(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-3i64..4, 36)) {
            let m: Vec<Vec<BigRational>> = (0..rows)
                .map(|i| (0..cols).map(|j| q(seed[i * 6 + j], 1 + (i as i64 + j as i64) % 3)).collect())
                .collect();
            prop_assert_eq!(rank_rational(m.clone()), naive_rank(m));
        }
    }
}
