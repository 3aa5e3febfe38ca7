//! Exact linear algebra over ℚ.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rings::Rational;

/// Rank of the matrix with the given rows, by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators, which preserves the rank.
/// Every intermediate entry is a minor of that integer matrix, so the divisions by the
/// previous pivot are exact.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = Rational::denominator_lcm(row);
            (0..cols)
                .map(|j| match row.get(j) {
                    Some(q) => q.numer() * (&l / q.denom()),
                    None => BigInt::zero(),
                })
                .collect()
        })
        .collect();
    let n = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in col + 1..cols {
                let v = &pivot_row[col] * &row[j] - &row[col] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}
