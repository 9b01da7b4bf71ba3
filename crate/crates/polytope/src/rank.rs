//! Exact affine rank by fraction-free elimination.
//!
//! Rows are reduced in `i128`; if any product overflows the whole
//! computation is redone over big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Rank of the rows `(x, 1)`. Stops early once `stop_at` is reached.
pub fn affine_rank<'a, I>(points: I, stop_at: usize) -> usize
where
    I: IntoIterator<Item = &'a [i64]> + Clone,
{
    let lifted = |it: I| {
        it.into_iter().map(|x| {
            let mut r: Vec<i64> = x.to_vec();
            r.push(1);
            r
        })
    };
    match rank_i128(lifted(points.clone()), stop_at) {
        Some(r) => r,
        None => rank_big(lifted(points), stop_at),
    }
}

/// Linear rank of integer rows.
pub fn linear_rank(rows: &[Vec<i64>]) -> usize {
    let n = rows.len();
    match rank_i128(rows.iter().cloned(), n) {
        Some(r) => r,
        None => rank_big(rows.iter().cloned(), n),
    }
}

fn rank_i128(rows: impl Iterator<Item = Vec<i64>>, stop_at: usize) -> Option<usize> {
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for r in rows {
        if basis.len() >= stop_at {
            break;
        }
        let mut v: Vec<i128> = r.into_iter().map(i128::from).collect();
        for (c, b) in &basis {
            let a = v[*c];
            if a == 0 {
                continue;
            }
            let p = b[*c];
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.checked_mul(p)?.checked_sub(a.checked_mul(*y)?)?;
            }
            let g = v.iter().fold(0i128, |g, x| g.gcd(x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        if let Some(c) = v.iter().position(|&x| x != 0) {
            let at = basis.partition_point(|(d, _)| *d < c);
            basis.insert(at, (c, v));
        }
    }
    Some(basis.len())
}

fn rank_big(rows: impl Iterator<Item = Vec<i64>>, stop_at: usize) -> usize {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for r in rows {
        if basis.len() >= stop_at {
            break;
        }
        let mut v: Vec<BigInt> = r.into_iter().map(BigInt::from).collect();
        for (c, b) in &basis {
            if v[*c].is_zero() {
                continue;
            }
            let a = v[*c].clone();
            let p = &b[*c];
            for (x, y) in v.iter_mut().zip(b) {
                *x = &*x * p - &a * y;
            }
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g > BigInt::from(1) {
                v.iter_mut().for_each(|x| *x = &*x / &g);
            }
        }
        if let Some(c) = v.iter().position(|x| !x.is_zero()) {
            debug_assert!(!v[c].abs().is_zero());
            let at = basis.partition_point(|(d, _)| *d < c);
            basis.insert(at, (c, v));
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let pts: Vec<Vec<i64>> = vec![vec![0, 0], vec![1, 0], vec![2, 0]];
        assert_eq!(affine_rank(pts.iter().map(|v| v.as_slice()), 10), 2);
        let pts: Vec<Vec<i64>> = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        assert_eq!(affine_rank(pts.iter().map(|v| v.as_slice()), 10), 3);
        assert_eq!(linear_rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    #[test]
    fn big_path_matches() {
        let rows = vec![
            vec![i64::MAX, 3, 1],
            vec![i64::MAX - 1, 5, 7],
            vec![i64::MAX / 3, i64::MAX / 5, 11],
        ];
        assert_eq!(rank_big(rows.clone().into_iter(), 3), 3);
        assert_eq!(linear_rank(&rows), 3);
    }
}
