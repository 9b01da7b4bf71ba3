//! Double description: facets of the convex hull of integer points.
//!
//! The homogenized cone `{h : h0 + h.v >= 0 for every vertex v}` is built
//! one vertex at a time, starting from the simplicial cone of an invertible
//! row subset. Adjacency is decided combinatorially on tight-row bitsets.

use crate::error::{PolyError, Result};
use crate::ineq::LinearInequality;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub const MAX_DD_DIM: usize = 12;

struct Ray {
    h: Vec<i128>,
    tight: u128,
}

fn dot(a: &[i128], b: &[i128]) -> Option<i128> {
    a.iter()
        .zip(b)
        .try_fold(0i128, |s, (x, y)| s.checked_add(x.checked_mul(*y)?))
}

fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// Columns of the inverse of `b`, each scaled to a primitive integer vector.
fn inverse_columns(b: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let n = b.len();
    let mut m: Vec<Vec<BigRational>> = b
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            v.extend((0..n).map(|c| if c == r { BigRational::one() } else { BigRational::zero() }));
            v
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .ok_or(PolyError::Precondition("singular basis".into()))?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        m[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..n)
        .map(|k| {
            let col: Vec<&BigRational> = (0..n).map(|r| &m[r][n + k]).collect();
            let l = col.iter().fold(num_bigint::BigInt::one(), |l, x| l.lcm(x.denom()));
            col.iter()
                .map(|x| (x.numer() * (&l / x.denom())).to_i128().ok_or(PolyError::Overflow("dd basis")))
                .collect::<Result<Vec<i128>>>()
                .map(primitive)
        })
        .collect()
}

/// Facet inequalities of `conv(vertices)`, which must be full-dimensional.
/// Output is canonical and sorted.
pub fn hull_facets(vertices: &[Vec<i64>]) -> Result<Vec<LinearInequality>> {
    let d = vertices.first().map_or(0, |v| v.len());
    if d == 0 || d > MAX_DD_DIM || vertices.len() > 128 {
        return Err(PolyError::Unsupported(format!(
            "double description for {} points in dimension {d}",
            vertices.len()
        )));
    }
    let n = d + 1;
    let rows: Vec<Vec<i128>> = vertices
        .iter()
        .map(|v| std::iter::once(1i128).chain(v.iter().map(|&x| x as i128)).collect())
        .collect();
    let mut basis: Vec<usize> = Vec::new();
    for r in 0..rows.len() {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&b| to_i64(&rows[b])).collect();
        trial.push(to_i64(&rows[r]));
        if crate::rank::linear_rank(&trial) == trial.len() {
            basis.push(r);
            if basis.len() == n {
                break;
            }
        }
    }
    if basis.len() < n {
        return Err(PolyError::Precondition("points are not full-dimensional".into()));
    }
    let bmat: Vec<Vec<i128>> = basis.iter().map(|&r| rows[r].clone()).collect();
    let all_basis: u128 = basis.iter().fold(0, |m, &r| m | 1 << r);
    let mut rays: Vec<Ray> = inverse_columns(&bmat)?
        .into_iter()
        .enumerate()
        .map(|(k, h)| Ray {
            h,
            tight: all_basis & !(1u128 << basis[k]),
        })
        .collect();
    for (r, a) in rows.iter().enumerate() {
        if all_basis >> r & 1 == 1 {
            continue;
        }
        let s: Vec<i128> = rays
            .iter()
            .map(|ray| dot(a, &ray.h).ok_or(PolyError::Overflow("dd step")))
            .collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| s[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| s[i] < 0).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight & rays[q].tight;
                if (common.count_ones() as usize) + 2 < n {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|o| o != p && o != q && rays[o].tight & common == common);
                if blocked {
                    continue;
                }
                let h = rays[q]
                    .h
                    .iter()
                    .zip(&rays[p].h)
                    .map(|(x, y)| s[p].checked_mul(*x)?.checked_sub(s[q].checked_mul(*y)?))
                    .collect::<Option<Vec<i128>>>()
                    .ok_or(PolyError::Overflow("dd combine"))?;
                next.push(Ray {
                    h: primitive(h),
                    tight: common | 1 << r,
                });
            }
        }
        let old = std::mem::take(&mut rays);
        for (i, mut ray) in old.into_iter().enumerate() {
            if s[i] == 0 {
                ray.tight |= 1 << r;
            }
            if s[i] >= 0 {
                rays.push(ray);
            }
        }
        rays.extend(next);
    }
    let mut out: Vec<LinearInequality> = rays
        .iter()
        .map(|ray| {
            let coef = ray.h[1..]
                .iter()
                .map(|&c| (-c).to_i64().ok_or(PolyError::Overflow("dd output")))
                .collect::<Result<Vec<i64>>>()?;
            let rhs = ray.h[0].to_i64().ok_or(PolyError::Overflow("dd output"))?;
            Ok(LinearInequality::new(coef, rhs))
        })
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn to_i64(v: &[i128]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}
