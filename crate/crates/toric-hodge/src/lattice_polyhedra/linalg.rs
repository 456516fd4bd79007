//! Exact rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub(crate) type Q = BigRational;

pub(crate) fn q_from(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub(crate) fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q_from(x)).collect()
}

pub(crate) fn big_to_i64(x: &BigInt, what: &'static str) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow(what))
}

/// Row-reduces `rows` to reduced echelon form, choosing pivots among the
/// first `ncols` columns and carrying any further columns along, and returns
/// the pivot columns.
pub(crate) fn rref(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    let mut q: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    rref(&mut q, ncols).len()
}

/// Scales a nonzero rational vector to the primitive integer vector with the same direction.
pub(crate) fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// A basis of `{x : rows · x = 0}`, each vector primitive and integral.
pub(crate) fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut q: Vec<Vec<Q>> = rows.iter().map(|r| to_q(r)).collect();
    let pivots = rref(&mut q, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -q[i][f].clone();
            }
            primitive_integer(&v)
        })
        .collect()
}

/// Determinant and adjugate of a square integer matrix, so that `a · adj = det · 1`.
pub(crate) fn det_adjugate(a: &[Vec<i64>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = a.len();
    let det = determinant(a);
    if det.is_zero() {
        return (det, vec![vec![BigInt::zero(); n]; n]);
    }
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = to_q(row);
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    rref(&mut aug, n);
    let d = Q::from_integer(det.clone());
    let adj = aug.into_iter().map(|r| r[n..].iter().map(|x| (x * &d).to_integer()).collect()).collect();
    (det, adj)
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub(crate) fn determinant(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Integer ceiling of a rational number.
pub(crate) fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// Determinant of a square matrix with arbitrary-precision entries.
#[cfg(test)]
pub(crate) fn determinant_big(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let mut det = Q::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= &m[k][k];
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    det.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]], 2), 2);
        assert_eq!(rank(&[], 3), 0);
    }

    #[test]
    fn determinant_matches_expansion() {
        let a = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        // cofactor expansion along the first row: 2·(-26) + 1·(-2)
        assert_eq!(determinant(&a), BigInt::from(-54));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn adjugate_inverts() {
        let a = vec![vec![-4, -2, -3], vec![1, 0, 0], vec![0, 0, 1]];
        let (det, adj) = det_adjugate(&a);
        for i in 0..3 {
            for j in 0..3 {
                let s: BigInt = (0..3).map(|k| BigInt::from(a[i][k]) * &adj[k][j]).sum();
                let e = if i == j { det.clone() } else { BigInt::zero() };
                assert_eq!(s, e);
            }
        }
    }

    #[test]
    fn kernel_is_primitive() {
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip([2, 4, 6]).map(|(a, b)| a * BigInt::from(b)).sum();
            assert!(dot.is_zero());
        }
    }
}
