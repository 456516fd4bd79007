//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `left · original · right = diag(diag)` with unimodular `left`, `right`
/// and `diag[i] | diag[i+1]`, all entries of `diag` nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: Vec<Vec<BigInt>>,
    pub diag: Vec<BigInt>,
    pub right: Vec<Vec<BigInt>>,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Smith normal form of an integer matrix given by its rows.
///
/// The number of columns is taken from the first row; use
/// [`smith_normal_form_with_cols`] for matrices without rows.
pub fn smith_normal_form(mat: &[Vec<i64>]) -> SmithDecomposition {
    let cols = mat.first().map_or(0, Vec::len);
    smith_normal_form_with_cols(mat, cols)
}

pub fn smith_normal_form_with_cols(mat: &[Vec<i64>], cols: usize) -> SmithDecomposition {
    let a: Vec<Vec<BigInt>> = mat.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    smith_big(a, cols)
}

pub(crate) fn smith_big(mut a: Vec<Vec<BigInt>>, cols: usize) -> SmithDecomposition {
    let rows = a.len();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let steps = rows.min(cols);
    let mut diag = vec![BigInt::zero(); steps];

    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                return SmithDecomposition { left, diag, right };
            };
            a.swap(t, pi);
            left.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in right.iter_mut() {
                    row.swap(t, pj);
                }
            }

            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                for j in 0..rows {
                    let d = &q * &left[t][j];
                    left[i][j] -= d;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let d = &q * &a[i][t];
                    a[i][j] -= d;
                }
                for i in 0..cols {
                    let d = &q * &right[i][t];
                    right[i][j] -= d;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            if let Some(i) = bad {
                for j in 0..cols {
                    let v = a[i][j].clone();
                    a[t][j] += v;
                }
                for j in 0..rows {
                    let v = left[i][j].clone();
                    left[t][j] += v;
                }
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag[t] = a[t][t].clone();
    }
    SmithDecomposition { left, diag, right }
}
