use super::linalg::big_to_i64;
use super::snf::smith_normal_form_with_cols;
use crate::error::{Error, Result};

/// Moves supports into the smallest saturated sublattice containing their differences.
///
/// Each support is translated by minus its lexicographically smallest point.
/// The saturation `L` of the lattice spanned by all translated points is split
/// off with a Smith normal form, and the result lists the rank of `L` together
/// with the coordinates of the translated points in a basis of `L`. Because
/// `L` is saturated, `Z^m = L + complement` holds integrally and the remaining
/// torus factor has dimension `m - rank`. When `L` is all of `Z^m` the standard
/// basis is kept, and each reduced support is translated once more so that its
/// lexicographically smallest point is the origin; together this makes the
/// reduction idempotent.
///
/// # Errors
/// An empty support or points of inconsistent dimension.
pub fn affine_lattice_reduction(supports: &[Vec<Vec<i64>>]) -> Result<(usize, Vec<Vec<Vec<i64>>>)> {
    let m = supports.iter().flat_map(|s| s.iter()).map(Vec::len).next().unwrap_or(0);
    let mut translated: Vec<Vec<Vec<i64>>> = Vec::with_capacity(supports.len());
    for s in supports {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        if s.iter().any(|p| p.len() != m) {
            return Err(Error::InvalidInput("support points of different dimensions".into()));
        }
        let base = s.iter().min().expect("nonempty").clone();
        translated.push(s.iter().map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect()).collect());
    }
    let rows: Vec<Vec<i64>> = translated.iter().flatten().cloned().collect();
    let snf = smith_normal_form_with_cols(&rows, m);
    let rank = snf.rank();
    let right: Vec<Vec<i64>> = if rank == m {
        (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect()
    } else {
        snf.right
            .iter()
            .map(|row| row.iter().map(|x| big_to_i64(x, "lattice reduction")).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?
    };
    let reduced = translated
        .iter()
        .map(|s| {
            let mut pts: Vec<Vec<i64>> =
                s.iter().map(|p| (0..rank).map(|c| (0..m).map(|k| p[k] * right[k][c]).sum()).collect()).collect();
            pts.sort();
            pts.dedup();
            let base = pts[0].clone();
            for p in pts.iter_mut() {
                for (x, b) in p.iter_mut().zip(&base) {
                    *x -= b;
                }
            }
            pts
        })
        .collect();
    Ok((rank, reduced))
}
