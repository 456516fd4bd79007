//! Convex hulls of lattice point sets, Minkowski sums and normal fans.
//!
//! Facets of a full-dimensional hull are the extreme rays of the cone
//! `{(a, b) : <a, p> >= b for every point p}`, computed by the double
//! description method with the combinatorial adjacency test. Lower-dimensional
//! point sets are first moved into coordinates on their affine lattice.

use num_integer::Integer;

use super::linalg::big_to_i64;
use super::snf::smith_normal_form_with_cols;
use crate::error::{Error, Result};
use crate::fan::Fan;

/// The facet inequality `<normal, x> >= bound` with primitive inner normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub bound: i64,
}

/// A lattice polytope in both vertex and facet representation.
///
/// Vertices of a hull of lattice points are lattice points, so they are stored
/// as integer vectors. For a polytope of affine dimension `dim` below
/// `ambient_dim`, `equations` cut out its affine hull and `facets` are the
/// facets inside that hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub ambient_dim: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    /// Pairs `(normal, value)` meaning `<normal, x> = value`.
    pub equations: Vec<(Vec<i64>, i64)>,
}

impl Polytope {
    /// Whether `x` satisfies every equation and facet inequality.
    pub fn contains(&self, x: &[i64]) -> bool {
        let dot = |n: &[i64]| -> i128 { n.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum() };
        self.equations.iter().all(|(n, v)| dot(n) == *v as i128)
            && self.facets.iter().all(|f| dot(&f.normal) >= f.bound as i128)
    }
}

fn dot128(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut s: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        s = s
            .checked_add(x.checked_mul(*y).ok_or(Error::Overflow("convex hull"))?)
            .ok_or(Error::Overflow("convex hull"))?;
    }
    Ok(s)
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

#[derive(Clone)]
struct Ray {
    v: Vec<i128>,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn contains_all(sup: &[u64], sub_a: &[u64], sub_b: &[u64]) -> bool {
    sup.iter().zip(sub_a).zip(sub_b).all(|((s, a), b)| (a & b) & !s == 0)
}

/// Facets of the hull of `points`, which must affinely span `Q^d`.
fn full_dim_facets(points: &[Vec<i64>], d: usize) -> Result<Vec<Facet>> {
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| {
            let mut r: Vec<i128> = p.iter().map(|&x| x as i128).collect();
            r.push(-1);
            r
        })
        .collect();
    let n = d + 1;
    let words = rows.len().div_ceil(64);

    // initial simplicial cone from the first independent rows
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<i64>> = chosen.iter().map(|&j| to_i64_row(&rows[j])).collect::<Result<_>>()?;
        trial.push(to_i64_row(&rows[i])?);
        if super::linalg::rank(&trial, n) == trial.len() {
            chosen.push(i);
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return Err(Error::InvalidInput("points do not span the expected dimension".into()));
    }
    let basis: Vec<Vec<i64>> = chosen.iter().map(|&j| to_i64_row(&rows[j])).collect::<Result<_>>()?;
    let (_, adj) = super::linalg::det_adjugate(&basis);
    let det = super::linalg::determinant(&basis);
    let mut rays: Vec<Ray> = Vec::with_capacity(n);
    for c in 0..n {
        // column c of the inverse, oriented so that basis row c is positive on it
        let mut v: Vec<i128> =
            (0..n).map(|i| big_to_i64(&adj[i][c], "convex hull").map(|x| x as i128)).collect::<Result<_>>()?;
        if det < num_bigint::BigInt::from(0) {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        make_primitive(&mut v);
        let mut tight = vec![0u64; words];
        for (k, &j) in chosen.iter().enumerate() {
            if k != c {
                bit_set(&mut tight, j);
            }
        }
        rays.push(Ray { v, tight });
    }

    for (i, h) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot128(h, &r.v)).collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k] < 0).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k] == 0 {
                    bit_set(&mut r.tight, i);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &a in &pos {
            for &b in &neg {
                let common = and_count(&rays[a].tight, &rays[b].tight);
                if common + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|c| c == a || c == b || !contains_all(&rays[c].tight, &rays[a].tight, &rays[b].tight));
                if !adjacent {
                    continue;
                }
                let mut v = Vec::with_capacity(n);
                for k in 0..n {
                    let x = vals[a]
                        .checked_mul(rays[b].v[k])
                        .and_then(|p| p.checked_sub(vals[b].checked_mul(rays[a].v[k])?))
                        .ok_or(Error::Overflow("convex hull"))?;
                    v.push(x);
                }
                make_primitive(&mut v);
                let mut tight: Vec<u64> = rays[a].tight.iter().zip(&rays[b].tight).map(|(x, y)| x & y).collect();
                bit_set(&mut tight, i);
                next.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k] > 0 {
                kept.push(r);
            } else if vals[k] == 0 {
                bit_set(&mut r.tight, i);
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    let mut facets: Vec<Facet> = Vec::new();
    for r in rays {
        let mut a: Vec<i128> = r.v[..d].to_vec();
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let g = a.iter().fold(0i128, |g, x| g.gcd(x));
        for x in a.iter_mut() {
            *x /= g;
        }
        let normal: Vec<i64> =
            a.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("convex hull"))).collect::<Result<_>>()?;
        // the bound is attained at some point of the set
        let bound = points
            .iter()
            .map(|p| p.iter().zip(&normal).map(|(&x, &y)| x as i128 * y as i128).sum::<i128>())
            .min()
            .expect("nonempty point set");
        let bound = i64::try_from(bound).map_err(|_| Error::Overflow("convex hull"))?;
        facets.push(Facet { normal, bound });
    }
    facets.sort();
    facets.dedup();
    Ok(facets)
}

fn to_i64_row(r: &[i128]) -> Result<Vec<i64>> {
    r.iter().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("convex hull"))).collect()
}

/// Exact convex hull of a nonempty list of lattice points.
///
/// # Errors
/// Empty input, inconsistent point lengths, or overflow of the fixed-width path.
pub fn convex_hull(points: &[Vec<i64>]) -> Result<Polytope> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("convex hull of an empty point set".into()));
    };
    let m = first.len();
    if points.iter().any(|p| p.len() != m) {
        return Err(Error::InvalidInput("points of different dimensions".into()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let base = pts[0].clone();
    let diffs: Vec<Vec<i64>> = pts.iter().map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
    let snf = smith_normal_form_with_cols(&diffs, m);
    let rho = snf.rank();
    let right: Vec<Vec<i64>> = snf
        .right
        .iter()
        .map(|row| row.iter().map(|x| big_to_i64(x, "convex hull")).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let coords: Vec<Vec<i64>> =
        diffs.iter().map(|d| (0..rho).map(|c| (0..m).map(|k| d[k] * right[k][c]).sum()).collect()).collect();
    let equations: Vec<(Vec<i64>, i64)> = (rho..m)
        .map(|c| {
            let normal: Vec<i64> = (0..m).map(|k| right[k][c]).collect();
            let value = normal.iter().zip(&base).map(|(a, b)| a * b).sum();
            (normal, value)
        })
        .collect();

    if rho == 0 {
        return Ok(Polytope { ambient_dim: m, dim: 0, vertices: vec![base], facets: Vec::new(), equations });
    }
    let local = full_dim_facets(&coords, rho)?;
    let mut vertices = Vec::new();
    for (p, c) in pts.iter().zip(&coords) {
        let tight: Vec<Vec<i64>> = local
            .iter()
            .filter(|f| f.normal.iter().zip(c).map(|(a, b)| a * b).sum::<i64>() == f.bound)
            .map(|f| f.normal.clone())
            .collect();
        if super::linalg::rank(&tight, rho) == rho {
            vertices.push(p.clone());
        }
    }
    let mut facets: Vec<Facet> = local
        .iter()
        .map(|f| {
            let normal: Vec<i64> = (0..m).map(|k| (0..rho).map(|c| right[k][c] * f.normal[c]).sum()).collect();
            let shift: i64 = normal.iter().zip(&base).map(|(a, b)| a * b).sum();
            Facet { normal, bound: f.bound + shift }
        })
        .collect();
    facets.sort();
    Ok(Polytope { ambient_dim: m, dim: rho, vertices, facets, equations })
}

/// Convex hull of the Minkowski sum `M_1 + ... + M_k`.
///
/// # Errors
/// An empty list, an empty support, or supports of different dimensions.
pub fn minkowski_support(supports: &[Vec<Vec<i64>>]) -> Result<Polytope> {
    if supports.is_empty() {
        return Err(Error::InvalidInput("Minkowski sum of no supports".into()));
    }
    if supports.iter().any(Vec::is_empty) {
        return Err(Error::InvalidInput("empty support".into()));
    }
    let mut acc: Vec<Vec<i64>> = convex_hull(&supports[0])?.vertices;
    for s in &supports[1..] {
        let verts = convex_hull(s)?.vertices;
        if verts[0].len() != acc[0].len() {
            return Err(Error::InvalidInput("supports of different dimensions".into()));
        }
        let mut sums: Vec<Vec<i64>> = Vec::with_capacity(acc.len() * verts.len());
        for a in &acc {
            for b in &verts {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        acc = convex_hull(&sums)?.vertices;
    }
    convex_hull(&acc)
}

/// The normal fan of a full-dimensional polytope: rays are the primitive inner
/// facet normals, and the maximal cone of a vertex is spanned by the normals
/// of the facets through it.
///
/// # Errors
/// The polytope is not full-dimensional in `ambient_dim`.
pub fn normal_fan(poly: &Polytope, ambient_dim: usize) -> Result<Fan> {
    if poly.ambient_dim != ambient_dim || poly.dim != ambient_dim {
        return Err(Error::Precondition(format!(
            "normal fan needs a full-dimensional polytope (dimension {} in ambient {ambient_dim})",
            poly.dim
        )));
    }
    let rays: Vec<Vec<i64>> = poly.facets.iter().map(|f| f.normal.clone()).collect();
    let maximal_cones = poly
        .vertices
        .iter()
        .map(|v| {
            poly.facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.normal.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == f.bound)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(Fan { dim: ambient_dim, rays, maximal_cones })
}
