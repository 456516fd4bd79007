//! Lattice points of rational polyhedra given by inequalities.
//!
//! Vertices are found exactly from all nonsingular `dim`-subsets of the
//! constraint normals (the targets here live in dimension at most 6 with a
//! handful of constraints). Boundedness is decided from the recession cone by
//! testing the kernel directions of all rank-deficient `(dim-1)`-subsets. The
//! points themselves come from a scan of the vertex bounding box in which the
//! last coordinate is solved as an exact interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::linalg::{self, big_to_i64};
use crate::error::{Error, Result};

/// The closed halfspace `<normal, x> >= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub bound: BigRational,
}

/// Intersection of finitely many rational halfspaces in `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolyhedron {
    pub dim: usize,
    pub constraints: Vec<Halfspace>,
}

/// Result of [`lattice_points`]: unbounded regions carry no points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoints {
    pub bounded: bool,
    pub points: Vec<Vec<i64>>,
}

/// Integer points of `region`, or the unbounded flag when its recession cone is nonzero.
///
/// # Errors
/// Fails on normals of the wrong length, or if an intermediate value leaves
/// the 128-bit fast path.
pub fn lattice_points(region: &RationalPolyhedron) -> Result<LatticePoints> {
    let dim = region.dim;
    let mut normals = Vec::with_capacity(region.constraints.len());
    let mut rhs = Vec::with_capacity(region.constraints.len());
    for h in &region.constraints {
        if h.normal.len() != dim {
            return Err(Error::InvalidInput(format!(
                "constraint normal of length {} in dimension {dim}",
                h.normal.len()
            )));
        }
        normals.push(h.normal.clone());
        // <n, x> is an integer on lattice points, so a rational bound can be rounded up.
        rhs.push(big_to_i64(&linalg::ceil_q(&h.bound), "lattice_points bound")?);
    }
    let counter = RegionCounter::new(dim, normals)?;
    let sides = vec![Side::AtLeast; rhs.len()];
    if !counter.is_bounded(&sides) {
        return Ok(LatticePoints { bounded: false, points: Vec::new() });
    }
    let points = counter.enumerate(&sides, &rhs)?;
    Ok(LatticePoints { bounded: true, points })
}

/// Orientation of a constraint `<n_j, x> ? t_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Side {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone)]
struct Basis {
    idx: Vec<usize>,
    det: i128,
    adj: Vec<Vec<i128>>,
}

/// Precomputed data for counting lattice points in the family of regions
/// `{x : <n_j, x> >= t_j or <= t_j}` with fixed normals `n_j`.
#[derive(Debug, Clone)]
pub(crate) struct RegionCounter {
    dim: usize,
    normals: Vec<Vec<i64>>,
    full_rank: bool,
    bases: Vec<Basis>,
    edge_directions: Vec<Vec<i64>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow("region counting"))
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("region counting"))
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("region counting"))
}

impl RegionCounter {
    pub(crate) fn new(dim: usize, normals: Vec<Vec<i64>>) -> Result<Self> {
        let full_rank = linalg::rank(&normals, dim) == dim;
        let mut bases = Vec::new();
        let mut edge_directions = Vec::new();
        if full_rank && dim > 0 {
            for idx in subsets(normals.len(), dim) {
                let mat: Vec<Vec<i64>> = idx.iter().map(|&j| normals[j].clone()).collect();
                let (det, adj) = linalg::det_adjugate(&mat);
                if det.is_zero() {
                    continue;
                }
                let adj = adj
                    .iter()
                    .map(|row| row.iter().map(to_i128).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                bases.push(Basis { idx, det: to_i128(&det)?, adj });
            }
            for idx in subsets(normals.len(), dim - 1) {
                let mat: Vec<Vec<i64>> = idx.iter().map(|&j| normals[j].clone()).collect();
                let ker = linalg::integer_kernel(&mat, dim);
                if ker.len() != 1 {
                    continue;
                }
                let v = ker[0].iter().map(|x| big_to_i64(x, "recession direction")).collect::<Result<Vec<_>>>()?;
                if !edge_directions.contains(&v) {
                    edge_directions.push(v);
                }
            }
        }
        Ok(RegionCounter { dim, normals, full_rank, bases, edge_directions })
    }

    /// Whether the recession cone of the region with these orientations is `{0}`.
    pub(crate) fn is_bounded(&self, sides: &[Side]) -> bool {
        if self.dim == 0 {
            return true;
        }
        if !self.full_rank {
            return false;
        }
        // The cone is pointed; a nonzero cone has an extreme ray lying on
        // dim-1 independent tight constraints, i.e. along one of the kernel
        // directions computed up front.
        for v in &self.edge_directions {
            let vals: Vec<i128> = self
                .normals
                .iter()
                .zip(sides)
                .map(|(n, s)| {
                    let d: i128 = n.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                    if *s == Side::AtLeast {
                        d
                    } else {
                        -d
                    }
                })
                .collect();
            if vals.iter().all(|&x| x >= 0) || vals.iter().all(|&x| x <= 0) {
                return false;
            }
        }
        true
    }

    fn satisfied(side: Side, value: i128, t: i128) -> bool {
        match side {
            Side::AtLeast => value >= t,
            Side::AtMost => value <= t,
        }
    }

    /// Integer bounding box of a bounded region, or `None` when it is empty.
    fn bounding_box(&self, sides: &[Side], rhs: &[i64]) -> Result<Option<(Vec<i128>, Vec<i128>)>> {
        let dim = self.dim;
        let mut bbox: Option<(Vec<i128>, Vec<i128>)> = None;
        for b in &self.bases {
            let mut num = vec![0i128; dim];
            for (i, slot) in num.iter_mut().enumerate() {
                let mut acc = 0i128;
                for (k, &j) in b.idx.iter().enumerate() {
                    acc = add(acc, mul(b.adj[i][k], rhs[j] as i128)?)?;
                }
                *slot = acc;
            }
            // the candidate vertex is num / det; test every constraint scaled by det
            let mut feasible = true;
            for (j, n) in self.normals.iter().enumerate() {
                let mut v = 0i128;
                for i in 0..dim {
                    v = add(v, mul(n[i] as i128, num[i])?)?;
                }
                let t = mul(rhs[j] as i128, b.det)?;
                let (v, t) = if b.det < 0 { (-v, -t) } else { (v, t) };
                if !Self::satisfied(sides[j], v, t) {
                    feasible = false;
                    break;
                }
            }
            if !feasible {
                continue;
            }
            let (lo, hi) = bbox.get_or_insert_with(|| (vec![i128::MAX; dim], vec![i128::MIN; dim]));
            for i in 0..dim {
                lo[i] = lo[i].min(Integer::div_ceil(&num[i], &b.det));
                hi[i] = hi[i].max(Integer::div_floor(&num[i], &b.det));
            }
        }
        Ok(bbox)
    }

    fn scan<F: FnMut(&[i128], i128, i128)>(&self, sides: &[Side], rhs: &[i64], mut visit: F) -> Result<()> {
        let dim = self.dim;
        if dim == 0 {
            let ok = sides.iter().zip(rhs).all(|(s, &t)| Self::satisfied(*s, 0, t as i128));
            if ok {
                visit(&[], 0, 0);
            }
            return Ok(());
        }
        let Some((lo, hi)) = self.bounding_box(sides, rhs)? else {
            return Ok(());
        };
        let last = dim - 1;
        let mut prefix = vec![0i128; last];
        let mut partial = vec![0i128; self.normals.len()];
        self.scan_level(0, sides, rhs, &lo, &hi, &mut prefix, &mut partial, &mut visit);
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn scan_level<F: FnMut(&[i128], i128, i128)>(
        &self,
        level: usize,
        sides: &[Side],
        rhs: &[i64],
        lo: &[i128],
        hi: &[i128],
        prefix: &mut Vec<i128>,
        partial: &mut Vec<i128>,
        visit: &mut F,
    ) {
        let last = self.dim - 1;
        if level == last {
            let mut a = lo[last];
            let mut b = hi[last];
            for (j, n) in self.normals.iter().enumerate() {
                let c = n[last] as i128;
                let rest = rhs[j] as i128 - partial[j];
                match (sides[j], c.signum()) {
                    (Side::AtLeast, 1) => a = a.max(Integer::div_ceil(&rest, &c)),
                    (Side::AtLeast, -1) => b = b.min(Integer::div_floor(&rest, &c)),
                    (Side::AtMost, 1) => b = b.min(Integer::div_floor(&rest, &c)),
                    (Side::AtMost, -1) => a = a.max(Integer::div_ceil(&rest, &c)),
                    (Side::AtLeast, _) => {
                        if rest > 0 {
                            return;
                        }
                    }
                    (Side::AtMost, _) => {
                        if rest < 0 {
                            return;
                        }
                    }
                }
                if a > b {
                    return;
                }
            }
            visit(prefix, a, b);
            return;
        }
        for x in lo[level]..=hi[level] {
            prefix[level] = x;
            for (j, n) in self.normals.iter().enumerate() {
                partial[j] += n[level] as i128 * x;
            }
            self.scan_level(level + 1, sides, rhs, lo, hi, prefix, partial, visit);
            for (j, n) in self.normals.iter().enumerate() {
                partial[j] -= n[level] as i128 * x;
            }
        }
    }

    /// Number of lattice points; the region must be bounded.
    pub(crate) fn count(&self, sides: &[Side], rhs: &[i64]) -> Result<u128> {
        let mut total: u128 = 0;
        self.scan(sides, rhs, |_, a, b| total += (b - a + 1) as u128)?;
        Ok(total)
    }

    /// All lattice points in lexicographic order; the region must be bounded.
    pub(crate) fn enumerate(&self, sides: &[Side], rhs: &[i64]) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        let mut overflow = false;
        if self.dim == 0 {
            self.scan(sides, rhs, |_, _, _| out.push(Vec::new()))?;
            return Ok(out);
        }
        self.scan(sides, rhs, |prefix, a, b| {
            for x in a..=b {
                let mut p: Vec<i64> = Vec::with_capacity(prefix.len() + 1);
                for &c in prefix.iter().chain(std::iter::once(&x)) {
                    match i64::try_from(c) {
                        Ok(v) => p.push(v),
                        Err(_) => overflow = true,
                    }
                }
                out.push(p);
            }
        })?;
        if overflow {
            return Err(Error::Overflow("lattice point coordinates"));
        }
        Ok(out)
    }
}
