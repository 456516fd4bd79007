//! The inclusion-exclusion Hilbert function `H(s)` of a complete fan and the
//! Euler characteristic of the structure sheaf of a complete intersection.
//!
//! For `s` in `Z^r` and `q` in `Z^m` let `I(s, q)` be the set of rays with
//! `<p_j, q> >= -s_j`. The graded piece of the coordinate ring in degree
//! `(s, q)` has Euler characteristic `χ_{I(s,q)}`, and `H(s)` sums these over
//! `q`. Grouping the `q` by `I` gives `H(s) = Σ_I χ_I n_{I,s}` with `n_{I,s}`
//! the lattice-point count of a polyhedron that is bounded whenever
//! `χ_I != 0`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fan::{is_complete, DegreeMatrix, Fan};
use crate::lattice_polyhedra::{RegionCounter, Side};

/// Largest number of rays accepted by [`build_context`].
pub const MAX_RAYS: usize = 24;

/// A grading vector with one entry per ray.
pub type SVector = Vec<i64>;

/// Precomputed inclusion-exclusion data of a complete fan.
#[derive(Debug)]
pub struct HilbertContext {
    pub fan: Fan,
    /// `c_S` for every ray set `S` with `c_S != 0`.
    pub intersection_table: BTreeMap<Vec<usize>, i64>,
    /// Every `I` with `χ_I != 0`, with its `χ_I`.
    pub nonzero_chi_sets: Vec<(Vec<usize>, i64)>,
    counter: RegionCounter,
    memo: Mutex<HashMap<SVector, BigInt>>,
}

fn mask_to_set(mask: u32, r: usize) -> Vec<usize> {
    (0..r).filter(|j| mask >> j & 1 == 1).collect()
}

/// Builds `χ_I` for every ray set and keeps the nonzero ones.
///
/// `χ_I = Σ_{S ⊆ I} c_S` where `c_S` sums `(-1)^{|K|-1}` over the nonempty
/// sets `K` of maximal cones whose ray sets intersect in `S`. Rewriting the
/// indicator of `∩_K J_κ ⊆ I` as an alternating sum over subsets shows
/// `χ_I = Σ (-1)^{|T|}` over the sets `T` disjoint from `I` that lie in some
/// `J_κ`, which is one subset-sum transform over `2^r` entries.
///
/// # Errors
/// Non-complete fans, more than [`MAX_RAYS`] rays, and any `χ_I != 0` whose
/// region `n_{I,s}` is unbounded.
pub fn build_context(fan: &Fan) -> Result<HilbertContext> {
    let r = fan.rays.len();
    if r > MAX_RAYS {
        return Err(Error::Precondition(format!("{r} rays exceed the limit of {MAX_RAYS}")));
    }
    if !is_complete(fan) {
        return Err(Error::Precondition("the Hilbert function needs a complete fan".into()));
    }
    let size = 1usize << r;
    let full = (size - 1) as u32;
    let mut in_cone = vec![false; size];
    for c in &fan.maximal_cones {
        in_cone[c.iter().fold(0usize, |acc, &j| acc | 1 << j)] = true;
    }
    for bit in 0..r {
        for mask in 0..size {
            if mask >> bit & 1 == 1 && in_cone[mask] {
                in_cone[mask ^ 1 << bit] = true;
            }
        }
    }
    let mut g: Vec<i32> = (0..size)
        .map(|t| {
            if in_cone[t] {
                if (t as u32).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            }
        })
        .collect();
    drop(in_cone);
    for bit in 0..r {
        for mask in 0..size {
            if mask >> bit & 1 == 1 {
                g[mask] += g[mask ^ 1 << bit];
            }
        }
    }
    // chi[I] = g[complement of I]
    let chi: Vec<i32> = (0..size).map(|i| g[(full ^ i as u32) as usize]).collect();
    drop(g);

    let mut c = chi.clone();
    for bit in 0..r {
        for mask in 0..size {
            if mask >> bit & 1 == 1 {
                c[mask] -= c[mask ^ 1 << bit];
            }
        }
    }
    let intersection_table: BTreeMap<Vec<usize>, i64> =
        (0..size).filter(|&s| c[s] != 0).map(|s| (mask_to_set(s as u32, r), c[s] as i64)).collect();

    let counter = RegionCounter::new(fan.dim, fan.rays.clone())?;
    let mut nonzero_chi_sets = Vec::new();
    for (i, &x) in chi.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if !counter.is_bounded(&sides_of(i as u32, r)) {
            return Err(Error::Consistency(format!(
                "χ_I = {x} for I = {:?} but its lattice region is unbounded",
                mask_to_set(i as u32, r)
            )));
        }
        nonzero_chi_sets.push((mask_to_set(i as u32, r), x as i64));
    }
    Ok(HilbertContext {
        fan: fan.clone(),
        intersection_table,
        nonzero_chi_sets,
        counter,
        memo: Mutex::new(HashMap::new()),
    })
}

fn sides_of(mask: u32, r: usize) -> Vec<Side> {
    (0..r).map(|j| if mask >> j & 1 == 1 { Side::AtLeast } else { Side::AtMost }).collect()
}

fn region(set: &[usize], s: &[i64]) -> Result<(Vec<Side>, Vec<i64>)> {
    let mut sides = vec![Side::AtMost; s.len()];
    let mut rhs = Vec::with_capacity(s.len());
    for (j, &sj) in s.iter().enumerate() {
        let neg = sj.checked_neg().ok_or(Error::Overflow("grading vector"))?;
        if set.contains(&j) {
            sides[j] = Side::AtLeast;
            rhs.push(neg);
        } else {
            rhs.push(neg.checked_sub(1).ok_or(Error::Overflow("grading vector"))?);
        }
    }
    Ok((sides, rhs))
}

impl HilbertContext {
    /// Number of rays `r`.
    pub fn num_rays(&self) -> usize {
        self.fan.rays.len()
    }

    /// `χ_I` for an arbitrary ray set.
    pub fn chi_of(&self, set: &[usize]) -> i64 {
        self.intersection_table.iter().filter(|(s, _)| s.iter().all(|j| set.contains(j))).map(|(_, c)| c).sum()
    }

    fn check_len(&self, s: &[i64]) -> Result<()> {
        if s.len() != self.num_rays() {
            return Err(Error::InvalidInput(format!(
                "grading vector has length {}, expected {}",
                s.len(),
                self.num_rays()
            )));
        }
        Ok(())
    }

    /// Forgets all memoized values of `H`.
    pub fn clear_memo(&self) {
        self.memo.lock().expect("memo lock").clear();
    }
}

/// `n_{I,s}`: lattice points `q` with `<p_j, q> >= -s_j` exactly for `j` in `I`.
///
/// # Errors
/// An unbounded region (only possible when `χ_I = 0`), or overflow.
pub fn n_i_s(ctx: &HilbertContext, set: &[usize], s: &[i64]) -> Result<BigInt> {
    ctx.check_len(s)?;
    if set.iter().any(|&j| j >= ctx.num_rays()) {
        return Err(Error::InvalidInput("ray index out of range".into()));
    }
    let (sides, rhs) = region(set, s)?;
    if !ctx.counter.is_bounded(&sides) {
        return Err(Error::Consistency(format!("the region for I = {set:?} is unbounded")));
    }
    Ok(BigInt::from(ctx.counter.count(&sides, &rhs)?))
}

/// `H(s) = Σ_I χ_I n_{I,s}`, memoized per `s`.
///
/// # Errors
/// Wrong length of `s`, or overflow.
pub fn h_of_s(ctx: &HilbertContext, s: &[i64]) -> Result<BigInt> {
    ctx.check_len(s)?;
    if let Some(v) = ctx.memo.lock().expect("memo lock").get(s) {
        return Ok(v.clone());
    }
    let mut total = BigInt::zero();
    for (set, chi) in &ctx.nonzero_chi_sets {
        let (sides, rhs) = region(set, s)?;
        total += BigInt::from(*chi) * BigInt::from(ctx.counter.count(&sides, &rhs)?);
    }
    ctx.memo.lock().expect("memo lock").insert(s.to_vec(), total.clone());
    Ok(total)
}

/// `χ(Y, O_Y) = Σ_{T ⊆ {1..k}} (-1)^{|T|} H(-Σ_{i∈T} d_i)`.
///
/// # Errors
/// Degree rows of the wrong length, or overflow.
pub fn chi_structure_sheaf(ctx: &HilbertContext, degrees: &DegreeMatrix) -> Result<BigInt> {
    let r = ctx.num_rays();
    let k = degrees.len();
    if k > 30 {
        return Err(Error::Precondition("too many equations".into()));
    }
    let mut total = BigInt::zero();
    for mask in 0u32..(1u32 << k) {
        let mut s = vec![0i64; r];
        for (i, row) in degrees.iter().enumerate() {
            if row.len() != r {
                return Err(Error::InvalidInput(format!("degree row has length {}, expected {r}", row.len())));
            }
            if mask >> i & 1 == 1 {
                for (a, b) in s.iter_mut().zip(row) {
                    *a = a.checked_sub(*b).ok_or(Error::Overflow("degree sum"))?;
                }
            }
        }
        let h = h_of_s(ctx, &s)?;
        if mask.count_ones() % 2 == 0 {
            total += h;
        } else {
            total -= h;
        }
    }
    Ok(total)
}
