//! Fans as combinatorial objects: structural predicates, simplicial
//! refinement, restricted supports, degree matrices and orbit problems.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::dk_hodge::TorusCIProblem;
use crate::error::{Error, Result};
use crate::lattice_polyhedra::feasibility::{homogeneous_feasible, Rel};
use crate::lattice_polyhedra::linalg::{self, big_to_i64};
use crate::lattice_polyhedra::{k_subsets, pairing, primitive, rank, smith_normal_form_with_cols, SupportSet};

/// Sorted indices into the ray list of the parent fan.
pub type Cone = Vec<usize>;

/// Entries `d_ij`, one row per equation and one column per ray.
pub type DegreeMatrix = Vec<Vec<i64>>;

/// A rational polyhedral fan given by primitive rays and maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Cone>,
}

/// Outcome of [`validate`]: the first violation found, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl Fan {
    fn ray_rows(&self, cone: &[usize]) -> Vec<Vec<i64>> {
        cone.iter().map(|&j| self.rays[j].clone()).collect()
    }

    /// Dimension of the linear span of a cone.
    pub fn cone_dim(&self, cone: &[usize]) -> usize {
        rank(&self.ray_rows(cone), self.dim)
    }

    /// Ray index sets of the facets of a cone of this fan.
    pub fn cone_facets(&self, cone: &[usize]) -> Vec<Cone> {
        let d = self.cone_dim(cone);
        if d == 0 {
            return Vec::new();
        }
        if cone.len() == d {
            return (0..cone.len())
                .map(|skip| cone.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &j)| j).collect())
                .collect();
        }
        // a basis of the span, then normals inside the span vanishing on d-1 rays
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for &j in cone {
            let mut trial = basis.clone();
            trial.push(self.rays[j].clone());
            if rank(&trial, self.dim) == trial.len() {
                basis = trial;
            }
        }
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        for sub in k_subsets(cone.len(), d - 1) {
            let s: Vec<usize> = sub.iter().map(|&i| cone[i]).collect();
            if self.cone_dim(&s) != d - 1 {
                continue;
            }
            let gram: Vec<Vec<i64>> =
                s.iter().map(|&j| basis.iter().map(|b| pairing(b, &self.rays[j])).collect()).collect();
            let ker = linalg::integer_kernel(&gram, d);
            let Some(lambda) = ker.first() else { continue };
            let lambda: Vec<i64> = lambda.iter().map(|x| big_to_i64(x, "cone facets").expect("small kernel")).collect();
            let u: Vec<i64> = (0..self.dim).map(|k| basis.iter().zip(&lambda).map(|(b, l)| b[k] * l).sum()).collect();
            let vals: Vec<i64> = cone.iter().map(|&j| pairing(&u, &self.rays[j])).collect();
            if vals.iter().all(|&v| v >= 0) || vals.iter().all(|&v| v <= 0) {
                out.insert(cone.iter().zip(&vals).filter(|(_, &v)| v == 0).map(|(&j, _)| j).collect());
            }
        }
        out.into_iter().collect()
    }

    /// All faces of a cone, itself and the zero cone included.
    pub fn cone_faces(&self, cone: &[usize]) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![cone.to_vec()];
        while let Some(c) = stack.pop() {
            if seen.insert(c.clone()) {
                stack.extend(self.cone_facets(&c));
            }
        }
        seen.insert(Vec::new());
        let mut v: Vec<Cone> = seen.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Every cone of the fan, ordered by number of rays and then lexicographically.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        for c in &self.maximal_cones {
            if self.cone_dim(c) == c.len() {
                // simplicial: every subset is a face
                let n = c.len();
                for mask in 0u64..(1u64 << n) {
                    seen.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect());
                }
            } else {
                seen.extend(self.cone_faces(c));
            }
        }
        seen.insert(Vec::new());
        let mut v: Vec<Cone> = seen.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

/// Checks ray primitivity and distinctness, cone well-formedness, and that any
/// two maximal cones meet in a common face.
///
/// Two cones meet in the face spanned by their common rays exactly when a
/// linear form vanishes on the common rays, is positive on the other rays of
/// the first cone and negative on the other rays of the second; that system is
/// decided exactly.
pub fn validate(fan: &Fan) -> ValidationReport {
    let fail = |msg: String| ValidationReport { violation: Some(msg) };
    let m = fan.dim;
    for (j, r) in fan.rays.iter().enumerate() {
        if r.len() != m {
            return fail(format!("ray {j} has length {} in dimension {m}", r.len()));
        }
        match primitive(r) {
            Err(_) => return fail(format!("ray {j} is zero")),
            Ok(p) if &p != r => return fail(format!("ray {j} is not primitive")),
            Ok(_) => {}
        }
        if let Some(i) = fan.rays[..j].iter().position(|s| s == r) {
            return fail(format!("rays {i} and {j} coincide"));
        }
    }
    let mut used = vec![false; fan.rays.len()];
    for (c, cone) in fan.maximal_cones.iter().enumerate() {
        if cone.is_empty() {
            return fail(format!("maximal cone {c} is empty"));
        }
        if cone.windows(2).any(|w| w[0] >= w[1]) {
            return fail(format!("maximal cone {c} is not a strictly increasing index list"));
        }
        if let Some(&j) = cone.iter().find(|&&j| j >= fan.rays.len()) {
            return fail(format!("maximal cone {c} refers to missing ray {j}"));
        }
        for &j in cone {
            used[j] = true;
        }
        // pointed, and every listed ray spans a face
        for &j in cone {
            let rows: Vec<(Vec<i64>, Rel)> =
                cone.iter().map(|&i| (fan.rays[i].clone(), if i == j { Rel::Zero } else { Rel::Positive })).collect();
            if !homogeneous_feasible(&rows, m) {
                return fail(format!("ray {j} is not an extreme ray of maximal cone {c}"));
            }
        }
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return fail(format!("ray {j} lies in no maximal cone"));
    }
    for a in 0..fan.maximal_cones.len() {
        for b in a + 1..fan.maximal_cones.len() {
            let (ca, cb) = (&fan.maximal_cones[a], &fan.maximal_cones[b]);
            if ca == cb {
                return fail(format!("maximal cones {a} and {b} coincide"));
            }
            let mut rows: Vec<(Vec<i64>, Rel)> = Vec::new();
            for &j in ca {
                rows.push((fan.rays[j].clone(), if cb.contains(&j) { Rel::Zero } else { Rel::Positive }));
            }
            for &j in cb.iter().filter(|j| !ca.contains(j)) {
                rows.push((fan.rays[j].iter().map(|x| -x).collect(), Rel::Positive));
            }
            if !homogeneous_feasible(&rows, m) {
                return fail(format!("maximal cones {a} and {b} do not meet in a common face"));
            }
        }
    }
    ValidationReport { violation: None }
}

/// Every maximal cone has linearly independent rays.
pub fn is_simplicial(fan: &Fan) -> bool {
    fan.maximal_cones.iter().all(|c| fan.cone_dim(c) == c.len())
}

/// Simplicial, and the rays of every maximal cone extend to a lattice basis.
pub fn is_regular(fan: &Fan) -> bool {
    is_simplicial(fan)
        && fan.maximal_cones.iter().all(|c| {
            let snf = smith_normal_form_with_cols(&fan.ray_rows(c), fan.dim);
            snf.diag.iter().all(One::is_one)
        })
}

/// Pure of full dimension, every facet of a maximal cone shared by exactly two
/// maximal cones, and the facet-adjacency graph connected.
pub fn is_complete(fan: &Fan) -> bool {
    let m = fan.dim;
    if fan.maximal_cones.is_empty() {
        return false;
    }
    if m == 0 {
        return true;
    }
    if fan.maximal_cones.iter().any(|c| fan.cone_dim(c) != m) {
        return false;
    }
    let mut owners: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
    for (i, c) in fan.maximal_cones.iter().enumerate() {
        for f in fan.cone_facets(c) {
            owners.entry(f).or_default().push(i);
        }
    }
    if owners.values().any(|o| o.len() != 2) {
        return false;
    }
    let n = fan.maximal_cones.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for o in owners.values().filter(|o| o.contains(&i)) {
            for &j in o {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Refines a fan to a simplicial one by repeated stellar subdivision.
///
/// Each step picks the non-simplicial cone of smallest dimension (ties broken
/// lexicographically on ray indices) and subdivides at the primitive sum of
/// its rays. When all proper faces are simplicial, as always for `dim <= 3`,
/// that cone is the lexicographically smallest non-simplicial maximal cone.
/// New rays are appended after the existing ones.
///
/// # Errors
/// Only on arithmetic overflow.
pub fn stellar_subdivide_to_simplicial(fan: &Fan) -> Result<Fan> {
    let mut out = fan.clone();
    loop {
        let target = out
            .all_cones()
            .into_iter()
            .filter(|c| out.cone_dim(c) < c.len())
            .min_by(|a, b| out.cone_dim(a).cmp(&out.cone_dim(b)).then_with(|| a.cmp(b)));
        let Some(tau) = target else { break };
        let sum: Vec<i64> = (0..out.dim).map(|k| tau.iter().map(|&j| out.rays[j][k]).sum()).collect();
        let v = primitive(&sum)?;
        let new_index = out.rays.len();
        out.rays.push(v);
        let mut cones: Vec<Cone> = Vec::new();
        for c in &out.maximal_cones {
            if tau.iter().all(|j| c.contains(j)) {
                for g in out.cone_facets(c) {
                    if !tau.iter().all(|j| g.contains(j)) {
                        let mut nc = g.clone();
                        nc.push(new_index);
                        cones.push(nc);
                    }
                }
            } else {
                cones.push(c.clone());
            }
        }
        cones.sort();
        cones.dedup();
        out.maximal_cones = cones;
    }
    out.maximal_cones.sort();
    Ok(out)
}

fn check_supports(fan: &Fan, supports: &[SupportSet]) -> Result<()> {
    for s in supports {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty support".into()));
        }
        if s.iter().any(|q| q.len() != fan.dim) {
            return Err(Error::InvalidInput(format!("support point of wrong length in dimension {}", fan.dim)));
        }
    }
    Ok(())
}

/// `d_ij = -min { <p_j, q> : q in M_i }`.
///
/// # Errors
/// Empty supports or points of the wrong dimension.
pub fn degrees_of(fan: &Fan, supports: &[SupportSet]) -> Result<DegreeMatrix> {
    check_supports(fan, supports)?;
    Ok(supports
        .iter()
        .map(|s| fan.rays.iter().map(|p| -s.iter().map(|q| pairing(p, q)).min().expect("nonempty")).collect())
        .collect())
}

/// `M_i^σ`: the points of `M_i` where every ray `p_j` of σ attains `<p_j, q> = -d_ij`.
pub fn restrict_supports(
    fan: &Fan,
    cone: &[usize],
    supports: &[SupportSet],
    degrees: &DegreeMatrix,
) -> Vec<SupportSet> {
    supports
        .iter()
        .zip(degrees)
        .map(|(s, d)| s.iter().filter(|q| cone.iter().all(|&j| pairing(&fan.rays[j], q) == -d[j])).cloned().collect())
        .collect()
}

/// Adaptedness of every cone of a fan to a list of supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adaptedness {
    /// Every cone with its adaptedness flag, in [`Fan::all_cones`] order.
    pub cones: Vec<(Cone, bool)>,
    /// The adapted cones.
    pub subfan: Vec<Cone>,
    pub fully_adapted: bool,
}

/// A cone is adapted when every restricted support `M_i^σ` is nonempty.
///
/// # Errors
/// Empty supports or points of the wrong dimension.
pub fn adapted_subfan(fan: &Fan, supports: &[SupportSet]) -> Result<Adaptedness> {
    let degrees = degrees_of(fan, supports)?;
    let cones: Vec<(Cone, bool)> = fan
        .all_cones()
        .into_iter()
        .map(|c| {
            let ok = restrict_supports(fan, &c, supports, &degrees).iter().all(|s| !s.is_empty());
            (c, ok)
        })
        .collect();
    let subfan: Vec<Cone> = cones.iter().filter(|(_, ok)| *ok).map(|(c, _)| c.clone()).collect();
    let fully_adapted = cones.iter().all(|(_, ok)| *ok);
    Ok(Adaptedness { cones, subfan, fully_adapted })
}

/// The torus complete intersection cut out on the orbit of a cone.
///
/// Restricted supports that are empty are dropped (the corresponding equation
/// vanishes identically on the orbit). The survivors are translated to contain
/// the origin, which puts them in the character lattice `σ^⊥ ∩ Z^m` of the
/// orbit, and are written in a basis of that lattice obtained from the Smith
/// form of the ray matrix of σ.
///
/// # Errors
/// Arithmetic overflow, or a non-simplicial cone.
pub fn orbit_problem(
    fan: &Fan,
    cone: &[usize],
    supports: &[SupportSet],
    degrees: &DegreeMatrix,
) -> Result<TorusCIProblem> {
    let m = fan.dim;
    let s = fan.cone_dim(cone);
    if s != cone.len() {
        return Err(Error::Precondition("orbit problems need simplicial cones".into()));
    }
    let restricted: Vec<SupportSet> =
        restrict_supports(fan, cone, supports, degrees).into_iter().filter(|r| !r.is_empty()).collect();
    if s == 0 {
        return Ok(TorusCIProblem::new(m, restricted));
    }
    let snf = smith_normal_form_with_cols(&fan.ray_rows(cone), m);
    let right: Vec<Vec<i64>> = snf
        .right
        .iter()
        .map(|row| row.iter().map(|x| big_to_i64(x, "orbit basis")).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let (det, adj) = linalg::det_adjugate(&right);
    // right is unimodular, so its inverse is ±adj
    let inv: Vec<Vec<i64>> = adj
        .iter()
        .map(|row| row.iter().map(|x| big_to_i64(&(x * &det), "orbit basis")).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let projected = restricted
        .iter()
        .map(|pts| {
            let base = pts.iter().min().expect("nonempty").clone();
            let mut out: Vec<Vec<i64>> = pts
                .iter()
                .map(|q| {
                    let d: Vec<i64> = q.iter().zip(&base).map(|(a, b)| a - b).collect();
                    (s..m).map(|k| pairing(&inv[k], &d)).collect()
                })
                .collect();
            out.sort();
            out.dedup();
            out
        })
        .collect();
    Ok(TorusCIProblem::new(m - s, projected))
}

/// The product fan in `Z^{m_1} x Z^{m_2}`, rays of `a` first.
pub fn product_fan(a: &Fan, b: &Fan) -> Fan {
    let dim = a.dim + b.dim;
    let mut rays: Vec<Vec<i64>> =
        a.rays.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, b.dim)).collect()).collect();
    rays.extend(b.rays.iter().map(|r| std::iter::repeat_n(0, a.dim).chain(r.iter().copied()).collect::<Vec<i64>>()));
    let shift = a.rays.len();
    let mut maximal_cones = Vec::new();
    for ca in &a.maximal_cones {
        for cb in &b.maximal_cones {
            maximal_cones.push(ca.iter().copied().chain(cb.iter().map(|j| j + shift)).collect());
        }
    }
    Fan { dim, rays, maximal_cones }
}

#[cfg(test)]
mod tests;
