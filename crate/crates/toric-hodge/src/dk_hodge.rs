//! Euler-Hodge numbers of non-degenerate complete intersections in tori and
//! Hodge numbers of compact quasi-smooth toric complete intersections.
//!
//! Everything is computed for generic coefficients, so only the supports of
//! the equations enter.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{
    adapted_subfan, degrees_of, is_complete, is_simplicial, orbit_problem, stellar_subdivide_to_simplicial, Fan,
};
use crate::forms_euler::chi_alt;
use crate::hilbert::build_context;
use crate::lattice_polyhedra::{affine_lattice_reduction, minkowski_support, normal_fan, SupportSet};

/// `{z in (C*)^m : g_1(z) = ... = g_k(z) = 0}` for generic `g_i` with the given supports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusCIProblem {
    pub m: usize,
    pub supports: Vec<SupportSet>,
}

impl TorusCIProblem {
    pub fn new(m: usize, supports: Vec<SupportSet>) -> Self {
        TorusCIProblem { m, supports }
    }

    pub fn k(&self) -> usize {
        self.supports.len()
    }

    /// Expected dimension `m - k`, or `None` when `k > m`.
    pub fn n(&self) -> Option<usize> {
        self.m.checked_sub(self.k())
    }

    fn check(&self) -> Result<()> {
        for s in &self.supports {
            if s.is_empty() {
                return Err(Error::InvalidInput("empty support".into()));
            }
            if s.iter().any(|q| q.len() != self.m) {
                return Err(Error::InvalidInput(format!("support point of wrong length in dimension {}", self.m)));
            }
        }
        Ok(())
    }

    /// Each support sorted and deduplicated, then the list sorted.
    fn canonical(&self) -> TorusCIProblem {
        let mut supports: Vec<SupportSet> = self
            .supports
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort();
                s.dedup();
                s
            })
            .collect();
        supports.sort();
        TorusCIProblem { m: self.m, supports }
    }
}

/// What the entries of an [`EpqTable`] mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// `e^{pq}`
    Ordinary,
    /// `e_c^{pq}`
    Compact,
    /// `h^{pq}`
    Hodge,
}

/// A square table indexed by `0 <= p, q <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpqTable {
    pub n: usize,
    pub kind: TableKind,
    cells: Vec<Vec<BigInt>>,
}

impl EpqTable {
    pub fn zeros(n: usize, kind: TableKind) -> Self {
        EpqTable { n, kind, cells: vec![vec![BigInt::zero(); n + 1]; n + 1] }
    }

    /// # Errors
    /// Rows that do not form a nonempty square.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, kind: TableKind) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::InvalidInput("a table must be a nonempty square".into()));
        }
        Ok(EpqTable { n: rows.len() - 1, kind, cells: rows })
    }

    /// The entry at `(p, q)`; zero outside the table.
    pub fn get(&self, p: usize, q: usize) -> BigInt {
        self.cells.get(p).and_then(|r| r.get(q)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// # Panics
    /// If `(p, q)` lies outside the table.
    pub fn set(&mut self, p: usize, q: usize, v: BigInt) {
        self.cells[p][q] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.cells.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().flatten().all(Zero::is_zero)
    }

    /// Sum of all entries.
    pub fn total(&self) -> BigInt {
        self.cells.iter().flatten().sum()
    }

    fn add_scaled(&mut self, other: &EpqTable, sign: i32) {
        for p in 0..=self.n.min(other.n) {
            for q in 0..=self.n.min(other.n) {
                if sign >= 0 {
                    self.cells[p][q] += &other.cells[p][q];
                } else {
                    self.cells[p][q] -= &other.cells[p][q];
                }
            }
        }
    }

    /// `h^{pq} = h^{qp}` and `h^{pq} >= 0`.
    ///
    /// # Errors
    /// The first violation, as a consistency failure.
    pub fn check_hodge(&self) -> Result<()> {
        for p in 0..=self.n {
            for q in 0..=self.n {
                if self.cells[p][q].is_negative() {
                    return Err(Error::Consistency(format!("h^{{{p},{q}}} = {} is negative", self.cells[p][q])));
                }
                if self.cells[p][q] != self.cells[q][p] {
                    return Err(Error::Consistency(format!("h^{{{p},{q}}} != h^{{{q},{p}}}")));
                }
                if self.cells[p][q] != self.cells[self.n - p][self.n - q] {
                    return Err(Error::Consistency(format!("h^{{{p},{q}}} is not Poincaré dual")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for EpqTable {
    /// Hodge tables as a diamond with `h^{n,n}` on top, others as a matrix with rows indexed by `p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        if self.kind == TableKind::Hodge {
            let width = self.cells.iter().flatten().map(|c| c.to_string().len()).max().unwrap_or(1);
            let lines: Vec<String> = (0..=2 * n)
                .rev()
                .map(|s| {
                    let lo = s.saturating_sub(n);
                    let hi = s.min(n);
                    let cells: Vec<String> =
                        (lo..=hi).rev().map(|p| format!("{:^width$}", self.cells[p][s - p].to_string())).collect();
                    cells.join(" ")
                })
                .collect();
            let full = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
            for l in lines {
                let pad = (full - l.chars().count()) / 2;
                writeln!(f, "{}{}", " ".repeat(pad), l.trim_end())?;
            }
            Ok(())
        } else {
            let width = self.cells.iter().flatten().map(|c| c.to_string().len()).max().unwrap_or(1);
            for row in &self.cells {
                let cells: Vec<String> = row.iter().map(|c| format!("{:>width$}", c.to_string())).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
            Ok(())
        }
    }
}

/// Which Euler-Hodge numbers of a torus to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ordinary,
    Compact,
}

/// `e^{pq}` or `e_c^{pq}` of `(C*)^m`; both are diagonal.
pub fn epq_torus(m: usize, mode: Mode) -> EpqTable {
    let kind = match mode {
        Mode::Ordinary => TableKind::Ordinary,
        Mode::Compact => TableKind::Compact,
    };
    let mut t = EpqTable::zeros(m, kind);
    for p in 0..=m {
        let b = binomial(BigInt::from(m), BigInt::from(p));
        let odd = match mode {
            Mode::Ordinary => p % 2 == 1,
            Mode::Compact => (m - p) % 2 == 1,
        };
        t.set(p, p, if odd { -b } else { b });
    }
    t
}

/// Künneth product of two compact tables.
fn convolve(a: &EpqTable, b: &EpqTable) -> EpqTable {
    let mut out = EpqTable::zeros(a.n + b.n, a.kind);
    for (p1, row) in a.cells.iter().enumerate() {
        for (q1, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (p2, row2) in b.cells.iter().enumerate() {
                for (q2, y) in row2.iter().enumerate() {
                    out.cells[p1 + p2][q1 + q2] += x * y;
                }
            }
        }
    }
    out
}

/// `e^{ab}(W) = e_c^{n-a,n-b}(W)` for smooth `W` of dimension `n`.
fn dual(t: &EpqTable, kind: TableKind) -> EpqTable {
    let n = t.n;
    let mut out = EpqTable::zeros(n, kind);
    for p in 0..=n {
        for q in 0..=n {
            out.cells[p][q] = t.cells[n - p][n - q].clone();
        }
    }
    out
}

fn k_subsets_of(k: usize, s: usize) -> Vec<Vec<usize>> {
    crate::lattice_polyhedra::k_subsets(k, s)
}

/// Recursive engine for `e_c^{pq}` of torus complete intersections, with a
/// memo keyed on the problem with sorted supports.
#[derive(Debug, Default)]
pub struct DkEngine {
    memo: Mutex<HashMap<TorusCIProblem, EpqTable>>,
}

impl DkEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clear_memo(&self) {
        self.memo.lock().expect("memo lock").clear();
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    /// `e_c^{pq}(Y*)` for `0 <= p, q <= m - k`.
    ///
    /// # Errors
    /// Malformed supports, overflow, or a failed internal cross-check.
    pub fn epq_c_ci(&self, problem: &TorusCIProblem) -> Result<EpqTable> {
        problem.check()?;
        let key = problem.canonical();
        if let Some(t) = self.memo.lock().expect("memo lock").get(&key) {
            return Ok(t.clone());
        }
        let t = self.compute(&key)?;
        self.memo.lock().expect("memo lock").insert(key, t.clone());
        Ok(t)
    }

    fn compute(&self, problem: &TorusCIProblem) -> Result<EpqTable> {
        let m = problem.m;
        let k = problem.k();
        let Some(n) = problem.n() else {
            return Ok(EpqTable::zeros(0, TableKind::Compact));
        };
        if problem.supports.iter().any(|s| s.len() == 1) {
            return Ok(EpqTable::zeros(n, TableKind::Compact));
        }
        if k == 0 {
            return Ok(epq_torus(m, Mode::Compact));
        }

        let (rank, reduced) = affine_lattice_reduction(&problem.supports)?;
        if rank < m {
            let inner = self.epq_c_ci(&TorusCIProblem::new(rank, reduced))?;
            let mut t = convolve(&inner, &epq_torus(m - rank, Mode::Compact));
            if t.n != n {
                // the reduced problem is empty and carries a placeholder size
                t = EpqTable::zeros(n, TableKind::Compact);
            }
            return Ok(t);
        }
        let supports = reduced;

        // ordinary values below the middle, from the Lefschetz property of the
        // union of the hypersurfaces and inclusion-exclusion over sub-collections
        let torus = epq_torus(m, Mode::Ordinary);
        let mut below = EpqTable::zeros(n, TableKind::Ordinary);
        for p in 0..=n {
            for q in 0..=n {
                if p + q >= n {
                    continue;
                }
                let mut v = torus.get(p, q);
                for s in 1..k {
                    for sub in k_subsets_of(k, s) {
                        let sp = TorusCIProblem::new(m, sub.iter().map(|&i| supports[i].clone()).collect());
                        let ord = dual(&self.epq_c_ci(&sp)?, TableKind::Ordinary);
                        let x = ord.get(p, q);
                        if s % 2 == 1 {
                            v -= x;
                        } else {
                            v += x;
                        }
                    }
                }
                below.set(p, q, if k % 2 == 1 { v } else { -v });
            }
        }

        // the compact values above the middle by duality
        let mut above = EpqTable::zeros(n, TableKind::Compact);
        for p in 0..=n {
            for q in 0..=n {
                if p + q > n {
                    above.set(p, q, below.get(n - p, n - q));
                }
            }
        }

        // compactify in a simplicial refinement of the normal fan of the Minkowski sum
        let delta = minkowski_support(&supports)?;
        let fan = stellar_subdivide_to_simplicial(&normal_fan(&delta, m)?)?;
        let degrees = degrees_of(&fan, &supports)?;
        let mut boundary = EpqTable::zeros(n, TableKind::Compact);
        for cone in fan.all_cones().into_iter().filter(|c| !c.is_empty()) {
            let piece = orbit_problem(&fan, &cone, &supports, &degrees)?;
            if piece.k() != k {
                return Err(Error::Consistency(format!("cone {cone:?} of the compactifying fan is not adapted")));
            }
            boundary.add_scaled(&self.epq_c_ci(&piece)?, 1);
        }

        let mut closure = EpqTable::zeros(n, TableKind::Ordinary);
        for p in 0..=n {
            for q in 0..=n {
                if p + q > n {
                    closure.set(p, q, above.get(p, q) + boundary.get(p, q));
                }
            }
        }
        for p in 0..=n {
            for q in 0..=n {
                if p + q < n {
                    closure.set(p, q, closure.get(n - p, n - q));
                }
            }
        }
        let ctx = build_context(&fan)?;
        for p in 0..=n {
            let chi = chi_alt(&ctx, &degrees, p)?;
            let e_p = if p % 2 == 0 { chi } else { -chi };
            let rest: BigInt = (0..=n).filter(|&q| q != n - p).map(|q| closure.get(p, q)).sum();
            closure.set(p, n - p, e_p - rest);
        }
        for p in n + 1..=m {
            let chi = chi_alt(&ctx, &degrees, p)?;
            if !chi.is_zero() {
                return Err(Error::Consistency(format!("χ(Ω^{p}) = {chi} above the dimension {n}")));
            }
        }
        check_closure(&closure)?;

        let mut out = closure.clone();
        out.kind = TableKind::Compact;
        out.add_scaled(&boundary, -1);
        for p in 0..=n {
            for q in 0..=n {
                if p + q > n && out.get(p, q) != above.get(p, q) {
                    return Err(Error::Consistency(format!(
                        "e_c^{{{p},{q}}} from duality ({}) differs from the compactification ({})",
                        above.get(p, q),
                        out.get(p, q)
                    )));
                }
            }
        }
        Ok(out)
    }
}

/// Hodge symmetry and signs of the Euler-Hodge numbers of a compact V-manifold.
fn check_closure(t: &EpqTable) -> Result<()> {
    let n = t.n;
    for p in 0..=n {
        for q in 0..=n {
            let v = t.get(p, q);
            if v != t.get(q, p) || v != t.get(n - p, n - q) {
                return Err(Error::Consistency(format!("e^{{{p},{q}}} of the compactification breaks Hodge symmetry")));
            }
            let h = if (p + q) % 2 == 0 { v.clone() } else { -v.clone() };
            if h.is_negative() {
                return Err(Error::Consistency(format!(
                    "e^{{{p},{q}}} = {v} of the compactification has the wrong sign"
                )));
            }
        }
    }
    Ok(())
}

/// `e_c^{pq}` of a torus complete intersection with a fresh memo.
///
/// # Errors
/// As [`DkEngine::epq_c_ci`].
pub fn epq_c_ci(problem: &TorusCIProblem) -> Result<EpqTable> {
    DkEngine::new().epq_c_ci(problem)
}

/// Hodge numbers of the closure `Y` in `X_F` of a generic torus complete
/// intersection, summing `e_c^{pq}` over the orbits of `F`.
///
/// Equations whose restricted support on a cone is empty vanish identically
/// on that orbit and are dropped there. This is accepted as long as fewer
/// equations are dropped than the dimension of the cone, so that `Y` meets
/// the orbit in dimension below `dim Y`.
///
/// # Errors
/// A fan that is not complete and simplicial, malformed supports, an orbit
/// where too many equations vanish, or a table that fails the Hodge checks.
pub fn hodge_compact(fan: &Fan, supports: &[SupportSet]) -> Result<EpqTable> {
    hodge_compact_with(&DkEngine::new(), fan, supports)
}

/// [`hodge_compact`] sharing the memo of `engine`.
///
/// # Errors
/// As [`hodge_compact`].
pub fn hodge_compact_with(engine: &DkEngine, fan: &Fan, supports: &[SupportSet]) -> Result<EpqTable> {
    if !is_complete(fan) || !is_simplicial(fan) {
        return Err(Error::Precondition("Hodge numbers need a complete simplicial fan".into()));
    }
    let m = fan.dim;
    let k = supports.len();
    if k > m {
        return Err(Error::Precondition(format!("{k} equations in dimension {m}")));
    }
    let n = m - k;
    let adapted = adapted_subfan(fan, supports)?;
    let degrees = degrees_of(fan, supports)?;
    let mut e = EpqTable::zeros(n, TableKind::Ordinary);
    for (cone, _) in &adapted.cones {
        let piece = orbit_problem(fan, cone, supports, &degrees)?;
        let dropped = k - piece.k();
        if dropped > 0 && dropped >= cone.len() {
            return Err(Error::Precondition(format!(
                "{dropped} equations vanish on the orbit of cone {cone:?} of dimension {}",
                cone.len()
            )));
        }
        let t = engine.epq_c_ci(&piece)?;
        if t.n > n && !t.is_zero() {
            return Err(Error::Consistency(format!("the orbit of cone {cone:?} contributes above dimension {n}")));
        }
        e.add_scaled(&t, 1);
    }
    let mut h = EpqTable::zeros(n, TableKind::Hodge);
    for p in 0..=n {
        for q in 0..=n {
            let v = e.get(p, q);
            h.set(p, q, if (p + q) % 2 == 0 { v } else { -v });
        }
    }
    h.check_hodge()?;
    Ok(h)
}

#[cfg(test)]
mod tests;
