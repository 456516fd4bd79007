//! Exact integer and rational linear algebra and polyhedral geometry.
//!
//! No floating point is used anywhere. Lattice vectors are `i64` vectors;
//! intermediate quantities that can grow (determinants, eliminations, Smith
//! forms) are carried in arbitrary precision, and the counting fast path uses
//! checked 128-bit arithmetic that reports overflow instead of wrapping.

pub(crate) mod feasibility;
mod hull;
pub(crate) mod linalg;
mod points;
mod reduction;
mod snf;

pub use hull::{convex_hull, minkowski_support, normal_fan, Facet, Polytope};
pub use linalg::rank;
pub(crate) use points::{k_subsets, RegionCounter, Side};
pub use points::{lattice_points, Halfspace, LatticePoints, RationalPolyhedron};
pub use reduction::affine_lattice_reduction;
pub use snf::{smith_normal_form, smith_normal_form_with_cols, SmithDecomposition};

use num_integer::Integer;

use crate::error::{Error, Result};

/// A point of `Z^m`.
pub type LatticeVector = Vec<i64>;

/// A finite set of lattice points: the support of one Laurent polynomial.
pub type SupportSet = Vec<LatticeVector>;

/// Divides a nonzero vector by the gcd of its entries.
///
/// # Errors
/// The zero vector has no primitive multiple.
pub fn primitive(v: &[i64]) -> Result<LatticeVector> {
    let g = v.iter().fold(0i64, |g, x| g.gcd(x));
    if g == 0 {
        return Err(Error::InvalidInput("primitive vector of the zero vector".into()));
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// Euclidean pairing of two integer vectors.
pub fn pairing(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
