//! Euler characteristics of alternating, symmetric and tensor powers of the
//! sheaf of differential forms on a quasi-smooth toric complete intersection.
//!
//! Each is the coefficient of `x^0 y^p` in `P(x)` times an explicit product of
//! factors, where `P(x)` is the Poincaré series of the coordinate ring. Taking
//! the `x^0` coefficient of `P(x) x^s` yields `H(-s)`, so after expanding the
//! factors modulo `y^{p+1}` everything reduces to Hilbert function values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{is_simplicial, DegreeMatrix};
use crate::hilbert::{h_of_s, HilbertContext};
use crate::lattice_polyhedra::k_subsets;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, x: BigInt) -> BigInt {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

/// One factor of a product expanded as a power series in `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// `1 ± y x^d`
    YBinomial { sign: Sign, d: Vec<i64> },
    /// `1 - x^d`
    XBinomial { d: Vec<i64> },
    /// `1 / (1 ± y x^d)`
    GeometricInverse { sign: Sign, d: Vec<i64> },
    /// `(1 ± y)^e` for any integer `e`
    ScalarBinomial { sign: Sign, exponent: i64 },
    /// `1 / (1 - y L(x))` with `L` a Laurent polynomial in `x`
    LinearFormPower { terms: Vec<(Vec<i64>, BigInt)> },
}

pub type SeriesFactorization = Vec<Factor>;

/// Sparse polynomial in `y` with Laurent polynomial coefficients in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomialXY {
    pub nvars: usize,
    /// `(exponent of x, power of y) -> coefficient`, zero coefficients omitted.
    pub terms: BTreeMap<(Vec<i64>, usize), BigInt>,
}

impl LaurentPolynomialXY {
    pub fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((vec![0; nvars], 0), BigInt::one());
        LaurentPolynomialXY { nvars, terms }
    }

    fn add_term(&mut self, x: Vec<i64>, y: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (x, y);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn mul_truncated(&self, other: &Self, max_y: usize) -> Result<Self> {
        let mut out = LaurentPolynomialXY { nvars: self.nvars, terms: BTreeMap::new() };
        for ((xa, ya), ca) in &self.terms {
            for ((xb, yb), cb) in &other.terms {
                if ya + yb > max_y {
                    continue;
                }
                let x = xa
                    .iter()
                    .zip(xb)
                    .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("series exponent")))
                    .collect::<Result<Vec<_>>>()?;
                out.add_term(x, ya + yb, ca * cb);
            }
        }
        Ok(out)
    }

    /// The coefficient of `y^p` as a map from `x`-exponents to coefficients.
    pub fn y_slice(&self, p: usize) -> BTreeMap<Vec<i64>, BigInt> {
        self.terms.iter().filter(|((_, y), _)| *y == p).map(|((x, _), c)| (x.clone(), c.clone())).collect()
    }
}

fn scaled(d: &[i64], a: i64) -> Result<Vec<i64>> {
    d.iter().map(|&x| x.checked_mul(a).ok_or(Error::Overflow("series exponent"))).collect()
}

fn generalized_binomial(e: i64, t: usize) -> BigInt {
    // e (e-1) ... (e-t+1) / t!
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..t {
        num *= BigInt::from(e) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn expand_factor(f: &Factor, nvars: usize, p: usize) -> Result<LaurentPolynomialXY> {
    let check = |d: &[i64]| -> Result<()> {
        if d.len() != nvars {
            return Err(Error::InvalidInput(format!("factor exponent of length {}, expected {nvars}", d.len())));
        }
        Ok(())
    };
    let mut out = LaurentPolynomialXY { nvars, terms: BTreeMap::new() };
    let zero = vec![0; nvars];
    match f {
        Factor::YBinomial { sign, d } => {
            check(d)?;
            out.add_term(zero, 0, BigInt::one());
            if p >= 1 {
                out.add_term(d.clone(), 1, sign.apply(BigInt::one()));
            }
        }
        Factor::XBinomial { d } => {
            check(d)?;
            out.add_term(zero, 0, BigInt::one());
            out.add_term(d.clone(), 0, -BigInt::one());
        }
        Factor::GeometricInverse { sign, d } => {
            check(d)?;
            for a in 0..=p {
                let c = if *sign == Sign::Plus && a % 2 == 1 { -BigInt::one() } else { BigInt::one() };
                out.add_term(scaled(d, a as i64)?, a, c);
            }
        }
        Factor::ScalarBinomial { sign, exponent } => {
            for t in 0..=p {
                let c = generalized_binomial(*exponent, t);
                let c = if *sign == Sign::Minus && t % 2 == 1 { -c } else { c };
                out.add_term(zero.clone(), t, c);
            }
        }
        Factor::LinearFormPower { terms } => {
            let mut yl = LaurentPolynomialXY { nvars, terms: BTreeMap::new() };
            for (d, c) in terms {
                check(d)?;
                yl.add_term(d.clone(), 1, c.clone());
            }
            let mut power = LaurentPolynomialXY::one(nvars);
            out = LaurentPolynomialXY::one(nvars);
            for _ in 0..p {
                power = power.mul_truncated(&yl, p)?;
                for ((x, y), c) in &power.terms {
                    out.add_term(x.clone(), *y, c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Expands a product of factors exactly modulo `y^{p+1}`.
///
/// # Errors
/// Exponent vectors of the wrong length, or overflow.
pub fn y_truncated_expand(nvars: usize, fac: &[Factor], p: usize) -> Result<LaurentPolynomialXY> {
    let mut acc = LaurentPolynomialXY::one(nvars);
    for f in fac {
        acc = acc.mul_truncated(&expand_factor(f, nvars, p)?, p)?;
    }
    Ok(acc)
}

/// The coefficient of `x^0 y^p` in `P(x)` times the factorization.
///
/// # Errors
/// Propagated from the expansion and from `H`.
pub fn coeff_x0_yp(ctx: &HilbertContext, fac: &[Factor], p: usize) -> Result<BigInt> {
    let poly = y_truncated_expand(ctx.num_rays(), fac, p)?;
    let mut total = BigInt::zero();
    for (s, c) in poly.y_slice(p) {
        let neg: Vec<i64> = s.iter().map(|x| -x).collect();
        total += c * h_of_s(ctx, &neg)?;
    }
    Ok(total)
}

fn check_inputs(ctx: &HilbertContext, degrees: &DegreeMatrix) -> Result<()> {
    if !is_simplicial(&ctx.fan) {
        return Err(Error::Precondition("Euler characteristics of forms need a simplicial fan".into()));
    }
    let r = ctx.num_rays();
    if let Some(row) = degrees.iter().find(|row| row.len() != r) {
        return Err(Error::InvalidInput(format!("degree row has length {}, expected {r}", row.len())));
    }
    Ok(())
}

fn unit(r: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; r];
    e[j] = 1;
    e
}

/// The factors whose `x^0 y^p` coefficient against `P(x)` is `χ(Y, Ω^p)`.
pub fn alt_factors(m: usize, r: usize, degrees: &DegreeMatrix) -> SeriesFactorization {
    let mut fac: Vec<Factor> = (0..r).map(|j| Factor::YBinomial { sign: Sign::Plus, d: unit(r, j) }).collect();
    fac.push(Factor::ScalarBinomial { sign: Sign::Plus, exponent: m as i64 - r as i64 });
    for d in degrees {
        fac.push(Factor::XBinomial { d: d.clone() });
        fac.push(Factor::GeometricInverse { sign: Sign::Plus, d: d.clone() });
    }
    fac
}

/// The factors for symmetric powers `S^p Ω^1`.
pub fn sym_factors(m: usize, r: usize, degrees: &DegreeMatrix) -> SeriesFactorization {
    let mut fac = Vec::new();
    for d in degrees {
        fac.push(Factor::XBinomial { d: d.clone() });
        fac.push(Factor::YBinomial { sign: Sign::Minus, d: d.clone() });
    }
    fac.push(Factor::ScalarBinomial { sign: Sign::Minus, exponent: r as i64 - m as i64 });
    fac.extend((0..r).map(|j| Factor::GeometricInverse { sign: Sign::Minus, d: unit(r, j) }));
    fac
}

/// The factors for tensor powers `(Ω^1)^{⊗p}`.
pub fn tensor_factors(m: usize, r: usize, degrees: &DegreeMatrix) -> SeriesFactorization {
    let mut fac: Vec<Factor> = degrees.iter().map(|d| Factor::XBinomial { d: d.clone() }).collect();
    let mut terms: Vec<(Vec<i64>, BigInt)> = (0..r).map(|j| (unit(r, j), BigInt::one())).collect();
    terms.push((vec![0; r], BigInt::from(m as i64 - r as i64)));
    terms.extend(degrees.iter().map(|d| (d.clone(), -BigInt::one())));
    fac.push(Factor::LinearFormPower { terms });
    fac
}

/// `χ(Y, Ω^p_Y)`.
///
/// # Errors
/// Non-simplicial fans, malformed degrees, and errors from `H`.
pub fn chi_alt(ctx: &HilbertContext, degrees: &DegreeMatrix, p: usize) -> Result<BigInt> {
    check_inputs(ctx, degrees)?;
    coeff_x0_yp(ctx, &alt_factors(ctx.fan.dim, ctx.num_rays(), degrees), p)
}

/// `χ(Y, S^p Ω^1_Y)`.
///
/// # Errors
/// As [`chi_alt`].
pub fn chi_sym(ctx: &HilbertContext, degrees: &DegreeMatrix, p: usize) -> Result<BigInt> {
    check_inputs(ctx, degrees)?;
    coeff_x0_yp(ctx, &sym_factors(ctx.fan.dim, ctx.num_rays(), degrees), p)
}

/// `χ(Y, (Ω^1_Y)^{⊗p})`.
///
/// # Errors
/// As [`chi_alt`].
pub fn chi_tensor(ctx: &HilbertContext, degrees: &DegreeMatrix, p: usize) -> Result<BigInt> {
    check_inputs(ctx, degrees)?;
    coeff_x0_yp(ctx, &tensor_factors(ctx.fan.dim, ctx.num_rays(), degrees), p)
}

fn compositions(parts: usize, max_total: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max_total {
        for mut rest in compositions(parts - 1, max_total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Which weight the expansion of `(1+y)^{m-r}` contributes to the direct sum.
#[derive(Clone, Copy)]
enum ScalarWeight {
    /// The binomial coefficient `C(r-m-1+t, t)` for `y^t`.
    Binomial,
    /// Weight 1 for every `t`; correct only when `r = m + 1`.
    Unit,
}

fn alt_hilbert_sum(ctx: &HilbertContext, degrees: &DegreeMatrix, p: usize, weight: ScalarWeight) -> Result<BigInt> {
    check_inputs(ctx, degrees)?;
    let r = ctx.num_rays();
    let m = ctx.fan.dim;
    let k = degrees.len();
    let mut total = BigInt::zero();
    for rho in 0..=p.min(r) {
        for rays in k_subsets(r, rho) {
            for tau in 0..=k {
                for eqs in k_subsets(k, tau) {
                    for is in compositions(k, p - rho) {
                        let t = p - rho - is.iter().sum::<usize>();
                        let w = match weight {
                            // C(r-m-1+t, t) = (-1)^t C(m-r, t)
                            ScalarWeight::Binomial => {
                                let c = generalized_binomial(m as i64 - r as i64, t);
                                if t % 2 == 1 {
                                    -c
                                } else {
                                    c
                                }
                            }
                            ScalarWeight::Unit => BigInt::one(),
                        };
                        let mut s = vec![0i64; r];
                        for &j in &rays {
                            s[j] -= 1;
                        }
                        for (l, row) in degrees.iter().enumerate() {
                            let times = is[l] as i64 + i64::from(eqs.contains(&l));
                            for (a, &b) in s.iter_mut().zip(row) {
                                *a = b
                                    .checked_mul(times)
                                    .and_then(|x| a.checked_sub(x))
                                    .ok_or(Error::Overflow("degree sum"))?;
                            }
                        }
                        let term = w * h_of_s(ctx, &s)?;
                        if (p + tau - rho) % 2 == 0 {
                            total += term;
                        } else {
                            total -= term;
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// `χ(Y, Ω^p_Y)` as a direct alternating sum of Hilbert function values.
///
/// Expanding the product for [`chi_alt`] term by term gives
/// `Σ (-1)^{p+τ-ρ} C(r-m-1+t, t) H(-e_J - d_L - Σ i_l d_l)` over ray sets
/// `J` of size `ρ`, equation sets `L` of size `τ`, and multi-indices `i` with
/// `t = p - ρ - Σ i_l >= 0`; the binomial comes from `(1+y)^{m-r}`.
///
/// # Errors
/// As [`chi_alt`].
pub fn chi_alt_hilbert(ctx: &HilbertContext, degrees: &DegreeMatrix, p: usize) -> Result<BigInt> {
    alt_hilbert_sum(ctx, degrees, p, ScalarWeight::Binomial)
}

/// The same sum with every `t` weighted by 1, as the corollary is usually
/// quoted. It agrees with [`chi_alt`] exactly when `r = m + 1` and is kept to
/// exhibit the difference.
///
/// # Errors
/// As [`chi_alt`].
pub fn chi_alt_hilbert_unit_weight(ctx: &HilbertContext, degrees: &DegreeMatrix, p: usize) -> Result<BigInt> {
    alt_hilbert_sum(ctx, degrees, p, ScalarWeight::Unit)
}

/// `Σ_p (-1)^p χ(Ω^p)` for `p = 0..=n`.
///
/// # Errors
/// As [`chi_alt`].
pub fn alt_euler_sum(ctx: &HilbertContext, degrees: &DegreeMatrix, n: usize) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for p in 0..=n {
        let v = chi_alt(ctx, degrees, p)?;
        if p % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
