//! Weighted projective spaces: the fan, residue formulas for the Hilbert
//! function and for Euler characteristics of forms, and Hodge numbers of
//! quasi-smooth complete intersections.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dk_hodge::{EpqTable, TableKind};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::forms_euler::{y_truncated_expand, Factor, Sign};

type Q = BigRational;

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<Q>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Q::one()])
    }

    /// `c x^e`
    pub fn monomial(c: Q, e: usize) -> Self {
        let mut v = vec![Q::zero(); e + 1];
        v[e] = c;
        Poly(v).trimmed()
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    fn scale(&self, c: &Q) -> Poly {
        Poly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect()).trimmed()
    }

    /// Quotient and remainder; `other` must be nonzero.
    fn div_rem(&self, other: &Poly) -> (Poly, Poly) {
        let d = other.degree().expect("division by zero polynomial");
        let lead = other.0[d].clone();
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let c = &rem.0[rd] / &lead;
            quot[rd - d] = c.clone();
            rem = rem.sub(&Poly::monomial(c, rd - d).mul(other));
        }
        (Poly(quot).trimmed(), rem)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Lowest exponent with a nonzero coefficient.
    fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }

    fn reversed(&self) -> Poly {
        Poly(self.0.iter().rev().cloned().collect()).trimmed()
    }
}

/// A univariate rational function `numerator / denominator`, kept reduced
/// with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl RationalFunction {
    /// # Errors
    /// A zero denominator.
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if numerator.is_zero() {
            return Ok(RationalFunction { numerator, denominator: Poly::one() });
        }
        let g = numerator.gcd(&denominator);
        let (mut num, _) = numerator.div_rem(&g);
        let (mut den, _) = denominator.div_rem(&g);
        let lead = den.0.last().expect("nonzero").clone();
        let inv = Q::one() / lead;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RationalFunction { numerator: num, denominator: den })
    }

    /// `Σ c_e x^e / denominator` for a Laurent polynomial given by `(e, c)` pairs.
    ///
    /// # Errors
    /// A zero denominator.
    pub fn from_laurent(terms: &[(i64, BigInt)], denominator: Poly) -> Result<Self> {
        let low = terms.iter().map(|(e, _)| *e).min().unwrap_or(0).min(0);
        let high = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut num = vec![Q::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            num[(e - low) as usize] += Q::from_integer(c.clone());
        }
        let den = denominator.mul(&Poly::monomial(Q::one(), (-low) as usize));
        RationalFunction::new(Poly(num).trimmed(), den)
    }
}

/// Power series coefficients of `num / den` up to degree `n`; `den(0) != 0`.
fn series_coefficient(num: &Poly, den: &Poly, n: usize) -> Q {
    let d0 = den.coeff(0);
    let mut c: Vec<Q> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut v = num.coeff(i);
        for j in 1..=i.min(den.0.len().saturating_sub(1)) {
            v -= den.coeff(j) * &c[i - j];
        }
        c.push(v / &d0);
    }
    c.pop().expect("n + 1 coefficients")
}

/// The coefficient of `x^{-1}` in the Laurent expansion of `f` at 0.
pub fn residue_zero(f: &RationalFunction) -> Q {
    let Some(a) = f.numerator.valuation() else { return Q::zero() };
    let b = f.denominator.valuation().expect("nonzero denominator");
    // f = x^{a-b} num'/den' with both units at 0
    let target = b as i64 - a as i64 - 1;
    if target < 0 {
        return Q::zero();
    }
    series_coefficient(&f.numerator.shift_down(a), &f.denominator.shift_down(b), target as usize)
}

/// `-res_0(ξ^{-2} f(1/ξ))`.
pub fn residue_infinity(f: &RationalFunction) -> Q {
    if f.numerator.is_zero() {
        return Q::zero();
    }
    let dn = f.numerator.degree().expect("nonzero") as i64;
    let dd = f.denominator.degree().expect("nonzero") as i64;
    // f(1/ξ) = ξ^{dd-dn} rev(num)/rev(den)
    let e = dd - dn - 2;
    let (num, den) = if e >= 0 {
        (f.numerator.reversed().mul(&Poly::monomial(Q::one(), e as usize)), f.denominator.reversed())
    } else {
        (f.numerator.reversed(), f.denominator.reversed().mul(&Poly::monomial(Q::one(), (-e) as usize)))
    };
    -residue_zero(&RationalFunction::new(num, den).expect("nonzero denominator"))
}

fn check_weights(w: &[i64]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidInput("empty weight list".into()));
    }
    if w.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    if w.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::InvalidInput("weights must be coprime".into()));
    }
    Ok(())
}

/// The fan of `P(1, w_1, ..., w_m)`: cones spanned by at most `m` of
/// `p_0 = (-w_1, ..., -w_m)` and `p_j = e_j`.
///
/// # Errors
/// `w_0 != 1`, fewer than two weights, non-positive weights, or
/// `gcd(w_1, ..., w_m) != 1` (which would make `p_0` non-primitive).
pub fn wps_fan(w: &[i64]) -> Result<Fan> {
    check_weights(w)?;
    if w.len() < 2 {
        return Err(Error::InvalidInput("need at least two weights".into()));
    }
    if w[0] != 1 {
        return Err(Error::InvalidInput("the fan is built for w_0 = 1".into()));
    }
    if w[1..].iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
        return Err(Error::InvalidInput("w_1, ..., w_m must be coprime".into()));
    }
    let m = w.len() - 1;
    let mut rays = vec![w[1..].iter().map(|x| -x).collect::<Vec<i64>>()];
    for j in 0..m {
        let mut e = vec![0; m];
        e[j] = 1;
        rays.push(e);
    }
    let maximal_cones = (0..=m).map(|skip| (0..=m).filter(|&j| j != skip).collect()).collect();
    Ok(Fan { dim: m, rays, maximal_cones })
}

/// `Π_j (1 - x^{w_j})`
fn weight_denominator(w: &[i64]) -> Poly {
    w.iter().fold(Poly::one(), |acc, &x| {
        let mut v = vec![0i64; x as usize + 1];
        v[0] = 1;
        v[x as usize] = -1;
        acc.mul(&Poly::from_ints(&v))
    })
}

fn count_integrand(w: &[i64], s: &[i64]) -> Result<RationalFunction> {
    check_weights(w)?;
    if s.len() != w.len() {
        return Err(Error::InvalidInput(format!("grading vector has length {}, expected {}", s.len(), w.len())));
    }
    let mut e: i64 = -1;
    for (wj, sj) in w.iter().zip(s) {
        e = wj.checked_mul(*sj).and_then(|x| e.checked_sub(x)).ok_or(Error::Overflow("residue exponent"))?;
    }
    RationalFunction::from_laurent(&[(e, BigInt::one())], weight_denominator(w))
}

fn to_integer(x: Q, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Consistency(format!("{what} produced the non-integer {x}")));
    }
    Ok(x.to_integer())
}

/// Number of `q` with `<p_j, q> >= -s_j` for all `j`, as the residue at 0 of
/// `x^{-1} Π_j x^{-w_j s_j} / (1 - x^{w_j})`.
///
/// # Errors
/// Invalid weights or a grading vector of the wrong length.
pub fn wps_lattice_count(w: &[i64], s: &[i64]) -> Result<BigInt> {
    to_integer(residue_zero(&count_integrand(w, s)?), "lattice count")
}

/// `H(s)` as the sum of the residues at 0 and infinity of the same integrand.
///
/// # Errors
/// As [`wps_lattice_count`].
pub fn wps_hilbert(w: &[i64], s: &[i64]) -> Result<BigInt> {
    let f = count_integrand(w, s)?;
    to_integer(residue_zero(&f) + residue_infinity(&f), "Hilbert function")
}

/// Which sheaf of forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    Alt,
    Sym,
    Tensor,
}

/// `χ(Y, Ω^p)`, `χ(Y, S^p Ω^1)` or `χ(Y, (Ω^1)^{⊗p})` for a complete
/// intersection of the given degrees in `P_w`, by residues in `x` of the
/// `y^p` coefficient of the generating function.
///
/// # Errors
/// Invalid weights or non-positive degrees.
pub fn wps_chi(w: &[i64], degrees: &[i64], p: usize, kind: FormKind) -> Result<BigInt> {
    check_weights(w)?;
    if degrees.iter().any(|&d| d <= 0) {
        return Err(Error::InvalidInput("degrees must be positive".into()));
    }
    let mut fac: Vec<Factor> = Vec::new();
    match kind {
        FormKind::Alt => {
            fac.push(Factor::ScalarBinomial { sign: Sign::Plus, exponent: -1 });
            fac.extend(w.iter().map(|&x| Factor::YBinomial { sign: Sign::Plus, d: vec![x] }));
            for &d in degrees {
                fac.push(Factor::XBinomial { d: vec![d] });
                fac.push(Factor::GeometricInverse { sign: Sign::Plus, d: vec![d] });
            }
        }
        FormKind::Sym => {
            for &d in degrees {
                fac.push(Factor::XBinomial { d: vec![d] });
                fac.push(Factor::YBinomial { sign: Sign::Minus, d: vec![d] });
            }
            fac.push(Factor::ScalarBinomial { sign: Sign::Minus, exponent: 1 });
            fac.extend(w.iter().map(|&x| Factor::GeometricInverse { sign: Sign::Minus, d: vec![x] }));
        }
        FormKind::Tensor => {
            fac.extend(degrees.iter().map(|&d| Factor::XBinomial { d: vec![d] }));
            let mut terms: Vec<(Vec<i64>, BigInt)> = w.iter().map(|&x| (vec![x], BigInt::one())).collect();
            terms.extend(degrees.iter().map(|&d| (vec![d], -BigInt::one())));
            terms.push((vec![0], -BigInt::one()));
            fac.push(Factor::LinearFormPower { terms });
        }
    }
    let series = y_truncated_expand(1, &fac, p)?;
    let terms: Vec<(i64, BigInt)> = series.y_slice(p).into_iter().map(|(e, c)| (e[0] - 1, c)).collect();
    if terms.is_empty() {
        return Ok(BigInt::zero());
    }
    let f = RationalFunction::from_laurent(&terms, weight_denominator(w))?;
    to_integer(residue_zero(&f) + residue_infinity(&f), "Euler characteristic")
}

/// Hodge numbers of a quasi-smooth complete intersection of the given degrees
/// in `P_w`.
///
/// Off the middle row `h^{pq} = δ_{pq}`; the middle row follows from
/// `e^p = (-1)^p χ(Ω^p) = Σ_q (-1)^{p+q} h^{pq}`.
///
/// # Errors
/// More equations than the ambient dimension, invalid input, or a negative or
/// asymmetric result.
pub fn wps_hodge(w: &[i64], degrees: &[i64]) -> Result<EpqTable> {
    check_weights(w)?;
    let m = w.len() - 1;
    if degrees.len() > m {
        return Err(Error::Precondition(format!("{} equations in dimension {m}", degrees.len())));
    }
    let n = m - degrees.len();
    let mut table = EpqTable::zeros(n, TableKind::Hodge);
    for p in 0..=n {
        let chi = wps_chi(w, degrees, p, FormKind::Alt)?;
        let e_p = if p % 2 == 0 { chi } else { -chi };
        let off = if 2 * p != n { BigInt::one() } else { BigInt::zero() };
        let middle = e_p - off;
        let h = if n % 2 == 0 { middle } else { -middle };
        table.set(p, n - p, h);
        if 2 * p != n {
            table.set(p, p, BigInt::one());
        }
    }
    table.check_hodge()?;
    Ok(table)
}
