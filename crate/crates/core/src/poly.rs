//! Dense polynomials, finite Laurent polynomials and truncated power series
//! with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{factorial, ExactScalar};

/// Polynomial in `z`, coefficients in ascending degree order.
///
/// Canonical form: no trailing zeros, and the zero polynomial is `[0]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DensePoly {
    coeffs: Vec<ExactScalar>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(ExactScalar::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ExactScalar::zero());
        }
        DensePoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| ExactScalar::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        DensePoly {
            coeffs: vec![ExactScalar::zero()],
        }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![ExactScalar::one()],
        }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: ExactScalar, degree: usize) -> Self {
        let mut coeffs = vec![ExactScalar::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `a + b z`.
    pub fn linear(a: ExactScalar, b: ExactScalar) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactScalar> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeff(&self, i: usize) -> ExactScalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = DensePoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval(&self, z: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * z + c)
    }

    pub fn to_series(&self, order: usize) -> TruncSeries {
        TruncSeries::new(order, self.coeffs.clone())
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::new(0, self.coeffs.clone())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

fn zip_longest(
    a: &[ExactScalar],
    b: &[ExactScalar],
    op: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar,
) -> Vec<ExactScalar> {
    let zero = ExactScalar::zero();
    (0..a.len().max(b.len()))
        .map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

fn convolve(a: &[ExactScalar], b: &[ExactScalar], len: usize) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() || i >= len {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        DensePoly::new(zip_longest(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        DensePoly::new(zip_longest(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        DensePoly::new(convolve(&self.coeffs, &rhs.coeffs, len))
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Finite Laurent polynomial `sum_i coeffs[i] z^(low + i)`.
///
/// Canonical form trims zero coefficients at both ends; the zero polynomial
/// is `low = 0, coeffs = [0]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<ExactScalar>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<ExactScalar>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(first);
        LaurentPoly {
            low: low + first as i64,
            coeffs: coeffs[first..=last].to_vec(),
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: vec![ExactScalar::zero()],
        }
    }

    pub fn monomial(c: ExactScalar, exponent: i64) -> Self {
        Self::new(exponent, vec![c])
    }

    /// Builds `sum_(e, c)` from `(exponent, coefficient)` pairs; repeated
    /// exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, ExactScalar)>) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![ExactScalar::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::new(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> ExactScalar {
        let idx = exponent - self.low;
        if idx < 0 {
            return ExactScalar::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &ExactScalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `z^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Keep only the exponents in `lo..=hi`.
    pub fn project(&self, lo: i64, hi: i64) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| (lo..=hi).contains(e))
                .map(|(e, c)| (e, c.clone())),
        )
    }

    /// Coefficient of `z^-1`.
    pub fn residue(&self) -> ExactScalar {
        self.coeff(-1)
    }

    /// Coefficients for exponents `lo..=hi`, zero-filled.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<ExactScalar> {
        (lo..=hi).map(|e| self.coeff(e)).collect()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} * {:?}", self.low, self.coeffs)
    }
}

impl From<&DensePoly> for LaurentPoly {
    fn from(p: &DensePoly) -> Self {
        p.to_laurent()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms()
                .map(|(e, c)| (e, c.clone()))
                .chain(rhs.terms().map(|(e, c)| (e, -c))),
        )
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        LaurentPoly::new(self.low + rhs.low, convolve(&self.coeffs, &rhs.coeffs, len))
    }
}

/// The contour pairing `(1/2 pi i) \oint f g dz`, i.e. the `z^-1`
/// coefficient of the product.
pub fn residue_pair(f: &LaurentPoly, g: &LaurentPoly) -> ExactScalar {
    // Only pairs with exponent sum -1 contribute.
    f.terms().map(|(e, c)| c * &g.coeff(-1 - e)).sum()
}

/// Power series known exactly through `z^order`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncSeries {
    order: usize,
    coeffs: Vec<ExactScalar>,
}

impl TruncSeries {
    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn new(order: usize, mut coeffs: Vec<ExactScalar>) -> Self {
        coeffs.resize(order + 1, ExactScalar::zero());
        TruncSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![ExactScalar::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&ExactScalar> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_zero)
    }

    /// First index carrying a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn product(&self, rhs: &TruncSeries) -> Self {
        let order = self.order.min(rhs.order);
        Self::new(order, convolve(&self.coeffs, &rhs.coeffs, order + 1))
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self::new(order, self.coeffs[..=order].to_vec())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(c z)`.
    pub fn scale_arg(&self, c: &ExactScalar) -> Self {
        let mut pw = ExactScalar::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &pw;
                pw *= c;
                out
            })
            .collect();
        Self::new(self.order, coeffs)
    }

    pub fn to_poly(&self) -> DensePoly {
        DensePoly::new(self.coeffs.clone())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.order), |acc, _| &acc * self)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + O(z^{})", self.coeffs, self.order + 1)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        TruncSeries::new(
            order,
            (0..=order).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        )
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order.min(rhs.order);
        TruncSeries::new(
            order,
            (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        )
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.product(rhs)
    }
}

/// `e^z` through `z^order`.
pub fn series_exp(order: usize) -> TruncSeries {
    TruncSeries::new(
        order,
        (0..=order as u64)
            .map(|j| factorial(j).recip().expect("factorial is nonzero"))
            .collect(),
    )
}

/// `1/(1 - z)` through `z^order`.
pub fn series_geometric(order: usize) -> TruncSeries {
    TruncSeries::new(order, vec![ExactScalar::one(); order + 1])
}
