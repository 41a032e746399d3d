//! Linear differential operators with monomial coefficients, acting on
//! Laurent polynomials, and their matrices on finite scaled-monomial bases.
//!
//! An operator is a finite sum of terms `c * z^p * d^k/dz^k`. Applying it to
//! `z^e` is closed-form, so operators become exact matrices once a finite
//! basis `{ s_j z^(e_j) }` is fixed. Terms that land outside the basis are
//! reported as [`Leak`]s and dropped, which is exactly the projection onto
//! the span of the basis.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use serde::Serialize;

use crate::error::{KrwError, Result};
use crate::matrix::RationalMatrix;
use crate::poly::LaurentPoly;
use crate::scalar::{binomial, ExactScalar};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DiffOp {
    // (power of z, derivative order) -> coefficient; zero coefficients are never stored
    terms: BTreeMap<(i64, u32), ExactScalar>,
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * z^power * d^order/dz^order`.
    pub fn term(c: ExactScalar, power: i64, order: u32) -> Self {
        let mut op = Self::zero();
        op.add_term(c, power, order);
        op
    }

    /// Multiplication by the constant `c`.
    pub fn constant(c: ExactScalar) -> Self {
        Self::term(c, 0, 0)
    }

    /// `z^power` with integer coefficient and derivative order.
    pub fn int_term(c: i64, power: i64, order: u32) -> Self {
        Self::term(ExactScalar::from_int(c), power, order)
    }

    fn add_term(&mut self, c: ExactScalar, power: i64, order: u32) {
        let slot = self.terms.entry((power, order)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(power, order));
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero();
        for (&(p, k), v) in &self.terms {
            out.add_term(v * c, p, k);
        }
        out
    }

    /// `(power, order, coefficient)` for each term.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &ExactScalar)> {
        self.terms.iter().map(|(&(p, k), c)| (p, k, c))
    }

    pub fn apply_monomial(&self, exponent: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().filter_map(|(p, k, c)| {
            // d^k z^e = e (e-1) ... (e-k+1) z^(e-k)
            let falling: ExactScalar = (0..k as i64)
                .map(|j| ExactScalar::from_int(exponent - j))
                .product();
            let v = c * &falling;
            (!v.is_zero()).then_some((exponent - k as i64 + p, v))
        }))
    }

    pub fn apply(&self, f: &LaurentPoly) -> LaurentPoly {
        f.terms().fold(LaurentPoly::zero(), |acc, (e, c)| {
            &acc + &self.apply_monomial(e).scale(c)
        })
    }

    /// Formal transpose under the residue pairing, i.e. the operator `L^T`
    /// with `res(f * L g) = res(L^T f * g)` for all Laurent polynomials.
    ///
    /// `(z^p d^k)^T = (-1)^k d^k . z^p`, expanded by Leibniz:
    /// `(-1)^k sum_j C(k, j) (d^j z^p) d^(k-j)`.
    pub fn lagrange_adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (p, k, c) in self.terms() {
            let sign = ExactScalar::sign_power(k as i64);
            for j in 0..=k {
                let falling: ExactScalar = (0..j as i64).map(|i| ExactScalar::from_int(p - i)).product();
                if falling.is_zero() {
                    continue;
                }
                let coeff = c * &sign * binomial(k as u64, j as i64) * falling;
                out.add_term(coeff, p - j as i64, k - j);
            }
        }
        out
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (p, k, c) in rhs.terms() {
            out.add_term(c.clone(), p, k);
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &rhs.scale(&ExactScalar::from_int(-1))
    }
}

/// A term an operator produced outside the span of a basis.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Leak {
    /// Index of the basis element the operator was applied to.
    pub column: usize,
    pub exponent: i64,
    pub coefficient: ExactScalar,
}

/// Basis `{ scale_j * z^(exponent_j) }` with distinct exponents and nonzero scales.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledMonomialBasis {
    exponents: Vec<i64>,
    scales: Vec<ExactScalar>,
    index: BTreeMap<i64, usize>,
}

/// An operator restricted to a basis, together with what the restriction dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisMatrix {
    pub matrix: RationalMatrix,
    pub leaks: Vec<Leak>,
}

impl BasisMatrix {
    /// Columns that needed a term dropped, ascending and deduplicated.
    pub fn leaking_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.leaks.iter().map(|l| l.column).collect();
        cols.dedup();
        cols
    }
}

impl ScaledMonomialBasis {
    pub fn new(exponents: Vec<i64>, scales: Vec<ExactScalar>) -> Result<Self> {
        if exponents.len() != scales.len() {
            return Err(KrwError::InvalidParameter("basis length mismatch".into()));
        }
        if scales.iter().any(ExactScalar::is_zero) {
            return Err(KrwError::InvalidParameter("basis scale is zero".into()));
        }
        let index: BTreeMap<i64, usize> = exponents.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        if index.len() != exponents.len() {
            return Err(KrwError::InvalidParameter("repeated basis exponent".into()));
        }
        Ok(ScaledMonomialBasis {
            exponents,
            scales,
            index,
        })
    }

    /// Plain monomials `z^e`.
    pub fn monomials(exponents: Vec<i64>) -> Self {
        let scales = vec![ExactScalar::one(); exponents.len()];
        Self::new(exponents, scales).expect("unit scales and caller-supplied distinct exponents")
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn scales(&self) -> &[ExactScalar] {
        &self.scales
    }

    pub fn element(&self, j: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.scales[j].clone(), self.exponents[j])
    }

    pub fn to_laurent(&self, coords: &[ExactScalar]) -> LaurentPoly {
        assert_eq!(coords.len(), self.len());
        LaurentPoly::from_terms(
            coords
                .iter()
                .zip(self.exponents.iter().zip(&self.scales))
                .map(|(c, (&e, s))| (e, c * s)),
        )
    }

    /// Coordinates of `f` in the basis, and the terms of `f` outside its span.
    pub fn coordinates(&self, f: &LaurentPoly) -> (Vec<ExactScalar>, Vec<(i64, ExactScalar)>) {
        let mut coords = vec![ExactScalar::zero(); self.len()];
        let mut outside = Vec::new();
        for (e, c) in f.terms() {
            match self.index.get(&e) {
                Some(&j) => coords[j] = c / &self.scales[j],
                None => outside.push((e, c.clone())),
            }
        }
        (coords, outside)
    }

    /// Matrix of `Pi . op` on this basis (column `j` holds the coordinates of
    /// `op` applied to element `j`), with the dropped terms listed as leaks.
    pub fn matrix_of(&self, op: &DiffOp) -> BasisMatrix {
        let n = self.len();
        let mut matrix = RationalMatrix::zeros(n, n);
        let mut leaks = Vec::new();
        for j in 0..n {
            let image = op.apply(&self.element(j));
            let (coords, outside) = self.coordinates(&image);
            for (i, c) in coords.into_iter().enumerate() {
                matrix.set(i, j, c);
            }
            leaks.extend(outside.into_iter().map(|(exponent, coefficient)| Leak {
                column: j,
                exponent,
                coefficient,
            }));
        }
        BasisMatrix { matrix, leaks }
    }
}
