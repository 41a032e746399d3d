//! Coefficients of hypergeometric sums cut off at a fixed index.
//!
//! With a lower parameter `-N`, the factor `(-N)_j` vanishes from `j = N + 1`
//! on, so the series is only defined up to `z^N`. Every sum here is finite
//! and stops before that happens.

use crate::error::{KrwError, Result};
use crate::scalar::ExactScalar;

/// `t_j = prod_i (upper_i)_j / (prod_i (lower_i)_j * j!)` for `j = 0..=last`.
///
/// Terms are built by the ratio `t_(j+1) / t_j`; once an upper parameter hits
/// zero all later terms are zero. A vanishing lower factor before that is an
/// error.
pub fn hypergeometric_terms(
    upper: &[ExactScalar],
    lower: &[ExactScalar],
    last: usize,
) -> Result<Vec<ExactScalar>> {
    let mut out = Vec::with_capacity(last + 1);
    let mut term = ExactScalar::one();
    out.push(term.clone());
    for j in 0..last {
        if term.is_zero() {
            out.push(ExactScalar::zero());
            continue;
        }
        let jj = ExactScalar::from_int(j as i64);
        let mut num = ExactScalar::one();
        for a in upper {
            num *= &(a + &jj);
        }
        let mut den = ExactScalar::from_int(j as i64 + 1);
        for c in lower {
            den *= &(c + &jj);
        }
        if !num.is_zero() && den.is_zero() {
            return Err(KrwError::InvalidParameter(format!(
                "lower parameter vanishes at term {}",
                j + 1
            )));
        }
        term = if num.is_zero() {
            ExactScalar::zero()
        } else {
            term * num / den
        };
        out.push(term.clone());
    }
    Ok(out)
}

/// Evaluates `sum_j t_j x^j` from [`hypergeometric_terms`].
pub fn hypergeometric_sum(
    upper: &[ExactScalar],
    lower: &[ExactScalar],
    last: usize,
    x: &ExactScalar,
) -> Result<ExactScalar> {
    let terms = hypergeometric_terms(upper, lower, last)?;
    Ok(terms.iter().rev().fold(ExactScalar::zero(), |acc, t| acc * x + t))
}
