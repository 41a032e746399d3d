//! Truncated confluent hypergeometric series with bottom parameter `-N`,
//! the Kummer transformation they satisfy through order `N`, and the Padé
//! table of `e^z` built from them.

use serde::Serialize;

use crate::error::{check_size, Counterexample, KrwError, Result};
use crate::hypergeometric::hypergeometric_terms;
use crate::poly::{series_exp, DensePoly, TruncSeries};
use crate::scalar::ExactScalar;

/// `[1F1(a; -N; scale z)]_N`: the sum stops at `z^N`, just before the factor
/// `(-N)_(N+1)` would vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedOneF1 {
    pub a: i64,
    pub size: usize,
    pub scale: ExactScalar,
    pub coeffs: TruncSeries,
}

impl TruncatedOneF1 {
    pub fn to_poly(&self) -> DensePoly {
        self.coeffs.to_poly()
    }
}

pub fn truncated_1f1(a: i64, big_n: usize, scale: &ExactScalar) -> Result<TruncatedOneF1> {
    check_size(big_n)?;
    let terms = hypergeometric_terms(
        &[ExactScalar::from_int(a)],
        &[ExactScalar::from_int(-(big_n as i64))],
        big_n,
    )?;
    Ok(TruncatedOneF1 {
        a,
        size: big_n,
        scale: scale.clone(),
        coeffs: TruncSeries::new(big_n, terms).scale_arg(scale),
    })
}

/// `[1F1(a; -N; z)]_N - e^z [1F1(-N-a; -N; -z)]_N` through `z^N`.
pub fn kummer_residual(a: i64, big_n: usize) -> Result<TruncSeries> {
    let left = truncated_1f1(a, big_n, &ExactScalar::one())?;
    let right = truncated_1f1(-(big_n as i64) - a, big_n, &ExactScalar::from_int(-1))?;
    Ok(&left.coeffs - &(&series_exp(big_n) * &right.coeffs))
}

/// Fails with the first nonzero coefficient of [`kummer_residual`].
pub fn check_kummer(a: i64, big_n: usize) -> Result<()> {
    let r = kummer_residual(a, big_n)?;
    match r.valuation() {
        None => Ok(()),
        Some(j) => Err(KrwError::mismatch(
            "kummer",
            Counterexample::new(
                [
                    ("a", a.to_string()),
                    ("N", big_n.to_string()),
                    ("j", j.to_string()),
                ],
                "0",
                &r.coeffs()[j],
            ),
        )),
    }
}

/// `R_nm = P / Q` with `P = 1F1(-n; -n-m; z)` and `Q = 1F1(-m; -n-m; -z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PadePair {
    pub n: usize,
    pub m: usize,
    pub numerator: DensePoly,
    pub denominator: DensePoly,
}

impl PadePair {
    /// `e^z Q - P` through `z^order`.
    pub fn defect_series(&self, order: usize) -> TruncSeries {
        let num = self.numerator.to_series(order);
        let den = self.denominator.to_series(order);
        &(&series_exp(order) * &den) - &num
    }
}

fn check_pade_degrees(n: usize, m: usize) -> Result<()> {
    if n + m == 0 {
        return Err(KrwError::InvalidParameter("pade needs n + m >= 1".into()));
    }
    Ok(())
}

/// Builds `R_nm` and checks `e^z Q - P` vanishes through `z^(n+m)`.
///
/// Both polynomials are the truncated series of [`truncated_1f1`]; the terms
/// past degree `n` (resp. `m`) vanish because the top parameter terminates.
pub fn pade_exp(n: usize, m: usize) -> Result<PadePair> {
    check_pade_degrees(n, m)?;
    let total = n + m;
    let numerator = truncated_1f1(-(n as i64), total, &ExactScalar::one())?.to_poly();
    let denominator = truncated_1f1(-(m as i64), total, &ExactScalar::from_int(-1))?.to_poly();
    let pair = PadePair {
        n,
        m,
        numerator,
        denominator,
    };
    let defect = pair.defect_series(total);
    if let Some(j) = defect.valuation() {
        return Err(KrwError::mismatch(
            "pade",
            Counterexample::new(
                [("n", n.to_string()), ("m", m.to_string()), ("j", j.to_string())],
                "0",
                &defect.coeffs()[j],
            ),
        ));
    }
    Ok(pair)
}

/// First exponent past `n + m` where `e^z Q - P` is nonzero, with its
/// coefficient.
///
/// Past `max(n, m)` the difference is `e^z Q` minus a polynomial, so a nonzero
/// coefficient always turns up within `n + m + 1` further terms.
pub fn pade_order_first_defect(n: usize, m: usize) -> Result<(usize, ExactScalar)> {
    let pair = pade_exp(n, m)?;
    let order = 2 * (n + m + 1);
    let defect = pair.defect_series(order);
    let j = defect
        .valuation()
        .expect("a nonzero defect appears within the computed order");
    Ok((j, defect.coeffs()[j].clone()))
}

/// `(-1)^m n! m! / ((n+m)! (n+m+1)!)`, the generic defect coefficient.
pub fn expected_defect(n: usize, m: usize) -> ExactScalar {
    use crate::scalar::factorial;
    let (n, m) = (n as u64, m as u64);
    ExactScalar::sign_power(m as i64) * factorial(n) * factorial(m)
        / (factorial(n + m) * factorial(n + m + 1))
}
