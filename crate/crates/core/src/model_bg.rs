//! Barut–Girardello model: `J0 = z d - N/2`, `J+ = z`, `J- = -z d^2 + N d`.
//!
//! Here `J-` preserves polynomials of degree at most `N` but `J+` does not, so
//! the positive side needs one truncation (`J+` on `z^N`). On the negative
//! span the adjoint `J-^T` stops at `z^(-1-N)` by itself and `J+^T` needs
//! the truncation instead, at `z^-1`. The hatted normalizations
//! `z^n / (-N)_n` and `(-1)^n n! z^(-1-n)` make the matrices integral.

use serde::Serialize;

use crate::diffop::{DiffOp, ScaledMonomialBasis};
use crate::error::{check_index, check_size, Counterexample, KrwError, Result};
use crate::krawtchouk::krawtchouk_table;
use crate::matrix::RationalMatrix;
use crate::model_bargmann::{expect_equal, k_and_n, ModelOperators, PolyBasisKind};
use crate::pade_kummer::truncated_1f1;
use crate::poly::{residue_pair, series_exp, DensePoly, LaurentPoly};
use crate::scalar::{binomial, factorial, pochhammer, ExactScalar};
use crate::su2_rep::{compare_vectors, solve_eigenvector, IrrepBasisKind};

/// Which hatted basis, and for which `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HattedBasisSpec {
    pub size: usize,
    pub direction: PolyBasisKind,
}

impl HattedBasisSpec {
    pub fn new(size: usize, direction: PolyBasisKind) -> Result<Self> {
        check_size(size)?;
        Ok(HattedBasisSpec { size, direction })
    }

    pub fn exponent(&self, n: usize) -> i64 {
        match self.direction {
            PolyBasisKind::Positive => n as i64,
            PolyBasisKind::Negative => -1 - n as i64,
        }
    }

    /// `1/(-N)_n` or `(-1)^n n!`; nonzero for `n <= N`.
    pub fn scale(&self, n: usize) -> ExactScalar {
        match self.direction {
            PolyBasisKind::Positive => pochhammer(&ExactScalar::from_int(-(self.size as i64)), n as u64)
                .recip()
                .expect("(-N)_n is nonzero for n <= N"),
            PolyBasisKind::Negative => ExactScalar::sign_power(n as i64) * factorial(n as u64),
        }
    }

    pub fn basis(&self) -> ScaledMonomialBasis {
        let range = 0..=self.size;
        ScaledMonomialBasis::new(
            range.clone().map(|n| self.exponent(n)).collect(),
            range.map(|n| self.scale(n)).collect(),
        )
        .expect("distinct exponents and nonzero scales")
    }
}

/// `z d - N/2`, `z`, `-z d^2 + N d`.
pub fn bg_generators(big_n: usize) -> [DiffOp; 3] {
    let nn = big_n as i64;
    [
        &DiffOp::int_term(1, 1, 1) + &DiffOp::constant(ExactScalar::ratio(-nn, 2)),
        DiffOp::int_term(1, 1, 0),
        &DiffOp::int_term(-1, 1, 2) + &DiffOp::int_term(nn, 0, 1),
    ]
}

/// Generators on `z^n / (-N)_n`. The truncated `J+` column is column `N`.
pub fn bg_operators(big_n: usize) -> Result<ModelOperators> {
    let spec = HattedBasisSpec::new(big_n, PolyBasisKind::Positive)?;
    Ok(ModelOperators::realize(
        big_n,
        PolyBasisKind::Positive,
        IrrepBasisKind::Plain,
        spec.basis(),
        bg_generators(big_n),
    ))
}

/// Adjoints on `(-1)^n n! z^(-1-n)`. These are the star matrices; the
/// truncated `J+^T` column is column 0.
pub fn bg_adjoint_operators(big_n: usize) -> Result<ModelOperators> {
    let spec = HattedBasisSpec::new(big_n, PolyBasisKind::Negative)?;
    Ok(ModelOperators::realize(
        big_n,
        PolyBasisKind::Negative,
        IrrepBasisKind::Star,
        spec.basis(),
        bg_generators(big_n).map(|op| op.lagrange_adjoint()),
    ))
}

/// `[e^(sign z) 1F1(a; -N; scale z)]_N` as a polynomial.
pub fn exp_times_1f1(sign: i64, a: i64, big_n: usize, scale: i64) -> Result<DensePoly> {
    let f = truncated_1f1(a, big_n, &ExactScalar::from_int(scale))?;
    let e = series_exp(big_n).scale_arg(&ExactScalar::from_int(sign));
    Ok((&e * &f.coeffs).to_poly())
}

fn coefficient_poly(big_n: usize, coeff: impl Fn(usize) -> ExactScalar) -> DensePoly {
    DensePoly::new((0..=big_n).map(coeff).collect())
}

/// `-z d^2 + N d + (z + N - 2k)`.
pub fn bg_eigen_ode(k: usize, big_n: usize) -> DiffOp {
    let nn = big_n as i64;
    let [_, jp, jm] = bg_generators(big_n);
    &(&jp + &jm) + &DiffOp::int_term(nn - 2 * k as i64, 0, 0)
}

/// `-z d^2 - (N + 2) d + (z + N - 2k)`.
pub fn bg_adjoint_eigen_ode(k: usize, big_n: usize) -> DiffOp {
    let nn = big_n as i64;
    let [_, jp, jm] = bg_generators(big_n).map(|op| op.lagrange_adjoint());
    &(&jp + &jm) + &DiffOp::int_term(nn - 2 * k as i64, 0, 0)
}

fn residual_confined(
    identity: &'static str,
    residual: &LaurentPoly,
    allowed: i64,
    k: usize,
    big_n: usize,
) -> Result<()> {
    match residual.terms().find(|(e, _)| *e != allowed) {
        None => Ok(()),
        Some((e, c)) => Err(KrwError::mismatch(
            identity,
            Counterexample::new(
                [
                    ("k", k.to_string()),
                    ("N", big_n.to_string()),
                    ("exponent", e.to_string()),
                ],
                "0",
                c,
            ),
        )),
    }
}

/// `lambda_k(z) = sum_n ((-1)^n / n!) K_n(k) z^n = [e^-z 1F1(-k; -N; 2z)]_N`.
///
/// Checks the sum, the truncated closed form and the matrix eigenvector
/// against each other. The eigen-ODE residual must be a multiple of
/// `z^(N+1)`: that is exactly the `J+` term the truncation removes.
pub fn bg_lambda(k: usize, big_n: usize) -> Result<DensePoly> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    let sum = coefficient_poly(big_n, |n| {
        ExactScalar::sign_power(n as i64) / factorial(n as u64) * table.get(n, k)
    });
    let closed = exp_times_1f1(-1, -(k as i64), big_n, 2)?;
    expect_equal("gen-bg", k_and_n(k, big_n), &sum, &closed)?;

    let ops = bg_operators(big_n)?;
    let pair = solve_eigenvector("eig-bg", &ops.to_rep().x_operator(), k, big_n)?;
    let solved = ops.basis.to_laurent(&pair.vector);
    expect_equal("eig-bg", k_and_n(k, big_n), &sum.to_laurent(), &solved)?;

    let residual = bg_eigen_ode(k, big_n).apply(&sum.to_laurent());
    residual_confined("gen-bg", &residual, big_n as i64 + 1, k, big_n)?;
    Ok(sum)
}

/// `[e^z 1F1(-k; -N; -2z)]_N = sum_n (1/n!) K_n(k) z^n`.
pub fn check_gen_1f1(k: usize, big_n: usize) -> Result<()> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    let sum = coefficient_poly(big_n, |n| table.get(n, k) / factorial(n as u64));
    let closed = exp_times_1f1(1, -(k as i64), big_n, -2)?;
    expect_equal("gen-bg", k_and_n(k, big_n), &sum, &closed)
}

/// `lambda*_k(z) = sum_n ((-1)^n N!/(N-n)!) K_n(k) z^(-1-n)`
/// `= (-1)^(N-k) N! z^(-1-N) [e^z 1F1(k-N; -N; -2z)]_N`.
///
/// Also solves the adjoint eigenproblem on the hatted basis, where the
/// coordinates are `C(N, n) K_n(k)`, and checks the adjoint ODE residual
/// is confined to `z^0`.
pub fn bg_lambda_star(k: usize, big_n: usize) -> Result<LaurentPoly> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let (nn, kk) = (big_n as i64, k as i64);
    let table = krawtchouk_table(big_n)?;
    let n_fact = factorial(big_n as u64);
    let sum = LaurentPoly::from_terms((0..=big_n).map(|n| {
        let c = ExactScalar::sign_power(n as i64) * &n_fact / factorial((big_n - n) as u64);
        (-1 - n as i64, c * table.get(n, k))
    }));
    let prefactor = ExactScalar::sign_power(nn - kk) * &n_fact;
    let closed = exp_times_1f1(1, kk - nn, big_n, -2)?
        .to_laurent()
        .shift(-1 - nn)
        .scale(&prefactor);
    expect_equal("gen-bg-adjoint", k_and_n(k, big_n), &sum, &closed)?;

    let ops = bg_adjoint_operators(big_n)?;
    let pair = solve_eigenvector("eig-bg-adjoint", &ops.to_rep().x_operator(), k, big_n)?;
    let want: Vec<_> = (0..=big_n)
        .map(|n| binomial(big_n as u64, n as i64) * table.get(n, k))
        .collect();
    compare_vectors("eig-bg-adjoint", &pair.vector, &want, k, big_n)?;
    expect_equal(
        "eig-bg-adjoint",
        k_and_n(k, big_n),
        &sum,
        &ops.basis.to_laurent(&pair.vector),
    )?;

    let residual = bg_adjoint_eigen_ode(k, big_n).apply(&sum);
    residual_confined("gen-bg-adjoint", &residual, 0, k, big_n)?;
    Ok(sum)
}

/// `G_kl = res(lambda_k lambda*_l)`.
pub fn bg_biorthogonality(big_n: usize) -> Result<RationalMatrix> {
    check_size(big_n)?;
    let direct: Vec<_> = (0..=big_n)
        .map(|k| bg_lambda(k, big_n).map(|p| p.to_laurent()))
        .collect::<Result<_>>()?;
    let adjoint: Vec<_> = (0..=big_n)
        .map(|k| bg_lambda_star(k, big_n))
        .collect::<Result<_>>()?;
    let dim = big_n + 1;
    Ok(RationalMatrix::from_fn(dim, dim, |k, l| {
        residue_pair(&direct[k], &adjoint[l])
    }))
}

/// The mirror-reflected generating function, in three forms:
///
/// * `(-1)^k [e^-z 1F1(k-N; -N; 2z)]_N = sum_n (1/n!) K_(N-n)(k) z^n`
/// * `[e^-z 1F1(k-N; -N; 2z)]_N = sum_n (1/n!) K_n(k) z^n`
/// * `[e^-z 1F1(k-N; -N; 2z)]_N = [e^z 1F1(-k; -N; -2z)]_N`
pub fn check_mirror_generating(k: usize, big_n: usize) -> Result<()> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    let reflected = exp_times_1f1(-1, k as i64 - big_n as i64, big_n, 2)?;
    let mirrored = coefficient_poly(big_n, |n| table.get(big_n - n, k) / factorial(n as u64));
    let plain = coefficient_poly(big_n, |n| table.get(n, k) / factorial(n as u64));
    let sign = ExactScalar::sign_power(k as i64);
    expect_equal(
        "mirror-gen",
        k_and_n(k, big_n),
        &mirrored,
        &reflected.scale(&sign),
    )?;
    expect_equal("mirror-gen", k_and_n(k, big_n), &plain, &reflected)?;
    let direct = exp_times_1f1(1, -(k as i64), big_n, -2)?;
    expect_equal("mirror-gen", k_and_n(k, big_n), &direct, &reflected)
}

/// `true` iff all three forms of [`check_mirror_generating`] hold.
pub fn mirror_generating_check(k: usize, big_n: usize) -> Result<bool> {
    match check_mirror_generating(k, big_n) {
        Ok(()) => Ok(true),
        Err(KrwError::Mismatch { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2_rep::{build_irrep, build_star_rep};

    fn q(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn raising_on_n1() {
        let ops = bg_operators(1).unwrap();
        assert_eq!(ops.jp.matrix.apply(&[q(1), q(0)]), vec![q(0), q(-1)]);
    }

    #[test]
    fn lowering_kills_constant() {
        let [_, _, jm] = bg_generators(7);
        assert!(jm.apply_monomial(0).is_zero());
    }

    #[test]
    fn single_truncation_on_each_side() {
        for big_n in 1..=8 {
            let pos = bg_operators(big_n).unwrap().truncation_profile();
            assert_eq!((pos.jp.clone(), pos.total()), (vec![big_n], 1));
            let neg = bg_adjoint_operators(big_n).unwrap().truncation_profile();
            assert_eq!((neg.jp.clone(), neg.total()), (vec![0], 1));
        }
    }

    #[test]
    fn matrices_are_plain_and_star() {
        for big_n in 1..=8 {
            assert_eq!(bg_operators(big_n).unwrap().to_rep(), build_irrep(big_n).unwrap());
            assert_eq!(
                bg_adjoint_operators(big_n).unwrap().to_rep(),
                build_star_rep(big_n).unwrap()
            );
        }
    }

    #[test]
    fn relations_on_n3() {
        for rep in [
            bg_operators(3).unwrap().to_rep(),
            bg_adjoint_operators(3).unwrap().to_rep(),
        ] {
            rep.check_commutators().unwrap();
            rep.check_casimir().unwrap();
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(bg_lambda(0, 1).unwrap(), DensePoly::from_ints(&[1, -1]));
        assert_eq!(
            bg_lambda(1, 2).unwrap(),
            DensePoly::new(vec![q(1), q(0), ExactScalar::ratio(-1, 2)])
        );
        for k in 0..=5 {
            check_gen_1f1(k, 5).unwrap();
        }
    }

    #[test]
    fn lambda_star_examples() {
        assert_eq!(
            bg_lambda_star(0, 1).unwrap(),
            LaurentPoly::new(-2, vec![q(-1), q(1)])
        );
        for k in 0..=4 {
            bg_lambda_star(k, 4).unwrap();
        }
        assert!(bg_lambda_star(5, 4).is_err());
    }

    #[test]
    fn biorthogonality() {
        assert_eq!(
            bg_biorthogonality(2).unwrap(),
            RationalMatrix::diagonal(&[q(4), q(2), q(4)])
        );
        assert!(bg_biorthogonality(8).unwrap().is_diagonal());
    }

    #[test]
    fn mirror_examples() {
        assert!(mirror_generating_check(0, 2).unwrap());
        for k in 0..=7 {
            assert!(mirror_generating_check(k, 7).unwrap());
        }
        assert!(mirror_generating_check(8, 7).is_err());
    }
}
