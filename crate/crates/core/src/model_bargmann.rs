//! Bargmann model: first-order differential generators on polynomials of
//! degree at most `N`, and their Lagrange adjoints on
//! `span{ z^-1, ..., z^(-1-N) }`.
//!
//! The adjoint operators do not preserve the negative span; they are only
//! meaningful as `Pi . op . Pi` with `Pi` the projection onto it. Building
//! matrices column by column on the basis performs exactly that projection,
//! and the dropped terms are kept as leaks for inspection.

use serde::Serialize;

use crate::diffop::{DiffOp, Leak, ScaledMonomialBasis};
use crate::error::{check_index, check_size, Counterexample, KrwError, Result};
use crate::hypergeometric::hypergeometric_terms;
use crate::krawtchouk::{krawtchouk_table, lattice_point};
use crate::matrix::RationalMatrix;
use crate::poly::{residue_pair, series_geometric, DensePoly, LaurentPoly, TruncSeries};
use crate::scalar::{binomial, ExactScalar};
use crate::su2_rep::{compare_vectors, solve_eigenvector, IrrepBasisKind, RepMatrices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyBasisKind {
    /// Basis elements proportional to `z^n`, `n = 0..=N`.
    Positive,
    /// Basis elements proportional to `z^(-1-n)`, `n = 0..=N`.
    Negative,
}

/// One generator of a differential model restricted to a finite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpaceOperator {
    pub size: usize,
    pub kind: PolyBasisKind,
    pub op: DiffOp,
    pub matrix: RationalMatrix,
    /// Terms the raw differential operator produced outside the span.
    pub leaks: Vec<Leak>,
}

impl PolySpaceOperator {
    pub fn leaking_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.leaks.iter().map(|l| l.column).collect();
        cols.dedup();
        cols
    }
}

/// `J0`, `J+`, `J-` (or their adjoints) of a model on one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelOperators {
    pub size: usize,
    /// How the matrices sit among the irrep bases.
    pub rep_kind: IrrepBasisKind,
    pub basis: ScaledMonomialBasis,
    pub j0: PolySpaceOperator,
    pub jp: PolySpaceOperator,
    pub jm: PolySpaceOperator,
}

impl ModelOperators {
    pub(crate) fn realize(
        size: usize,
        kind: PolyBasisKind,
        rep_kind: IrrepBasisKind,
        basis: ScaledMonomialBasis,
        ops: [DiffOp; 3],
    ) -> Self {
        let [j0, jp, jm] = ops.map(|op| {
            let bm = basis.matrix_of(&op);
            PolySpaceOperator {
                size,
                kind,
                op,
                matrix: bm.matrix,
                leaks: bm.leaks,
            }
        });
        ModelOperators {
            size,
            rep_kind,
            basis,
            j0,
            jp,
            jm,
        }
    }

    pub fn kind(&self) -> PolyBasisKind {
        self.j0.kind
    }

    /// The matrices as a representation. Negative-basis operators are
    /// adjoints, so their raising and lowering roles are swapped.
    pub fn to_rep(&self) -> RepMatrices {
        RepMatrices {
            size: self.size,
            basis: self.rep_kind,
            j0: self.j0.matrix.clone(),
            jp: self.jp.matrix.clone(),
            jm: self.jm.matrix.clone(),
        }
    }

    /// `(J0, J+, J-)` leaking columns, in that order.
    pub fn truncation_profile(&self) -> TruncationProfile {
        TruncationProfile {
            j0: self.j0.leaking_columns(),
            jp: self.jp.leaking_columns(),
            jm: self.jm.leaking_columns(),
        }
    }
}

/// Which basis columns of each generator needed a term dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationProfile {
    pub j0: Vec<usize>,
    pub jp: Vec<usize>,
    pub jm: Vec<usize>,
}

impl TruncationProfile {
    pub fn total(&self) -> usize {
        self.j0.len() + self.jp.len() + self.jm.len()
    }
}

fn half_n(big_n: usize) -> ExactScalar {
    ExactScalar::ratio(big_n as i64, 2)
}

/// `z d - N/2`, `z^2 d - N z`, `-d`.
pub fn bargmann_generators(big_n: usize) -> [DiffOp; 3] {
    let nn = big_n as i64;
    [
        &DiffOp::int_term(1, 1, 1) + &DiffOp::constant(-half_n(big_n)),
        &DiffOp::int_term(1, 2, 1) + &DiffOp::int_term(-nn, 1, 0),
        DiffOp::int_term(-1, 0, 1),
    ]
}

pub fn positive_basis(big_n: usize) -> ScaledMonomialBasis {
    ScaledMonomialBasis::monomials((0..=big_n as i64).collect())
}

pub fn negative_basis(big_n: usize) -> ScaledMonomialBasis {
    ScaledMonomialBasis::monomials((0..=big_n as i64).map(|n| -1 - n).collect())
}

pub fn bargmann_operators(big_n: usize) -> Result<ModelOperators> {
    check_size(big_n)?;
    Ok(ModelOperators::realize(
        big_n,
        PolyBasisKind::Positive,
        IrrepBasisKind::Plain,
        positive_basis(big_n),
        bargmann_generators(big_n),
    ))
}

/// Lagrange adjoints of the generators, projected onto the negative span.
pub fn bargmann_adjoint_operators(big_n: usize) -> Result<ModelOperators> {
    check_size(big_n)?;
    Ok(ModelOperators::realize(
        big_n,
        PolyBasisKind::Negative,
        IrrepBasisKind::Tilde,
        negative_basis(big_n),
        bargmann_generators(big_n).map(|op| op.lagrange_adjoint()),
    ))
}

pub(crate) fn expect_equal<T: PartialEq + std::fmt::Debug>(
    identity: &'static str,
    inputs: [(&'static str, String); 2],
    want: &T,
    got: &T,
) -> Result<()> {
    if want == got {
        Ok(())
    } else {
        Err(KrwError::mismatch(
            identity,
            Counterexample::new(inputs, format!("{want:?}"), format!("{got:?}")),
        ))
    }
}

pub(crate) fn k_and_n(k: usize, big_n: usize) -> [(&'static str, String); 2] {
    [("k", k.to_string()), ("N", big_n.to_string())]
}

/// `(1 - z)^k (1 + z)^(N-k)`.
pub fn generating_product(k: usize, big_n: usize) -> DensePoly {
    let minus = DensePoly::from_ints(&[1, -1]).pow(k as u32);
    let plus = DensePoly::from_ints(&[1, 1]).pow((big_n - k) as u32);
    &minus * &plus
}

/// `sum_n C(N, n) K_n(k) z^n`.
pub fn generating_sum(k: usize, big_n: usize) -> Result<DensePoly> {
    let table = krawtchouk_table(big_n)?;
    Ok(DensePoly::new(
        (0..=big_n)
            .map(|n| binomial(big_n as u64, n as i64) * table.get(n, k))
            .collect(),
    ))
}

/// `(z^2 - 1) d - N z + (N - 2k)`, which annihilates `lambda_k`.
pub fn bargmann_eigen_ode(k: usize, big_n: usize) -> DiffOp {
    let nn = big_n as i64;
    let ops = [
        DiffOp::int_term(1, 2, 1),
        DiffOp::int_term(-1, 0, 1),
        DiffOp::int_term(-nn, 1, 0),
        DiffOp::int_term(nn - 2 * k as i64, 0, 0),
    ];
    ops.iter().fold(DiffOp::zero(), |acc, op| &acc + op)
}

/// `lambda_k(z) = (1 - z)^k (1 + z)^(N-k)`.
///
/// The product, the coefficient sum `sum_n C(N, n) K_n(k) z^n` and the
/// eigenvector solved from the operator matrices must all coincide, and the
/// eigen-ODE must annihilate the result.
pub fn bargmann_lambda(k: usize, big_n: usize) -> Result<DensePoly> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let product = generating_product(k, big_n);
    let sum = generating_sum(k, big_n)?;
    expect_equal("gen-bargmann", k_and_n(k, big_n), &sum, &product)?;

    let ops = bargmann_operators(big_n)?;
    let pair = solve_eigenvector("eig-bargmann", &ops.to_rep().x_operator(), k, big_n)?;
    let solved = ops.basis.to_laurent(&pair.vector);
    expect_equal("eig-bargmann", k_and_n(k, big_n), &product.to_laurent(), &solved)?;

    let residual = bargmann_eigen_ode(k, big_n).apply(&product.to_laurent());
    expect_equal("gen-bargmann", k_and_n(k, big_n), &LaurentPoly::zero(), &residual)?;
    Ok(product)
}

/// Residual of `-n a_(n-1) + (n - N) a_(n+1) + (N - 2k) a_n` with
/// `a_(-1) = a_(N+1) = 0`.
pub fn adjoint_coefficient_residual(a: &[ExactScalar], n: usize, k: usize) -> ExactScalar {
    let big_n = a.len() as i64 - 1;
    let at = |i: i64| -> ExactScalar {
        if i < 0 || i > big_n {
            ExactScalar::zero()
        } else {
            a[i as usize].clone()
        }
    };
    let ni = n as i64;
    ExactScalar::from_int(-ni) * at(ni - 1)
        + ExactScalar::from_int(ni - big_n) * at(ni + 1)
        + ExactScalar::from_int(big_n - 2 * k as i64) * at(ni)
}

/// `lambda*_k(z) = sum_n K_n(k) z^(-1-n)`, solved from the projected adjoint
/// eigenproblem with leading coefficient 1.
pub fn bargmann_lambda_star(k: usize, big_n: usize) -> Result<LaurentPoly> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let ops = bargmann_adjoint_operators(big_n)?;
    let pair = solve_eigenvector("eig-bargmann-adjoint", &ops.to_rep().x_operator(), k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    compare_vectors("eig-bargmann-adjoint", &pair.vector, &table.column(k), k, big_n)?;
    for n in 0..=big_n {
        let r = adjoint_coefficient_residual(&pair.vector, n, k);
        if !r.is_zero() {
            return Err(KrwError::mismatch(
                "eig-bargmann-adjoint",
                Counterexample::new(lattice_point(n, k, big_n), "0", r),
            ));
        }
    }
    Ok(ops.basis.to_laurent(&pair.vector))
}

/// `G_kl = res(lambda_k lambda*_l)`.
pub fn bargmann_biorthogonality(big_n: usize) -> Result<RationalMatrix> {
    check_size(big_n)?;
    let direct: Vec<_> = (0..=big_n)
        .map(|k| bargmann_lambda(k, big_n).map(|p| p.to_laurent()))
        .collect::<Result<_>>()?;
    let adjoint: Vec<_> = (0..=big_n)
        .map(|k| bargmann_lambda_star(k, big_n))
        .collect::<Result<_>>()?;
    let dim = big_n + 1;
    Ok(RationalMatrix::from_fn(dim, dim, |k, l| {
        residue_pair(&direct[k], &adjoint[l])
    }))
}

/// Expansion of `1/(z - 1) 2F1(1, -k; -N; 2/(1 - z))` in `u = 1/z`, keeping
/// `u^1 ..= u^(N+1)`.
///
/// With `1/(z-1) = u/(1-u)` and `2/(1-z) = -2u/(1-u)`, the terminating sum
/// becomes `sum_j c_j (-2)^j u^(j+1) / (1-u)^(j+1)`, `j = 0..=k`.
pub fn truncated_2f1_form(k: usize, big_n: usize) -> Result<LaurentPoly> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let order = big_n + 1;
    let c = hypergeometric_terms(
        &[ExactScalar::one(), ExactScalar::from_int(-(k as i64))],
        &[ExactScalar::from_int(-(big_n as i64))],
        k,
    )?;
    let geometric = series_geometric(order);
    let mut total = TruncSeries::zero(order);
    let mut denominator = TruncSeries::one(order);
    let mut scale = ExactScalar::one();
    for (j, cj) in c.iter().enumerate() {
        denominator = &denominator * &geometric;
        let shift = TruncSeries::new(
            order,
            (0..=j + 1)
                .map(|i| {
                    if i == j + 1 {
                        ExactScalar::one()
                    } else {
                        ExactScalar::zero()
                    }
                })
                .collect(),
        );
        total = &total + &(&shift * &denominator).scale(&(cj * &scale));
        scale *= &ExactScalar::from_int(-2);
    }
    // u^m -> z^-m; the u^0 coefficient is zero by construction.
    Ok(LaurentPoly::from_terms(
        total
            .coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| (-(m as i64), c.clone())),
    ))
}

/// Checks the truncated `2F1` expansion against [`bargmann_lambda_star`].
pub fn check_truncated_2f1_form(k: usize, big_n: usize) -> Result<()> {
    let form = truncated_2f1_form(k, big_n)?;
    let star = bargmann_lambda_star(k, big_n)?;
    expect_equal("form-2f1", k_and_n(k, big_n), &star, &form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2_rep::{build_irrep, build_star_rep, build_tilde_rep, star_normalization};

    fn q(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn laurent(low: i64, cs: &[i64]) -> LaurentPoly {
        LaurentPoly::new(low, cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn lowering_on_n1() {
        let ops = bargmann_operators(1).unwrap();
        assert_eq!(ops.jm.matrix.apply(&[q(0), q(1)]), vec![q(-1), q(0)]);
        assert_eq!(ops.jm.matrix.apply(&[q(1), q(0)]), vec![q(0), q(0)]);
    }

    #[test]
    fn raising_kills_top_monomial() {
        let [_, jp, _] = bargmann_generators(3);
        assert!(jp.apply_monomial(3).is_zero());
        assert_eq!(bargmann_operators(3).unwrap().truncation_profile().total(), 0);
    }

    #[test]
    fn positive_matrices_equal_irrep() {
        for big_n in 1..=6 {
            assert_eq!(
                bargmann_operators(big_n).unwrap().to_rep(),
                build_irrep(big_n).unwrap()
            );
        }
    }

    #[test]
    fn adjoints_match_hand_forms() {
        let big_n = 5i64;
        let [a0, ap, am] = bargmann_generators(5).map(|op| op.lagrange_adjoint());
        let want0 = &DiffOp::int_term(-1, 1, 1) + &DiffOp::constant(ExactScalar::ratio(-big_n - 2, 2));
        let wantp = &DiffOp::int_term(-1, 2, 1) + &DiffOp::int_term(-(big_n + 2), 1, 0);
        let wantm = DiffOp::int_term(1, 0, 1);
        assert_eq!((a0, ap, am), (want0, wantp, wantm));
    }

    #[test]
    fn adjoint_weight_action() {
        let ops = bargmann_adjoint_operators(2).unwrap();
        assert_eq!(ops.j0.matrix.get(1, 1), &q(0));
        assert_eq!(ops.j0.matrix.get(0, 0), &q(-1));
    }

    #[test]
    fn adjoint_projection_at_both_ends() {
        let ops = bargmann_adjoint_operators(2).unwrap();
        // J+^T z^-1 = (1 - (N + 2)) z^0, projected away
        assert_eq!(ops.jp.leaks.len(), 1);
        assert_eq!(ops.jp.leaks[0].column, 0);
        assert_eq!(ops.jp.leaks[0].exponent, 0);
        assert_eq!(ops.jp.leaks[0].coefficient, q(-3));
        // J-^T z^-1 = -z^-2 stays inside
        assert_eq!(ops.jm.matrix.get(1, 0), &q(-1));
        let profile = ops.truncation_profile();
        assert_eq!(profile.jp, vec![0]);
        assert_eq!(profile.jm, vec![2]);
        assert!(profile.j0.is_empty());
    }

    #[test]
    fn projected_adjoints_match_star_after_rescaling() {
        for big_n in 1..=10 {
            let adj = bargmann_adjoint_operators(big_n).unwrap().to_rep();
            assert_eq!(adj, build_tilde_rep(big_n).unwrap());
            let d = star_normalization(big_n);
            let star = build_star_rep(big_n).unwrap();
            assert_eq!(adj.jp.conjugate_by_diagonal(&d), star.jp);
            assert_eq!(adj.jm.conjugate_by_diagonal(&d), star.jm);
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(bargmann_lambda(0, 1).unwrap(), DensePoly::from_ints(&[1, 1]));
        assert_eq!(bargmann_lambda(1, 1).unwrap(), DensePoly::from_ints(&[1, -1]));
        assert_eq!(bargmann_lambda(1, 2).unwrap(), DensePoly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn lambda_star_examples() {
        assert_eq!(bargmann_lambda_star(0, 1).unwrap(), laurent(-2, &[1, 1]));
        assert_eq!(bargmann_lambda_star(1, 1).unwrap(), laurent(-2, &[-1, 1]));
        let a = bargmann_lambda_star(2, 5).unwrap().window(-6, -1);
        let coeffs: Vec<_> = a.into_iter().rev().collect();
        for n in 0..=5 {
            assert!(adjoint_coefficient_residual(&coeffs, n, 2).is_zero());
        }
    }

    #[test]
    fn biorthogonality() {
        assert_eq!(
            bargmann_biorthogonality(1).unwrap(),
            RationalMatrix::diagonal(&[q(2), q(2)])
        );
        assert_eq!(
            bargmann_biorthogonality(2).unwrap(),
            RationalMatrix::diagonal(&[q(4), q(2), q(4)])
        );
        assert!(bargmann_biorthogonality(10).unwrap().is_diagonal());
    }

    #[test]
    fn form_examples() {
        assert_eq!(truncated_2f1_form(0, 1).unwrap(), laurent(-2, &[1, 1]));
        assert_eq!(truncated_2f1_form(0, 2).unwrap(), laurent(-3, &[1, 1, 1]));
        for k in 0..=4 {
            check_truncated_2f1_form(k, 4).unwrap();
        }
    }
}
