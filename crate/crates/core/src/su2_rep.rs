//! The (N+1)-dimensional su(2) irrep, its transpose on the dual basis, and
//! the eigenproblem of `X = (J+ + J-)/2` and of its transpose.
//!
//! Plain basis `|n>`, `n = 0..=N`:
//! `J0 |n> = (n - N/2) |n>`, `J+ |n> = (n - N) |n+1>`, `J- |n> = -n |n-1>`.
//!
//! The transposed operators act on the dual ("tilde") basis by the literal
//! matrix transpose. The star basis rescales the tilde basis by
//! `n! (N-n)! / N!`, which turns the transposed action back into the plain one
//! with raising and lowering swapped.

use serde::Serialize;

use crate::error::{check_index, check_size, Counterexample, KrwError, Result};
use crate::krawtchouk::{krawtchouk_table, lattice_point};
use crate::matrix::RationalMatrix;
use crate::scalar::{binomial, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IrrepBasisKind {
    Plain,
    Tilde,
    Star,
}

impl IrrepBasisKind {
    /// True for the bases on which the transposed operators act.
    pub fn is_transposed(self) -> bool {
        !matches!(self, IrrepBasisKind::Plain)
    }
}

/// Matrices of `J0`, `J+`, `J-` in one basis.
///
/// For [`IrrepBasisKind::Plain`] these are the generators themselves. For the
/// transposed kinds they are `J0^T`, `J+^T`, `J-^T`; use
/// [`RepMatrices::generators`] for the triple that satisfies the su(2)
/// relations in either case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepMatrices {
    pub size: usize,
    pub basis: IrrepBasisKind,
    pub j0: RationalMatrix,
    pub jp: RationalMatrix,
    pub jm: RationalMatrix,
}

impl RepMatrices {
    pub fn dim(&self) -> usize {
        self.size + 1
    }

    /// `(J0, raising, lowering)`. Transposition swaps the roles of `J+` and `J-`.
    pub fn generators(&self) -> (&RationalMatrix, &RationalMatrix, &RationalMatrix) {
        if self.basis.is_transposed() {
            (&self.j0, &self.jm, &self.jp)
        } else {
            (&self.j0, &self.jp, &self.jm)
        }
    }

    /// `(J+ + J-)/2` in this basis (so `X^T` on the transposed kinds).
    pub fn x_operator(&self) -> RationalMatrix {
        (&self.jp + &self.jm).scale(&ExactScalar::ratio(1, 2))
    }

    /// `[J0, J+] = J+`, `[J0, J-] = -J-`, `[J+, J-] = 2 J0` for the generator triple.
    pub fn check_commutators(&self) -> Result<()> {
        let (j0, raise, lower) = self.generators();
        let checks: [(&'static str, RationalMatrix, RationalMatrix); 3] = [
            ("[J0,J+]", j0.commutator(raise), raise.clone()),
            (
                "[J0,J-]",
                j0.commutator(lower),
                lower.scale(&ExactScalar::from_int(-1)),
            ),
            (
                "[J+,J-]",
                raise.commutator(lower),
                j0.scale(&ExactScalar::from_int(2)),
            ),
        ];
        for (name, got, want) in checks {
            if let Some((r, c)) = got.first_difference(&want) {
                return Err(KrwError::mismatch(
                    "commutators",
                    Counterexample::new(
                        [
                            ("relation", name.to_string()),
                            ("row", r.to_string()),
                            ("col", c.to_string()),
                            ("N", self.size.to_string()),
                        ],
                        want.get(r, c),
                        got.get(r, c),
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Casimir equals `(N/2)(N/2 + 1)` times the identity.
    pub fn check_casimir(&self) -> Result<()> {
        let got = casimir(self);
        let want = RationalMatrix::identity(self.dim()).scale(&casimir_value(self.size));
        match got.first_difference(&want) {
            None => Ok(()),
            Some((r, c)) => Err(KrwError::mismatch(
                "casimir",
                Counterexample::new(
                    [
                        ("row", r.to_string()),
                        ("col", c.to_string()),
                        ("N", self.size.to_string()),
                    ],
                    want.get(r, c),
                    got.get(r, c),
                ),
            )),
        }
    }
}

/// `(N/2)(N/2 + 1)`.
pub fn casimir_value(big_n: usize) -> ExactScalar {
    let half = ExactScalar::ratio(big_n as i64, 2);
    &half * &(&half + &ExactScalar::one())
}

fn weight_diagonal(big_n: usize) -> RationalMatrix {
    RationalMatrix::diagonal(
        &(0..=big_n)
            .map(|n| ExactScalar::ratio(2 * n as i64 - big_n as i64, 2))
            .collect::<Vec<_>>(),
    )
}

/// The plain-basis matrices; column `n` is the image of `|n>`.
pub fn build_irrep(big_n: usize) -> Result<RepMatrices> {
    check_size(big_n)?;
    let dim = big_n + 1;
    let mut jp = RationalMatrix::zeros(dim, dim);
    let mut jm = RationalMatrix::zeros(dim, dim);
    for n in 0..dim {
        if n < big_n {
            jp.set(n + 1, n, ExactScalar::from_int(n as i64 - big_n as i64));
        }
        if n > 0 {
            jm.set(n - 1, n, ExactScalar::from_int(-(n as i64)));
        }
    }
    Ok(RepMatrices {
        size: big_n,
        basis: IrrepBasisKind::Plain,
        j0: weight_diagonal(big_n),
        jp,
        jm,
    })
}

/// Literal transposes of the plain matrices, acting on the dual basis.
pub fn build_tilde_rep(big_n: usize) -> Result<RepMatrices> {
    let plain = build_irrep(big_n)?;
    Ok(RepMatrices {
        size: big_n,
        basis: IrrepBasisKind::Tilde,
        j0: plain.j0.transpose(),
        jp: plain.jp.transpose(),
        jm: plain.jm.transpose(),
    })
}

/// Transposed operators on the star basis, from their action:
/// `J0^T |n>* = (n - N/2) |n>*`, `J+^T |n>* = -n |n-1>*`, `J-^T |n>* = (n - N) |n+1>*`.
pub fn build_star_rep(big_n: usize) -> Result<RepMatrices> {
    check_size(big_n)?;
    let dim = big_n + 1;
    let mut jp = RationalMatrix::zeros(dim, dim);
    let mut jm = RationalMatrix::zeros(dim, dim);
    for n in 0..dim {
        if n > 0 {
            jp.set(n - 1, n, ExactScalar::from_int(-(n as i64)));
        }
        if n < big_n {
            jm.set(n + 1, n, ExactScalar::from_int(n as i64 - big_n as i64));
        }
    }
    Ok(RepMatrices {
        size: big_n,
        basis: IrrepBasisKind::Star,
        j0: weight_diagonal(big_n),
        jp,
        jm,
    })
}

/// `n! (N-n)! / N!`, the star-basis rescaling of the dual basis.
pub fn star_normalization(big_n: usize) -> Vec<ExactScalar> {
    (0..=big_n)
        .map(|n| {
            binomial(big_n as u64, n as i64)
                .recip()
                .expect("binomial is nonzero on the lattice")
        })
        .collect()
}

/// Star-basis matrices obtained by changing basis in the tilde matrices:
/// with `|n>* = d_n |n~>`, a star-coordinate matrix is `D^-1 M D`.
pub fn star_from_tilde(big_n: usize) -> Result<RepMatrices> {
    let tilde = build_tilde_rep(big_n)?;
    let d = star_normalization(big_n);
    Ok(RepMatrices {
        size: big_n,
        basis: IrrepBasisKind::Star,
        j0: tilde.j0.conjugate_by_diagonal(&d),
        jp: tilde.jp.conjugate_by_diagonal(&d),
        jm: tilde.jm.conjugate_by_diagonal(&d),
    })
}

/// `J0^2 - J0 + J+ J-` for the generator triple.
pub fn casimir(rep: &RepMatrices) -> RationalMatrix {
    let (j0, raise, lower) = rep.generators();
    let j0sq = j0 * j0;
    &(&j0sq - j0) + &(raise * lower)
}

/// An eigenvector labelled by `k`, with eigenvalue `k - N/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigPair {
    pub k: usize,
    pub value: ExactScalar,
    pub vector: Vec<ExactScalar>,
}

pub fn spectral_value(k: usize, big_n: usize) -> ExactScalar {
    ExactScalar::ratio(2 * k as i64 - big_n as i64, 2)
}

/// Solves `x v = mu v` from the matrix with `v[0] = 1` and confirms the
/// full residual is zero.
pub(crate) fn solve_eigenvector(
    identity: &'static str,
    x: &RationalMatrix,
    k: usize,
    big_n: usize,
) -> Result<EigPair> {
    let value = spectral_value(k, big_n);
    let vector = x.tridiagonal_eigenvector(&value)?;
    let image = x.apply(&vector);
    for (n, (got, v)) in image.iter().zip(&vector).enumerate() {
        let want = &value * v;
        if got != &want {
            return Err(KrwError::mismatch(
                identity,
                Counterexample::new(lattice_point(n, k, big_n), want, got),
            ));
        }
    }
    Ok(EigPair { k, value, vector })
}

pub(crate) fn compare_vectors(
    identity: &'static str,
    got: &[ExactScalar],
    want: &[ExactScalar],
    k: usize,
    big_n: usize,
) -> Result<()> {
    for (n, (g, w)) in got.iter().zip(want).enumerate() {
        if g != w {
            return Err(KrwError::mismatch(
                identity,
                Counterexample::new(lattice_point(n, k, big_n), w, g),
            ));
        }
    }
    if got.len() != want.len() {
        return Err(KrwError::mismatch(
            identity,
            Counterexample::new(
                [("k", k.to_string()), ("N", big_n.to_string())],
                format!("length {}", want.len()),
                format!("length {}", got.len()),
            ),
        ));
    }
    Ok(())
}

/// `C_n(k) = C(N, n) K_n(k)`.
pub fn closed_form_coefficients(k: usize, big_n: usize) -> Result<Vec<ExactScalar>> {
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    Ok((0..=big_n)
        .map(|n| binomial(big_n as u64, n as i64) * table.get(n, k))
        .collect())
}

/// Eigenvector of `X` in the plain basis, generated from the matrix and
/// checked against `C_n(k) = C(N, n) K_n(k)`.
pub fn x_eigenvector(k: usize, big_n: usize) -> Result<EigPair> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let x = build_irrep(big_n)?.x_operator();
    let pair = solve_eigenvector("eig-rep", &x, k, big_n)?;
    compare_vectors(
        "eig-rep",
        &pair.vector,
        &closed_form_coefficients(k, big_n)?,
        k,
        big_n,
    )?;
    Ok(pair)
}

/// Eigenvector of `X^T` in tilde coordinates, whose entries are `K_n(k)`.
///
/// Also checks that the star-coordinate eigenvector of `X^T` carries the
/// same coefficients `C(N, n) K_n(k)` as the plain problem.
pub fn x_adjoint_eigenvector(k: usize, big_n: usize) -> Result<EigPair> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    let xt = build_tilde_rep(big_n)?.x_operator();
    let pair = solve_eigenvector("eig-rep-adjoint", &xt, k, big_n)?;
    compare_vectors("eig-rep-adjoint", &pair.vector, &table.column(k), k, big_n)?;

    let xs = build_star_rep(big_n)?.x_operator();
    let star = solve_eigenvector("eig-rep-adjoint", &xs, k, big_n)?;
    compare_vectors(
        "eig-rep-adjoint",
        &star.vector,
        &closed_form_coefficients(k, big_n)?,
        k,
        big_n,
    )?;
    Ok(pair)
}

/// `G_kl = <lambda*_k | lambda_l>`, pairing tilde coordinates of the adjoint
/// eigenvectors with plain coordinates of the direct ones.
pub fn biorthogonality_gram(big_n: usize) -> Result<RationalMatrix> {
    check_size(big_n)?;
    let adjoint: Vec<_> = (0..=big_n)
        .map(|k| x_adjoint_eigenvector(k, big_n).map(|p| p.vector))
        .collect::<Result<_>>()?;
    let direct: Vec<_> = (0..=big_n)
        .map(|k| x_eigenvector(k, big_n).map(|p| p.vector))
        .collect::<Result<_>>()?;
    let dim = big_n + 1;
    Ok(RationalMatrix::from_fn(dim, dim, |k, l| {
        adjoint[k].iter().zip(&direct[l]).map(|(a, b)| a * b).sum()
    }))
}

/// `X` has the spectrum of `J0`: it has `N + 1` linearly independent
/// eigenvectors with eigenvalues `k - N/2`.
pub fn check_x_spectrum(big_n: usize) -> Result<()> {
    let vectors: Vec<Vec<ExactScalar>> = (0..=big_n)
        .map(|k| x_eigenvector(k, big_n).map(|p| p.vector))
        .collect::<Result<_>>()?;
    let rank = RationalMatrix::from_rows(vectors)?.rank();
    if rank != big_n + 1 {
        return Err(KrwError::mismatch(
            "x-spectrum",
            Counterexample::new([("N", big_n.to_string())], big_n + 1, rank),
        ));
    }
    Ok(())
}

/// Which coefficient multiplies `C_(n-1)` in the coefficient recurrence
/// `(N - 2k) C_n = (n + 1) C_(n+1) + c C_(n-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LowerCoefficient {
    /// `N + 1 - n`, as read off the matrix of `X`.
    DegreeIndexed,
    /// `N + 1 - k`.
    SpectralIndexed,
}

impl LowerCoefficient {
    pub fn label(self) -> &'static str {
        match self {
            LowerCoefficient::DegreeIndexed => "(N+1-n)",
            LowerCoefficient::SpectralIndexed => "(N+1-k)",
        }
    }
}

/// `(N - 2k) C_n - (n + 1) C_(n+1) - c C_(n-1)` evaluated on the closed-form
/// coefficients, with `C_(-1) = C_(N+1) = 0`.
pub fn coefficient_recurrence_residual(
    variant: LowerCoefficient,
    n: usize,
    k: usize,
    big_n: usize,
) -> Result<ExactScalar> {
    check_index("n", n, big_n)?;
    let c = closed_form_coefficients(k, big_n)?;
    let at = |i: i64| -> ExactScalar {
        if i < 0 || i as usize > big_n {
            ExactScalar::zero()
        } else {
            c[i as usize].clone()
        }
    };
    let (ni, ki, nn) = (n as i64, k as i64, big_n as i64);
    let lower = match variant {
        LowerCoefficient::DegreeIndexed => nn + 1 - ni,
        LowerCoefficient::SpectralIndexed => nn + 1 - ki,
    };
    Ok(ExactScalar::from_int(nn - 2 * ki) * at(ni)
        - ExactScalar::from_int(ni + 1) * at(ni + 1)
        - ExactScalar::from_int(lower) * at(ni - 1))
}

/// First lattice point (scanning `N`, then `k`, then `n`) where the given
/// recurrence variant fails on the true coefficients, for `N <= max_n`.
pub fn first_recurrence_failure(variant: LowerCoefficient, max_n: usize) -> Result<Option<Counterexample>> {
    for big_n in 1..=max_n {
        for k in 0..=big_n {
            for n in 0..=big_n {
                let r = coefficient_recurrence_residual(variant, n, k, big_n)?;
                if !r.is_zero() {
                    return Ok(Some(Counterexample::new(lattice_point(n, k, big_n), "0", r)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn half(n: i64) -> ExactScalar {
        ExactScalar::ratio(n, 2)
    }

    #[test]
    fn irrep_n1() {
        let r = build_irrep(1).unwrap();
        assert_eq!(r.j0, RationalMatrix::diagonal(&[half(-1), half(1)]));
        assert_eq!(r.jp.apply(&[q(1), q(0)]), vec![q(0), q(-1)]);
        assert_eq!(r.jp.apply(&[q(0), q(1)]), vec![q(0), q(0)]);
        assert_eq!(r.jm.apply(&[q(0), q(1)]), vec![q(-1), q(0)]);
    }

    #[test]
    fn extremal_columns_vanish() {
        let r = build_irrep(5).unwrap();
        assert!(r.jp.column(5).iter().all(ExactScalar::is_zero));
        assert!(r.jm.column(0).iter().all(ExactScalar::is_zero));
    }

    #[test]
    fn commutators_hold_n4() {
        let r = build_irrep(4).unwrap();
        r.check_commutators().unwrap();
        assert!((&r.jp.commutator(&r.jm) - &r.j0.scale(&q(2))).is_zero());
    }

    #[test]
    fn casimir_values() {
        let c1 = casimir(&build_irrep(1).unwrap());
        assert_eq!(c1, RationalMatrix::identity(2).scale(&ExactScalar::ratio(3, 4)));
        let c2 = casimir(&build_irrep(2).unwrap());
        assert_eq!(c2, RationalMatrix::identity(3).scale(&q(2)));
        let c10 = casimir(&build_irrep(10).unwrap());
        assert_eq!(c10, RationalMatrix::identity(11).scale(&q(30)));
        let c3 = casimir(&build_star_rep(3).unwrap());
        assert_eq!(c3, RationalMatrix::identity(4).scale(&ExactScalar::ratio(15, 4)));
    }

    #[test]
    fn star_n1_action() {
        let s = build_star_rep(1).unwrap();
        assert_eq!(s.jp.apply(&[q(0), q(1)]), vec![q(-1), q(0)]);
        assert_eq!(s.jp.apply(&[q(1), q(0)]), vec![q(0), q(0)]);
    }

    #[test]
    fn star_matches_rescaled_transpose() {
        for big_n in 1..=8 {
            assert_eq!(star_from_tilde(big_n).unwrap(), build_star_rep(big_n).unwrap());
        }
    }

    #[test]
    fn star_generators_equal_plain_generators() {
        let plain = build_irrep(6).unwrap();
        let star = build_star_rep(6).unwrap();
        assert_eq!(plain.generators(), star.generators());
    }

    #[test]
    fn all_bases_satisfy_relations() {
        for big_n in 1..=12 {
            for rep in [build_irrep(big_n), build_tilde_rep(big_n), build_star_rep(big_n)] {
                let rep = rep.unwrap();
                rep.check_commutators().unwrap();
                rep.check_casimir().unwrap();
            }
        }
    }

    #[test]
    fn raw_transposes_fail_without_role_swap() {
        // the transposed J+ is a lowering operator, so [J0^T, J+^T] = -J+^T
        let t = build_tilde_rep(3).unwrap();
        assert_eq!(t.j0.commutator(&t.jp), t.jp.scale(&q(-1)));
    }

    #[test]
    fn eigenvector_examples() {
        let p = x_eigenvector(0, 1).unwrap();
        assert_eq!((p.value, p.vector), (half(-1), vec![q(1), q(1)]));
        let p = x_eigenvector(1, 1).unwrap();
        assert_eq!((p.value, p.vector), (half(1), vec![q(1), q(-1)]));
        let p = x_eigenvector(1, 2).unwrap();
        assert_eq!((p.value, p.vector), (q(0), vec![q(1), q(0), q(-1)]));
        assert!(matches!(x_eigenvector(3, 2), Err(KrwError::OutOfRange { .. })));
    }

    #[test]
    fn adjoint_eigenvector_examples() {
        assert_eq!(x_adjoint_eigenvector(0, 1).unwrap().vector, vec![q(1), q(1)]);
        assert_eq!(
            x_adjoint_eigenvector(2, 2).unwrap().vector,
            vec![q(1), q(-1), q(1)]
        );
        for k in 0..=5 {
            x_adjoint_eigenvector(k, 5).unwrap();
        }
    }

    #[test]
    fn eigenvectors_from_matrix_match_closed_form() {
        for big_n in 1..=20 {
            for k in 0..=big_n {
                x_eigenvector(k, big_n).unwrap();
            }
        }
    }

    #[test]
    fn biorthogonality_examples() {
        assert_eq!(
            biorthogonality_gram(2).unwrap(),
            RationalMatrix::diagonal(&[q(4), q(2), q(4)])
        );
        assert!(biorthogonality_gram(10).unwrap().is_diagonal());
        let g6 = biorthogonality_gram(6).unwrap();
        assert_eq!(g6, crate::krawtchouk::orthogonality_gram(6).unwrap());
    }

    #[test]
    fn x_and_j0_share_spectrum() {
        for big_n in 1..=10 {
            check_x_spectrum(big_n).unwrap();
        }
    }

    #[test]
    fn degree_indexed_recurrence_holds() {
        assert!(first_recurrence_failure(LowerCoefficient::DegreeIndexed, 15)
            .unwrap()
            .is_none());
    }

    #[test]
    fn spectral_indexed_recurrence_fails() {
        // N = 1, k = 0: C = (1, 1); row n = 1 gives 1*1 - 2*0 - 2*1 = -1
        let cx = first_recurrence_failure(LowerCoefficient::SpectralIndexed, 5)
            .unwrap()
            .unwrap();
        assert_eq!(cx.inputs["N"], "1");
        assert_eq!(cx.inputs["k"], "0");
        assert_eq!(cx.inputs["n"], "1");
        assert_eq!(cx.actual, "-1");
        // at the hand-worked point N = 2, k = 0, n = 1 the residual is -1 as well
        assert_eq!(
            coefficient_recurrence_residual(LowerCoefficient::SpectralIndexed, 1, 0, 2).unwrap(),
            q(-1)
        );
        assert_eq!(
            coefficient_recurrence_residual(LowerCoefficient::DegreeIndexed, 1, 0, 2).unwrap(),
            q(0)
        );
    }
}
