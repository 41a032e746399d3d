//! Finite-difference model on grid functions `f(s)`, `s = 0..=N`.
//!
//! With shifts `T+- f(s) = f(s +- 1)` the generators are
//! `J0 = s - N/2`, `J+ = -(N - s + 1) T-`, `J- = -(s + 1) T+`.
//! Shifts that would read outside `0..=N` contribute nothing; the wall
//! coefficients vanish there anyway.

use serde::Serialize;

use crate::error::{check_index, check_size, Counterexample, KrwError, Result};
use crate::krawtchouk::{krawtchouk_table, lattice_point};
use crate::matrix::RationalMatrix;
use crate::scalar::{binomial, ExactScalar};
use crate::su2_rep::{compare_vectors, solve_eigenvector, IrrepBasisKind, RepMatrices};

/// Values of a function on the lattice `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridFunction {
    pub size: usize,
    pub values: Vec<ExactScalar>,
}

impl GridFunction {
    pub fn new(size: usize, values: Vec<ExactScalar>) -> Result<Self> {
        if values.len() != size + 1 {
            return Err(KrwError::InvalidParameter(format!(
                "grid function needs {} values, got {}",
                size + 1,
                values.len()
            )));
        }
        Ok(GridFunction { size, values })
    }

    pub fn at(&self, s: usize) -> &ExactScalar {
        &self.values[s]
    }

    /// `f(s)` with zero outside the lattice.
    fn at_signed(&self, s: i64) -> ExactScalar {
        if s < 0 || s as usize > self.size {
            ExactScalar::zero()
        } else {
            self.values[s as usize].clone()
        }
    }
}

/// Matrix of `c(s) T_shift`: `(op f)(s) = c(s) f(s + shift)`.
fn shift_operator(big_n: usize, shift: i64, coeff: impl Fn(i64) -> i64) -> RationalMatrix {
    let dim = big_n + 1;
    let mut m = RationalMatrix::zeros(dim, dim);
    for s in 0..dim as i64 {
        let t = s + shift;
        if (0..dim as i64).contains(&t) {
            m.set(s as usize, t as usize, ExactScalar::from_int(coeff(s)));
        }
    }
    m
}

/// The generators as matrices acting on grid values.
pub fn fd_operators(big_n: usize) -> Result<RepMatrices> {
    check_size(big_n)?;
    let nn = big_n as i64;
    let j0 = RationalMatrix::diagonal(
        &(0..=nn)
            .map(|s| ExactScalar::ratio(2 * s - nn, 2))
            .collect::<Vec<_>>(),
    );
    Ok(RepMatrices {
        size: big_n,
        basis: IrrepBasisKind::Plain,
        j0,
        jp: shift_operator(big_n, -1, |s| -(nn - s + 1)),
        jm: shift_operator(big_n, 1, |s| -(s + 1)),
    })
}

/// Literal transposes of [`fd_operators`]; as difference operators they are
/// `J0^T = s - N/2`, `J+^T = -(N - s) T+`, `J-^T = -s T-`.
pub fn fd_adjoint_operators(big_n: usize) -> Result<RepMatrices> {
    let ops = fd_operators(big_n)?;
    Ok(RepMatrices {
        size: big_n,
        basis: IrrepBasisKind::Tilde,
        j0: ops.j0.transpose(),
        jp: ops.jp.transpose(),
        jm: ops.jm.transpose(),
    })
}

/// `lambda_k(s) = C(N, s) K_k(s)`, solved from the difference eigenproblem.
pub fn fd_lambda(k: usize, big_n: usize) -> Result<GridFunction> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    let x = fd_operators(big_n)?.x_operator();
    let pair = solve_eigenvector("eig-fd", &x, k, big_n)?;
    let closed: Vec<_> = (0..=big_n)
        .map(|s| binomial(big_n as u64, s as i64) * table.get(k, s))
        .collect();
    compare_vectors("eig-fd", &pair.vector, &closed, k, big_n)?;
    GridFunction::new(big_n, pair.vector)
}

/// `lambda*_k(s) = K_k(s)`, solved from the transposed-matrix eigenproblem.
pub fn fd_lambda_star(k: usize, big_n: usize) -> Result<GridFunction> {
    check_size(big_n)?;
    check_index("k", k, big_n)?;
    let table = krawtchouk_table(big_n)?;
    let xt = fd_adjoint_operators(big_n)?.x_operator();
    let pair = solve_eigenvector("eig-fd-adjoint", &xt, k, big_n)?;
    compare_vectors("eig-fd-adjoint", &pair.vector, table.row(k), k, big_n)?;
    GridFunction::new(big_n, pair.vector)
}

/// `G_kl = sum_s lambda*_k(s) lambda_l(s)`.
pub fn fd_biorthogonality(big_n: usize) -> Result<RationalMatrix> {
    check_size(big_n)?;
    let star: Vec<_> = (0..=big_n)
        .map(|k| fd_lambda_star(k, big_n))
        .collect::<Result<_>>()?;
    let direct: Vec<_> = (0..=big_n).map(|k| fd_lambda(k, big_n)).collect::<Result<_>>()?;
    let dim = big_n + 1;
    Ok(RationalMatrix::from_fn(dim, dim, |k, l| {
        star[k]
            .values
            .iter()
            .zip(&direct[l].values)
            .map(|(a, b)| a * b)
            .sum()
    }))
}

/// The two readings of the adjoint difference equation
/// `a(s) f(s+1) + s f(s-1) = (N - 2k) f(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdjointDifferenceForm {
    /// `a(s) = N - s`, from transposing the shift matrices.
    FromTranspose,
    /// `a(s) = N - 2s`.
    DoubledShift,
}

impl AdjointDifferenceForm {
    pub fn label(self) -> &'static str {
        match self {
            AdjointDifferenceForm::FromTranspose => "(N-s)",
            AdjointDifferenceForm::DoubledShift => "(N-2s)",
        }
    }
}

/// `a(s) f(s+1) + s f(s-1) - (N - 2k) f(s)` for a grid function `f`.
pub fn adjoint_difference_residual(
    form: AdjointDifferenceForm,
    f: &GridFunction,
    k: usize,
    s: usize,
) -> ExactScalar {
    let (nn, si, ki) = (f.size as i64, s as i64, k as i64);
    let a = match form {
        AdjointDifferenceForm::FromTranspose => nn - si,
        AdjointDifferenceForm::DoubledShift => nn - 2 * si,
    };
    ExactScalar::from_int(a) * f.at_signed(si + 1) + ExactScalar::from_int(si) * f.at_signed(si - 1)
        - ExactScalar::from_int(nn - 2 * ki) * f.at(s)
}

/// First `(N, k, s)` with `N <= max_n` where `lambda*_k` violates the given form.
pub fn first_difference_failure(form: AdjointDifferenceForm, max_n: usize) -> Result<Option<Counterexample>> {
    for big_n in 1..=max_n {
        for k in 0..=big_n {
            let f = fd_lambda_star(k, big_n)?;
            for s in 0..=big_n {
                let r = adjoint_difference_residual(form, &f, k, s);
                if !r.is_zero() {
                    let [_, kk, nn] = lattice_point(s, k, big_n);
                    return Ok(Some(Counterexample::new([("s", s.to_string()), kk, nn], "0", r)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2_rep::build_irrep;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    fn grid(v: &[i64]) -> Vec<ExactScalar> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn n1_weight_operator() {
        let ops = fd_operators(1).unwrap();
        assert_eq!(
            ops.j0,
            RationalMatrix::diagonal(&[ExactScalar::ratio(-1, 2), ExactScalar::ratio(1, 2)])
        );
    }

    #[test]
    fn relations_hold() {
        for big_n in 1..=10 {
            let ops = fd_operators(big_n).unwrap();
            ops.check_commutators().unwrap();
            ops.check_casimir().unwrap();
            let adj = fd_adjoint_operators(big_n).unwrap();
            adj.check_commutators().unwrap();
            adj.check_casimir().unwrap();
        }
    }

    #[test]
    fn delta_functions_are_weight_vectors() {
        let ops = fd_operators(4).unwrap();
        for n in 0..=4 {
            let mut e = vec![q(0); 5];
            e[n] = q(1);
            let want: Vec<_> = e
                .iter()
                .map(|x| x * &ExactScalar::ratio(2 * n as i64 - 4, 2))
                .collect();
            assert_eq!(ops.j0.apply(&e), want);
        }
    }

    #[test]
    fn same_matrices_as_irrep() {
        for big_n in 1..=8 {
            assert_eq!(fd_operators(big_n).unwrap(), build_irrep(big_n).unwrap());
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(fd_lambda(0, 1).unwrap().values, grid(&[1, 1]));
        assert_eq!(fd_lambda(1, 2).unwrap().values, grid(&[1, 0, -1]));
        for k in 0..=6 {
            fd_lambda(k, 6).unwrap();
        }
    }

    #[test]
    fn lambda_star_examples() {
        assert_eq!(fd_lambda_star(2, 2).unwrap().values, grid(&[1, -1, 1]));
        assert_eq!(fd_lambda_star(1, 1).unwrap().values, grid(&[1, -1]));
        assert!(fd_lambda_star(3, 2).is_err());
    }

    #[test]
    fn biorthogonality() {
        assert_eq!(
            fd_biorthogonality(2).unwrap(),
            RationalMatrix::diagonal(&[q(4), q(2), q(4)])
        );
        let g5 = fd_biorthogonality(5).unwrap();
        assert!(g5.is_diagonal());
        let g12 = fd_biorthogonality(12).unwrap();
        assert!(g12.is_diagonal());
        assert_eq!(g12.get(0, 0), &q(1 << 12));
    }

    #[test]
    fn transpose_form_of_adjoint_equation_holds() {
        assert!(first_difference_failure(AdjointDifferenceForm::FromTranspose, 12)
            .unwrap()
            .is_none());
    }

    #[test]
    fn doubled_shift_form_fails() {
        // N = 2, k = 0, lambda* = (1, 1, 1): at s = 1 the left side is 0 + 1 = 1, the right 2
        let f = fd_lambda_star(0, 2).unwrap();
        assert_eq!(
            adjoint_difference_residual(AdjointDifferenceForm::DoubledShift, &f, 0, 1),
            q(-1)
        );
        let cx = first_difference_failure(AdjointDifferenceForm::DoubledShift, 5)
            .unwrap()
            .unwrap();
        assert_eq!(
            cx.actual,
            adjoint_difference_residual(
                AdjointDifferenceForm::DoubledShift,
                &fd_lambda_star(cx.inputs["k"].parse().unwrap(), cx.inputs["N"].parse().unwrap()).unwrap(),
                cx.inputs["k"].parse().unwrap(),
                cx.inputs["s"].parse().unwrap(),
            )
            .to_string()
        );
    }

    #[test]
    fn grid_function_length_checked() {
        assert!(GridFunction::new(2, grid(&[1, 2])).is_err());
    }
}
