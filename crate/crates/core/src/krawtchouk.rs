//! Symmetric (p = 1/2) Krawtchouk polynomials on the lattice `0..=N`.
//!
//! `K_n(k)` is the terminating sum
//! `sum_j (-n)_j (-k)_j / ((-N)_j j!) 2^j`, `j = 0..=min(n, k)`,
//! which never reaches the pole of `(-N)_j` while `n, k <= N`.

use serde::Serialize;

use crate::error::{check_index, check_size, Counterexample, KrwError, Result};
use crate::hypergeometric::hypergeometric_sum;
use crate::matrix::RationalMatrix;
use crate::scalar::{binomial, factorial, pochhammer, ExactScalar};

/// The lattice size `N >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KrawtchoukParams {
    n: usize,
}

impl KrawtchoukParams {
    pub fn new(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(KrawtchoukParams { n })
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// `K_n(k; 1/2, N)` by direct summation.
pub fn krawtchouk_eval(n: usize, k: usize, big_n: usize) -> Result<ExactScalar> {
    check_index("n", n, big_n)?;
    check_index("k", k, big_n)?;
    let upper = [
        ExactScalar::from_int(-(n as i64)),
        ExactScalar::from_int(-(k as i64)),
    ];
    let lower = [ExactScalar::from_int(-(big_n as i64))];
    hypergeometric_sum(&upper, &lower, n.min(k), &ExactScalar::from_int(2))
}

/// All values `K_n(k)` for `0 <= n, k <= N`; row `n`, column `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrawtchoukTable {
    size: usize,
    values: RationalMatrix,
}

impl KrawtchoukTable {
    /// Builds the table from `K_0 = 1`, `K_1(k) = 1 - 2k/N` and the
    /// three-term recurrence `(N - 2k) K_n = (N - n) K_(n+1) + n K_(n-1)`.
    pub fn build(big_n: usize) -> Result<Self> {
        check_size(big_n)?;
        let dim = big_n + 1;
        let mut values = RationalMatrix::zeros(dim, dim);
        for k in 0..dim {
            let centre = ExactScalar::from_int(big_n as i64 - 2 * k as i64);
            let mut prev = ExactScalar::zero();
            let mut cur = ExactScalar::one();
            values.set(0, k, cur.clone());
            for n in 0..big_n {
                let lower = ExactScalar::from_int(n as i64);
                let next = (&centre * &cur - &lower * &prev) / ExactScalar::from_int((big_n - n) as i64);
                values.set(n + 1, k, next.clone());
                prev = cur;
                cur = next;
            }
        }
        Ok(KrawtchoukTable { size: big_n, values })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `K_n(k)`; panics when `n` or `k` exceeds `N`.
    pub fn get(&self, n: usize, k: usize) -> &ExactScalar {
        self.values.get(n, k)
    }

    pub fn values(&self) -> &RationalMatrix {
        &self.values
    }

    /// The degree-`n` polynomial sampled on the lattice.
    pub fn row(&self, n: usize) -> &[ExactScalar] {
        self.values.row(n)
    }

    /// All degrees at the lattice point `k`.
    pub fn column(&self, k: usize) -> Vec<ExactScalar> {
        self.values.column(k)
    }

    /// First entry where the recurrence table differs from direct summation.
    pub fn check_against_direct_sum(&self) -> Result<()> {
        let big_n = self.size;
        for n in 0..=big_n {
            for k in 0..=big_n {
                let direct = krawtchouk_eval(n, k, big_n)?;
                if &direct != self.get(n, k) {
                    return Err(KrwError::mismatch(
                        "recurrence-vs-sum",
                        Counterexample::new(lattice_point(n, k, big_n), direct, self.get(n, k)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `K_n(k) = K_k(n)` over the whole lattice.
    pub fn check_duality(&self) -> Result<()> {
        match self.values.first_difference(&self.values.transpose()) {
            None => Ok(()),
            Some((n, k)) => Err(KrwError::mismatch(
                "duality",
                Counterexample::new(lattice_point(n, k, self.size), self.get(k, n), self.get(n, k)),
            )),
        }
    }
}

pub fn krawtchouk_table(big_n: usize) -> Result<KrawtchoukTable> {
    KrawtchoukTable::build(big_n)
}

pub(crate) fn lattice_point(n: usize, k: usize, big_n: usize) -> [(&'static str, String); 3] {
    [
        ("n", n.to_string()),
        ("k", k.to_string()),
        ("N", big_n.to_string()),
    ]
}

/// Monic normalization `p_n(k) = (1/2)^n (-N)_n K_n(k)`.
///
/// On the lattice `p_(N+1)` vanishes identically because `(-N)_(N+1) = 0`.
pub fn normalized_pn(n: usize, k: usize, big_n: usize) -> Result<ExactScalar> {
    check_index("k", k, big_n)?;
    if n == big_n + 1 {
        return Ok(ExactScalar::zero());
    }
    let kn = krawtchouk_eval(n, k, big_n)?;
    let factor = pochhammer(&ExactScalar::from_int(-(big_n as i64)), n as u64)
        / ExactScalar::from_int(2).powi(n as i32);
    Ok(factor * kn)
}

/// Residual of `k p_n = p_(n+1) + (N/2) p_n + n (N + 1 - n)/4 p_(n-1)`.
pub fn normalized_recurrence_residual(n: usize, k: usize, big_n: usize) -> Result<ExactScalar> {
    check_index("n", n, big_n)?;
    let p = normalized_pn(n, k, big_n)?;
    let p_next = normalized_pn(n + 1, k, big_n)?;
    let p_prev = if n == 0 {
        ExactScalar::zero()
    } else {
        normalized_pn(n - 1, k, big_n)?
    };
    let kq = ExactScalar::from_int(k as i64);
    let half_n = ExactScalar::ratio(big_n as i64, 2);
    let lower = ExactScalar::ratio(n as i64 * (big_n as i64 + 1 - n as i64), 4);
    Ok(&kq * &p - p_next - half_n * &p - lower * p_prev)
}

/// Closed-form squared norm `2^N (-1)^n n! / (-N)_n`.
pub fn squared_norm(n: usize, big_n: usize) -> ExactScalar {
    ExactScalar::from_int(2).powi(big_n as i32) * ExactScalar::sign_power(n as i64) * factorial(n as u64)
        / pochhammer(&ExactScalar::from_int(-(big_n as i64)), n as u64)
}

/// `G_mn = sum_k C(N, k) K_m(k) K_n(k)`.
pub fn orthogonality_gram(big_n: usize) -> Result<RationalMatrix> {
    let table = krawtchouk_table(big_n)?;
    let weights: Vec<ExactScalar> = (0..=big_n).map(|k| binomial(big_n as u64, k as i64)).collect();
    let dim = big_n + 1;
    Ok(RationalMatrix::from_fn(dim, dim, |m, n| {
        table
            .row(m)
            .iter()
            .zip(table.row(n))
            .zip(&weights)
            .map(|((a, b), w)| a * b * w)
            .sum()
    }))
}

/// Checks that `gram` is `diag(squared_norm(0..=N))`, reporting the first
/// offending entry under `identity`.
pub fn check_diagonal_norms(identity: &'static str, gram: &RationalMatrix, big_n: usize) -> Result<()> {
    let dim = big_n + 1;
    for r in 0..dim {
        for c in 0..dim {
            let want = if r == c {
                squared_norm(r, big_n)
            } else {
                ExactScalar::zero()
            };
            let got = gram.get(r, c);
            if got != &want {
                return Err(KrwError::mismatch(
                    identity,
                    Counterexample::new(
                        [
                            ("row", r.to_string()),
                            ("col", c.to_string()),
                            ("N", big_n.to_string()),
                        ],
                        want,
                        got,
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// `K_(N-n)(k) = (-1)^k K_n(k)` at one lattice point.
pub fn mirror_check(n: usize, k: usize, big_n: usize) -> Result<bool> {
    check_index("n", n, big_n)?;
    let lhs = krawtchouk_eval(big_n - n, k, big_n)?;
    let rhs = ExactScalar::sign_power(k as i64) * krawtchouk_eval(n, k, big_n)?;
    Ok(lhs == rhs)
}
