//! Exact rational scalars and the combinatorial factors built from them.
//!
//! [`ExactScalar`] wraps an arbitrary-precision rational kept in lowest terms
//! with a positive denominator, so structural equality is value equality.
//! The textual form is `p/q`, or just `p` when the denominator is one.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::KrwError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactScalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactScalar(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(ExactScalar(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(ExactScalar(&self.0 / &rhs.0))
        }
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn powi(&self, exp: i32) -> Self {
        ExactScalar(num_traits::Pow::pow(&self.0, exp))
    }

    /// `(-1)^n`.
    pub fn sign_power(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Self::one()
        } else {
            Self::from_int(-1)
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        ExactScalar(r)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = KrwError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KrwError::Parse(format!("not an exact rational: {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(ExactScalar(BigRational::new(num, den)))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the underlying rational type.
forward_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc * x)
    }
}

/// Binomial coefficient `C(n, k)`, zero outside `0..=n`.
///
/// Built as a running product `C(n, j) = C(n, j-1) * (n-j+1) / j`, which stays
/// integral at every step.
pub fn binomial(n: u64, k: i64) -> ExactScalar {
    if k < 0 || k as u64 > n {
        return ExactScalar::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for j in 1..=k {
        acc *= BigInt::from(n - j + 1);
        acc /= BigInt::from(j);
    }
    ExactScalar::from_bigint(acc)
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &ExactScalar, n: u64) -> ExactScalar {
    let mut acc = ExactScalar::one();
    let mut term = a.clone();
    let one = ExactScalar::one();
    for _ in 0..n {
        if term.is_zero() {
            return ExactScalar::zero();
        }
        acc *= &term;
        term += &one;
    }
    acc
}

/// `n!`.
pub fn factorial(n: u64) -> ExactScalar {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    ExactScalar::from_bigint(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), ExactScalar::from_int(6));
        assert_eq!(binomial(5, 0), ExactScalar::one());
        assert_eq!(binomial(3, 5), ExactScalar::zero());
        assert_eq!(binomial(3, -1), ExactScalar::zero());
        assert_eq!(binomial(0, 0), ExactScalar::one());
        assert_eq!(binomial(200, 100).to_string().len(), 59);
    }

    #[test]
    fn binomial_matches_pascal() {
        let mut row = vec![ExactScalar::one()];
        for n in 1..=40u64 {
            let mut next = vec![ExactScalar::one(); n as usize + 1];
            for j in 1..n as usize {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial(n, k as i64), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(
            pochhammer(&ExactScalar::from_int(-3), 2),
            ExactScalar::from_int(6)
        );
        assert_eq!(pochhammer(&ExactScalar::from_int(-3), 4), ExactScalar::zero());
        assert_eq!(pochhammer(&ExactScalar::from_int(7), 0), ExactScalar::one());
        assert_eq!(pochhammer(&q("1/2"), 2), q("3/4"));
        // (-N)_n = (-1)^n N!/(N-n)! at N = 5, n = 3
        let lhs = pochhammer(&ExactScalar::from_int(-5), 3);
        assert_eq!(lhs, ExactScalar::from_int(-60));
        assert_eq!(lhs, ExactScalar::sign_power(3) * factorial(5) / factorial(2));
    }

    #[test]
    fn negative_integer_pochhammer_identity() {
        for big_n in 0..=20u64 {
            for n in 0..=big_n {
                let lhs = pochhammer(&ExactScalar::from_int(-(big_n as i64)), n);
                let rhs = ExactScalar::sign_power(n as i64) * factorial(big_n) / factorial(big_n - n);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(ExactScalar::ratio(2, -4).to_string(), "-1/2");
        assert_eq!(ExactScalar::ratio(6, 3).to_string(), "2");
        assert_eq!(q("-1/12"), ExactScalar::ratio(-1, 12));
        assert_eq!(q("10/4").to_string(), "5/2");
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("x".parse::<ExactScalar>().is_err());
        assert!("".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let v = vec![q("1"), q("-1/2")];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1","-1/2"]"#);
        let back: Vec<ExactScalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn sign_power_parity() {
        assert_eq!(ExactScalar::sign_power(0), ExactScalar::one());
        assert_eq!(ExactScalar::sign_power(-1), ExactScalar::from_int(-1));
        assert_eq!(ExactScalar::sign_power(4), ExactScalar::one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = ExactScalar> {
            (-50i64..50, 1i64..20).prop_map(|(p, q)| ExactScalar::ratio(p, q))
        }

        proptest! {
            #[test]
            fn pochhammer_splits(a in scalar(), m in 0u64..8, n in 0u64..8) {
                let whole = pochhammer(&a, m + n);
                let shifted = &a + &ExactScalar::from_int(m as i64);
                let split = pochhammer(&a, m) * pochhammer(&shifted, n);
                prop_assert_eq!(whole, split);
            }

            #[test]
            fn string_round_trip(a in scalar()) {
                let back: ExactScalar = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }
        }
    }
}
