use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{NumAssign, Signed, ToPrimitive};

/// Exact ordered-field scalar.
///
/// The engine is generic over this trait so the same elimination, simplex
/// and enumeration code runs over `Ratio<i64>`, `Ratio<i128>` or
/// `BigRational`. Only exact types qualify: the trait requires total order
/// and exact `Num` arithmetic, which rules floating point out.
pub trait Scalar:
    Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display + Signed + NumAssign + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_fraction(num: i64, den: i64) -> Self;

    /// Exact `(numerator, denominator)` view when both fit machine words.
    fn as_int_pair(&self) -> Option<(i128, i128)>;

    fn from_int_pair(num: i128, den: i128) -> Self;
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn as_int_pair(&self) -> Option<(i128, i128)> {
        Some((self.numer().to_i128()?, self.denom().to_i128()?))
    }

    fn from_int_pair(num: i128, den: i128) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn as_int_pair(&self) -> Option<(i128, i128)> {
        Some((*self.numer() as i128, *self.denom() as i128))
    }

    fn from_int_pair(num: i128, den: i128) -> Self {
        Ratio::new(i64::try_from(num).expect("numerator overflow"), i64::try_from(den).expect("denominator overflow"))
    }
}

impl Scalar for Ratio<i128> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        Ratio::new(num as i128, den as i128)
    }

    fn as_int_pair(&self) -> Option<(i128, i128)> {
        Some((*self.numer(), *self.denom()))
    }

    fn from_int_pair(num: i128, den: i128) -> Self {
        Ratio::new(num, den)
    }
}
