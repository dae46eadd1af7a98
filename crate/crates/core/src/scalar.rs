//! Conversion of exact count ratios into caller-chosen numeric types.
//!
//! Every strength decision in this crate is made on integer counts. A
//! [`Scalar`] is only the presentation type a caller wants a support or
//! confidence rendered in: `f64` for plotting, [`Rational`](crate::Rational)
//! for exact reporting, `Ratio<u128>` or similar for wider exact arithmetic.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Num;

pub trait Scalar: Num + Clone + PartialOrd + std::fmt::Debug {
    /// `numerator / denominator`; `denominator` is never zero.
    fn from_counts(numerator: u64, denominator: u64) -> Self;
}

impl Scalar for f64 {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        numerator as f64 / denominator as f64
    }
}

impl Scalar for f32 {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        (numerator as f64 / denominator as f64) as f32
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Clone + From<u64> + std::fmt::Debug,
{
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        Ratio::new(T::from(numerator), T::from(denominator))
    }
}
