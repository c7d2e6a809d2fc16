use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Exact rational scalars usable as coefficients of cyclotomic numbers.
///
/// Floating point types deliberately do not implement this: canonical
/// equality of cyclotomic elements relies on exact arithmetic.
pub trait ExactScalar:
    Clone + Debug + Display + Ord + Num + Signed + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;

    fn from_fraction(numer: i64, denom: i64) -> Self;

    /// Denominator in lowest terms, as a scalar.
    fn denom(&self) -> Self;

    /// Least common multiple of two integral scalars.
    fn lcm_int(a: &Self, b: &Self) -> Self;

    fn is_integer(&self) -> bool;

    /// Text form `p/q`, always with an explicit denominator.
    fn to_fraction_text(&self) -> String;

    fn parse_fraction_text(s: &str) -> Option<Self>;
}

impl<I> ExactScalar for Ratio<I>
where
    I: Integer + Signed + Clone + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(I::from(v))
    }

    fn from_fraction(numer: i64, denom: i64) -> Self {
        Ratio::new(I::from(numer), I::from(denom))
    }

    fn denom(&self) -> Self {
        Ratio::from_integer(self.denom().clone())
    }

    fn lcm_int(a: &Self, b: &Self) -> Self {
        Ratio::from_integer(a.to_integer().lcm(&b.to_integer()))
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn to_fraction_text(&self) -> String {
        format!("{}/{}", self.numer(), Ratio::denom(self))
    }

    fn parse_fraction_text(s: &str) -> Option<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n = I::from_str(n).ok()?;
        let d = I::from_str(d).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}
