use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers, always kept in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Coefficient ring for dense Lie-algebra computations.
///
/// Implemented for [`Rat`] (numeric evaluation) and for
/// [`Poly`](crate::poly::Poly) (symbolic evaluation with indeterminate
/// coordinates). Structure constants and series coefficients are always
/// rational, hence `scale`.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn from_rat(q: &Rat) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, q: &Rat) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Coeff for Rat {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &Rat) -> Self {
        self * q
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// `⌊q⌋` as an `i64`, or `None` when it does not fit.
pub fn floor_i64(q: &Rat) -> Option<i64> {
    q.floor().to_integer().to_i64()
}

/// Canonical `"p/q"` text with `q > 0`.
pub fn rat_to_string(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`, reducing to lowest terms.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

/// `q^n` for a non-negative integer exponent.
pub fn rat_pow(q: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= q;
    }
    acc
}

pub fn abs_le(q: &Rat, bound: i64) -> bool {
    q.abs() <= int(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        assert_eq!(parse_rat("2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rat("-3"), Some(int(-3)));
        assert_eq!(parse_rat("3/-6"), Some(rat(-1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        assert_eq!(rat_to_string(&rat(-6, 4)), "-3/2");
        assert_eq!(rat_to_string(&int(5)), "5/1");
    }

    #[test]
    fn floor_of_negative_fraction() {
        assert_eq!(floor_i64(&rat(-1, 2)), Some(-1));
        assert_eq!(floor_i64(&rat(7, 2)), Some(3));
    }
}
