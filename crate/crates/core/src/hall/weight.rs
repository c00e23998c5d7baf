use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::scalar::{floor_i64, rat_pow, Rat};

/// Multiplicity of each generator in a commutator. The order is the entry sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(entries: Vec<u32>) -> Self {
        WeightVector(entries)
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut entries = vec![0; k];
        entries[i] = 1;
        WeightVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn sum(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Pointwise `self ≤ other`.
    pub fn dominated_by(&self, other: &WeightVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `L^χ = ∏ L_i^{χ_i}` for integer lengths.
    pub fn monomial(&self, lengths: &[u64]) -> BigInt {
        self.0
            .iter()
            .zip(lengths)
            .fold(BigInt::from(1), |acc, (e, l)| {
                acc * BigInt::from(*l).pow(*e)
            })
    }

    /// `∏ q_i^{χ_i}` for rational per-generator factors.
    pub fn rational_monomial(&self, factors: &[Rat]) -> Rat {
        self.0
            .iter()
            .zip(factors)
            .fold(Rat::from_integer(1.into()), |acc, (e, q)| {
                acc * rat_pow(q, *e)
            })
    }

    /// `⌊(ρL)^χ⌋`, the exponent bound of a scaled progression or nilbox.
    pub fn scaled_bound(&self, lengths: &[u64], scale: &Rat) -> i64 {
        let value = rat_pow(scale, self.order()) * Rat::from_integer(self.monomial(lengths));
        floor_i64(&value).expect("exponent bound exceeds i64")
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn monomials_and_bounds() {
        let chi = WeightVector::new(vec![2, 1]);
        assert_eq!(chi.order(), 3);
        assert_eq!(chi.monomial(&[3, 5]), BigInt::from(45));
        assert_eq!(chi.scaled_bound(&[2, 2], &int(1)), 8);
        // (1/2 · 2)^2 (1/2 · 3) = 3/2
        assert_eq!(chi.scaled_bound(&[2, 3], &rat(1, 2)), 1);
        assert_eq!(chi.rational_monomial(&[int(2), rat(1, 3)]), rat(4, 3));
    }

    #[test]
    fn sum_and_domination() {
        let a = WeightVector::unit(3, 0);
        let b = WeightVector::unit(3, 2);
        let ab = a.sum(&b);
        assert_eq!(ab.entries(), &[1, 0, 1]);
        assert!(a.dominated_by(&ab));
        assert!(!ab.dominated_by(&a));
        assert_eq!(ab.to_string(), "(1,0,1)");
    }
}
