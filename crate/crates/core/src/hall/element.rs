use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Identifies the free algebra `n_{k,s}` an element lives in. The basis is a
/// deterministic function of `(k, s)`, so the pair names it uniquely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisKey {
    pub k: u8,
    pub s: u8,
}

impl BasisKey {
    pub fn new(k: usize, s: usize) -> Self {
        BasisKey {
            k: k as u8,
            s: s as u8,
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n_{{{},{}}}", self.k, self.s)
    }
}

/// Exact rational coordinate vector over a Hall basis.
///
/// Stored sparsely: `(index, value)` pairs with strictly increasing 0-based
/// indices and nonzero values, so structural equality is coordinate
/// equality and the derived ordering is canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieElement {
    key: BasisKey,
    coords: Vec<(usize, Rat)>,
}

impl LieElement {
    pub fn zero(key: BasisKey) -> Self {
        LieElement {
            key,
            coords: Vec::new(),
        }
    }

    pub fn basis_vector(key: BasisKey, index: usize) -> Self {
        LieElement {
            key,
            coords: vec![(index, Rat::from_integer(1.into()))],
        }
    }

    /// Builds an element from arbitrary `(index, value)` pairs, summing
    /// repeats and dropping zeros.
    pub fn from_pairs(key: BasisKey, pairs: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut coords: Vec<(usize, Rat)> = pairs.into_iter().collect();
        coords.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(coords.len());
        for (i, q) in coords {
            match merged.last_mut() {
                Some((j, acc)) if *j == i => *acc += q,
                _ => merged.push((i, q)),
            }
        }
        merged.retain(|(_, q)| !q.is_zero());
        LieElement {
            key,
            coords: merged,
        }
    }

    pub fn from_dense(key: BasisKey, dense: &[Rat]) -> Self {
        LieElement {
            key,
            coords: dense
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(i, q)| (i, q.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, t: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); t];
        for (i, q) in &self.coords {
            out[*i] = q.clone();
        }
        out
    }

    pub fn key(&self) -> BasisKey {
        self.key
    }

    pub fn coords(&self) -> &[(usize, Rat)] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> Rat {
        match self.coords.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.coords[pos].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn ensure_same(&self, other: &LieElement) -> Result<()> {
        if self.key == other.key {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self.key,
                right: other.key,
            })
        }
    }

    pub fn try_add(&self, other: &LieElement) -> Result<LieElement> {
        self.ensure_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &LieElement) -> Result<LieElement> {
        self.ensure_same(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub(crate) fn add_unchecked(&self, other: &LieElement) -> LieElement {
        let mut out = Vec::with_capacity(self.coords.len() + other.coords.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.coords, &other.coords);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let q = &a[i].1 + &b[j].1;
                    if !q.is_zero() {
                        out.push((a[i].0, q));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LieElement {
            key: self.key,
            coords: out,
        }
    }

    pub fn neg(&self) -> LieElement {
        LieElement {
            key: self.key,
            coords: self.coords.iter().map(|(i, q)| (*i, -q)).collect(),
        }
    }

    pub fn scale(&self, q: &Rat) -> LieElement {
        if q.is_zero() {
            return LieElement::zero(self.key);
        }
        LieElement {
            key: self.key,
            coords: self.coords.iter().map(|(i, c)| (*i, c * q)).collect(),
        }
    }

    /// Whether every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|(_, q)| q.is_integer())
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, q)) in self.coords.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·X{}", q, i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn canonical_form_merges_and_drops_zeros() {
        let key = BasisKey::new(2, 2);
        let a = LieElement::from_pairs(key, vec![(2, int(1)), (0, rat(1, 2)), (2, int(-1))]);
        assert_eq!(a.coords(), &[(0, rat(1, 2))]);
        let b = LieElement::from_dense(key, &[rat(1, 2), int(0), int(0)]);
        assert_eq!(a, b);
        assert_eq!(a.coord(2), int(0));
    }

    #[test]
    fn arithmetic_and_mismatch() {
        let key = BasisKey::new(2, 2);
        let x1 = LieElement::basis_vector(key, 0);
        let x2 = LieElement::basis_vector(key, 1);
        let sum = x1.try_add(&x2).unwrap();
        assert_eq!(sum.try_sub(&x2).unwrap(), x1);
        assert!(sum.try_sub(&sum).unwrap().is_zero());
        assert_eq!(x1.scale(&int(0)), LieElement::zero(key));
        let other = LieElement::basis_vector(BasisKey::new(3, 2), 0);
        assert!(matches!(
            x1.try_add(&other),
            Err(Error::BasisMismatch { .. })
        ));
    }
}
