use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use crate::config::Limits;
use crate::error::Result;

/// A group given by its operations. Elements must have a canonical form so
/// that equality, ordering and hashing are the group's equality.
pub trait Group: Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `a^n` for an integer `n`, by repeated squaring.
    fn pow_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        let mut base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^{-1} b^{-1} a b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let left = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&left, &self.mul(a, b))
    }
}

/// Membership predicate, so containment can be checked against sets that
/// are described rather than enumerated.
pub trait Contains<E> {
    fn contains_elem(&self, e: &E) -> bool;
}

/// A finite set in canonical form: sorted, without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSet<E> {
    elems: Vec<E>,
}

impl<E: Ord + Clone> FiniteSet<E> {
    pub fn empty() -> Self {
        FiniteSet { elems: Vec::new() }
    }

    pub fn singleton(e: E) -> Self {
        FiniteSet { elems: vec![e] }
    }

    pub fn from_vec(mut elems: Vec<E>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        FiniteSet { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.elems.iter()
    }

    pub fn elements(&self) -> &[E] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<E> {
        self.elems
    }

    pub fn contains(&self, e: &E) -> bool {
        self.elems.binary_search(e).is_ok()
    }

    pub fn union(&self, other: &FiniteSet<E>) -> FiniteSet<E> {
        let mut v = self.elems.clone();
        v.extend_from_slice(&other.elems);
        FiniteSet::from_vec(v)
    }

    pub fn map<F: Ord + Clone>(&self, f: impl Fn(&E) -> F) -> FiniteSet<F> {
        FiniteSet::from_vec(self.elems.iter().map(f).collect())
    }

    /// First element of `self` outside `other`, if any.
    pub fn subset_witness(&self, other: &impl Contains<E>) -> Option<E> {
        subset_witness(self.iter(), other)
    }

    pub fn is_subset(&self, other: &impl Contains<E>) -> bool {
        self.subset_witness(other).is_none()
    }
}

impl<E: Ord + Clone> FromIterator<E> for FiniteSet<E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        FiniteSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a, E> IntoIterator for &'a FiniteSet<E> {
    type Item = &'a E;
    type IntoIter = std::slice::Iter<'a, E>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl<E: Ord> Contains<E> for FiniteSet<E> {
    fn contains_elem(&self, e: &E) -> bool {
        self.elems.binary_search(e).is_ok()
    }
}

impl<E: Eq + Hash> Contains<E> for HashSet<E> {
    fn contains_elem(&self, e: &E) -> bool {
        self.contains(e)
    }
}

/// Intersection of two membership predicates.
pub struct Both<'a, A: ?Sized, B: ?Sized>(pub &'a A, pub &'a B);

impl<E, A: Contains<E> + ?Sized, B: Contains<E> + ?Sized> Contains<E> for Both<'_, A, B> {
    fn contains_elem(&self, e: &E) -> bool {
        self.0.contains_elem(e) && self.1.contains_elem(e)
    }
}

pub fn subset_witness<'a, E: Clone + 'a>(
    items: impl IntoIterator<Item = &'a E>,
    sup: &(impl Contains<E> + ?Sized),
) -> Option<E> {
    items.into_iter().find(|e| !sup.contains_elem(e)).cloned()
}

/// Canonical set of all `f(a, b)`, built in parallel over `a`.
pub(crate) fn pairwise<A, B, E, F>(left: &[A], right: &[B], f: F) -> FiniteSet<E>
where
    A: Sync,
    B: Sync,
    E: Ord + Clone + Hash + Send,
    F: Fn(&A, &B) -> E + Sync,
{
    let set: HashSet<E> = left
        .par_iter()
        .fold(HashSet::new, |mut acc, a| {
            for b in right {
                acc.insert(f(a, b));
            }
            acc
        })
        .reduce(HashSet::new, |mut x, y| {
            if x.len() < y.len() {
                return y.into_iter().fold(x, |mut acc, e| {
                    acc.insert(e);
                    acc
                });
            }
            x.extend(y);
            x
        });
    FiniteSet::from_vec(set.into_iter().collect())
}

/// `A · B`.
pub fn product_set<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    b: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<FiniteSet<G::Elem>> {
    limits.check_set_size(a.len() as u128 * b.len() as u128)?;
    Ok(pairwise(a.elements(), b.elements(), |x, y| group.mul(x, y)))
}

/// `A^n`, with `A^0 = {id}`.
pub fn power_set<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    n: usize,
    limits: &Limits,
) -> Result<FiniteSet<G::Elem>> {
    let mut acc = FiniteSet::singleton(group.identity());
    for _ in 0..n {
        acc = product_set(group, &acc, a, limits)?;
    }
    Ok(acc)
}

/// `A^{±n}`: products of `n` elements of `A ∪ A^{-1}`.
pub fn signed_power_set<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    n: usize,
    limits: &Limits,
) -> Result<FiniteSet<G::Elem>> {
    power_set(group, &symmetrize(group, a), n, limits)
}

pub fn inverse_set<G: Group>(group: &G, a: &FiniteSet<G::Elem>) -> FiniteSet<G::Elem> {
    a.map(|x| group.inv(x))
}

/// `A ∪ A^{-1}`.
pub fn symmetrize<G: Group>(group: &G, a: &FiniteSet<G::Elem>) -> FiniteSet<G::Elem> {
    a.union(&inverse_set(group, a))
}

/// Closed under inversion and containing the identity.
pub fn is_symmetric<G: Group>(group: &G, a: &FiniteSet<G::Elem>) -> bool {
    a.contains(&group.identity()) && a.iter().all(|x| a.contains(&group.inv(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The integers under addition.
    struct Z;

    impl Group for Z {
        type Elem = i64;
        fn identity(&self) -> i64 {
            0
        }
        fn mul(&self, a: &i64, b: &i64) -> i64 {
            a + b
        }
        fn inv(&self, a: &i64) -> i64 {
            -a
        }
    }

    #[test]
    fn interval_powers() {
        let lim = Limits::default();
        let a: FiniteSet<i64> = (-2..=2).collect();
        assert_eq!(power_set(&Z, &a, 0, &lim).unwrap().elements(), &[0]);
        assert_eq!(power_set(&Z, &a, 3, &lim).unwrap().len(), 13);
        assert_eq!(
            signed_power_set(&Z, &a, 3, &lim).unwrap(),
            power_set(&Z, &a, 3, &lim).unwrap()
        );
        assert!(is_symmetric(&Z, &a));
        let b: FiniteSet<i64> = (0..=2).collect();
        assert!(!is_symmetric(&Z, &b));
        assert_eq!(symmetrize(&Z, &b), a);
    }

    #[test]
    fn identity_is_neutral_for_products() {
        let lim = Limits::default();
        let a: FiniteSet<i64> = vec![3, -7, 11].into_iter().collect();
        let id = FiniteSet::singleton(0);
        assert_eq!(product_set(&Z, &id, &a, &lim).unwrap(), a);
    }

    #[test]
    fn caps_and_witnesses() {
        let lim = Limits::default().with_max_set_size(10);
        let a: FiniteSet<i64> = (0..5).collect();
        assert!(product_set(&Z, &a, &a, &lim).is_err());
        let b: FiniteSet<i64> = (0..3).collect();
        assert_eq!(a.subset_witness(&b), Some(3));
        assert!(b.is_subset(&a));
        assert_eq!(Z.pow_int(&3, -4), -12);
        assert_eq!(Z.commutator(&3, &5), 0);
    }
}
