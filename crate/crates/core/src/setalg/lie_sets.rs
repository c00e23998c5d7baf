use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::finite::{pairwise, FiniteSet};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{LieAlgebra, LieElement};
use crate::scalar::Rat;

pub type AlgSet = FiniteSet<LieElement>;

fn check_all(algebra: &LieAlgebra, set: &AlgSet) -> Result<()> {
    for e in set {
        algebra.check(e)?;
    }
    Ok(())
}

/// `U + V`.
pub fn minkowski_sum(
    algebra: &LieAlgebra,
    u: &AlgSet,
    v: &AlgSet,
    limits: &Limits,
) -> Result<AlgSet> {
    check_all(algebra, u)?;
    check_all(algebra, v)?;
    limits.check_set_size(u.len() as u128 * v.len() as u128)?;
    Ok(pairwise(u.elements(), v.elements(), |a, b| {
        a.add_unchecked(b)
    }))
}

/// The `m`-fold sumset `mU = U + … + U` (`m ≥ 1`).
pub fn dilate_set(algebra: &LieAlgebra, u: &AlgSet, m: usize, limits: &Limits) -> Result<AlgSet> {
    if m == 0 {
        return Err(Error::InvalidArgument("m-fold sumset needs m >= 1".into()));
    }
    let mut acc = u.clone();
    for _ in 1..m {
        acc = minkowski_sum(algebra, &acc, u, limits)?;
    }
    Ok(acc)
}

/// Integer vectors `D·a` over a common denominator `D` of `set`; `None` for
/// an element whose scaled coordinates are not integers.
struct Scaled {
    denom: BigInt,
    t: usize,
}

impl Scaled {
    fn new(algebra: &LieAlgebra, set: &AlgSet) -> Self {
        let mut denom = BigInt::one();
        for e in set {
            for (_, q) in e.coords() {
                denom = denom.lcm(q.denom());
            }
        }
        Scaled {
            denom,
            t: algebra.dim(),
        }
    }

    fn vector(&self, a: &LieElement) -> Result<Option<Vec<i64>>> {
        let mut out = vec![0i64; self.t];
        for (j, q) in a.coords() {
            let x = q * Rat::from_integer(self.denom.clone());
            if !x.is_integer() {
                return Ok(None);
            }
            out[*j] = x
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::OutOfRange("scaled coordinate does not fit in i64".into()))?;
        }
        Ok(Some(out))
    }
}

/// First element of `items` outside the `m`-fold sumset `mU`.
///
/// Splits `m = a + b` and looks for `y ∈ aU` with `x - y ∈ bU`, so only
/// the two halves are enumerated.
pub fn sumset_subset_witness(
    algebra: &LieAlgebra,
    items: &AlgSet,
    u: &AlgSet,
    m: usize,
    limits: &Limits,
) -> Result<Option<LieElement>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m-fold sumset needs m >= 1".into()));
    }
    if m == 1 {
        return Ok(items.subset_witness(u));
    }
    let a = m / 2;
    let left = dilate_set(algebra, u, a, limits)?;
    let right = if m - a == a {
        left.clone()
    } else {
        dilate_set(algebra, u, m - a, limits)?
    };
    let scaled = Scaled::new(algebra, u);
    let to_vecs = |set: &AlgSet| -> Result<Vec<Vec<i64>>> {
        set.iter()
            .map(|e| Ok(scaled.vector(e)?.expect("sums of U share its denominator")))
            .collect()
    };
    let left = to_vecs(&left)?;
    let right: HashSet<Vec<i64>> = to_vecs(&right)?.into_iter().collect();
    let outside = items
        .elements()
        .par_iter()
        .map(|x| -> Result<Option<LieElement>> {
            let Some(v) = scaled.vector(x)? else {
                return Ok(Some(x.clone()));
            };
            let mut diff = vec![0i64; v.len()];
            let hit = left.iter().any(|y| {
                for (d, (p, q)) in diff.iter_mut().zip(v.iter().zip(y)) {
                    *d = p - q;
                }
                right.contains(&diff)
            });
            Ok((!hit).then(|| x.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(outside.into_iter().flatten().next())
}

/// `{q·u : u ∈ U}`.
pub fn scale_set(u: &AlgSet, q: &Rat) -> AlgSet {
    u.map(|a| a.scale(q))
}

/// `[U, V] = {[u, v]}`.
pub fn bracket_set(
    algebra: &LieAlgebra,
    u: &AlgSet,
    v: &AlgSet,
    limits: &Limits,
) -> Result<AlgSet> {
    check_all(algebra, u)?;
    check_all(algebra, v)?;
    limits.check_set_size(u.len() as u128 * v.len() as u128)?;
    Ok(pairwise(u.elements(), v.elements(), |a, b| {
        algebra.bracket_unchecked(a, b)
    }))
}

/// Number of full binary bracketings with `n` leaves (Catalan `C_{n-1}`).
pub fn bracketing_count(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n.saturating_sub(1) as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Nilcompletion `b̄ = b + [b,b] + [b,[b,b]] + [[b,b],b] + …`, summing the
/// evaluation sets of every full bracketing shape with at most `s` leaves.
pub fn nilcompletion(algebra: &LieAlgebra, b: &AlgSet, limits: &Limits) -> Result<AlgSet> {
    check_all(algebra, b)?;
    let s = algebra.s();
    // by_leaves[n - 1] lists the evaluation sets of all shapes with n leaves
    let mut by_leaves: Vec<Vec<AlgSet>> = vec![vec![b.clone()]];
    for n in 2..=s {
        let mut shapes = Vec::new();
        for left in 1..n {
            for x in &by_leaves[left - 1] {
                for y in &by_leaves[n - left - 1] {
                    shapes.push(bracket_set(algebra, x, y, limits)?);
                }
            }
        }
        by_leaves.push(shapes);
    }
    let mut acc = FiniteSet::singleton(algebra.zero());
    for sets in &by_leaves {
        for set in sets {
            acc = minkowski_sum(algebra, &acc, set, limits)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn algebra(k: usize, s: usize) -> LieAlgebra {
        LieAlgebra::new(k, s, &Limits::default()).unwrap()
    }

    #[test]
    fn sumsets_and_brackets() {
        let a = algebra(2, 2);
        let lim = Limits::default();
        let x1 = a.generator(0);
        let pm: AlgSet = vec![x1.clone(), x1.neg()].into_iter().collect();
        let two = dilate_set(&a, &pm, 2, &lim).unwrap();
        let expect: AlgSet = vec![x1.scale(&int(-2)), a.zero(), x1.scale(&int(2))]
            .into_iter()
            .collect();
        assert_eq!(two, expect);
        let zero = FiniteSet::singleton(a.zero());
        assert_eq!(minkowski_sum(&a, &zero, &pm, &lim).unwrap(), pm);
        let br = bracket_set(
            &a,
            &FiniteSet::singleton(x1.clone()),
            &FiniteSet::singleton(a.generator(1)),
            &lim,
        )
        .unwrap();
        assert_eq!(br.elements(), &[a.bracket(&x1, &a.generator(1)).unwrap()]);
    }

    #[test]
    fn catalan_counts() {
        let got: Vec<u128> = (1..=6).map(bracketing_count).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn nilcompletion_small_cases() {
        let lim = Limits::default();
        let a1 = algebra(2, 1);
        let b: AlgSet = vec![a1.generator(0), a1.generator(1)].into_iter().collect();
        assert_eq!(nilcompletion(&a1, &b, &lim).unwrap(), b);
        let a = algebra(2, 2);
        let zero = FiniteSet::singleton(a.zero());
        assert_eq!(nilcompletion(&a, &zero, &lim).unwrap(), zero);
        // {X1, X2} + {0, ±[X1,X2]}
        let b: AlgSet = vec![a.generator(0), a.generator(1)].into_iter().collect();
        assert_eq!(nilcompletion(&a, &b, &lim).unwrap().len(), 6);
    }

    #[test]
    fn split_sumset_membership_matches_enumeration() {
        let lim = Limits::default();
        let a = LieAlgebra::new(2, 2, &lim).unwrap();
        let u: AlgSet = [
            a.zero(),
            a.generator(0),
            a.generator(1).scale(&crate::scalar::rat(1, 2)),
            a.basis_element(2),
        ]
        .into_iter()
        .collect();
        let five = dilate_set(&a, &u, 5, &lim).unwrap();
        let probe = dilate_set(&a, &u, 6, &lim).unwrap();
        for m in 1..=5 {
            let full = dilate_set(&a, &u, m, &lim).unwrap();
            assert_eq!(
                sumset_subset_witness(&a, &five, &u, m, &lim).unwrap(),
                five.subset_witness(&full)
            );
        }
        assert_eq!(sumset_subset_witness(&a, &five, &u, 5, &lim).unwrap(), None);
        assert!(sumset_subset_witness(&a, &probe, &u, 5, &lim)
            .unwrap()
            .is_some());
    }
}
