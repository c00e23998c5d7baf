//! Sparse multivariate polynomials over the rationals.
//!
//! Used as a symbolic coefficient ring: feeding indeterminates through the
//! group law yields the coordinate-change and collection polynomials
//! exactly, rather than sampling them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Coeff, Rat};

/// Product of variable powers, stored as `(variable, exponent)` pairs sorted
/// by variable with strictly positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(u16, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u16) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, v: u16) -> u16 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn constant(q: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        Poly { terms }
    }

    pub fn var(v: u16) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Variables occurring with nonzero coefficient, ascending.
    pub fn variables(&self) -> Vec<u16> {
        let mut vars: Vec<u16> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| *v))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Maximum over monomials of `Σ weight(v)·exponent`.
    pub fn weighted_degree(&self, weight: impl Fn(u16) -> u64) -> Option<u64> {
        self.terms
            .keys()
            .map(|m| m.0.iter().map(|(v, e)| weight(*v) * *e as u64).sum())
            .max()
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                for _ in 0..*e {
                    term *= &point[*v as usize];
                }
            }
            acc += term;
        }
        acc
    }

    fn insert_add(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Coeff for Poly {
    fn nil() -> Self {
        Poly::default()
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rat(q: &Rat) -> Self {
        Poly::constant(q.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.insert_add(m.clone(), c.clone());
        }
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.insert_add(m.clone(), -c);
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn scale(&self, q: &Rat) -> Self {
        if q.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }
    fn neg_ref(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (v, e) in &m.0 {
                if *e == 1 {
                    write!(f, "*x{}", v + 1)?;
                } else {
                    write!(f, "*x{}^{}", v + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// A rational polynomial cleared to integer coefficients over a common
/// denominator, for fast evaluation at integer points.
#[derive(Clone, Debug)]
pub struct IntPoly {
    terms: Vec<(i128, Monomial)>,
    denom: i128,
}

impl IntPoly {
    /// Fails when a cleared coefficient does not fit an `i128`.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        let mut denom = BigInt::one();
        for c in p.terms.values() {
            denom = denom.lcm(c.denom());
        }
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in &p.terms {
            let scaled = c * Rat::from_integer(denom.clone());
            terms.push((scaled.to_integer().to_i128()?, m.clone()));
        }
        Some(IntPoly {
            terms,
            denom: denom.to_i128()?,
        })
    }

    pub fn denominator(&self) -> i128 {
        self.denom
    }

    /// Exact value at an integer point. `None` on overflow, or when the value
    /// is not an integer.
    pub fn eval(&self, point: &[i64]) -> Option<i64> {
        let mut acc: i128 = 0;
        for (c, m) in &self.terms {
            let mut term = *c;
            for (v, e) in &m.0 {
                let x = point[*v as usize] as i128;
                for _ in 0..*e {
                    term = term.checked_mul(x)?;
                }
            }
            acc = acc.checked_add(term)?;
        }
        if acc % self.denom != 0 {
            return None;
        }
        (acc / self.denom).to_i64()
    }
}

/// Whether a rational polynomial takes integer values on all integer points
/// of a small cube; a cheap consistency probe, not a proof.
pub fn integral_on_cube(p: &Poly, nvars: usize, radius: i64) -> bool {
    let Some(ip) = IntPoly::from_poly(p) else {
        return false;
    };
    let vars = p.variables();
    let mut point = vec![0i64; nvars];
    let side = (2 * radius + 1) as usize;
    let total = side.pow(vars.len() as u32);
    for mut code in 0..total {
        for v in &vars {
            point[*v as usize] = (code % side) as i64 - radius;
            code /= side;
        }
        if ip.eval(&point).is_none() {
            return false;
        }
    }
    true
}

pub fn common_denominator(p: &Poly) -> BigInt {
    p.terms
        .values()
        .map(|c| c.denom().abs())
        .fold(BigInt::one(), |a, d| a.lcm(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn product_collects_like_terms() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let mut s = x.clone();
        s.add_assign_ref(&y);
        let sq = s.mul_ref(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.evaluate(&[int(2), int(3)]), int(25));
        let mut diff = sq.clone();
        diff.sub_assign_ref(&sq);
        assert!(diff.is_nil());
    }

    #[test]
    fn binomial_is_integer_valued() {
        // x(x-1)/2
        let x = Poly::var(0);
        let mut xm1 = x.clone();
        xm1.sub_assign_ref(&Poly::constant(int(1)));
        let p = x.mul_ref(&xm1).scale(&rat(1, 2));
        let ip = IntPoly::from_poly(&p).unwrap();
        assert_eq!(ip.denominator(), 2);
        assert_eq!(ip.eval(&[5]), Some(10));
        assert_eq!(ip.eval(&[-3]), Some(6));
        assert!(integral_on_cube(&p, 1, 4));
        assert!(!integral_on_cube(&x.scale(&rat(1, 2)), 1, 1));
    }

    #[test]
    fn weighted_degree_and_variables() {
        let p = Poly::var(0).mul_ref(&Poly::var(0)).mul_ref(&Poly::var(2));
        assert_eq!(p.variables(), vec![0, 2]);
        assert_eq!(p.weighted_degree(|v| if v == 2 { 3 } else { 1 }), Some(5));
        assert_eq!(
            Poly::var(2)
                .mul_ref(&p)
                .terms()
                .next()
                .unwrap()
                .0
                .degree_in(2),
            2
        );
    }
}
