use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::bch::BchEngine;
use super::collect::LatticeGroup;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{BasisKey, LieAlgebra, LieElement, Shape};
use crate::scalar::{Coeff, Rat};
use crate::setalg::Group;

/// Shared BCH engines, one per step. Building one costs an exp/log in the
/// free associative algebra, so every group of the same step reuses it.
pub fn bch_engine(s: usize) -> Arc<BchEngine> {
    static ENGINES: OnceLock<Mutex<HashMap<usize, Arc<BchEngine>>>> = OnceLock::new();
    let map = ENGINES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("engine cache poisoned");
    guard
        .entry(s)
        .or_insert_with(|| Arc::new(BchEngine::new(s)))
        .clone()
}

/// A point of the free nilpotent group `N_{k,s}`, stored as its logarithm.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    log: LieElement,
}

impl GroupElement {
    pub fn from_log(log: LieElement) -> Self {
        GroupElement { log }
    }

    pub fn log(&self) -> &LieElement {
        &self.log
    }

    pub fn into_log(self) -> LieElement {
        self.log
    }

    pub fn key(&self) -> BasisKey {
        self.log.key()
    }

    pub fn is_identity(&self) -> bool {
        self.log.is_zero()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.log)
    }
}

/// The free `s`-step nilpotent group `N_{k,s} = exp(n_{k,s})` with the
/// truncated BCH product.
#[derive(Clone, Debug)]
pub struct NilGroup {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    algebra: LieAlgebra,
    bch: Arc<BchEngine>,
    u_logs: Vec<LieElement>,
    u_dense: Vec<Vec<Rat>>,
    lattice: OnceLock<std::result::Result<Arc<LatticeGroup>, Error>>,
}

impl PartialEq for NilGroup {
    fn eq(&self, other: &Self) -> bool {
        self.inner.algebra == other.inner.algebra
    }
}

impl Eq for NilGroup {}

impl NilGroup {
    pub fn new(k: usize, s: usize, limits: &Limits) -> Result<Self> {
        Ok(Self::from_algebra(LieAlgebra::new(k, s, limits)?))
    }

    pub fn from_algebra(algebra: LieAlgebra) -> Self {
        let bch = bch_engine(algebra.s());
        let t = algebra.dim();
        let mut u_dense: Vec<Vec<Rat>> = Vec::with_capacity(t);
        for e in algebra.basis().elements() {
            let log = match e.shape {
                Shape::Leaf(g) => {
                    let mut v = vec![Rat::zero(); t];
                    v[g] = Rat::from_integer(1.into());
                    v
                }
                Shape::Node(l, r) => {
                    let (a, b) = (&u_dense[l], &u_dense[r]);
                    let na: Vec<Rat> = a.iter().map(|q| -q).collect();
                    let nb: Vec<Rat> = b.iter().map(|q| -q).collect();
                    let left = bch.combine(&algebra, &na, &nb);
                    let right = bch.combine(&algebra, a, b);
                    bch.combine(&algebra, &left, &right)
                }
            };
            u_dense.push(log);
        }
        let u_logs = u_dense
            .iter()
            .map(|d| LieElement::from_dense(algebra.key(), d))
            .collect();
        NilGroup {
            inner: Arc::new(Inner {
                algebra,
                bch,
                u_logs,
                u_dense,
                lattice: OnceLock::new(),
            }),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.inner.algebra
    }

    pub fn bch(&self) -> &BchEngine {
        &self.inner.bch
    }

    pub fn key(&self) -> BasisKey {
        self.inner.algebra.key()
    }

    pub fn k(&self) -> usize {
        self.inner.algebra.k()
    }

    pub fn s(&self) -> usize {
        self.inner.algebra.s()
    }

    pub fn dim(&self) -> usize {
        self.inner.algebra.dim()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::from_log(self.inner.algebra.zero())
    }

    pub fn exp(&self, a: &LieElement) -> Result<GroupElement> {
        self.inner.algebra.check(a)?;
        Ok(GroupElement::from_log(a.clone()))
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        self.inner.algebra.check(&x.log)
    }

    /// `u_i = exp(X_i)` for a generator `i` (0-based).
    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement::from_log(self.inner.algebra.generator(i))
    }

    /// The `j`-th factor `u_j` (0-based): `exp(X_j)` on leaves and the group
    /// commutator `[u_l, u_r] = u_l^{-1} u_r^{-1} u_l u_r` on a node `[X_l, X_r]`.
    pub fn u(&self, j: usize) -> GroupElement {
        GroupElement::from_log(self.inner.u_logs[j].clone())
    }

    pub fn u_log(&self, j: usize) -> &LieElement {
        &self.inner.u_logs[j]
    }

    pub(crate) fn u_dense(&self) -> &[Vec<Rat>] {
        &self.inner.u_dense
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.product(x, y))
    }

    pub(crate) fn product(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        if x.log.is_zero() {
            return y.clone();
        }
        if y.log.is_zero() {
            return x.clone();
        }
        let t = self.dim();
        let z = self.combine(&x.log.to_dense(t), &y.log.to_dense(t));
        GroupElement::from_log(LieElement::from_dense(self.key(), &z))
    }

    /// BCH product of dense logarithms over any coefficient ring.
    pub fn combine<C: Coeff>(&self, a: &[C], b: &[C]) -> Vec<C> {
        self.inner.bch.combine(&self.inner.algebra, a, b)
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        GroupElement::from_log(x.log.neg())
    }

    /// `x^η = exp(η log x)`.
    pub fn pow(&self, x: &GroupElement, eta: &Rat) -> GroupElement {
        GroupElement::from_log(x.log.scale(eta))
    }

    /// `[x, y] = x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.commutator_unchecked(x, y))
    }

    pub(crate) fn commutator_unchecked(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let left = self.product(&self.inv(x), &self.inv(y));
        let right = self.product(x, y);
        self.product(&left, &right)
    }

    /// Image under the dilation automorphism `δ_M` of the grading.
    pub fn dilate(&self, x: &GroupElement, factor: &Rat) -> GroupElement {
        GroupElement::from_log(self.inner.algebra.dilate(&x.log, factor))
    }

    /// Fast integer arithmetic on `Γ_{k,s}` in group coordinates, built
    /// once on first use.
    pub fn lattice(&self) -> Result<Arc<LatticeGroup>> {
        self.inner
            .lattice
            .get_or_init(|| LatticeGroup::from_group(self).map(Arc::new))
            .clone()
    }
}

impl Group for NilGroup {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        NilGroup::identity(self)
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.product(a, b)
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        NilGroup::inv(self, a)
    }

    fn pow_int(&self, a: &GroupElement, n: i64) -> GroupElement {
        self.pow(a, &Rat::from_integer(n.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn group(k: usize, s: usize) -> NilGroup {
        NilGroup::new(k, s, &Limits::default()).unwrap()
    }

    #[test]
    fn step_two_product_has_half_bracket() {
        let g = group(2, 2);
        let z = g.mul(&g.generator(0), &g.generator(1)).unwrap();
        // ½[X1,X2] = -½[X2,X1]
        assert_eq!(
            z.log().coords(),
            &[(0, int(1)), (1, int(1)), (2, rat(-1, 2))]
        );
        assert_eq!(g.mul(&g.identity(), &z).unwrap(), z);
    }

    #[test]
    fn inverse_reverses_products() {
        let g = group(2, 2);
        let (a, b) = (g.generator(0), g.generator(1));
        let ab = g.mul(&a, &b).unwrap();
        let rhs = g.mul(&g.inv(&b), &g.inv(&a)).unwrap();
        assert_eq!(g.inv(&ab), rhs);
        assert!(g.mul(&ab, &g.inv(&ab)).unwrap().is_identity());
    }

    #[test]
    fn commutator_of_generators() {
        let g = group(2, 2);
        let c = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
        // exp([X1,X2]) = exp(-[X2,X1])
        assert_eq!(c.log().coords(), &[(2, int(-1))]);
        assert_eq!(g.u(2).log().coords(), &[(2, int(1))]);
        assert!(g
            .commutator(&g.generator(0), &g.identity())
            .unwrap()
            .is_identity());
    }

    #[test]
    fn u_factors_lead_with_their_basis_vector() {
        let g = group(3, 3);
        for j in 0..g.dim() {
            let log = g.u_log(j);
            assert_eq!(log.coord(j), int(1));
            for (m, _) in log.coords() {
                assert!(*m == j || g.algebra().order(*m) > g.algebra().order(j));
            }
        }
    }

    #[test]
    fn integer_powers_match_repeated_products() {
        let g = group(2, 3);
        let z = g.mul(&g.generator(0), &g.generator(1)).unwrap();
        let mut acc = g.identity();
        for _ in 0..3 {
            acc = g.mul(&acc, &z).unwrap();
        }
        assert_eq!(g.pow(&z, &int(3)), acc);
        let root = g.pow(&z, &rat(1, 3));
        let cube = g.mul(&g.mul(&root, &root).unwrap(), &root).unwrap();
        assert_eq!(cube, z);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let g = group(2, 2);
        let h = group(2, 3);
        assert!(matches!(
            g.mul(&g.generator(0), &h.generator(0)),
            Err(Error::BasisMismatch { .. })
        ));
    }
}
