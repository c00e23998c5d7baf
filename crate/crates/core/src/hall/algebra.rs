use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::basis::{build_hall_basis, HallBasis, Shape};
use super::element::{BasisKey, LieElement};
use super::weight::WeightVector;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::scalar::{rat_pow, Coeff, Rat};

type Sparse = Vec<(usize, Rat)>;

/// The free `s`-step nilpotent Lie algebra `n_{k,s}` over the rationals.
///
/// Structure constants `[X_i, X_j] = Σ c_{ij}^m X_m` are computed eagerly at
/// construction by Hall rewriting, so the value is immutable and cheap to
/// share across threads.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    basis: HallBasis,
    key: BasisKey,
    orders: Vec<usize>,
    table: Vec<Sparse>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.inner.key == other.inner.key
    }
}

impl Eq for LieAlgebra {}

impl LieAlgebra {
    pub fn new(k: usize, s: usize, limits: &Limits) -> Result<Self> {
        let basis = build_hall_basis(k, s, limits)?;
        Ok(Self::from_basis(basis))
    }

    pub fn from_basis(basis: HallBasis) -> Self {
        let t = basis.len();
        let orders: Vec<usize> = (0..t).map(|i| basis.order(i)).collect();
        let mut rewriter = Rewriter {
            basis: &basis,
            memo: HashMap::new(),
            depth: 0,
        };
        let mut table = vec![Vec::new(); t * t];
        for i in 0..t {
            for j in 0..t {
                if orders[i] + orders[j] <= basis.s() {
                    table[i * t + j] = rewriter.bracket(i, j);
                }
            }
        }
        let key = BasisKey::new(basis.k(), basis.s());
        LieAlgebra {
            inner: Arc::new(Inner {
                basis,
                key,
                orders,
                table,
            }),
        }
    }

    pub fn basis(&self) -> &HallBasis {
        &self.inner.basis
    }

    pub fn key(&self) -> BasisKey {
        self.inner.key
    }

    pub fn k(&self) -> usize {
        self.inner.basis.k()
    }

    pub fn s(&self) -> usize {
        self.inner.basis.s()
    }

    /// Dimension `t`.
    pub fn dim(&self) -> usize {
        self.inner.orders.len()
    }

    pub fn order(&self, index: usize) -> usize {
        self.inner.orders[index]
    }

    /// `[X_i, X_j]` expanded over the basis (empty when it vanishes).
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, Rat)] {
        &self.inner.table[i * self.dim() + j]
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zero(self.key())
    }

    /// Basis vector `X_{index+1}`.
    pub fn basis_element(&self, index: usize) -> LieElement {
        LieElement::basis_vector(self.key(), index)
    }

    /// Generator `X_{i+1}`, `i < k`.
    pub fn generator(&self, i: usize) -> LieElement {
        assert!(i < self.k(), "generator index {i} out of range");
        self.basis_element(i)
    }

    pub fn element(&self, pairs: impl IntoIterator<Item = (usize, Rat)>) -> Result<LieElement> {
        let pairs: Vec<(usize, Rat)> = pairs.into_iter().collect();
        if let Some((i, _)) = pairs.iter().find(|(i, _)| *i >= self.dim()) {
            return Err(Error::OutOfRange(format!(
                "basis index {} exceeds t={} for {}",
                i + 1,
                self.dim(),
                self.key()
            )));
        }
        Ok(LieElement::from_pairs(self.key(), pairs))
    }

    pub fn from_dense(&self, dense: &[Rat]) -> LieElement {
        LieElement::from_dense(self.key(), dense)
    }

    pub fn to_dense(&self, a: &LieElement) -> Vec<Rat> {
        a.to_dense(self.dim())
    }

    pub fn check(&self, a: &LieElement) -> Result<()> {
        if a.key() == self.key() {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self.key(),
                right: a.key(),
            })
        }
    }

    /// `[a, b]`, truncated at step `s`.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    pub(crate) fn bracket_unchecked(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let s = self.s();
        let mut out: Vec<Rat> = Vec::new();
        for (i, x) in a.coords() {
            let oi = self.order(*i);
            if oi >= s {
                break;
            }
            for (j, y) in b.coords() {
                if oi + self.order(*j) > s {
                    break;
                }
                let consts = self.structure_constants(*i, *j);
                if consts.is_empty() {
                    continue;
                }
                if out.is_empty() {
                    out = vec![Rat::zero(); self.dim()];
                }
                let xy = x * y;
                for (m, c) in consts {
                    out[*m] += &xy * c;
                }
            }
        }
        LieElement::from_dense(self.key(), &out)
    }

    /// Dense bracket over an arbitrary coefficient ring.
    pub fn bracket_dense<C: Coeff>(&self, a: &[C], b: &[C]) -> Vec<C> {
        let t = self.dim();
        let s = self.s();
        let mut out = vec![C::nil(); t];
        for i in 0..t {
            if a[i].is_nil() {
                continue;
            }
            let oi = self.order(i);
            if oi >= s {
                break;
            }
            for j in 0..t {
                if oi + self.order(j) > s {
                    break;
                }
                if b[j].is_nil() {
                    continue;
                }
                let consts = self.structure_constants(i, j);
                if consts.is_empty() {
                    continue;
                }
                let prod = a[i].mul_ref(&b[j]);
                for (m, c) in consts {
                    out[*m].add_assign_ref(&prod.scale(c));
                }
            }
        }
        out
    }

    /// Uniform dilation: coordinate `j` is multiplied by `M^{|χ(j)|}`.
    pub fn dilate(&self, a: &LieElement, factor: &Rat) -> LieElement {
        LieElement::from_pairs(
            a.key(),
            a.coords()
                .iter()
                .map(|(j, q)| (*j, q * rat_pow(factor, self.order(*j) as u32))),
        )
    }

    /// Per-generator dilation: coordinate `j` is multiplied by `∏ M_i^{χ(j)_i}`.
    pub fn dilate_per_generator(&self, a: &LieElement, factors: &[Rat]) -> Result<LieElement> {
        if factors.len() != self.k() {
            return Err(Error::InvalidArgument(format!(
                "expected {} dilation factors, got {}",
                self.k(),
                factors.len()
            )));
        }
        Ok(LieElement::from_pairs(
            a.key(),
            a.coords()
                .iter()
                .map(|(j, q)| (*j, q * self.basis().weight(*j).rational_monomial(factors))),
        ))
    }

    /// Projection onto the weight space `V_χ`.
    pub fn weight_component(&self, a: &LieElement, chi: &WeightVector) -> LieElement {
        LieElement::from_pairs(
            a.key(),
            a.coords()
                .iter()
                .filter(|(j, _)| self.basis().weight(*j) == chi)
                .cloned(),
        )
    }

    /// Components of total order exactly `r`.
    pub fn order_component(&self, a: &LieElement, r: usize) -> LieElement {
        LieElement::from_pairs(
            a.key(),
            a.coords()
                .iter()
                .filter(|(j, _)| self.order(*j) == r)
                .cloned(),
        )
    }

    /// Images of every basic commutator of `shapes` once its generators are
    /// sent to `generators` (elements of `self`). This is the Lie algebra
    /// homomorphism `n_{k',s} → self` on the adapted basis.
    pub fn evaluate_shapes(
        &self,
        shapes: &HallBasis,
        generators: &[LieElement],
    ) -> Result<Vec<LieElement>> {
        if generators.len() != shapes.k() {
            return Err(Error::InvalidArgument(format!(
                "expected {} generator images, got {}",
                shapes.k(),
                generators.len()
            )));
        }
        for g in generators {
            self.check(g)?;
        }
        let mut images: Vec<LieElement> = Vec::with_capacity(shapes.len());
        for e in shapes.elements() {
            let image = match e.shape {
                Shape::Leaf(g) => generators[g].clone(),
                Shape::Node(l, r) => self.bracket_unchecked(&images[l], &images[r]),
            };
            images.push(image);
        }
        Ok(images)
    }
}

/// Hall rewriting of `[X_a, X_b]` with memoisation.
struct Rewriter<'a> {
    basis: &'a HallBasis,
    memo: HashMap<(usize, usize), Sparse>,
    depth: usize,
}

impl Rewriter<'_> {
    fn bracket(&mut self, a: usize, b: usize) -> Sparse {
        if a == b || self.basis.order(a) + self.basis.order(b) > self.basis.s() {
            return Vec::new();
        }
        if let Some(hit) = self.memo.get(&(a, b)) {
            return hit.clone();
        }
        self.depth += 1;
        assert!(self.depth < 100_000, "Hall rewriting did not terminate");
        let result = if a < b {
            self.bracket(b, a)
                .into_iter()
                .map(|(m, q)| (m, -q))
                .collect()
        } else if self.basis.is_hall_pair(a, b) {
            let m = self
                .basis
                .node_index(a, b)
                .expect("admissible pair of order <= s is basic");
            vec![(m, Rat::one())]
        } else {
            // a = [a1, a2] with b < a2: [[a1,a2],b] = [[a1,b],a2] + [a1,[a2,b]]
            let Shape::Node(a1, a2) = self.basis.get(a).shape else {
                unreachable!("leaf on the left always forms a Hall pair")
            };
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (m, q) in self.bracket(a1, b) {
                for (n, c) in self.bracket(m, a2) {
                    *acc.entry(n).or_insert_with(Rat::zero) += &q * &c;
                }
            }
            for (m, q) in self.bracket(a2, b) {
                for (n, c) in self.bracket(a1, m) {
                    *acc.entry(n).or_insert_with(Rat::zero) += &q * &c;
                }
            }
            acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
        };
        self.depth -= 1;
        self.memo.insert((a, b), result.clone());
        result
    }
}
