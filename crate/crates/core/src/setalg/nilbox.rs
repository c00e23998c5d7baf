use rayon::prelude::*;

use super::finite::{Contains, FiniteSet};
use super::lie_sets::AlgSet;
use super::progression::ExponentBox;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{HallBasis, LieAlgebra, LieElement};
use crate::nilgroup::{GroupElement, NilGroup};
use crate::scalar::{int, rat_pow, Rat};

/// `𝔅(x; ρL, Q)` on generators `x_1..x_k` of some `n_{k',s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilboxSpec {
    pub generators: Vec<LieElement>,
    pub lengths: Vec<u64>,
    pub q: u64,
    pub rho: Rat,
}

impl NilboxSpec {
    pub fn new(generators: Vec<LieElement>, lengths: Vec<u64>) -> Self {
        NilboxSpec {
            generators,
            lengths,
            q: 1,
            rho: int(1),
        }
    }

    /// The free nilbox `𝔅(k,s; L)` on `X_1..X_k`.
    pub fn free(algebra: &LieAlgebra, lengths: Vec<u64>) -> Self {
        NilboxSpec::new(
            (0..algebra.k()).map(|i| algebra.generator(i)).collect(),
            lengths,
        )
    }

    pub fn with_q(mut self, q: u64) -> Self {
        self.q = q;
        self
    }

    pub fn with_rho(mut self, rho: Rat) -> Self {
        self.rho = rho;
        self
    }
}

/// `∏_j (2⌊(ρL)^{χ(j)}/Q⌋ + 1)`, the size of a free nilbox.
pub fn nilbox_cardinality(shapes: &HallBasis, lengths: &[u64], q: u64, rho: &Rat) -> Result<u128> {
    Ok(ExponentBox::from_lengths(shapes, lengths, q, rho)?.count())
}

/// All `Σ l_j X_j` with `X_j` the basic commutators evaluated on the spec's
/// generators and `l` in the exponent box of `shapes`.
pub fn enumerate_nilbox(
    algebra: &LieAlgebra,
    shapes: &HallBasis,
    spec: &NilboxSpec,
    limits: &Limits,
) -> Result<AlgSet> {
    let bx = ExponentBox::from_lengths(shapes, &spec.lengths, spec.q, &spec.rho)?;
    limits.check_set_size(bx.count())?;
    let images = algebra.evaluate_shapes(shapes, &spec.generators)?;
    let elems: Vec<LieElement> = bx
        .tuples()
        .into_par_iter()
        .map(|l| {
            let mut acc = algebra.zero();
            for (x, lj) in images.iter().zip(&l) {
                if *lj != 0 {
                    acc = acc.add_unchecked(&x.scale(&int(*lj)));
                }
            }
            acc
        })
        .collect();
    Ok(FiniteSet::from_vec(elems))
}

/// `exp` of an enumerated nilbox.
pub fn exp_set(group: &NilGroup, set: &AlgSet) -> Result<FiniteSet<GroupElement>> {
    set.iter()
        .map(|a| group.exp(a))
        .collect::<Result<Vec<_>>>()
        .map(FiniteSet::from_vec)
}

/// A nilbox on generators `M_1 X_1, …` whose basic commutators are the
/// rescaled basis vectors `∏ M_i^{χ(j)_i} X_j`; membership is read off the
/// coordinates. With all `M_i = 1` this is the free nilbox.
#[derive(Clone, Debug)]
pub struct FreeNilbox {
    key: crate::hall::BasisKey,
    bx: ExponentBox,
    scales: Vec<Rat>,
}

impl FreeNilbox {
    pub fn new(algebra: &LieAlgebra, lengths: &[u64], q: u64, rho: &Rat) -> Result<Self> {
        Self::dilated(algebra, lengths, q, rho, &int(1))
    }

    /// `𝔅(M X_1, …, M X_k; ρL, Q)`.
    pub fn dilated(
        algebra: &LieAlgebra,
        lengths: &[u64],
        q: u64,
        rho: &Rat,
        m: &Rat,
    ) -> Result<Self> {
        if *m == int(0) {
            return Err(Error::InvalidArgument(
                "dilation factor must be nonzero".into(),
            ));
        }
        let basis = algebra.basis();
        Ok(FreeNilbox {
            key: algebra.key(),
            bx: ExponentBox::from_lengths(basis, lengths, q, rho)?,
            scales: (0..basis.len())
                .map(|j| rat_pow(m, basis.order(j) as u32))
                .collect(),
        })
    }

    pub fn exponent_box(&self) -> &ExponentBox {
        &self.bx
    }

    pub fn count(&self) -> u128 {
        self.bx.count()
    }

    pub fn contains_log(&self, a: &LieElement) -> bool {
        if a.key() != self.key {
            return false;
        }
        let l: Vec<Rat> = (0..self.scales.len())
            .map(|j| a.coord(j) / &self.scales[j])
            .collect();
        self.bx.contains_rational(&l)
    }
}

impl Contains<LieElement> for FreeNilbox {
    fn contains_elem(&self, e: &LieElement) -> bool {
        self.contains_log(e)
    }
}

/// Membership of `exp(𝔅)`.
impl Contains<GroupElement> for FreeNilbox {
    fn contains_elem(&self, e: &GroupElement) -> bool {
        self.contains_log(e.log())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_nilbox_sizes() {
        let lim = Limits::default();
        let a1 = LieAlgebra::new(1, 1, &lim).unwrap();
        let b = enumerate_nilbox(&a1, a1.basis(), &NilboxSpec::free(&a1, vec![3]), &lim).unwrap();
        assert_eq!(b.len(), 7);
        let a = LieAlgebra::new(2, 2, &lim).unwrap();
        let spec = NilboxSpec::free(&a, vec![2, 2]);
        assert_eq!(
            enumerate_nilbox(&a, a.basis(), &spec, &lim).unwrap().len(),
            225
        );
        let spec = spec.with_q(2);
        let b = enumerate_nilbox(&a, a.basis(), &spec, &lim).unwrap();
        assert_eq!(b.len(), 45);
        assert_eq!(
            nilbox_cardinality(a.basis(), &[2, 2], 2, &int(1)).unwrap(),
            45
        );
        let region = FreeNilbox::new(&a, &[2, 2], 2, &int(1)).unwrap();
        assert!(b.is_subset(&region));
        assert!(!region.contains_log(&a.generator(0)));
    }

    #[test]
    fn dilated_generators() {
        let lim = Limits::default();
        let a = LieAlgebra::new(2, 2, &lim).unwrap();
        let m = int(2);
        let gens = vec![a.generator(0).scale(&m), a.generator(1).scale(&m)];
        let b = enumerate_nilbox(&a, a.basis(), &NilboxSpec::new(gens, vec![1, 1]), &lim).unwrap();
        let region = FreeNilbox::dilated(&a, &[1, 1], 1, &int(1), &m).unwrap();
        assert_eq!(b.len() as u128, region.count());
        assert!(b.is_subset(&region));
        assert!(b.contains(&a.basis_element(2).scale(&int(4))));
    }
}
