use num_traits::{One, Zero};

use crate::config::Limits;
use crate::hall::assoc::{AssocModel, AssocPoly};
use crate::hall::{HallBasis, LieAlgebra, Shape};
use crate::scalar::{rat, Coeff, Rat};

/// Truncated Baker-Campbell-Hausdorff product for a fixed step `s`.
///
/// The series `log(exp(X) exp(Y))` is computed once in the free associative
/// algebra on two letters and projected onto the Hall basis of `n_{2,s}`.
/// Multiplying two elements of any `n_{k,s}` then amounts to substituting
/// them for `X`, `Y` in those basic commutators.
#[derive(Clone, Debug)]
pub struct BchEngine {
    two: LieAlgebra,
    coefficients: Vec<Rat>,
}

impl BchEngine {
    pub fn new(s: usize) -> Self {
        let limits = Limits {
            max_step: s.max(1),
            ..Limits::default()
        };
        let two = LieAlgebra::new(2, s, &limits).expect("n_{2,s} fits the default caps");
        let model = AssocModel::new(&two);
        let x = AssocPoly::letter(s, 0);
        let y = AssocPoly::letter(s, 1);
        let z = x.exp().mul(&y.exp()).log();
        let coefficients = model.project(&z);
        let engine = BchEngine { two, coefficients };
        engine.check_low_orders();
        engine
    }

    /// Sanity gate: `X + Y + ½[X,Y]` through order 2, i.e. `-½` on `[X2,X1]`.
    fn check_low_orders(&self) {
        let c = &self.coefficients;
        assert!(
            c[0].is_one() && c[1].is_one(),
            "BCH linear terms must be X + Y"
        );
        if self.two.s() >= 2 {
            assert_eq!(c[2], rat(-1, 2), "BCH quadratic term must be ½[X,Y]");
        }
    }

    pub fn step(&self) -> usize {
        self.two.s()
    }

    /// Hall basis of `n_{2,s}` indexing [`coefficients`](Self::coefficients).
    pub fn series_basis(&self) -> &HallBasis {
        self.two.basis()
    }

    pub fn series_algebra(&self) -> &LieAlgebra {
        &self.two
    }

    /// Coefficients of `log(exp X exp Y)` over the Hall basis of `n_{2,s}`,
    /// with `X = X1`, `Y = X2`.
    pub fn coefficients(&self) -> &[Rat] {
        &self.coefficients
    }

    /// Dense BCH product in `algebra`, over any coefficient ring.
    pub fn combine<C: Coeff>(&self, algebra: &LieAlgebra, a: &[C], b: &[C]) -> Vec<C> {
        let t = algebra.dim();
        let a_zero = a.iter().all(|c| c.is_nil());
        let b_zero = b.iter().all(|c| c.is_nil());
        if a_zero {
            return b.to_vec();
        }
        if b_zero {
            return a.to_vec();
        }
        let shapes = self.two.basis();
        let mut values: Vec<Option<Vec<C>>> = Vec::with_capacity(shapes.len());
        let mut out: Vec<C> = a.to_vec();
        for (o, x) in out.iter_mut().zip(b) {
            o.add_assign_ref(x);
        }
        for e in shapes.elements() {
            let value = match e.shape {
                Shape::Leaf(0) => Some(a.to_vec()),
                Shape::Leaf(_) => Some(b.to_vec()),
                Shape::Node(l, r) => match (&values[l], &values[r]) {
                    (Some(x), Some(y)) => {
                        let v = algebra.bracket_dense(x, y);
                        if v.iter().all(|c| c.is_nil()) {
                            None
                        } else {
                            Some(v)
                        }
                    }
                    _ => None,
                },
            };
            if e.index >= 2 {
                let c = &self.coefficients[e.index];
                if let (Some(v), false) = (&value, c.is_nil()) {
                    for (o, x) in out.iter_mut().zip(v) {
                        o.add_assign_ref(&x.scale(c));
                    }
                }
            }
            values.push(value);
        }
        debug_assert_eq!(out.len(), t);
        out
    }

    /// Number of nonzero series coefficients of each order, for reporting.
    pub fn nonzero_by_order(&self) -> Vec<usize> {
        let basis = self.two.basis();
        (1..=basis.s())
            .map(|r| {
                basis
                    .order_range(r)
                    .filter(|i| !self.coefficients[*i].is_zero())
                    .count()
            })
            .collect()
    }
}
