use super::coords::Factors;
use super::group::{GroupElement, NilGroup};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, Poly};
use crate::scalar::{int, Coeff, Rat};
use crate::setalg::Group;

/// Largest basis for which the collection polynomials are built.
pub const LATTICE_MAX_DIM: usize = 30;

/// The discrete group `Γ_{k,s} = {u_1^{n_1} … u_t^{n_t}}` in integer group
/// coordinates.
///
/// Multiplication and inversion are the collection polynomials
/// `(xy)_j = P_j(x, y)`, derived once symbolically from the BCH law and
/// then evaluated with checked `i128` arithmetic.
#[derive(Clone, Debug)]
pub struct LatticeGroup {
    t: usize,
    product: Vec<IntPoly>,
    inverse: Vec<IntPoly>,
    product_symbolic: Vec<Poly>,
    orders: Vec<usize>,
}

impl LatticeGroup {
    pub fn from_group(group: &NilGroup) -> Result<Self> {
        let t = group.dim();
        if t > LATTICE_MAX_DIM {
            return Err(Error::BasisTooLarge {
                k: group.k(),
                s: group.s(),
                t: t as u128,
                cap: LATTICE_MAX_DIM,
            });
        }
        let x: Vec<Poly> = (0..t).map(|j| Poly::var(j as u16)).collect();
        let y: Vec<Poly> = (0..t).map(|j| Poly::var((t + j) as u16)).collect();
        let lx = group.log_from_coords(Factors::Group, &x);
        let ly = group.log_from_coords(Factors::Group, &y);
        let product_symbolic = group.coords_from_log(Factors::Group, &group.combine(&lx, &ly));
        let neg: Vec<Poly> = lx.iter().map(|p| p.neg_ref()).collect();
        let inverse_symbolic = group.coords_from_log(Factors::Group, &neg);
        let clear = |p: &Poly| {
            IntPoly::from_poly(p).ok_or_else(|| {
                Error::OutOfRange("collection polynomial coefficient exceeds i128".into())
            })
        };
        Ok(LatticeGroup {
            t,
            product: product_symbolic.iter().map(clear).collect::<Result<_>>()?,
            inverse: inverse_symbolic.iter().map(clear).collect::<Result<_>>()?,
            product_symbolic,
            orders: (0..t).map(|j| group.algebra().order(j)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    /// The collection polynomials `P_j(x_1..x_t, y_1..y_t)`; variable `t + j`
    /// stands for `y_j`.
    pub fn product_polynomials(&self) -> &[Poly] {
        &self.product_symbolic
    }

    pub fn order(&self, j: usize) -> usize {
        self.orders[j]
    }

    pub fn try_mul(&self, x: &[i64], y: &[i64]) -> Option<Vec<i64>> {
        let mut point = Vec::with_capacity(2 * self.t);
        point.extend_from_slice(x);
        point.extend_from_slice(y);
        self.product.iter().map(|p| p.eval(&point)).collect()
    }

    pub fn try_inv(&self, x: &[i64]) -> Option<Vec<i64>> {
        self.inverse.iter().map(|p| p.eval(x)).collect()
    }

    pub fn unit(&self, j: usize) -> Vec<i64> {
        let mut v = vec![0; self.t];
        v[j] = 1;
        v
    }

    /// Converts to the BCH model.
    pub fn to_element(&self, group: &NilGroup, x: &[i64]) -> GroupElement {
        let coords: Vec<Rat> = x.iter().map(|n| int(*n)).collect();
        group
            .from_group_coords(&coords)
            .expect("lattice dimension matches the group")
    }

    /// Integer group coordinates, when `x ∈ Γ_{k,s}` and they fit an `i64`.
    pub fn from_element(&self, group: &NilGroup, x: &GroupElement) -> Option<Vec<i64>> {
        group
            .to_group_coords(x)
            .iter()
            .map(|q| {
                if q.is_integer() {
                    num_traits::ToPrimitive::to_i64(q.numer())
                } else {
                    None
                }
            })
            .collect()
    }
}

impl Group for LatticeGroup {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.t]
    }

    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        self.try_mul(a, b)
            .expect("lattice product overflowed i64 coordinates")
    }

    fn inv(&self, a: &Vec<i64>) -> Vec<i64> {
        self.try_inv(a)
            .expect("lattice inverse overflowed i64 coordinates")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;

    #[test]
    fn agrees_with_bch_model() {
        let g = NilGroup::new(2, 3, &Limits::default()).unwrap();
        let lat = g.lattice().unwrap();
        let x = vec![2, -1, 3, 0, 5];
        let y = vec![-1, 4, 1, -2, 1];
        let xy = lat.mul(&x, &y);
        let expect = g
            .mul(&lat.to_element(&g, &x), &lat.to_element(&g, &y))
            .unwrap();
        assert_eq!(lat.to_element(&g, &xy), expect);
        assert_eq!(lat.mul(&x, &lat.inv(&x)), lat.identity());
    }

    #[test]
    fn heisenberg_law() {
        let g = NilGroup::new(2, 2, &Limits::default()).unwrap();
        let lat = g.lattice().unwrap();
        // u2 u1 = u1 u2 [u2,u1]
        assert_eq!(lat.mul(&lat.unit(1), &lat.unit(0)), vec![1, 1, 1]);
        assert_eq!(lat.mul(&lat.unit(0), &lat.unit(1)), vec![1, 1, 0]);
    }
}
