use num_traits::{One, Zero};

use super::group::{GroupElement, NilGroup};
use crate::error::{Error, Result};
use crate::hall::{BasisKey, Shape};
use crate::scalar::{rat, Rat};
use crate::setalg::Group;

pub type Matrix3 = [[Rat; 3]; 3];

fn zero3() -> Matrix3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()))
}

fn identity3() -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() }))
}

fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(Rat::zero(), |acc, m| acc + &a[i][m] * &b[m][j]))
    })
}

fn add(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]))
}

fn scale(a: &Matrix3, q: &Rat) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * q))
}

/// Image of `x ∈ N_{2,2}` in the upper unitriangular `3×3` matrices under
/// `X1 ↦ E12`, `X2 ↦ E23`, by the exact exponential of the image of `log x`.
pub fn heisenberg_matrix(group: &NilGroup, x: &GroupElement) -> Result<Matrix3> {
    if group.key() != BasisKey::new(2, 2) {
        return Err(Error::WrongBasis {
            expected: "n_{2,2}".into(),
            found: group.key(),
        });
    }
    group.check(x)?;
    let basis = group.algebra().basis();
    let mut images: Vec<Matrix3> = Vec::with_capacity(basis.len());
    for e in basis.elements() {
        let m = match e.shape {
            Shape::Leaf(g) => {
                let mut m = zero3();
                m[g][g + 1] = Rat::one();
                m
            }
            Shape::Node(l, r) => {
                let ab = matmul(&images[l], &images[r]);
                let ba = matmul(&images[r], &images[l]);
                add(&ab, &scale(&ba, &-Rat::one()))
            }
        };
        images.push(m);
    }
    let mut n = zero3();
    for (j, q) in x.log().coords() {
        n = add(&n, &scale(&images[*j], q));
    }
    // N is strictly upper triangular, so N^3 = 0.
    let n2 = matmul(&n, &n);
    Ok(add(&add(&identity3(), &n), &scale(&n2, &rat(1, 2))))
}

/// The integer Heisenberg group of matrices `(1 x z; 0 1 y; 0 0 1)`,
/// stored as `[x, y, z]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Heisenberg;

impl Heisenberg {
    pub fn u1(&self) -> [i64; 3] {
        [1, 0, 0]
    }

    pub fn u2(&self) -> [i64; 3] {
        [0, 1, 0]
    }
}

impl Group for Heisenberg {
    type Elem = [i64; 3];

    fn identity(&self) -> [i64; 3] {
        [0, 0, 0]
    }

    fn mul(&self, a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]]
    }

    fn inv(&self, a: &[i64; 3]) -> [i64; 3] {
        [-a[0], -a[1], a[0] * a[1] - a[2]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::scalar::int;

    #[test]
    fn displayed_matrices() {
        let g = NilGroup::new(2, 2, &Limits::default()).unwrap();
        assert_eq!(heisenberg_matrix(&g, &g.identity()).unwrap(), identity3());
        let u1 = heisenberg_matrix(&g, &g.generator(0)).unwrap();
        let mut expect = identity3();
        expect[0][1] = int(1);
        assert_eq!(u1, expect);
        let c = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
        let mut expect = identity3();
        expect[0][2] = int(1);
        assert_eq!(heisenberg_matrix(&g, &c).unwrap(), expect);
    }

    #[test]
    fn image_is_a_homomorphism() {
        let g = NilGroup::new(2, 2, &Limits::default()).unwrap();
        let x = g
            .exp(
                &g.algebra()
                    .element(vec![(0, int(2)), (1, rat(-1, 3)), (2, int(5))])
                    .unwrap(),
            )
            .unwrap();
        let y = g
            .exp(
                &g.algebra()
                    .element(vec![(0, rat(1, 2)), (1, int(4))])
                    .unwrap(),
            )
            .unwrap();
        let lhs = heisenberg_matrix(&g, &g.mul(&x, &y).unwrap()).unwrap();
        let rhs = matmul(
            &heisenberg_matrix(&g, &x).unwrap(),
            &heisenberg_matrix(&g, &y).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wrong_group_is_rejected() {
        let g = NilGroup::new(2, 3, &Limits::default()).unwrap();
        assert!(matches!(
            heisenberg_matrix(&g, &g.identity()),
            Err(Error::WrongBasis { .. })
        ));
    }

    #[test]
    fn integer_group_law() {
        let h = Heisenberg;
        let c = h.mul(
            &h.mul(&h.inv(&h.u1()), &h.inv(&h.u2())),
            &h.mul(&h.u1(), &h.u2()),
        );
        assert_eq!(c, [0, 0, 1]);
        let a = [3, -2, 7];
        assert_eq!(h.mul(&a, &h.inv(&a)), h.identity());
    }
}
