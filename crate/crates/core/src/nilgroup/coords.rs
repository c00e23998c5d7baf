use num_traits::One;

use super::group::{GroupElement, NilGroup};
use crate::error::{Error, Result};
use crate::hall::LieElement;
use crate::scalar::{Coeff, Rat};

/// Which ordered factorisation a coordinate vector refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factors {
    /// `x = u_1^{x_1} … u_t^{x_t}`.
    Group,
    /// `x = exp(x''_1 X_1) … exp(x''_t X_t)`.
    TypeTwo,
}

impl NilGroup {
    fn factor_log(&self, kind: Factors, j: usize) -> Vec<(usize, Rat)> {
        match kind {
            Factors::Group => self.u_dense()[j]
                .iter()
                .enumerate()
                .filter(|(_, q)| !num_traits::Zero::is_zero(*q))
                .map(|(m, q)| (m, q.clone()))
                .collect(),
            Factors::TypeTwo => vec![(j, Rat::one())],
        }
    }

    /// Logarithm of `∏_j f_j^{c_j}` for dense coordinates `c`.
    pub fn log_from_coords<C: Coeff>(&self, kind: Factors, coords: &[C]) -> Vec<C> {
        let t = self.dim();
        let mut acc: Vec<C> = vec![C::nil(); t];
        for (j, c) in coords.iter().enumerate() {
            if c.is_nil() {
                continue;
            }
            let mut factor = vec![C::nil(); t];
            for (m, q) in self.factor_log(kind, j) {
                factor[m] = c.scale(&q);
            }
            acc = self.combine(&acc, &factor);
        }
        acc
    }

    /// Inverse of [`log_from_coords`](Self::log_from_coords).
    ///
    /// Peels one factor at a time from the left, in basis order. Every factor
    /// `f_j` has logarithm `X_j` plus terms of strictly higher order, so once
    /// the factors before `j` are removed the `X_j` coefficient of what
    /// remains is exactly `c_j`.
    pub fn coords_from_log<C: Coeff>(&self, kind: Factors, log: &[C]) -> Vec<C> {
        let t = self.dim();
        let mut rest = log.to_vec();
        let mut out = vec![C::nil(); t];
        for j in 0..t {
            let c = rest[j].clone();
            if c.is_nil() {
                continue;
            }
            let mut factor = vec![C::nil(); t];
            for (m, q) in self.factor_log(kind, j) {
                factor[m] = c.scale(&-q);
            }
            rest = self.combine(&factor, &rest);
            debug_assert!(rest[j].is_nil());
            out[j] = c;
        }
        out
    }

    /// Group coordinates `ψ_gp(x)`.
    pub fn to_group_coords(&self, x: &GroupElement) -> Vec<Rat> {
        self.coords_from_log(Factors::Group, &x.log().to_dense(self.dim()))
    }

    pub fn from_group_coords(&self, coords: &[Rat]) -> Result<GroupElement> {
        self.from_coords(Factors::Group, coords)
    }

    /// Exponential coordinates of type II.
    pub fn to_type2_coords(&self, x: &GroupElement) -> Vec<Rat> {
        self.coords_from_log(Factors::TypeTwo, &x.log().to_dense(self.dim()))
    }

    pub fn from_type2_coords(&self, coords: &[Rat]) -> Result<GroupElement> {
        self.from_coords(Factors::TypeTwo, coords)
    }

    fn from_coords(&self, kind: Factors, coords: &[Rat]) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        let log = self.log_from_coords(kind, coords);
        Ok(GroupElement::from_log(LieElement::from_dense(
            self.key(),
            &log,
        )))
    }

    /// Algebra coordinates `ψ_alg(x)`: the dense logarithm.
    pub fn to_alg_coords(&self, x: &GroupElement) -> Vec<Rat> {
        x.log().to_dense(self.dim())
    }

    pub fn from_alg_coords(&self, coords: &[Rat]) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        Ok(GroupElement::from_log(LieElement::from_dense(
            self.key(),
            coords,
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::scalar::{int, rat};

    #[test]
    fn sum_of_generators_in_group_coordinates() {
        let g = NilGroup::new(2, 2, &Limits::default()).unwrap();
        let x = g
            .exp(&g.algebra().element(vec![(0, int(1)), (1, int(1))]).unwrap())
            .unwrap();
        let gp = g.to_group_coords(&x);
        assert_eq!(gp, vec![int(1), int(1), rat(1, 2)]);
        assert_eq!(g.from_group_coords(&gp).unwrap(), x);
        let t2 = g.to_type2_coords(&x);
        assert_eq!(t2, vec![int(1), int(1), rat(1, 2)]);
        assert_eq!(g.from_type2_coords(&t2).unwrap(), x);
    }

    #[test]
    fn factors_have_unit_coordinates() {
        let g = NilGroup::new(3, 3, &Limits::default()).unwrap();
        for j in 0..g.dim() {
            let mut unit = vec![int(0); g.dim()];
            unit[j] = int(1);
            assert_eq!(g.to_group_coords(&g.u(j)), unit);
            let xj = g.exp(&g.algebra().basis_element(j)).unwrap();
            assert_eq!(g.to_type2_coords(&xj), unit);
        }
        assert_eq!(g.to_group_coords(&g.identity()), vec![int(0); g.dim()]);
    }
}
