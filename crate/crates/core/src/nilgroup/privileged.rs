use serde::Serialize;

use super::coords::Factors;
use super::group::NilGroup;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Coeff;

/// Largest basis handled by the symbolic profile.
pub const PROFILE_MAX_DIM: usize = 30;

/// Observed shape of one coordinate `φ(x)_j = x_j + P_j(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateProfile {
    /// 1-based basis index.
    pub index: usize,
    pub order: usize,
    pub weight: Vec<u32>,
    /// 1-based indices of the variables `P_j` depends on.
    pub depends_on: Vec<usize>,
    /// `deg(P_j)`, absent when `P_j = 0`.
    pub degree: Option<u64>,
    /// `deg_i(P_j)` for each generator `i`.
    pub generator_degrees: Vec<Option<u64>>,
    pub terms: usize,
    pub triangular: bool,
    pub degree_bounded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionProfile {
    /// `"gp->alg"` or `"alg->gp"`.
    pub direction: String,
    pub coordinates: Vec<CoordinateProfile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrivilegedProfile {
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub directions: Vec<DirectionProfile>,
}

impl PrivilegedProfile {
    pub fn holds(&self) -> bool {
        self.violation().is_none()
    }

    /// First coordinate breaking triangularity or the degree bounds.
    pub fn violation(&self) -> Option<String> {
        for d in &self.directions {
            for c in &d.coordinates {
                if !c.triangular {
                    return Some(format!(
                        "{}: P_{} depends on {:?}, not all of order below {}",
                        d.direction, c.index, c.depends_on, c.order
                    ));
                }
                if !c.degree_bounded {
                    return Some(format!(
                        "{}: P_{} has generator degrees {:?} above weight {:?}",
                        d.direction, c.index, c.generator_degrees, c.weight
                    ));
                }
            }
        }
        None
    }
}

/// Symbolic profile of the maps `ψ_gp ↔ ψ_alg` on `N_{k,s}`.
///
/// Feeds indeterminates `x_1..x_t` through the group law, so each `P_j` is
/// obtained exactly as a polynomial; then checks that `P_j` involves only
/// variables of lower order and that `deg_i(P_j) ≤ χ(j)_i`.
pub fn privileged_change_profile(k: usize, s: usize, limits: &Limits) -> Result<PrivilegedProfile> {
    let group = NilGroup::new(k, s, limits)?;
    let t = group.dim();
    if t > PROFILE_MAX_DIM {
        return Err(Error::BasisTooLarge {
            k,
            s,
            t: t as u128,
            cap: PROFILE_MAX_DIM,
        });
    }
    let vars: Vec<Poly> = (0..t).map(|j| Poly::var(j as u16)).collect();
    let forward = group.log_from_coords(Factors::Group, &vars);
    let backward = group.coords_from_log(Factors::Group, &vars);
    Ok(PrivilegedProfile {
        k,
        s,
        t,
        directions: vec![
            profile_direction(&group, "gp->alg", &forward),
            profile_direction(&group, "alg->gp", &backward),
        ],
    })
}

fn profile_direction(group: &NilGroup, name: &str, images: &[Poly]) -> DirectionProfile {
    let basis = group.algebra().basis();
    let k = group.k();
    let coordinates = images
        .iter()
        .enumerate()
        .map(|(j, image)| {
            let mut p = image.clone();
            p.sub_assign_ref(&Poly::var(j as u16));
            let order = basis.order(j);
            let depends_on: Vec<usize> = p.variables().iter().map(|v| *v as usize).collect();
            let triangular = depends_on.iter().all(|l| basis.order(*l) < order);
            let degree = p.weighted_degree(|v| basis.order(v as usize) as u64);
            let generator_degrees: Vec<Option<u64>> = (0..k)
                .map(|i| p.weighted_degree(|v| basis.weight(v as usize).entries()[i] as u64))
                .collect();
            let weight = basis.weight(j).entries().to_vec();
            let degree_bounded = generator_degrees
                .iter()
                .zip(&weight)
                .all(|(d, w)| d.map_or(true, |d| d <= *w as u64));
            CoordinateProfile {
                index: j + 1,
                order,
                weight,
                depends_on: depends_on.iter().map(|l| l + 1).collect(),
                degree,
                generator_degrees,
                terms: p.len(),
                triangular,
                degree_bounded,
            }
        })
        .collect();
    DirectionProfile {
        direction: name.to_string(),
        coordinates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_generator_is_identity() {
        let p = privileged_change_profile(1, 3, &Limits::default()).unwrap();
        assert!(p.directions.iter().all(|d| d.coordinates[0].terms == 0));
    }

    #[test]
    fn two_generators_step_two() {
        let p = privileged_change_profile(2, 2, &Limits::default()).unwrap();
        assert!(p.holds());
        let fwd = &p.directions[0].coordinates;
        assert_eq!(fwd[0].terms, 0);
        assert_eq!(fwd[1].terms, 0);
        assert_eq!(fwd[2].depends_on, vec![1, 2]);
        assert_eq!(fwd[2].degree, Some(2));
    }

    #[test]
    fn order_three_depends_on_lower_orders() {
        let p = privileged_change_profile(2, 3, &Limits::default()).unwrap();
        assert!(p.holds(), "{:?}", p.violation());
        for d in &p.directions {
            for c in d.coordinates.iter().filter(|c| c.order == 3) {
                assert!(c.depends_on.iter().all(|l| *l <= 3));
            }
        }
    }
}
