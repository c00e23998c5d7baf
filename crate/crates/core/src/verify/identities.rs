use crate::error::{Error, Result};
use crate::nilgroup::{GroupElement, NilGroup};
use crate::scalar::{int, rat, Rat};

fn require_two_step(group: &NilGroup) -> Result<()> {
    if group.s() != 2 {
        return Err(Error::InvalidArgument(format!(
            "identity is stated for s = 2, got s = {}",
            group.s()
        )));
    }
    Ok(())
}

/// `exp(log x + log y) = x·y·[x,y]^{-1/2}` in a 2-step group.
pub fn lazard_check(group: &NilGroup, x: &GroupElement, y: &GroupElement) -> Result<bool> {
    require_two_step(group)?;
    let sum = x.log().try_add(y.log())?;
    let lhs = group.exp(&sum)?;
    let c = group.commutator(x, y)?;
    let rhs = group.mul(&group.mul(x, y)?, &group.pow(&c, &rat(-1, 2)))?;
    Ok(lhs == rhs)
}

/// `(xy)^n = x^n y^n [y,x]^{n(n-1)/2}` in a 2-step group.
pub fn hall_petresco_check(
    group: &NilGroup,
    x: &GroupElement,
    y: &GroupElement,
    n: i64,
) -> Result<bool> {
    require_two_step(group)?;
    let lhs = group.pow(&group.mul(x, y)?, &int(n));
    let c = group.commutator(y, x)?;
    let rhs = group.mul(
        &group.mul(&group.pow(x, &int(n)), &group.pow(y, &int(n)))?,
        &group.pow(&c, &int(n * (n - 1) / 2)),
    )?;
    Ok(lhs == rhs)
}

/// Lagrange interpolation through `(nodes[i], values[i])`, evaluated at `at`.
pub fn interpolate(nodes: &[Rat], values: &[Rat], at: &Rat) -> Rat {
    let mut total = int(0);
    for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
        let mut term = yi.clone();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                term = term * (at - xj) / (xi - xj);
            }
        }
        total += term;
    }
    total
}

/// Group coordinates of `x^η` are polynomials of degree at most `s` in `η`:
/// interpolating through `η = 0, …, s` predicts `x^η` at other rational
/// points exactly.
pub fn pow_polynomiality_check(group: &NilGroup, x: &GroupElement, probes: &[Rat]) -> bool {
    let s = group.s() as i64;
    let nodes: Vec<Rat> = (0..=s).map(int).collect();
    let samples: Vec<Vec<Rat>> = nodes
        .iter()
        .map(|e| group.to_group_coords(&group.pow(x, e)))
        .collect();
    probes.iter().all(|eta| {
        let actual = group.to_group_coords(&group.pow(x, eta));
        (0..group.dim()).all(|j| {
            let values: Vec<Rat> = samples.iter().map(|c| c[j].clone()).collect();
            interpolate(&nodes, &values, eta) == actual[j]
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;

    #[test]
    fn generators_satisfy_identities() {
        let lim = Limits::default();
        let g = NilGroup::new(2, 2, &lim).unwrap();
        let (x, y) = (g.generator(0), g.generator(1));
        assert!(lazard_check(&g, &x, &y).unwrap());
        for n in 2..=5 {
            assert!(hall_petresco_check(&g, &x, &y, n).unwrap());
        }
        let xy2 = g.pow(&g.mul(&x, &y).unwrap(), &int(2));
        let naive = g.mul(&g.pow(&x, &int(2)), &g.pow(&y, &int(2))).unwrap();
        assert_ne!(xy2, naive);
        let g3 = NilGroup::new(2, 3, &lim).unwrap();
        assert!(lazard_check(&g3, &g3.generator(0), &g3.generator(1)).is_err());
        let z = g3.mul(&g3.generator(0), &g3.generator(1)).unwrap();
        assert!(pow_polynomiality_check(
            &g3,
            &z,
            &[int(4), rat(1, 2), rat(-1, 3)]
        ));
    }
}
