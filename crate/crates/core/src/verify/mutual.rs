use serde::Serialize;

use super::cover::control_witness;
use super::growth::show;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::nilgroup::NilGroup;
use crate::scalar::{int, rat_pow, Rat};
use crate::setalg::{
    enumerate_nilbox, exp_set, nilbox_cardinality, FiniteSet, FreeProgression, Group, NilboxSpec,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairControl {
    /// Greedy constant of the larger set by the smaller.
    pub forward: usize,
    /// Greedy constant of the smaller set by the larger.
    pub backward: usize,
    pub gamma: usize,
    pub certified: bool,
}

fn pair_control<G: Group>(
    group: &G,
    big: &FiniteSet<G::Elem>,
    small: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<PairControl> {
    let f = control_witness(group, big, small, limits)?;
    let b = control_witness(group, small, big, limits)?;
    Ok(PairControl {
        forward: f.k,
        backward: b.k,
        gamma: f.k.max(b.k),
        certified: f.certified && b.certified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutualControlReport {
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub lengths: Vec<u64>,
    pub lambda: String,
    pub q: u64,
    pub q_prime: u64,
    /// `|𝔅(L;Q)|` from the product formula.
    pub big_count: u128,
    /// `|𝔅(λL;Q′)|` from the product formula.
    pub small_count: u128,
    /// Formula agrees with enumeration of both nilboxes and both progressions.
    pub counts_match: bool,
    pub ratio: String,
    /// `(1 + Q′/(λQ))^{-t}`.
    pub ratio_bound: String,
    pub ratio_holds: bool,
    pub nilbox_control: PairControl,
    pub progression_control: PairControl,
    pub holds: bool,
}

/// Sizes and greedy mutual control of `𝔅(L;Q)` against `𝔅(λL;Q′)`, in
/// the exponentiated and the progression forms.
pub fn mutual_control_suite(
    k: usize,
    s: usize,
    lengths: &[u64],
    lambda: &Rat,
    q: u64,
    q_prime: u64,
    limits: &Limits,
) -> Result<MutualControlReport> {
    if q == 0 || q_prime % q != 0 {
        return Err(Error::InvalidArgument(format!(
            "Q = {q} must divide Q' = {q_prime}"
        )));
    }
    let group = NilGroup::new(k, s, limits)?;
    let algebra = group.algebra();
    let basis = algebra.basis();
    let t = basis.len();
    let big_count = nilbox_cardinality(basis, lengths, q, &int(1))?;
    let small_count = nilbox_cardinality(basis, lengths, q_prime, lambda)?;

    let nilbox = |q: u64, rho: &Rat| -> Result<FiniteSet<_>> {
        let spec = NilboxSpec::free(algebra, lengths.to_vec())
            .with_q(q)
            .with_rho(rho.clone());
        exp_set(&group, &enumerate_nilbox(algebra, basis, &spec, limits)?)
    };
    let big = nilbox(q, &int(1))?;
    let small = nilbox(q_prime, lambda)?;
    let lattice = group.lattice()?;
    let p_big = FreeProgression::new(&group, lengths, q, &int(1))?.lattice_points(limits)?;
    let p_small = FreeProgression::new(&group, lengths, q_prime, lambda)?.lattice_points(limits)?;
    let counts_match = [big.len(), p_big.len()]
        .iter()
        .all(|n| *n as u128 == big_count)
        && [small.len(), p_small.len()]
            .iter()
            .all(|n| *n as u128 == small_count);

    let ratio = Rat::new((small_count as i64).into(), (big_count as i64).into());
    let base = int(1)
        + Rat::from_integer((q_prime as i64).into())
            / (lambda * Rat::from_integer((q as i64).into()));
    let ratio_bound = rat_pow(&base, t as u32).recip();
    let ratio_holds = ratio >= ratio_bound;

    let nilbox_control = pair_control(&group, &big, &small, limits)?;
    let progression_control = pair_control(lattice.as_ref(), &p_big, &p_small, limits)?;
    let holds =
        counts_match && ratio_holds && nilbox_control.certified && progression_control.certified;
    Ok(MutualControlReport {
        k,
        s,
        t,
        lengths: lengths.to_vec(),
        lambda: show(lambda),
        q,
        q_prime,
        big_count,
        small_count,
        counts_match,
        ratio: show(&ratio),
        ratio_bound: show(&ratio_bound),
        ratio_holds,
        nilbox_control,
        progression_control,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilationReport {
    pub k: usize,
    pub s: usize,
    pub lengths: Vec<u64>,
    pub m: u64,
    pub size: usize,
    pub dilated_size: usize,
    /// Greedy mutual control of `exp𝔅(X;L)` and `exp𝔅(MX;L)`.
    pub control: PairControl,
}

/// Mutual control between the nilbox on `X_i` and the one on `M·X_i`.
pub fn dilation_control(
    k: usize,
    s: usize,
    lengths: &[u64],
    m: u64,
    limits: &Limits,
) -> Result<DilationReport> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "dilation factor must be positive".into(),
        ));
    }
    let group = NilGroup::new(k, s, limits)?;
    let algebra = group.algebra();
    let scale = int(m as i64);
    let plain = NilboxSpec::free(algebra, lengths.to_vec());
    let dilated = NilboxSpec::new(
        (0..k).map(|i| algebra.generator(i).scale(&scale)).collect(),
        lengths.to_vec(),
    );
    let a = exp_set(
        &group,
        &enumerate_nilbox(algebra, algebra.basis(), &plain, limits)?,
    )?;
    let b = exp_set(
        &group,
        &enumerate_nilbox(algebra, algebra.basis(), &dilated, limits)?,
    )?;
    Ok(DilationReport {
        k,
        s,
        lengths: lengths.to_vec(),
        m,
        size: a.len(),
        dilated_size: b.len(),
        control: pair_control(&group, &b, &a, limits)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn equal_parameters_give_ratio_one() {
        let r = mutual_control_suite(2, 2, &[1, 1], &int(1), 1, 1, &Limits::default()).unwrap();
        assert_eq!(r.ratio, "1/1");
        assert!(r.holds);
        assert_eq!(r.nilbox_control.gamma, 1);
    }

    #[test]
    fn divisibility_is_required() {
        assert!(mutual_control_suite(2, 2, &[1, 1], &rat(1, 2), 2, 3, &Limits::default()).is_err());
    }
}
