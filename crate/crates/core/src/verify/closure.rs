use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{LieAlgebra, LieElement};
use crate::scalar::int;
use crate::setalg::{
    bracket_set, completion_progression, decompose_integer, dilate_set, nilcompletion,
    sumset_subset_witness, AlgProgression, AlgSet, FiniteSet,
};

/// `b` with `0` and `size - 1` random elements whose coordinates lie in
/// `{-1, 0, 1}`.
///
/// Zero stands in for shapes that do not occur when a bracket of two sums
/// is expanded, which both closure properties rely on.
pub fn random_alg_set(algebra: &LieAlgebra, size: usize, rng: &mut impl Rng) -> AlgSet {
    let t = algebra.dim();
    let mut elems = vec![algebra.zero()];
    while elems.len() < size.max(1) {
        let dense: Vec<_> = (0..t).map(|_| int(rng.gen_range(-1..=1))).collect();
        let e = LieElement::from_dense(algebra.key(), &dense);
        if !elems.contains(&e) {
            elems.push(e);
        }
    }
    FiniteSet::from_vec(elems)
}

/// Drops the top-order coordinates, which are central and so do not affect
/// brackets.
fn modulo_center(algebra: &LieAlgebra, set: &AlgSet) -> AlgSet {
    let top = algebra.basis().order_range(algebra.s());
    set.map(|a| {
        LieElement::from_pairs(
            algebra.key(),
            a.coords().iter().filter(|(j, _)| !top.contains(j)).cloned(),
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureInstance {
    pub b: Vec<String>,
    pub completion_size: usize,
    /// `[b̄, b̄] ⊆ b̄`.
    pub bracket_closed: bool,
    pub bracket_witness: Option<String>,
    /// `\overline{mb} ⊆ m^s b̄`, when checked.
    pub sumset_compatible: Option<bool>,
    pub sumset_witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub k: usize,
    pub s: usize,
    pub seed: u64,
    pub max_size: usize,
    pub m: Option<usize>,
    pub instances: Vec<ClosureInstance>,
    pub holds: bool,
}

/// `[b̄, b̄] ⊆ b̄`, and with `m` given also `\overline{mb} ⊆ m^s b̄`.
pub fn closure_check(
    algebra: &LieAlgebra,
    b: &AlgSet,
    m: Option<usize>,
    limits: &Limits,
) -> Result<ClosureInstance> {
    let bar = nilcompletion(algebra, b, limits)?;
    let reduced = modulo_center(algebra, &bar);
    let brackets = bracket_set(algebra, &reduced, &reduced, limits)?;
    let bracket_witness = brackets.subset_witness(&bar);
    let (sumset_compatible, sumset_witness) = match m {
        None => (None, None),
        Some(m) => {
            let lhs = nilcompletion(algebra, &dilate_set(algebra, b, m, limits)?, limits)?;
            let w = sumset_subset_witness(algebra, &lhs, &bar, m.pow(algebra.s() as u32), limits)?;
            (Some(w.is_none()), w.map(|e| e.to_string()))
        }
    };
    Ok(ClosureInstance {
        b: b.iter().map(|e| e.to_string()).collect(),
        completion_size: bar.len(),
        bracket_closed: bracket_witness.is_none(),
        bracket_witness: bracket_witness.map(|e| e.to_string()),
        sumset_compatible,
        sumset_witness,
    })
}

/// Runs [`closure_check`] on `trials` seeded random sets of size at most
/// `max_size`.
pub fn closure_suite(
    k: usize,
    s: usize,
    trials: usize,
    max_size: usize,
    m: Option<usize>,
    seed: u64,
    limits: &Limits,
) -> Result<ClosureReport> {
    let algebra = LieAlgebra::new(k, s, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::with_capacity(trials);
    for _ in 0..trials {
        let size = rng.gen_range(1..=max_size.max(1));
        let b = random_alg_set(&algebra, size, &mut rng);
        instances.push(closure_check(&algebra, &b, m, limits)?);
    }
    let holds = instances
        .iter()
        .all(|i| i.bracket_closed && i.sumset_compatible != Some(false));
    Ok(ClosureReport {
        k,
        s,
        seed,
        max_size,
        m,
        instances,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletionReport {
    pub k: usize,
    pub s: usize,
    pub lengths: Vec<u64>,
    pub p_size: usize,
    pub completion_size: usize,
    pub q_dim: usize,
    pub q_lengths: Vec<i64>,
    /// `(4k)^s`.
    pub dim_bound: u128,
    /// `p̄ ⊆ q`.
    pub completion_in_q: bool,
    /// `(2k)^s`.
    pub q_factor: u64,
    /// `q ⊆ (2k)^s p̄`.
    pub q_in_multiple: bool,
    /// `"box"` when `p̄` is itself a coordinate box, so its sumsets are
    /// boxes; `"sumset"` when the sumset was enumerated.
    pub multiple_method: String,
    /// `(2k)^{2s}`.
    pub bracket_factor: u64,
    /// `[q, q] ⊆ (2k)^{2s} q`.
    pub bracket_in_multiple: bool,
    pub witness: Option<String>,
    pub holds: bool,
}

/// Builds `q` from `p = {Σ l_i x_i : |l_i| ≤ L_i}` and checks
/// `p̄ ⊆ q ⊆ (2k)^s p̄` and `[q, q] ⊆ (2k)^{2s} q` by enumeration.
pub fn completion_check(
    algebra: &LieAlgebra,
    generators: &[LieElement],
    lengths: &[u64],
    limits: &Limits,
) -> Result<CompletionReport> {
    let k = generators.len();
    let s = algebra.s();
    let p = AlgProgression::new(
        generators.to_vec(),
        lengths.iter().map(|l| *l as i64).collect(),
    )?;
    let p_set = p.enumerate(algebra, limits)?;
    let bar = nilcompletion(algebra, &p_set, limits)?;
    let q = completion_progression(algebra, generators, lengths, limits)?;
    let q_region = q.region(algebra)?;
    let q_set = q.enumerate(algebra, limits)?;
    let mut witness = None;

    let outside = bar.subset_witness(&q_region);
    let completion_in_q = outside.is_none();
    if let Some(e) = outside {
        witness = Some(format!("{e} in the completion but not in q"));
    }

    let q_factor = (2 * k as u64).pow(s as u32);
    let (multiple_method, in_multiple) = match box_hull(algebra, &q, &bar)? {
        Some(hull) => {
            let region = hull.dilated(q_factor as i64).region(algebra)?;
            ("box", q_set.subset_witness(&region))
        }
        None => {
            let multiple = dilate_set(algebra, &bar, q_factor as usize, limits)?;
            ("sumset", q_set.subset_witness(&multiple))
        }
    };
    let q_in_multiple = in_multiple.is_none();
    if let (None, Some(e)) = (&witness, in_multiple) {
        witness = Some(format!(
            "{e} in q but not in the multiple of the completion"
        ));
    }

    let bracket_factor = q_factor * q_factor;
    let brackets = bracket_set(algebra, &q_set, &q_set, limits)?;
    let outside = brackets.subset_witness(&q.dilated(bracket_factor as i64).region(algebra)?);
    let bracket_in_multiple = outside.is_none();
    if let (None, Some(e)) = (&witness, outside) {
        witness = Some(format!("bracket {e} outside the multiple of q"));
    }

    Ok(CompletionReport {
        k,
        s,
        lengths: lengths.to_vec(),
        p_size: p_set.len(),
        completion_size: bar.len(),
        q_dim: q.dim(),
        q_lengths: q.lengths.clone(),
        dim_bound: (4 * k as u128).pow(s as u32),
        completion_in_q,
        q_factor,
        q_in_multiple,
        multiple_method: multiple_method.into(),
        bracket_factor,
        bracket_in_multiple,
        witness,
        holds: completion_in_q && q_in_multiple && bracket_in_multiple,
    })
}

/// When `set` is exactly `{Σ l_c c : |l_c| ≤ N_c}` on the generators of
/// `q`, returns that box; its `m`-fold sumset is then the box with lengths
/// `m·N_c`.
fn box_hull(
    algebra: &LieAlgebra,
    q: &AlgProgression,
    set: &AlgSet,
) -> Result<Option<AlgProgression>> {
    let region = q.region(algebra)?;
    let mut bounds = vec![0i64; q.dim()];
    for e in set {
        let Some(l) = region.coefficients(e) else {
            return Ok(None);
        };
        for (b, x) in bounds.iter_mut().zip(&l) {
            if !x.is_integer() {
                return Ok(None);
            }
            *b = (*b).max(x.abs().to_integer().to_i64().unwrap_or(i64::MAX));
        }
    }
    let hull = AlgProgression::new(q.generators.clone(), bounds)?;
    Ok((hull.count_tuples() == set.len() as u128).then_some(hull))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposeRow {
    pub m: u64,
    pub terms: Vec<Vec<u64>>,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub lengths: Vec<u64>,
    /// `2^{k-1}`.
    pub max_terms: usize,
    pub rows: Vec<DecomposeRow>,
    pub holds: bool,
}

/// Decomposes every `0 ≤ m ≤ L_1…L_k` and checks each answer.
pub fn decompose_suite(lengths: &[u64], limits: &Limits) -> Result<DecomposeReport> {
    if lengths.is_empty() {
        return Err(Error::InvalidArgument("lengths must be nonempty".into()));
    }
    let top: u64 = lengths.iter().product();
    limits.check_set_size(top as u128 + 1)?;
    let max_terms = 1usize << (lengths.len() - 1);
    let mut rows = Vec::new();
    for m in 0..=top {
        let terms = decompose_integer(m, lengths)?;
        let sum: u64 = terms.iter().map(|v| v.iter().product::<u64>()).sum();
        let in_range = terms.iter().all(|v| {
            v.len() == lengths.len() && v.iter().zip(lengths).all(|(l, n)| (1..=*n).contains(l))
        });
        rows.push(DecomposeRow {
            m,
            valid: sum == m && in_range && terms.len() <= max_terms,
            terms,
        });
    }
    let holds = rows.iter().all(|r| r.valid);
    Ok(DecomposeReport {
        lengths: lengths.to_vec(),
        max_terms,
        rows,
        holds,
    })
}
