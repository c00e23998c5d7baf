use serde::Serialize;

use super::cover::{certify_approx, certify_control, control_witness, ApproxWitness};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::scalar::{rat_to_string, Rat};
use crate::setalg::{is_symmetric, power_set, product_set, signed_power_set, FiniteSet, Group};

fn ratio(num: usize, den: usize) -> Rat {
    Rat::new((num as i64).into(), (den as i64).into())
}

/// `|A·A| / |A|`.
pub fn doubling_constant<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<Rat> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("empty set".into()));
    }
    Ok(ratio(product_set(group, a, a, limits)?.len(), a.len()))
}

/// `|A^3| / |A|`.
pub fn tripling_constant<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<Rat> {
    if a.is_empty() {
        return Err(Error::InvalidArgument("empty set".into()));
    }
    Ok(ratio(power_set(group, a, 3, limits)?.len(), a.len()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `|A^n|`.
    pub card: usize,
    /// `|A^{±n}|`.
    pub signed_card: usize,
    /// `K^{n-1} |A|`.
    pub bound: u128,
    pub within_bound: bool,
    /// `|X^{n-1}|`, the controlling set built from the witness.
    pub control_size: usize,
    /// `K^{n+1}`.
    pub control_bound: u128,
    pub controlled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthReport {
    pub size: usize,
    pub k: usize,
    pub rows: Vec<GrowthRow>,
    pub holds: bool,
}

impl GrowthReport {
    /// `n,card,bound` table.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,card,bound\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.n, r.card, r.bound));
        }
        out
    }
}

/// Checks `|A^{±n}| = |A^n| ≤ K^{n-1}|A|` and that `A^n` is
/// `K^{n+1}`-controlled by `A` for `1 ≤ n ≤ nmax`.
///
/// The controlling set is `X^{n-1}`: from `A·A ⊆ X·A` and symmetry one gets
/// `A^n ⊆ X^{n-1}A ∩ AX^{n-1}`, which is then rechecked by enumeration.
pub fn growth_suite<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    witness: &ApproxWitness<G::Elem>,
    nmax: usize,
    limits: &Limits,
) -> Result<GrowthReport> {
    if !(1..=5).contains(&nmax) {
        return Err(Error::OutOfRange(format!(
            "nmax must lie in 1..=5, got {nmax}"
        )));
    }
    if !certify_approx(group, a, &witness.x) {
        return Err(Error::InvalidArgument("witness does not certify A".into()));
    }
    let k = witness.x.len() as u128;
    let mut rows = Vec::new();
    let mut xpow = FiniteSet::singleton(group.identity());
    for n in 1..=nmax {
        let an = power_set(group, a, n, limits)?;
        let signed = signed_power_set(group, a, n, limits)?;
        let bound = k.pow(n as u32 - 1) * a.len() as u128;
        let control_bound = k.pow(n as u32 + 1);
        let cb = usize::try_from(control_bound).unwrap_or(usize::MAX);
        let controlled = xpow.len() as u128 <= control_bound
            && a.len() as u128 <= control_bound * an.len() as u128
            && certify_control(group, &an, a, &xpow, cb.max(xpow.len()));
        rows.push(GrowthRow {
            n,
            card: an.len(),
            signed_card: signed.len(),
            bound,
            within_bound: signed.len() == an.len() && an.len() as u128 <= bound,
            control_size: xpow.len(),
            control_bound,
            controlled,
        });
        if n < nmax {
            xpow = product_set(group, &xpow, &witness.x, limits)?;
        }
    }
    let holds = rows.iter().all(|r| r.within_bound && r.controlled);
    Ok(GrowthReport {
        size: a.len(),
        k: witness.k,
        rows,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub image_size: usize,
    pub image_witness_size: usize,
    pub k: usize,
    pub holds: bool,
}

/// `π(A)` is a `K`-approximate group with witness `π(X)` for a
/// homomorphism `π`.
pub fn image_check<G: Group, H: Group>(
    target: &H,
    a: &FiniteSet<G::Elem>,
    witness: &ApproxWitness<G::Elem>,
    pi: impl Fn(&G::Elem) -> H::Elem,
) -> ImageReport {
    let image = a.map(&pi);
    let image_x = witness.x.map(&pi);
    let holds = is_symmetric(target, &image)
        && image_x.len() <= witness.k
        && certify_approx(target, &image, &image_x);
    ImageReport {
        image_size: image.len(),
        image_witness_size: image_x.len(),
        k: witness.k,
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    /// Greedy constant of `A` by `B`.
    pub k_ab: usize,
    /// Greedy constant of `B` by `C`.
    pub k_bc: usize,
    /// `|X_1 X_2 ∪ X_2 X_1|`, the composed controlling set.
    pub composed_size: usize,
    /// Greedy constant of `A` by `C` computed directly.
    pub direct: usize,
    /// `max(k_ab, k_bc)^2`.
    pub square_bound: usize,
    pub composed_certified: bool,
    pub direct_within_square: bool,
}

/// Composes control witnesses `A` by `B` and `B` by `C` into one for `A`
/// by `C`: `A ⊆ X_1B ⊆ X_1X_2C` and `A ⊆ BX_1 ⊆ CX_2X_1`.
pub fn transitivity_check<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    b: &FiniteSet<G::Elem>,
    c: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<TransitivityReport> {
    let w1 = control_witness(group, a, b, limits)?;
    let w2 = control_witness(group, b, c, limits)?;
    let composed =
        product_set(group, &w1.x, &w2.x, limits)?.union(&product_set(group, &w2.x, &w1.x, limits)?);
    let k = composed.len().max(c.len().div_ceil(a.len()));
    let direct = control_witness(group, a, c, limits)?.k;
    let square = w1.k.max(w2.k).pow(2);
    Ok(TransitivityReport {
        k_ab: w1.k,
        k_bc: w2.k,
        composed_size: composed.len(),
        direct,
        square_bound: square,
        composed_certified: certify_control(group, a, c, &composed, k),
        direct_within_square: direct <= square,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutualBoundReport {
    /// Largest of the two approximate-group constants and the control
    /// constant of `A` by `B`.
    pub k: usize,
    /// Greedy constant of `B` by `A`.
    pub reverse: usize,
    pub k_fourth: u128,
    pub within: bool,
}

/// Given approximate groups `A`, `B` with `A` controlled by `B`, measures
/// the greedy constant of `B` by `A` against `K^4`.
pub fn mutual_bound_check<G: Group>(
    group: &G,
    a: &ApproxWitness<G::Elem>,
    b: &ApproxWitness<G::Elem>,
    set_a: &FiniteSet<G::Elem>,
    set_b: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<MutualBoundReport> {
    let forward = control_witness(group, set_a, set_b, limits)?;
    let reverse = control_witness(group, set_b, set_a, limits)?;
    let k = a.k.max(b.k).max(forward.k);
    let k_fourth = (k as u128).pow(4);
    Ok(MutualBoundReport {
        k,
        reverse: reverse.k,
        k_fourth,
        within: reverse.k as u128 <= k_fourth,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriplingReport {
    pub size: usize,
    pub tripling: String,
    /// `|A^{±3}|`.
    pub cube_size: usize,
    /// Greedy constant of `A^{±3}` as an approximate group.
    pub cube_k: usize,
    pub certified: bool,
}

/// Measures the approximate-group constant of `A^{±3}`; no bound in terms of
/// the tripling constant is asserted.
pub fn tripling_report<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<TriplingReport> {
    let tripling = tripling_constant(group, a, limits)?;
    let cube = signed_power_set(group, a, 3, limits)?;
    let w = super::cover::approx_witness(group, &cube, super::cover::CoverMode::Greedy, limits)?;
    Ok(TriplingReport {
        size: a.len(),
        tripling: show(&tripling),
        cube_size: cube.len(),
        cube_k: w.k,
        certified: w.certified,
    })
}

/// Exact rational as report text.
pub(crate) fn show(q: &Rat) -> String {
    rat_to_string(q)
}
