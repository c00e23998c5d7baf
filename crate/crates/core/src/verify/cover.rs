use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::setalg::{is_symmetric, product_set, symmetrize, FiniteSet, Group};

/// Largest `|A·A|` accepted by the exhaustive witness search.
pub const EXHAUSTIVE_MAX: usize = 2000;

/// Greedy set cover with lazy gain updates.
///
/// `covers(i)` lists the universe positions candidate `i` covers. At each
/// step the candidate covering the most uncovered positions is chosen, ties
/// going to the smaller candidate index. Returns `None` when the candidates
/// cannot cover the universe.
pub fn lazy_greedy(
    universe: usize,
    candidates: usize,
    covers: impl Fn(usize) -> Vec<usize>,
) -> Option<Vec<usize>> {
    let mut covered = vec![false; universe];
    let mut remaining = universe;
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        (0..candidates).map(|i| (universe, Reverse(i))).collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (_, Reverse(i)) = heap.pop()?;
        let mut fresh: Vec<usize> = covers(i).into_iter().filter(|u| !covered[*u]).collect();
        fresh.sort_unstable();
        fresh.dedup();
        let gain = fresh.len();
        if gain == 0 {
            continue;
        }
        let beats_rest = match heap.peek() {
            None => true,
            Some(top) => (gain, Reverse(i)) >= *top,
        };
        if beats_rest {
            for u in fresh {
                covered[u] = true;
            }
            remaining -= gain;
            chosen.push(i);
        } else {
            heap.push((gain, Reverse(i)));
        }
    }
    Some(chosen)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMode {
    Greedy,
    Exhaustive,
}

/// Witness that `A` is a `K`-approximate group: symmetric `X ⊆ A·A` with
/// `A·A ⊆ X·A` and `K = |X|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxWitness<E> {
    pub x: FiniteSet<E>,
    pub k: usize,
    pub mode: CoverMode,
    pub certified: bool,
}

fn index_of<E: Ord + Clone + std::hash::Hash>(set: &FiniteSet<E>) -> HashMap<E, usize> {
    set.iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect()
}

pub fn approx_witness<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    mode: CoverMode,
    limits: &Limits,
) -> Result<ApproxWitness<G::Elem>> {
    if !is_symmetric(group, a) {
        return Err(Error::NotSymmetric(
            "approximate groups must be inverse-closed and contain the identity".into(),
        ));
    }
    let aa = product_set(group, a, a, limits)?;
    let index = index_of(&aa);
    let translate = |x: &G::Elem| -> Vec<usize> {
        a.iter()
            .filter_map(|y| index.get(&group.mul(x, y)).copied())
            .collect()
    };
    let greedy = lazy_greedy(aa.len(), aa.len(), |i| translate(&aa.elements()[i]))
        .expect("A·A is covered by its own translates since id ∈ A");
    let greedy_x = symmetrize(
        group,
        &greedy.iter().map(|i| aa.elements()[*i].clone()).collect(),
    );
    let x = match mode {
        CoverMode::Greedy => greedy_x,
        CoverMode::Exhaustive => {
            if aa.len() > EXHAUSTIVE_MAX {
                return Err(Error::SetTooLarge {
                    size: aa.len() as u128,
                    cap: EXHAUSTIVE_MAX,
                });
            }
            exhaustive_cover(group, &aa, &index, greedy_x.len(), &translate)
                .expect("the greedy witness bounds the search")
        }
    };
    let certified = certify_approx(group, a, &x);
    Ok(ApproxWitness {
        k: x.len(),
        x,
        mode,
        certified,
    })
}

/// Smallest symmetric `X ⊆ A·A` covering `A·A`, by iterative deepening on
/// `|X|`. Branches on the first uncovered element `u`, which some chosen
/// `x` must satisfy `u ∈ xA`.
fn exhaustive_cover<G: Group>(
    group: &G,
    aa: &FiniteSet<G::Elem>,
    index: &HashMap<G::Elem, usize>,
    upper: usize,
    translate: &dyn Fn(&G::Elem) -> Vec<usize>,
) -> Option<FiniteSet<G::Elem>> {
    let n = aa.len();
    // orbit of each candidate: {x, x^{-1}}
    let orbit: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let x = &aa.elements()[i];
            let j = index[&group.inv(x)];
            if i == j {
                vec![i]
            } else {
                vec![i.min(j), i.max(j)]
            }
        })
        .collect();
    let cover: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut c: Vec<usize> = orbit[i]
                .iter()
                .flat_map(|m| translate(&aa.elements()[*m]))
                .collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    // who[u]: orbit representatives whose cover contains u
    let mut who: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        if orbit[i][0] == i {
            for u in &cover[i] {
                who[*u].push(i);
            }
        }
    }

    fn search(
        budget: usize,
        counts: &mut Vec<u32>,
        chosen: &mut Vec<usize>,
        orbit: &[Vec<usize>],
        cover: &[Vec<usize>],
        who: &[Vec<usize>],
    ) -> bool {
        let Some(u) = counts.iter().position(|c| *c == 0) else {
            return true;
        };
        for &rep in &who[u] {
            let size = orbit[rep].len();
            if size > budget || chosen.contains(&rep) {
                continue;
            }
            for v in &cover[rep] {
                counts[*v] += 1;
            }
            chosen.push(rep);
            if search(budget - size, counts, chosen, orbit, cover, who) {
                return true;
            }
            chosen.pop();
            for v in &cover[rep] {
                counts[*v] -= 1;
            }
        }
        false
    }

    for k in 1..=upper {
        let mut counts = vec![0u32; n];
        let mut chosen = Vec::new();
        if search(k, &mut counts, &mut chosen, &orbit, &cover, &who) {
            let x: Vec<G::Elem> = chosen
                .iter()
                .flat_map(|rep| orbit[*rep].iter().map(|m| aa.elements()[*m].clone()))
                .collect();
            return Some(FiniteSet::from_vec(x));
        }
    }
    None
}

/// Rechecks an approximate-group witness from scratch with plain loops:
/// `A` symmetric, `X` symmetric, `X ⊆ A·A` and `A·A ⊆ X·A`.
pub fn certify_approx<G: Group>(group: &G, a: &FiniteSet<G::Elem>, x: &FiniteSet<G::Elem>) -> bool {
    let mut aa = BTreeSet::new();
    for p in a {
        for q in a {
            aa.insert(group.mul(p, q));
        }
    }
    let mut xa = BTreeSet::new();
    for p in x {
        for q in a {
            xa.insert(group.mul(p, q));
        }
    }
    let a_sym = a.iter().all(|p| a.contains(&group.inv(p))) && a.contains(&group.identity());
    let x_sym = x.iter().all(|p| x.contains(&group.inv(p)));
    a_sym && x_sym && x.iter().all(|p| aa.contains(p)) && aa.iter().all(|p| xa.contains(p))
}

/// Witness that `B` `K`-controls `A`: `|B| ≤ K|A|`, `|X| ≤ K` and
/// `A ⊆ (X·B) ∩ (B·X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlWitness<E> {
    pub x: FiniteSet<E>,
    /// Left translates `xB` covering `A`.
    pub left: Vec<E>,
    /// Right translates `Bx` covering `A`.
    pub right: Vec<E>,
    pub k: usize,
    /// `|B| / |A|`.
    pub size_ratio: Rat,
    pub certified: bool,
}

/// Greedy control witness of `A` by `B`.
pub fn control_witness<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    b: &FiniteSet<G::Elem>,
    limits: &Limits,
) -> Result<ControlWitness<G::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidArgument("control needs nonempty sets".into()));
    }
    limits.check_set_size(a.len() as u128 * b.len() as u128)?;
    let b_inv: Vec<G::Elem> = b.iter().map(|y| group.inv(y)).collect();
    // x with a ∈ xB is x = a b^{-1}; y with a ∈ By is y = b^{-1} a
    let left = cover_by_incidence(a, |p| b_inv.iter().map(|q| group.mul(p, q)).collect());
    let right = cover_by_incidence(a, |p| b_inv.iter().map(|q| group.mul(q, p)).collect());
    let x = FiniteSet::from_vec(left.iter().chain(&right).cloned().collect());
    let size_ratio = Rat::new((b.len() as i64).into(), (a.len() as i64).into());
    let ceil = size_ratio.ceil().to_integer();
    let ratio_k: usize = num_traits::ToPrimitive::to_usize(&ceil).unwrap_or(usize::MAX);
    let k = x.len().max(ratio_k).max(1);
    let certified = certify_control(group, a, b, &x, k);
    Ok(ControlWitness {
        x,
        left,
        right,
        k,
        size_ratio,
        certified,
    })
}

/// Greedy cover of `universe` where `sources(a)` lists every candidate
/// covering `a`.
fn cover_by_incidence<E: Ord + Clone + std::hash::Hash>(
    universe: &FiniteSet<E>,
    sources: impl Fn(&E) -> Vec<E>,
) -> Vec<E> {
    let mut incidence: HashMap<E, Vec<usize>> = HashMap::new();
    for (u, a) in universe.iter().enumerate() {
        for c in sources(a) {
            incidence.entry(c).or_default().push(u);
        }
    }
    let mut candidates: Vec<(E, Vec<usize>)> = incidence.into_iter().collect();
    candidates.sort_by(|p, q| p.0.cmp(&q.0));
    let chosen = lazy_greedy(universe.len(), candidates.len(), |i| {
        candidates[i].1.clone()
    })
    .expect("every element is covered by some translate");
    chosen
        .into_iter()
        .map(|i| candidates[i].0.clone())
        .collect()
}

/// Independent recheck of a control witness.
pub fn certify_control<G: Group>(
    group: &G,
    a: &FiniteSet<G::Elem>,
    b: &FiniteSet<G::Elem>,
    x: &FiniteSet<G::Elem>,
    k: usize,
) -> bool {
    if b.len() > k * a.len() || x.len() > k {
        return false;
    }
    let mut xb = BTreeSet::new();
    let mut bx = BTreeSet::new();
    for p in x {
        for q in b {
            xb.insert(group.mul(p, q));
            bx.insert(group.mul(q, p));
        }
    }
    a.iter().all(|p| xb.contains(p) && bx.contains(p))
}
