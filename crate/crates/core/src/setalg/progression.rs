use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::finite::{Contains, FiniteSet, Group};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{HallBasis, Shape};
use crate::nilgroup::{GroupElement, NilGroup};
use crate::scalar::{int, Rat};

/// Integer exponent ranges `|l_j| ≤ B_j` with `Q | l_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentBox {
    bounds: Vec<i64>,
    q: i64,
}

impl ExponentBox {
    pub fn new(bounds: Vec<i64>, q: i64) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidArgument(format!(
                "divisor Q must be >= 1, got {q}"
            )));
        }
        if bounds.iter().any(|b| *b < 0) {
            return Err(Error::InvalidArgument("negative exponent bound".into()));
        }
        Ok(ExponentBox { bounds, q })
    }

    /// Bounds `⌊(ρL)^{χ(j)}⌋` for every basis position.
    pub fn from_lengths(shapes: &HallBasis, lengths: &[u64], q: u64, rho: &Rat) -> Result<Self> {
        check_lengths(shapes.k(), lengths, rho)?;
        let bounds = shapes
            .elements()
            .iter()
            .map(|e| e.weight.scaled_bound(lengths, rho))
            .collect();
        ExponentBox::new(bounds, q as i64)
    }

    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    /// Allowed values of `l_j`, ascending.
    pub fn values(&self, j: usize) -> Vec<i64> {
        let m = self.bounds[j] / self.q;
        (-m..=m).map(|i| i * self.q).collect()
    }

    /// `∏_j (2⌊B_j/Q⌋ + 1)`.
    pub fn count(&self) -> u128 {
        self.bounds
            .iter()
            .map(|b| 2 * (*b / self.q) as u128 + 1)
            .product()
    }

    pub fn contains(&self, l: &[i64]) -> bool {
        l.len() == self.bounds.len()
            && l.iter()
                .zip(&self.bounds)
                .all(|(x, b)| x.abs() <= *b && x % self.q == 0)
    }

    pub fn contains_rational(&self, l: &[Rat]) -> bool {
        l.len() == self.bounds.len()
            && l.iter().zip(&self.bounds).all(|(x, b)| {
                x.is_integer() && x.abs() <= int(*b) && (x.numer() % self.q).is_zero()
            })
    }

    /// Every exponent tuple, in lexicographic order.
    pub fn tuples(&self) -> Vec<Vec<i64>> {
        let ranges: Vec<Vec<i64>> = (0..self.dim()).map(|j| self.values(j)).collect();
        let mut out = vec![Vec::with_capacity(self.dim())];
        for r in &ranges {
            let mut next = Vec::with_capacity(out.len() * r.len());
            for prefix in &out {
                for v in r {
                    let mut p = prefix.clone();
                    p.push(*v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

impl Contains<Vec<i64>> for ExponentBox {
    fn contains_elem(&self, e: &Vec<i64>) -> bool {
        self.contains(e)
    }
}

pub(crate) fn check_lengths(k: usize, lengths: &[u64], rho: &Rat) -> Result<()> {
    if lengths.len() != k {
        return Err(Error::InvalidArgument(format!(
            "expected {k} lengths, got {}",
            lengths.len()
        )));
    }
    if lengths.iter().any(|l| *l == 0) {
        return Err(Error::InvalidArgument("lengths must be positive".into()));
    }
    if !rho.is_positive() || *rho > int(10) {
        return Err(Error::OutOfRange(format!("scale {rho} outside (0, 10]")));
    }
    Ok(())
}

/// `P(u; ρL, Q)` on generators `u_1..u_k` of some group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressionSpec<E> {
    pub generators: Vec<E>,
    pub lengths: Vec<u64>,
    pub q: u64,
    pub rho: Rat,
}

impl<E> ProgressionSpec<E> {
    pub fn new(generators: Vec<E>, lengths: Vec<u64>) -> Self {
        ProgressionSpec {
            generators,
            lengths,
            q: 1,
            rho: int(1),
        }
    }

    pub fn with_q(mut self, q: u64) -> Self {
        self.q = q;
        self
    }

    pub fn with_rho(mut self, rho: Rat) -> Self {
        self.rho = rho;
        self
    }

    pub fn exponent_box(&self, shapes: &HallBasis) -> Result<ExponentBox> {
        if self.generators.len() != shapes.k() {
            return Err(Error::InvalidArgument(format!(
                "expected {} generators, got {}",
                shapes.k(),
                self.generators.len()
            )));
        }
        ExponentBox::from_lengths(shapes, &self.lengths, self.q, &self.rho)
    }
}

/// `u_1..u_t`: generators on leaves, `[u_l, u_r]` on nodes `[X_l, X_r]`.
pub fn progression_factors<G: Group>(
    group: &G,
    shapes: &HallBasis,
    generators: &[G::Elem],
) -> Vec<G::Elem> {
    let mut out: Vec<G::Elem> = Vec::with_capacity(shapes.len());
    for e in shapes.elements() {
        let u = match e.shape {
            Shape::Leaf(g) => generators[g].clone(),
            Shape::Node(l, r) => group.commutator(&out[l], &out[r]),
        };
        out.push(u);
    }
    out
}

fn power_tables<G: Group>(group: &G, factors: &[G::Elem], bx: &ExponentBox) -> Vec<Vec<G::Elem>> {
    (0..bx.dim())
        .map(|j| {
            bx.values(j)
                .into_iter()
                .map(|l| group.pow_int(&factors[j], l))
                .collect()
        })
        .collect()
}

fn extend<G: Group>(group: &G, powers: &[Vec<G::Elem>], prefix: &G::Elem, out: &mut Vec<G::Elem>) {
    match powers.split_first() {
        None => out.push(prefix.clone()),
        Some((head, rest)) => {
            for p in head {
                extend(group, rest, &group.mul(prefix, p), out);
            }
        }
    }
}

/// All products `u_1^{l_1} … u_t^{l_t}` over the exponent box.
pub fn enumerate_progression<G: Group>(
    group: &G,
    shapes: &HallBasis,
    spec: &ProgressionSpec<G::Elem>,
    limits: &Limits,
) -> Result<FiniteSet<G::Elem>> {
    let bx = spec.exponent_box(shapes)?;
    limits.check_set_size(bx.count())?;
    let factors = progression_factors(group, shapes, &spec.generators);
    let powers = power_tables(group, &factors, &bx);
    let (head, rest) = powers.split_first().expect("basis is nonempty");
    let elems: Vec<G::Elem> = head
        .par_iter()
        .flat_map_iter(|p| {
            let mut out = Vec::new();
            extend(group, rest, p, &mut out);
            out
        })
        .collect();
    Ok(FiniteSet::from_vec(elems))
}

/// Exponent tuples paired with the product they define, before
/// deduplication.
pub fn progression_tuples<G: Group>(
    group: &G,
    shapes: &HallBasis,
    spec: &ProgressionSpec<G::Elem>,
    limits: &Limits,
) -> Result<Vec<(Vec<i64>, G::Elem)>> {
    let bx = spec.exponent_box(shapes)?;
    limits.check_set_size(bx.count())?;
    let factors = progression_factors(group, shapes, &spec.generators);
    let powers = power_tables(group, &factors, &bx);
    let tuples = bx.tuples();
    Ok(tuples
        .into_par_iter()
        .map(|l| {
            let mut acc = group.identity();
            for (j, lj) in l.iter().enumerate() {
                let pos = ((lj + bx.bounds()[j] / bx.q() * bx.q()) / bx.q()) as usize;
                acc = group.mul(&acc, &powers[j][pos]);
            }
            (l, acc)
        })
        .collect())
}

/// `P(k,s; ρL, Q)` on the free generators of `N_{k,s}`, as a membership
/// predicate: by uniqueness of group coordinates, `x` lies in it exactly
/// when `ψ_gp(x)` is an integer point of the exponent box.
#[derive(Clone, Debug)]
pub struct FreeProgression {
    group: NilGroup,
    bx: ExponentBox,
}

impl FreeProgression {
    pub fn new(group: &NilGroup, lengths: &[u64], q: u64, rho: &Rat) -> Result<Self> {
        Ok(FreeProgression {
            group: group.clone(),
            bx: ExponentBox::from_lengths(group.algebra().basis(), lengths, q, rho)?,
        })
    }

    pub fn exponent_box(&self) -> &ExponentBox {
        &self.bx
    }

    pub fn count(&self) -> u128 {
        self.bx.count()
    }

    /// The elements, enumerated in the BCH model.
    pub fn enumerate(&self, limits: &Limits) -> Result<FiniteSet<GroupElement>> {
        limits.check_set_size(self.bx.count())?;
        let elems: Vec<GroupElement> = self
            .bx
            .tuples()
            .into_par_iter()
            .map(|l| {
                let coords: Vec<Rat> = l.iter().map(|x| int(*x)).collect();
                self.group
                    .from_group_coords(&coords)
                    .expect("box dimension matches the group")
            })
            .collect();
        Ok(FiniteSet::from_vec(elems))
    }

    /// The elements as integer group coordinates, for the lattice model.
    pub fn lattice_points(&self, limits: &Limits) -> Result<FiniteSet<Vec<i64>>> {
        limits.check_set_size(self.bx.count())?;
        Ok(FiniteSet::from_vec(self.bx.tuples()))
    }
}

impl Contains<GroupElement> for FreeProgression {
    fn contains_elem(&self, e: &GroupElement) -> bool {
        e.key() == self.group.key() && self.bx.contains_rational(&self.group.to_group_coords(e))
    }
}

impl Contains<Vec<i64>> for FreeProgression {
    fn contains_elem(&self, e: &Vec<i64>) -> bool {
        self.bx.contains(e)
    }
}
