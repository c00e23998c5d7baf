use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::growth::show;
use crate::config::Limits;
use crate::error::Result;
use crate::nilgroup::NilGroup;
use crate::scalar::{int, rat, Rat};
use crate::setalg::{
    enumerate_nilbox, exp_set, product_set, Contains, ExponentBox, FiniteSet, FreeNilbox,
    FreeProgression, NilboxSpec,
};

pub const Q_GRID_MAX: u64 = 64;

pub fn c_grid() -> Vec<Rat> {
    vec![int(1), rat(1, 2), rat(1, 3), rat(1, 4)]
}

pub fn big_c_grid() -> Vec<Rat> {
    vec![int(0), rat(1, 2), int(1), int(2), int(4)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub c: String,
    pub q: u64,
    #[serde(rename = "C")]
    pub big_c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionResult {
    pub index: usize,
    pub statement: String,
    pub c: Option<String>,
    pub q: u64,
    #[serde(rename = "C")]
    pub big_c: Option<String>,
    pub holds: bool,
    /// Elements of the left-hand side tested.
    pub checked: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub proposition: String,
    pub k: usize,
    pub s: usize,
    pub lengths: Vec<u64>,
    pub rho: String,
    pub rho_prime: String,
    /// `None` when no grid point makes all five inclusions hold.
    pub constants: Option<Constants>,
    pub inclusions: Vec<InclusionResult>,
    pub holds: bool,
}

const STATEMENTS: [&str; 5] = [
    "exp(B(cL,Q)) in P(L)",
    "P(cL,Q) in exp(B(L))",
    "exp(B(rL,Q)) exp(B(r'L,Q)) in exp(B((r+r'+Crr')L,Q))",
    "P(rL,Q) P(r'L,Q) in P((r+r'+Crr')L,Q)",
    "P(rL) P(r'L) in P((r+r'+Crr')L)",
];

struct Outcome {
    checked: usize,
    counterexample: Option<String>,
}

fn first_outside<E: Sync + std::fmt::Debug>(
    elems: &[E],
    region: &(impl Contains<E> + Sync),
    show: impl Fn(&E) -> String,
) -> Outcome {
    Outcome {
        checked: elems.len(),
        counterexample: elems
            .par_iter()
            .find_first(|e| !region.contains_elem(e))
            .map(show),
    }
}

struct Suite<'a> {
    group: &'a NilGroup,
    lengths: &'a [u64],
    rho: &'a Rat,
    rho_prime: &'a Rat,
    limits: &'a Limits,
    /// `exp𝔅(ρL,Q)·exp𝔅(ρ′L,Q)` keyed by `Q`.
    nil_products: HashMap<u64, FiniteSet<crate::nilgroup::GroupElement>>,
    /// `P(ρL,Q)·P(ρ′L,Q)` in group coordinates, keyed by `Q`.
    lattice_products: HashMap<u64, FiniteSet<Vec<i64>>>,
}

impl Suite<'_> {
    fn target_scale(&self, big_c: &Rat) -> Rat {
        self.rho + self.rho_prime + big_c * self.rho * self.rho_prime
    }

    fn first(&self, c: &Rat, q: u64) -> Result<Outcome> {
        let algebra = self.group.algebra();
        let spec = NilboxSpec::free(algebra, self.lengths.to_vec())
            .with_q(q)
            .with_rho(c.clone());
        let lhs = exp_set(
            self.group,
            &enumerate_nilbox(algebra, algebra.basis(), &spec, self.limits)?,
        )?;
        let rhs = FreeProgression::new(self.group, self.lengths, 1, &int(1))?;
        Ok(first_outside(lhs.elements(), &rhs, |x| {
            format!(
                "{} has group coordinates {}",
                x,
                coords_text(&self.group.to_group_coords(x))
            )
        }))
    }

    fn second(&self, c: &Rat, q: u64) -> Result<Outcome> {
        let lhs = FreeProgression::new(self.group, self.lengths, q, c)?.enumerate(self.limits)?;
        let rhs = FreeNilbox::new(self.group.algebra(), self.lengths, 1, &int(1))?;
        Ok(first_outside(lhs.elements(), &rhs, |x| x.to_string()))
    }

    fn third(&mut self, q: u64, big_c: &Rat) -> Result<Outcome> {
        if !self.nil_products.contains_key(&q) {
            let algebra = self.group.algebra();
            let side = |r: &Rat| -> Result<FiniteSet<_>> {
                let spec = NilboxSpec::free(algebra, self.lengths.to_vec())
                    .with_q(q)
                    .with_rho(r.clone());
                exp_set(
                    self.group,
                    &enumerate_nilbox(algebra, algebra.basis(), &spec, self.limits)?,
                )
            };
            let prod = product_set(
                self.group,
                &side(self.rho)?,
                &side(self.rho_prime)?,
                self.limits,
            )?;
            self.nil_products.insert(q, prod);
        }
        let rhs = FreeNilbox::new(
            self.group.algebra(),
            self.lengths,
            q,
            &self.target_scale(big_c),
        )?;
        Ok(first_outside(self.nil_products[&q].elements(), &rhs, |x| {
            x.to_string()
        }))
    }

    fn lattice_product(&mut self, q: u64) -> Result<&FiniteSet<Vec<i64>>> {
        if !self.lattice_products.contains_key(&q) {
            let lattice = self.group.lattice()?;
            let left = FreeProgression::new(self.group, self.lengths, q, self.rho)?
                .lattice_points(self.limits)?;
            let right = FreeProgression::new(self.group, self.lengths, q, self.rho_prime)?
                .lattice_points(self.limits)?;
            let prod = product_set(lattice.as_ref(), &left, &right, self.limits)?;
            self.lattice_products.insert(q, prod);
        }
        Ok(&self.lattice_products[&q])
    }

    /// Fourth inclusion with divisor `q`; the fifth is `q = 1`.
    fn fourth(&mut self, q: u64, big_c: &Rat) -> Result<Outcome> {
        let scale = self.target_scale(big_c);
        let rhs = ExponentBox::from_lengths(self.group.algebra().basis(), self.lengths, q, &scale)?;
        let prod = self.lattice_product(q)?;
        Ok(first_outside(prod.elements(), &rhs, |x| {
            format!("group coordinates {x:?}")
        }))
    }

    fn run(&mut self, index: usize, c: &Rat, q: u64, big_c: &Rat) -> Result<Outcome> {
        match index {
            1 => self.first(c, q),
            2 => self.second(c, q),
            3 => self.third(q, big_c),
            4 => self.fourth(q, big_c),
            _ => self.fourth(1, big_c),
        }
    }

    fn smallest_c(&mut self, index: usize, q: u64) -> Result<Option<Rat>> {
        for big_c in big_c_grid() {
            if self
                .run(index, &int(1), q, &big_c)?
                .counterexample
                .is_none()
            {
                return Ok(Some(big_c));
            }
        }
        Ok(None)
    }
}

fn coords_text(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(show).collect();
    format!("({})", parts.join(", "))
}

/// Searches the grids for constants making all five inclusions hold.
///
/// Order: largest `c`, then smallest `Q`, then the smallest `C` that works
/// for each of the three product inclusions, taking their maximum (the
/// product inclusions are monotone in `C`). The final constants are
/// rechecked on all five inclusions.
pub fn inclusion_suite(
    k: usize,
    s: usize,
    lengths: &[u64],
    rho: &Rat,
    rho_prime: &Rat,
    limits: &Limits,
) -> Result<InclusionReport> {
    let group = NilGroup::new(k, s, limits)?;
    let mut suite = Suite {
        group: &group,
        lengths,
        rho,
        rho_prime,
        limits,
        nil_products: HashMap::new(),
        lattice_products: HashMap::new(),
    };
    let fifth = suite.smallest_c(5, 1)?;
    let mut found = None;
    'search: for c in c_grid() {
        for q in 1..=Q_GRID_MAX {
            if suite.first(&c, q)?.counterexample.is_some()
                || suite.second(&c, q)?.counterexample.is_some()
            {
                continue;
            }
            let (Some(c3), Some(c4), Some(c5)) = (
                suite.smallest_c(3, q)?,
                suite.smallest_c(4, q)?,
                fifth.clone(),
            ) else {
                continue;
            };
            found = Some((c, q, c3.max(c4).max(c5)));
            break 'search;
        }
    }
    let (c, q, big_c) = found
        .clone()
        .unwrap_or_else(|| (c_grid().pop().unwrap(), 1, big_c_grid().pop().unwrap()));
    let mut inclusions = Vec::new();
    for index in 1..=5 {
        let out = suite.run(index, &c, q, &big_c)?;
        inclusions.push(InclusionResult {
            index,
            statement: STATEMENTS[index - 1].to_string(),
            c: (index <= 2).then(|| show(&c)),
            q: if index == 5 { 1 } else { q },
            big_c: (index >= 3).then(|| show(&big_c)),
            holds: out.counterexample.is_none(),
            checked: out.checked,
            counterexample: out.counterexample,
        });
    }
    let holds = found.is_some() && inclusions.iter().all(|r| r.holds);
    Ok(InclusionReport {
        proposition: "inclusions".into(),
        k,
        s,
        lengths: lengths.to_vec(),
        rho: show(rho),
        rho_prime: show(rho_prime),
        constants: found.map(|(c, q, big_c)| Constants {
            c: show(&c),
            q,
            big_c: show(&big_c),
        }),
        inclusions,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_constants_are_trivial() {
        let r = inclusion_suite(1, 1, &[3], &int(1), &int(1), &Limits::default()).unwrap();
        assert!(r.holds);
        let c = r.constants.unwrap();
        assert_eq!((c.c.as_str(), c.q, c.big_c.as_str()), ("1/1", 1, "0/1"));
    }
}

#[cfg(test)]
mod instance {
    use super::*;

    #[test]
    fn two_step_instance_finds_constants() {
        let r = inclusion_suite(2, 2, &[2, 2], &int(1), &int(1), &Limits::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.inclusions.len(), 5);
    }
}
