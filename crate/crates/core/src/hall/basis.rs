use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::weight::WeightVector;
use crate::config::Limits;
use crate::error::{Error, Result};

/// Formal shape of a basic commutator. Indices are 0-based positions in the
/// basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Leaf(usize),
    Node(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCommutator {
    pub index: usize,
    pub shape: Shape,
    pub weight: WeightVector,
}

impl BasicCommutator {
    pub fn order(&self) -> usize {
        self.weight.order() as usize
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self.shape, Shape::Leaf(_))
    }
}

/// Ordered basic commutators `X_1 ≺ … ≺ X_t` of order at most `s` on `k`
/// generators.
///
/// Ordering: ascending total order; within one order, commutators sharing a
/// weight vector are consecutive, weight classes appear in the order of
/// their lexicographically first `(left, right)` pair, and members of a class
/// are sorted by `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallBasis {
    k: usize,
    s: usize,
    elements: Vec<BasicCommutator>,
    order_ranges: Vec<Range<usize>>,
    nodes: HashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Dimension `t` of `n_{k,s}`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elements
    }

    pub fn get(&self, index: usize) -> &BasicCommutator {
        &self.elements[index]
    }

    pub fn order(&self, index: usize) -> usize {
        self.elements[index].order()
    }

    pub fn weight(&self, index: usize) -> &WeightVector {
        &self.elements[index].weight
    }

    /// Basis positions of commutators of total order `r` (`1 ≤ r ≤ s`).
    pub fn order_range(&self, r: usize) -> Range<usize> {
        self.order_ranges[r - 1].clone()
    }

    /// Position of the basic commutator `[left, right]`, if it is basic.
    pub fn node_index(&self, left: usize, right: usize) -> Option<usize> {
        self.nodes.get(&(left, right)).copied()
    }

    /// Whether `[left, right]` satisfies the Hall condition, regardless of
    /// its order.
    pub fn is_hall_pair(&self, left: usize, right: usize) -> bool {
        left > right
            && match self.elements[left].shape {
                Shape::Leaf(_) => true,
                Shape::Node(_, inner_right) => right >= inner_right,
            }
    }

    /// Distinct weight vectors with the basis positions carrying each, in
    /// basis order.
    pub fn weight_classes(&self) -> Vec<(WeightVector, Vec<usize>)> {
        let mut out: Vec<(WeightVector, Vec<usize>)> = Vec::new();
        for e in &self.elements {
            match out.last_mut() {
                Some((w, members)) if *w == e.weight => members.push(e.index),
                _ => out.push((e.weight.clone(), vec![e.index])),
            }
        }
        out
    }

    /// Bracket notation for element `index`, e.g. `[[X2,X1],X1]`.
    pub fn describe(&self, index: usize) -> String {
        match self.elements[index].shape {
            Shape::Leaf(g) => format!("X{}", g + 1),
            Shape::Node(l, r) => format!("[{},{}]", self.describe(l), self.describe(r)),
        }
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(
                f,
                "{:>3}  {}  {}",
                e.index + 1,
                self.describe(e.index),
                e.weight
            )?;
        }
        Ok(())
    }
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of basic commutators of order `r` on `k` generators,
/// `(1/r) Σ_{d|r} μ(d) k^{r/d}`.
pub fn witt_count(k: u64, r: u32) -> Result<u128> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!(
            "witt_count needs k, r >= 1 (got k={k}, r={r})"
        )));
    }
    let mut total: i128 = 0;
    for d in 1..=r {
        if r % d != 0 {
            continue;
        }
        let mu = mobius(d as u64) as i128;
        if mu == 0 {
            continue;
        }
        let power = (k as i128)
            .checked_pow(r / d)
            .ok_or_else(|| Error::OutOfRange(format!("k^r overflows for k={k}, r={r}")))?;
        total += mu * power;
    }
    assert!(
        total >= 0 && total % r as i128 == 0,
        "Witt sum {total} not divisible by {r}"
    );
    Ok((total / r as i128) as u128)
}

/// Builds the Hall basis of `n_{k,s}` under the fixed ordering convention.
pub fn build_hall_basis(k: usize, s: usize, limits: &Limits) -> Result<HallBasis> {
    if k == 0 || k > limits.max_generators {
        return Err(Error::ParameterRange {
            name: "k",
            value: k,
            max: limits.max_generators,
        });
    }
    if s == 0 || s > limits.max_step {
        return Err(Error::ParameterRange {
            name: "s",
            value: s,
            max: limits.max_step,
        });
    }
    let mut predicted: u128 = 0;
    for r in 1..=s {
        predicted += witt_count(k as u64, r as u32)?;
    }
    if predicted > limits.max_basis as u128 {
        return Err(Error::BasisTooLarge {
            k,
            s,
            t: predicted,
            cap: limits.max_basis,
        });
    }

    let mut elements: Vec<BasicCommutator> = (0..k)
        .map(|g| BasicCommutator {
            index: g,
            shape: Shape::Leaf(g),
            weight: WeightVector::unit(k, g),
        })
        .collect();
    let mut order_ranges = vec![0..k];
    let mut nodes = HashMap::new();

    for r in 2..=s {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for left in 0..elements.len() {
            let lo = elements[left].order();
            if lo >= r {
                continue;
            }
            let right_range = order_ranges[r - lo - 1].clone();
            for right in right_range {
                let admissible = left > right
                    && match elements[left].shape {
                        Shape::Leaf(_) => true,
                        Shape::Node(_, inner_right) => right >= inner_right,
                    };
                if admissible {
                    pairs.push((left, right));
                }
            }
        }
        pairs.sort_unstable();

        // group by weight, classes in order of first appearance
        let mut classes: Vec<(WeightVector, Vec<(usize, usize)>)> = Vec::new();
        for (l, r_) in pairs {
            let w = elements[l].weight.sum(&elements[r_].weight);
            match classes.iter_mut().find(|(cw, _)| *cw == w) {
                Some((_, members)) => members.push((l, r_)),
                None => classes.push((w, vec![(l, r_)])),
            }
        }

        let start = elements.len();
        for (w, members) in classes {
            for (l, r_) in members {
                let index = elements.len();
                nodes.insert((l, r_), index);
                elements.push(BasicCommutator {
                    index,
                    shape: Shape::Node(l, r_),
                    weight: w.clone(),
                });
            }
        }
        order_ranges.push(start..elements.len());
    }

    Ok(HallBasis {
        k,
        s,
        elements,
        order_ranges,
        nodes,
    })
}
