use std::collections::BTreeMap;

use nilgrowth::scalar::{parse_rat, rat_to_string};
use nilgrowth::setalg::FiniteSet;
use nilgrowth::{Error, LieAlgebra, LieElement, Result};
use serde::{Deserialize, Serialize};

/// One element: 1-based basis index to `"p/q"`, nonzero entries only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub k: usize,
    pub s: usize,
    pub coords: BTreeMap<usize, String>,
}

impl ElementDocument {
    pub fn from_element(algebra: &LieAlgebra, a: &LieElement) -> Self {
        ElementDocument {
            k: algebra.k(),
            s: algebra.s(),
            coords: a
                .coords()
                .iter()
                .map(|(j, q)| (j + 1, rat_to_string(q)))
                .collect(),
        }
    }

    pub fn to_element(&self, algebra: &LieAlgebra) -> Result<LieElement> {
        if (self.k, self.s) != (algebra.k(), algebra.s()) {
            return Err(Error::InvalidArgument(format!(
                "document is for (k,s) = ({},{}), expected ({},{})",
                self.k,
                self.s,
                algebra.k(),
                algebra.s()
            )));
        }
        coords_to_element(algebra, &self.coords)
    }
}

pub fn coords_to_element(
    algebra: &LieAlgebra,
    coords: &BTreeMap<usize, String>,
) -> Result<LieElement> {
    let t = algebra.dim();
    let mut pairs = Vec::with_capacity(coords.len());
    for (j, text) in coords {
        if !(1..=t).contains(j) {
            return Err(Error::OutOfRange(format!(
                "basis index {j} outside 1..={t}"
            )));
        }
        let q = parse_rat(text)
            .ok_or_else(|| Error::InvalidArgument(format!("not a rational: {text:?}")))?;
        pairs.push((j - 1, q));
    }
    algebra.element(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Algebra,
    Group,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetHeader {
    pub k: usize,
    pub s: usize,
    pub kind: SetKind,
    pub count: usize,
}

/// A finite set in canonical order; group elements are stored by their
/// logarithms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub header: SetHeader,
    pub elements: Vec<ElementDocument>,
}

impl SetDocument {
    pub fn from_set(algebra: &LieAlgebra, kind: SetKind, set: &FiniteSet<LieElement>) -> Self {
        SetDocument {
            header: SetHeader {
                k: algebra.k(),
                s: algebra.s(),
                kind,
                count: set.len(),
            },
            elements: set
                .iter()
                .map(|a| ElementDocument::from_element(algebra, a))
                .collect(),
        }
    }

    /// Validates the header and returns the elements as a set.
    pub fn to_set(&self, algebra: &LieAlgebra) -> Result<FiniteSet<LieElement>> {
        if self.header.count != self.elements.len() {
            return Err(Error::InvalidArgument(format!(
                "header count {} but {} elements",
                self.header.count,
                self.elements.len()
            )));
        }
        let elems = self
            .elements
            .iter()
            .map(|e| e.to_element(algebra))
            .collect::<Result<Vec<_>>>()?;
        let set = FiniteSet::from_vec(elems);
        if set.len() != self.elements.len() {
            return Err(Error::InvalidArgument("duplicate elements".into()));
        }
        Ok(set)
    }
}
