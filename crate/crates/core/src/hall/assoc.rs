//! Degree-truncated free associative algebra on `k` letters.
//!
//! `n_{k,s}` embeds in it as the Lie polynomials of degree at most `s`; the
//! group law is computed here with exponential and logarithm series and
//! projected back onto the Hall basis.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::LieAlgebra;
use super::basis::{HallBasis, Shape};
use super::element::LieElement;
use crate::scalar::Rat;

pub type Word = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocPoly {
    degree: usize,
    terms: BTreeMap<Word, Rat>,
}

impl AssocPoly {
    pub fn zero(degree: usize) -> Self {
        AssocPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, Vec::new(), Rat::one())
    }

    pub fn letter(degree: usize, letter: u8) -> Self {
        Self::monomial(degree, vec![letter], Rat::one())
    }

    pub fn monomial(degree: usize, word: Word, coeff: Rat) -> Self {
        let mut p = Self::zero(degree);
        if word.len() <= degree && !coeff.is_zero() {
            p.terms.insert(word, coeff);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[u8]) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Word, q: Rat) {
        if q.is_zero() || word.len() > self.degree {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(q);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.add_term(w.clone(), q.clone());
        }
        out
    }

    pub fn sub(&self, other: &AssocPoly) -> AssocPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, q: &Rat) -> AssocPoly {
        let mut out = AssocPoly::zero(self.degree);
        if q.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect();
        out
    }

    /// Truncated concatenation product.
    pub fn mul(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::zero(self.degree);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.len() + wb.len() > self.degree {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn commutator(&self, other: &AssocPoly) -> AssocPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// `exp(self)` for `self` without constant term.
    pub fn exp(&self) -> AssocPoly {
        assert!(self.coeff(&[]).is_zero(), "exp needs a zero constant term");
        let mut out = AssocPoly::one(self.degree);
        let mut power = AssocPoly::one(self.degree);
        for n in 1..=self.degree {
            power = power
                .mul(self)
                .scale(&Rat::new(1.into(), (n as i64).into()));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        out
    }

    /// `log(self)` for `self` with constant term 1.
    pub fn log(&self) -> AssocPoly {
        assert!(self.coeff(&[]).is_one(), "log needs constant term 1");
        let w = self.sub(&AssocPoly::one(self.degree));
        let mut out = AssocPoly::zero(self.degree);
        let mut power = AssocPoly::one(self.degree);
        for n in 1..=self.degree {
            power = power.mul(&w);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&Rat::new(sign.into(), (n as i64).into())));
        }
        out
    }
}

/// Expansions of `X_1, …, X_t` as Lie polynomials of degree `≤ s`.
pub fn expand_basis(basis: &HallBasis) -> Vec<AssocPoly> {
    let s = basis.s();
    let mut out: Vec<AssocPoly> = Vec::with_capacity(basis.len());
    for e in basis.elements() {
        let p = match e.shape {
            Shape::Leaf(g) => AssocPoly::letter(s, g as u8),
            Shape::Node(l, r) => out[l].commutator(&out[r]),
        };
        out.push(p);
    }
    out
}

/// Expansion of an arbitrary element as a Lie polynomial.
pub fn expand(expansions: &[AssocPoly], a: &LieElement) -> AssocPoly {
    let degree = expansions.first().map(|p| p.degree()).unwrap_or(0);
    let mut out = AssocPoly::zero(degree);
    for (i, q) in a.coords() {
        out = out.add(&expansions[*i].scale(q));
    }
    out
}

/// Exact rank of a list of polynomials, by Gaussian elimination on their
/// coefficient vectors.
pub fn rank(polys: &[AssocPoly]) -> usize {
    let mut words: Vec<Word> = polys.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    words.sort();
    words.dedup();
    let rows: Vec<Vec<Rat>> = polys
        .iter()
        .map(|p| words.iter().map(|w| p.coeff(w)).collect())
        .collect();
    row_echelon(rows).len()
}

/// Reduced pivot rows; returns `(pivot column, row)` pairs.
fn row_echelon(mut rows: Vec<Vec<Rat>>) -> Vec<(usize, Vec<Rat>)> {
    let mut pivots: Vec<(usize, Vec<Rat>)> = Vec::new();
    for row in rows.iter_mut() {
        for (col, prow) in &pivots {
            if !row[*col].is_zero() {
                let f = row[*col].clone() / &prow[*col];
                for (x, y) in row.iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(col) = row.iter().position(|q| !q.is_zero()) {
            pivots.push((col, row.clone()));
        }
    }
    pivots
}

/// Recovers Hall coordinates of a Lie polynomial by an exact linear solve,
/// one weight space at a time.
#[derive(Clone, Debug)]
pub struct Projector {
    classes: Vec<ProjectionClass>,
}

#[derive(Clone, Debug)]
struct ProjectionClass {
    members: Vec<usize>,
    pivot_words: Vec<Word>,
    /// Inverse of the member × pivot-word coefficient matrix.
    inverse: Vec<Vec<Rat>>,
}

impl Projector {
    pub fn new(basis: &HallBasis, expansions: &[AssocPoly]) -> Self {
        let classes = basis
            .weight_classes()
            .into_iter()
            .map(|(_, members)| {
                let mut words: Vec<Word> = members
                    .iter()
                    .flat_map(|m| expansions[*m].terms.keys().cloned())
                    .collect();
                words.sort();
                words.dedup();
                // rows indexed by member, columns by word
                let rows: Vec<Vec<Rat>> = members
                    .iter()
                    .map(|m| words.iter().map(|w| expansions[*m].coeff(w)).collect())
                    .collect();
                let pivots = row_echelon(rows.clone());
                assert_eq!(
                    pivots.len(),
                    members.len(),
                    "basic commutators of one weight are linearly dependent"
                );
                let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
                // square matrix M[i][r] = coeff of pivot word r in X_{members[i]}
                let square: Vec<Vec<Rat>> = rows
                    .iter()
                    .map(|row| pivot_cols.iter().map(|c| row[*c].clone()).collect())
                    .collect();
                let inverse = invert(square).expect("pivot submatrix is invertible");
                ProjectionClass {
                    members,
                    pivot_words: pivot_cols.iter().map(|c| words[*c].clone()).collect(),
                    inverse,
                }
            })
            .collect();
        Projector { classes }
    }

    /// Hall coordinates `c` with `Σ c_i X_i = p`. Assumes `p` is a Lie
    /// polynomial; components of degree 0 are ignored.
    pub fn project(&self, p: &AssocPoly, t: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); t];
        for class in &self.classes {
            let rhs: Vec<Rat> = class.pivot_words.iter().map(|w| p.coeff(w)).collect();
            if rhs.iter().all(|q| q.is_zero()) {
                continue;
            }
            // c^T M = rhs  =>  c^T = rhs M^{-1}
            for (i, m) in class.members.iter().enumerate() {
                let mut acc = Rat::zero();
                for (r, v) in rhs.iter().enumerate() {
                    acc += v * &class.inverse[r][i];
                }
                out[*m] = acc;
            }
        }
        out
    }
}

/// Gauss-Jordan inverse of a square rational matrix.
fn invert(mut m: Vec<Vec<Rat>>) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let (a, b) = (m[col][j].clone(), inv[col][j].clone());
                    m[r][j] -= &f * a;
                    inv[r][j] -= &f * b;
                }
            }
        }
    }
    Some(inv)
}

/// Cached expansions and projector for one algebra.
#[derive(Clone, Debug)]
pub struct AssocModel {
    expansions: Vec<AssocPoly>,
    projector: Projector,
    t: usize,
}

impl AssocModel {
    pub fn new(algebra: &LieAlgebra) -> Self {
        let expansions = expand_basis(algebra.basis());
        let projector = Projector::new(algebra.basis(), &expansions);
        AssocModel {
            expansions,
            projector,
            t: algebra.dim(),
        }
    }

    pub fn expansions(&self) -> &[AssocPoly] {
        &self.expansions
    }

    pub fn expand(&self, a: &LieElement) -> AssocPoly {
        expand(&self.expansions, a)
    }

    pub fn project(&self, p: &AssocPoly) -> Vec<Rat> {
        self.projector.project(p, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::scalar::{int, rat};

    #[test]
    fn exp_log_roundtrip() {
        let x = AssocPoly::letter(4, 0);
        let y = AssocPoly::letter(4, 1).scale(&rat(1, 3));
        let a = x.add(&y);
        assert_eq!(a.exp().log(), a);
    }

    #[test]
    fn bch_low_orders() {
        let x = AssocPoly::letter(2, 0);
        let y = AssocPoly::letter(2, 1);
        let z = x.exp().mul(&y.exp()).log();
        let expected = x.add(&y).add(&x.commutator(&y).scale(&rat(1, 2)));
        assert_eq!(z, expected);
    }

    #[test]
    fn projection_recovers_coordinates() {
        let g = LieAlgebra::new(3, 3, &Limits::default()).unwrap();
        let model = AssocModel::new(&g);
        let a = g
            .element(vec![
                (0, int(1)),
                (4, rat(-2, 3)),
                (9, int(7)),
                (13, rat(1, 5)),
            ])
            .unwrap();
        let p = model.expand(&a);
        assert_eq!(g.from_dense(&model.project(&p)), a);
    }

    #[test]
    fn basis_expansions_have_full_rank() {
        for (k, s) in [(2, 4), (3, 3), (2, 5)] {
            let g = LieAlgebra::new(k, s, &Limits::default()).unwrap();
            assert_eq!(rank(&expand_basis(g.basis())), g.dim());
        }
    }
}
