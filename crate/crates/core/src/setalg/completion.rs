use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::finite::{Contains, FiniteSet};
use super::lie_sets::AlgSet;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{BasisKey, LieAlgebra, LieElement, WeightVector};
use crate::scalar::{int, Rat};

/// An algebra progression `{Σ_c l_c c : |l_c| ≤ N_c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgProgression {
    pub generators: Vec<LieElement>,
    pub lengths: Vec<i64>,
    /// Weight vector of each generator when it is a commutator in some
    /// underlying `x_1..x_k`.
    pub weights: Vec<WeightVector>,
}

impl AlgProgression {
    /// `{l_1 x_1 + … + l_k x_k : |l_i| ≤ L_i}`.
    pub fn new(generators: Vec<LieElement>, lengths: Vec<i64>) -> Result<Self> {
        if generators.len() != lengths.len() {
            return Err(Error::InvalidArgument(format!(
                "{} generators but {} lengths",
                generators.len(),
                lengths.len()
            )));
        }
        if lengths.iter().any(|l| *l < 0) {
            return Err(Error::InvalidArgument("negative length".into()));
        }
        let k = generators.len();
        let weights = (0..k).map(|i| WeightVector::unit(k, i)).collect();
        Ok(AlgProgression {
            generators,
            lengths,
            weights,
        })
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn count_tuples(&self) -> u128 {
        self.lengths.iter().map(|l| 2 * *l as u128 + 1).product()
    }

    /// The `m`-fold sumset, which is the progression with lengths `m·N_c`.
    pub fn dilated(&self, m: i64) -> AlgProgression {
        AlgProgression {
            generators: self.generators.clone(),
            lengths: self.lengths.iter().map(|l| l * m).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn enumerate(&self, algebra: &LieAlgebra, limits: &Limits) -> Result<AlgSet> {
        for g in &self.generators {
            algebra.check(g)?;
        }
        limits.check_set_size(self.count_tuples())?;
        let mut acc: Vec<LieElement> = vec![algebra.zero()];
        for (g, n) in self.generators.iter().zip(&self.lengths) {
            let multiples: Vec<LieElement> = (-n..=*n).map(|l| g.scale(&int(l))).collect();
            acc = acc
                .par_iter()
                .flat_map_iter(|a| multiples.iter().map(move |m| a.add_unchecked(m)))
                .collect();
            acc.sort_unstable();
            acc.dedup();
        }
        Ok(FiniteSet::from_vec(acc))
    }

    /// Exact membership predicate; needs linearly independent generators so
    /// that coefficients are unique.
    pub fn region(&self, algebra: &LieAlgebra) -> Result<AlgProgressionRegion> {
        let solver = Solver::new(algebra, &self.generators).ok_or_else(|| {
            Error::InvalidArgument("progression generators are linearly dependent".into())
        })?;
        Ok(AlgProgressionRegion {
            key: algebra.key(),
            solver,
            lengths: self.lengths.clone(),
        })
    }
}

/// Left inverse of a full-column-rank matrix, restricted to pivot rows.
#[derive(Clone, Debug)]
struct Solver {
    t: usize,
    columns: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<Rat>>,
}

impl Solver {
    fn new(algebra: &LieAlgebra, generators: &[LieElement]) -> Option<Self> {
        let t = algebra.dim();
        let n = generators.len();
        let columns: Vec<Vec<Rat>> = generators.iter().map(|g| g.to_dense(t)).collect();
        // Row-reduce the transpose to find n independent rows of the t×n matrix.
        let mut rows: Vec<Vec<Rat>> = (0..t)
            .map(|r| (0..n).map(|c| columns[c][r].clone()).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut basis_rows: Vec<(usize, Vec<Rat>)> = Vec::new();
        for (r, row) in rows.iter_mut().enumerate() {
            for (col, b) in &basis_rows {
                if !row[*col].is_zero() {
                    let f = row[*col].clone() / &b[*col];
                    for (x, y) in row.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            if let Some(col) = row.iter().position(|x| !x.is_zero()) {
                pivots.push(r);
                basis_rows.push((col, row.clone()));
            }
        }
        if pivots.len() < n {
            return None;
        }
        let square: Vec<Vec<Rat>> = pivots
            .iter()
            .map(|r| (0..n).map(|c| columns[c][*r].clone()).collect())
            .collect();
        let inverse = invert(square)?;
        Some(Solver {
            t,
            columns,
            pivots,
            inverse,
        })
    }

    /// The unique `l` with `Σ l_c g_c = v`, if any.
    fn solve(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let n = self.columns.len();
        let rhs: Vec<&Rat> = self.pivots.iter().map(|r| &v[*r]).collect();
        let l: Vec<Rat> = (0..n)
            .map(|i| {
                self.inverse[i]
                    .iter()
                    .zip(&rhs)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * *b)
            })
            .collect();
        for r in 0..self.t {
            let got = (0..n).fold(Rat::zero(), |acc, c| acc + &self.columns[c][r] * &l[c]);
            if got != v[r] {
                return None;
            }
        }
        Some(l)
    }
}

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
        let p = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, p);
        inv.swap(col, p);
        let d = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= &d;
            inv[col][j] /= &d;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..n {
                    let a = &f * &m[col][j];
                    m[r][j] -= a;
                    let b = &f * &inv[col][j];
                    inv[r][j] -= b;
                }
            }
        }
    }
    Some(inv)
}

#[derive(Clone, Debug)]
pub struct AlgProgressionRegion {
    key: BasisKey,
    solver: Solver,
    lengths: Vec<i64>,
}

impl AlgProgressionRegion {
    /// Coefficients of `a` on the generators, when `a` lies in their span.
    pub fn coefficients(&self, a: &LieElement) -> Option<Vec<Rat>> {
        if a.key() != self.key {
            return None;
        }
        self.solver.solve(&a.to_dense(self.solver.t))
    }
}

impl Contains<LieElement> for AlgProgressionRegion {
    fn contains_elem(&self, e: &LieElement) -> bool {
        match self.coefficients(e) {
            None => false,
            Some(l) => l
                .iter()
                .zip(&self.lengths)
                .all(|(x, n)| x.is_integer() && x.abs() <= int(*n)),
        }
    }
}

/// The progression `q` built from `p = {Σ l_i x_i : |l_i| ≤ L_i}`: its
/// generators are all commutators `c` of order at most `s` in the `x_i`
/// (zeros dropped, one of `±c` kept), with lengths `k^s L^{χ(c)}`.
pub fn completion_progression(
    algebra: &LieAlgebra,
    generators: &[LieElement],
    lengths: &[u64],
    limits: &Limits,
) -> Result<AlgProgression> {
    let k = generators.len();
    if lengths.len() != k || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "{k} generators but {} lengths",
            lengths.len()
        )));
    }
    for g in generators {
        algebra.check(g)?;
    }
    let s = algebra.s();
    let total: u128 = (1..=s)
        .map(|n| super::lie_sets::bracketing_count(n) * (k as u128).pow(n as u32))
        .sum();
    limits.check_set_size(total)?;
    let cap = (4 * k as u128).pow(s as u32);
    if total > cap {
        return Err(Error::SetTooLarge {
            size: total,
            cap: cap as usize,
        });
    }

    let mut by_leaves: Vec<Vec<(LieElement, WeightVector)>> = vec![generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), WeightVector::unit(k, i)))
        .collect()];
    for n in 2..=s {
        let mut level = Vec::new();
        for left in 1..n {
            for (a, wa) in &by_leaves[left - 1] {
                for (b, wb) in &by_leaves[n - left - 1] {
                    level.push((algebra.bracket_unchecked(a, b), wa.sum(wb)));
                }
            }
        }
        by_leaves.push(level);
    }

    let scale = (k as u64).pow(s as u32);
    let mut out = AlgProgression {
        generators: Vec::new(),
        lengths: Vec::new(),
        weights: Vec::new(),
    };
    for (c, w) in by_leaves.into_iter().flatten() {
        if c.is_zero() || out.generators.contains(&c) || out.generators.contains(&c.neg()) {
            continue;
        }
        let bound = w.monomial(lengths) * scale;
        let bound = num_traits::ToPrimitive::to_i64(&bound)
            .ok_or_else(|| Error::OutOfRange("progression length exceeds i64".into()))?;
        out.generators.push(c);
        out.lengths.push(bound);
        out.weights.push(w);
    }
    Ok(out)
}

/// Writes `m ≤ L_1…L_k` as a sum of at most `2^{k-1}` products
/// `l_1…l_k` with `1 ≤ l_i ≤ L_i`.
///
/// Peels the last coordinate: `m = q·L_k + r` with `1 ≤ r ≤ L_k`; `q` is
/// decomposed over the first `k-1` lengths and `r` contributes the single
/// product `1…1·r`. When `r = L_k` the remainder is absorbed, giving
/// `(q+1)·L_k`.
pub fn decompose_integer(m: u64, lengths: &[u64]) -> Result<Vec<Vec<u64>>> {
    if lengths.is_empty() || lengths.iter().any(|l| *l == 0) {
        return Err(Error::InvalidArgument("lengths must be positive".into()));
    }
    let max = lengths
        .iter()
        .try_fold(1u64, |acc, l| acc.checked_mul(*l))
        .ok_or_else(|| Error::OutOfRange("product of lengths overflows".into()))?;
    if m > max {
        return Err(Error::OutOfRange(format!(
            "{m} exceeds the product of lengths {max}"
        )));
    }
    Ok(decompose(m, lengths))
}

fn decompose(m: u64, lengths: &[u64]) -> Vec<Vec<u64>> {
    if m == 0 {
        return Vec::new();
    }
    let (last, init) = lengths.split_last().expect("nonempty");
    if init.is_empty() {
        return vec![vec![m]];
    }
    let q = (m - 1) / last;
    let r = m - q * last;
    let with_last = |count: u64| -> Vec<Vec<u64>> {
        decompose(count, init)
            .into_iter()
            .map(|mut v| {
                v.push(*last);
                v
            })
            .collect()
    };
    if r == *last {
        with_last(q + 1)
    } else {
        let mut out = with_last(q);
        let mut single = vec![1; init.len()];
        single.push(r);
        out.push(single);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose_integer(12, &[3, 4]).unwrap(), vec![vec![3, 4]]);
        assert_eq!(
            decompose_integer(7, &[3, 4]).unwrap(),
            vec![vec![1, 4], vec![1, 3]]
        );
        assert!(decompose_integer(0, &[3, 4]).unwrap().is_empty());
        assert!(decompose_integer(13, &[3, 4]).is_err());
        for m in 0..=24 {
            let parts = decompose_integer(m, &[2, 3, 4]).unwrap();
            assert!(parts.len() <= 4);
            let sum: u64 = parts.iter().map(|v| v.iter().product::<u64>()).sum();
            assert_eq!(sum, m);
            for v in &parts {
                assert!(v.iter().zip(&[2, 3, 4]).all(|(l, b)| *l >= 1 && l <= b));
            }
        }
    }

    #[test]
    fn completion_generators() {
        let lim = Limits::default();
        let a = LieAlgebra::new(2, 2, &lim).unwrap();
        let q =
            completion_progression(&a, &[a.generator(0), a.generator(1)], &[2, 3], &lim).unwrap();
        assert_eq!(q.generators.len(), 3);
        assert_eq!(q.lengths, vec![8, 12, 24]);
        let a1 = LieAlgebra::new(1, 3, &lim).unwrap();
        let q1 = completion_progression(&a1, &[a1.generator(0)], &[5], &lim).unwrap();
        assert_eq!(q1.generators, vec![a1.generator(0)]);
        assert_eq!(q1.lengths, vec![5]);
    }

    #[test]
    fn region_agrees_with_enumeration() {
        let lim = Limits::default();
        let a = LieAlgebra::new(2, 2, &lim).unwrap();
        let x = a.generator(0).add_unchecked(&a.generator(1));
        let p = AlgProgression::new(vec![x, a.generator(1)], vec![2, 1]).unwrap();
        let set = p.enumerate(&a, &lim).unwrap();
        assert_eq!(set.len(), 15);
        let region = p.region(&a).unwrap();
        assert!(set.is_subset(&region));
        assert!(!region.contains_elem(&a.generator(0).scale(&int(3))));
        assert!(!region.contains_elem(&a.basis_element(2)));
        let dep = AlgProgression::new(vec![a.generator(0), a.generator(0)], vec![1, 1]).unwrap();
        assert!(dep.region(&a).is_err());
    }
}
