//! Dynkin's series for `log(e^X e^Y)`, computed with right-nested brackets
//! only, as an oracle for the group law.

use nilgrowth::scalar::{int, rat};
use nilgrowth::{LieAlgebra, LieElement};

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// All sequences of `n` pairs `(r_i, s_i)`, each nonzero, with total degree
/// at most `budget`.
fn pair_sequences(n: usize, budget: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for r in 0..=budget {
        for s in 0..=budget - r {
            if r + s == 0 {
                continue;
            }
            for mut rest in pair_sequences(n - 1, budget - r - s) {
                rest.insert(0, (r, s));
                out.push(rest);
            }
        }
    }
    out
}

pub fn dynkin(algebra: &LieAlgebra, x: &LieElement, y: &LieElement) -> LieElement {
    let s = algebra.s();
    let mut total = algebra.zero();
    for n in 1..=s {
        for seq in pair_sequences(n, s) {
            let degree: usize = seq.iter().map(|(r, s)| r + s).sum();
            let mut denom = rat(degree as i64, 1);
            let mut letters = Vec::new();
            for (r, t) in &seq {
                denom = denom * int(factorial(*r) * factorial(*t));
                letters.extend(std::iter::repeat(x).take(*r));
                letters.extend(std::iter::repeat(y).take(*t));
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let coeff = rat(sign, n as i64) / denom;
            let mut nested: LieElement = (*letters.last().unwrap()).clone();
            for l in letters.iter().rev().skip(1) {
                nested = algebra.bracket(l, &nested).unwrap();
            }
            total = total.try_add(&nested.scale(&coeff)).unwrap();
        }
    }
    total
}
