use rayon::prelude::*;
use serde::Serialize;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::hall::{build_hall_basis, HallBasis, Shape};
use crate::nilgroup::{GroupElement, NilGroup};
use crate::scalar::int;
use crate::setalg::{
    enumerate_progression, progression_factors, progression_tuples, Contains, FiniteSet,
    FreeProgression, Group, ProgressionSpec,
};

/// A relation `a_1^{ε_1} … a_m^{ε_m} = id` whose image is not the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreimanViolation<E> {
    pub tuple: Vec<E>,
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreimanHomReport<E> {
    pub holds: bool,
    /// Relations examined, with `ε_i = 0` positions counted once.
    pub checked: u128,
    pub violation: Option<FreimanViolation<E>>,
}

/// Tests whether `φ` preserves every relation of length `m` among elements
/// of `domain`, with signs in `{-1, 0, 1}`.
///
/// A zero sign makes the letter irrelevant, so those positions are visited
/// once, using the smallest domain element as the placeholder in witnesses.
pub fn freiman_hom_check<G: Group, H: Group>(
    domain_group: &G,
    image_group: &H,
    domain: &FiniteSet<G::Elem>,
    map: impl Fn(&G::Elem) -> Option<H::Elem>,
    m: usize,
    limits: &Limits,
) -> Result<FreimanHomReport<G::Elem>> {
    if domain.is_empty() {
        return Err(Error::InvalidArgument("empty domain".into()));
    }
    limits.check_set_size((domain.len() as u128).saturating_pow(m as u32))?;
    let images: Vec<H::Elem> = domain
        .iter()
        .map(|a| map(a).ok_or(Error::UndefinedImage))
        .collect::<Result<_>>()?;
    // letters: (index, sign) with sign 0 only for index 0
    let mut letters: Vec<(usize, i8)> = vec![(0, 0)];
    for i in 0..domain.len() {
        letters.push((i, 1));
        letters.push((i, -1));
    }
    let dom: Vec<[G::Elem; 2]> = domain
        .iter()
        .map(|a| [a.clone(), domain_group.inv(a)])
        .collect();
    let img: Vec<[H::Elem; 2]> = images
        .iter()
        .map(|b| [b.clone(), image_group.inv(b)])
        .collect();
    let letter = |(i, e): (usize, i8)| -> (G::Elem, H::Elem) {
        match e {
            0 => (domain_group.identity(), image_group.identity()),
            1 => (dom[i][0].clone(), img[i][0].clone()),
            _ => (dom[i][1].clone(), img[i][1].clone()),
        }
    };

    struct Walk<'a, G: Group, H: Group> {
        g: &'a G,
        h: &'a H,
        letters: &'a [(usize, i8)],
        letter: &'a (dyn Fn((usize, i8)) -> (G::Elem, H::Elem) + Sync),
    }

    impl<G: Group, H: Group> Walk<'_, G, H> {
        fn go(&self, depth: usize, x: &G::Elem, y: &H::Elem, path: &mut Vec<(usize, i8)>) -> bool {
            if depth == 0 {
                return !(*x == self.g.identity() && *y != self.h.identity());
            }
            for &l in self.letters {
                let (a, b) = (self.letter)(l);
                path.push(l);
                if !self.go(depth - 1, &self.g.mul(x, &a), &self.h.mul(y, &b), path) {
                    return false;
                }
                path.pop();
            }
            true
        }
    }

    let walk = Walk {
        g: domain_group,
        h: image_group,
        letters: &letters,
        letter: &letter,
    };
    let violation = if m == 0 {
        None
    } else {
        letters.par_iter().find_map_first(|&first| {
            let (a, b) = letter(first);
            let mut path = vec![first];
            (!walk.go(m - 1, &a, &b, &mut path)).then_some(path)
        })
    };
    let checked = (letters.len() as u128).pow(m as u32);
    Ok(FreimanHomReport {
        holds: violation.is_none(),
        checked,
        violation: violation.map(|path| FreimanViolation {
            tuple: path
                .iter()
                .map(|(i, _)| domain.elements()[*i].clone())
                .collect(),
            signs: path.iter().map(|(_, e)| *e).collect(),
        }),
    })
}

/// A word in the generators: `(index, ±1)` letters.
pub type Word = Vec<(usize, i8)>;

fn inverse_word(w: &Word) -> Word {
    w.iter().rev().map(|(g, e)| (*g, -e)).collect()
}

/// Expands each basic commutator into a word, `[a, b] = a^{-1}b^{-1}ab`.
pub fn commutator_words(shapes: &HallBasis) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(shapes.len());
    for e in shapes.elements() {
        let w = match e.shape {
            Shape::Leaf(g) => vec![(g, 1)],
            Shape::Node(l, r) => {
                let mut w = inverse_word(&out[l]);
                w.extend(inverse_word(&out[r]));
                w.extend(out[l].iter().copied());
                w.extend(out[r].iter().copied());
                w
            }
        };
        out.push(w);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreimanInvarianceReport {
    pub k: usize,
    pub s: usize,
    pub lengths: Vec<u64>,
    /// Words checked for the proviso: the `w_j` for `j > k` and the
    /// `(s+1)`-fold commutators.
    pub words: usize,
    pub proviso_holds: bool,
    pub proviso_failure: Option<String>,
    pub factors_match: bool,
    pub tuples_checked: usize,
    pub tuples_match: bool,
    pub image_equals_progression: bool,
    pub holds: bool,
}

/// Checks that an injective homomorphism `φ` of `N_{k,s}` carries
/// `P(u; L)` onto the progression `P(φ(u); L)`.
///
/// The proviso is that every initial segment of every defining word lies
/// in `P(u; L)`; when it fails the report says so and stops.
pub fn freiman_invariance_check(
    group: &NilGroup,
    lengths: &[u64],
    phi: impl Fn(&GroupElement) -> GroupElement + Sync,
    limits: &Limits,
) -> Result<FreimanInvarianceReport> {
    let (k, s) = (group.k(), group.s());
    let shapes = group.algebra().basis();
    let region = FreeProgression::new(group, lengths, 1, &int(1))?;
    let mut words: Vec<Word> = commutator_words(shapes).into_iter().skip(k).collect();
    let longer = build_hall_basis(k, s + 1, limits)?;
    let top = longer.order_range(s + 1);
    words.extend(commutator_words(&longer).into_iter().skip(top.start));

    let gens: Vec<GroupElement> = (0..k).map(|i| group.generator(i)).collect();
    let gens_inv: Vec<GroupElement> = gens.iter().map(|g| Group::inv(group, g)).collect();
    let mut failure = None;
    'words: for (w_index, w) in words.iter().enumerate() {
        let mut acc = Group::identity(group);
        for (p, (g, e)) in w.iter().enumerate() {
            let letter = if *e > 0 { &gens[*g] } else { &gens_inv[*g] };
            acc = Group::mul(group, &acc, letter);
            if !region.contains_elem(&acc) {
                failure = Some(format!(
                    "prefix of length {} of word {} has group coordinates {:?}",
                    p + 1,
                    w_index + 1,
                    group
                        .to_group_coords(&acc)
                        .iter()
                        .map(crate::scalar::rat_to_string)
                        .collect::<Vec<_>>()
                ));
                break 'words;
            }
        }
    }
    let mut report = FreimanInvarianceReport {
        k,
        s,
        lengths: lengths.to_vec(),
        words: words.len(),
        proviso_holds: failure.is_none(),
        proviso_failure: failure,
        factors_match: false,
        tuples_checked: 0,
        tuples_match: false,
        image_equals_progression: false,
        holds: false,
    };
    if !report.proviso_holds {
        return Ok(report);
    }

    let v_gens: Vec<GroupElement> = gens.iter().map(&phi).collect();
    let u_factors = progression_factors(group, shapes, &gens);
    let v_factors = progression_factors(group, shapes, &v_gens);
    report.factors_match = u_factors.iter().zip(&v_factors).all(|(u, v)| phi(u) == *v);

    let u_spec = ProgressionSpec::new(gens, lengths.to_vec());
    let v_spec = ProgressionSpec::new(v_gens, lengths.to_vec());
    let u_tuples = progression_tuples(group, shapes, &u_spec, limits)?;
    let v_tuples = progression_tuples(group, shapes, &v_spec, limits)?;
    report.tuples_checked = u_tuples.len();
    report.tuples_match = u_tuples
        .par_iter()
        .zip(&v_tuples)
        .all(|((l, x), (l2, y))| l == l2 && phi(x) == *y);
    let image: FiniteSet<GroupElement> = u_tuples.iter().map(|(_, x)| phi(x)).collect();
    report.image_equals_progression =
        image == enumerate_progression(group, shapes, &v_spec, limits)?;
    report.holds = report.factors_match && report.tuples_match && report.image_equals_progression;
    Ok(report)
}
