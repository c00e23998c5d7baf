//! Dynkin's series against the group law.

#[path = "support/dynkin.rs"]
mod dynkin;

use dynkin::dynkin;
use nilgrowth::scalar::rat;
use nilgrowth::{LieAlgebra, LieElement, Limits, NilGroup, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(algebra: &LieAlgebra, rng: &mut impl Rng) -> LieElement {
    let dense: Vec<Rat> = (0..algebra.dim())
        .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
        .collect();
    algebra.from_dense(&dense)
}

#[test]
fn low_order_coefficients() {
    let lim = Limits::default();
    let g = NilGroup::new(2, 4, &lim).unwrap();
    let a = g.algebra();
    let (x, y) = (a.generator(0), a.generator(1));
    let z = g.mul(&g.exp(&x).unwrap(), &g.exp(&y).unwrap()).unwrap();
    assert_eq!(z.log(), &dynkin(a, &x, &y));
    let xy = a.bracket(&x, &y).unwrap();
    assert_eq!(a.order_component(z.log(), 2), xy.scale(&rat(1, 2)));
    let order3 = a
        .bracket(&x, &xy)
        .unwrap()
        .scale(&rat(1, 12))
        .try_sub(&a.bracket(&y, &xy).unwrap().scale(&rat(1, 12)))
        .unwrap();
    assert_eq!(a.order_component(z.log(), 3), order3);
}

#[test]
fn random_pairs_match_the_series() {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (k, s) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
        let g = NilGroup::new(k, s, &lim).unwrap();
        let a = g.algebra();
        for _ in 0..10 {
            let (x, y) = (random_element(a, &mut rng), random_element(a, &mut rng));
            let z = g.mul(&g.exp(&x).unwrap(), &g.exp(&y).unwrap()).unwrap();
            assert_eq!(z.log(), &dynkin(a, &x, &y), "(k,s)=({k},{s})");
        }
    }
}
