#![allow(dead_code)]

use constella::families::full_transformation_monoid;
use constella::semigroup::submonoid_generated;
use constella::{FiniteMonoid, IdempotentSet, Semigroup};
use rand::seq::SliceRandom;
use rand::Rng;

/// A submonoid of `T_3` generated by one or two random maps, with its
/// elements shuffled so that nothing about the index order is special.
/// Retries until the monoid has at most `max` elements.
pub fn random_monoid(rng: &mut impl Rng, max: usize) -> FiniteMonoid {
    let t = full_transformation_monoid(3).unwrap().algebra;
    loop {
        let k = rng.gen_range(1..=2);
        let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..t.size())).collect();
        let (m, _) = submonoid_generated(&t, &gens).unwrap();
        if m.size() > max {
            continue;
        }
        return shuffled(&m, rng);
    }
}

pub fn shuffled(m: &FiniteMonoid, rng: &mut impl Rng) -> FiniteMonoid {
    let n = m.size();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let s = Semigroup::from_fn(n, |x, y| inv[m.mul(perm[x], perm[y])])
        .unwrap()
        .with_one(inv[m.one()])
        .unwrap();
    FiniteMonoid::new(s).unwrap()
}

/// Every non-empty subset of the idempotents.
pub fn idempotent_subsets(s: &Semigroup) -> Vec<IdempotentSet> {
    let idem: Vec<usize> = s.elements().filter(|&x| s.is_idempotent(x)).collect();
    (1u32..1 << idem.len())
        .map(|mask| {
            let members = idem.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x);
            IdempotentSet::new(s, members).unwrap()
        })
        .collect()
}
