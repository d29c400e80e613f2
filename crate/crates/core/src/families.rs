//! The concrete monoid families, built by enumeration with their elements kept alongside.

use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

use crate::caps::{bell, pow, Caps};
use crate::elements::{BinaryRelation, BlockPartition, PartialTransformation, Transformation};
use crate::error::Result;
use crate::laws::{search1, search2, Law, LawOutcome, LawReport};
use crate::semigroup::{adjoin_zero, FiniteMonoid, Semigroup};
use crate::unary::{make_unary, UnaryAlgebra, UnaryKind};

/// An algebra whose elements are concrete objects.
///
/// When the algebra has an adjoined zero, that index has no concrete element.
#[derive(Debug, Clone)]
pub struct Concrete<A, T> {
    pub algebra: A,
    elements: Vec<T>,
    index: HashMap<T, usize>,
    adjoined_zero: Option<usize>,
}

impl<A, T: Clone + Eq + Hash> Concrete<A, T> {
    fn new(algebra: A, elements: Vec<T>) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Concrete {
            algebra,
            elements,
            index,
            adjoined_zero: None,
        }
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    /// `None` for an adjoined zero.
    pub fn element(&self, i: usize) -> Option<&T> {
        if Some(i) == self.adjoined_zero {
            None
        } else {
            self.elements.get(i)
        }
    }

    pub fn index_of(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn adjoined_zero(&self) -> Option<usize> {
        self.adjoined_zero
    }

    pub fn map_algebra<B>(self, f: impl FnOnce(A) -> B) -> Concrete<B, T> {
        Concrete {
            algebra: f(self.algebra),
            elements: self.elements,
            index: self.index,
            adjoined_zero: self.adjoined_zero,
        }
    }
}

impl<T: Clone + Eq + Hash> Concrete<FiniteMonoid, T> {
    /// `S⁰` with the zero appended last.
    pub fn with_adjoined_zero(self) -> Self {
        let z = self.algebra.size();
        Concrete {
            algebra: adjoin_zero(&self.algebra),
            adjoined_zero: Some(z),
            ..self
        }
    }
}

fn labels_of<T: Display>(elements: &[T]) -> Vec<String> {
    elements.iter().map(|t| t.to_string()).collect()
}

/// Cayley table from a product given on indices.
fn monoid_from_indices<T: Display>(
    elements: &[T],
    one: usize,
    product: impl Fn(usize, usize) -> usize,
) -> Result<FiniteMonoid> {
    let s = Semigroup::from_fn(elements.len(), product)?
        .with_one(one)?
        .with_labels(labels_of(elements))?;
    FiniteMonoid::new(s)
}

fn lookup_product<T: Clone + Eq + Hash + Display>(
    elements: &[T],
    one: &T,
    op: impl Fn(&T, &T) -> T,
) -> Result<FiniteMonoid> {
    let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let one = index[one];
    monoid_from_indices(elements, one, |x, y| index[&op(&elements[x], &elements[y])])
}

pub fn full_transformation_monoid(n: usize) -> Result<Concrete<FiniteMonoid, Transformation>> {
    full_transformation_monoid_with(n, &Caps::from_env())
}

/// `T_n` in lexicographic order of image arrays.
pub fn full_transformation_monoid_with(n: usize, caps: &Caps) -> Result<Concrete<FiniteMonoid, Transformation>> {
    caps.admit("T", n, pow(n as u128, n))?;
    let size = n.pow(n as u32);
    let elements: Vec<Transformation> = (0..size).map(|i| Transformation::from_index(n, i)).collect();
    let one = Transformation::identity(n).index();
    let m = monoid_from_indices(&elements, one, |x, y| elements[x].then(&elements[y]).index())?;
    Ok(Concrete::new(m, elements))
}

pub fn partial_transformation_monoid(n: usize) -> Result<Concrete<UnaryAlgebra, PartialTransformation>> {
    partial_transformation_monoid_with(n, &Caps::from_env())
}

/// `PT_n` with `D(s)` the identity on the domain of `s`; the empty map is the zero.
pub fn partial_transformation_monoid_with(
    n: usize,
    caps: &Caps,
) -> Result<Concrete<UnaryAlgebra, PartialTransformation>> {
    caps.admit("PT", n, pow(n as u128 + 1, n))?;
    let size = (n + 1).pow(n as u32);
    let elements: Vec<PartialTransformation> = (0..size)
        .map(|i| PartialTransformation::from_index(n, i))
        .collect();
    let one = PartialTransformation::identity(n).index();
    let m = monoid_from_indices(&elements, one, |x, y| elements[x].then(&elements[y]).index())?;
    let zero = PartialTransformation::empty(n).index();
    let m = m.with_zero(zero)?;
    let d = elements.iter().map(|p| p.domain().index()).collect();
    let a = make_unary(m.into_semigroup(), d, UnaryKind::Domain)?;
    Ok(Concrete::new(a, elements))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Composition {
    Ordinary,
    Demonic,
}

pub fn relation_monoid(n: usize, composition: Composition) -> Result<Concrete<UnaryAlgebra, BinaryRelation>> {
    relation_monoid_with(n, composition, &Caps::from_env())
}

/// `Rel_n` with `D(ρ)` the diagonal on the domain of `ρ`.
///
/// Under demonic composition this is a left restriction monoid. Under ordinary
/// composition it is only a demigroup, so it carries [`UnaryKind::Demigroup`].
pub fn relation_monoid_with(
    n: usize,
    composition: Composition,
    caps: &Caps,
) -> Result<Concrete<UnaryAlgebra, BinaryRelation>> {
    caps.admit("Rel", n, pow(2, n * n))?;
    let size = 1usize << (n * n);
    let elements: Vec<BinaryRelation> = (0..size).map(|i| BinaryRelation::from_index(n, i)).collect();
    let one = BinaryRelation::identity(n).index();
    let m = match composition {
        Composition::Ordinary => {
            monoid_from_indices(&elements, one, |x, y| elements[x].then(&elements[y]).index())?
        }
        Composition::Demonic => monoid_from_indices(&elements, one, |x, y| {
            elements[x].demonic_then(&elements[y]).index()
        })?,
    };
    let m = m.with_zero(0)?;
    let d = elements.iter().map(|r| r.domain().index()).collect();
    let kind = match composition {
        Composition::Ordinary => UnaryKind::Demigroup,
        Composition::Demonic => UnaryKind::Domain,
    };
    let a = make_unary(m.into_semigroup(), d, kind)?;
    Ok(Concrete::new(a, elements))
}

pub fn left_total_relation_monoid(n: usize, with_zero: bool) -> Result<Concrete<FiniteMonoid, BinaryRelation>> {
    left_total_relation_monoid_with(n, with_zero, &Caps::from_env())
}

/// `TRel_n` (optionally with adjoined zero), in the index order of `Rel_n`.
pub fn left_total_relation_monoid_with(
    n: usize,
    with_zero: bool,
    caps: &Caps,
) -> Result<Concrete<FiniteMonoid, BinaryRelation>> {
    caps.admit("TRel", n, pow(pow(2, n) - 1, n) + with_zero as u128)?;
    let elements: Vec<BinaryRelation> = (0..1usize << (n * n))
        .map(|i| BinaryRelation::from_index(n, i))
        .filter(BinaryRelation::is_left_total)
        .collect();
    let m = lookup_product(&elements, &BinaryRelation::identity(n), BinaryRelation::then)?;
    let c = Concrete::new(m, elements);
    Ok(if with_zero { c.with_adjoined_zero() } else { c })
}

pub fn partition_monoid(n: usize) -> Result<PartitionMonoid> {
    partition_monoid_with(n, &Caps::from_env())
}

/// `P_n` with its involution.
#[derive(Debug, Clone)]
pub struct PartitionMonoid {
    pub monoid: Concrete<FiniteMonoid, BlockPartition>,
    /// `star[x]` is the index of `x*`.
    pub star: Vec<usize>,
}

impl PartitionMonoid {
    /// `x** = x`, `(xy)* = y*x*` and `xx*x = x`, least witnesses.
    pub fn check_star_laws(&self) -> LawReport {
        let m = &self.monoid.algebra;
        let st = &self.star;
        let n = m.size();
        let mut r = LawReport::new();
        r.push(
            Law::Involution,
            LawOutcome::from_witness(
                search1(n, |x| st[st[x]] != x)
                    .or_else(|| search2(n, |x, y| st[m.mul(x, y)] != m.mul(st[y], st[x]))),
            ),
        );
        r.push(
            Law::Regular,
            LawOutcome::from_witness(search1(n, |x| m.mul3(x, st[x], x) != x)),
        );
        r
    }
}

/// `P_n` in restricted-growth-string order.
pub fn partition_monoid_with(n: usize, caps: &Caps) -> Result<PartitionMonoid> {
    caps.admit("P", n, bell(2 * n))?;
    let elements = BlockPartition::enumerate(n);
    let m = lookup_product(&elements, &BlockPartition::identity(n), BlockPartition::then)?;
    let c = Concrete::new(m, elements);
    let star = c
        .elements()
        .iter()
        .map(|p| c.index_of(&p.star()).expect("closed under star"))
        .collect();
    Ok(PartitionMonoid { monoid: c, star })
}

pub fn left_total_partition_monoid(n: usize) -> Result<Concrete<UnaryAlgebra, BlockPartition>> {
    left_total_partition_monoid_with(n, &Caps::from_env())
}

/// `P^lt_n` with `R(ρ)` the projection induced by the lower-row pattern of `ρ`.
pub fn left_total_partition_monoid_with(
    n: usize,
    caps: &Caps,
) -> Result<Concrete<UnaryAlgebra, BlockPartition>> {
    caps.admit("Plt", n, bell(2 * n))?;
    let elements: Vec<BlockPartition> = BlockPartition::enumerate(n)
        .into_iter()
        .filter(BlockPartition::is_left_total)
        .collect();
    let m = lookup_product(&elements, &BlockPartition::identity(n), BlockPartition::then)?;
    let c = Concrete::new(m, elements);
    let r = c
        .elements()
        .iter()
        .map(|p| c.index_of(&p.range_projection()).expect("projection is left total"))
        .collect();
    let c = c.map_algebra(|m| make_unary(m.into_semigroup(), r, UnaryKind::Range));
    Ok(Concrete {
        algebra: c.algebra?,
        elements: c.elements,
        index: c.index,
        adjoined_zero: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::restriction::check_left_restriction;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes() {
        assert_eq!(full_transformation_monoid(1).unwrap().algebra.size(), 1);
        assert_eq!(full_transformation_monoid(2).unwrap().algebra.size(), 4);
        assert_eq!(full_transformation_monoid(3).unwrap().algebra.size(), 27);
        assert_eq!(partial_transformation_monoid(1).unwrap().algebra.size(), 2);
        assert_eq!(partial_transformation_monoid(2).unwrap().algebra.size(), 9);
        assert_eq!(partial_transformation_monoid(3).unwrap().algebra.size(), 64);
        assert_eq!(relation_monoid(2, Composition::Demonic).unwrap().algebra.size(), 16);
        assert_eq!(left_total_relation_monoid(1, false).unwrap().algebra.size(), 1);
        assert_eq!(left_total_relation_monoid(1, true).unwrap().algebra.size(), 2);
        assert_eq!(left_total_relation_monoid(2, true).unwrap().algebra.size(), 10);
        assert_eq!(left_total_relation_monoid(3, false).unwrap().algebra.size(), 343);
        assert_eq!(partition_monoid(1).unwrap().monoid.algebra.size(), 2);
        assert_eq!(partition_monoid(2).unwrap().monoid.algebra.size(), 15);
        assert_eq!(left_total_partition_monoid(2).unwrap().algebra.size(), 5);
    }

    #[test]
    fn t3_has_ten_idempotents() {
        let t3 = full_transformation_monoid(3).unwrap();
        let m = &t3.algebra;
        assert_eq!(m.elements().filter(|&x| m.is_idempotent(x)).count(), 10);
        // oracle: maps with t(t(x)) = t(x)
        let brute = t3
            .elements()
            .iter()
            .filter(|t| (0..3).all(|x| t.apply(t.apply(x)) == t.apply(x)))
            .count();
        assert_eq!(brute, 10);
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps::new(100);
        assert!(matches!(
            full_transformation_monoid_with(4, &caps),
            Err(Error::TooLarge { size: 256, .. })
        ));
        assert!(matches!(
            relation_monoid_with(3, Composition::Demonic, &caps),
            Err(Error::TooLarge { size: 512, .. })
        ));
        assert!(matches!(
            partition_monoid_with(3, &caps),
            Err(Error::TooLarge { size: 203, .. })
        ));
        assert_eq!(full_transformation_monoid(0).unwrap_err(), Error::EmptyGroundSet);
    }

    #[test]
    fn pt2_domain_laws() {
        let pt = partial_transformation_monoid(2).unwrap();
        assert!(check_left_restriction(&pt.algebra).all_pass());
        let zero = pt.algebra.zero().unwrap();
        assert_eq!(pt.algebra.unary(zero), zero);
    }

    #[test]
    fn pt3_domain_laws_on_random_triples() {
        let pt = partial_transformation_monoid(3).unwrap();
        let a = &pt.algebra;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let x = rng.gen_range(0..a.size());
            let y = rng.gen_range(0..a.size());
            let d = |v| a.unary(v);
            assert_eq!(a.mul(d(x), x), x);
            assert_eq!(a.mul(d(x), d(y)), a.mul(d(y), d(x)));
            assert_eq!(d(a.mul(d(x), y)), a.mul(d(x), d(y)));
            assert_eq!(a.mul(x, d(y)), a.mul(d(a.mul(x, y)), x));
        }
    }

    #[test]
    fn demonic_example_product() {
        let rel = relation_monoid(2, Composition::Demonic).unwrap();
        let a = rel.index_of(&BinaryRelation::new(2, &[(0, 0), (0, 1), (1, 0)])).unwrap();
        let t = rel.index_of(&BinaryRelation::new(2, &[(0, 0), (0, 1)])).unwrap();
        let want = rel.index_of(&BinaryRelation::new(2, &[(1, 0), (1, 1)])).unwrap();
        assert_eq!(rel.algebra.mul(a, t), want);
    }

    #[test]
    fn ordinary_and_demonic_agree_when_range_inside_domain() {
        let mut agree = 0;
        for i in 0..16 {
            for j in 0..16 {
                let r = BinaryRelation::from_index(2, i);
                let s = BinaryRelation::from_index(2, j);
                if r.range_mask() & !s.domain_mask() == 0 {
                    assert_eq!(r.then(&s), r.demonic_then(&s));
                    agree += 1;
                }
            }
        }
        assert!(agree > 0);
    }

    #[test]
    fn demonic_is_associative_up_to_three() {
        for n in 1..=3 {
            let rel = relation_monoid(n, Composition::Demonic).unwrap();
            assert!(rel.algebra.base().associativity_violation().is_none());
        }
    }

    #[test]
    fn ordinary_relations_break_r4() {
        let rel = relation_monoid(2, Composition::Ordinary).unwrap();
        let report = check_left_restriction(&rel.algebra);
        assert!(report.fails(Law::R4));
        assert!(report.passes(Law::R1));
    }

    #[test]
    fn partition_star_laws_n2() {
        let p = partition_monoid(2).unwrap();
        assert!(p.check_star_laws().all_pass());
        assert!(p.monoid.algebra.associativity_violation().is_none());
    }

    #[test]
    fn partition_associative_on_random_p3_triples() {
        let all = BlockPartition::enumerate(3);
        assert_eq!(all.len(), 203);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let [a, b, c] = [0; 3].map(|_| &all[rng.gen_range(0..all.len())]);
            assert_eq!(a.then(b).then(c), a.then(&b.then(c)));
        }
    }

    #[test]
    fn range_projection_of_identity() {
        let id = BlockPartition::identity(3);
        assert_eq!(id.range_projection(), id);
    }

    #[test]
    fn plt2_has_five_elements_by_filter() {
        let p2 = partition_monoid(2).unwrap();
        let count = p2
            .monoid
            .elements()
            .iter()
            .filter(|p| p.is_left_total())
            .count();
        assert_eq!(count, 5);
    }
}
