//! Explicit maps from the restriction monoids over `T_n⁰`, `TRel_n⁰` and
//! `T_n` onto partial maps, demonic relations and left total partitions.
//! Each map is returned as a table; [`verify_unary_map`] checks it.
//!
//! [`verify_unary_map`]: crate::restriction::verify_unary_map

use crate::elements::{BinaryRelation, BlockPartition, PartialTransformation, Transformation};
use crate::error::{Error, Result};
use crate::families::Concrete;
use crate::idempotent::IdempotentSet;
use crate::restriction::RestMonoid;
use crate::semigroup::FiniteMonoid;
use crate::unary::UnaryAlgebra;

fn missing(what: &str) -> Error {
    Error::Malformed(format!("image {what} is not in the target"))
}

pub fn total_as_partial(t: &Transformation) -> PartialTransformation {
    PartialTransformation::new(t.images().iter().map(|&v| Some(v)).collect())
}

pub fn transformation_as_relation(t: &Transformation) -> BinaryRelation {
    BinaryRelation::from_rows(t.images().iter().map(|&v| 1 << v).collect())
}

/// `(e,s) ↦ id_{ran e}·s` from `Rest₀(T_n⁰, E)` to `PT_n`; the zero goes to
/// the empty map.
pub fn theta_partial(
    t: &Concrete<FiniteMonoid, Transformation>,
    r: &RestMonoid,
    pt: &Concrete<UnaryAlgebra, PartialTransformation>,
) -> Result<Vec<usize>> {
    let n = pt.elements()[0].degree();
    r.pairs
        .iter()
        .map(|p| {
            let img = match (t.element(p.e), t.element(p.s)) {
                (Some(e), Some(s)) => {
                    PartialTransformation::restricted_identity(n, e.range_mask()).then(&total_as_partial(s))
                }
                _ => PartialTransformation::empty(n),
            };
            pt.index_of(&img).ok_or_else(|| missing(&img.to_string()))
        })
        .collect()
}

/// `(e,s) ↦ id_{ran e} ⊛ s` from `Rest₀(TRel_n⁰, E)` to demonic `Rel_n`; the
/// zero goes to the empty relation.
pub fn theta_demonic(
    t: &Concrete<FiniteMonoid, BinaryRelation>,
    r: &RestMonoid,
    rel: &Concrete<UnaryAlgebra, BinaryRelation>,
) -> Result<Vec<usize>> {
    let n = rel.elements()[0].degree();
    r.pairs
        .iter()
        .map(|p| {
            let img = match (t.element(p.e), t.element(p.s)) {
                (Some(e), Some(s)) => BinaryRelation::diagonal(n, e.range_mask()).demonic_then(s),
                _ => BinaryRelation::empty(n),
            };
            rel.index_of(&img).ok_or_else(|| missing(&img.to_string()))
        })
        .collect()
}

/// The idempotents of `E ⊆ T_n⁰` as relations in `TRel_n⁰`, the zero going
/// to the adjoined zero.
pub fn idempotents_in_trel(
    t: &Concrete<FiniteMonoid, Transformation>,
    e: &IdempotentSet,
    trel: &Concrete<FiniteMonoid, BinaryRelation>,
) -> Result<IdempotentSet> {
    let members = e
        .members()
        .iter()
        .map(|&x| match t.element(x) {
            Some(f) => trel
                .index_of(&transformation_as_relation(f))
                .ok_or_else(|| missing(&f.to_string())),
            None => trel.adjoined_zero().ok_or(Error::NoZero),
        })
        .collect::<Result<Vec<_>>>()?;
    IdempotentSet::new(&trel.algebra, members)
}

/// `ι(s)`: upper `x` joined to lower `s(x)′`.
pub fn iota(s: &Transformation) -> BlockPartition {
    let n = s.degree();
    let blocks: Vec<Vec<usize>> = (0..n)
        .map(|y| (0..n).filter(|&x| s.apply(x) == y).chain([n + y]).collect())
        .collect();
    BlockPartition::from_blocks(n, &blocks)
}

/// The projection with blocks `A ∪ A′` for the kernel classes `A` of `e`.
pub fn kernel_projection(e: &Transformation) -> BlockPartition {
    let n = e.degree();
    let blocks: Vec<Vec<usize>> = (0..n)
        .filter(|&x| e.kernel_min(x) == x)
        .map(|m| {
            let class: Vec<usize> = (0..n).filter(|&x| e.kernel_min(x) == m).collect();
            class.iter().copied().chain(class.iter().map(|&x| n + x)).collect()
        })
        .collect();
    BlockPartition::from_blocks(n, &blocks)
}

/// `(s,e) ↦ ι(s)·ε(e)` from `RRest(T_n, E)` to `P^lt_n`, with `ε(e)` the
/// kernel projection of `e`.
pub fn theta_left_total(
    t: &Concrete<FiniteMonoid, Transformation>,
    r: &RestMonoid,
    plt: &Concrete<UnaryAlgebra, BlockPartition>,
) -> Result<Vec<usize>> {
    r.pairs
        .iter()
        .map(|p| {
            let (s, e) = t.element(p.s).zip(t.element(p.e)).ok_or(Error::Malformed(
                "the transformation monoid has an adjoined zero".into(),
            ))?;
            let img = iota(s).then(&kernel_projection(e));
            plt.index_of(&img).ok_or_else(|| missing(&img.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{left_total_partition_monoid, partial_transformation_monoid};
    use crate::restriction::{rest0, rrest, verify_unary_map};
    use crate::zappa_szep::{left_reduced_E_TX, right_reduced_E_TX0};

    #[test]
    fn iota_of_a_constant() {
        let c = Transformation::constant(3, 1);
        let p = iota(&c);
        assert_eq!(p.blocks(), vec![vec![0, 1, 2, 4], vec![3], vec![5]]);
        assert_eq!(kernel_projection(&Transformation::identity(2)), BlockPartition::identity(2));
    }

    #[test]
    fn theta_partial_n2() {
        let (t, e) = right_reduced_E_TX0(2).unwrap();
        let r = rest0(&t.algebra, &e).unwrap();
        let pt = partial_transformation_monoid(2).unwrap();
        let theta = theta_partial(&t, &r, &pt).unwrap();
        assert!(verify_unary_map(&r.algebra, &pt.algebra, &theta).is_ok());
    }

    #[test]
    fn theta_left_total_n2() {
        let (t, e) = left_reduced_E_TX(2).unwrap();
        let r = rrest(&t.algebra, &e).unwrap();
        let plt = left_total_partition_monoid(2).unwrap();
        let theta = theta_left_total(&t, &r, &plt).unwrap();
        assert!(verify_unary_map(&r.algebra, &plt.algebra, &theta).is_ok());
    }
}
