//! Small named monoids and partitions used throughout the examples, with
//! their conventional element names.

use crate::elements::{BinaryRelation, BlockPartition, Transformation};
use crate::error::Result;
use crate::families::{full_transformation_monoid, left_total_relation_monoid, Concrete};
use crate::semigroup::{build_table_monoid, FiniteMonoid};

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Five elements `e, 1, f, g, s`: `f, g` idempotent with `fg = e`, `gf = s`.
pub fn small5() -> FiniteMonoid {
    let rows = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 2, 3, 4],
        vec![0, 2, 2, 0, 0],
        vec![4, 3, 4, 3, 4],
        vec![4, 4, 4, 4, 4],
    ];
    build_table_monoid(&rows, 1, None, Some(names(&["e", "1", "f", "g", "s"]))).expect("valid table")
}

/// The semilattice `0 < e, f < 1` with `ef = 0`.
pub fn band_0ef1() -> FiniteMonoid {
    let rows = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]];
    build_table_monoid(&rows, 3, Some(0), Some(names(&["0", "e", "f", "1"]))).expect("valid table")
}

/// `{0, 1, a}` with `a² = 0`.
pub fn monoid_01a() -> FiniteMonoid {
    let rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
    build_table_monoid(&rows, 1, Some(0), Some(names(&["0", "1", "a"]))).expect("valid table")
}

/// The trivial monoid.
pub fn trivial() -> FiniteMonoid {
    build_table_monoid(&[vec![0]], 0, None, Some(names(&["1"]))).expect("valid table")
}

/// `T_2⁰` in lexicographic order, named `e = [0,0]`, `1`, `i = [1,0]`, `f = [1,1]`, `0`.
pub fn t2_zero() -> Result<Concrete<FiniteMonoid, Transformation>> {
    let mut t = full_transformation_monoid(2)?.with_adjoined_zero();
    t.algebra = t.algebra.with_labels(names(&["e", "1", "i", "f", "0"]))?;
    Ok(t)
}

/// `TRel_2⁰` in relation index order. Writing a relation by its two rows as
/// bitmasks: `e = [1,1]`, `1 = [1,2]`, `h = [1,3]`, `i = [2,1]`, `f = [2,2]`,
/// `b = [2,3]`, `a = [3,1]`, `g = [3,2]`, `∇ = [3,3]`, then `0`.
pub fn trel2_zero() -> Result<Concrete<FiniteMonoid, BinaryRelation>> {
    let mut t = left_total_relation_monoid(2, true)?;
    t.algebra = t
        .algebra
        .with_labels(names(&["e", "1", "h", "i", "f", "b", "a", "g", "∇", "0"]))?;
    Ok(t)
}

/// The three partitions of the five-point picture: `ρ`, `t` and `e` with `ρ = te`.
pub fn figure_partitions() -> (BlockPartition, BlockPartition, BlockPartition) {
    let n = 5;
    // upper points 1..=5 are 0..5, lower points 1'..=5' are 5..10
    let u = |i: usize| i - 1;
    let l = |i: usize| n + i - 1;
    let rho = BlockPartition::from_blocks(
        n,
        &[vec![u(1), u(2), l(1)], vec![u(3), u(4), u(5), l(4), l(5)], vec![l(2), l(3)]],
    );
    let t = BlockPartition::from_blocks(
        n,
        &[
            vec![u(1), u(2), l(1)],
            vec![u(3), u(4), l(4)],
            vec![u(5), l(5)],
            vec![l(2)],
            vec![l(3)],
        ],
    );
    let e = BlockPartition::from_blocks(
        n,
        &[vec![u(1), l(1)], vec![u(2), u(3), l(2), l(3)], vec![u(4), u(5), l(4), l(5)]],
    );
    (rho, t, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_zero_names_match_maps() {
        let t = t2_zero().unwrap();
        let s = &t.algebra;
        assert_eq!(t.element(0).unwrap().images(), &[0, 0]);
        assert_eq!(t.element(2).unwrap().images(), &[1, 0]);
        let (i, e, f) = (2, 0, 3);
        // x(ie) = e(i(x)) is constant 0
        assert_eq!(s.mul(i, e), e);
        assert_eq!(s.mul(e, i), f);
        assert_eq!(s.label(4), "0");
    }

    #[test]
    fn trel2_zero_names_match_rows() {
        let t = trel2_zero().unwrap();
        let want: [(&str, [u32; 2]); 9] = [
            ("e", [1, 1]),
            ("1", [1, 2]),
            ("h", [1, 3]),
            ("i", [2, 1]),
            ("f", [2, 2]),
            ("b", [2, 3]),
            ("a", [3, 1]),
            ("g", [3, 2]),
            ("∇", [3, 3]),
        ];
        for (k, (name, rows)) in want.iter().enumerate() {
            assert_eq!(t.algebra.label(k), *name);
            assert_eq!(t.element(k).unwrap().rows(), rows);
        }
        assert_eq!(t.algebra.size(), 10);
    }

    #[test]
    fn figure_identities() {
        let (rho, t, e) = figure_partitions();
        assert_eq!(t.then(&e), rho);
        assert_eq!(rho.range_projection(), e);
        assert_eq!(t.range_projection(), BlockPartition::identity(5));
        assert_eq!(e.range_projection(), e);
        assert!(rho.is_left_total() && t.is_left_total() && e.is_left_total());
    }

    #[test]
    fn named_tables_are_valid() {
        assert_eq!(small5().size(), 5);
        assert_eq!(band_0ef1().zero(), Some(0));
        assert_eq!(monoid_01a().mul(2, 2), 0);
        assert_eq!(trivial().size(), 1);
    }
}
