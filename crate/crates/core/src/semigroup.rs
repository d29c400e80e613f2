//! Finite semigroups and monoids given by Cayley tables.

use std::collections::VecDeque;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite semigroup on `0..size` with an optional declared identity and zero.
///
/// The table is stored row-major: `mul(x, y)` is `table[x * size + y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    size: usize,
    table: Vec<u32>,
    one: Option<usize>,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
}

impl Semigroup {
    /// Builds from nested rows and checks shape, range and associativity.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for &v in row {
                if v >= n {
                    return Err(Error::OutOfRange { index: v, size: n });
                }
                table.push(v as u32);
            }
        }
        let s = Semigroup::from_flat_unchecked(n, table);
        s.verify_associative()?;
        Ok(s)
    }

    /// Builds from a product function and checks associativity.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let s = Self::from_fn_unchecked(size, f)?;
        s.verify_associative()?;
        Ok(s)
    }

    /// Builds from a product function whose associativity is already known.
    pub(crate) fn from_fn_unchecked(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::Empty);
        }
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let v = f(x, y);
                if v >= size {
                    return Err(Error::OutOfRange { index: v, size });
                }
                table.push(v as u32);
            }
        }
        Ok(Self::from_flat_unchecked(size, table))
    }

    pub(crate) fn from_flat_unchecked(size: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        Semigroup {
            size,
            table,
            one: None,
            zero: None,
            labels: None,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y] as usize
    }

    pub fn mul3(&self, x: usize, y: usize, z: usize) -> usize {
        self.mul(self.mul(x, y), z)
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `x`: its label if present, its index otherwise.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Index of the element with the given label.
    pub fn find_label(&self, name: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == name)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|x| (0..self.size).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::Malformed(format!(
                "{} labels for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Declares `one` as identity after checking it.
    pub fn with_one(mut self, one: usize) -> Result<Self> {
        self.check_index(one)?;
        if let Some(x) = self.identity_failure(one) {
            return Err(Error::BadIdentity(x));
        }
        self.one = Some(one);
        Ok(self)
    }

    /// Declares `zero` as zero after checking it.
    pub fn with_zero(mut self, zero: usize) -> Result<Self> {
        self.check_index(zero)?;
        if let Some(x) = self.zero_failure(zero) {
            return Err(Error::BadZero(x));
        }
        self.zero = Some(zero);
        Ok(self)
    }

    /// Declares whichever identity and zero the table actually has.
    pub fn with_detected_constants(mut self) -> Self {
        self.one = self.detect_identity();
        self.zero = self.detect_zero();
        self
    }

    pub fn detect_identity(&self) -> Option<usize> {
        (0..self.size).find(|&e| self.identity_failure(e).is_none())
    }

    pub fn detect_zero(&self) -> Option<usize> {
        (0..self.size).find(|&z| self.zero_failure(z).is_none())
    }

    fn identity_failure(&self, e: usize) -> Option<usize> {
        (0..self.size).find(|&x| self.mul(e, x) != x || self.mul(x, e) != x)
    }

    fn zero_failure(&self, z: usize) -> Option<usize> {
        (0..self.size).find(|&x| self.mul(z, x) != z || self.mul(x, z) != z)
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: x,
                size: self.size,
            })
        }
    }

    /// Least `(x, y, z)` with `(xy)z != x(yz)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Light's test: `(xg)z = x(gz)` for all `x, z` and every `g` in a
    /// generating set is equivalent to associativity. Falls back to the
    /// exhaustive scan when it fails, so the witness is still the least one.
    fn verify_associative(&self) -> Result<()> {
        let n = self.size;
        let light_ok = self.greedy_generators().into_iter().all(|g| {
            (0..n).all(|x| {
                let xg = self.mul(x, g);
                (0..n).all(|z| self.mul(xg, z) == self.mul(x, self.mul(g, z)))
            })
        });
        if light_ok {
            return Ok(());
        }
        match self.associativity_violation() {
            Some((x, y, z)) => Err(Error::NotAssociative(x, y, z)),
            None => Ok(()),
        }
    }

    /// A generating set chosen greedily, largest right ideals first.
    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.size;
        let mut order: Vec<(usize, usize)> = (0..n)
            .map(|x| {
                let mut seen = vec![false; n];
                let k = (0..n).filter(|&y| !std::mem::replace(&mut seen[self.mul(x, y)], true)).count();
                (k, x)
            })
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut in_closure = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut gens = Vec::new();
        for (_, c) in order {
            if in_closure[c] {
                continue;
            }
            gens.push(c);
            in_closure[c] = true;
            members.push(c);
            // extend the closure, multiplying each new element against all members
            let mut i = members.len() - 1;
            while i < members.len() {
                let x = members[i];
                let mut j = 0;
                while j <= i {
                    let y = members[j];
                    for p in [self.mul(x, y), self.mul(y, x)] {
                        if !in_closure[p] {
                            in_closure[p] = true;
                            members.push(p);
                        }
                    }
                    j += 1;
                }
                i += 1;
            }
            if members.len() == n {
                break;
            }
        }
        gens
    }

    /// The opposite semigroup, `x *op y = y * x`, with the same constants and labels.
    pub fn opposite(&self) -> Self {
        let n = self.size;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(self.table[y * n + x]);
            }
        }
        Semigroup {
            size: n,
            table,
            one: self.one,
            zero: self.zero,
            labels: self.labels.clone(),
        }
    }

    /// Restriction to a closed subset, listed in the given order.
    ///
    /// Returns the subsemigroup and the embedding (new index -> parent index).
    /// Identity and zero carry over when they lie in the subset.
    pub fn restrict(&self, subset: &[usize]) -> Result<(Semigroup, Vec<usize>)> {
        if subset.is_empty() {
            return Err(Error::Empty);
        }
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in subset.iter().enumerate() {
            self.check_index(x)?;
            if pos[x] != usize::MAX {
                return Err(Error::Malformed(format!("element {x} listed twice")));
            }
            pos[x] = i;
        }
        let m = subset.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in subset {
            for &y in subset {
                let p = pos[self.mul(x, y)];
                if p == usize::MAX {
                    return Err(Error::NotClosed(x, y));
                }
                table.push(p as u32);
            }
        }
        let map_const = |c: Option<usize>| c.and_then(|c| (pos[c] != usize::MAX).then(|| pos[c]));
        let sub = Semigroup {
            size: m,
            table,
            one: map_const(self.one),
            zero: map_const(self.zero),
            labels: self
                .labels
                .as_ref()
                .map(|l| subset.iter().map(|&x| l[x].clone()).collect()),
        };
        Ok((sub, subset.to_vec()))
    }

    /// Closure of `gens` under the product, in breadth-first discovery order.
    pub fn closure(&self, gens: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &g in gens {
            self.check_index(g)?;
            if !seen[g] {
                seen[g] = true;
                order.push(g);
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for i in 0..order.len() {
                let y = order[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !seen[p] {
                        seen[p] = true;
                        order.push(p);
                        queue.push_back(p);
                    }
                }
            }
        }
        Ok(order)
    }

    /// Least pair of non-zero elements with zero product, if the zero is declared.
    pub fn zero_divisor(&self) -> Option<(usize, usize)> {
        let z = self.zero?;
        (0..self.size)
            .filter(|&x| x != z)
            .flat_map(|x| (0..self.size).map(move |y| (x, y)))
            .find(|&(x, y)| y != z && self.mul(x, y) == z)
    }
}

/// A [`Semigroup`] with a declared identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid(Semigroup);

impl Deref for FiniteMonoid {
    type Target = Semigroup;

    fn deref(&self) -> &Semigroup {
        &self.0
    }
}

impl FiniteMonoid {
    /// Wraps a semigroup, detecting the identity if none is declared.
    pub fn new(s: Semigroup) -> Result<Self> {
        if s.one.is_some() {
            return Ok(FiniteMonoid(s));
        }
        match s.detect_identity() {
            Some(one) => Ok(FiniteMonoid(Semigroup { one: Some(one), ..s })),
            None => Err(Error::NoIdentity),
        }
    }

    pub fn one(&self) -> usize {
        self.0.one.expect("monoid identity")
    }

    pub fn as_semigroup(&self) -> &Semigroup {
        &self.0
    }

    pub fn into_semigroup(self) -> Semigroup {
        self.0
    }

    pub fn opposite(&self) -> FiniteMonoid {
        FiniteMonoid(self.0.opposite())
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Ok(FiniteMonoid(self.0.with_labels(labels)?))
    }

    pub fn with_zero(self, zero: usize) -> Result<Self> {
        Ok(FiniteMonoid(self.0.with_zero(zero)?))
    }

    /// Declares the zero if the table has one.
    pub fn with_detected_zero(self) -> Self {
        let z = self.0.detect_zero();
        FiniteMonoid(Semigroup { zero: z, ..self.0 })
    }

    /// Restriction to a closed subset containing the identity.
    pub fn submonoid(&self, subset: &[usize]) -> Result<(FiniteMonoid, Vec<usize>)> {
        if !subset.contains(&self.one()) {
            return Err(Error::MissingRequired("the identity"));
        }
        let (s, emb) = self.0.restrict(subset)?;
        Ok((FiniteMonoid(s), emb))
    }
}

/// Validated monoid from a square table with the given identity, optional zero and labels.
pub fn build_table_monoid(
    rows: &[Vec<usize>],
    one: usize,
    zero: Option<usize>,
    labels: Option<Vec<String>>,
) -> Result<FiniteMonoid> {
    let mut s = Semigroup::from_rows(rows)?.with_one(one)?;
    if let Some(z) = zero {
        s = s.with_zero(z)?;
    }
    if let Some(l) = labels {
        s = s.with_labels(l)?;
    }
    Ok(FiniteMonoid(s))
}

/// `S⁰`: a new zero appended as the last element, labelled `0` when labels exist.
pub fn adjoin_zero(s: &FiniteMonoid) -> FiniteMonoid {
    let n = s.size();
    let z = n;
    let sg = Semigroup::from_fn_unchecked(n + 1, |x, y| {
        if x == z || y == z {
            z
        } else {
            s.mul(x, y)
        }
    })
    .expect("non-empty");
    let labels = s.labels().map(|l| {
        let mut l = l.to_vec();
        l.push("0".to_string());
        l
    });
    FiniteMonoid(Semigroup {
        one: Some(s.one()),
        zero: Some(z),
        labels,
        ..sg
    })
}

/// Submonoid generated by `gens` and the identity, with its embedding.
///
/// Elements are listed in increasing parent index.
pub fn submonoid_generated(s: &FiniteMonoid, gens: &[usize]) -> Result<(FiniteMonoid, Vec<usize>)> {
    let mut all = gens.to_vec();
    all.push(s.one());
    let mut members = s.closure(&all)?;
    members.sort_unstable();
    s.submonoid(&members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    // rows and columns in the order e, 1, f, g, s
    fn small5() -> FiniteMonoid {
        let rows = vec![
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 2, 3, 4],
            vec![0, 2, 2, 0, 0],
            vec![4, 3, 4, 3, 4],
            vec![4, 4, 4, 4, 4],
        ];
        build_table_monoid(&rows, 1, None, Some(labels(&["e", "1", "f", "g", "s"]))).unwrap()
    }

    #[test]
    fn small_example_accepted() {
        let m = small5();
        let e = m.find_label("e").unwrap();
        let f = m.find_label("f").unwrap();
        assert_eq!(m.mul(e, f), e);
        assert!(m.elements().all(|x| m.is_idempotent(x)));
    }

    #[test]
    fn trivial_monoid() {
        let m = build_table_monoid(&[vec![0]], 0, None, None).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.one(), 0);
    }

    #[test]
    fn zero_one_a() {
        // 0, 1, a with a² = 0
        let rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
        let m = build_table_monoid(&rows, 1, Some(0), None).unwrap();
        assert_eq!(m.mul(2, 2), 0);
        assert_eq!(m.zero_divisor(), Some((2, 2)));
    }

    #[test]
    fn rejects_bad_tables() {
        // x*y = x is associative, x*y = y - x mod 3 is not
        let bad: Vec<Vec<usize>> = (0..3)
            .map(|x| (0..3).map(|y| (y + 3 - x) % 3).collect())
            .collect();
        assert!(matches!(
            build_table_monoid(&bad, 0, None, None),
            Err(Error::NotAssociative(..))
        ));
        let left_zero: Vec<Vec<usize>> = (0..2).map(|x| vec![x, x]).collect();
        assert_eq!(
            build_table_monoid(&left_zero, 0, None, None),
            Err(Error::BadIdentity(1))
        );
        let rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
        assert_eq!(build_table_monoid(&rows, 1, Some(2), None), Err(Error::BadZero(0)));
        assert!(matches!(
            build_table_monoid(&[vec![0, 1]], 0, None, None),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            build_table_monoid(&[vec![0, 2], vec![1, 0]], 0, None, None),
            Err(Error::OutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn adjoin_zero_shapes() {
        let t = build_table_monoid(&[vec![0]], 0, None, None).unwrap();
        let t0 = adjoin_zero(&t);
        assert_eq!(t0.size(), 2);
        assert_eq!(t0.zero(), Some(1));
        assert_eq!(t0.mul(0, 0), 0);
        let s0 = adjoin_zero(&small5());
        assert_eq!(s0.size(), 6);
        assert_eq!(s0.label(5), "0");
        assert!(s0.associativity_violation().is_none());
    }

    #[test]
    fn submonoid_of_small_example() {
        let m = small5();
        let gens: Vec<usize> = ["e", "1", "f", "s"]
            .iter()
            .map(|l| m.find_label(l).unwrap())
            .collect();
        let (sub, emb) = submonoid_generated(&m, &gens).unwrap();
        assert_eq!(sub.size(), 4);
        let names: Vec<String> = emb.iter().map(|&x| m.label(x)).collect();
        assert_eq!(names, vec!["e", "1", "f", "s"]);
        let (triv, emb) = submonoid_generated(&m, &[m.one()]).unwrap();
        assert_eq!(triv.size(), 1);
        assert_eq!(emb, vec![1]);
    }

    #[test]
    fn opposite_reverses() {
        let m = small5();
        let op = m.opposite();
        for x in m.elements() {
            for y in m.elements() {
                assert_eq!(op.mul(x, y), m.mul(y, x));
            }
        }
        assert_eq!(op.opposite(), m);
    }

    #[test]
    fn restrict_rejects_open_subset() {
        let m = small5();
        // f*g = e leaves {1, f, g}
        assert_eq!(m.restrict(&[1, 2, 3]).unwrap_err(), Error::NotClosed(2, 3));
    }

    proptest! {
        #[test]
        fn adjoin_zero_preserves_products(a in 0usize..5, b in 0usize..5) {
            let m = small5();
            let m0 = adjoin_zero(&m);
            prop_assert_eq!(m0.mul(a, b), m.mul(a, b));
            prop_assert_eq!(m0.mul(a, 5), 5);
            prop_assert_eq!(m0.mul(5, b), 5);
        }
    }
}
