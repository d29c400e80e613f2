//! Idempotent sets: the quasiorders, (pre-)reducedness, equalizers and protomodality.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::elements::Transformation;
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IdempotentFlags {
    pub right_pre_reduced: bool,
    pub left_pre_reduced: bool,
    pub right_reduced: bool,
    pub left_reduced: bool,
    pub contains_one: bool,
    pub contains_zero: bool,
}

/// A set of idempotents of some parent semigroup, sorted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSet {
    members: Vec<usize>,
    flags: IdempotentFlags,
}

impl IdempotentSet {
    pub fn new(s: &Semigroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::Empty);
        }
        for &e in &members {
            s.check_index(e)?;
            if !s.is_idempotent(e) {
                return Err(Error::NotIdempotent(e));
            }
        }
        let flags = compute_flags(s, &members);
        Ok(IdempotentSet { members, flags })
    }

    /// Members given by label.
    pub fn from_labels(s: &Semigroup, labels: &[&str]) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|l| {
                s.find_label(l)
                    .ok_or_else(|| Error::Malformed(format!("no element labelled {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(s, idx)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of `x` among the members.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn flags(&self) -> IdempotentFlags {
        self.flags
    }

    /// Recomputes the flags against `s`.
    pub fn flags_hold(&self, s: &Semigroup) -> bool {
        compute_flags(s, &self.members) == self.flags
    }

    pub fn labels(&self, s: &Semigroup) -> Vec<String> {
        self.members.iter().map(|&x| s.label(x)).collect()
    }
}

fn compute_flags(s: &Semigroup, members: &[usize]) -> IdempotentFlags {
    IdempotentFlags {
        right_pre_reduced: right_pre_reduced_violation(s, members).is_none(),
        left_pre_reduced: right_pre_reduced_violation(&s.opposite(), members).is_none(),
        right_reduced: right_reduced_violation(s, members).is_none(),
        left_reduced: right_reduced_violation(&s.opposite(), members).is_none(),
        contains_one: s.one().is_some_and(|o| members.contains(&o)),
        contains_zero: s.zero().is_some_and(|z| members.contains(&z)),
    }
}

/// `E(S)`.
pub fn idempotents(s: &Semigroup) -> IdempotentSet {
    IdempotentSet::new(s, s.elements().filter(|&x| s.is_idempotent(x))).expect("a finite semigroup has an idempotent")
}

/// `e ≤_r f` iff `e = ef`.
pub fn leq_r(s: &Semigroup, e: usize, f: usize) -> bool {
    s.mul(e, f) == e
}

/// `e ≤_l f` iff `e = fe`.
pub fn leq_l(s: &Semigroup, e: usize, f: usize) -> bool {
    s.mul(f, e) == e
}

pub fn sim_r(s: &Semigroup, e: usize, f: usize) -> bool {
    leq_r(s, e, f) && leq_r(s, f, e)
}

pub fn sim_l(s: &Semigroup, e: usize, f: usize) -> bool {
    leq_l(s, e, f) && leq_l(s, f, e)
}

fn classes_by(members: &[usize], same: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &e in members {
        match classes.iter_mut().find(|c| same(c[0], e)) {
            Some(c) => c.push(e),
            None => classes.push(vec![e]),
        }
    }
    classes
}

/// `∼_r` classes of a set of idempotents, each sorted, ordered by least member.
pub fn sim_r_classes(s: &Semigroup, f: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = f.to_vec();
    sorted.sort_unstable();
    classes_by(&sorted, |a, b| sim_r(s, a, b))
}

pub fn sim_l_classes(s: &Semigroup, f: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = f.to_vec();
    sorted.sort_unstable();
    classes_by(&sorted, |a, b| sim_l(s, a, b))
}

/// Least pair of distinct `∼_r`-related members.
pub fn right_pre_reduced_violation(s: &Semigroup, members: &[usize]) -> Option<(usize, usize)> {
    for &e in members {
        for &f in members {
            if e != f && sim_r(s, e, f) {
                return Some((e, f));
            }
        }
    }
    None
}

/// Least pair with `e = ef` but `e ≠ fe`.
pub fn right_reduced_violation(s: &Semigroup, members: &[usize]) -> Option<(usize, usize)> {
    for &e in members {
        for &f in members {
            if s.mul(e, f) == e && s.mul(f, e) != e {
                return Some((e, f));
            }
        }
    }
    None
}

pub fn left_pre_reduced_violation(s: &Semigroup, members: &[usize]) -> Option<(usize, usize)> {
    right_pre_reduced_violation(&s.opposite(), members)
}

/// Least pair with `e = fe` but `e ≠ ef`.
pub fn left_reduced_violation(s: &Semigroup, members: &[usize]) -> Option<(usize, usize)> {
    right_reduced_violation(&s.opposite(), members)
}

pub fn is_right_pre_reduced(s: &Semigroup, e: &IdempotentSet) -> bool {
    right_pre_reduced_violation(s, e.members()).is_none()
}

pub fn is_right_reduced(s: &Semigroup, e: &IdempotentSet) -> bool {
    right_reduced_violation(s, e.members()).is_none()
}

pub fn is_reduced(s: &Semigroup, e: &IdempotentSet) -> bool {
    is_right_reduced(s, e) && left_reduced_violation(s, e.members()).is_none()
}

/// How to pick one idempotent per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    /// least index in each `∼_r` class
    LeastIndex,
    /// for `T_n` or `T_n⁰` in lexicographic order: the projection sending
    /// every moved point to the least point of its range
    MinOfRange(usize),
    /// for `T_n` or `T_n⁰` in lexicographic order: one representative per
    /// `∼_l` class, sending each kernel class to its least member
    KernelMin(usize),
}

/// The transformation behind index `x` if `s` is `T_n` or `T_n⁰` in lexicographic order.
fn as_transformation_family(s: &Semigroup, n: usize) -> Result<Vec<Option<Transformation>>> {
    let inapplicable = || Error::SelectorInapplicable(format!("monoid is not T_{n} or T_{n} with zero"));
    if n == 0 || n > 6 {
        return Err(inapplicable());
    }
    let base = n.pow(n as u32);
    let with_zero = match s.size() {
        k if k == base => false,
        k if k == base + 1 => true,
        _ => return Err(inapplicable()),
    };
    if with_zero && s.zero() != Some(base) {
        return Err(inapplicable());
    }
    let elems: Vec<Transformation> = (0..base).map(|i| Transformation::from_index(n, i)).collect();
    for x in 0..base {
        for y in 0..base {
            if s.mul(x, y) != elems[x].then(&elems[y]).index() {
                return Err(inapplicable());
            }
        }
    }
    let mut out: Vec<Option<Transformation>> = elems.into_iter().map(Some).collect();
    if with_zero {
        out.push(None);
    }
    Ok(out)
}

/// One representative per `∼_r` class of `E(S)`; for [`Selector::KernelMin`],
/// one per `∼_l` class instead.
pub fn maximal_right_pre_reduced(s: &Semigroup, selector: Selector) -> Result<IdempotentSet> {
    let all = idempotents(s);
    match selector {
        Selector::LeastIndex => {
            let reps = sim_r_classes(s, all.members()).into_iter().map(|c| c[0]);
            IdempotentSet::new(s, reps)
        }
        Selector::MinOfRange(n) => {
            let family = as_transformation_family(s, n)?;
            let keep = all.members().iter().copied().filter(|&x| match &family[x] {
                None => true,
                Some(t) => {
                    let u = t.min_of_range();
                    (0..n).all(|p| t.apply(p) == p || t.apply(p) == u)
                }
            });
            IdempotentSet::new(s, keep)
        }
        Selector::KernelMin(n) => {
            let family = as_transformation_family(s, n)?;
            let keep = all.members().iter().copied().filter(|&x| match &family[x] {
                None => true,
                Some(t) => (0..n).all(|p| t.apply(p) == t.kernel_min(p)),
            });
            IdempotentSet::new(s, keep)
        }
    }
}

/// One representative per `∼_l` class of `E(S)`, least index.
pub fn maximal_left_pre_reduced(s: &Semigroup) -> IdempotentSet {
    let all = idempotents(s);
    IdempotentSet::new(s, sim_l_classes(s, all.members()).into_iter().map(|c| c[0])).expect("non-empty")
}

/// A bijection `e ↦ e′` with `e ∼_r e′`, as pairs in the order of `e`.
pub fn right_equivalent(s: &Semigroup, e: &IdempotentSet, e2: &IdempotentSet) -> Option<Vec<(usize, usize)>> {
    if e.len() != e2.len() {
        return None;
    }
    let mut used = vec![false; e2.len()];
    let mut pairs = Vec::with_capacity(e.len());
    for &a in e.members() {
        let j = (0..e2.len()).find(|&j| !used[j] && sim_r(s, a, e2.members()[j]))?;
        used[j] = true;
        pairs.push((a, e2.members()[j]));
    }
    Some(pairs)
}

/// `Eq(a, b) = {u : ua = ub}`.
pub fn equalizer(s: &Semigroup, a: usize, b: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(s.size());
    for u in s.elements() {
        if s.mul(u, a) == s.mul(u, b) {
            out.insert(u);
        }
    }
    out
}

pub fn equalizer_set(s: &Semigroup, a: usize, b: usize) -> Vec<usize> {
    equalizer(s, a, b).ones().collect()
}

/// `S·e` for a monoid, or `S¹·e` in general.
pub fn left_ideal(s: &Semigroup, e: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(s.size());
    out.insert(e);
    for u in s.elements() {
        out.insert(s.mul(u, e));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub element: usize,
    /// No other candidate generates the same ideal.
    pub unique: bool,
}

/// Some member `e` of `f` with `S·e = l`, least index first.
pub fn ideal_generator_in(s: &Semigroup, l: &FixedBitSet, f: &[usize]) -> Option<Generator> {
    let mut found = f.iter().copied().filter(|&e| left_ideal(s, e) == *l);
    let element = found.next()?;
    Some(Generator {
        element,
        unique: found.next().is_none(),
    })
}

/// Left ideals of a fixed candidate set, indexed for lookup.
pub(crate) struct IdealIndex {
    by_ideal: HashMap<FixedBitSet, Vec<usize>>,
}

impl IdealIndex {
    pub(crate) fn new(s: &Semigroup, candidates: &[usize]) -> Self {
        let mut by_ideal: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        for &e in candidates {
            by_ideal.entry(left_ideal(s, e)).or_default().push(e);
        }
        IdealIndex { by_ideal }
    }

    pub(crate) fn generators(&self, l: &FixedBitSet) -> &[usize] {
        self.by_ideal.get(l).map_or(&[], Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProtomodalFailure {
    pub s: usize,
    pub e: usize,
    pub equalizer: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProtomodalReport {
    pub protomodal: bool,
    /// every `(s, e)` whose `Eq(s, se)` has no generator in the set, in order
    pub failures: Vec<ProtomodalFailure>,
}

/// Is every `Eq(s, se)`, `e ∈ F`, a left ideal `S·f` with `f ∈ F`? `F` defaults to `E(S)`.
pub fn is_protomodal(s: &Semigroup, f: Option<&IdempotentSet>) -> ProtomodalReport {
    let all;
    let f = match f {
        Some(f) => f,
        None => {
            all = idempotents(s);
            &all
        }
    };
    let index = IdealIndex::new(s, f.members());
    let mut failures = Vec::new();
    for &e in f.members() {
        for x in s.elements() {
            let q = equalizer(s, x, s.mul(x, e));
            if index.generators(&q).is_empty() {
                failures.push(ProtomodalFailure {
                    s: x,
                    e,
                    equalizer: q.ones().collect(),
                });
            }
        }
    }
    failures.sort_by_key(|p| (p.s, p.e));
    ProtomodalReport {
        protomodal: failures.is_empty(),
        failures,
    }
}

#[derive(Debug, Clone)]
pub struct LargestProtomodal {
    /// the union of all `F` for which `S` is `F`-protomodal
    pub g: IdempotentSet,
    /// least-index representatives of the `∼_r` classes of `g`
    pub e_prime: IdempotentSet,
    pub iterations: usize,
}

/// The largest `G ⊆ E(S)` with `S` `G`-protomodal, as a greatest fixpoint.
///
/// Start from the idempotents `e` for which every `Eq(s, se)` has some
/// idempotent generator, then repeatedly drop `e` when some `Eq(s, se)`
/// has no generator left in the current set.
pub fn largest_protomodal_idempotents(s: &Semigroup) -> LargestProtomodal {
    let all = idempotents(s);
    let index = IdealIndex::new(s, all.members());
    // generators in E(S) of Eq(s, se), for every e and s
    let gens: Vec<Vec<Vec<usize>>> = all
        .members()
        .iter()
        .map(|&e| {
            s.elements()
                .map(|x| index.generators(&equalizer(s, x, s.mul(x, e))).to_vec())
                .collect()
        })
        .collect();
    let mut alive = vec![true; all.len()];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let next: Vec<bool> = (0..all.len())
            .map(|i| {
                alive[i]
                    && gens[i].iter().all(|g| {
                        g.iter()
                            .any(|&f| alive[all.position(f).expect("generator is idempotent")])
                    })
            })
            .collect();
        if next == alive {
            break;
        }
        alive = next;
    }
    let members: Vec<usize> = all
        .members()
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(&e, _)| e)
        .collect();
    if members.is_empty() {
        // only possible without an identity; 1 always survives in a monoid
        let e = all.members()[0];
        let g = IdempotentSet::new(s, [e]).unwrap();
        return LargestProtomodal {
            e_prime: g.clone(),
            g,
            iterations,
        };
    }
    let g = IdempotentSet::new(s, members).expect("non-empty");
    let e_prime =
        IdempotentSet::new(s, sim_r_classes(s, g.members()).into_iter().map(|c| c[0])).expect("non-empty");
    LargestProtomodal {
        g,
        e_prime,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{adjoin_zero, build_table_monoid, FiniteMonoid};

    fn small5() -> FiniteMonoid {
        let rows = vec![
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 2, 3, 4],
            vec![0, 2, 2, 0, 0],
            vec![4, 3, 4, 3, 4],
            vec![4, 4, 4, 4, 4],
        ];
        let labels = ["e", "1", "f", "g", "s"].map(String::from).to_vec();
        build_table_monoid(&rows, 1, None, Some(labels)).unwrap()
    }

    // indices: e=[0,0] 1=[0,1] i=[1,0] f=[1,1] 0
    fn t2_zero() -> FiniteMonoid {
        let maps: [[usize; 2]; 4] = [[0, 0], [0, 1], [1, 0], [1, 1]];
        let idx = |m: [usize; 2]| maps.iter().position(|&k| k == m).unwrap();
        let rows: Vec<Vec<usize>> = maps
            .iter()
            .map(|a| maps.iter().map(|b| idx([b[a[0]], b[a[1]]])).collect())
            .collect();
        let t2 = build_table_monoid(&rows, 1, None, None).unwrap();
        adjoin_zero(&t2)
    }

    fn zero_one_a() -> FiniteMonoid {
        let rows = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 0]];
        build_table_monoid(&rows, 1, Some(0), Some(["0", "1", "a"].map(String::from).to_vec())).unwrap()
    }

    #[test]
    fn small5_idempotents_and_sim_r() {
        let m = small5();
        let all = idempotents(&m);
        assert_eq!(all.len(), 5);
        assert_eq!(right_pre_reduced_violation(&m, all.members()), Some((0, 4)));
        assert!(!all.flags().right_pre_reduced);
        let classes = sim_r_classes(&m, all.members());
        assert_eq!(classes, vec![vec![0, 4], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn every_idempotent_below_one() {
        let m = small5();
        for e in idempotents(&m).members() {
            assert!(leq_r(&m, *e, m.one()));
            assert!(leq_l(&m, *e, m.one()));
        }
    }

    #[test]
    fn t2_zero_flags() {
        let m = t2_zero();
        let e = IdempotentSet::new(&m, [4, 1, 0, 3]).unwrap();
        let f = e.flags();
        assert!(f.right_pre_reduced && f.right_reduced && f.contains_one && f.contains_zero);
        assert!(e.flags_hold(&m));
        let single = IdempotentSet::new(&m, [1]).unwrap();
        assert!(is_reduced(&m, &single));
    }

    #[test]
    fn sim_r_classes_of_t2_by_range() {
        let m = t2_zero();
        let all = idempotents(&m);
        // idempotents of T_2: e, 1, f; with the zero
        assert_eq!(all.members(), &[0, 1, 3, 4]);
        assert_eq!(sim_r_classes(&m, all.members()).len(), 4);
    }

    #[test]
    fn maximal_sets() {
        let m = small5();
        let e = maximal_right_pre_reduced(&m, Selector::LeastIndex).unwrap();
        assert_eq!(e.labels(&m), vec!["e", "1", "f", "g"]);
        let t = t2_zero();
        let e = maximal_right_pre_reduced(&t, Selector::LeastIndex).unwrap();
        assert_eq!(e.members(), &[0, 1, 3, 4]);
        assert!(matches!(
            maximal_right_pre_reduced(&m, Selector::MinOfRange(2)),
            Err(Error::SelectorInapplicable(_))
        ));
        let e = maximal_right_pre_reduced(&t, Selector::MinOfRange(2)).unwrap();
        assert_eq!(e.members(), &[0, 1, 3, 4]);
    }

    #[test]
    fn right_equivalence_swaps_e_and_s() {
        let m = small5();
        let e = IdempotentSet::from_labels(&m, &["1", "e", "f", "g"]).unwrap();
        let e2 = IdempotentSet::from_labels(&m, &["1", "s", "f", "g"]).unwrap();
        let pairs = right_equivalent(&m, &e, &e2).unwrap();
        assert!(pairs.contains(&(0, 4)));
        assert!(pairs.iter().filter(|(a, b)| a != b).count() == 1);
        let id = right_equivalent(&m, &e, &e).unwrap();
        assert!(id.iter().all(|(a, b)| a == b));
        let bad = IdempotentSet::from_labels(&m, &["1", "f", "g"]).unwrap();
        assert!(right_equivalent(&m, &e, &bad).is_none());
    }

    #[test]
    fn equalizers() {
        let t = t2_zero();
        // Eq(e, i) = {0, f}
        assert_eq!(equalizer_set(&t, 0, 2), vec![3, 4]);
        assert_eq!(equalizer_set(&t, 2, 2).len(), 5);
        let l = equalizer(&t, 0, 2);
        let g = ideal_generator_in(&t, &l, &[0, 1, 3, 4]).unwrap();
        assert_eq!(g, Generator { element: 3, unique: true });
        let all = left_ideal(&t, t.one());
        assert_eq!(ideal_generator_in(&t, &all, &[1]).unwrap().element, 1);
    }

    #[test]
    fn zero_one_a_is_not_protomodal() {
        let m = zero_one_a();
        let l = equalizer(&m, 2, 0);
        assert_eq!(l.ones().collect::<Vec<_>>(), vec![0, 2]);
        assert!(ideal_generator_in(&m, &l, &[0, 1]).is_none());
        let r = is_protomodal(&m, None);
        assert!(!r.protomodal);
        assert_eq!(
            r.failures[0],
            ProtomodalFailure {
                s: 2,
                e: 0,
                equalizer: vec![0, 2]
            }
        );
    }

    #[test]
    fn t2_zero_protomodal_and_g_is_everything() {
        let t = t2_zero();
        assert!(is_protomodal(&t, None).protomodal);
        let g = largest_protomodal_idempotents(&t);
        assert_eq!(g.g, idempotents(&t));
    }

    #[test]
    fn group_g_is_one() {
        let z3: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y) % 3).collect()).collect();
        let m = build_table_monoid(&z3, 0, None, None).unwrap();
        let g = largest_protomodal_idempotents(&m);
        assert_eq!(g.g.members(), &[0]);
    }
}
