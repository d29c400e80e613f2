//! The two actions `s·e` and `s^e = (s·e)s`, the laws (ZS1)-(ZS4), the
//! product `E⋈S`, and the reduced idempotent sets of `T_n`.

use crate::caps::Caps;
use crate::constellation::CompletionElement;
use crate::elements::Transformation;
use crate::error::{Error, Result};
use crate::families::{full_transformation_monoid_with, Concrete};
use crate::idempotent::{maximal_right_pre_reduced, IdempotentSet, Selector};
use crate::laws::{search3, Law, LawOutcome, LawReport};
use crate::modal::{is_inductive_left_E_monoid, InductiveCertificate};
use crate::restriction::RestMonoid;
use crate::semigroup::{FiniteMonoid, Semigroup};
use crate::unary::{make_unary, UnaryAlgebra, UnaryKind};

/// `dot(s, e) = s·e` and `up(s, e) = s^e`.
#[derive(Debug, Clone)]
pub struct TwoActions {
    cert: InductiveCertificate,
    up: Vec<u32>,
}

impl TwoActions {
    pub fn new(s: &FiniteMonoid, e: &IdempotentSet) -> Result<Self> {
        let cert = is_inductive_left_E_monoid(s, e)
            .map_err(|f| Error::NotInductive(serde_json::to_string(&f).expect("serializable")))?;
        let up = s
            .elements()
            .flat_map(|x| e.members().iter().map(move |&f| (x, f)))
            .map(|(x, f)| s.mul(cert.modal.act(x, f), x) as u32)
            .collect();
        Ok(TwoActions { cert, up })
    }

    pub fn e_set(&self) -> &IdempotentSet {
        self.cert.modal.e_set()
    }

    #[inline]
    pub fn dot(&self, s: usize, e: usize) -> usize {
        self.cert.modal.act(s, e)
    }

    #[inline]
    pub fn up(&self, s: usize, e: usize) -> usize {
        let k = self.e_set().len();
        self.up[s * k + self.e_set().position(e).expect("member")] as usize
    }

    #[inline]
    pub fn meet(&self, e: usize, f: usize) -> usize {
        self.cert.meet.meet(e, f)
    }

    pub fn certificate(&self) -> &InductiveCertificate {
        &self.cert
    }

    /// `(e,s)⊗(f,t) = (e∧(s·f), s^f t)`.
    pub fn otimes(&self, s: &Semigroup, a: CompletionElement, b: CompletionElement) -> CompletionElement {
        CompletionElement {
            e: self.meet(a.e, self.dot(a.s, b.e)),
            s: s.mul(self.up(a.s, b.e), b.s),
        }
    }
}

/// (ZS1)-(ZS4). Witnesses are `(s, t, e)` for (ZS1) and (ZS4), and
/// `(s, e, f)` for (ZS2) and (ZS3).
pub fn check_zs_laws(s: &FiniteMonoid, acts: &TwoActions) -> LawReport {
    let e = acts.e_set().members();
    let n = s.size();
    let k = e.len();
    let mut r = LawReport::new();
    let zs1 = search3(n, |x, t, i| {
        i < k && {
            let a = e[i];
            acts.dot(s.mul(x, t), a) != acts.dot(x, acts.dot(t, a))
        }
    })
    .map(|w| vec![w[0], w[1], e[w[2]]]);
    r.push(Law::Zs1, LawOutcome::from_witness(zs1));
    let zs2 = search3(n, |x, i, j| {
        i < k && j < k && {
            let (a, b) = (e[i], e[j]);
            acts.dot(x, acts.meet(a, b)) != acts.meet(acts.dot(x, a), acts.dot(acts.up(x, a), b))
        }
    })
    .map(|w| vec![w[0], e[w[1]], e[w[2]]]);
    r.push(Law::Zs2, LawOutcome::from_witness(zs2));
    let zs3 = search3(n, |x, i, j| {
        i < k && j < k && {
            let (a, b) = (e[i], e[j]);
            acts.up(acts.up(x, a), b) != acts.up(x, acts.meet(a, b))
        }
    })
    .map(|w| vec![w[0], e[w[1]], e[w[2]]]);
    r.push(Law::Zs3, LawOutcome::from_witness(zs3));
    let zs4 = search3(n, |x, t, i| {
        i < k && {
            let a = e[i];
            acts.up(s.mul(x, t), a) != s.mul(acts.up(x, acts.dot(t, a)), acts.up(t, a))
        }
    })
    .map(|w| vec![w[0], w[1], e[w[2]]]);
    r.push(Law::Zs4, LawOutcome::from_witness(zs4));
    r
}

/// `E⋈S` on all of `E × S`, pairs ordered by `E` member then `S` index.
#[derive(Debug, Clone)]
pub struct ZsProduct {
    pub semigroup: Semigroup,
    pub pairs: Vec<CompletionElement>,
}

impl ZsProduct {
    pub fn index_of(&self, e: usize, s: usize) -> Option<usize> {
        self.pairs.iter().position(|p| p.e == e && p.s == s)
    }
}

fn pair_labels(s: &Semigroup, pairs: &[CompletionElement]) -> Vec<String> {
    pairs
        .iter()
        .map(|p| format!("({},{})", s.label(p.e), s.label(p.s)))
        .collect()
}

/// Builds `E⋈S` when all four laws hold, re-checking associativity exhaustively.
pub fn zappa_szep_product(s: &FiniteMonoid, acts: &TwoActions) -> Result<ZsProduct> {
    if let Some((law, _)) = check_zs_laws(s, acts).first_failure() {
        return Err(Error::ZsLawFails(law));
    }
    let e = acts.e_set();
    let n = s.size();
    let pairs: Vec<CompletionElement> = e
        .members()
        .iter()
        .flat_map(|&f| (0..n).map(move |x| CompletionElement { e: f, s: x }))
        .collect();
    let idx = |p: CompletionElement| e.position(p.e).expect("member") * n + p.s;
    let k = pairs.len();
    let table: Vec<u32> = (0..k * k)
        .map(|i| idx(acts.otimes(s, pairs[i / k], pairs[i % k])) as u32)
        .collect();
    let sg = Semigroup::from_flat_unchecked(k, table);
    if let Some((x, y, z)) = sg.associativity_violation() {
        return Err(Error::NotAssociative(x, y, z));
    }
    let semigroup = sg.with_detected_constants().with_labels(pair_labels(s, &pairs))?;
    Ok(ZsProduct { semigroup, pairs })
}

/// `⊗` evaluated on pairs of the completion carrier `{(e,s) : es = s}`.
/// Available even when (ZS3) fails; the values need not stay in the carrier.
#[derive(Debug, Clone)]
pub struct CarrierOtimes {
    pub pairs: Vec<CompletionElement>,
    values: Vec<CompletionElement>,
}

impl CarrierOtimes {
    pub fn get(&self, x: usize, y: usize) -> CompletionElement {
        self.values[x * self.pairs.len() + y]
    }

    /// Least `(x, y)` whose product leaves the carrier.
    pub fn escape(&self) -> Option<(usize, usize)> {
        let k = self.pairs.len();
        (0..k * k)
            .find(|&i| !self.pairs.contains(&self.values[i]))
            .map(|i| (i / k, i % k))
    }

    /// Least `(x, y)` where `⊗` differs from the product of `r`, whose
    /// carrier must list the same pairs.
    pub fn disagreement(&self, r: &RestMonoid) -> Option<(usize, usize)> {
        let k = self.pairs.len();
        assert_eq!(self.pairs, r.pairs, "carriers differ");
        (0..k * k)
            .find(|&i| r.pairs[r.algebra.mul(i / k, i % k)] != self.values[i])
            .map(|i| (i / k, i % k))
    }
}

pub fn otimes_on_completion(s: &FiniteMonoid, acts: &TwoActions) -> CarrierOtimes {
    let pairs: Vec<CompletionElement> = acts
        .e_set()
        .members()
        .iter()
        .flat_map(|&f| s.elements().map(move |x| CompletionElement { e: f, s: x }))
        .filter(|p| s.mul(p.e, p.s) == p.s)
        .collect();
    let values = pairs
        .iter()
        .flat_map(|&a| pairs.iter().map(move |&b| (a, b)))
        .map(|(a, b)| acts.otimes(s, a, b))
        .collect();
    CarrierOtimes { pairs, values }
}

/// The largest subsemigroup of `E⋈S` that is left restriction with
/// projections `Ê = {(e,e)}`.
#[derive(Debug, Clone)]
pub struct MaximalLrs {
    /// indices into the product
    pub members: Vec<usize>,
    pub pairs: Vec<CompletionElement>,
    pub algebra: UnaryAlgebra,
}

/// `{x : D(x)⊗x = x}` with `D(e,s) = (e,e)`; with `zero`, also `x⊗0 = 0⊗x = 0`
/// for `0 = (0,0)`. The result is checked closed and left restriction.
pub fn maximal_lrs_in_zs(zs: &ZsProduct, s: &FiniteMonoid, zero: bool) -> Result<MaximalLrs> {
    let prod = &zs.semigroup;
    let d = |x: usize| {
        let p = zs.pairs[x];
        zs.index_of(p.e, p.e).ok_or(Error::MissingRequired("(e,e)"))
    };
    let z = if zero {
        let z = s.zero().ok_or(Error::NoZero)?;
        Some(zs.index_of(z, z).ok_or(Error::MissingRequired("the zero"))?)
    } else {
        None
    };
    let mut members = Vec::new();
    for x in 0..prod.size() {
        let keep = prod.mul(d(x)?, x) == x
            && z.is_none_or(|z| prod.mul(x, z) == z && prod.mul(z, x) == z);
        if keep {
            members.push(x);
        }
    }
    let (sub, emb) = prod.restrict(&members)?;
    let pos = |x: usize| emb.iter().position(|&y| y == x).expect("member");
    let map = emb.iter().map(|&x| d(x).map(pos)).collect::<Result<Vec<_>>>()?;
    let algebra = make_unary(sub, map, UnaryKind::Domain)?;
    let pairs = members.iter().map(|&x| zs.pairs[x]).collect();
    Ok(MaximalLrs {
        members,
        pairs,
        algebra,
    })
}

/// `T_n⁰` with the right reduced set of projections sending each moved
/// point to the least point of the range, plus the zero.
#[allow(non_snake_case)]
pub fn right_reduced_E_TX0(n: usize) -> Result<(Concrete<FiniteMonoid, Transformation>, IdempotentSet)> {
    right_reduced_E_TX0_with(n, &Caps::from_env())
}

#[allow(non_snake_case)]
pub fn right_reduced_E_TX0_with(
    n: usize,
    caps: &Caps,
) -> Result<(Concrete<FiniteMonoid, Transformation>, IdempotentSet)> {
    let t = full_transformation_monoid_with(n, caps)?.with_adjoined_zero();
    let e = maximal_right_pre_reduced(&t.algebra, Selector::MinOfRange(n))?;
    Ok((t, e))
}

/// `T_n` with the left reduced set of projections onto the least member of
/// each kernel class.
#[allow(non_snake_case)]
pub fn left_reduced_E_TX(n: usize) -> Result<(Concrete<FiniteMonoid, Transformation>, IdempotentSet)> {
    left_reduced_E_TX_with(n, &Caps::from_env())
}

#[allow(non_snake_case)]
pub fn left_reduced_E_TX_with(
    n: usize,
    caps: &Caps,
) -> Result<(Concrete<FiniteMonoid, Transformation>, IdempotentSet)> {
    let t = full_transformation_monoid_with(n, caps)?;
    let e = maximal_right_pre_reduced(&t.algebra, Selector::KernelMin(n))?;
    Ok((t, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idempotent::{
        idempotents, is_right_reduced, left_pre_reduced_violation, left_reduced_violation, sim_l, sim_r,
    };
    use crate::modal::has_definable_meets;
    use crate::restriction::{rest, rest0};
    use crate::semigroup::build_table_monoid;

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

    #[test]
    fn zs3_fails_without_definable_meets() {
        let m = small5();
        let e = IdempotentSet::from_labels(&m, &["e", "1", "f", "g"]).unwrap();
        let acts = TwoActions::new(&m, &e).unwrap();
        let r = check_zs_laws(&m, &acts);
        assert!(r.passes(Law::Zs1) && r.passes(Law::Zs2) && r.passes(Law::Zs4));
        assert!(r.fails(Law::Zs3));
        assert!(!has_definable_meets(&m, &acts.certificate().modal));
        assert_eq!(zappa_szep_product(&m, &acts).unwrap_err(), Error::ZsLawFails(Law::Zs3));
        // without definable meets ⊗ leaves the carrier: (f,f)⊗(e,e) = (e,s)
        let on = otimes_on_completion(&m, &acts);
        let r = rest(&m, &e).unwrap();
        let (x, y) = on.escape().unwrap();
        assert_eq!((r.algebra.label(x), r.algebra.label(y)), ("(f,f)".into(), "(e,e)".into()));
        assert_eq!(on.get(x, y), CompletionElement { e: 0, s: 4 });
        assert!(on.disagreement(&r).is_some());
    }

    #[test]
    fn zs_on_submonoid_with_definable_meets() {
        let m = small5();
        let (sub, _) = m.submonoid(&[0, 1, 2, 4]).unwrap();
        let e = IdempotentSet::from_labels(&sub, &["1", "f", "s"]).unwrap();
        let acts = TwoActions::new(&sub, &e).unwrap();
        assert!(check_zs_laws(&sub, &acts).all_pass());
        assert!(!is_right_reduced(&sub, &e));
        let on = otimes_on_completion(&sub, &acts);
        assert_eq!(on.escape(), None);
        assert_eq!(on.disagreement(&rest(&sub, &e).unwrap()), None);
    }

    #[test]
    fn t2_zero_product_and_maximal_subsemigroup() {
        let (t, e) = right_reduced_E_TX0(2).unwrap();
        let s = &t.algebra;
        assert_eq!(e.len(), 4);
        let acts = TwoActions::new(s, &e).unwrap();
        assert!(check_zs_laws(s, &acts).all_pass());
        let zs = zappa_szep_product(s, &acts).unwrap();
        assert_eq!(zs.semigroup.size(), 20);
        for &a in e.members() {
            for &b in e.members() {
                let x = zs.index_of(a, s.one()).unwrap();
                let y = zs.index_of(b, s.one()).unwrap();
                let p = zs.pairs[zs.semigroup.mul(x, y)];
                // 1^b = (1·b)1 = b
                assert_eq!((p.e, p.s), (acts.meet(a, b), b));
            }
        }
        let lrs = maximal_lrs_in_zs(&zs, s, false).unwrap();
        let r = rest(s, &e).unwrap();
        assert_eq!(lrs.pairs, r.pairs);
        let on = otimes_on_completion(s, &acts);
        assert_eq!(on.escape(), None);
        assert_eq!(on.disagreement(&r), None);
        assert_eq!(lrs.pairs.len(), 12);
        for &f in e.members() {
            assert!(lrs.pairs.contains(&CompletionElement { e: f, s: f }));
        }
        let lrs0 = maximal_lrs_in_zs(&zs, s, true).unwrap();
        assert_eq!(lrs0.pairs, rest0(s, &e).unwrap().pairs);
        assert_eq!(lrs0.pairs.len(), 9);
    }

    #[test]
    fn reduced_sets_for_small_n() {
        for n in 1..=3 {
            let (t, e) = right_reduced_E_TX0(n).unwrap();
            let s = &t.algebra;
            assert!(is_right_reduced(s, &e));
            assert!(e.contains(s.one()) && e.contains(s.zero().unwrap()));
            // maximal: every idempotent is ∼_r to a member
            for &f in idempotents(s).members() {
                assert!(e.members().iter().any(|&g| sim_r(s, f, g)));
            }
            let (t, e) = left_reduced_E_TX(n).unwrap();
            let s = &t.algebra;
            assert_eq!(left_pre_reduced_violation(s, e.members()), None);
            assert_eq!(left_reduced_violation(s, e.members()), None);
            for &f in idempotents(s).members() {
                assert!(e.members().iter().any(|&g| sim_l(s, f, g)));
            }
        }
        let (_, e1) = right_reduced_E_TX0(1).unwrap();
        assert_eq!(e1.len(), 2);
        let (_, e3) = right_reduced_E_TX0(3).unwrap();
        assert_eq!(e3.len(), 8);
    }

    #[test]
    fn caps_apply() {
        assert!(matches!(
            right_reduced_E_TX0_with(4, &Caps::new(100)),
            Err(Error::TooLarge { .. })
        ));
    }
}
