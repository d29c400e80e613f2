//! The modal action `t·e`, meets in `(E, ≤_r)`, and the inductive left E-monoid test.

use serde::Serialize;

use crate::idempotent::{equalizer, leq_r, right_pre_reduced_violation, IdealIndex, IdempotentSet};
use crate::laws::{Law, LawOutcome, LawReport};
use crate::semigroup::FiniteMonoid;

/// `act(t, e)`: the unique `f ∈ E` with `S·f = Eq(te, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalAction {
    e: IdempotentSet,
    /// row-major over (t, position of e)
    act: Vec<u32>,
}

impl ModalAction {
    pub fn e_set(&self) -> &IdempotentSet {
        &self.e
    }

    /// `t·e` for a member `e` of the idempotent set.
    #[inline]
    pub fn act(&self, t: usize, e: usize) -> usize {
        let j = self.e.position(e).expect("e must be a member");
        self.act[t * self.e.len() + j] as usize
    }

    /// Rows over `t`, columns over the members of `E`.
    pub fn table(&self) -> Vec<Vec<usize>> {
        let k = self.e.len();
        self.act
            .chunks(k)
            .map(|row| row.iter().map(|&v| v as usize).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ModalFailure {
    MissingOne,
    NotRightPreReduced { e: usize, f: usize },
    NoGenerator { t: usize, e: usize },
}

/// The left E-modal operation, or the first obstruction to it.
pub fn modal_action(s: &FiniteMonoid, e: &IdempotentSet) -> Result<ModalAction, ModalFailure> {
    if !e.contains(s.one()) {
        return Err(ModalFailure::MissingOne);
    }
    if let Some((a, b)) = right_pre_reduced_violation(s, e.members()) {
        return Err(ModalFailure::NotRightPreReduced { e: a, f: b });
    }
    let index = IdealIndex::new(s, e.members());
    let mut act = Vec::with_capacity(s.size() * e.len());
    for t in s.elements() {
        for &f in e.members() {
            let q = equalizer(s, s.mul(t, f), t);
            match index.generators(&q).first() {
                Some(&g) => act.push(g as u32),
                None => return Err(ModalFailure::NoGenerator { t, e: f }),
            }
        }
    }
    Ok(ModalAction { e: e.clone(), act })
}

/// `e ∧ f` in `(E, ≤_r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetTable {
    e: IdempotentSet,
    meet: Vec<u32>,
}

impl MeetTable {
    pub fn e_set(&self) -> &IdempotentSet {
        &self.e
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        let i = self.e.position(a).expect("member");
        let j = self.e.position(b).expect("member");
        self.meet[i * self.e.len() + j] as usize
    }
}

/// Greatest lower bounds for all pairs, or the first pair without one.
pub fn meet_table(s: &FiniteMonoid, e: &IdempotentSet) -> Result<MeetTable, (usize, usize)> {
    let m = e.members();
    let mut meet = Vec::with_capacity(m.len() * m.len());
    for &a in m {
        for &b in m {
            let lower: Vec<usize> = m
                .iter()
                .copied()
                .filter(|&g| leq_r(s, g, a) && leq_r(s, g, b))
                .collect();
            let glb = lower
                .iter()
                .copied()
                .find(|&g| lower.iter().all(|&h| leq_r(s, h, g)));
            match glb {
                Some(g) => meet.push(g as u32),
                None => return Err((a, b)),
            }
        }
    }
    Ok(MeetTable { e: e.clone(), meet })
}

/// (M1)-(M4), and (M5) when meets are supplied.
pub fn check_modal_laws(s: &FiniteMonoid, act: &ModalAction, meet: Option<&MeetTable>) -> LawReport {
    let e = act.e_set().members();
    let one = s.one();
    let n = s.size();
    let dot = |t, f| act.act(t, f);
    let mut r = LawReport::new();

    r.push(
        Law::M1,
        LawOutcome::from_witness(e.iter().find(|&&f| dot(f, f) != one).map(|&f| vec![f])),
    );
    r.push(
        Law::M2,
        LawOutcome::from_witness((0..n).find(|&t| dot(t, one) != one).map(|t| vec![t])),
    );
    let m3 = (0..n)
        .flat_map(|t| e.iter().map(move |&f| (t, f)))
        .find(|&(t, f)| {
            let d = dot(t, f);
            s.mul(d, t) != s.mul3(d, t, f)
        });
    r.push(Law::M3, LawOutcome::from_witness(m3.map(|(t, f)| vec![t, f])));
    let mut m4 = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for &f in e {
                if dot(s.mul(x, y), f) != dot(x, dot(y, f)) {
                    m4 = Some(vec![x, y, f]);
                    break 'outer;
                }
            }
        }
    }
    r.push(Law::M4, LawOutcome::from_witness(m4));
    match meet {
        None => r.push(
            Law::M5,
            LawOutcome::Inapplicable {
                reason: "(E, ≤_r) is not a meet-semilattice".into(),
            },
        ),
        Some(mt) => {
            let mut m5 = None;
            'm5: for t in 0..n {
                for &a in e {
                    for &b in e {
                        if dot(t, mt.meet(a, b)) != mt.meet(dot(t, a), dot(t, b)) {
                            m5 = Some(vec![t, a, b]);
                            break 'm5;
                        }
                    }
                }
            }
            r.push(Law::M5, LawOutcome::from_witness(m5));
        }
    }
    r
}

/// Evidence that `S` is an inductive left E-monoid.
#[derive(Debug, Clone)]
pub struct InductiveCertificate {
    pub modal: ModalAction,
    pub meet: MeetTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum InductiveFailure {
    Modal(ModalFailure),
    NoMeet { e: usize, f: usize },
    /// `se = sf = s` but `s(e∧f) ≠ s`
    MeetNotRespected { s: usize, e: usize, f: usize },
}

/// Right pre-reduced, (I1′) and (I2′).
#[allow(non_snake_case)]
pub fn is_inductive_left_E_monoid(
    s: &FiniteMonoid,
    e: &IdempotentSet,
) -> Result<InductiveCertificate, InductiveFailure> {
    let modal = modal_action(s, e).map_err(InductiveFailure::Modal)?;
    let meet = meet_table(s, e).map_err(|(a, b)| InductiveFailure::NoMeet { e: a, f: b })?;
    let m = e.members();
    for x in s.elements() {
        let fixes: Vec<usize> = m.iter().copied().filter(|&f| s.mul(x, f) == x).collect();
        for &a in &fixes {
            for &b in &fixes {
                if s.mul(x, meet.meet(a, b)) != x {
                    return Err(InductiveFailure::MeetNotRespected { s: x, e: a, f: b });
                }
            }
        }
    }
    Ok(InductiveCertificate { modal, meet })
}

/// First pair `(e, f)` with `(e·f)e ∉ E`.
pub fn definable_meets_violation(s: &FiniteMonoid, act: &ModalAction) -> Option<(usize, usize)> {
    let e = act.e_set();
    for &a in e.members() {
        for &b in e.members() {
            if !e.contains(s.mul(act.act(a, b), a)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn has_definable_meets(s: &FiniteMonoid, act: &ModalAction) -> bool {
    definable_meets_violation(s, act).is_none()
}
