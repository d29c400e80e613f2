//! Left and right restriction laws, the monoids `Rest(S,E)`, `Rest₀(S,E)`,
//! `RRest(S,E)`, reconstruction from the identity-domain submonoid, and the
//! semidirect product `P(E,S)`.

use serde::Serialize;

use crate::constellation::CompletionElement;
use crate::error::{Error, Result};
use crate::idempotent::{idempotents, leq_r, sim_r, IdempotentSet};
use crate::laws::{search1, search2, Law, LawOutcome, LawReport};
use crate::modal::{is_inductive_left_E_monoid, InductiveCertificate};
use crate::semigroup::{FiniteMonoid, Semigroup};
use crate::unary::{make_unary, UnaryAlgebra, UnaryKind};

/// (R1)-(R5) for the unary map read as `D`, least witnesses.
pub fn check_left_restriction_laws(a: &UnaryAlgebra) -> LawReport {
    check_left_restriction_laws_for(a.base(), &a.map())
}

/// (R1)-(R5) for an arbitrary map on `s`, which need not satisfy any law.
pub fn check_left_restriction_laws_for(s: &Semigroup, map: &[usize]) -> LawReport {
    assert_eq!(map.len(), s.size(), "map length");
    let n = s.size();
    let d = |x: usize| map[x];
    let m = |x: usize, y: usize| s.mul(x, y);
    let mut r = LawReport::new();
    r.push(Law::R1, LawOutcome::from_witness(search1(n, |x| m(d(x), x) != x)));
    r.push(
        Law::R2,
        LawOutcome::from_witness(search2(n, |x, y| m(d(x), d(y)) != m(d(y), d(x)))),
    );
    r.push(
        Law::R3,
        LawOutcome::from_witness(search2(n, |x, y| d(m(d(x), y)) != m(d(x), d(y)))),
    );
    r.push(
        Law::R4,
        LawOutcome::from_witness(search2(n, |x, y| m(x, d(y)) != m(d(m(x, y)), x))),
    );
    r.push(
        Law::R5,
        LawOutcome::from_witness(search2(n, |x, y| d(m(x, y)) != d(m(x, d(y))))),
    );
    r
}

/// The duals of (R1)-(R5) for the unary map read as `R`, checked on the opposite.
pub fn check_right_restriction_laws(a: &UnaryAlgebra) -> LawReport {
    let op = a.opposite();
    let left = check_left_restriction_laws(&op);
    let mut r = LawReport::new();
    for (law, outcome) in left.entries {
        let dual = match law {
            Law::R1 => Law::R1Dual,
            Law::R2 => Law::R2Dual,
            Law::R3 => Law::R3Dual,
            Law::R4 => Law::R4Dual,
            Law::R5 => Law::R5Dual,
            other => other,
        };
        r.push(dual, outcome);
    }
    r
}

/// Associativity of the base plus (R1)-(R5).
pub fn check_left_restriction(a: &UnaryAlgebra) -> LawReport {
    let mut r = LawReport::new();
    let w = a.base().associativity_violation().map(|(x, y, z)| vec![x, y, z]);
    r.push(Law::Associativity, LawOutcome::from_witness(w));
    r.merge(check_left_restriction_laws(a));
    r
}

/// Associativity of the base plus the duals of (R1)-(R5).
pub fn check_right_restriction(a: &UnaryAlgebra) -> LawReport {
    let mut r = LawReport::new();
    let w = a.base().associativity_violation().map(|(x, y, z)| vec![x, y, z]);
    r.push(Law::Associativity, LawOutcome::from_witness(w));
    r.merge(check_right_restriction_laws(a));
    r
}

/// `Rest(S,E)` or one of its variants, with its carrier as pairs.
#[derive(Debug, Clone)]
pub struct RestMonoid {
    pub algebra: UnaryAlgebra,
    /// `(e, s)`; for [`rrest`] the pair `(s, e)` is stored with the same field names
    pub pairs: Vec<CompletionElement>,
    pub certificate: InductiveCertificate,
    pub with_zero: bool,
}

impl RestMonoid {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, e: usize, s: usize) -> Option<usize> {
        self.pairs.iter().position(|p| p.e == e && p.s == s)
    }
}

fn inductive(s: &FiniteMonoid, e: &IdempotentSet) -> Result<InductiveCertificate> {
    is_inductive_left_E_monoid(s, e)
        .map_err(|f| Error::NotInductive(serde_json::to_string(&f).expect("serializable")))
}

fn build_rest(
    s: &FiniteMonoid,
    cert: InductiveCertificate,
    keep: impl Fn(usize, usize) -> bool,
    with_zero: bool,
    label: impl Fn(&str, &str) -> String,
) -> Result<RestMonoid> {
    let e = cert.modal.e_set().clone();
    let pairs: Vec<CompletionElement> = e
        .members()
        .iter()
        .flat_map(|&f| s.elements().map(move |x| CompletionElement { e: f, s: x }))
        .filter(|p| s.mul(p.e, p.s) == p.s && keep(p.e, p.s))
        .collect();
    let k = pairs.len();
    let mut pos = vec![usize::MAX; s.size() * s.size()];
    for (i, p) in pairs.iter().enumerate() {
        pos[p.e * s.size() + p.s] = i;
    }
    let find = |e: usize, x: usize| pos[e * s.size() + x];
    let mut table = Vec::with_capacity(k * k);
    for a in &pairs {
        for b in &pairs {
            let h = cert.meet.meet(a.e, cert.modal.act(a.s, b.e));
            let z = find(h, s.mul3(h, a.s, b.s));
            if z == usize::MAX {
                return Err(Error::NotClosed(find(a.e, a.s), find(b.e, b.s)));
            }
            table.push(z);
        }
    }
    let base = Semigroup::from_fn(k, |x, y| table[x * k + y])?;
    let one = find(s.one(), s.one());
    let mut base = base.with_one(one)?;
    if with_zero {
        let z = s.zero().expect("checked");
        base = base.with_zero(find(z, z))?;
    }
    let labels = pairs.iter().map(|p| label(&s.label(p.e), &s.label(p.s))).collect();
    let base = base.with_labels(labels)?;
    let dmap = pairs.iter().map(|p| find(p.e, p.e)).collect();
    let algebra = make_unary(base, dmap, UnaryKind::Domain)?;
    Ok(RestMonoid {
        algebra,
        pairs,
        certificate: cert,
        with_zero,
    })
}

fn plain_label(e: &str, s: &str) -> String {
    format!("({e},{s})")
}

/// `Rest(S,E)`: pairs `(e,s)` with `es = s`, product
/// `(e,s)(f,t) = (h, hst)` for `h = e∧(s·f)`, and `D(e,s) = (e,e)`.
pub fn rest(s: &FiniteMonoid, e: &IdempotentSet) -> Result<RestMonoid> {
    let cert = inductive(s, e)?;
    build_rest(s, cert, |_, _| true, false, plain_label)
}

/// Requires a zero without zero divisors and `0, 1 ∈ E`.
fn check_rest0_preconditions(s: &FiniteMonoid, e: &IdempotentSet) -> Result<usize> {
    let z = crate::constellation::check_integral(s)?;
    if !e.contains(z) {
        return Err(Error::MissingRequired("the zero"));
    }
    if !e.contains(s.one()) {
        return Err(Error::MissingRequired("the identity"));
    }
    Ok(z)
}

/// `Rest₀(S,E)`: the pairs of `Rest(S,E)` with `s = 0 ⇒ e = 0`.
pub fn rest0(s: &FiniteMonoid, e: &IdempotentSet) -> Result<RestMonoid> {
    let z = check_rest0_preconditions(s, e)?;
    let cert = inductive(s, e)?;
    build_rest(s, cert, |f, x| x != z || f == z, true, plain_label)
}

fn opposite_rest(
    s: &FiniteMonoid,
    e: &IdempotentSet,
    zero: bool,
) -> Result<RestMonoid> {
    let op = s.opposite();
    let e_op = IdempotentSet::new(&op, e.members().iter().copied())?;
    if zero {
        check_rest0_preconditions(&op, &e_op)?;
    }
    let z = op.zero();
    let cert = inductive(&op, &e_op)?;
    let r = build_rest(
        &op,
        cert,
        |f, x| !zero || Some(x) != z || Some(f) == z,
        zero,
        |e, s| format!("({s},{e})"),
    )?;
    Ok(RestMonoid {
        algebra: r.algebra.opposite(),
        ..r
    })
}

/// `RRest(S,E)`: the opposite of `Rest(S^op, E)`, carrier `(s,e)` with `se = s`.
pub fn rrest(s: &FiniteMonoid, e: &IdempotentSet) -> Result<RestMonoid> {
    opposite_rest(s, e, false)
}

/// The opposite of `Rest₀(S^op, E)`.
pub fn rrest0(s: &FiniteMonoid, e: &IdempotentSet) -> Result<RestMonoid> {
    opposite_rest(s, e, true)
}

/// `S₁ = {s : D(s) = 1}` in increasing index order.
pub fn s1_elements(a: &UnaryAlgebra) -> Result<Vec<usize>> {
    let one = a.one().ok_or(Error::NoIdentity)?;
    Ok((0..a.size()).filter(|&x| a.unary(x) == one).collect())
}

/// The submonoid `S₁` with its embedding into `a`.
pub fn s1_submonoid(a: &UnaryAlgebra) -> Result<(FiniteMonoid, Vec<usize>)> {
    let members = s1_elements(a)?;
    let (base, emb) = a.base().restrict(&members)?;
    Ok((FiniteMonoid::new(base)?, emb))
}

/// Partners of the non-zero projections among the idempotents of `S₁`.
#[derive(Debug, Clone, Serialize)]
pub struct LargeIdempotents {
    pub s1: Vec<usize>,
    /// `(e, least e′ ∈ E(S₁) with e ∼_r e′)`
    pub partners: Vec<(usize, Option<usize>)>,
    /// idempotents of `S₁` not `∼_r` to any projection
    pub unmatched: Vec<usize>,
    pub enough: bool,
    pub precisely_enough: bool,
}

fn nonzero_projections(a: &UnaryAlgebra) -> Vec<usize> {
    let z = a.zero().filter(|&z| Some(z) != a.one());
    a.projections().into_iter().filter(|&e| Some(e) != z).collect()
}

pub fn large_idempotent_analysis(a: &UnaryAlgebra) -> Result<LargeIdempotents> {
    let s1 = s1_elements(a)?;
    let base = a.base();
    let e_s1: Vec<usize> = s1.iter().copied().filter(|&x| base.is_idempotent(x)).collect();
    let proj = nonzero_projections(a);
    let partners: Vec<(usize, Option<usize>)> = proj
        .iter()
        .map(|&e| (e, e_s1.iter().copied().find(|&f| sim_r(base, e, f))))
        .collect();
    let unmatched: Vec<usize> = e_s1
        .iter()
        .copied()
        .filter(|&f| !proj.iter().any(|&e| sim_r(base, e, f)))
        .collect();
    let enough = partners.iter().all(|(_, p)| p.is_some());
    Ok(LargeIdempotents {
        precisely_enough: enough && unmatched.is_empty(),
        s1,
        partners,
        unmatched,
        enough,
    })
}

/// How each projection `e` picks its partner `e′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pairing {
    LeastIndex,
    /// `(e, e′)` as indices of the algebra
    Explicit(Vec<(usize, usize)>),
}

/// `Rest(S′, E′) ≅ A` rebuilt from `S′ = S₁` (plus the zero, if any).
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub s_prime: FiniteMonoid,
    /// `S′` index to algebra index
    pub embedding: Vec<usize>,
    /// indices in `S′`
    pub e_prime: IdempotentSet,
    /// `(e, e′)` as algebra indices
    pub pairing: Vec<(usize, usize)>,
    pub rest: RestMonoid,
    /// rest index to algebra index
    pub theta: Vec<usize>,
}

/// Rebuilds a left restriction monoid from its identity-domain submonoid and
/// checks the isomorphism `(e′, s) ↦ e s` element by element.
pub fn reconstruct(a: &UnaryAlgebra, pairing: Pairing) -> Result<Reconstruction> {
    if a.kind() != UnaryKind::Domain {
        return Err(Error::Malformed(format!("expected a D algebra, got {}", a.kind())));
    }
    if let Some((law, w)) = check_left_restriction_laws(a).first_failure() {
        return Err(Error::LawViolated {
            law,
            witness: w.to_vec(),
        });
    }
    let one = a.one().ok_or(Error::NoIdentity)?;
    let zero = a.zero().filter(|&z| z != one);
    let base = a.base();

    let pairing = match pairing {
        Pairing::LeastIndex => {
            let info = large_idempotent_analysis(a)?;
            info.partners
                .into_iter()
                .map(|(e, p)| p.map(|f| (e, f)).ok_or(Error::NotEnoughLargeIdempotents(e)))
                .collect::<Result<Vec<_>>>()?
        }
        Pairing::Explicit(p) => {
            for &(e, f) in &p {
                if a.unary(f) != one || !base.is_idempotent(f) || !sim_r(base, e, f) {
                    return Err(Error::NotEnoughLargeIdempotents(e));
                }
            }
            for e in nonzero_projections(a) {
                if !p.iter().any(|&(x, _)| x == e) {
                    return Err(Error::NotEnoughLargeIdempotents(e));
                }
            }
            p
        }
    };

    let mut members = s1_elements(a)?;
    if let Some(z) = zero {
        members.push(z);
    }
    members.sort_unstable();
    let (sub, emb) = base.restrict(&members)?;
    let mut sub = sub.with_one(emb.iter().position(|&x| x == one).expect("1 ∈ S₁"))?;
    let pos = |x: usize| emb.iter().position(|&y| y == x).expect("member");
    if let Some(z) = zero {
        sub = sub.with_zero(pos(z))?;
    }
    let s_prime = FiniteMonoid::new(sub)?;
    let mut e_members: Vec<usize> = pairing.iter().map(|&(_, f)| pos(f)).collect();
    if let Some(z) = zero {
        e_members.push(pos(z));
    }
    let e_prime = IdempotentSet::new(&s_prime, e_members)?;
    let r = if zero.is_some() {
        rest0(&s_prime, &e_prime)?
    } else {
        rest(&s_prime, &e_prime)?
    };

    let partner_of = |f_sub: usize| {
        let f = emb[f_sub];
        pairing.iter().find(|&&(_, g)| g == f).map(|&(e, _)| e)
    };
    let theta: Vec<usize> = r
        .pairs
        .iter()
        .map(|p| match partner_of(p.e) {
            Some(e) => base.mul(e, emb[p.s]),
            None => zero.expect("only the zero lacks a partner"),
        })
        .collect();
    verify_unary_map(&r.algebra, a, &theta)?;
    Ok(Reconstruction {
        s_prime,
        embedding: emb,
        e_prime,
        pairing,
        rest: r,
        theta,
    })
}

/// The right-handed reconstruction `RRest(S₁, E′) ≅ A` for an R algebra.
pub fn reconstruct_right(a: &UnaryAlgebra, pairing: Pairing) -> Result<Reconstruction> {
    if a.kind() != UnaryKind::Range {
        return Err(Error::Malformed(format!("expected an R algebra, got {}", a.kind())));
    }
    let r = reconstruct(&a.opposite(), pairing)?;
    let rest = RestMonoid {
        algebra: r.rest.algebra.opposite(),
        ..r.rest
    };
    Ok(Reconstruction {
        s_prime: r.s_prime.opposite(),
        rest,
        ..r
    })
}

/// Checks `t·e′ = D(te)′` for `t ≠ 0`, and `0·g = 1`, on a reconstruction.
pub fn check_modal_transfer(a: &UnaryAlgebra, rec: &Reconstruction) -> Option<(usize, usize)> {
    let modal = &rec.rest.certificate.modal;
    let s = &rec.s_prime;
    let zero = s.zero();
    let prime_of = |e: usize| rec.pairing.iter().find(|&&(x, _)| x == e).map(|&(_, f)| f);
    let sub_index = |x: usize| rec.embedding.iter().position(|&y| y == x);
    for t in s.elements() {
        for &(e, f) in &rec.pairing {
            let g = sub_index(f).expect("e′ ∈ S₁");
            let got = modal.act(t, g);
            let want = if Some(t) == zero {
                s.one()
            } else {
                match prime_of(a.unary(a.mul(rec.embedding[t], e))) {
                    Some(p) => sub_index(p).expect("e′ ∈ S₁"),
                    None => zero.expect("D(te) is the zero"),
                }
            };
            if got != want {
                return Some((t, g));
            }
        }
    }
    None
}

/// Checks that `map: A → B` is a bijective (2,1)-morphism.
pub fn verify_unary_map(a: &UnaryAlgebra, b: &UnaryAlgebra, map: &[usize]) -> Result<()> {
    let fail = |m: String| Err(Error::NotIsomorphism(m));
    if map.len() != a.size() || a.size() != b.size() {
        return fail(format!("sizes {} and {} with a map of length {}", a.size(), b.size(), map.len()));
    }
    let mut seen = vec![false; b.size()];
    for (x, &y) in map.iter().enumerate() {
        if y >= b.size() || std::mem::replace(&mut seen[y], true) {
            return fail(format!("not injective at {}", a.label(x)));
        }
    }
    for x in 0..a.size() {
        if map[a.unary(x)] != b.unary(map[x]) {
            return fail(format!("unary map not preserved at {}", a.label(x)));
        }
        for y in 0..a.size() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return fail(format!("product not preserved at ({}, {})", a.label(x), a.label(y)));
            }
        }
    }
    Ok(())
}

/// `P(E,S)`: `(e,s)(f,t) = (e∧(s·f), st)` and `D(e,s) = (e,1)`.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub algebra: UnaryAlgebra,
    pub pairs: Vec<CompletionElement>,
}

pub fn semidirect_product(s: &FiniteMonoid, e: &IdempotentSet) -> Result<SemidirectProduct> {
    let cert = inductive(s, e)?;
    let n = s.size();
    let pairs: Vec<CompletionElement> = e
        .members()
        .iter()
        .flat_map(|&f| (0..n).map(move |x| CompletionElement { e: f, s: x }))
        .collect();
    let idx = |f: usize, x: usize| e.position(f).expect("member") * n + x;
    let k = pairs.len();
    let base = Semigroup::from_fn(k, |x, y| {
        let (a, b) = (pairs[x], pairs[y]);
        idx(cert.meet.meet(a.e, cert.modal.act(a.s, b.e)), s.mul(a.s, b.s))
    })?
    .with_one(idx(s.one(), s.one()))?;
    let labels = pairs.iter().map(|p| plain_label(&s.label(p.e), &s.label(p.s))).collect();
    let dmap = pairs.iter().map(|p| idx(p.e, s.one())).collect();
    let algebra = make_unary(base.with_labels(labels)?, dmap, UnaryKind::Domain)?;
    Ok(SemidirectProduct { algebra, pairs })
}

/// `ψ(e,s) = (e, es)` from `P(E,S)` onto `Rest(S,E)`; checks it is a
/// surjective (2,1)-morphism and returns it.
pub fn psi(p: &SemidirectProduct, r: &RestMonoid, s: &Semigroup) -> Result<Vec<usize>> {
    let map: Vec<usize> = p
        .pairs
        .iter()
        .map(|c| r.index_of(c.e, s.mul(c.e, c.s)).expect("es ∈ carrier"))
        .collect();
    let (a, b) = (&p.algebra, &r.algebra);
    for x in 0..a.size() {
        if map[a.unary(x)] != b.unary(map[x]) {
            return Err(Error::NotIsomorphism(format!("ψ does not preserve D at {}", a.label(x))));
        }
        for y in 0..a.size() {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return Err(Error::NotIsomorphism(format!(
                    "ψ does not preserve the product at ({}, {})",
                    a.label(x),
                    a.label(y)
                )));
            }
        }
    }
    let mut hit = vec![false; b.size()];
    for &y in &map {
        hit[y] = true;
    }
    if let Some(y) = hit.iter().position(|h| !h) {
        return Err(Error::NotIsomorphism(format!("ψ misses {}", b.label(y))));
    }
    Ok(map)
}

/// The idempotents of `S` that are `≤_r` a given one; handy for
/// describing `D`-fibres of `Rest(S,E)`.
pub fn below_r(s: &Semigroup, e: usize) -> Vec<usize> {
    idempotents(s)
        .members()
        .iter()
        .copied()
        .filter(|&f| leq_r(s, f, e))
        .collect()
}
