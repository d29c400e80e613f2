//! Constellations: partial products with a domain map, the completions
//! `C_E(S)`, `C^d_E(S)`, `C⁰_E(S)`, the category `Cat_E(S)`, inductivity,
//! co-restriction and the induced left restriction semigroup.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idempotent::{idempotents, is_protomodal, maximal_right_pre_reduced, sim_r, IdempotentSet, Selector};
use crate::laws::{Law, LawOutcome, LawReport};
use crate::semigroup::{FiniteMonoid, Semigroup};
use crate::unary::{make_unary, UnaryAlgebra, UnaryKind};

const UNDEF: u32 = u32::MAX;

/// A pair `(e, s)` of parent indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompletionElement {
    pub e: usize,
    pub s: usize,
}

/// A finite partial algebra `(P, ∘, D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constellation {
    size: usize,
    product: Vec<u32>,
    dmap: Vec<u32>,
    labels: Vec<String>,
    pairs: Option<Vec<CompletionElement>>,
}

impl Constellation {
    /// Shape checks only; use [`check_constellation`] for the axioms.
    pub fn from_fn(
        size: usize,
        product: impl Fn(usize, usize) -> Option<usize>,
        dmap: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Empty);
        }
        if dmap.len() != size {
            return Err(Error::UnaryLength {
                len: dmap.len(),
                expected: size,
            });
        }
        let mut table = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                table.push(match product(x, y) {
                    Some(z) if z < size => z as u32,
                    Some(z) => return Err(Error::OutOfRange { index: z, size }),
                    None => UNDEF,
                });
            }
        }
        if let Some(&bad) = dmap.iter().find(|&&d| d >= size) {
            return Err(Error::OutOfRange { index: bad, size });
        }
        let labels = labels.unwrap_or_else(|| (0..size).map(|i| i.to_string()).collect());
        if labels.len() != size {
            return Err(Error::Malformed(format!("{} labels for {size} elements", labels.len())));
        }
        Ok(Constellation {
            size,
            product: table,
            dmap: dmap.into_iter().map(|d| d as u32).collect(),
            labels,
            pairs: None,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        match self.product[x * self.size + y] {
            UNDEF => None,
            z => Some(z as usize),
        }
    }

    #[inline]
    pub fn defined(&self, x: usize, y: usize) -> bool {
        self.product[x * self.size + y] != UNDEF
    }

    #[inline]
    pub fn d(&self, x: usize) -> usize {
        self.dmap[x] as usize
    }

    pub fn dmap(&self) -> Vec<usize> {
        self.dmap.iter().map(|&d| d as usize).collect()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// The carrier as `(e, s)` pairs, for completions.
    pub fn pairs(&self) -> Option<&[CompletionElement]> {
        self.pairs.as_deref()
    }

    pub fn index_of_pair(&self, e: usize, s: usize) -> Option<usize> {
        self.pairs.as_ref()?.iter().position(|p| p.e == e && p.s == s)
    }

    /// `D(P)`, in increasing index order.
    pub fn d_elements(&self) -> Vec<usize> {
        let mut v = self.dmap();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Natural quasiorder: `x ≤ y` iff `D(x)∘y` exists and equals `x`.
    pub fn natural_leq(&self, x: usize, y: usize) -> bool {
        self.compose(self.d(x), y) == Some(x)
    }

    /// Pairs `(x, y, x∘y)` in order.
    pub fn product_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.size;
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter_map(|(x, y)| self.compose(x, y).map(|z| (x, y, z)))
            .collect()
    }

    fn with_pairs(mut self, pairs: Vec<CompletionElement>) -> Self {
        self.pairs = Some(pairs);
        self
    }

    /// Copy with one product entry removed; used to exercise the checker.
    pub fn without_product(&self, x: usize, y: usize) -> Constellation {
        let mut c = self.clone();
        c.product[x * self.size + y] = UNDEF;
        c
    }
}

/// Right identities: `e` with `a∘e = a` whenever defined.
fn right_identities(p: &Constellation) -> Vec<bool> {
    (0..p.size())
        .map(|e| (0..p.size()).all(|a| p.compose(a, e).is_none_or(|v| v == a)))
        .collect()
}

/// (C1)-(C3), least witnesses.
pub fn check_constellation(p: &Constellation) -> LawReport {
    let n = p.size();
    let mut r = LawReport::new();

    let mut c1 = None;
    'c1: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let Some(yz) = p.compose(y, z) else { continue };
                let Some(lhs) = p.compose(x, yz) else { continue };
                let rhs = p.compose(x, y).and_then(|xy| p.compose(xy, z));
                if rhs != Some(lhs) {
                    c1 = Some(vec![x, y, z]);
                    break 'c1;
                }
            }
        }
    }
    r.push(Law::C1, LawOutcome::from_witness(c1));

    let mut c2 = None;
    'c2: for x in 0..n {
        for y in 0..n {
            if !p.defined(x, y) {
                continue;
            }
            for z in 0..n {
                if let Some(yz) = p.compose(y, z) {
                    if !p.defined(x, yz) {
                        c2 = Some(vec![x, y, z]);
                        break 'c2;
                    }
                }
            }
        }
    }
    r.push(Law::C2, LawOutcome::from_witness(c2));

    let ri = right_identities(p);
    let mut c3 = None;
    for x in 0..n {
        let d = p.d(x);
        if !ri[d] || p.compose(d, x) != Some(x) {
            c3 = Some(vec![x]);
            break;
        }
        if let Some(e) = (0..n).find(|&e| e != d && ri[e] && p.compose(e, x) == Some(x)) {
            c3 = Some(vec![x, e]);
            break;
        }
    }
    r.push(Law::C3, LawOutcome::from_witness(c3));
    r
}

fn pair_label(s: &Semigroup, p: CompletionElement) -> String {
    format!("({},{})", s.label(p.e), s.label(p.s))
}

fn completion(
    s: &Semigroup,
    e: &IdempotentSet,
    keep: impl Fn(usize, usize) -> bool,
) -> Constellation {
    let pairs: Vec<CompletionElement> = e
        .members()
        .iter()
        .flat_map(|&f| s.elements().map(move |x| CompletionElement { e: f, s: x }))
        .filter(|p| s.mul(p.e, p.s) == p.s && keep(p.e, p.s))
        .collect();
    let find = |a: usize, b: usize| pairs.iter().position(|p| p.e == a && p.s == b);
    let product = |x: usize, y: usize| {
        let (a, b) = (pairs[x], pairs[y]);
        (s.mul(a.s, b.e) == a.s).then(|| find(a.e, s.mul(a.s, b.s)).expect("closed"))
    };
    let dmap = pairs.iter().map(|p| find(p.e, p.e).expect("(e,e) present")).collect();
    let labels = pairs.iter().map(|&p| pair_label(s, p)).collect();
    Constellation::from_fn(pairs.len(), product, dmap, Some(labels))
        .expect("well-formed")
        .with_pairs(pairs)
}

/// `C_E(S) = {(e,s) : es = s}` with `(e,s)∘(f,t) = (e,st)` when `sf = s`.
#[allow(non_snake_case)]
pub fn c_E(s: &Semigroup, e: &IdempotentSet) -> Constellation {
    completion(s, e, |_, _| true)
}

/// Least `s` with `d(s) ∉ E`, or `e ∈ E` with `e d(e) ≠ e`.
fn e_demigroup_violation(a: &UnaryAlgebra, e: &IdempotentSet) -> Option<String> {
    if let Some(x) = (0..a.size()).find(|&x| !e.contains(a.unary(x))) {
        return Some(format!("d({}) is not in E", a.label(x)));
    }
    e.members()
        .iter()
        .find(|&&f| a.mul(f, a.unary(f)) != f)
        .map(|&f| format!("{} d({}) differs from {}", a.label(f), a.label(f), a.label(f)))
}

/// `C^d_E(S)`: the pairs of `C_E(S)` with `d(e) = d(s)`.
#[allow(non_snake_case)]
pub fn c_d_E(a: &UnaryAlgebra, e: &IdempotentSet) -> Result<Constellation> {
    if a.kind() != UnaryKind::Demigroup {
        return Err(Error::NotEDemigroup(format!("kind is {}, expected d", a.kind())));
    }
    if let Some(why) = e_demigroup_violation(a, e) {
        return Err(Error::NotEDemigroup(why));
    }
    Ok(completion(a.base(), e, |f, x| a.unary(f) == a.unary(x)))
}

/// Checks that `S` has a zero and no zero divisors.
pub fn check_integral(s: &Semigroup) -> Result<usize> {
    let z = s.zero().ok_or(Error::NoZero)?;
    match s.zero_divisor() {
        Some((x, y)) => Err(Error::NotIntegral(x, y)),
        None => Ok(z),
    }
}

/// `C⁰_E(S)`: `C^d_E(S)` for `d(0) = 0` and `d ≡ 1` elsewhere.
#[allow(non_snake_case)]
pub fn c_0_E(m: &FiniteMonoid, e: &IdempotentSet) -> Result<Constellation> {
    let z = check_integral(m)?;
    if !e.contains(z) {
        return Err(Error::MissingRequired("the zero"));
    }
    if !e.contains(m.one()) {
        return Err(Error::MissingRequired("the identity"));
    }
    c_d_E(&UnaryAlgebra::zero_demigroup(m)?, e)
}

/// The restricted product of a unary semigroup: `x∘y = xy` when `x D(y) = x`.
pub fn from_unary(a: &UnaryAlgebra) -> Constellation {
    let labels = (0..a.size()).map(|x| a.label(x)).collect();
    Constellation::from_fn(
        a.size(),
        |x, y| (a.mul(x, a.unary(y)) == x).then(|| a.mul(x, y)),
        a.map(),
        Some(labels),
    )
    .expect("well-formed")
}

/// `Cat_E(S)`: arrows `(e, s, f)` with `esf = s`.
#[derive(Debug, Clone)]
pub struct SmallCategory {
    pub arrows: Vec<(usize, usize, usize)>,
    compose: Vec<u32>,
}

impl SmallCategory {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        match self.compose[x * self.arrows.len() + y] {
            UNDEF => None,
            z => Some(z as usize),
        }
    }

    fn find(&self, a: (usize, usize, usize)) -> usize {
        self.arrows.iter().position(|&b| b == a).expect("arrow")
    }

    /// `(e, e, e)` for the arrow `(e, s, f)`.
    pub fn domain(&self, x: usize) -> usize {
        let (e, _, _) = self.arrows[x];
        self.find((e, e, e))
    }

    pub fn codomain(&self, x: usize) -> usize {
        let (_, _, f) = self.arrows[x];
        self.find((f, f, f))
    }

    /// Associativity where defined, matching objects, and identity laws.
    pub fn axiom_violation(&self) -> Option<Vec<usize>> {
        let n = self.len();
        for x in 0..n {
            let (d, c) = (self.domain(x), self.codomain(x));
            if self.compose(d, x) != Some(x) || self.compose(x, c) != Some(x) {
                return Some(vec![x]);
            }
            for y in 0..n {
                if self.compose(x, y).is_some() != (self.codomain(x) == self.domain(y)) {
                    return Some(vec![x, y]);
                }
                for z in 0..n {
                    let l = self.compose(x, y).and_then(|xy| self.compose(xy, z));
                    let r = self.compose(y, z).and_then(|yz| self.compose(x, yz));
                    if (l.is_some() || r.is_some()) && self.compose(x, y).is_some() && self.compose(y, z).is_some() && l != r {
                        return Some(vec![x, y, z]);
                    }
                }
            }
        }
        None
    }
}

/// `Cat_E(S)` with `(e,s,f)∘(f,t,g) = (e,st,g)`.
#[allow(non_snake_case)]
pub fn cat_E(s: &Semigroup, e: &IdempotentSet) -> SmallCategory {
    let m = e.members();
    let arrows: Vec<(usize, usize, usize)> = m
        .iter()
        .flat_map(|&a| s.elements().flat_map(move |x| m.iter().map(move |&b| (a, x, b))))
        .filter(|&(a, x, b)| s.mul3(a, x, b) == x)
        .collect();
    let n = arrows.len();
    let mut compose = vec![UNDEF; n * n];
    for (i, &(a, x, b)) in arrows.iter().enumerate() {
        for (j, &(b2, y, c)) in arrows.iter().enumerate() {
            if b == b2 {
                let k = arrows
                    .iter()
                    .position(|&t| t == (a, s.mul(x, y), c))
                    .expect("closed");
                compose[i * n + j] = k as u32;
            }
        }
    }
    SmallCategory { arrows, compose }
}

/// Least pair of distinct domain elements composable both ways.
pub fn normality_violation(p: &Constellation) -> Option<(usize, usize)> {
    let d = p.d_elements();
    for &e in &d {
        for &f in &d {
            if e != f && p.defined(e, f) && p.defined(f, e) {
                return Some((e, f));
            }
        }
    }
    None
}

pub fn is_normal(p: &Constellation) -> bool {
    normality_violation(p).is_none()
}

/// For each `(s, e)`, the `s·e ∈ D(P)` with
/// `(t∘s)∘e` defined iff `t∘(s·e)` defined, for all `t`.
#[derive(Debug, Clone)]
pub struct InductivityCertificate {
    d_elements: Vec<usize>,
    dot: Vec<u32>,
}

impl InductivityCertificate {
    pub fn d_elements(&self) -> &[usize] {
        &self.d_elements
    }

    pub fn dot(&self, s: usize, e: usize) -> usize {
        let j = self.d_elements.binary_search(&e).expect("e must be a domain element");
        self.dot[s * self.d_elements.len() + j] as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InductivityFailure {
    NotNormal { e: usize, f: usize },
    NoDot { s: usize, e: usize },
}

/// Normality plus a brute-force search for every `s·e` over `D(P)`.
pub fn is_inductive(p: &Constellation) -> std::result::Result<InductivityCertificate, InductivityFailure> {
    if let Some((e, f)) = normality_violation(p) {
        return Err(InductivityFailure::NotNormal { e, f });
    }
    let n = p.size();
    let d = p.d_elements();
    // column sets: which t compose with x
    let col = |x: usize| {
        let mut b = FixedBitSet::with_capacity(n);
        for t in 0..n {
            if p.defined(t, x) {
                b.insert(t);
            }
        }
        b
    };
    let d_cols: Vec<FixedBitSet> = d.iter().map(|&x| col(x)).collect();
    let mut dot = Vec::with_capacity(n * d.len());
    for s in 0..n {
        for &e in &d {
            let mut want = FixedBitSet::with_capacity(n);
            for t in 0..n {
                if p.compose(t, s).is_some_and(|ts| p.defined(ts, e)) {
                    want.insert(t);
                }
            }
            match d_cols.iter().position(|c| *c == want) {
                Some(j) => dot.push(d[j] as u32),
                None => return Err(InductivityFailure::NoDot { s, e }),
            }
        }
    }
    Ok(InductivityCertificate { d_elements: d, dot })
}

/// `a|e = (a·e)∘a`.
pub fn co_restriction(p: &Constellation, cert: &InductivityCertificate, a: usize, e: usize) -> usize {
    p.compose(cert.dot(a, e), a)
        .expect("s·e composes with s in an inductive constellation")
}

/// The `≤`-maximum of `{x ≤ a : x∘e defined}`, by scanning.
pub fn co_restriction_brute(p: &Constellation, a: usize, e: usize) -> Option<usize> {
    let below: Vec<usize> = (0..p.size())
        .filter(|&x| p.natural_leq(x, a) && p.defined(x, e))
        .collect();
    below
        .iter()
        .copied()
        .find(|&x| below.iter().all(|&y| p.natural_leq(y, x)))
}

/// `s ⊗ t = (s|D(t))∘t`, with the same `D`.
pub fn induced_left_restriction(p: &Constellation, cert: &InductivityCertificate) -> Result<UnaryAlgebra> {
    let base = Semigroup::from_fn(p.size(), |x, y| {
        let c = co_restriction(p, cert, x, p.d(y));
        p.compose(c, y).expect("co-restriction composes")
    })?
    .with_detected_constants()
    .with_labels(p.labels().to_vec())?;
    make_unary(base, p.dmap(), UnaryKind::Domain)
}

/// `Q/θ` for `Q = C_{E(S)}(S)`.
#[derive(Debug, Clone)]
pub struct ThetaQuotient {
    pub q: Constellation,
    /// θ-classes as sorted index lists into `q`, ordered by least member
    pub classes: Vec<Vec<usize>>,
    pub quotient: Constellation,
}

/// Factors `C_{E(S)}(S)` by `(e,s) θ (f,t)` iff `e ∼_r f` and `es = et`.
pub fn quotient_by_theta(s: &FiniteMonoid) -> Result<ThetaQuotient> {
    let report = is_protomodal(s, None);
    if let Some(f) = report.failures.first() {
        return Err(Error::NotProtomodal { s: f.s, e: f.e });
    }
    let all = idempotents(s);
    let q = c_E(s, &all);
    let pairs = q.pairs().expect("completion").to_vec();
    let n = q.size();
    let related = |x: usize, y: usize| {
        let (a, b) = (pairs[x], pairs[y]);
        sim_r(s, a.e, b.e) && s.mul(a.e, a.s) == s.mul(a.e, b.s)
    };
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c: Vec<usize> = (x..n).filter(|&y| related(x, y)).collect();
        for &y in &c {
            class_of[y] = classes.len();
        }
        classes.push(c);
    }
    let k = classes.len();
    let mut product = vec![None; k * k];
    for x in 0..n {
        for y in 0..n {
            if let Some(z) = q.compose(x, y) {
                let slot = &mut product[class_of[x] * k + class_of[y]];
                match *slot {
                    None => *slot = Some(class_of[z]),
                    Some(c) if c == class_of[z] => {}
                    Some(_) => return Err(Error::NotCongruence(x, y)),
                }
            }
        }
    }
    let mut dmap = vec![usize::MAX; k];
    for x in 0..n {
        let d = class_of[q.d(x)];
        let slot = &mut dmap[class_of[x]];
        if *slot == usize::MAX {
            *slot = d;
        } else if *slot != d {
            return Err(Error::NotCongruence(x, x));
        }
    }
    let labels = classes.iter().map(|c| format!("[{}]", q.label(c[0]))).collect();
    let quotient = Constellation::from_fn(k, |a, b| product[a * k + b], dmap, Some(labels))?;
    Ok(ThetaQuotient { q, classes, quotient })
}

/// `C_E(S)` for the least-index maximal right pre-reduced `E`.
pub fn c_e_least_index(s: &FiniteMonoid) -> Result<Constellation> {
    let e = maximal_right_pre_reduced(s, Selector::LeastIndex)?;
    Ok(c_E(s, &e))
}

#[derive(Serialize)]
struct ConstellationJson<'a> {
    elements: Vec<serde_json::Value>,
    product: Vec<(usize, usize, usize)>,
    dmap: Vec<usize>,
    labels: &'a [String],
}

/// `{elements, product: [[x, y, x∘y]...], dmap, labels}`.
pub fn to_json(p: &Constellation) -> serde_json::Value {
    let elements = match p.pairs() {
        Some(pairs) => pairs
            .iter()
            .map(|c| serde_json::json!({"e": c.e, "s": c.s}))
            .collect(),
        None => (0..p.size()).map(|x| serde_json::json!(x)).collect(),
    };
    serde_json::to_value(ConstellationJson {
        elements,
        product: p.product_triples(),
        dmap: p.dmap(),
        labels: p.labels(),
    })
    .expect("serializable")
}

#[derive(Deserialize)]
struct ConstellationFile {
    elements: Vec<serde_json::Value>,
    product: Vec<(usize, usize, usize)>,
    dmap: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// Reads back the output of [`to_json`]. Elements given as `{"e", "s"}`
/// objects are kept as the carrier pairs.
pub fn from_json(v: &serde_json::Value) -> Result<Constellation> {
    let f: ConstellationFile =
        serde_json::from_value(v.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
    let n = f.dmap.len();
    if f.elements.len() != n {
        return Err(Error::Malformed(format!("{} elements but dmap has {n} entries", f.elements.len())));
    }
    let mut table = vec![None; n * n];
    for &(x, y, z) in &f.product {
        if x >= n || y >= n {
            return Err(Error::OutOfRange { index: x.max(y), size: n });
        }
        if table[x * n + y].replace(z).is_some() {
            return Err(Error::Malformed(format!("product ({x}, {y}) given twice")));
        }
    }
    let mut p = Constellation::from_fn(n, |x, y| table[x * n + y], f.dmap, f.labels)?;
    let pairs: Option<Vec<CompletionElement>> = f
        .elements
        .iter()
        .map(|v| serde_json::from_value(v.clone()).ok())
        .collect();
    p.pairs = pairs;
    Ok(p)
}

/// Hasse diagram of the natural quasiorder, edges pointing up.
pub fn to_dot(p: &Constellation) -> String {
    let n = p.size();
    let lt = |x: usize, y: usize| x != y && p.natural_leq(x, y) && !p.natural_leq(y, x);
    let mut out = String::from("digraph natural_order {\n  rankdir=BT;\n");
    for x in 0..n {
        let _ = writeln!(out, "  n{x} [label=\"{}\"];", p.label(x).replace('"', "\\\""));
    }
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                let _ = writeln!(out, "  n{x} -> n{y};");
            }
        }
    }
    out.push_str("}\n");
    out
}
