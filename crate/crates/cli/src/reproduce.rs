use std::collections::BTreeSet;
use std::fmt::Display;

use clap::ValueEnum;
use constella::catalog::{band_0ef1, figure_partitions, monoid_01a, small5, t2_zero, trel2_zero};
use constella::constellation::c_E;
use constella::elements::{BinaryRelation, PartialTransformation};
use constella::families::{
    left_total_partition_monoid, partial_transformation_monoid, relation_monoid, Composition,
};
use constella::idempotent::{
    equalizer, equalizer_set, ideal_generator_in, idempotents, is_protomodal, is_right_reduced, leq_r,
};
use constella::iso::unary_isomorphic;
use constella::laws::Law;
use constella::modal::{has_definable_meets, is_inductive_left_E_monoid, meet_table, modal_action, InductiveFailure};
use constella::representations::{theta_demonic, theta_left_total, theta_partial};
use constella::restriction::{check_right_restriction, rest, rest0, rrest, verify_unary_map};
use constella::zappa_szep::{check_zs_laws, left_reduced_E_TX, TwoActions};
use constella::{FiniteMonoid, IdempotentSet, Semigroup};
use serde_json::json;

use crate::{usage, Format, Outcome};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    #[value(name = "band-0ef1")]
    Band0ef1,
    #[value(name = "monoid-01a")]
    Monoid01a,
    #[value(name = "small-5elt")]
    Small5elt,
    #[value(name = "ptx-n2")]
    PtxN2,
    #[value(name = "demonic-n2")]
    DemonicN2,
    #[value(name = "partition-fig1")]
    PartitionFig1,
    #[value(name = "pltx-n2")]
    PltxN2,
}

enum Line {
    Note(String),
    Check { name: String, expected: String, actual: String },
}

#[derive(Default)]
struct Transcript {
    lines: Vec<Line>,
}

impl Transcript {
    fn note(&mut self, s: impl Into<String>) {
        self.lines.push(Line::Note(s.into()));
    }

    fn check(&mut self, name: &str, expected: impl Display, actual: impl Display) {
        self.lines.push(Line::Check {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    fn pass(&self) -> bool {
        self.lines.iter().all(|l| match l {
            Line::Note(_) => true,
            Line::Check { expected, actual, .. } => expected == actual,
        })
    }
}

/// `{a,b,c}` sorted by label.
fn set<S: AsRef<str>>(xs: impl IntoIterator<Item = S>) -> String {
    let xs: BTreeSet<String> = xs.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("{{{}}}", xs.into_iter().collect::<Vec<_>>().join(","))
}

fn set_of(s: &Semigroup, xs: &[usize]) -> String {
    set(xs.iter().map(|&x| s.label(x)))
}

fn labelled(m: &FiniteMonoid, names: &[&str]) -> anyhow::Result<IdempotentSet> {
    Ok(IdempotentSet::from_labels(m, names)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn iso_result(r: constella::Result<()>) -> String {
    match r {
        Ok(()) => "isomorphism".into(),
        Err(e) => e.to_string(),
    }
}

fn band(t: &mut Transcript) -> anyhow::Result<()> {
    let m = band_0ef1();
    let l = |x: &str| m.find_label(x).expect("catalog label");
    let e = labelled(&m, &["e", "f", "1"])?;
    t.note("S = {0,e,f,1} with ef = fe = 0, E = {e,f,1}");
    t.check("modal action over E", "yes", yes(modal_action(&m, &e).is_ok()));
    t.check("e ≤_r 1 and f ≤_r 1", "yes", yes(leq_r(&m, l("e"), l("1")) && leq_r(&m, l("f"), l("1"))));
    let lower: Vec<usize> = e
        .members()
        .iter()
        .copied()
        .filter(|&g| leq_r(&m, g, l("e")) && leq_r(&m, g, l("f")))
        .collect();
    t.check("lower bounds of e, f in E", "{}", set_of(&m, &lower));
    let verdict = match is_inductive_left_E_monoid(&m, &e) {
        Ok(_) => "inductive".to_string(),
        Err(InductiveFailure::NoMeet { e: a, f: b }) => format!("no meet of {} and {}", m.label(a), m.label(b)),
        Err(other) => format!("{other:?}"),
    };
    t.check("inductive left E-monoid", "no meet of e and f", verdict);
    Ok(())
}

fn monoid01a(t: &mut Transcript) -> anyhow::Result<()> {
    let m = monoid_01a();
    let l = |x: &str| m.find_label(x).expect("catalog label");
    let (a, z) = (l("a"), l("0"));
    t.note("S = {0,1,a} with a² = 0");
    t.check("Eq(a,a0)", "{0,a}", set_of(&m, &equalizer_set(&m, a, m.mul(a, z))));
    let idem = idempotents(&m);
    let generated = ideal_generator_in(&m, &equalizer(&m, a, m.mul(a, z)), idem.members()).is_some();
    t.check("Eq(a,a0) generated by an idempotent", "no", yes(generated));
    let rep = is_protomodal(&m, None);
    t.check("protomodal", "no", yes(rep.protomodal));
    let first = rep
        .failures
        .first()
        .map_or("none".to_string(), |f| format!("({},{})", m.label(f.s), m.label(f.e)));
    t.check("first witness (s,e)", "(a,0)", first);
    Ok(())
}

fn small_five(t: &mut Transcript) -> anyhow::Result<()> {
    let m = small5();
    let l = |x: &str| m.find_label(x).expect("catalog label");
    let e = labelled(&m, &["e", "1", "f", "g"])?;
    t.note("S = {e,1,f,g,s}, E = {e,1,f,g}");
    let act = modal_action(&m, &e).map_err(|f| anyhow::anyhow!("no modal action: {f:?}"))?;
    t.note(format!("t·e\t{}", e.labels(&m).join("\t")));
    for x in m.elements() {
        let row: Vec<String> = e.members().iter().map(|&f| m.label(act.act(x, f))).collect();
        t.note(format!("{}\t{}", m.label(x), row.join("\t")));
    }
    let meet = meet_table(&m, &e).map_err(|(a, b)| anyhow::anyhow!("no meet of {a} and {b}"))?;
    t.check("f∧g", "e", m.label(meet.meet(l("f"), l("g"))));
    let x = m.mul(act.act(l("f"), l("g")), l("f"));
    t.check("(f·g)f", "s", m.label(x));
    t.check("(f·g)f ∈ E", "no", yes(e.contains(x)));
    t.check("definable meets", "no", yes(has_definable_meets(&m, &act)));
    t.check("inductive left E-monoid", "yes", yes(is_inductive_left_E_monoid(&m, &e).is_ok()));
    let r = rest(&m, &e)?;
    t.check("|Rest(S,E)|", 10, r.size());
    let r2 = rest(&m, &labelled(&m, &["1", "s", "f", "g"])?)?;
    let iso = unary_isomorphic(&r.algebra, &r2.algebra)?.is_some();
    t.check("Rest(S,E) ≅ Rest(S,{1,s,f,g})", "yes", yes(iso));
    let acts = TwoActions::new(&m, &e)?;
    let zs = check_zs_laws(&m, &acts);
    t.check("ZS3", "fails", if zs.fails(Law::Zs3) { "fails" } else { "holds" });
    Ok(())
}

fn ptx(t: &mut Transcript) -> anyhow::Result<()> {
    let tc = t2_zero()?;
    let m = &tc.algebra;
    let l = |x: &str| m.find_label(x).expect("catalog label");
    let e = labelled(m, &["0", "1", "e", "f"])?;
    t.note("S = T_2⁰ = {e,1,i,f,0}, E = {0,1,e,f}");
    t.check("E(S)", "{0,1,e,f}", set_of(m, idempotents(m).members()));
    t.check("E right reduced", "yes", yes(is_right_reduced(m, &e)));
    t.check("Eq(e,i)", "{0,f}", set_of(m, &equalizer_set(m, l("e"), l("i"))));
    let act = modal_action(m, &e).map_err(|f| anyhow::anyhow!("no modal action: {f:?}"))?;
    t.check("i·e", "f", m.label(act.act(l("i"), l("e"))));
    let r = rest0(m, &e)?;
    t.check(
        "Rest₀(S,E)",
        set(["(0,0)", "(e,e)", "(f,f)", "(e,f)", "(f,e)", "(1,1)", "(1,i)", "(1,e)", "(1,f)"]),
        set((0..r.size()).map(|x| r.algebra.label(x))),
    );
    let at = |a: &str, b: &str| r.index_of(l(a), l(b)).expect("carrier pair");
    t.check("(1,i)(e,f)", "(f,f)", r.algebra.label(r.algebra.mul(at("1", "i"), at("e", "f"))));
    let c = c_E(m, &e);
    let ef_i = c
        .index_of_pair(l("e"), l("f"))
        .zip(c.index_of_pair(l("1"), l("i")))
        .and_then(|(x, y)| c.compose(x, y));
    t.check("(e,f)∘(1,i) in C_E", "(e,e)", ef_i.map_or("undefined".into(), |z| c.label(z).to_string()));
    let pt = partial_transformation_monoid(2)?;
    let theta = theta_partial(&tc, &r, &pt)?;
    t.check("θ onto PT_2", "isomorphism", iso_result(verify_unary_map(&r.algebra, &pt.algebra, &theta)));
    let xy = PartialTransformation::new(vec![Some(1), None]);
    t.check("θ(e,f)", xy.to_string(), pt.elements()[theta[at("e", "f")]].to_string());
    Ok(())
}

fn demonic(t: &mut Transcript) -> anyhow::Result<()> {
    let tc = trel2_zero()?;
    let m = &tc.algebra;
    let l = |x: &str| m.find_label(x).expect("catalog label");
    let e = labelled(m, &["0", "1", "e", "f"])?;
    t.note("S = TRel_2⁰, E = {0,1,e,f}");
    t.check("E(S)", set(["0", "1", "e", "f", "g", "h", "∇"]), set_of(m, idempotents(m).members()));
    let r = rest0(m, &e)?;
    t.check("|Rest₀(S,E)|", 16, r.size());
    let extra = ["(1,g)", "(1,h)", "(1,∇)", "(1,a)", "(1,b)", "(e,∇)", "(f,∇)"];
    let nine = ["(0,0)", "(e,e)", "(f,f)", "(e,f)", "(f,e)", "(1,1)", "(1,i)", "(1,e)", "(1,f)"];
    t.check(
        "Rest₀(S,E)",
        set(nine.iter().chain(&extra)),
        set((0..r.size()).map(|x| r.algebra.label(x))),
    );
    t.check("Eq(e,a)", "{0,f}", set_of(m, &equalizer_set(m, l("e"), l("a"))));
    let act = modal_action(m, &e).map_err(|f| anyhow::anyhow!("no modal action: {f:?}"))?;
    t.check("a·e", "f", m.label(act.act(l("a"), l("e"))));
    let at = |a: &str, b: &str| r.index_of(l(a), l(b)).expect("carrier pair");
    t.check("(1,a)(e,∇)", "(f,∇)", r.algebra.label(r.algebra.mul(at("1", "a"), at("e", "∇"))));
    let rel = relation_monoid(2, Composition::Demonic)?;
    let theta = theta_demonic(&tc, &r, &rel)?;
    let yx_yy = BinaryRelation::new(2, &[(1, 0), (1, 1)]);
    t.check("θ(f,∇)", yx_yy.to_string(), rel.elements()[theta[at("f", "∇")]].to_string());
    t.check(
        "θ onto (Rel_2, ⊛, D)",
        "isomorphism",
        iso_result(verify_unary_map(&r.algebra, &rel.algebra, &theta)),
    );
    let eq: Vec<usize> = equalizer_set(m, l("a"), m.mul(l("a"), l("∇")))
        .into_iter()
        .filter(|&x| x != l("0"))
        .collect();
    t.check("Eq(a,a∇) without the adjoined zero", set(["a", "∇", "e", "h"]), set_of(m, &eq));
    Ok(())
}

fn figure(t: &mut Transcript) -> anyhow::Result<()> {
    let (rho, tt, e) = figure_partitions();
    t.note(format!("ρ = {rho}"));
    t.note(format!("t = {tt}"));
    t.note(format!("e = {e}"));
    t.check("te", rho.to_string(), tt.then(&e).to_string());
    t.check("R(ρ)", e.to_string(), rho.range_projection().to_string());
    t.check(
        "ρ, t, e left total",
        "yes",
        yes(rho.is_left_total() && tt.is_left_total() && e.is_left_total()),
    );
    Ok(())
}

fn pltx(t: &mut Transcript) -> anyhow::Result<()> {
    let plt = left_total_partition_monoid(2)?;
    t.note(format!("P^lt_2 has {} elements", plt.algebra.size()));
    let laws = check_right_restriction(&plt.algebra);
    t.check("right restriction laws on P^lt_2", "pass", if laws.all_pass() { "pass" } else { "fail" });
    let (tc, e) = left_reduced_E_TX(2)?;
    t.note(format!("E = {} in T_2", set_of(&tc.algebra, e.members())));
    let r = rrest(&tc.algebra, &e)?;
    let theta = theta_left_total(&tc, &r, &plt)?;
    t.check(
        "θ: RRest(T_2,E) onto P^lt_2",
        "isomorphism",
        iso_result(verify_unary_map(&r.algebra, &plt.algebra, &theta)),
    );
    Ok(())
}

pub fn run(example: Example, format: Format) -> anyhow::Result<Outcome> {
    let mut t = Transcript::default();
    match example {
        Example::Band0ef1 => band(&mut t),
        Example::Monoid01a => monoid01a(&mut t),
        Example::Small5elt => small_five(&mut t),
        Example::PtxN2 => ptx(&mut t),
        Example::DemonicN2 => demonic(&mut t),
        Example::PartitionFig1 => figure(&mut t),
        Example::PltxN2 => pltx(&mut t),
    }?;
    let name = example.to_possible_value().expect("no skipped variants").get_name().to_string();
    let pass = t.pass();
    let text = match format {
        Format::Text => {
            let mut out = String::new();
            for line in &t.lines {
                match line {
                    Line::Note(s) => out.push_str(&format!("{s}\n")),
                    Line::Check { name, expected, actual } if expected == actual => {
                        out.push_str(&format!("ok    {name} = {actual}\n"))
                    }
                    Line::Check { name, expected, actual } => {
                        out.push_str(&format!("FAIL  {name} = {actual}, expected {expected}\n"))
                    }
                }
            }
            out.push_str(&format!("{} {name}\n", if pass { "PASS" } else { "FAIL" }));
            out
        }
        Format::Json => {
            let checks: Vec<_> = t
                .lines
                .iter()
                .filter_map(|l| match l {
                    Line::Check { name, expected, actual } => Some(json!({
                        "check": name,
                        "expected": expected,
                        "actual": actual,
                        "pass": expected == actual,
                    })),
                    Line::Note(_) => None,
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({"example": name, "pass": pass, "checks": checks}))?;
            s.push('\n');
            s
        }
        f => return usage(format!("--format {f} is not available for reproduce")),
    };
    Ok(Outcome { text, pass })
}
