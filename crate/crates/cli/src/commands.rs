use std::path::Path;

use anyhow::Context;
use constella::constellation::{c_0_E, c_E, c_d_E, check_constellation, from_unary, to_dot, to_json, Constellation};
use constella::families::{
    full_transformation_monoid_with, left_total_partition_monoid_with, left_total_relation_monoid_with,
    partial_transformation_monoid_with, partition_monoid_with, relation_monoid_with, Composition,
};
use constella::idempotent::{idempotents, is_protomodal, largest_protomodal_idempotents, sim_r_classes};
use constella::json::{self, unary_file, Loaded};
use constella::modal::{
    check_modal_laws, has_definable_meets, is_inductive_left_E_monoid, meet_table, modal_action,
};
use constella::report::{constellation_tsv, law_report_json, law_report_text, semigroup_tsv, unary_tsv};
use constella::restriction::{check_left_restriction, check_right_restriction, rest, rest0, rrest};
use constella::semigroup::adjoin_zero;
use constella::zappa_szep::{check_zs_laws, TwoActions};
use constella::{Caps, FiniteMonoid, LawReport, UnaryAlgebra, UnaryKind};
use serde_json::{json, Value};

use crate::input::{e_set, label_list, load_constellation, load_monoid, load_table, relabel};
use crate::{usage, CompositionArg, Family, Format, Laws, Outcome, Variant};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn write_output(out: Outcome, path: Option<&Path>) -> anyhow::Result<Outcome> {
    match path {
        None => Ok(out),
        Some(p) => {
            std::fs::write(p, &out.text).with_context(|| format!("writing {}", p.display()))?;
            Ok(Outcome {
                text: String::new(),
                pass: out.pass,
            })
        }
    }
}

fn render_loaded(l: &Loaded, format: Format) -> anyhow::Result<Outcome> {
    Ok(Outcome::ok(match (format, l) {
        (Format::Json, _) => json::to_string(&l.to_file()),
        (Format::Tsv, Loaded::Semigroup(s)) => semigroup_tsv(s),
        (Format::Tsv, Loaded::Unary(a)) => unary_tsv(a),
        (f, _) => return usage(format!("--format {f} is not available for tables")),
    }))
}

fn render_unary(a: &UnaryAlgebra, format: Format) -> anyhow::Result<Outcome> {
    Ok(Outcome::ok(match format {
        Format::Json => json::to_string(&unary_file(a)),
        Format::Tsv => unary_tsv(a),
        Format::Dot => to_dot(&from_unary(a)),
        Format::Text => return usage("--format text is not available for tables"),
    }))
}

fn render_constellation(p: &Constellation, format: Format) -> anyhow::Result<Outcome> {
    Ok(Outcome::ok(match format {
        Format::Json => pretty(&to_json(p)),
        Format::Tsv => constellation_tsv(p),
        Format::Dot => to_dot(p),
        Format::Text => return usage("--format text is not available for constellations"),
    }))
}

fn render_report(r: &LawReport, label: impl Fn(usize) -> String, format: Format) -> anyhow::Result<Outcome> {
    let text = match format {
        Format::Json => pretty(&law_report_json(r, label)),
        Format::Tsv | Format::Text => law_report_text(r, label),
        Format::Dot => return usage("--format dot is not available for law reports"),
    };
    Ok(Outcome {
        text,
        pass: r.all_pass(),
    })
}

pub fn build(
    family: Family,
    arg: &str,
    zero: bool,
    composition: Option<CompositionArg>,
    format: Format,
    caps: &Caps,
) -> anyhow::Result<Outcome> {
    if composition.is_some() && family != Family::Rel {
        return usage("--composition only applies to rel");
    }
    let plain_only = |what: &str| {
        if zero {
            usage(format!("--adjoin-zero applies to plain monoids, not {what}"))
        } else {
            Ok(())
        }
    };
    let n = || -> anyhow::Result<usize> {
        arg.parse()
            .map_err(|_| crate::UsageError(format!("expected a ground set size, got {arg:?}")).into())
    };
    let loaded = match family {
        Family::Table => match (load_table(Path::new(arg))?, zero) {
            (Loaded::Semigroup(s), true) => Loaded::Semigroup(adjoin_zero(&FiniteMonoid::new(s)?).into_semigroup()),
            (Loaded::Unary(_), true) => return usage("--adjoin-zero applies to plain monoids, not unary algebras"),
            (l, false) => l,
        },
        Family::Ttransf => {
            let t = full_transformation_monoid_with(n()?, caps)?;
            let t = if zero { t.with_adjoined_zero() } else { t };
            Loaded::Semigroup(t.algebra.into_semigroup())
        }
        Family::Ptransf => {
            plain_only("ptransf")?;
            Loaded::Unary(partial_transformation_monoid_with(n()?, caps)?.algebra)
        }
        Family::Rel => {
            plain_only("rel")?;
            let c = match composition.unwrap_or(CompositionArg::Ordinary) {
                CompositionArg::Ordinary => Composition::Ordinary,
                CompositionArg::Demonic => Composition::Demonic,
            };
            Loaded::Unary(relation_monoid_with(n()?, c, caps)?.algebra)
        }
        Family::Trel => Loaded::Semigroup(left_total_relation_monoid_with(n()?, zero, caps)?.algebra.into_semigroup()),
        Family::Partition => {
            let m = partition_monoid_with(n()?, caps)?.monoid.algebra;
            let m = if zero { adjoin_zero(&m) } else { m };
            Loaded::Semigroup(m.into_semigroup())
        }
        Family::LtPartition => {
            plain_only("lt-partition")?;
            Loaded::Unary(left_total_partition_monoid_with(n()?, caps)?.algebra)
        }
    };
    render_loaded(&loaded, format)
}

fn table_rows(m: &FiniteMonoid, rows: &[usize], cols: &[usize], cell: impl Fn(usize, usize) -> usize) -> Value {
    json!({
        "columns": label_list(m, cols),
        "rows": rows
            .iter()
            .map(|&r| {
                let mut line = vec![m.label(r)];
                line.extend(cols.iter().map(|&c| m.label(cell(r, c))));
                line
            })
            .collect::<Vec<_>>(),
    })
}

pub fn analyze(file: &Path, which: &str, format: Format) -> anyhow::Result<Outcome> {
    let m = load_monoid(file)?;
    let e = e_set(&m, which)?;
    let label = |x: usize| m.label(x);
    let idem = idempotents(&m);
    let members: Vec<usize> = m.elements().collect();
    let modal = modal_action(&m, &e);
    let meet = meet_table(&m, &e);
    let modal_json = match &modal {
        Ok(act) => table_rows(&m, &members, e.members(), |t, f| act.act(t, f)),
        Err(f) => json!({"failure": relabel(serde_json::to_value(f)?, &label)}),
    };
    if format == Format::Tsv {
        let text = match &modal {
            Ok(act) => {
                let mut out = String::from("·");
                for &f in e.members() {
                    out.push('\t');
                    out.push_str(&label(f));
                }
                out.push('\n');
                for t in m.elements() {
                    out.push_str(&label(t));
                    for &f in e.members() {
                        out.push('\t');
                        out.push_str(&label(act.act(t, f)));
                    }
                    out.push('\n');
                }
                out
            }
            Err(f) => format!("# no modal action: {}\n", relabel(serde_json::to_value(f)?, &label)),
        };
        return Ok(Outcome::ok(text));
    }
    if format != Format::Json {
        return usage(format!("--format {format} is not available for analyze"));
    }
    let proto = is_protomodal(&m, None);
    let largest = largest_protomodal_idempotents(&m);
    let inductive = is_inductive_left_E_monoid(&m, &e);
    let report = json!({
        "size": m.size(),
        "one": label(m.one()),
        "zero": m.zero().map(label),
        "idempotents": label_list(&m, idem.members()),
        "sim_r_classes": sim_r_classes(&m, idem.members())
            .iter()
            .map(|c| label_list(&m, c))
            .collect::<Vec<_>>(),
        "e_set": label_list(&m, e.members()),
        "flags": e.flags(),
        "protomodal": {
            "protomodal": proto.protomodal,
            "failures": proto
                .failures
                .iter()
                .map(|f| json!({"s": label(f.s), "e": label(f.e), "equalizer": label_list(&m, &f.equalizer)}))
                .collect::<Vec<_>>(),
        },
        "largest_protomodal": {
            "g": label_list(&m, largest.g.members()),
            "e_prime": label_list(&m, largest.e_prime.members()),
        },
        "modal": modal_json,
        "meets": match &meet {
            Ok(t) => table_rows(&m, e.members(), e.members(), |a, b| t.meet(a, b)),
            Err((a, b)) => json!({"failure": {"no_meet": [label(*a), label(*b)]}}),
        },
        "definable_meets": modal.as_ref().ok().map(|act| has_definable_meets(&m, act)),
        "inductive": inductive.is_ok(),
        "inductive_failure": match &inductive {
            Ok(_) => Value::Null,
            Err(f) => relabel(serde_json::to_value(f)?, &label),
        },
    });
    Ok(Outcome::ok(pretty(&report)))
}

pub fn complete(file: &Path, which: Option<&str>, variant: Variant, format: Format) -> anyhow::Result<Outcome> {
    let loaded = load_table(file)?;
    let m = loaded.monoid()?;
    let default = if variant == Variant::Rrest {
        "max-left-pre-reduced"
    } else {
        "max-right-pre-reduced"
    };
    let e = e_set(&m, which.unwrap_or(default))?;
    match variant {
        Variant::C => render_constellation(&c_E(&m, &e), format),
        Variant::C0 => render_constellation(&c_0_E(&m, &e)?, format),
        Variant::Cd => match loaded.unary() {
            Some(a) if a.kind() == UnaryKind::Demigroup => render_constellation(&c_d_E(a, &e)?, format),
            _ => usage("--variant cd needs a table whose unary map has kind d"),
        },
        Variant::Rest => render_unary(&rest(&m, &e)?.algebra, format),
        Variant::Rest0 => render_unary(&rest0(&m, &e)?.algebra, format),
        Variant::Rrest => render_unary(&rrest(&m, &e)?.algebra, format),
    }
}

fn need_unary(file: &Path) -> anyhow::Result<UnaryAlgebra> {
    match load_table(file)? {
        Loaded::Unary(a) => Ok(a),
        Loaded::Semigroup(_) => usage("restriction laws need a table with a unary map"),
    }
}

pub fn verify(file: &Path, laws: Laws, which: &str, format: Format) -> anyhow::Result<Outcome> {
    match laws {
        Laws::Constellation => {
            let p = load_constellation(file)?;
            render_report(&check_constellation(&p), |x| p.label(x).to_string(), format)
        }
        Laws::LeftRestriction => {
            let a = need_unary(file)?;
            render_report(&check_left_restriction(&a), |x| a.label(x), format)
        }
        Laws::RightRestriction => {
            let a = need_unary(file)?;
            render_report(&check_right_restriction(&a), |x| a.label(x), format)
        }
        Laws::Modal => {
            let m = load_monoid(file)?;
            let e = e_set(&m, which)?;
            match modal_action(&m, &e) {
                Ok(act) => {
                    let meet = meet_table(&m, &e).ok();
                    render_report(&check_modal_laws(&m, &act, meet.as_ref()), |x| m.label(x), format)
                }
                Err(f) => {
                    let label = |x: usize| m.label(x);
                    let v = json!({"pass": false, "failure": relabel(serde_json::to_value(&f)?, &label)});
                    Ok(Outcome {
                        text: pretty(&v),
                        pass: false,
                    })
                }
            }
        }
        Laws::Zs => {
            let m = load_monoid(file)?;
            let e = e_set(&m, which)?;
            let acts = TwoActions::new(&m, &e)?;
            render_report(&check_zs_laws(&m, &acts), |x| m.label(x), format)
        }
    }
}
