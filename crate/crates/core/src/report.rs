//! Label-based rendering: law reports as JSON and tables as TSV.

use serde_json::{json, Value};

use crate::constellation::Constellation;
use crate::laws::{LawOutcome, LawReport};
use crate::semigroup::Semigroup;
use crate::unary::UnaryAlgebra;

/// `{"pass": bool, "laws": [{"law", "status", "witness"?, "reason"?}]}`,
/// witnesses given as labels.
pub fn law_report_json(report: &LawReport, label: impl Fn(usize) -> String) -> Value {
    let laws: Vec<Value> = report
        .entries
        .iter()
        .map(|(law, outcome)| match outcome {
            LawOutcome::Pass => json!({"law": law.name(), "status": "pass"}),
            LawOutcome::Fail { witness } => json!({
                "law": law.name(),
                "status": "fail",
                "witness": witness.iter().map(|&x| label(x)).collect::<Vec<_>>(),
            }),
            LawOutcome::Inapplicable { reason } => {
                json!({"law": law.name(), "status": "inapplicable", "reason": reason})
            }
        })
        .collect();
    json!({"pass": report.all_pass(), "laws": laws})
}

/// One line per law: `R4\tfail\t(a,b)`.
pub fn law_report_text(report: &LawReport, label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (law, outcome) in &report.entries {
        let line = match outcome {
            LawOutcome::Pass => format!("{law}\tpass\n"),
            LawOutcome::Fail { witness } => {
                let w: Vec<String> = witness.iter().map(|&x| label(x)).collect();
                format!("{law}\tfail\t({})\n", w.join(","))
            }
            LawOutcome::Inapplicable { reason } => format!("{law}\tinapplicable\t{reason}\n"),
        };
        out.push_str(&line);
    }
    out
}

fn tsv(n: usize, label: impl Fn(usize) -> String, cell: impl Fn(usize, usize) -> String, extra: Option<(&str, &dyn Fn(usize) -> String)>) -> String {
    let mut out = String::from("*");
    for y in 0..n {
        out.push('\t');
        out.push_str(&label(y));
    }
    if let Some((name, _)) = extra {
        out.push('\t');
        out.push_str(name);
    }
    out.push('\n');
    for x in 0..n {
        out.push_str(&label(x));
        for y in 0..n {
            out.push('\t');
            out.push_str(&cell(x, y));
        }
        if let Some((_, f)) = extra {
            out.push('\t');
            out.push_str(&f(x));
        }
        out.push('\n');
    }
    out
}

/// Multiplication table with a header row and column of labels.
pub fn semigroup_tsv(s: &Semigroup) -> String {
    tsv(s.size(), |x| s.label(x), |x, y| s.label(s.mul(x, y)), None)
}

/// As [`semigroup_tsv`] with a trailing column for the unary map.
pub fn unary_tsv(a: &UnaryAlgebra) -> String {
    let d = |x: usize| a.label(a.unary(x));
    tsv(a.size(), |x| a.label(x), |x, y| a.label(a.mul(x, y)), Some((a.kind().tag(), &d)))
}

/// Partial table with `-` for undefined products and a `D` column.
pub fn constellation_tsv(p: &Constellation) -> String {
    let d = |x: usize| p.label(p.d(x)).to_string();
    tsv(
        p.size(),
        |x| p.label(x).to_string(),
        |x, y| p.compose(x, y).map_or_else(|| "-".to_string(), |z| p.label(z).to_string()),
        Some(("D", &d)),
    )
}
