use std::path::Path;

use anyhow::Context;
use constella::constellation::{self, from_unary, Constellation};
use constella::idempotent::{
    idempotents, largest_protomodal_idempotents, maximal_left_pre_reduced, maximal_right_pre_reduced, Selector,
};
use constella::json::{from_file, Loaded, TableFile};
use constella::{FiniteMonoid, IdempotentSet, Semigroup};
use serde_json::Value;

use crate::usage;

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| crate::UsageError(format!("{}: {e}", path.display())).into())
}

fn table_from_value(v: Value, path: &Path) -> anyhow::Result<Loaded> {
    let file: TableFile = serde_json::from_value(v)
        .map_err(|e| crate::UsageError(format!("{}: not a table file: {e}", path.display())))?;
    Ok(from_file(&file)?)
}

pub fn load_table(path: &Path) -> anyhow::Result<Loaded> {
    table_from_value(read_json(path)?, path)
}

pub fn load_monoid(path: &Path) -> anyhow::Result<FiniteMonoid> {
    Ok(load_table(path)?.monoid()?)
}

/// A constellation file as written by `complete`, or a unary algebra read
/// as a constellation through its restricted product.
pub fn load_constellation(path: &Path) -> anyhow::Result<Constellation> {
    let v = read_json(path)?;
    if v.get("product").is_some() {
        return Ok(constellation::from_json(&v)?);
    }
    match table_from_value(v, path)? {
        Loaded::Unary(a) => Ok(from_unary(&a)),
        Loaded::Semigroup(_) => usage("a plain table has no unary map to read as a constellation"),
    }
}

/// Smallest `n` with `n^n` or `n^n + 1` elements.
fn transformation_degree(s: &Semigroup) -> anyhow::Result<usize> {
    (1..=6)
        .find(|&n: &usize| {
            let k = n.pow(n as u32);
            s.size() == k || s.size() == k + 1
        })
        .map_or_else(|| usage("the monoid is not T_n or T_n with zero"), Ok)
}

/// `all`, `one`, `max-right-pre-reduced`, `max-left-pre-reduced`,
/// `largest-protomodal`, `min-of-range`, `kernel-min`, or a list of labels
/// separated by `;`, or by `,` when no `;` occurs.
pub fn e_set(s: &FiniteMonoid, which: &str) -> anyhow::Result<IdempotentSet> {
    Ok(match which {
        "all" => idempotents(s),
        "one" => IdempotentSet::new(s, [s.one()])?,
        "max-right-pre-reduced" => maximal_right_pre_reduced(s, Selector::LeastIndex)?,
        "max-left-pre-reduced" => maximal_left_pre_reduced(s),
        "largest-protomodal" => largest_protomodal_idempotents(s).e_prime,
        "min-of-range" => maximal_right_pre_reduced(s, Selector::MinOfRange(transformation_degree(s)?))?,
        "kernel-min" => maximal_right_pre_reduced(s, Selector::KernelMin(transformation_degree(s)?))?,
        list => {
            let sep = if list.contains(';') { ';' } else { ',' };
            let names: Vec<&str> = list.split(sep).map(str::trim).filter(|x| !x.is_empty()).collect();
            if names.is_empty() {
                return usage("empty --e-set");
            }
            IdempotentSet::from_labels(s, &names)?
        }
    })
}

pub fn label_list(s: &Semigroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| s.label(x)).collect()
}

/// Replaces element indices under the keys `e`, `f`, `s`, `t` by labels.
pub fn relabel(v: Value, label: &dyn Fn(usize) -> String) -> Value {
    match v {
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| {
                    let v = match (k.as_str(), &v) {
                        ("e" | "f" | "s" | "t", Value::Number(n)) => {
                            n.as_u64().map_or(v.clone(), |i| Value::String(label(i as usize)))
                        }
                        _ => relabel(v, label),
                    };
                    (k, v)
                })
                .collect(),
        ),
        Value::Array(xs) => Value::Array(xs.into_iter().map(|x| relabel(x, label)).collect()),
        other => other,
    }
}
