//! The JSON table format:
//! `{"size", "mul", "one", "zero", "labels", "unary": {"kind", "map"}}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{FiniteMonoid, Semigroup};
use crate::unary::{make_unary, UnaryAlgebra, UnaryKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryFile {
    pub kind: UnaryKind,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub size: usize,
    pub mul: Vec<Vec<usize>>,
    pub one: Option<usize>,
    pub zero: Option<usize>,
    pub labels: Option<Vec<String>>,
    pub unary: Option<UnaryFile>,
}

/// A table read back from JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loaded {
    Semigroup(Semigroup),
    Unary(UnaryAlgebra),
}

impl Loaded {
    pub fn semigroup(&self) -> &Semigroup {
        match self {
            Loaded::Semigroup(s) => s,
            Loaded::Unary(a) => a.base(),
        }
    }

    pub fn unary(&self) -> Option<&UnaryAlgebra> {
        match self {
            Loaded::Semigroup(_) => None,
            Loaded::Unary(a) => Some(a),
        }
    }

    pub fn monoid(&self) -> Result<FiniteMonoid> {
        FiniteMonoid::new(self.semigroup().clone())
    }

    pub fn to_file(&self) -> TableFile {
        match self {
            Loaded::Semigroup(s) => semigroup_file(s),
            Loaded::Unary(a) => unary_file(a),
        }
    }
}

pub fn semigroup_file(s: &Semigroup) -> TableFile {
    TableFile {
        size: s.size(),
        mul: s.rows(),
        one: s.one(),
        zero: s.zero(),
        labels: s.labels().map(<[String]>::to_vec),
        unary: None,
    }
}

pub fn unary_file(a: &UnaryAlgebra) -> TableFile {
    TableFile {
        unary: Some(UnaryFile {
            kind: a.kind(),
            map: a.map(),
        }),
        ..semigroup_file(a.base())
    }
}

/// Validates shape, associativity, constants, labels and the unary laws.
pub fn from_file(f: &TableFile) -> Result<Loaded> {
    if f.mul.len() != f.size {
        return Err(Error::Malformed(format!("size is {} but mul has {} rows", f.size, f.mul.len())));
    }
    let mut s = Semigroup::from_rows(&f.mul)?;
    if let Some(one) = f.one {
        s = s.with_one(one)?;
    }
    if let Some(zero) = f.zero {
        s = s.with_zero(zero)?;
    }
    if let Some(labels) = &f.labels {
        s = s.with_labels(labels.clone())?;
    }
    Ok(match &f.unary {
        None => Loaded::Semigroup(s),
        Some(u) => Loaded::Unary(make_unary(s, u.map.clone(), u.kind)?),
    })
}

pub fn to_string(f: &TableFile) -> String {
    let mut out = serde_json::to_string_pretty(f).expect("serializable");
    out.push('\n');
    out
}

pub fn parse(text: &str) -> Result<Loaded> {
    let f: TableFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    from_file(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{small5, t2_zero};
    use crate::families::partial_transformation_monoid;

    #[test]
    fn round_trip_is_byte_identical() {
        let m = small5();
        let text = to_string(&semigroup_file(&m));
        let back = parse(&text).unwrap();
        assert_eq!(back.semigroup(), m.as_semigroup());
        assert_eq!(to_string(&back.to_file()), text);

        let pt = partial_transformation_monoid(2).unwrap().algebra;
        let text = to_string(&unary_file(&pt));
        let back = parse(&text).unwrap();
        assert_eq!(back.unary(), Some(&pt));
        assert_eq!(to_string(&back.to_file()), text);
    }

    #[test]
    fn nulls_for_missing_fields() {
        let t = t2_zero().unwrap();
        let j: serde_json::Value = serde_json::from_str(&to_string(&semigroup_file(&t.algebra))).unwrap();
        assert_eq!(j["zero"], 4);
        assert!(j["unary"].is_null());
        let s = Semigroup::from_fn(2, |x, _| x).unwrap();
        let j: serde_json::Value = serde_json::from_str(&to_string(&semigroup_file(&s))).unwrap();
        assert!(j["one"].is_null() && j["labels"].is_null());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("{"), Err(Error::Malformed(_))));
        let bad = r#"{"size":2,"mul":[[0,1],[1,1]],"one":1,"zero":null,"labels":null,"unary":null}"#;
        assert_eq!(parse(bad).unwrap_err(), Error::BadIdentity(0));
        let bad = r#"{"size":2,"mul":[[0,1],[1,0]],"one":0,"zero":null,"labels":null,"unary":{"kind":"D","map":[1,1]}}"#;
        assert!(matches!(parse(bad), Err(Error::LawViolated { .. })));
        let bad = r#"{"size":3,"mul":[[0,1],[1,0]],"one":0,"zero":null,"labels":null,"unary":null}"#;
        assert!(matches!(parse(bad), Err(Error::Malformed(_))));
    }
}
