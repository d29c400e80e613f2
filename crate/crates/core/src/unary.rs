//! Unary semigroups: demigroups, left restriction (D) and right restriction (R) algebras.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::{search1, search2, Law, LawOutcome, LawReport};
use crate::restriction::{check_left_restriction_laws, check_right_restriction_laws};
use crate::semigroup::{FiniteMonoid, Semigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnaryKind {
    /// `d(x)x = x` and `d(xy) = d(x d(y))`
    #[serde(rename = "d")]
    Demigroup,
    /// left restriction laws
    #[serde(rename = "D")]
    Domain,
    /// right restriction laws
    #[serde(rename = "R")]
    Range,
}

impl UnaryKind {
    pub fn tag(self) -> &'static str {
        match self {
            UnaryKind::Demigroup => "d",
            UnaryKind::Domain => "D",
            UnaryKind::Range => "R",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "d" => Some(UnaryKind::Demigroup),
            "D" => Some(UnaryKind::Domain),
            "R" => Some(UnaryKind::Range),
            _ => None,
        }
    }
}

impl fmt::Display for UnaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryAlgebra {
    base: Semigroup,
    map: Vec<u32>,
    kind: UnaryKind,
}

/// Validates `map` against the laws of `kind` and pairs it with `base`.
pub fn make_unary(base: Semigroup, map: Vec<usize>, kind: UnaryKind) -> Result<UnaryAlgebra> {
    let a = UnaryAlgebra::unchecked(base, map, kind)?;
    let report = a.kind_laws();
    if let Some((law, w)) = report.first_failure() {
        return Err(Error::LawViolated {
            law,
            witness: w.to_vec(),
        });
    }
    Ok(a)
}

/// Demigroup laws for `map` over `base`, least witnesses.
pub fn check_demigroup_laws(base: &Semigroup, map: &[usize]) -> LawReport {
    let d = |x: usize| map[x];
    let n = base.size();
    let mut r = LawReport::new();
    r.push(
        Law::D1,
        LawOutcome::from_witness(search1(n, |x| base.mul(d(x), x) != x)),
    );
    r.push(
        Law::D2,
        LawOutcome::from_witness(search2(n, |x, y| {
            d(base.mul(x, y)) != d(base.mul(x, d(y)))
        })),
    );
    r
}

impl UnaryAlgebra {
    /// Shape checks only.
    pub(crate) fn unchecked(base: Semigroup, map: Vec<usize>, kind: UnaryKind) -> Result<Self> {
        if map.len() != base.size() {
            return Err(Error::UnaryLength {
                len: map.len(),
                expected: base.size(),
            });
        }
        for &v in &map {
            base.check_index(v)?;
        }
        Ok(UnaryAlgebra {
            base,
            map: map.into_iter().map(|v| v as u32).collect(),
            kind,
        })
    }

    /// A monoid with `d ≡ 1`.
    pub fn trivial_demigroup(m: &FiniteMonoid) -> Self {
        let one = m.one();
        UnaryAlgebra {
            base: m.as_semigroup().clone(),
            map: vec![one as u32; m.size()],
            kind: UnaryKind::Demigroup,
        }
    }

    /// A monoid with zero, `d(0) = 0` and `d ≡ 1` elsewhere.
    pub fn zero_demigroup(m: &FiniteMonoid) -> Result<Self> {
        let z = m.zero().ok_or(Error::NoZero)?;
        let one = m.one();
        let map = (0..m.size()).map(|x| if x == z { z } else { one }).collect();
        make_unary(m.as_semigroup().clone(), map, UnaryKind::Demigroup)
    }

    /// The laws that define this algebra's kind.
    pub fn kind_laws(&self) -> LawReport {
        match self.kind {
            UnaryKind::Demigroup => check_demigroup_laws(&self.base, &self.map()),
            UnaryKind::Domain => {
                let mut r = check_left_restriction_laws(self);
                r.entries.retain(|(l, _)| *l != Law::R5);
                r
            }
            UnaryKind::Range => {
                let mut r = check_right_restriction_laws(self);
                r.entries.retain(|(l, _)| *l != Law::R5Dual);
                r
            }
        }
    }

    pub fn base(&self) -> &Semigroup {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.base.mul(x, y)
    }

    #[inline]
    pub fn unary(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    pub fn kind(&self) -> UnaryKind {
        self.kind
    }

    pub fn label(&self, x: usize) -> String {
        self.base.label(x)
    }

    pub fn one(&self) -> Option<usize> {
        self.base.one()
    }

    pub fn zero(&self) -> Option<usize> {
        self.base.zero()
    }

    /// The image of the unary map, in increasing order.
    pub fn projections(&self) -> Vec<usize> {
        let mut v = self.map();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        Ok(UnaryAlgebra {
            base: self.base.with_labels(labels)?,
            ..self
        })
    }

    /// The opposite algebra. Left and right restriction kinds swap.
    pub fn opposite(&self) -> UnaryAlgebra {
        let kind = match self.kind {
            UnaryKind::Domain => UnaryKind::Range,
            UnaryKind::Range => UnaryKind::Domain,
            UnaryKind::Demigroup => UnaryKind::Demigroup,
        };
        UnaryAlgebra {
            base: self.base.opposite(),
            map: self.map.clone(),
            kind,
        }
    }

    /// Subalgebra on a subset closed under the product and the unary map.
    pub fn restrict(&self, subset: &[usize]) -> Result<(UnaryAlgebra, Vec<usize>)> {
        let (base, emb) = self.base.restrict(subset)?;
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let mut map = Vec::with_capacity(emb.len());
        for &x in &emb {
            let u = self.unary(x);
            if pos[u] == usize::MAX {
                return Err(Error::NotClosed(x, x));
            }
            map.push(pos[u] as u32);
        }
        Ok((
            UnaryAlgebra {
                base,
                map,
                kind: self.kind,
            },
            emb,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{adjoin_zero, build_table_monoid};

    fn t2() -> FiniteMonoid {
        // lex order of image arrays: [0,0] [0,1] [1,0] [1,1]
        let maps: [[usize; 2]; 4] = [[0, 0], [0, 1], [1, 0], [1, 1]];
        let idx = |m: [usize; 2]| maps.iter().position(|&k| k == m).unwrap();
        let rows: Vec<Vec<usize>> = maps
            .iter()
            .map(|a| maps.iter().map(|b| idx([b[a[0]], b[a[1]]])).collect())
            .collect();
        build_table_monoid(&rows, 1, None, None).unwrap()
    }

    #[test]
    fn zero_demigroup_on_t2_zero() {
        let m = adjoin_zero(&t2());
        let a = UnaryAlgebra::zero_demigroup(&m).unwrap();
        assert_eq!(a.unary(4), 4);
        assert_eq!(a.unary(2), 1);
        assert!(a.kind_laws().all_pass());
    }

    #[test]
    fn constant_one_is_demigroup() {
        let m = t2();
        let a = UnaryAlgebra::trivial_demigroup(&m);
        assert!(check_demigroup_laws(a.base(), &a.map()).all_pass());
    }

    #[test]
    fn bad_map_rejected() {
        let m = t2();
        // d ≡ const map e fails d(x)x = x at x = 1
        let err = make_unary(m.as_semigroup().clone(), vec![0; 4], UnaryKind::Demigroup).unwrap_err();
        assert_eq!(
            err,
            Error::LawViolated {
                law: Law::D1,
                witness: vec![1]
            }
        );
        assert!(matches!(
            make_unary(m.as_semigroup().clone(), vec![1; 3], UnaryKind::Demigroup),
            Err(Error::UnaryLength { len: 3, expected: 4 })
        ));
    }

    #[test]
    fn kind_tags() {
        for k in [UnaryKind::Demigroup, UnaryKind::Domain, UnaryKind::Range] {
            assert_eq!(UnaryKind::from_tag(k.tag()), Some(k));
        }
        assert_eq!(UnaryKind::from_tag("x"), None);
    }
}
