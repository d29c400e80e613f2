//! Law identifiers, per-law outcomes and exhaustive witness search.
//!
//! Every checker scans tuples in lexicographic order and stops at the first
//! failure, so reported witnesses are the lexicographically least ones.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Law {
    Associativity,
    /// d(x)x = x
    D1,
    /// d(xy) = d(x d(y))
    D2,
    /// d(x) is idempotent, required of E-demigroups
    DIdempotent,
    R1,
    R2,
    R3,
    R4,
    R5,
    R1Dual,
    R2Dual,
    R3Dual,
    R4Dual,
    R5Dual,
    M1,
    M2,
    M3,
    M4,
    M5,
    C1,
    C2,
    C3,
    I1,
    I2,
    Zs1,
    Zs2,
    Zs3,
    Zs4,
    Involution,
    Regular,
}

impl Law {
    pub const LEFT_RESTRICTION: [Law; 5] = [Law::R1, Law::R2, Law::R3, Law::R4, Law::R5];
    pub const RIGHT_RESTRICTION: [Law; 5] = [
        Law::R1Dual,
        Law::R2Dual,
        Law::R3Dual,
        Law::R4Dual,
        Law::R5Dual,
    ];
    pub const MODAL: [Law; 5] = [Law::M1, Law::M2, Law::M3, Law::M4, Law::M5];
    pub const CONSTELLATION: [Law; 3] = [Law::C1, Law::C2, Law::C3];
    pub const ZAPPA_SZEP: [Law; 4] = [Law::Zs1, Law::Zs2, Law::Zs3, Law::Zs4];

    pub fn name(self) -> &'static str {
        match self {
            Law::Associativity => "assoc",
            Law::D1 => "D1",
            Law::D2 => "D2",
            Law::DIdempotent => "D-idempotent",
            Law::R1 => "R1",
            Law::R2 => "R2",
            Law::R3 => "R3",
            Law::R4 => "R4",
            Law::R5 => "R5",
            Law::R1Dual => "R1-dual",
            Law::R2Dual => "R2-dual",
            Law::R3Dual => "R3-dual",
            Law::R4Dual => "R4-dual",
            Law::R5Dual => "R5-dual",
            Law::M1 => "M1",
            Law::M2 => "M2",
            Law::M3 => "M3",
            Law::M4 => "M4",
            Law::M5 => "M5",
            Law::C1 => "C1",
            Law::C2 => "C2",
            Law::C3 => "C3",
            Law::I1 => "I1",
            Law::I2 => "I2",
            Law::Zs1 => "ZS1",
            Law::Zs2 => "ZS2",
            Law::Zs3 => "ZS3",
            Law::Zs4 => "ZS4",
            Law::Involution => "involution",
            Law::Regular => "regular",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum LawOutcome {
    Pass,
    Fail { witness: Vec<usize> },
    Inapplicable { reason: String },
}

impl LawOutcome {
    pub fn from_witness(w: Option<Vec<usize>>) -> Self {
        match w {
            None => LawOutcome::Pass,
            Some(witness) => LawOutcome::Fail { witness },
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, LawOutcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, LawOutcome::Fail { .. })
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            LawOutcome::Fail { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub entries: Vec<(Law, LawOutcome)>,
}

impl LawReport {
    pub fn new() -> Self {
        LawReport::default()
    }

    pub fn push(&mut self, law: Law, outcome: LawOutcome) {
        self.entries.push((law, outcome));
    }

    pub fn get(&self, law: Law) -> Option<&LawOutcome> {
        self.entries.iter().find(|(l, _)| *l == law).map(|(_, o)| o)
    }

    /// No law failed. Inapplicable laws do not count against this.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|(_, o)| !o.is_fail())
    }

    pub fn first_failure(&self) -> Option<(Law, &[usize])> {
        self.entries
            .iter()
            .find_map(|(l, o)| o.witness().map(|w| (*l, w)))
    }

    pub fn passes(&self, law: Law) -> bool {
        self.get(law).is_some_and(LawOutcome::is_pass)
    }

    pub fn fails(&self, law: Law) -> bool {
        self.get(law).is_some_and(LawOutcome::is_fail)
    }

    pub fn merge(&mut self, other: LawReport) {
        self.entries.extend(other.entries);
    }
}

/// Least `x < n` with `bad(x)`.
pub fn search1(n: usize, mut bad: impl FnMut(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&x| bad(x)).map(|x| vec![x])
}

/// Lexicographically least `(x, y)` with `bad(x, y)`.
pub fn search2(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            if bad(x, y) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// Lexicographically least `(x, y, z)` with `bad(x, y, z)`.
pub fn search3(n: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn searches_return_least_witness() {
        assert_eq!(search1(5, |x| x >= 3), Some(vec![3]));
        assert_eq!(search2(4, |x, y| x + y == 3 && x > 0), Some(vec![1, 2]));
        assert_eq!(search3(3, |x, _, z| x == 2 && z == 1), Some(vec![2, 0, 1]));
        assert_eq!(search3(3, |_, _, _| false), None);
    }

    #[test]
    fn report_summary() {
        let mut r = LawReport::new();
        r.push(Law::R1, LawOutcome::Pass);
        r.push(
            Law::M5,
            LawOutcome::Inapplicable {
                reason: "no meets".into(),
            },
        );
        assert!(r.all_pass());
        r.push(Law::R4, LawOutcome::Fail { witness: vec![1, 2] });
        assert!(!r.all_pass());
        assert_eq!(r.first_failure(), Some((Law::R4, &[1usize, 2][..])));
        assert!(r.passes(Law::R1));
        assert!(!r.passes(Law::M5));
        assert!(r.fails(Law::R4));
    }
}
