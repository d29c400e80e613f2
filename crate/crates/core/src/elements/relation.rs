use std::fmt;

/// A binary relation on `0..n`; bit `y` of `rows[x]` is set iff `(x, y)` is in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryRelation {
    rows: Vec<u32>,
}

impl BinaryRelation {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut rows = vec![0u32; n];
        for &(x, y) in pairs {
            assert!(x < n && y < n, "pair out of range");
            rows[x] |= 1 << y;
        }
        BinaryRelation { rows }
    }

    pub fn from_rows(rows: Vec<u32>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|&r| n >= 32 || r >> n == 0), "row out of range");
        BinaryRelation { rows }
    }

    pub fn empty(n: usize) -> Self {
        BinaryRelation { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(n, (1u32 << n) - 1)
    }

    /// `{(x, x) : x in mask}`
    pub fn diagonal(n: usize, mask: u32) -> Self {
        BinaryRelation {
            rows: (0..n).map(|x| mask & 1 << x).collect(),
        }
    }

    /// Rows read as base-`2^n` digits, most significant first.
    pub fn from_index(n: usize, index: usize) -> Self {
        let mut rows = vec![0u32; n];
        let mut i = index;
        for r in rows.iter_mut().rev() {
            *r = (i & ((1 << n) - 1)) as u32;
            i >>= n;
        }
        BinaryRelation { rows }
    }

    pub fn index(&self) -> usize {
        let n = self.rows.len();
        self.rows.iter().fold(0, |acc, &r| acc << n | r as usize)
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rows.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.contains(x, y))
            .collect()
    }

    pub fn domain_mask(&self) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    pub fn range_mask(&self) -> u32 {
        self.rows.iter().fold(0, |m, &r| m | r)
    }

    pub fn is_left_total(&self) -> bool {
        self.rows.iter().all(|&r| r != 0)
    }

    /// `D(ρ)`: the diagonal on the domain of `ρ`.
    pub fn domain(&self) -> BinaryRelation {
        Self::diagonal(self.rows.len(), self.domain_mask())
    }

    fn image_of(&self, set: u32) -> u32 {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            let z = s.trailing_zeros();
            out |= self.rows[z as usize];
            s &= s - 1;
        }
        out
    }

    /// Ordinary relational composition `ρτ`, `self` first.
    pub fn then(&self, other: &BinaryRelation) -> BinaryRelation {
        BinaryRelation {
            rows: self.rows.iter().map(|&r| other.image_of(r)).collect(),
        }
    }

    /// Demonic composition: the pairs of `ρτ` whose source has every
    /// `ρ`-successor inside the domain of `τ`.
    pub fn demonic_then(&self, other: &BinaryRelation) -> BinaryRelation {
        let dom = other.domain_mask();
        BinaryRelation {
            rows: self
                .rows
                .iter()
                .map(|&r| if r & !dom == 0 { other.image_of(r) } else { 0 })
                .collect(),
        }
    }
}

impl fmt::Display for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, y)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "}}")
    }
}
