use std::fmt;

/// A partition of `X ∪ X′`, with upper points `0..n` and lower points `n..2n`.
///
/// Block ids are numbered by first occurrence, so equal partitions have equal arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPartition {
    n: usize,
    block: Vec<u8>,
}

fn canonical(raw: impl IntoIterator<Item = usize>) -> Vec<u8> {
    let mut seen: Vec<usize> = Vec::new();
    raw.into_iter()
        .map(|b| match seen.iter().position(|&s| s == b) {
            Some(i) => i as u8,
            None => {
                seen.push(b);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

impl BlockPartition {
    /// Any block labelling of the `2n` points; it is canonicalized.
    pub fn from_labels(n: usize, raw: &[usize]) -> Self {
        assert_eq!(raw.len(), 2 * n, "need 2n block labels");
        BlockPartition {
            n,
            block: canonical(raw.iter().copied()),
        }
    }

    /// From explicit blocks over point indices `0..2n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut raw = vec![usize::MAX; 2 * n];
        for (k, b) in blocks.iter().enumerate() {
            for &p in b {
                assert!(raw[p] == usize::MAX, "point {p} in two blocks");
                raw[p] = k;
            }
        }
        assert!(raw.iter().all(|&b| b != usize::MAX), "blocks do not cover");
        Self::from_labels(n, &raw)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_labels(n, &(0..2 * n).map(|p| p % n).collect::<Vec<_>>())
    }

    /// All partitions of `2n` points, as restricted growth strings in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<BlockPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(2 * n);
        fn rec(n: usize, cur: &mut Vec<u8>, max: i32, out: &mut Vec<BlockPartition>) {
            if cur.len() == 2 * n {
                out.push(BlockPartition {
                    n,
                    block: cur.clone(),
                });
                return;
            }
            for b in 0..=(max + 1) {
                cur.push(b as u8);
                rec(n, cur, max.max(b), out);
                cur.pop();
            }
        }
        rec(n, &mut cur, -1, &mut out);
        out
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn blocks_array(&self) -> &[u8] {
        &self.block
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let k = self.block.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); k];
        for (p, &b) in self.block.iter().enumerate() {
            out[b as usize].push(p);
        }
        out
    }

    /// Stacks `self` over `other`, identifying the lower row of `self`
    /// with the upper row of `other`, and reads off outer connectivity.
    pub fn then(&self, other: &BlockPartition) -> BlockPartition {
        let n = self.n;
        assert_eq!(n, other.n);
        let mut uf = UnionFind::new(3 * n);
        let mut first = vec![usize::MAX; 2 * n + 1];
        for (p, &b) in self.block.iter().enumerate() {
            match first[b as usize] {
                usize::MAX => first[b as usize] = p,
                q => uf.union(p, q),
            }
        }
        first.iter_mut().for_each(|v| *v = usize::MAX);
        for (p, &b) in other.block.iter().enumerate() {
            match first[b as usize] {
                usize::MAX => first[b as usize] = p + n,
                q => uf.union(p + n, q),
            }
        }
        let outer: Vec<usize> = (0..n).chain(2 * n..3 * n).map(|p| uf.find(p)).collect();
        BlockPartition {
            n,
            block: canonical(outer),
        }
    }

    /// The involution: upper and lower rows swapped.
    pub fn star(&self) -> BlockPartition {
        let n = self.n;
        let raw: Vec<usize> = (0..2 * n)
            .map(|p| self.block[(p + n) % (2 * n)] as usize)
            .collect();
        Self::from_labels(n, &raw)
    }

    /// Every upper point shares a block with some lower point.
    pub fn is_left_total(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (n..2 * n).any(|j| self.block[i] == self.block[j]))
    }

    /// The partition with blocks `A ∪ A′` for each class `A` of the lower row.
    pub fn range_projection(&self) -> BlockPartition {
        let n = self.n;
        let raw: Vec<usize> = (0..2 * n).map(|p| self.block[n + p % n] as usize).collect();
        Self::from_labels(n, &raw)
    }
}

impl fmt::Display for BlockPartition {
    /// Blocks in first-occurrence order, lower points primed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        for b in self.blocks() {
            write!(f, "{{")?;
            for (i, p) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                if *p < n {
                    write!(f, "{p}")?;
                } else {
                    write!(f, "{}'", p - n)?;
                }
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}
