//! Isomorphism search for small constellations, unary semigroups and semigroups.
//!
//! Backtracking over bijections, domain elements first, pruned by invariant
//! signatures and by checking every product as soon as its three ends are
//! assigned.

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::unary::UnaryAlgebra;

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

const UNDEF: u32 = u32::MAX;

struct Table {
    n: usize,
    prod: Vec<u32>,
    unary: Vec<u32>,
}

impl Table {
    fn from_constellation(p: &Constellation) -> Self {
        let n = p.size();
        let mut prod = vec![UNDEF; n * n];
        for (x, y, z) in p.product_triples() {
            prod[x * n + y] = z as u32;
        }
        Table {
            n,
            prod,
            unary: p.dmap().into_iter().map(|d| d as u32).collect(),
        }
    }

    fn from_unary(a: &UnaryAlgebra) -> Self {
        let n = a.size();
        Table {
            n,
            prod: (0..n * n).map(|i| a.mul(i / n, i % n) as u32).collect(),
            unary: a.map().into_iter().map(|d| d as u32).collect(),
        }
    }

    fn from_semigroup(s: &Semigroup) -> Self {
        let n = s.size();
        Table {
            n,
            prod: (0..n * n).map(|i| s.mul(i / n, i % n) as u32).collect(),
            unary: (0..n as u32).collect(),
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u32 {
        self.prod[x * self.n + y]
    }

    fn is_projection(&self, x: usize) -> bool {
        self.unary[x] as usize == x
    }

    fn signature(&self, x: usize) -> [usize; 8] {
        let n = self.n;
        let row = (0..n).filter(|&y| self.get(x, y) != UNDEF).count();
        let col = (0..n).filter(|&y| self.get(y, x) != UNDEF).count();
        let left_id = (0..n).filter(|&y| self.get(x, y) == y as u32).count();
        let right_id = (0..n).filter(|&y| self.get(y, x) == y as u32).count();
        let fixed = (0..n).filter(|&y| self.get(x, y) == x as u32).count();
        let fibre = (0..n).filter(|&y| self.unary[y] == self.unary[x]).count();
        let square = match self.get(x, x) {
            UNDEF => 2,
            v if v as usize == x => 1,
            _ => 0,
        };
        [self.is_projection(x) as usize, row, col, left_id, right_id, fixed, fibre, square]
    }
}

struct Search<'a> {
    a: &'a Table,
    b: &'a Table,
    order: Vec<usize>,
    sig_a: Vec<[usize; 8]>,
    sig_b: Vec<[usize; 8]>,
    /// pairs (x, y) of `a` with x∘y = z, indexed by z
    preimages: Vec<Vec<(u32, u32)>>,
    map: Vec<u32>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn consistent(&self, x: usize, u: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let img = |v: u32| if v == UNDEF { UNDEF } else { self.map[v as usize] };
        // unary map, both directions where assigned
        let dx = a.unary[x] as usize;
        if self.map[dx] != UNDEF && self.map[dx] != b.unary[u] {
            return false;
        }
        for y in 0..a.n {
            let v = self.map[y];
            if v == UNDEF {
                continue;
            }
            let v = v as usize;
            if a.unary[y] as usize == x && b.unary[v] as usize != u {
                return false;
            }
            for (p, q, pu, qu) in [(x, y, u, v), (y, x, v, u)] {
                let ab = a.get(p, q);
                let bb = b.get(pu, qu);
                if (ab == UNDEF) != (bb == UNDEF) {
                    return false;
                }
                if ab != UNDEF {
                    let m = img(ab);
                    if m != UNDEF && m != bb {
                        return false;
                    }
                }
            }
        }
        let ax = a.get(x, x);
        let bu = b.get(u, u);
        if (ax == UNDEF) != (bu == UNDEF) {
            return false;
        }
        if ax != UNDEF && ax as usize == x && bu as usize != u {
            return false;
        }
        if ax != UNDEF && self.map[ax as usize] != UNDEF && self.map[ax as usize] != bu {
            return false;
        }
        for &(p, q) in &self.preimages[x] {
            let (mp, mq) = (self.map[p as usize], self.map[q as usize]);
            if mp != UNDEF && mq != UNDEF && b.get(mp as usize, mq as usize) != u as u32 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let x = self.order[depth];
        for u in 0..self.b.n {
            if self.used[u] || self.sig_a[x] != self.sig_b[u] || !self.consistent(x, u) {
                continue;
            }
            self.map[x] = u as u32;
            self.used[u] = true;
            if self.run(depth + 1)? {
                return Ok(true);
            }
            self.map[x] = UNDEF;
            self.used[u] = false;
        }
        Ok(false)
    }
}

fn search(a: &Table, b: &Table, budget: u64) -> Result<Option<Vec<usize>>> {
    if a.n != b.n {
        return Ok(None);
    }
    let sig_a: Vec<[usize; 8]> = (0..a.n).map(|x| a.signature(x)).collect();
    let sig_b: Vec<[usize; 8]> = (0..b.n).map(|x| b.signature(x)).collect();
    let mut sa = sig_a.clone();
    let mut sb = sig_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..a.n).filter(|&x| a.is_projection(x)).collect();
    order.extend((0..a.n).filter(|&x| !a.is_projection(x)));
    let mut preimages = vec![Vec::new(); a.n];
    for x in 0..a.n {
        for y in 0..a.n {
            let z = a.get(x, y);
            if z != UNDEF {
                preimages[z as usize].push((x as u32, y as u32));
            }
        }
    }
    let mut s = Search {
        a,
        b,
        order,
        sig_a,
        sig_b,
        preimages,
        map: vec![UNDEF; a.n],
        used: vec![false; b.n],
        nodes: 0,
        budget,
    };
    Ok(s.run(0)?.then(|| s.map.iter().map(|&v| v as usize).collect()))
}

/// A bijection preserving `D`, definedness in both directions, and products.
pub fn constellation_isomorphic(p: &Constellation, q: &Constellation) -> Result<Option<Vec<usize>>> {
    constellation_isomorphic_with_budget(p, q, DEFAULT_SEARCH_BUDGET)
}

pub fn constellation_isomorphic_with_budget(
    p: &Constellation,
    q: &Constellation,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    search(&Table::from_constellation(p), &Table::from_constellation(q), budget)
}

/// A bijective (2,1)-morphism.
pub fn unary_isomorphic(a: &UnaryAlgebra, b: &UnaryAlgebra) -> Result<Option<Vec<usize>>> {
    unary_isomorphic_with_budget(a, b, DEFAULT_SEARCH_BUDGET)
}

pub fn unary_isomorphic_with_budget(a: &UnaryAlgebra, b: &UnaryAlgebra, budget: u64) -> Result<Option<Vec<usize>>> {
    search(&Table::from_unary(a), &Table::from_unary(b), budget)
}

pub fn semigroup_isomorphic(a: &Semigroup, b: &Semigroup) -> Result<Option<Vec<usize>>> {
    search(&Table::from_semigroup(a), &Table::from_semigroup(b), DEFAULT_SEARCH_BUDGET)
}

/// Checks a candidate constellation isomorphism.
pub fn verify_constellation_map(p: &Constellation, q: &Constellation, map: &[usize]) -> Result<()> {
    let fail = |m: String| Err(Error::NotIsomorphism(m));
    if map.len() != p.size() || p.size() != q.size() {
        return fail(format!("sizes {} and {} with a map of length {}", p.size(), q.size(), map.len()));
    }
    let mut seen = vec![false; q.size()];
    for (x, &y) in map.iter().enumerate() {
        if y >= q.size() || std::mem::replace(&mut seen[y], true) {
            return fail(format!("not injective at {}", p.label(x)));
        }
    }
    for x in 0..p.size() {
        if map[p.d(x)] != q.d(map[x]) {
            return fail(format!("D not preserved at {}", p.label(x)));
        }
        for y in 0..p.size() {
            match (p.compose(x, y), q.compose(map[x], map[y])) {
                (None, None) => {}
                (Some(z), Some(w)) if map[z] == w => {}
                _ => return fail(format!("product not preserved at ({}, {})", p.label(x), p.label(y))),
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::verify_unary_map;
    use crate::semigroup::build_table_monoid;
    use crate::unary::{make_unary, UnaryKind};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small5() -> Semigroup {
        let rows = vec![
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 2, 3, 4],
            vec![0, 2, 2, 0, 0],
            vec![4, 3, 4, 3, 4],
            vec![4, 4, 4, 4, 4],
        ];
        build_table_monoid(&rows, 1, None, None).unwrap().into_semigroup()
    }

    fn permuted(s: &Semigroup, perm: &[usize]) -> Semigroup {
        let n = s.size();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Semigroup::from_fn(n, |x, y| perm[s.mul(inv[x], inv[y])]).unwrap()
    }

    #[test]
    fn finds_a_relabelling() {
        let s = small5();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..5).collect();
            perm.shuffle(&mut rng);
            let t = permuted(&s, &perm);
            let map = semigroup_isomorphic(&s, &t).unwrap().unwrap();
            for x in 0..5 {
                for y in 0..5 {
                    assert_eq!(map[s.mul(x, y)], t.mul(map[x], map[y]));
                }
            }
        }
    }

    #[test]
    fn rejects_anti_isomorphic_only() {
        // the left-zero and right-zero semigroups on two points
        let l = Semigroup::from_fn(2, |x, _| x).unwrap();
        let r = Semigroup::from_fn(2, |_, y| y).unwrap();
        assert_eq!(semigroup_isomorphic(&l, &r).unwrap(), None);
        assert!(semigroup_isomorphic(&l, &l).unwrap().is_some());
    }

    #[test]
    fn unary_map_must_match() {
        let s = small5();
        let one = vec![1; 5];
        let a = make_unary(s.clone(), one.clone(), UnaryKind::Demigroup).unwrap();
        let map = unary_isomorphic(&a, &a).unwrap().unwrap();
        verify_unary_map(&a, &a, &map).unwrap();
    }

    #[test]
    fn budget_is_enforced() {
        // six isolated identities: every permutation is an automorphism
        let p = Constellation::from_fn(6, |x, y| (x == y).then_some(x), (0..6).collect(), None).unwrap();
        assert_eq!(
            constellation_isomorphic_with_budget(&p, &p, 1).unwrap_err(),
            Error::SearchBudgetExceeded(1)
        );
        assert!(constellation_isomorphic(&p, &p).unwrap().is_some());
    }
}
