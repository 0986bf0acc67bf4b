//! Order-theoretic tools: antichains, power bounds, self-duality.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{BaseLattice, FiniteLattice, Lattice, LatticeError};

/// Largest poset handled by [`max_antichain`].
pub const POSET_CAP: usize = 5000;
/// Largest lattice for which `dual_check` searches for an anti-automorphism.
const DUAL_SEARCH_CAP: usize = 64;

/// A finite partial order on `0..n`, stored as a dense relation.
#[derive(Debug, Clone)]
pub struct Poset {
    n: usize,
    leq: Vec<Vec<u64>>,
}

impl Poset {
    /// `leq` must be a partial order.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Poset, LatticeError> {
        if n > POSET_CAP {
            return Err(LatticeError::TooLarge(format!(
                "poset of {n} elements (limit {POSET_CAP})"
            )));
        }
        let words = n.div_ceil(64).max(1);
        let mut rel = vec![vec![0u64; words]; n];
        for (a, row) in rel.iter_mut().enumerate() {
            for b in 0..n {
                if leq(a, b) {
                    row[b / 64] |= 1 << (b % 64);
                }
            }
        }
        Ok(Poset { n, leq: rel })
    }

    pub fn of_base(l: &BaseLattice) -> Result<Poset, LatticeError> {
        Self::from_leq(l.size(), |a, b| l.leq_idx(a as u32, b as u32))
    }

    pub fn of_lattice(l: &FiniteLattice) -> Result<Poset, LatticeError> {
        let n = l.size_u128().filter(|&s| s <= POSET_CAP as u128);
        let n = n
            .ok_or_else(|| LatticeError::TooLarge(format!("lattice of {} elements", l.size())))?
            as usize;
        let elems: Vec<Vec<u32>> = (0..n as u128).map(|i| l.element_at(i)).collect();
        Self::from_leq(n, |a, b| l.leq(&elems[a], &elems[b]))
    }

    /// The `k`-th direct power with the componentwise order.
    pub fn power(&self, k: usize) -> Result<Poset, LatticeError> {
        let size = (self.n as u128)
            .checked_pow(k as u32)
            .filter(|&s| s <= POSET_CAP as u128);
        let size = size.ok_or_else(|| LatticeError::TooLarge(format!("{}^{k} elements", self.n)))?
            as usize;
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % self.n;
                    x /= self.n;
                    d
                })
                .collect()
        };
        let all: Vec<Vec<usize>> = (0..size).map(digits).collect();
        Self::from_leq(size, |a, b| {
            all[a].iter().zip(&all[b]).all(|(&x, &y)| self.leq(x, y))
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b / 64] & (1 << (b % 64)) != 0
    }
}

/// Size of a largest antichain: `n` minus a maximum matching of the
/// bipartite graph `a -> b` for `a < b` (Dilworth via Fulkerson), matched by
/// Hopcroft-Karp.
pub fn max_antichain(p: &Poset) -> usize {
    let n = p.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| a != b && p.leq(a, b)).collect())
        .collect();
    n - hopcroft_karp(n, &adj)
}

fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> usize {
    const NIL: usize = usize::MAX;
    let mut match_l = vec![NIL; n];
    let mut match_r = vec![NIL; n];
    let mut dist = vec![0usize; n];
    let mut matching = 0;
    loop {
        // BFS from free left vertices
        let mut queue = std::collections::VecDeque::new();
        for u in 0..n {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return matching;
        }
        fn dfs(
            u: usize,
            adj: &[Vec<usize>],
            ml: &mut [usize],
            mr: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for &v in &adj[u] {
                let w = mr[v];
                if w == usize::MAX || (dist[w] == dist[u] + 1 && dfs(w, adj, ml, mr, dist)) {
                    ml[u] = v;
                    mr[v] = u;
                    return true;
                }
            }
            dist[u] = usize::MAX;
            false
        }
        for u in 0..n {
            if match_l[u] == NIL && dfs(u, adj, &mut match_l, &mut match_r, &mut dist) {
                matching += 1;
            }
        }
    }
}

/// Exhaustive largest antichain, for small posets only.
pub fn max_antichain_brute(p: &Poset) -> usize {
    let n = p.len();
    assert!(n <= 24, "brute force is exponential");
    let mut incomparable = vec![0u32; n];
    for (a, mask) in incomparable.iter_mut().enumerate() {
        for b in 0..n {
            if a != b && !p.leq(a, b) && !p.leq(b, a) {
                *mask |= 1 << b;
            }
        }
    }
    fn grow(cands: u32, size: usize, inc: &[u32], best: &mut usize) {
        if size + cands.count_ones() as usize <= *best {
            return;
        }
        if cands == 0 {
            *best = size;
            return;
        }
        let v = cands.trailing_zeros() as usize;
        grow(cands & inc[v], size + 1, inc, best);
        grow(cands & !(1 << v), size, inc, best);
    }
    let mut best = 0;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    grow(all, 0, &incomparable, &mut best);
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obs11 {
    /// `|L|^n`.
    pub coarse: BigUint,
    /// Width of `L^n` when it fits [`POSET_CAP`].
    pub exact: Option<usize>,
}

/// If `L^k` were generated by `n` elements, distinct factors would need
/// pairwise incomparable coordinate tuples in `L^n`; so `L^k` is not
/// `n`-generated once `k` exceeds the width of `L^n` (and a fortiori once it
/// exceeds `|L|^n`).
pub fn obs11_bound(p: &Poset, n: usize) -> Obs11 {
    let coarse = (0..n).fold(BigUint::one(), |acc, _| acc * p.len());
    let exact = coarse
        .to_usize()
        .filter(|&s| s <= POSET_CAP)
        .and_then(|_| p.power(n).ok())
        .map(|pn| max_antichain(&pn));
    Obs11 { coarse, exact }
}

/// Whether the lattice is isomorphic to its dual. Up to 64 elements an
/// order-reversing bijection is searched for directly; larger subspace
/// lattices are checked through the orthogonal complement map.
pub fn dual_check(l: &BaseLattice) -> Result<bool, LatticeError> {
    let n = l.size();
    if n <= DUAL_SEARCH_CAP {
        return Ok(search_antiautomorphism(l));
    }
    if !l.is_subspace_lattice() || !l.is_dense() {
        return Err(LatticeError::TooLarge(format!(
            "{n} elements (limit {DUAL_SEARCH_CAP})"
        )));
    }
    let perp: Option<Vec<u32>> = (0..n as u32)
        .map(|a| l.index_of(&l.subspace(a).unwrap().perp()))
        .collect();
    let perp =
        perp.ok_or_else(|| LatticeError::Precondition("complement left the lattice".into()))?;
    let mut hit = vec![false; n];
    for &p in &perp {
        if std::mem::replace(&mut hit[p as usize], true) {
            return Ok(false);
        }
    }
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if l.leq_idx(a, b) != l.leq_idx(perp[b as usize], perp[a as usize]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn search_antiautomorphism(l: &BaseLattice) -> bool {
    let n = l.size();
    let len = l.length();
    let down: Vec<usize> = (0..n as u32)
        .map(|a| (0..n as u32).filter(|&x| l.leq_idx(x, a)).count())
        .collect();
    let up: Vec<usize> = (0..n as u32)
        .map(|a| (0..n as u32).filter(|&x| l.leq_idx(a, x)).count())
        .collect();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by_key(|&a| l.height(a));
    let mut phi = vec![u32::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[u32],
        l: &BaseLattice,
        len: u32,
        down: &[usize],
        up: &[usize],
        phi: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(k) else { return true };
        for y in 0..l.size() as u32 {
            if used[y as usize]
                || l.height(y) + l.height(x) != len
                || down[x as usize] != up[y as usize]
            {
                continue;
            }
            let consistent = order[..k].iter().all(|&z| {
                let pz = phi[z as usize];
                l.leq_idx(z, x) == l.leq_idx(y, pz) && l.leq_idx(x, z) == l.leq_idx(pz, y)
            });
            if !consistent {
                continue;
            }
            phi[x as usize] = y;
            used[y as usize] = true;
            if go(k + 1, order, l, len, down, up, phi, used) {
                return true;
            }
            used[y as usize] = false;
        }
        false
    }
    go(0, &order, l, len, &down, &up, &mut phi, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn chains_and_m3() {
        let c2 = Poset::of_base(&BaseLattice::chain(2)).unwrap();
        assert_eq!(max_antichain(&c2), 1);
        let m3 = BaseLattice::from_leq(
            ["0", "a", "b", "c", "1"].map(String::from).to_vec(),
            |x, y| x == y || x == 0 || y == 4,
        )
        .unwrap();
        assert_eq!(max_antichain(&Poset::of_base(&m3).unwrap()), 3);
    }

    #[test]
    fn fano_width_is_seven() {
        let l = BaseLattice::subspaces(&Field::prime(2).unwrap(), 3).unwrap();
        let p = Poset::of_base(&l).unwrap();
        assert_eq!(max_antichain(&p), 7);
        assert_eq!(max_antichain_brute(&p), 7);
    }

    #[test]
    fn obs11_examples() {
        let fano = BaseLattice::subspaces(&Field::prime(2).unwrap(), 3).unwrap();
        let p = Poset::of_base(&fano).unwrap();
        assert_eq!(obs11_bound(&p, 1).coarse, BigUint::from(16u32));
        let two = Poset::of_base(&BaseLattice::chain(2)).unwrap();
        let o = obs11_bound(&two, 2);
        assert_eq!(o.coarse, BigUint::from(4u32));
        assert_eq!(o.exact, Some(2));
        assert_eq!(obs11_bound(&p, 4).exact, None);
    }

    #[test]
    fn self_duality() {
        let f2 = Field::prime(2).unwrap();
        assert!(dual_check(&BaseLattice::subspaces(&f2, 3).unwrap()).unwrap());
        assert!(dual_check(&BaseLattice::chain(3)).unwrap());
        assert!(dual_check(&BaseLattice::subspaces(&f2, 4).unwrap()).unwrap());
        // two atoms under a single coatom: the bottom has two covers, the top one
        let bent = BaseLattice::from_leq(
            ["0", "a", "b", "x", "1"].map(String::from).to_vec(),
            |u, v| u == v || matches!((u, v), (0, _) | (_, 4) | (1, 3) | (2, 3)),
        )
        .unwrap();
        assert!(!dual_check(&bent).unwrap());
    }
}
