//! Exhaustive search for minimum generating sets.

use super::{closure_base, BaseLattice, LatticeError};
use crate::linalg::combinations;

/// `min_genset` refuses lattices larger than this.
pub const MIN_GENSET_GUARD: usize = 512;
/// Upper limit on the number of candidate subsets examined.
const SUBSET_BUDGET: u128 = 2_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinGenset {
    /// `None` when no generating set of at most `max_size` elements exists.
    pub min: Option<usize>,
    pub example: Vec<u32>,
    pub max_size: usize,
    /// Subsets whose closure was computed.
    pub closures_computed: u64,
    /// Subsets skipped by the admissibility filter.
    pub pruned: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Whether the D2 necessary condition applies: subspace lattices are
/// subdirectly irreducible and modular.
fn d2_applies(l: &BaseLattice) -> bool {
    l.is_subspace_lattice() && l.size() > 2
}

/// Admissibility of a candidate generating tuple of a subspace lattice with
/// more than two elements. A generating tuple satisfies
/// `e_0 v ... v e_{i-1} >= e_i ^ ... ^ e_t` for every ordering and every
/// split point, i.e. `join(P) >= meet(Q)` for every partition of the
/// candidate into nonempty `P` and `Q`; a candidate violating this for some
/// partition is rejected. When every inequality holds, at most three
/// elements generate a sublattice of at most five elements (all pairwise
/// meets and joins coincide), so such candidates are rejected as well once
/// the lattice is larger.
pub fn d2_filter(l: &BaseLattice, candidate: &[u32]) -> bool {
    let k = candidate.len();
    assert!(k < 32, "candidate too long");
    for mask in 1u32..(1 << k) - 1 {
        let mut join = l.bottom_idx();
        let mut meet = l.top_idx();
        for (pos, &e) in candidate.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                join = l.join_idx(join, e);
            } else {
                meet = l.meet_idx(meet, e);
            }
        }
        if !l.leq_idx(meet, join) {
            return false;
        }
    }
    !(k <= 3 && l.size() > 5)
}

/// Least size of a generating set, by exhaustive search over subsets of
/// increasing size.
///
/// With `prune`, subsets containing the bottom (when there are two or more
/// atoms) or the top (when there are two or more coatoms) are skipped: the
/// remaining elements already produce it. On subspace lattices, subsets
/// failing [`d2_filter`] are skipped too. Without `prune` every subset is
/// closed.
pub fn min_genset(
    l: &BaseLattice,
    max_size: usize,
    prune: bool,
) -> Result<MinGenset, LatticeError> {
    let n = l.size();
    if n > MIN_GENSET_GUARD {
        return Err(LatticeError::TooLarge(format!(
            "{n} elements (limit {MIN_GENSET_GUARD})"
        )));
    }
    let pool: Vec<u32> = if prune {
        let skip_bottom = l.atoms().len() >= 2;
        let skip_top = l.coatoms().len() >= 2;
        (0..n as u32)
            .filter(|&x| !(skip_bottom && x == l.bottom_idx()) && !(skip_top && x == l.top_idx()))
            .collect()
    } else {
        (0..n as u32).collect()
    };
    let use_d2 = prune && d2_applies(l);
    let mut out = MinGenset {
        min: None,
        example: vec![],
        max_size,
        closures_computed: 0,
        pruned: 0,
    };
    for k in 1..=max_size.min(pool.len()) {
        if binomial(pool.len(), k) > SUBSET_BUDGET {
            return Err(LatticeError::SearchCapExceeded(format!(
                "C({}, {k}) subsets",
                pool.len()
            )));
        }
        for combo in combinations(pool.len(), k) {
            let cand: Vec<u32> = combo.iter().map(|&i| pool[i]).collect();
            if use_d2 && !d2_filter(l, &cand) {
                out.pruned += 1;
                continue;
            }
            out.closures_computed += 1;
            if closure_base(l, &cand).len() == n {
                out.min = Some(k);
                out.example = cand;
                return Ok(out);
            }
        }
    }
    Ok(out)
}
