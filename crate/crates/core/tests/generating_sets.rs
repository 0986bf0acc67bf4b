//! Exhaustive facts about small generating sets of Sub(GF(p)^3), checked by
//! brute force over every subset.

use std::sync::Arc;

use lattgen_core::lattice::{closure, min_genset, BaseLattice, ClosureOptions, FiniteLattice};

fn generates(l: &FiniteLattice, set: &[u32], size: usize) -> bool {
    let g: Vec<Vec<u32>> = set.iter().map(|&x| vec![x]).collect();
    closure(
        l,
        &g,
        ClosureOptions {
            cap: usize::MAX,
            witnesses: false,
        },
    )
    .unwrap()
    .len()
        == size
}

fn subsets(n: u32, k: usize, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, from: u32) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for x in from..n {
        cur.push(x);
        subsets(n, k, out, cur, x + 1);
        cur.pop();
    }
}

#[test]
fn four_element_generating_sets_are_points_and_lines() {
    for p in ["2", "3"] {
        let base = Arc::new(BaseLattice::subspaces(&p.parse().unwrap(), 3).unwrap());
        let l = FiniteLattice::base(base.clone());
        let n = base.size();
        let mut all = Vec::new();
        subsets(n as u32, 4, &mut all, &mut Vec::new(), 0);
        let mut found = 0;
        for s in &all {
            if generates(&l, s, n) {
                found += 1;
                assert!(
                    s.iter().all(|&x| matches!(base.height(x), 1 | 2)),
                    "GF({p}): {s:?}"
                );
            }
        }
        assert!(found > 0);
        let mut three = Vec::new();
        subsets(n as u32, 3, &mut three, &mut Vec::new(), 0);
        assert!(
            three.iter().all(|s| !generates(&l, s, n)),
            "GF({p}) is 3-generated"
        );
    }
}

#[test]
fn pruned_and_unpruned_searches_agree() {
    for p in ["2", "3"] {
        let base = BaseLattice::subspaces(&p.parse().unwrap(), 3).unwrap();
        let a = min_genset(&base, 5, true).unwrap();
        let b = min_genset(&base, 5, false).unwrap();
        assert_eq!(a.min, Some(4));
        assert_eq!(b.min, Some(4));
    }
}
