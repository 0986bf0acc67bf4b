//! Sublattice closure by worklist fixpoint.

use std::collections::{HashMap, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

use super::{BaseLattice, FiniteLattice, LatticeError, LatticeTerm};

pub const DEFAULT_CAP: usize = 200_000;

/// Packed keys up to this many bits use a flat bitmap instead of a hash set.
const BITMAP_BITS: u32 = 26;

#[derive(Debug, Clone, Copy)]
pub struct ClosureOptions {
    pub cap: usize,
    pub witnesses: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            cap: DEFAULT_CAP,
            witnesses: false,
        }
    }
}

/// How an element first entered the closure; indices refer to earlier
/// positions in [`ClosureResult::elements`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Generator(usize),
    Meet(u32, u32),
    Join(u32, u32),
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    /// Elements in discovery order; generators first.
    pub elements: Vec<Vec<u32>>,
    pub witnesses: Option<Vec<Witness>>,
    pub reached_full: bool,
    pub missing_example: Option<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

impl ClosureResult {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.index.contains_key(e)
    }

    pub fn position(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    /// Witness terms for all elements, sharing common subterms.
    pub fn witness_terms(&self) -> Option<Vec<LatticeTerm>> {
        let ws = self.witnesses.as_ref()?;
        let mut terms: Vec<LatticeTerm> = Vec::with_capacity(ws.len());
        for w in ws {
            let t = match *w {
                Witness::Generator(g) => LatticeTerm::var(g),
                Witness::Meet(i, j) => terms[i as usize].meet(&terms[j as usize]),
                Witness::Join(i, j) => terms[i as usize].join(&terms[j as usize]),
            };
            terms.push(t);
        }
        Some(terms)
    }

    pub fn witness_term(&self, e: &[u32]) -> Option<LatticeTerm> {
        let pos = self.position(e)?;
        self.witness_terms().map(|mut ts| ts.swap_remove(pos))
    }
}

#[derive(Default)]
struct PackedHasher(u64);

impl Hasher for PackedHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }

    fn write_u128(&mut self, v: u128) {
        let x = (v as u64) ^ ((v >> 64) as u64).rotate_left(29);
        self.0 = x.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }

    fn finish(&self) -> u64 {
        self.0 ^ (self.0 >> 31)
    }
}

enum Seen {
    Bitmap(Vec<u64>),
    Set(HashSet<u128, BuildHasherDefault<PackedHasher>>),
}

impl Seen {
    fn new(total_bits: u32) -> Self {
        if total_bits <= BITMAP_BITS {
            Seen::Bitmap(vec![0; (1usize << total_bits).div_ceil(64)])
        } else {
            Seen::Set(HashSet::default())
        }
    }

    /// Returns true if `k` was not present.
    #[inline]
    fn insert(&mut self, k: u128) -> bool {
        match self {
            Seen::Bitmap(bits) => {
                let (w, b) = ((k >> 6) as usize, k & 63);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                fresh
            }
            Seen::Set(s) => s.insert(k),
        }
    }
}

struct Layout {
    shifts: Vec<u32>,
    masks: Vec<u128>,
    total_bits: u32,
}

impl Layout {
    fn new(l: &FiniteLattice) -> Result<Self, LatticeError> {
        let mut shifts = Vec::new();
        let mut masks = Vec::new();
        let mut total = 0u32;
        for b in l.factors() {
            let bits = (usize::BITS - (b.size() - 1).leading_zeros()).max(1);
            shifts.push(total);
            masks.push((1u128 << bits) - 1);
            total += bits;
        }
        if total > 128 {
            return Err(LatticeError::TooLarge(format!(
                "{total} bits per packed element"
            )));
        }
        Ok(Layout {
            shifts,
            masks,
            total_bits: total,
        })
    }

    fn pack(&self, e: &[u32]) -> u128 {
        e.iter()
            .zip(&self.shifts)
            .fold(0u128, |acc, (&x, &s)| acc | (x as u128) << s)
    }

    fn unpack(&self, k: u128) -> Vec<u32> {
        self.shifts
            .iter()
            .zip(&self.masks)
            .map(|(&s, &m)| ((k >> s) & m) as u32)
            .collect()
    }
}

/// Least sublattice of `l` containing `gens`. Each newly discovered element
/// is combined by meet and join with every element found before it; the
/// search stops as soon as the whole lattice is reached.
pub fn closure(
    l: &FiniteLattice,
    gens: &[Vec<u32>],
    opts: ClosureOptions,
) -> Result<ClosureResult, LatticeError> {
    if gens.is_empty() {
        return Err(LatticeError::Precondition(
            "closure needs at least one generator".into(),
        ));
    }
    for g in gens {
        if !l.is_element(g) {
            return Err(LatticeError::NotAnElement(format!("{g:?}")));
        }
    }
    let layout = Layout::new(l)?;
    let full = l.size_u128();
    #[allow(clippy::type_complexity)]
    let dense: Option<Vec<(u32, u128, usize, &[u16], &[u16])>> = l
        .factors()
        .iter()
        .zip(layout.shifts.iter().zip(&layout.masks))
        .map(|(b, (&s, &m))| Some((s, m, b.size(), b.meet_table()?, b.join_table()?)))
        .collect();

    let (packed, wits) = match &dense {
        Some(tabs) => {
            let op = |x: u128, y: u128, meet: bool| -> u128 {
                let mut z = 0u128;
                for &(s, m, n, mt, jt) in tabs {
                    let a = ((x >> s) & m) as usize;
                    let b = ((y >> s) & m) as usize;
                    let t = if meet { mt } else { jt };
                    z |= (t[a * n + b] as u128) << s;
                }
                z
            };
            fixpoint(&layout, gens, full, opts, op)?
        }
        None => {
            let op = |x: u128, y: u128, meet: bool| -> u128 {
                let (a, b) = (layout.unpack(x), layout.unpack(y));
                let z: Vec<u32> = l
                    .factors()
                    .iter()
                    .zip(a.iter().zip(&b))
                    .map(|(f, (&p, &q))| {
                        if meet {
                            f.meet_idx(p, q)
                        } else {
                            f.join_idx(p, q)
                        }
                    })
                    .collect();
                layout.pack(&z)
            };
            fixpoint(&layout, gens, full, opts, op)?
        }
    };

    let elements: Vec<Vec<u32>> = packed.iter().map(|&k| layout.unpack(k)).collect();
    let index: HashMap<Vec<u32>, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i as u32))
        .collect();
    let reached_full = full == Some(elements.len() as u128);
    let missing_example = if reached_full {
        None
    } else {
        (0u128..)
            .map(|i| l.element_at(i))
            .find(|e| !index.contains_key(e))
    };
    Ok(ClosureResult {
        elements,
        witnesses: opts.witnesses.then_some(wits),
        reached_full,
        missing_example,
        index,
    })
}

fn fixpoint(
    layout: &Layout,
    gens: &[Vec<u32>],
    full: Option<u128>,
    opts: ClosureOptions,
    op: impl Fn(u128, u128, bool) -> u128,
) -> Result<(Vec<u128>, Vec<Witness>), LatticeError> {
    let mut seen = Seen::new(layout.total_bits);
    let mut elems: Vec<u128> = Vec::new();
    let mut wits: Vec<Witness> = Vec::new();
    let full = full.map_or(usize::MAX, |f| usize::try_from(f).unwrap_or(usize::MAX));
    for (gi, g) in gens.iter().enumerate() {
        let k = layout.pack(g);
        if seen.insert(k) {
            elems.push(k);
            wits.push(Witness::Generator(gi));
        }
    }
    let mut i = 0;
    'outer: while i < elems.len() && elems.len() < full {
        let x = elems[i];
        for j in 0..i {
            let y = elems[j];
            for meet in [true, false] {
                let z = op(x, y, meet);
                if seen.insert(z) {
                    elems.push(z);
                    if opts.witnesses {
                        let w = if meet {
                            Witness::Meet(i as u32, j as u32)
                        } else {
                            Witness::Join(i as u32, j as u32)
                        };
                        wits.push(w);
                    }
                    if elems.len() > opts.cap {
                        return Err(LatticeError::CapExceeded { cap: opts.cap });
                    }
                    if elems.len() == full {
                        break 'outer;
                    }
                }
            }
        }
        i += 1;
    }
    Ok((elems, wits))
}

/// Closure inside a single base lattice; returns the elements in discovery
/// order.
pub fn closure_base(l: &BaseLattice, gens: &[u32]) -> Vec<u32> {
    let n = l.size();
    let mut seen = vec![false; n];
    let mut elems = Vec::with_capacity(n);
    for &g in gens {
        if !seen[g as usize] {
            seen[g as usize] = true;
            elems.push(g);
        }
    }
    let mut i = 0;
    while i < elems.len() && elems.len() < n {
        let x = elems[i];
        for j in 0..i {
            let y = elems[j];
            for z in [l.meet_idx(x, y), l.join_idx(x, y)] {
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    elems.push(z);
                }
            }
        }
        i += 1;
    }
    elems
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Field;
    use crate::lattice::Lattice;

    fn fano() -> Arc<BaseLattice> {
        Arc::new(BaseLattice::subspaces(&Field::prime(2).unwrap(), 3).unwrap())
    }

    /// Naive oracle: iterate "add all pairwise meets and joins" to a fixpoint.
    fn naive(l: &FiniteLattice, gens: &[Vec<u32>]) -> HashSet<Vec<u32>> {
        let mut s: HashSet<Vec<u32>> = gens.iter().cloned().collect();
        loop {
            let cur: Vec<_> = s.iter().cloned().collect();
            let before = s.len();
            for a in &cur {
                for b in &cur {
                    s.insert(l.meet(a, b));
                    s.insert(l.join(a, b));
                }
            }
            if s.len() == before {
                return s;
            }
        }
    }

    #[test]
    fn bounds_are_closed() {
        let l = FiniteLattice::base(fano());
        let r = closure(&l, &[l.bottom(), l.top()], ClosureOptions::default()).unwrap();
        assert_eq!(r.len(), 2);
        assert!(!r.reached_full);
        assert!(r.missing_example.is_some());
    }

    #[test]
    fn quadrangle_generates_fano() {
        let b = fano();
        let l = FiniteLattice::base(b.clone());
        let f = b.field().unwrap().clone();
        let find = |v: [i64; 3]| {
            let s = crate::linalg::Subspace::point(&f, v.iter().map(|&x| f.from_i64(x)).collect())
                .unwrap();
            vec![b.index_of(&s).unwrap()]
        };
        let quad = vec![
            find([1, 0, 0]),
            find([0, 1, 0]),
            find([0, 0, 1]),
            find([1, 1, 1]),
        ];
        let r = closure(
            &l,
            &quad,
            ClosureOptions {
                witnesses: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.reached_full);
        assert_eq!(r.len(), 16);
        let terms = r.witness_terms().unwrap();
        let env = HashMap::new();
        for (e, t) in r.elements.iter().zip(&terms) {
            assert_eq!(&t.eval(&l, &quad, &env).unwrap(), e);
        }
    }

    #[test]
    fn agrees_with_naive_oracle() {
        let l = FiniteLattice::power(fano(), 2);
        let gens = vec![vec![1, 1], vec![2, 3], vec![9, 4]];
        let r = closure(&l, &gens, ClosureOptions::default()).unwrap();
        let set: HashSet<Vec<u32>> = r.elements.iter().cloned().collect();
        assert_eq!(set, naive(&l, &gens));
    }

    #[test]
    fn cap_is_enforced() {
        let b = fano();
        let l = FiniteLattice::power(b.clone(), 2);
        let gens: Vec<Vec<u32>> = (0..16).map(|i| vec![i, 15 - i]).collect();
        let r = closure(
            &l,
            &gens,
            ClosureOptions {
                cap: 20,
                witnesses: false,
            },
        );
        assert_eq!(r.unwrap_err(), LatticeError::CapExceeded { cap: 20 });
    }

    #[test]
    fn base_closure_matches_product_closure() {
        let b = fano();
        let l = FiniteLattice::base(b.clone());
        let gens = [3u32, 5, 12];
        let a: HashSet<u32> = closure_base(&b, &gens).into_iter().collect();
        let r = closure(&l, &gens.map(|g| vec![g]), ClosureOptions::default()).unwrap();
        let c: HashSet<u32> = r.elements.iter().map(|e| e[0]).collect();
        assert_eq!(a, c);
    }
}
