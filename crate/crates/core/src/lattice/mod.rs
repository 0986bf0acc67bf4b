//! Finite lattices: subspace lattices, explicit tables, and direct products.
//!
//! A [`BaseLattice`] has dense `u32` element indices and, up to a few
//! thousand elements, precomputed meet/join tables. A [`FiniteLattice`] is a
//! direct product of base lattices whose elements are index tuples; it never
//! materializes its element set. [`SubspaceAlgebra`] works on subspaces
//! directly and is what term evaluation over the rationals uses.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::{all_subspaces, LinalgError, Subspace};

mod closure;
mod order;
mod search;
mod term;
mod verify;

pub use closure::{closure, closure_base, ClosureOptions, ClosureResult, Witness, DEFAULT_CAP};
pub use order::{
    dual_check, max_antichain, max_antichain_brute, obs11_bound, Obs11, Poset, POSET_CAP,
};
pub use search::{d2_filter, min_genset, MinGenset, MIN_GENSET_GUARD};
pub use term::{LatticeTerm, TermNode};
pub use verify::{
    project, verify_generates, DeltaCell, Factor, FactorStatus, ProductInstance, Verdict,
    VerifyMode, VerifyOptions, VerifyReport,
};

/// Largest subspace lattice that gets enumerated at all.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;
/// Largest base lattice with precomputed meet/join tables.
pub const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice too large: {0}")]
    TooLarge(String),
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("search space exceeded: {0}")]
    SearchCapExceeded(String),
    #[error("term needs {want} variables, got {got}")]
    ArityMismatch { want: usize, got: usize },
    #[error("constant {0:?} is not bound")]
    UnboundConstant(String),
    #[error("not an element of the lattice: {0}")]
    NotAnElement(String),
    #[error("the given order is not a lattice: {0}")]
    NotALattice(String),
    #[error("cannot enumerate an infinite lattice")]
    Infinite,
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The operations term evaluation and the generic algorithms need.
pub trait Lattice {
    type Element: Clone + Eq + Hash + fmt::Debug;

    fn meet(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn join(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn bottom(&self) -> Self::Element;
    fn top(&self) -> Self::Element;

    fn leq(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.meet(a, b) == *a
    }
}

/// Number of subspaces of `F_q^d`, or `None` on overflow.
pub fn subspace_count(q: u64, d: u32) -> Option<u128> {
    let q = q as u128;
    let mut total: u128 = 1; // rank 0
    let mut cur: u128 = 1;
    for r in 0..d {
        // [d, r+1] = [d, r] * (q^(d-r) - 1) / (q^(r+1) - 1), exact at each step
        let num = q.checked_pow(d - r)? - 1;
        let den = q.checked_pow(r + 1)? - 1;
        cur = cur.checked_mul(num)? / den;
        total = total.checked_add(cur)?;
    }
    Some(total)
}

#[derive(Debug)]
struct SubspaceData {
    field: Field,
    dim: usize,
    elems: Vec<Subspace>,
    index: HashMap<Subspace, u32>,
}

#[derive(Debug)]
enum Ops {
    Dense {
        meet: Vec<u16>,
        join: Vec<u16>,
    },
    /// Subspace lattices too large for tables: meet and join by linear algebra.
    Lazy,
}

/// A finite lattice with elements `0..size`.
#[derive(Debug)]
pub struct BaseLattice {
    size: usize,
    ops: Ops,
    bottom: u32,
    top: u32,
    heights: Vec<u32>,
    labels: Vec<String>,
    subspaces: Option<SubspaceData>,
}

impl BaseLattice {
    /// `Sub(F^d)` with elements in rank-major canonical order.
    pub fn subspaces(field: &Field, d: usize) -> Result<BaseLattice, LatticeError> {
        let q = field.order().ok_or(LatticeError::Infinite)?;
        let count = subspace_count(q, d as u32).filter(|&c| c <= ENUMERATION_LIMIT);
        if count.is_none() {
            return Err(LatticeError::TooLarge(format!(
                "Sub(GF({q})^{d}) has more than {ENUMERATION_LIMIT} elements"
            )));
        }
        let elems = all_subspaces(field, d)?;
        let n = elems.len();
        let index: HashMap<Subspace, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let ops = if n <= DENSE_LIMIT && (q as u128).pow(d as u32) <= 1 << 16 {
            Self::subspace_tables(field, d, &elems, &index)?
        } else {
            Ops::Lazy
        };
        Ok(BaseLattice {
            size: n,
            ops,
            bottom: 0,
            top: (n - 1) as u32,
            heights: elems.iter().map(|s| s.rank() as u32).collect(),
            labels: elems.iter().map(|s| s.short()).collect(),
            subspaces: Some(SubspaceData {
                field: field.clone(),
                dim: d,
                elems,
                index,
            }),
        })
    }

    /// Meets as intersections of vector sets; joins through the orthogonal
    /// complement, which reverses the order.
    fn subspace_tables(
        field: &Field,
        d: usize,
        elems: &[Subspace],
        index: &HashMap<Subspace, u32>,
    ) -> Result<Ops, LatticeError> {
        let q = field.order().unwrap() as usize;
        let nbits = q.pow(d as u32);
        let words = nbits.div_ceil(64);
        let code = |v: &[crate::field::Scalar]| -> usize {
            v.iter().rev().fold(0usize, |acc, x| match x {
                crate::field::Scalar::Fin(c) => acc * q + *c as usize,
                crate::field::Scalar::Rat(_) => unreachable!("finite field"),
            })
        };
        let sets: Vec<Vec<u64>> = elems
            .par_iter()
            .map(|s| {
                let mut bits = vec![0u64; words];
                for v in s.vectors().expect("finite field") {
                    let c = code(&v);
                    bits[c / 64] |= 1 << (c % 64);
                }
                bits
            })
            .collect();
        let by_set: HashMap<&[u64], u32> = sets
            .iter()
            .enumerate()
            .map(|(i, b)| (b.as_slice(), i as u32))
            .collect();
        let n = elems.len();
        let meet: Vec<u16> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let sets = &sets;
                let by_set = &by_set;
                (0..n).map(move |b| {
                    let inter: Vec<u64> =
                        sets[a].iter().zip(&sets[b]).map(|(x, y)| x & y).collect();
                    by_set[inter.as_slice()] as u16
                })
            })
            .collect();
        let perp: Vec<usize> = elems.iter().map(|s| index[&s.perp()] as usize).collect();
        let mut join = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = perp[meet[perp[a] * n + perp[b]] as usize] as u16;
            }
        }
        Ok(Ops::Dense { meet, join })
    }

    /// A lattice given by its order relation on `0..labels.len()`.
    pub fn from_leq(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<BaseLattice, LatticeError> {
        let n = labels.len();
        if n == 0 || n > DENSE_LIMIT {
            return Err(LatticeError::NotALattice(format!("{n} elements")));
        }
        let le: Vec<Vec<bool>> = (0..n)
            .map(|a| (0..n).map(|b| leq(a, b)).collect())
            .collect();
        let bound = |a: usize, b: usize, lower: bool| -> Result<u16, LatticeError> {
            let cands: Vec<usize> = (0..n)
                .filter(|&x| {
                    if lower {
                        le[x][a] && le[x][b]
                    } else {
                        le[a][x] && le[b][x]
                    }
                })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&x| {
                    cands
                        .iter()
                        .all(|&y| if lower { le[y][x] } else { le[x][y] })
                })
                .map(|x| x as u16)
                .ok_or_else(|| {
                    LatticeError::NotALattice(format!(
                        "{} and {} have no {}",
                        labels[a],
                        labels[b],
                        if lower { "meet" } else { "join" }
                    ))
                })
        };
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = bound(a, b, true)?;
                join[a * n + b] = bound(a, b, false)?;
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| le[x][y])).unwrap() as u32;
        let top = (0..n).find(|&x| (0..n).all(|y| le[y][x])).unwrap() as u32;
        // longest chain from the bottom; process elements by number of elements below
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| le[y][x]).count());
        let mut heights = vec![0u32; n];
        for &x in &order {
            heights[x] = (0..n)
                .filter(|&y| y != x && le[y][x])
                .map(|y| heights[y] + 1)
                .max()
                .unwrap_or(0);
        }
        Ok(BaseLattice {
            size: n,
            ops: Ops::Dense { meet, join },
            bottom,
            top,
            heights,
            labels,
            subspaces: None,
        })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> BaseLattice {
        Self::from_leq((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b)
            .expect("chains are lattices")
    }

    /// Replaces the display labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> BaseLattice {
        assert_eq!(labels.len(), self.size);
        self.labels = labels;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.ops, Ops::Dense { .. })
    }

    /// Meet table (row-major) when precomputed.
    pub fn meet_table(&self) -> Option<&[u16]> {
        match &self.ops {
            Ops::Dense { meet, .. } => Some(meet),
            Ops::Lazy => None,
        }
    }

    pub fn join_table(&self) -> Option<&[u16]> {
        match &self.ops {
            Ops::Dense { join, .. } => Some(join),
            Ops::Lazy => None,
        }
    }

    #[inline]
    pub fn meet_idx(&self, a: u32, b: u32) -> u32 {
        match &self.ops {
            Ops::Dense { meet, .. } => meet[a as usize * self.size + b as usize] as u32,
            Ops::Lazy => {
                let sd = self.subspaces.as_ref().unwrap();
                sd.index[&sd.elems[a as usize].meet_unchecked(&sd.elems[b as usize])]
            }
        }
    }

    #[inline]
    pub fn join_idx(&self, a: u32, b: u32) -> u32 {
        match &self.ops {
            Ops::Dense { join, .. } => join[a as usize * self.size + b as usize] as u32,
            Ops::Lazy => {
                let sd = self.subspaces.as_ref().unwrap();
                sd.index[&sd.elems[a as usize].join_unchecked(&sd.elems[b as usize])]
            }
        }
    }

    pub fn leq_idx(&self, a: u32, b: u32) -> bool {
        self.meet_idx(a, b) == a
    }

    pub fn bottom_idx(&self) -> u32 {
        self.bottom
    }

    pub fn top_idx(&self) -> u32 {
        self.top
    }

    pub fn height(&self, a: u32) -> u32 {
        self.heights[a as usize]
    }

    pub fn length(&self) -> u32 {
        self.heights[self.top as usize]
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    pub fn elements_of_height(&self, h: u32) -> Vec<u32> {
        (0..self.size as u32)
            .filter(|&a| self.heights[a as usize] == h)
            .collect()
    }

    pub fn atoms(&self) -> Vec<u32> {
        let b = self.bottom;
        (0..self.size as u32)
            .filter(|&a| {
                a != b && (0..self.size as u32).all(|x| x == b || x == a || !self.leq_idx(x, a))
            })
            .collect()
    }

    pub fn coatoms(&self) -> Vec<u32> {
        let t = self.top;
        (0..self.size as u32)
            .filter(|&a| {
                a != t && (0..self.size as u32).all(|x| x == t || x == a || !self.leq_idx(a, x))
            })
            .collect()
    }

    pub fn is_subspace_lattice(&self) -> bool {
        self.subspaces.is_some()
    }

    pub fn field(&self) -> Option<&Field> {
        self.subspaces.as_ref().map(|s| &s.field)
    }

    pub fn dim(&self) -> Option<usize> {
        self.subspaces.as_ref().map(|s| s.dim)
    }

    pub fn subspace(&self, a: u32) -> Option<&Subspace> {
        self.subspaces.as_ref().map(|s| &s.elems[a as usize])
    }

    pub fn index_of(&self, s: &Subspace) -> Option<u32> {
        self.subspaces
            .as_ref()
            .and_then(|d| d.index.get(s).copied())
    }

    /// Accepts a label string or (for subspace lattices) a subspace encoding.
    pub fn element_from_json(&self, v: &Value) -> Result<u32, LatticeError> {
        if let Value::String(s) = v {
            return self
                .index_of_label(s)
                .ok_or_else(|| LatticeError::NotAnElement(s.clone()));
        }
        let sd = self
            .subspaces
            .as_ref()
            .ok_or_else(|| LatticeError::NotAnElement(v.to_string()))?;
        let s = Subspace::from_json(&sd.field, sd.dim, v)?;
        Ok(sd.index[&s])
    }

    pub fn element_to_json(&self, a: u32) -> Value {
        match &self.subspaces {
            Some(sd) => sd.elems[a as usize].to_json(),
            None => Value::String(self.labels[a as usize].clone()),
        }
    }
}

impl Lattice for BaseLattice {
    type Element = u32;

    fn meet(&self, a: &u32, b: &u32) -> u32 {
        self.meet_idx(*a, *b)
    }

    fn join(&self, a: &u32, b: &u32) -> u32 {
        self.join_idx(*a, *b)
    }

    fn bottom(&self) -> u32 {
        self.bottom
    }

    fn top(&self) -> u32 {
        self.top
    }
}

/// Parsed lattice spec: `sub:<field>:<d>`, `pow:<inner>:<k>`,
/// `prod:<inner>,<inner>,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    Sub { field: Field, dim: usize },
    Pow(Box<LatticeSpec>, usize),
    Prod(Vec<LatticeSpec>),
}

impl LatticeSpec {
    /// The base factors in order, with powers expanded.
    pub fn leaves(&self) -> Vec<(Field, usize)> {
        match self {
            LatticeSpec::Sub { field, dim } => vec![(field.clone(), *dim)],
            LatticeSpec::Pow(inner, k) => {
                let l = inner.leaves();
                (0..*k).flat_map(|_| l.clone()).collect()
            }
            LatticeSpec::Prod(parts) => parts.iter().flat_map(|p| p.leaves()).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.leaves().iter().all(|(f, _)| f.is_finite())
    }
}

impl FromStr for LatticeSpec {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |why: &str| LatticeError::Parse(format!("bad lattice spec {s:?}: {why}"));
        if let Some(rest) = s.strip_prefix("sub:") {
            let (f, d) = rest
                .rsplit_once(':')
                .ok_or_else(|| bad("expected sub:<field>:<d>"))?;
            let dim: usize = d
                .parse()
                .map_err(|_| bad("dimension must be a positive integer"))?;
            if dim == 0 {
                return Err(bad("dimension must be a positive integer"));
            }
            return Ok(LatticeSpec::Sub {
                field: f.parse()?,
                dim,
            });
        }
        if let Some(rest) = s.strip_prefix("pow:") {
            let (inner, k) = rest
                .rsplit_once(':')
                .ok_or_else(|| bad("expected pow:<inner>:<k>"))?;
            let k: usize = k
                .parse()
                .map_err(|_| bad("exponent must be a positive integer"))?;
            if k == 0 {
                return Err(bad("exponent must be a positive integer"));
            }
            return Ok(LatticeSpec::Pow(Box::new(inner.parse()?), k));
        }
        if let Some(rest) = s.strip_prefix("prod:") {
            // commas also separate modulus coefficients, so split only where a
            // new factor spec starts
            let mut parts = Vec::new();
            let mut start = 0;
            for (i, _) in rest.match_indices(',') {
                let tail = &rest[i + 1..];
                if ["sub:", "pow:", "prod:"]
                    .iter()
                    .any(|p| tail.starts_with(p))
                {
                    parts.push(&rest[start..i]);
                    start = i + 1;
                }
            }
            parts.push(&rest[start..]);
            let parts = parts
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(LatticeSpec::Prod(parts));
        }
        Err(bad("expected sub:, pow: or prod:"))
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeSpec::Sub { field, dim } => write!(f, "sub:{field}:{dim}"),
            LatticeSpec::Pow(inner, k) => write!(f, "pow:{inner}:{k}"),
            LatticeSpec::Prod(parts) => {
                let ps: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "prod:{}", ps.join(","))
            }
        }
    }
}

/// A direct product of base lattices (a single factor is the base lattice
/// itself). Elements are per-factor index tuples.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    leaves: Vec<Arc<BaseLattice>>,
}

impl FiniteLattice {
    pub fn base(b: Arc<BaseLattice>) -> Self {
        FiniteLattice { leaves: vec![b] }
    }

    pub fn power(b: Arc<BaseLattice>, k: usize) -> Self {
        FiniteLattice { leaves: vec![b; k] }
    }

    pub fn product(factors: Vec<FiniteLattice>) -> Self {
        FiniteLattice {
            leaves: factors.into_iter().flat_map(|f| f.leaves).collect(),
        }
    }

    /// Builds every factor; equal factors share one base lattice.
    pub fn from_spec(spec: &LatticeSpec) -> Result<Self, LatticeError> {
        let mut cache: HashMap<(Field, usize), Arc<BaseLattice>> = HashMap::new();
        let mut leaves = Vec::new();
        for (f, d) in spec.leaves() {
            let b = match cache.get(&(f.clone(), d)) {
                Some(b) => b.clone(),
                None => {
                    let b = Arc::new(BaseLattice::subspaces(&f, d)?);
                    cache.insert((f, d), b.clone());
                    b
                }
            };
            leaves.push(b);
        }
        Ok(FiniteLattice { leaves })
    }

    pub fn parse(spec: &str) -> Result<Self, LatticeError> {
        Self::from_spec(&spec.parse()?)
    }

    pub fn factors(&self) -> &[Arc<BaseLattice>] {
        &self.leaves
    }

    pub fn factor_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn size(&self) -> BigUint {
        self.leaves
            .iter()
            .fold(BigUint::one(), |acc, b| acc * b.size())
    }

    pub fn size_u128(&self) -> Option<u128> {
        self.size().to_u128()
    }

    /// Decodes a mixed-radix index (last factor varies fastest).
    pub fn element_at(&self, mut idx: u128) -> Vec<u32> {
        let mut out = vec![0u32; self.leaves.len()];
        for (slot, b) in out.iter_mut().zip(&self.leaves).rev() {
            *slot = (idx % b.size() as u128) as u32;
            idx /= b.size() as u128;
        }
        out
    }

    pub fn index_of_element(&self, e: &[u32]) -> u128 {
        e.iter()
            .zip(&self.leaves)
            .fold(0u128, |acc, (&x, b)| acc * b.size() as u128 + x as u128)
    }

    pub fn is_element(&self, e: &[u32]) -> bool {
        e.len() == self.leaves.len()
            && e.iter()
                .zip(&self.leaves)
                .all(|(&x, b)| (x as usize) < b.size())
    }

    pub fn label(&self, e: &[u32]) -> String {
        if self.leaves.len() == 1 {
            return self.leaves[0].label(e[0]).to_string();
        }
        let parts: Vec<&str> = e
            .iter()
            .zip(&self.leaves)
            .map(|(&x, b)| b.label(x))
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn element_from_json(&self, v: &Value) -> Result<Vec<u32>, LatticeError> {
        if self.leaves.len() == 1 {
            return Ok(vec![self.leaves[0].element_from_json(v)?]);
        }
        let parts = v
            .as_array()
            .filter(|a| a.len() == self.leaves.len())
            .ok_or_else(|| {
                LatticeError::NotAnElement(format!(
                    "expected {} components: {v}",
                    self.leaves.len()
                ))
            })?;
        parts
            .iter()
            .zip(&self.leaves)
            .map(|(p, b)| b.element_from_json(p))
            .collect()
    }

    pub fn element_to_json(&self, e: &[u32]) -> Value {
        if self.leaves.len() == 1 {
            return self.leaves[0].element_to_json(e[0]);
        }
        Value::Array(
            e.iter()
                .zip(&self.leaves)
                .map(|(&x, b)| b.element_to_json(x))
                .collect(),
        )
    }

    /// Restriction to the given factor positions.
    pub fn project(&self, positions: &[usize]) -> FiniteLattice {
        FiniteLattice {
            leaves: positions.iter().map(|&i| self.leaves[i].clone()).collect(),
        }
    }
}

impl Lattice for FiniteLattice {
    type Element = Vec<u32>;

    fn meet(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        self.leaves
            .iter()
            .zip(a.iter().zip(b))
            .map(|(l, (&x, &y))| l.meet_idx(x, y))
            .collect()
    }

    fn join(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        self.leaves
            .iter()
            .zip(a.iter().zip(b))
            .map(|(l, (&x, &y))| l.join_idx(x, y))
            .collect()
    }

    fn bottom(&self) -> Vec<u32> {
        self.leaves.iter().map(|l| l.bottom_idx()).collect()
    }

    fn top(&self) -> Vec<u32> {
        self.leaves.iter().map(|l| l.top_idx()).collect()
    }
}

/// `Sub(F^d)` acting directly on subspaces, for any field including the
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceAlgebra {
    field: Field,
    dim: usize,
}

impl SubspaceAlgebra {
    pub fn new(field: &Field, dim: usize) -> Self {
        SubspaceAlgebra {
            field: field.clone(),
            dim,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl Lattice for SubspaceAlgebra {
    type Element = Subspace;

    fn meet(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.meet_unchecked(b)
    }

    fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        a.join_unchecked(b)
    }

    fn bottom(&self) -> Subspace {
        Subspace::zero(&self.field, self.dim)
    }

    fn top(&self) -> Subspace {
        Subspace::full(&self.field, self.dim)
    }

    fn leq(&self, a: &Subspace, b: &Subspace) -> bool {
        a.leq(b)
    }
}
