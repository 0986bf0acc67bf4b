//! Deciding whether a tuple of elements generates a (product) lattice.
//!
//! Closure mode computes the generated sublattice outright. certificate mode uses
//! the product criterion: generators of `L_1 x ... x L_n` generate it iff
//! every coordinate projection generates its factor and, for every `i`, some
//! term evaluates to the top of `L_i` on coordinate `i` and to the bottom on
//! every other coordinate. Without supplied terms, such a term is assembled
//! from pairwise witnesses: if `(1, 0)` lies in the closure of the projection
//! onto `L_i x L_j`, its witness term `f_ij` separates `i` from `j`, and the
//! meet of all `f_ij` separates `i` from everything else. If `(1, 0)` is
//! missing for some pair, the product is not generated.

use std::collections::HashMap;
use std::sync::Arc;

use crate::field::{Cardinal, Field};
use crate::linalg::Subspace;

use super::{
    closure, closure_base, BaseLattice, ClosureOptions, FiniteLattice, Lattice, LatticeError,
    LatticeSpec, LatticeTerm, SubspaceAlgebra, DEFAULT_CAP,
};

/// One factor `Sub(F^d)` of a product; finite factors carry their tables.
#[derive(Debug, Clone)]
pub struct Factor {
    pub field: Field,
    pub dim: usize,
    pub base: Option<Arc<BaseLattice>>,
}

impl Factor {
    pub fn new(field: &Field, dim: usize) -> Result<Factor, LatticeError> {
        let base = if field.is_finite() {
            Some(Arc::new(BaseLattice::subspaces(field, dim)?))
        } else {
            None
        };
        Ok(Factor {
            field: field.clone(),
            dim,
            base,
        })
    }

    pub fn from_base(base: Arc<BaseLattice>) -> Factor {
        let field = base.field().expect("subspace lattice").clone();
        let dim = base.dim().unwrap();
        Factor {
            field,
            dim,
            base: Some(base),
        }
    }

    pub fn algebra(&self) -> SubspaceAlgebra {
        SubspaceAlgebra::new(&self.field, self.dim)
    }

    pub fn label(&self, s: &Subspace) -> String {
        match self
            .base
            .as_ref()
            .and_then(|b| b.index_of(s).map(|i| b.label(i).to_string()))
        {
            Some(l) => l,
            None => s.short(),
        }
    }
}

/// Generators of a product of subspace lattices, stored as
/// `generators[g][factor]`.
#[derive(Debug, Clone)]
pub struct ProductInstance {
    pub factors: Vec<Factor>,
    pub generators: Vec<Vec<Subspace>>,
}

impl ProductInstance {
    pub fn new(factors: Vec<Factor>, generators: Vec<Vec<Subspace>>) -> Result<Self, LatticeError> {
        for g in &generators {
            if g.len() != factors.len() {
                return Err(LatticeError::NotAnElement(format!(
                    "{} components for {} factors",
                    g.len(),
                    factors.len()
                )));
            }
            for (s, f) in g.iter().zip(&factors) {
                if s.field() != &f.field || s.ambient_dim() != f.dim {
                    return Err(LatticeError::NotAnElement(format!(
                        "{s} is not in Sub({}^{})",
                        f.field, f.dim
                    )));
                }
            }
        }
        Ok(ProductInstance {
            factors,
            generators,
        })
    }

    /// Factors from a spec; equal factors share tables.
    pub fn factors_for(spec: &LatticeSpec) -> Result<Vec<Factor>, LatticeError> {
        let mut cache: HashMap<(Field, usize), Factor> = HashMap::new();
        spec.leaves()
            .into_iter()
            .map(|(f, d)| {
                if let Some(x) = cache.get(&(f.clone(), d)) {
                    return Ok(x.clone());
                }
                let x = Factor::new(&f, d)?;
                cache.insert((f, d), x.clone());
                Ok(x)
            })
            .collect()
    }

    pub fn from_lattice(l: &FiniteLattice, gens: &[Vec<u32>]) -> Self {
        let factors: Vec<Factor> = l
            .factors()
            .iter()
            .map(|b| Factor::from_base(b.clone()))
            .collect();
        let generators = gens
            .iter()
            .map(|g| {
                g.iter()
                    .zip(l.factors())
                    .map(|(&x, b)| b.subspace(x).unwrap().clone())
                    .collect()
            })
            .collect();
        ProductInstance {
            factors,
            generators,
        }
    }

    /// The `i`-th coordinate of every generator.
    pub fn row(&self, i: usize) -> Vec<Subspace> {
        self.generators.iter().map(|g| g[i].clone()).collect()
    }

    fn row_idx(&self, i: usize) -> Option<Vec<u32>> {
        let b = self.factors[i].base.as_ref()?;
        self.generators.iter().map(|g| b.index_of(&g[i])).collect()
    }

    pub fn lattice(&self) -> Option<FiniteLattice> {
        let bases: Option<Vec<_>> = self.factors.iter().map(|f| f.base.clone()).collect();
        Some(FiniteLattice::product(
            bases?.into_iter().map(FiniteLattice::base).collect(),
        ))
    }

    pub fn generators_idx(&self) -> Option<Vec<Vec<u32>>> {
        let rows: Option<Vec<Vec<u32>>> =
            (0..self.factors.len()).map(|i| self.row_idx(i)).collect();
        let rows = rows?;
        Some(
            (0..self.generators.len())
                .map(|g| rows.iter().map(|r| r[g]).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> Cardinal {
        let mut acc = num_bigint::BigUint::from(1u32);
        for f in &self.factors {
            match &f.base {
                Some(b) => acc *= b.size(),
                None => return Cardinal::Aleph0,
            }
        }
        Cardinal::Finite(acc)
    }

    pub fn label(&self, e: &[Subspace]) -> String {
        let parts: Vec<String> = e
            .iter()
            .zip(&self.factors)
            .map(|(s, f)| f.label(s))
            .collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(","))
        }
    }

    /// Value of `t` at the `j`-th coordinate of the generators.
    pub fn eval_on_row(&self, t: &LatticeTerm, j: usize) -> Result<Subspace, LatticeError> {
        let f = &self.factors[j];
        if let (Some(b), Some(idx)) = (&f.base, self.row_idx(j)) {
            let v = t.eval(b.as_ref(), &idx, &HashMap::new())?;
            return Ok(b.subspace(v).unwrap().clone());
        }
        t.eval(&f.algebra(), &self.row(j), &HashMap::new())
    }
}

/// Restriction of the generators to the given factor positions.
pub fn project(inst: &ProductInstance, positions: &[usize]) -> ProductInstance {
    ProductInstance {
        factors: positions.iter().map(|&i| inst.factors[i].clone()).collect(),
        generators: inst
            .generators
            .iter()
            .map(|g| positions.iter().map(|&i| g[i].clone()).collect())
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undetermined,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::True => 0,
            Verdict::False => 2,
            Verdict::Undetermined => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Closure,
    Fgtln,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaCell {
    One,
    Zero,
    Other,
}

#[derive(Debug, Clone)]
pub struct FactorStatus {
    pub generates: Verdict,
    pub closure_size: Option<usize>,
    pub size: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub cap: usize,
    pub witnesses: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_CAP,
            witnesses: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub generates: Verdict,
    /// `Closure` or `Fgtln`; never `Auto`.
    pub mode: VerifyMode,
    pub closure_size: Option<u128>,
    pub lattice_size: Cardinal,
    /// An element outside the generated sublattice, one subspace per factor.
    pub missing_example: Option<Vec<Subspace>>,
    /// Element labels with witness terms (closure mode, on request).
    pub witnesses: Option<Vec<(String, LatticeTerm)>>,
    /// The separating terms `f_i` (certificate mode with two or more factors).
    pub terms: Option<Vec<LatticeTerm>>,
    /// `delta_table[i][j]`: `f_i` evaluated on coordinate `j`.
    pub delta_table: Option<Vec<Vec<DeltaCell>>>,
    pub factor_status: Vec<FactorStatus>,
    pub note: Option<String>,
}

pub fn verify_generates(
    inst: &ProductInstance,
    mode: VerifyMode,
    terms: Option<&[LatticeTerm]>,
    opts: VerifyOptions,
) -> Result<VerifyReport, LatticeError> {
    if inst.generators.is_empty() {
        return Err(LatticeError::Precondition("no generators".into()));
    }
    let size = inst.size();
    let mode = match mode {
        VerifyMode::Auto => {
            let small = size.as_u64().is_some_and(|s| s as u128 <= opts.cap as u128);
            if inst.factors.len() == 1 || (small && terms.is_none()) {
                VerifyMode::Closure
            } else {
                VerifyMode::Fgtln
            }
        }
        m => m,
    };
    match mode {
        VerifyMode::Closure => verify_closure(inst, opts),
        _ => verify_certificate(inst, terms),
    }
}

fn verify_closure(
    inst: &ProductInstance,
    opts: VerifyOptions,
) -> Result<VerifyReport, LatticeError> {
    let l = inst.lattice().ok_or(LatticeError::Infinite)?;
    let gens = inst.generators_idx().expect("finite factors");
    let r = closure(
        &l,
        &gens,
        ClosureOptions {
            cap: opts.cap,
            witnesses: opts.witnesses,
        },
    )?;
    let to_subspaces = |e: &[u32]| -> Vec<Subspace> {
        e.iter()
            .zip(l.factors())
            .map(|(&x, b)| b.subspace(x).unwrap().clone())
            .collect()
    };
    let witnesses = r
        .witness_terms()
        .map(|ts| r.elements.iter().map(|e| l.label(e)).zip(ts).collect());
    let status = factor_statuses(inst);
    Ok(VerifyReport {
        generates: if r.reached_full {
            Verdict::True
        } else {
            Verdict::False
        },
        mode: VerifyMode::Closure,
        closure_size: Some(r.len() as u128),
        lattice_size: inst.size(),
        missing_example: r.missing_example.as_deref().map(to_subspaces),
        witnesses,
        terms: None,
        delta_table: None,
        factor_status: status,
        note: None,
    })
}

fn factor_statuses(inst: &ProductInstance) -> Vec<FactorStatus> {
    let mut cache: HashMap<(usize, Vec<u32>), FactorStatus> = HashMap::new();
    (0..inst.factors.len())
        .map(|i| {
            let f = &inst.factors[i];
            let (Some(b), Some(row)) = (&f.base, inst.row_idx(i)) else {
                return FactorStatus {
                    generates: Verdict::Undetermined,
                    closure_size: None,
                    size: None,
                };
            };
            let key = (Arc::as_ptr(b) as usize, row.clone());
            cache
                .entry(key)
                .or_insert_with(|| {
                    let n = closure_base(b, &row).len();
                    FactorStatus {
                        generates: if n == b.size() {
                            Verdict::True
                        } else {
                            Verdict::False
                        },
                        closure_size: Some(n),
                        size: Some(b.size()),
                    }
                })
                .clone()
        })
        .collect()
}

fn cell(f: &Factor, s: &Subspace) -> DeltaCell {
    if s.rank() == f.dim {
        DeltaCell::One
    } else if s.rank() == 0 {
        DeltaCell::Zero
    } else {
        DeltaCell::Other
    }
}

/// Evaluates each `f_i` on each coordinate.
pub(crate) fn delta_table(
    inst: &ProductInstance,
    terms: &[LatticeTerm],
) -> Result<Vec<Vec<DeltaCell>>, LatticeError> {
    terms
        .iter()
        .map(|t| {
            (0..inst.factors.len())
                .map(|j| Ok(cell(&inst.factors[j], &inst.eval_on_row(t, j)?)))
                .collect::<Result<Vec<_>, LatticeError>>()
        })
        .collect()
}

fn is_kronecker(table: &[Vec<DeltaCell>]) -> bool {
    table.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, &c)| {
            c == if i == j {
                DeltaCell::One
            } else {
                DeltaCell::Zero
            }
        })
    })
}

fn verify_certificate(
    inst: &ProductInstance,
    terms: Option<&[LatticeTerm]>,
) -> Result<VerifyReport, LatticeError> {
    let n = inst.factors.len();
    let status = factor_statuses(inst);
    let mut report = VerifyReport {
        generates: Verdict::Undetermined,
        mode: VerifyMode::Fgtln,
        closure_size: None,
        lattice_size: inst.size(),
        missing_example: None,
        witnesses: None,
        terms: None,
        delta_table: None,
        factor_status: status.clone(),
        note: None,
    };

    // condition (1)
    if let Some(i) = status.iter().position(|s| s.generates == Verdict::False) {
        let b = inst.factors[i].base.as_ref().unwrap();
        let got: std::collections::HashSet<u32> = closure_base(b, &inst.row_idx(i).unwrap())
            .into_iter()
            .collect();
        let missing = (0..b.size() as u32).find(|x| !got.contains(x)).unwrap();
        report.generates = Verdict::False;
        report.missing_example = Some(bottoms_except(
            inst,
            i,
            b.subspace(missing).unwrap().clone(),
        ));
        report.note = Some(format!(
            "projection to factor {} does not generate it",
            i + 1
        ));
        return Ok(report);
    }
    let cond1 = status.iter().all(|s| s.generates == Verdict::True);

    if n == 1 {
        report.generates = if cond1 {
            Verdict::True
        } else {
            Verdict::Undetermined
        };
        return Ok(report);
    }

    // condition (2)
    let fs: Vec<LatticeTerm> = match terms {
        Some(ts) => {
            if ts.len() != n {
                return Err(LatticeError::Precondition(format!(
                    "{} separating terms for {n} factors",
                    ts.len()
                )));
            }
            ts.to_vec()
        }
        None => match pairwise_terms(inst)? {
            Ok(fs) => fs,
            Err((i, j)) => {
                report.generates = Verdict::False;
                let mut e = bottoms_except(
                    inst,
                    i,
                    Subspace::full(&inst.factors[i].field, inst.factors[i].dim),
                );
                e[j] = Subspace::zero(&inst.factors[j].field, inst.factors[j].dim);
                report.missing_example = Some(e);
                report.note = Some(format!(
                    "(1,0) is not generated in the projection to factors ({}, {})",
                    i + 1,
                    j + 1
                ));
                return Ok(report);
            }
        },
    };
    let table = delta_table(inst, &fs)?;
    let exact = is_kronecker(&table);
    report.terms = Some(fs);
    report.delta_table = Some(table);
    report.generates = match (exact, cond1) {
        (true, true) => Verdict::True,
        (true, false) => {
            report.note =
                Some("separating terms are exact; an infinite factor cannot be closed".into());
            Verdict::Undetermined
        }
        (false, _) => {
            report.note =
                Some("no separating term: the supplied terms are not a Kronecker delta".into());
            Verdict::Undetermined
        }
    };
    Ok(report)
}

fn bottoms_except(inst: &ProductInstance, i: usize, at_i: Subspace) -> Vec<Subspace> {
    inst.factors
        .iter()
        .enumerate()
        .map(|(k, f)| {
            if k == i {
                at_i.clone()
            } else {
                Subspace::zero(&f.field, f.dim)
            }
        })
        .collect()
}

/// `Ok(f)` with one separating term per factor, or `Err((i, j))` for a pair
/// whose projection misses `(1, 0)`.
#[allow(clippy::type_complexity)]
fn pairwise_terms(
    inst: &ProductInstance,
) -> Result<Result<Vec<LatticeTerm>, (usize, usize)>, LatticeError> {
    let n = inst.factors.len();
    let rows: Option<Vec<Vec<u32>>> = (0..n).map(|i| inst.row_idx(i)).collect();
    let Some(rows) = rows else {
        return Err(LatticeError::Precondition(
            "separating terms cannot be searched for over an infinite factor; supply them".into(),
        ));
    };
    let bases: Vec<Arc<BaseLattice>> = inst
        .factors
        .iter()
        .map(|f| f.base.clone().unwrap())
        .collect();
    // identical (factor, row) pairs give identical closures
    let mut cache: HashMap<(usize, Vec<u32>, usize, Vec<u32>), Option<LatticeTerm>> =
        HashMap::new();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut parts = Vec::with_capacity(n - 1);
        for j in (0..n).filter(|&j| j != i) {
            let key = (
                Arc::as_ptr(&bases[i]) as usize,
                rows[i].clone(),
                Arc::as_ptr(&bases[j]) as usize,
                rows[j].clone(),
            );
            let t = match cache.get(&key) {
                Some(t) => t.clone(),
                None => {
                    let l = FiniteLattice::product(vec![
                        FiniteLattice::base(bases[i].clone()),
                        FiniteLattice::base(bases[j].clone()),
                    ]);
                    let gens: Vec<Vec<u32>> = rows[i]
                        .iter()
                        .zip(&rows[j])
                        .map(|(&a, &b)| vec![a, b])
                        .collect();
                    let r = closure(
                        &l,
                        &gens,
                        ClosureOptions {
                            cap: usize::MAX,
                            witnesses: true,
                        },
                    )?;
                    let target = vec![bases[i].top(), bases[j].bottom()];
                    let t = r.witness_term(&target);
                    cache.insert(key, t.clone());
                    t
                }
            };
            match t {
                Some(t) => parts.push(t),
                None => return Ok(Err((i, j))),
            }
        }
        out.push(LatticeTerm::meet_all(parts));
    }
    Ok(Ok(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano_power(k: usize) -> FiniteLattice {
        FiniteLattice::parse(&format!("pow:sub:2:3:{k}")).unwrap()
    }

    #[test]
    fn certificate_and_closure_agree_on_fixed_cases() {
        let l = fano_power(2);
        let b = &l.factors()[0];
        let pt = |v: [i64; 3]| {
            let f = b.field().unwrap();
            b.index_of(&Subspace::point(f, v.iter().map(|&x| f.from_i64(x)).collect()).unwrap())
                .unwrap()
        };
        let (a1, a2, a3, c) = (pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1]), pt([1, 1, 1]));
        // the same quadrangle twice cannot separate the coordinates
        let diag = vec![vec![a1, a1], vec![a2, a2], vec![a3, a3], vec![c, c]];
        let inst = ProductInstance::from_lattice(&l, &diag);
        let by_closure =
            verify_generates(&inst, VerifyMode::Closure, None, VerifyOptions::default()).unwrap();
        let by_certificate =
            verify_generates(&inst, VerifyMode::Fgtln, None, VerifyOptions::default()).unwrap();
        assert_eq!(by_closure.generates, Verdict::False);
        assert_eq!(by_certificate.generates, Verdict::False);
        assert_eq!(by_closure.closure_size, Some(16));
    }

    #[test]
    fn supplied_terms_that_fail_are_undetermined() {
        let l = fano_power(2);
        let gens: Vec<Vec<u32>> = (1..5).map(|i| vec![i, i + 1]).collect();
        let inst = ProductInstance::from_lattice(&l, &gens);
        let bad = vec![LatticeTerm::var(0), LatticeTerm::var(1)];
        let r = verify_generates(
            &inst,
            VerifyMode::Fgtln,
            Some(&bad),
            VerifyOptions::default(),
        )
        .unwrap();
        assert_ne!(r.generates, Verdict::True);
    }

    #[test]
    fn single_factor_reduces_to_closure() {
        let l = fano_power(1);
        let gens = vec![vec![1], vec![2], vec![3]];
        let inst = ProductInstance::from_lattice(&l, &gens);
        let r = verify_generates(&inst, VerifyMode::Auto, None, VerifyOptions::default()).unwrap();
        assert_eq!(r.mode, VerifyMode::Closure);
        assert_eq!(r.generates, Verdict::False);
        assert!(r.closure_size.unwrap() < 16);
    }
}
