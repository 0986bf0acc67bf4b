//! Explicit generating sets of subspace lattices and their direct powers and
//! products, the separating terms certifying them, and the numeric bounds
//! that go with them.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::field::{Cardinal, Field, FieldError, FieldKind, Scalar};
use crate::lattice::{
    closure, closure_base, subspace_count, verify_generates, BaseLattice, ClosureOptions,
    DeltaCell, Factor, FiniteLattice, Lattice, LatticeError, LatticeTerm, ProductInstance,
    VerifyMode, VerifyOptions, VerifyReport,
};
use crate::linalg::{combinations, rank, LinalgError, Subspace, Vector};
use crate::projective::{ftype_of, general_position, third_atom, FrameSymbols, ProjectiveError};

/// Factors with more subspaces than this get no tables.
pub const FACTOR_TABLE_LIMIT: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("the given elements generate a proper subfield of {0}")]
    NotEnoughGenerators(String),
    #[error("k = {k} exceeds mu = {mu}")]
    KTooLarge { k: usize, mu: String },
    #[error("{field} occurs {m} times; at most 4 allowed")]
    MultiplicityTooHigh { field: String, m: usize },
    #[error("bad configuration: {0}")]
    BadConfiguration(String),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

// ---------------------------------------------------------------------------
// Gaussian binomials and bounds

/// The number of `r`-dimensional subspaces of `GF(q)^m`, exactly.
pub fn qbinom(q: u64, m: u64, r: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(ConstructionError::BadRange(format!("q = {q} < 2")));
    }
    if r > m {
        return Err(ConstructionError::BadRange(format!("r = {r} > m = {m}")));
    }
    let r = r.min(m - r);
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    // after step i the value is [m choose i+1]_q, an integer
    for i in 0..r {
        let num = q.pow((m - i) as u32) - 1u32;
        let den = q.pow((i + 1) as u32) - 1u32;
        acc *= num;
        let (quot, rem) = acc.div_rem(&den);
        debug_assert!(rem.is_zero());
        acc = quot;
    }
    Ok(acc)
}

/// The Gaussian binomial over a field of the given cardinality; infinite
/// cardinalities give `aleph0` whenever `0 < r < m`.
pub fn qbinom_cardinal(q: &Cardinal, m: u64, r: u64) -> Result<Cardinal> {
    match q {
        Cardinal::Finite(n) => {
            let n = n
                .to_u64()
                .ok_or_else(|| ConstructionError::BadRange(format!("q = {n} too large")))?;
            Ok(Cardinal::Finite(qbinom(n, m, r)?))
        }
        Cardinal::Aleph0 => {
            if r > m {
                return Err(ConstructionError::BadRange(format!("r = {r} > m = {m}")));
            }
            Ok(if r == 0 || r == m {
                Cardinal::finite(1)
            } else {
                Cardinal::Aleph0
            })
        }
    }
}

/// A positive integer as `mantissa * 10^exponent` with `1 <= mantissa < 10`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sci {
    pub mantissa: f64,
    pub exponent: u64,
}

impl Sci {
    pub fn of(n: &BigUint) -> Sci {
        let s = n.to_str_radix(10);
        let head: String = s.chars().take(17).collect();
        let mantissa = head.parse::<f64>().unwrap() / 10f64.powi(head.len() as i32 - 1);
        Sci {
            mantissa,
            exponent: s.len() as u64 - 1,
        }
    }

    pub fn log10(&self) -> f64 {
        self.exponent as f64 + self.mantissa.log10()
    }

    /// Mantissa rounded to `places` decimals, carrying into the exponent.
    pub fn rounded(&self, places: i32) -> (f64, u64) {
        let scale = 10f64.powi(places);
        let m = (self.mantissa * scale).round() / scale;
        if m >= 10.0 {
            (m / 10.0, self.exponent + 1)
        } else {
            (m, self.exponent)
        }
    }
}

impl fmt::Display for Sci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, e) = self.rounded(3);
        write!(f, "{m:.3}e{e}")
    }
}

pub fn qbinom_log10(q: u64, m: u64, r: u64) -> Result<f64> {
    Ok(Sci::of(&qbinom(q, m, r)?).log10())
}

/// The field orders tabulated for `d = 80`.
pub const TABLE1_Q: [u64; 12] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19];

#[derive(Debug, Clone)]
pub struct Table1Row {
    pub q: u64,
    pub value: BigUint,
    pub sci: Sci,
}

/// `[80 choose 40]_q` for every `q` in [`TABLE1_Q`].
pub fn table1() -> Vec<Table1Row> {
    TABLE1_Q
        .iter()
        .map(|&q| {
            let value = qbinom(q, 80, 40).expect("valid range");
            let sci = Sci::of(&value);
            Table1Row { q, value, sci }
        })
        .collect()
}

fn card_add(c: &Cardinal, n: u64) -> Cardinal {
    match c {
        Cardinal::Finite(x) => Cardinal::Finite(x + n),
        Cardinal::Aleph0 => Cardinal::Aleph0,
    }
}

fn card_max(c: &Cardinal, n: u64) -> Cardinal {
    match c {
        Cardinal::Finite(x) if *x < BigUint::from(n) => Cardinal::finite(n),
        _ => c.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// `floor(d^2 / 4)`.
    pub big_m: u64,
    /// `ceil(t / M)`.
    pub m: Cardinal,
    pub lower: Cardinal,
    /// Bound on the generator count of `Sub(F^d)`.
    pub upper_thm1: Cardinal,
    /// Bound on the generator count of `Sub(F^d)^k` for `k <= mu`.
    pub upper_thm2: Cardinal,
}

/// Generator-count bounds for `Sub(F^d)` with `t` the least size of a
/// generating set of `F`.
pub fn bounds(t: &Cardinal, d: u64) -> Result<Bounds> {
    if d < 3 {
        return Err(ConstructionError::BadRange(format!("d = {d} < 3")));
    }
    let big_m = d * d / 4;
    assert_eq!(big_m, (d / 2) * d.div_ceil(2));
    let m = t.ceil_div(big_m);
    Ok(Bounds {
        big_m,
        lower: card_max(&m, 4),
        upper_thm1: card_add(&m, 4),
        upper_thm2: card_add(&m, 5),
        m,
    })
}

/// The number of `floor(d/2)`-dimensional subspaces of `F^d`.
pub fn mu(field: &Field, d: u64) -> Result<Cardinal> {
    if d < 3 {
        return Err(ConstructionError::BadRange(format!("d = {d} < 3")));
    }
    qbinom_cardinal(&field.cardinality(), d, d / 2)
}

// ---------------------------------------------------------------------------
// Recipes

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecipeKind {
    Thm1,
    Thm2Power,
    MatrixU,
    Thm3Product,
    Zadori,
}

impl RecipeKind {
    pub fn name(self) -> &'static str {
        match self {
            RecipeKind::Thm1 => "thm1",
            RecipeKind::Thm2Power => "thm2",
            RecipeKind::MatrixU => "matrixU",
            RecipeKind::Thm3Product => "thm3",
            RecipeKind::Zadori => "zadori",
        }
    }
}

impl fmt::Display for RecipeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A generating tuple of a (product of) subspace lattice(s), optionally with
/// one separating term per factor.
#[derive(Debug, Clone)]
pub struct GenSetRecipe {
    pub which: RecipeKind,
    pub params: Value,
    pub instance: ProductInstance,
    pub certificate_terms: Option<Vec<LatticeTerm>>,
}

impl GenSetRecipe {
    pub fn generator_count(&self) -> usize {
        self.instance.generators.len()
    }

    /// Generators of a single-factor recipe.
    pub fn generators(&self) -> Vec<Subspace> {
        self.instance.row(0)
    }

    /// Runs the verifier, passing the certificate terms to certificate mode.
    pub fn verify(&self, mode: VerifyMode, opts: VerifyOptions) -> Result<VerifyReport> {
        let terms = match mode {
            VerifyMode::Closure => None,
            _ => self.certificate_terms.as_deref(),
        };
        Ok(verify_generates(&self.instance, mode, terms, opts)?)
    }

    /// Evaluates every certificate term on every factor.
    pub fn delta_table(&self) -> Result<Option<Vec<Vec<DeltaCell>>>> {
        let Some(ts) = &self.certificate_terms else {
            return Ok(None);
        };
        let inst = &self.instance;
        let table = ts
            .iter()
            .map(|t| {
                (0..inst.factors.len())
                    .map(|j| {
                        let v = inst.eval_on_row(t, j)?;
                        Ok(if v.rank() == inst.factors[j].dim {
                            DeltaCell::One
                        } else if v.rank() == 0 {
                            DeltaCell::Zero
                        } else {
                            DeltaCell::Other
                        })
                    })
                    .collect::<std::result::Result<Vec<_>, LatticeError>>()
            })
            .collect::<std::result::Result<Vec<_>, LatticeError>>()?;
        Ok(Some(table))
    }

    /// Whether the certificate terms form an exact Kronecker delta.
    pub fn certificate_is_kronecker(&self) -> Result<bool> {
        Ok(self.delta_table()?.is_some_and(|t| is_kronecker(&t)))
    }
}

pub fn is_kronecker(table: &[Vec<DeltaCell>]) -> bool {
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

/// Builds factors, sharing tables between equal ones; large or infinite
/// factors carry no tables.
#[derive(Default)]
struct FactorCache(HashMap<(Field, usize), Factor>);

impl FactorCache {
    fn get(&mut self, field: &Field, d: usize) -> Result<Factor> {
        if let Some(f) = self.0.get(&(field.clone(), d)) {
            return Ok(f.clone());
        }
        let small = field
            .order()
            .and_then(|q| subspace_count(q, d as u32))
            .is_some_and(|n| n <= FACTOR_TABLE_LIMIT);
        let f = if small {
            Factor::new(field, d)?
        } else {
            Factor {
                field: field.clone(),
                dim: d,
                base: None,
            }
        };
        self.0.insert((field.clone(), d), f.clone());
        Ok(f)
    }
}

fn single(
    which: RecipeKind,
    params: Value,
    field: &Field,
    d: usize,
    gens: Vec<Subspace>,
) -> Result<GenSetRecipe> {
    let factor = FactorCache::default().get(field, d)?;
    let instance = ProductInstance::new(vec![factor], gens.into_iter().map(|g| vec![g]).collect())?;
    Ok(GenSetRecipe {
        which,
        params,
        instance,
        certificate_terms: None,
    })
}

fn span(field: &Field, d: usize, rows: Vec<Vector>) -> Subspace {
    Subspace::span(field, d, &rows).expect("rows of the right length")
}

fn e_sum(field: &Field, d: usize, idx: &[usize]) -> Vector {
    let mut v = vec![field.zero(); d];
    for &i in idx {
        v[i] = field.add(&v[i], &field.one());
    }
    v
}

// ---------------------------------------------------------------------------
// Four generators for prime fields

/// The four subspaces `t_1..t_4` of `F^n` (0-based coordinates below). Their
/// spanning vectors have 0/1 entries, so over an extension field they are
/// the embedded prime-field subspaces.
pub fn zadori_subspaces(field: &Field, n: usize) -> Result<Vec<Subspace>> {
    if n < 3 {
        return Err(ConstructionError::BadRange(format!("n = {n} < 3")));
    }
    let k = n / 2;
    let unit = |i: usize| e_sum(field, n, &[i]);
    let t1 = span(field, n, (k..n).map(unit).collect());
    let t2 = span(field, n, (0..k).map(unit).collect());
    let (t3, t4) = if n % 2 == 1 {
        (
            span(
                field,
                n,
                (0..k).map(|i| e_sum(field, n, &[i, k + 1 + i])).collect(),
            ),
            span(
                field,
                n,
                (0..k).map(|i| e_sum(field, n, &[i, k + i])).collect(),
            ),
        )
    } else {
        (
            span(
                field,
                n,
                (0..k).map(|i| e_sum(field, n, &[i, k + i])).collect(),
            ),
            span(
                field,
                n,
                (1..k).map(|i| e_sum(field, n, &[i, k + i - 1])).collect(),
            ),
        )
    };
    Ok(vec![t1, t2, t3, t4])
}

pub fn zadori_generators(p: u32, n: usize) -> Result<GenSetRecipe> {
    let field = Field::prime(p)?;
    let gens = zadori_subspaces(&field, n)?;
    single(RecipeKind::Zadori, json!({"p": p, "n": n}), &field, n, gens)
}

/// The hyperplane `{x_i = 0}` of `F^n`, `i` 1-based.
pub fn coordinate_hyperplane(field: &Field, n: usize, i: usize) -> Subspace {
    let rows = (0..n)
        .filter(|&j| j != i - 1)
        .map(|j| e_sum(field, n, &[j]))
        .collect();
    span(field, n, rows)
}

/// Whether the ideals below `g` and below `H_i` generate the lattice.
pub fn hyperplane_ideal_check(l: &BaseLattice, g: &Subspace, i: usize) -> Result<bool> {
    let (Some(field), Some(n)) = (l.field(), l.dim()) else {
        return Err(ConstructionError::PreconditionFailed(
            "not a subspace lattice".into(),
        ));
    };
    if i == 0 || i > n {
        return Err(ConstructionError::PreconditionFailed(format!(
            "coordinate {i} out of 1..={n}"
        )));
    }
    let h = coordinate_hyperplane(field, n, i);
    if g.rank() < 2 {
        return Err(ConstructionError::PreconditionFailed(format!(
            "dim G = {} < 2",
            g.rank()
        )));
    }
    if g.leq(&h) {
        return Err(ConstructionError::PreconditionFailed(format!(
            "G is contained in H_{i}"
        )));
    }
    let gi = l
        .index_of(g)
        .ok_or_else(|| LatticeError::NotAnElement(g.short()))?;
    let hi = l.index_of(&h).expect("hyperplanes are elements");
    let gens: Vec<u32> = (0..l.size() as u32)
        .filter(|&x| l.leq_idx(x, gi) || l.leq_idx(x, hi))
        .collect();
    Ok(closure_base(l, &gens).len() == l.size())
}

// ---------------------------------------------------------------------------
// Generators over arbitrary finitely generated fields

/// How the pattern slots are filled once the supplied field generators run
/// out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Padding {
    /// Repeat the supplied generators cyclically.
    #[default]
    Cycle,
    /// Use the unit `1`.
    Unit,
}

/// Degree over the prime field of the subfield generated by `gens`.
fn generated_degree(field: &Field, gens: &[Scalar]) -> u32 {
    if field.kind() != FieldKind::Extension {
        return 1;
    }
    let p = field.characteristic() as u64;
    let deg = |g: &Scalar| -> u32 {
        (1..=field.degree())
            .find(|&e| field.pow(g, p.pow(e)) == *g)
            .unwrap()
    };
    gens.iter().fold(1u32, |acc, g| acc.lcm(&deg(g)))
}

/// Slots of row `row` (0-based) of the `floor(d/2) x d` pattern matrix.
fn pattern_slots(d: usize, row: usize) -> Vec<usize> {
    let h = d / 2;
    std::iter::once(row).chain(h..d - 1).collect()
}

/// `A(i)`: `floor(d/2)` rows, the `M` slot values filled row by row, `-1`
/// in the last column.
pub fn pattern_matrix(field: &Field, d: usize, values: &[Scalar]) -> Vec<Vector> {
    let h = d / 2;
    let mut it = values.iter();
    (0..h)
        .map(|row| {
            let mut v = vec![field.zero(); d];
            for s in pattern_slots(d, row) {
                v[s] = it.next().expect("M values").clone();
            }
            v[d - 1] = field.neg(&field.one());
            v
        })
        .collect()
}

/// `4 + m` generators of `Sub(F^d)` from the field's own generating data.
pub fn thm1_generators(field: &Field, d: usize) -> Result<GenSetRecipe> {
    let (_, gens) = field.generating_data();
    thm1_generators_with(field, d, &gens, Padding::Cycle)
}

/// `4 + m` generators of `Sub(F^d)`: the four prime-field subspaces and, for
/// each block of `M` slot values, the span of the rows of `A(i)`.
pub fn thm1_generators_with(
    field: &Field,
    d: usize,
    gens: &[Scalar],
    padding: Padding,
) -> Result<GenSetRecipe> {
    if d < 3 {
        return Err(ConstructionError::BadRange(format!("d = {d} < 3")));
    }
    if gens.iter().any(|g| field.is_zero(g) || !field.validate(g)) {
        return Err(ConstructionError::BadConfiguration(
            "field generators must be nonzero elements".into(),
        ));
    }
    if field.is_finite() && generated_degree(field, gens) != field.degree() {
        return Err(ConstructionError::NotEnoughGenerators(field.to_string()));
    }
    let big_m = d * d / 4;
    let m = gens.len().div_ceil(big_m);
    let values: Vec<Scalar> = (0..m * big_m)
        .map(|s| match (s < gens.len(), padding) {
            (true, _) => gens[s].clone(),
            (false, Padding::Cycle) => gens[s % gens.len()].clone(),
            (false, Padding::Unit) => field.one(),
        })
        .collect();
    let mut out = zadori_subspaces(field, d)?;
    for block in values.chunks(big_m) {
        out.push(Subspace::span(field, d, &pattern_matrix(field, d, block))?);
    }
    let params = json!({
        "field": field.to_string(),
        "d": d,
        "m": m,
        "generators": gens.iter().map(|g| field.format_element(g)).collect::<Vec<_>>(),
        "padding": format!("{padding:?}").to_lowercase(),
    });
    single(RecipeKind::Thm1, params, field, d, out)
}

// ---------------------------------------------------------------------------
// Direct powers

fn power_instance(base: Arc<BaseLattice>, k: usize, gens: Vec<Vec<u32>>) -> ProductInstance {
    let l = FiniteLattice::power(base, k);
    ProductInstance::from_lattice(&l, &gens)
}

/// `r + 1` generators of `Sub(F^d)^k` for `k <= mu`: `b_0` lists the first
/// `k` half-dimensional subspaces, `b_1..b_r` are constant.
pub fn thm2_power_generators(field: &Field, d: usize, k: usize) -> Result<GenSetRecipe> {
    if k == 0 {
        return Err(ConstructionError::BadRange("k = 0".into()));
    }
    let mu = mu(field, d as u64)?;
    if let Cardinal::Finite(n) = &mu {
        if BigUint::from(k) > *n {
            return Err(ConstructionError::KTooLarge {
                k,
                mu: mu.to_string(),
            });
        }
    }
    let base_recipe = thm1_generators(field, d)?;
    let base = base_recipe.instance.factors[0]
        .base
        .clone()
        .ok_or_else(|| {
            ConstructionError::PreconditionFailed(format!(
                "Sub({field}^{d}) is too large to tabulate"
            ))
        })?;
    let g: Vec<u32> = base_recipe
        .generators()
        .iter()
        .map(|s| base.index_of(s).unwrap())
        .collect();
    let us: Vec<u32> = base
        .elements_of_height((d / 2) as u32)
        .into_iter()
        .take(k)
        .collect();
    let mut gens = vec![us];
    gens.extend(g.iter().map(|&x| vec![x; k]));
    let instance = power_instance(base, k, gens);
    let params = json!({"field": field.to_string(), "d": d, "k": k});
    Ok(GenSetRecipe {
        which: RecipeKind::Thm2Power,
        params,
        instance,
        certificate_terms: None,
    })
}

/// The separating terms `f_1..f_k` of a power recipe. Variable 0 is `b_0`;
/// variables `1..=r` are the constant generators.
pub fn thm2_separating_terms(recipe: &GenSetRecipe) -> Result<Vec<LatticeTerm>> {
    if recipe.which != RecipeKind::Thm2Power {
        return Err(ConstructionError::PreconditionFailed(
            "not a power recipe".into(),
        ));
    }
    let inst = &recipe.instance;
    let base = inst.factors[0]
        .base
        .clone()
        .expect("power recipes carry tables");
    let field = base.field().unwrap().clone();
    let d = base.dim().unwrap();
    let h = d / 2;
    let r = inst.generators.len() - 1;
    let g: Vec<u32> = (1..=r)
        .map(|j| base.index_of(&inst.generators[j][0]).unwrap())
        .collect();

    let cl = closure(
        &FiniteLattice::base(base.clone()),
        &g.iter().map(|&x| vec![x]).collect::<Vec<_>>(),
        ClosureOptions {
            cap: usize::MAX,
            witnesses: true,
        },
    )?;
    let shift: Vec<LatticeTerm> = (1..=r).map(LatticeTerm::var).collect();
    let mut tau_cache: HashMap<u32, LatticeTerm> = HashMap::new();
    let mut tau = |w: u32| -> Result<LatticeTerm> {
        if let Some(t) = tau_cache.get(&w) {
            return Ok(t.clone());
        }
        let t = cl
            .witness_term(&[w])
            .ok_or_else(|| {
                ConstructionError::CertificateFailed(format!("{} is not generated", base.label(w)))
            })?
            .substitute(&shift);
        tau_cache.insert(w, t.clone());
        Ok(t)
    };

    let atoms = base.atoms();
    let frame_atoms: Vec<u32> = (0..d)
        .map(|i| {
            base.index_of(&span(&field, d, vec![e_sum(&field, d, &[i])]))
                .unwrap()
        })
        .collect();
    let xi0 = LatticeTerm::var(0);
    let mut terms = Vec::with_capacity(inst.factors.len());
    for j in 0..inst.factors.len() {
        let u = base.index_of(&inst.generators[0][j]).unwrap();
        let s = atom_basis(&base, &atoms, u, h)?;
        let mut joinands = Vec::with_capacity(d);
        for &b in &frame_atoms {
            let mut meetands = vec![tau(b)?];
            for &e in &s {
                let be = third_atom(base.subspace(b).unwrap(), base.subspace(e).unwrap())?;
                let be = base.index_of(&be).unwrap();
                meetands.push(tau(be)?.join(&xi0.meet(&tau(e)?)));
            }
            joinands.push(LatticeTerm::meet_all(meetands));
        }
        terms.push(LatticeTerm::join_all(joinands));
    }
    let checked = GenSetRecipe {
        certificate_terms: Some(terms.clone()),
        ..recipe.clone()
    };
    if !checked.certificate_is_kronecker()? {
        return Err(ConstructionError::CertificateFailed(
            "separating terms are not a Kronecker delta".into(),
        ));
    }
    Ok(terms)
}

/// The lexicographically first `h` independent atoms below `u`.
fn atom_basis(l: &BaseLattice, atoms: &[u32], u: u32, h: usize) -> Result<Vec<u32>> {
    let below: Vec<u32> = atoms.iter().copied().filter(|&a| l.leq_idx(a, u)).collect();
    let field = l.field().unwrap();
    for c in combinations(below.len(), h) {
        let rows: Vec<Vector> = c
            .iter()
            .map(|&i| l.subspace(below[i]).unwrap().basis()[0].clone())
            .collect();
        if rank(field, &rows) == h {
            return Ok(c.iter().map(|&i| below[i]).collect());
        }
    }
    Err(ConstructionError::CertificateFailed(format!(
        "no atom basis below {}",
        l.label(u)
    )))
}

/// Power recipe with its separating terms attached.
pub fn thm2_certified(field: &Field, d: usize, k: usize) -> Result<GenSetRecipe> {
    let mut r = thm2_power_generators(field, d, k)?;
    r.certificate_terms = Some(thm2_separating_terms(&r)?);
    Ok(r)
}

// ---------------------------------------------------------------------------
// Four generators of the fourth power of a plane

/// `w_i = meet over j != i of (x_i v x_j)`, 1-based.
pub fn u_term_w(i: usize) -> LatticeTerm {
    let x = |j: usize| LatticeTerm::var(j - 1);
    LatticeTerm::meet_all((1..=4).filter(|&j| j != i).map(|j| x(i).join(&x(j))))
}

/// `h_ij = x_j ^ meet over s not in {i, j} of (w_i v x_s)`.
pub fn u_term_h(i: usize, j: usize) -> LatticeTerm {
    let x = |j: usize| LatticeTerm::var(j - 1);
    let w = u_term_w(i);
    let parts = (1..=4).filter(|&s| s != i && s != j).map(|s| w.join(&x(s)));
    x(j).meet(&LatticeTerm::meet_all(parts))
}

/// `f_i = join over j != i of h_ij`.
pub fn u_term_f(i: usize) -> LatticeTerm {
    LatticeTerm::join_all((1..=4).filter(|&j| j != i).map(|j| u_term_h(i, j)))
}

/// The default configuration: the line `x1 + x2 + x3 = 0` and the three
/// coordinate points.
pub fn matrix_u_default(field: &Field) -> (Subspace, [Subspace; 3]) {
    let neg = field.neg(&field.one());
    let e = span(
        field,
        3,
        vec![
            vec![field.one(), neg.clone(), field.zero()],
            vec![field.zero(), field.one(), neg],
        ],
    );
    let pts = [0, 1, 2].map(|i| span(field, 3, vec![e_sum(field, 3, &[i])]));
    (e, pts)
}

/// The rows of `U`: `(e,a,b,c)`, `(a,e,b,c)`, `(a,b,e,c)`, `(a,b,c,e)`.
pub fn matrix_u_rows(e: &Subspace, abc: &[Subspace; 3]) -> Vec<Vec<Subspace>> {
    (0..4)
        .map(|i| {
            let mut row: Vec<Subspace> = abc.to_vec();
            row.insert(i, e.clone());
            row
        })
        .collect()
}

/// The columns of `U` as four generators of `Sub(F^3)^4`, with the terms
/// `f_1..f_4`.
pub fn matrix_u_generators(
    field: &Field,
    config: Option<(Subspace, [Subspace; 3])>,
) -> Result<GenSetRecipe> {
    let (e, abc) = config.unwrap_or_else(|| matrix_u_default(field));
    for x in abc.iter().chain([&e]) {
        if x.field() != field || x.ambient_dim() != 3 {
            return Err(ConstructionError::BadConfiguration(format!(
                "{} is not in Sub({field}^3)",
                x.short()
            )));
        }
    }
    let quad = vec![abc[0].clone(), abc[1].clone(), abc[2].clone(), e.clone()];
    let ok = ftype_of(&quad).is_ok_and(|t| t == [1, 1, 1, 2]) && general_position(&quad)?;
    if !ok {
        return Err(ConstructionError::BadConfiguration(
            "need three non-collinear points off a line (fine type (1,1,1,2), general position)"
                .into(),
        ));
    }
    let rows = matrix_u_rows(&e, &abc);
    let mut cache = FactorCache::default();
    let factors = (0..4)
        .map(|_| cache.get(field, 3))
        .collect::<Result<Vec<_>>>()?;
    let generators = (0..4)
        .map(|g| rows.iter().map(|row| row[g].clone()).collect())
        .collect();
    let instance = ProductInstance::new(factors, generators)?;
    let params = json!({"field": field.to_string(), "e": e.short(), "a": abc[0].short(), "b": abc[1].short(), "c": abc[2].short()});
    Ok(GenSetRecipe {
        which: RecipeKind::MatrixU,
        params,
        instance,
        certificate_terms: Some((1..=4).map(u_term_f).collect()),
    })
}

// ---------------------------------------------------------------------------
// Products of planes over distinct prime fields

/// `p1 = [1,0,0]`, `p2 = [0,1,0]`, `p3 = [0,0,-1]` and the line
/// `q = c13 v c23`.
pub fn thm3_points(field: &Field) -> Result<(Vec<Subspace>, Subspace)> {
    let quad = crate::projective::canonical_quadrangle(field);
    let c23 = quad[0].join(&quad[3])?.meet(&quad[1].join(&quad[2])?)?;
    let neg = field.neg(&field.one());
    let c13 = span(field, 3, vec![vec![field.one(), field.zero(), neg]]);
    let q = c13.join(&c23)?;
    Ok((quad[..3].to_vec(), q))
}

/// Row `nu` (1..=4): `q` placed at position `nu` among `p1, p2, p3`.
pub fn thm3_row(field: &Field, nu: usize) -> Result<Vec<Subspace>> {
    let (mut row, q) = thm3_points(field)?;
    row.insert(nu - 1, q);
    Ok(row)
}

fn xi(i: usize) -> LatticeTerm {
    LatticeTerm::var(i - 1)
}

/// Terms for the points of the plane in the variables `(p1, p2, p3, q)`.
pub struct Thm3Alpha {
    pub p4: LatticeTerm,
    pub w: LatticeTerm,
    steps: Vec<LatticeTerm>,
}

impl Thm3Alpha {
    pub fn new() -> Self {
        let p4 = xi(1)
            .join(&xi(3))
            .meet(&xi(4))
            .join(&xi(2))
            .meet(&xi(2).join(&xi(3)).meet(&xi(4)).join(&xi(1)));
        let w = xi(3).join(&p4).meet(&xi(1).join(&xi(2)));
        Thm3Alpha {
            p4,
            w,
            steps: vec![xi(3)],
        }
    }

    /// The term evaluating to `[s,0,-1]`.
    pub fn s(&mut self, s: usize) -> LatticeTerm {
        while self.steps.len() <= s {
            let prev = self.steps.last().unwrap();
            let next = prev
                .join(&self.w)
                .meet(&xi(1).join(&self.p4))
                .join(&xi(2))
                .meet(&xi(1).join(&xi(3)));
            self.steps.push(next);
        }
        self.steps[s].clone()
    }

    pub fn c13(&mut self) -> LatticeTerm {
        self.s(1)
    }

    pub fn c23(&mut self) -> LatticeTerm {
        self.s(1).permute_vars(&[1, 0, 2, 3])
    }

    pub fn c21(&self) -> LatticeTerm {
        xi(4).meet(&xi(1).join(&xi(2)))
    }

    /// `1/x` in the coordinate ring on the line `p1 v p3`.
    pub fn recip(&mut self, x: &LatticeTerm) -> LatticeTerm {
        let (c13, c23, c12) = (self.c13(), self.c23(), self.c21());
        let sym = FrameSymbols::from_fn(3, xi, |i, j| match (i, j) {
            (1, 2) => c12.clone(),
            (1, 3) => c13.clone(),
            (2, 3) => c23.clone(),
            _ => unreachable!(),
        });
        sym.recip(3, 1, 2, x)
    }
}

impl Default for Thm3Alpha {
    fn default() -> Self {
        Self::new()
    }
}

/// The term that is `p3` on rows over `field` and `0` on rows over the other
/// fields; `finite_orders` lists the finite fields present.
pub fn thm3_beta_p3(
    field: &Field,
    finite_orders: &[u64],
    alpha: &mut Thm3Alpha,
) -> Result<LatticeTerm> {
    match field.kind() {
        FieldKind::Prime => {
            let p = field.order().unwrap() as usize;
            Ok(xi(3).meet(&alpha.s(p)))
        }
        FieldKind::Rationals => {
            let parts = finite_orders.iter().map(|&t| {
                let st = alpha.s(t as usize);
                xi(1).join(&alpha.recip(&st))
            });
            let parts: Vec<LatticeTerm> = parts.collect();
            Ok(LatticeTerm::meet_all(std::iter::once(xi(3)).chain(parts)))
        }
        FieldKind::Extension => Err(ConstructionError::PreconditionFailed(format!(
            "{field} is not a prime field"
        ))),
    }
}

/// `g^i_4`: the join of the four point terms for factor field `field`.
pub fn thm3_g4(field: &Field, finite_orders: &[u64]) -> Result<LatticeTerm> {
    let mut alpha = Thm3Alpha::new();
    let b3 = thm3_beta_p3(field, finite_orders, &mut alpha)?;
    let p4 = alpha.p4.clone();
    let b1 = xi(1).meet(&LatticeTerm::join_all([b3.clone(), xi(2), p4.clone()]));
    let b2 = xi(2).meet(&LatticeTerm::join_all([b3.clone(), xi(1), p4.clone()]));
    let b4 = p4.meet(&LatticeTerm::join_all([b3.clone(), xi(1), xi(2)]));
    Ok(LatticeTerm::join_all([b1, b2, b3, b4]))
}

/// `f^i_nu = g^i_nu ^ f_nu`, where `g^i_nu` feeds the row `nu` back into
/// `g^i_4` in the order `(p1, p2, p3, q)`.
pub fn thm3_term(field: &Field, nu: usize, finite_orders: &[u64]) -> Result<LatticeTerm> {
    if !(1..=4).contains(&nu) {
        return Err(ConstructionError::BadRange(format!("nu = {nu}")));
    }
    let g4 = thm3_g4(field, finite_orders)?;
    let perm: [usize; 4] = match nu {
        1 => [1, 2, 3, 0],
        2 => [0, 2, 3, 1],
        3 => [0, 1, 3, 2],
        _ => [0, 1, 2, 3],
    };
    Ok(g4.permute_vars(&perm).meet(&u_term_f(nu)))
}

/// Four generators of the product of `Sub(F^3)^m` over the given pairwise
/// distinct prime fields. A field of multiplicity `m` keeps the rows
/// `5 - m..=4`.
pub fn thm3_generators(fields: &[(Field, usize)]) -> Result<GenSetRecipe> {
    if fields.is_empty() {
        return Err(ConstructionError::BadRange("no fields".into()));
    }
    let mut seen = HashSet::new();
    for (f, m) in fields {
        if f.kind() == FieldKind::Extension {
            return Err(ConstructionError::PreconditionFailed(format!(
                "{f} is not a prime field"
            )));
        }
        if *m == 0 {
            return Err(ConstructionError::BadRange(format!(
                "{f} has multiplicity 0"
            )));
        }
        if *m > 4 {
            return Err(ConstructionError::MultiplicityTooHigh {
                field: f.to_string(),
                m: *m,
            });
        }
        if !seen.insert(f.clone()) {
            return Err(ConstructionError::BadConfiguration(format!(
                "{f} listed twice"
            )));
        }
    }
    let finite_orders: Vec<u64> = fields.iter().filter_map(|(f, _)| f.order()).collect();
    let mut cache = FactorCache::default();
    let mut factors = Vec::new();
    let mut rows = Vec::new();
    let mut terms = Vec::new();
    let mut row_names = Vec::new();
    for (f, m) in fields {
        for nu in 5 - m..=4 {
            factors.push(cache.get(f, 3)?);
            rows.push(thm3_row(f, nu)?);
            terms.push(thm3_term(f, nu, &finite_orders)?);
            row_names.push(format!("{f}/{nu}"));
        }
    }
    let generators = (0..4)
        .map(|g| rows.iter().map(|r| r[g].clone()).collect())
        .collect();
    let instance = ProductInstance::new(factors, generators)?;
    let params = json!({
        "fields": fields.iter().map(|(f, m)| json!({"field": f.to_string(), "multiplicity": m})).collect::<Vec<_>>(),
        "rows": row_names,
    });
    Ok(GenSetRecipe {
        which: RecipeKind::Thm3Product,
        params,
        instance,
        certificate_terms: Some(terms),
    })
}

// ---------------------------------------------------------------------------
// The labelled Fano plane

/// Point labels with their coordinates.
pub const FANO_POINTS: [(&str, [i64; 3]); 7] = [
    ("a1", [1, 0, 0]),
    ("a2", [0, 1, 0]),
    ("a3", [0, 0, 1]),
    ("b1", [0, 1, 1]),
    ("b2", [1, 0, 1]),
    ("b3", [1, 1, 0]),
    ("c", [1, 1, 1]),
];

/// Line labels with the labels of their points.
pub const FANO_LINES: [(&str, [&str; 3]); 7] = [
    ("u1", ["a2", "a3", "b1"]),
    ("u2", ["a1", "a3", "b2"]),
    ("u3", ["a1", "a2", "b3"]),
    ("v1", ["a1", "b1", "c"]),
    ("v2", ["a2", "b2", "c"]),
    ("v3", ["a3", "b3", "c"]),
    ("w", ["b1", "b2", "b3"]),
];

/// The 50 pairs of the sublattice of the square generated by
/// `(a1,a1), (a2,a2), (a3,a3), (c,w)`.
pub const FANO_EXPECTED: [(&str, &str); 50] = [
    ("a1", "a1"),
    ("a2", "a2"),
    ("a3", "a3"),
    ("c", "w"),
    ("u3", "u3"),
    ("0", "0"),
    ("u2", "u2"),
    ("v1", "1"),
    ("u1", "u1"),
    ("v2", "1"),
    ("v3", "1"),
    ("1", "1"),
    ("0", "a1"),
    ("0", "a2"),
    ("0", "a3"),
    ("0", "b3"),
    ("0", "b2"),
    ("0", "b1"),
    ("a1", "u3"),
    ("a2", "u3"),
    ("b3", "u3"),
    ("a1", "u2"),
    ("b2", "u2"),
    ("a3", "u2"),
    ("b1", "u1"),
    ("c", "1"),
    ("a2", "u1"),
    ("a3", "u1"),
    ("a1", "v1"),
    ("u3", "1"),
    ("u2", "1"),
    ("a2", "v2"),
    ("u1", "1"),
    ("a3", "v3"),
    ("0", "u3"),
    ("0", "u2"),
    ("0", "u1"),
    ("0", "v1"),
    ("b1", "1"),
    ("a2", "1"),
    ("a3", "1"),
    ("0", "v2"),
    ("a1", "1"),
    ("b2", "1"),
    ("0", "v3"),
    ("b3", "1"),
    ("0", "w"),
    ("w", "1"),
    ("0", "1"),
    ("0", "c"),
];

/// `Sub(GF(2)^3)` with the point and line names above.
pub fn fano_labelled() -> BaseLattice {
    let f = Field::prime(2).expect("2 is prime");
    let l = BaseLattice::subspaces(&f, 3).expect("16 elements");
    let coords: HashMap<&str, [i64; 3]> = FANO_POINTS.iter().copied().collect();
    let pt = |v: [i64; 3]| span(&f, 3, vec![v.iter().map(|&x| f.from_i64(x)).collect()]);
    let mut labels: Vec<String> = (0..l.size() as u32)
        .map(|i| l.label(i).to_string())
        .collect();
    labels[l.bottom_idx() as usize] = "0".into();
    labels[l.top_idx() as usize] = "1".into();
    for (name, v) in FANO_POINTS {
        labels[l.index_of(&pt(v)).unwrap() as usize] = name.into();
    }
    for (name, pts) in FANO_LINES {
        let line = pt(coords[pts[0]]).join(&pt(coords[pts[1]])).unwrap();
        debug_assert!(pt(coords[pts[2]]).leq(&line));
        labels[l.index_of(&line).unwrap() as usize] = name.into();
    }
    l.with_labels(labels)
}

#[derive(Debug, Clone)]
pub struct FanoCheck {
    pub generators: Vec<(String, String)>,
    pub elements: Vec<(String, String)>,
    pub contains_one_zero: bool,
    pub contains_zero_c: bool,
    pub matches_expected: bool,
}

/// Closes `(a1,a1), (a2,a2), (a3,a3), (c,w)` in the square of the Fano
/// lattice.
pub fn fano_check() -> FanoCheck {
    let base = Arc::new(fano_labelled());
    let idx = |s: &str| base.index_of_label(s).expect("known label");
    let pairs = [("a1", "a1"), ("a2", "a2"), ("a3", "a3"), ("c", "w")];
    let gens: Vec<Vec<u32>> = pairs.iter().map(|(x, y)| vec![idx(x), idx(y)]).collect();
    let l = FiniteLattice::power(base.clone(), 2);
    let r = closure(
        &l,
        &gens,
        ClosureOptions {
            cap: usize::MAX,
            witnesses: false,
        },
    )
    .expect("256 elements");
    let elements: Vec<(String, String)> = r
        .elements
        .iter()
        .map(|e| (base.label(e[0]).to_string(), base.label(e[1]).to_string()))
        .collect();
    let got: HashSet<(&str, &str)> = elements
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let want: HashSet<(&str, &str)> = FANO_EXPECTED.iter().copied().collect();
    FanoCheck {
        generators: pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        contains_one_zero: r.contains(&[base.top(), base.bottom()]),
        contains_zero_c: r.contains(&[base.bottom(), idx("c")]),
        matches_expected: got == want && elements.len() == want.len(),
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> Field {
        s.parse().unwrap()
    }

    fn vecs(f: &Field, rows: &[&[i64]]) -> Subspace {
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
        Subspace::span(f, rows[0].len(), &rows).unwrap()
    }

    fn closes(r: &GenSetRecipe) -> bool {
        let b = r.instance.factors[0].base.clone().unwrap();
        let g: Vec<u32> = r
            .generators()
            .iter()
            .map(|s| b.index_of(s).unwrap())
            .collect();
        closure_base(&b, &g).len() == b.size()
    }

    /// Subspaces counted by brute force over all vector tuples.
    fn count_subspaces_brute(q: u32, m: usize, r: usize) -> usize {
        let f = Field::prime(q).unwrap();
        crate::linalg::all_subspaces(&f, m)
            .unwrap()
            .iter()
            .filter(|s| s.rank() == r)
            .count()
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(2, 3, 1).unwrap(), BigUint::from(7u32));
        assert_eq!(qbinom(7, 5, 0).unwrap(), BigUint::one());
        assert_eq!(
            qbinom(3, 4, 2).unwrap(),
            BigUint::from(count_subspaces_brute(3, 4, 2))
        );
        assert_eq!(
            qbinom(2, 5, 2).unwrap(),
            BigUint::from(count_subspaces_brute(2, 5, 2))
        );
        assert!(matches!(
            qbinom(2, 3, 4),
            Err(ConstructionError::BadRange(_))
        ));
        assert!(matches!(
            qbinom(1, 3, 1),
            Err(ConstructionError::BadRange(_))
        ));
        let s = Sci::of(&qbinom(2, 80, 40).unwrap());
        assert_eq!(s.to_string(), "1.540e482");
        assert!((qbinom_log10(2, 80, 40).unwrap() - (482.0 + 1.540f64.log10())).abs() < 1e-3);
    }

    #[test]
    fn table_values() {
        let want = [
            (2, "1.540e482"),
            (3, "4.423e763"),
            (4, "2.871e963"),
            (5, "2.958e1118"),
            (7, "1.715e1352"),
            (8, "1.023e1445"),
            (9, "7.002e1526"),
            (11, "1.878e1666"),
            (13, "2.223e1782"),
            (16, "4.186e1926"),
            (17, "5.574e1968"),
            (19, "1.073e2046"),
        ];
        let rows = table1();
        for (row, (q, s)) in rows.iter().zip(want) {
            assert_eq!(row.q, q);
            assert_eq!(row.sci.to_string(), s, "q = {q}");
        }
    }

    #[test]
    fn bounds_examples() {
        let b = bounds(&Cardinal::finite(0), 3).unwrap();
        assert_eq!((b.big_m, b.m.clone()), (2, Cardinal::finite(0)));
        assert_eq!(
            (b.lower, b.upper_thm1, b.upper_thm2),
            (
                Cardinal::finite(4),
                Cardinal::finite(4),
                Cardinal::finite(5)
            )
        );
        assert_eq!(
            bounds(&Cardinal::finite(1), 3).unwrap().upper_thm1,
            Cardinal::finite(5)
        );
        let b = bounds(&Cardinal::finite(80), 3).unwrap();
        assert_eq!(b.m, Cardinal::finite(40));
        assert_eq!(b.lower, Cardinal::finite(40));
        assert_eq!(b.upper_thm1, Cardinal::finite(44));
        // d = 8: M = 16, m = 5
        let b = bounds(&Cardinal::finite(80), 8).unwrap();
        assert_eq!(b.upper_thm1, Cardinal::finite(9));
        assert_eq!(b.lower, Cardinal::finite(5));
        assert_eq!(
            bounds(&Cardinal::Aleph0, 3).unwrap().upper_thm2,
            Cardinal::Aleph0
        );
        assert!(bounds(&Cardinal::finite(1), 2).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&gf("2"), 3).unwrap(), Cardinal::finite(7));
        assert_eq!(mu(&gf("2^2"), 3).unwrap(), Cardinal::finite(21));
        assert_eq!(mu(&gf("Q"), 5).unwrap(), Cardinal::Aleph0);
        let Cardinal::Finite(n) = mu(&gf("19"), 80).unwrap() else {
            panic!()
        };
        assert_eq!(Sci::of(&n).to_string(), "1.073e2046");
    }

    #[test]
    fn zadori_shapes() {
        let f = gf("2");
        let t = zadori_subspaces(&f, 3).unwrap();
        assert_eq!(t[0], vecs(&f, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(t[1], vecs(&f, &[&[1, 0, 0]]));
        assert_eq!(t[2], vecs(&f, &[&[1, 0, 1]]));
        assert_eq!(t[3], vecs(&f, &[&[1, 1, 0]]));
        let t = zadori_subspaces(&f, 4).unwrap();
        assert_eq!(t[2], vecs(&f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        assert_eq!(t[3], vecs(&f, &[&[0, 1, 1, 0]]));
        let t = zadori_subspaces(&f, 5).unwrap();
        assert_eq!(
            t.iter().map(|s| s.rank()).collect::<Vec<_>>(),
            vec![3, 2, 2, 2]
        );
    }

    #[test]
    fn zadori_generates() {
        for (p, n) in [(2, 3), (3, 3), (5, 3), (2, 4), (2, 5)] {
            let r = zadori_generators(p, n).unwrap();
            assert_eq!(r.generator_count(), 4);
            assert!(closes(&r), "p={p} n={n}");
        }
        let r = zadori_generators(3, 3).unwrap();
        assert_eq!(r.instance.factors[0].base.as_ref().unwrap().size(), 28);
    }

    #[test]
    fn hyperplane_ideals() {
        let f = gf("2");
        let l = BaseLattice::subspaces(&f, 3).unwrap();
        let h3 = coordinate_hyperplane(&f, 3, 3);
        for g in l.elements_of_height(2) {
            let g = l.subspace(g).unwrap();
            if g.leq(&h3) {
                assert!(matches!(
                    hyperplane_ideal_check(&l, g, 3),
                    Err(ConstructionError::PreconditionFailed(_))
                ));
            } else {
                assert!(hyperplane_ideal_check(&l, g, 3).unwrap());
            }
        }
        let f3 = gf("3");
        let l3 = BaseLattice::subspaces(&f3, 3).unwrap();
        let g = vecs(&f3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert!(hyperplane_ideal_check(&l3, &g, 1).unwrap());
        let point = vecs(&f3, &[&[1, 0, 0]]);
        assert!(hyperplane_ideal_check(&l3, &point, 1).is_err());
    }

    #[test]
    fn thm1_examples() {
        let r = thm1_generators(&gf("2"), 3).unwrap();
        assert_eq!(r.generator_count(), 4);
        let f4 = gf("2^2");
        let r = thm1_generators(&f4, 3).unwrap();
        assert_eq!(r.generator_count(), 5);
        let omega = f4.generating_data().1[0].clone();
        let neg = f4.neg(&f4.one());
        let g5 = Subspace::point(&f4, vec![omega.clone(), omega.clone(), neg.clone()]).unwrap();
        assert_eq!(r.generators()[4], g5);
        assert!(closes(&r));
        assert_eq!(r.instance.factors[0].base.as_ref().unwrap().size(), 44);
        let unit =
            thm1_generators_with(&f4, 3, std::slice::from_ref(&omega), Padding::Unit).unwrap();
        assert_eq!(
            unit.generators()[4],
            Subspace::point(&f4, vec![omega.clone(), f4.one(), neg]).unwrap()
        );
        assert!(closes(&unit));
        // a proper subfield is refused
        assert!(matches!(
            thm1_generators_with(&f4, 3, &[f4.one()], Padding::Cycle),
            Err(ConstructionError::NotEnoughGenerators(_))
        ));
        let f9 = gf("3^2");
        assert!(closes(&thm1_generators(&f9, 3).unwrap()));
        let r = thm1_generators(&f9, 4).unwrap();
        assert_eq!(r.generator_count(), 5);
        assert_eq!(r.generators()[4].rank(), 2);
        let a = pattern_matrix(&f9, 4, &vec![f9.one(); 4]);
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].iter().filter(|x| f9.is_zero(x)).count(), 1);
        assert_eq!(pattern_slots(5, 1), vec![1, 2, 3]);
    }

    #[test]
    fn thm1_over_squares_of_primes() {
        for p in [2, 3] {
            let f: Field = format!("{p}^2").parse().unwrap();
            assert!(closes(&thm1_generators(&f, 3).unwrap()), "p = {p}");
        }
    }

    #[test]
    fn thm2_power_shapes() {
        let f2 = gf("2");
        let r = thm2_power_generators(&f2, 3, 7).unwrap();
        assert_eq!(r.generator_count(), 5);
        let pts: HashSet<_> = r.instance.generators[0].iter().cloned().collect();
        assert_eq!(pts.len(), 7);
        assert!(pts.iter().all(|p| p.rank() == 1));
        assert!(matches!(
            thm2_power_generators(&f2, 3, 8),
            Err(ConstructionError::KTooLarge { k: 8, .. })
        ));
        let one = thm2_power_generators(&f2, 3, 1).unwrap();
        assert_eq!(one.instance.factors.len(), 1);
    }

    #[test]
    fn thm2_separating() {
        for (f, k) in [(gf("2"), 7), (gf("3"), 5), (gf("2"), 1)] {
            let r = thm2_certified(&f, 3, k).unwrap();
            let table = r.delta_table().unwrap().unwrap();
            assert!(is_kronecker(&table));
            let rep = r
                .verify(VerifyMode::Fgtln, VerifyOptions::default())
                .unwrap();
            assert_eq!(rep.generates, crate::lattice::Verdict::True);
        }
    }

    #[test]
    fn matrix_u_substitution_table() {
        let f = gf("2");
        let (e, abc) = matrix_u_default(&f);
        let rows = matrix_u_rows(&e, &abc);
        let alg = crate::lattice::SubspaceAlgebra::new(&f, 3);
        let ev = |t: &LatticeTerm, row: &[Subspace]| t.eval(&alg, row, &HashMap::new()).unwrap();
        let full = Subspace::full(&f, 3);
        let zero = Subspace::zero(&f, 3);
        assert_eq!(ev(&u_term_w(1), &rows[0]), full);
        assert_eq!(ev(&u_term_h(1, 2), &rows[0]), abc[0]);
        assert_eq!(ev(&u_term_h(1, 3), &rows[0]), abc[1]);
        assert_eq!(ev(&u_term_h(1, 4), &rows[0]), abc[2]);
        for row in &rows[1..] {
            assert_eq!(ev(&u_term_w(1), row), abc[0]);
            for j in 2..=4 {
                assert_eq!(ev(&u_term_h(1, j), row), zero);
            }
        }
        let col: Vec<Subspace> = rows.iter().map(|r| ev(&u_term_f(1), r)).collect();
        assert_eq!(col, vec![full, zero.clone(), zero.clone(), zero]);
    }

    #[test]
    fn matrix_u_certifies() {
        for p in ["2", "3"] {
            let r = matrix_u_generators(&gf(p), None).unwrap();
            assert!(r.certificate_is_kronecker().unwrap());
            let rep = r
                .verify(VerifyMode::Fgtln, VerifyOptions::default())
                .unwrap();
            assert_eq!(rep.generates, crate::lattice::Verdict::True);
        }
        let f = gf("2");
        let (e, abc) = matrix_u_default(&f);
        let bad = [abc[0].clone(), abc[1].clone(), vecs(&f, &[&[1, 1, 0]])];
        assert!(matches!(
            matrix_u_generators(&f, Some((e, bad))),
            Err(ConstructionError::BadConfiguration(_))
        ));
    }

    #[test]
    fn thm3_alpha_terms() {
        for p in [2u32, 3, 5, 7] {
            let f = Field::prime(p).unwrap();
            let row = thm3_row(&f, 4).unwrap();
            let alg = crate::lattice::SubspaceAlgebra::new(&f, 3);
            let ev = |t: &LatticeTerm| t.eval(&alg, &row, &HashMap::new()).unwrap();
            let mut a = Thm3Alpha::new();
            assert_eq!(ev(&a.p4), vecs(&f, &[&[1, 1, -1]]));
            for s in 0..9 {
                assert_eq!(ev(&a.s(s)), vecs(&f, &[&[s as i64, 0, -1]]), "p={p} s={s}");
            }
            assert_eq!(ev(&a.c23()), vecs(&f, &[&[0, 1, -1]]));
            assert_eq!(ev(&a.c21()), vecs(&f, &[&[1, -1, 0]]));
            for s in 1..p as i64 {
                let inv = f.inv(&f.from_i64(s)).unwrap();
                let want = Subspace::point(&f, vec![inv, f.zero(), f.from_i64(-1)]).unwrap();
                let st = a.s(s as usize);
                let got = ev(&a.recip(&st));
                assert_eq!(got, want, "p={p} s={s}");
            }
            // 1/0 is the point at infinity p1
            assert_eq!(ev(&a.recip(&xi(3))), row[0]);
        }
    }

    #[test]
    fn thm3_beta_values() {
        let (f2, f3, q) = (gf("2"), gf("3"), gf("Q"));
        let orders = [2, 3];
        let eval_on = |t: &LatticeTerm, f: &Field| {
            let alg = crate::lattice::SubspaceAlgebra::new(f, 3);
            t.eval(&alg, &thm3_row(f, 4).unwrap(), &HashMap::new())
                .unwrap()
        };
        let mut a = Thm3Alpha::new();
        let b3 = thm3_beta_p3(&f3, &orders, &mut a).unwrap();
        assert_eq!(eval_on(&b3, &f3), vecs(&f3, &[&[0, 0, 1]]));
        assert_eq!(eval_on(&b3, &f2).rank(), 0);
        assert_eq!(eval_on(&b3, &q).rank(), 0);
        let bq = thm3_beta_p3(&q, &orders, &mut a).unwrap();
        assert_eq!(eval_on(&bq, &q), vecs(&q, &[&[0, 0, 1]]));
        assert_eq!(eval_on(&bq, &f2).rank(), 0);
        assert_eq!(eval_on(&bq, &f3).rank(), 0);
    }

    #[test]
    fn thm3_certificates() {
        let (f2, f3, f5, q) = (gf("2"), gf("3"), gf("5"), gf("Q"));
        let r = thm3_generators(&[(f2.clone(), 4), (f3.clone(), 4)]).unwrap();
        assert_eq!(r.instance.factors.len(), 8);
        assert_eq!(r.generator_count(), 4);
        assert!(r.certificate_is_kronecker().unwrap());
        let r = thm3_generators(&[(f2.clone(), 2), (f5, 1), (q, 1)]).unwrap();
        assert!(r.certificate_is_kronecker().unwrap());
        let rep = r
            .verify(VerifyMode::Fgtln, VerifyOptions::default())
            .unwrap();
        assert_eq!(rep.generates, crate::lattice::Verdict::Undetermined);
        let one = thm3_generators(&[(f2.clone(), 1)]).unwrap();
        assert_eq!(one.instance.row(0), thm3_row(&f2, 4).unwrap());
        assert!(matches!(
            thm3_generators(&[(f2.clone(), 5)]),
            Err(ConstructionError::MultiplicityTooHigh { m: 5, .. })
        ));
        assert!(thm3_generators(&[(f2.clone(), 1), (f2, 2)]).is_err());
        assert!(thm3_generators(&[(gf("2^2"), 1)]).is_err());
    }

    #[test]
    fn thm3_small_product_closes() {
        let r = thm3_generators(&[(gf("2"), 1), (gf("3"), 1)]).unwrap();
        let rep = r
            .verify(VerifyMode::Closure, VerifyOptions::default())
            .unwrap();
        assert_eq!(rep.closure_size, Some(448));
        let cert = r
            .verify(VerifyMode::Fgtln, VerifyOptions::default())
            .unwrap();
        assert_eq!(cert.generates, rep.generates);
    }

    #[test]
    fn fano_sublattice() {
        let l = fano_labelled();
        let mut names: Vec<&str> = l.labels().iter().map(|s| s.as_str()).collect();
        names.sort();
        assert_eq!(names.len(), 16);
        let c = fano_check();
        assert_eq!(c.elements.len(), 50);
        assert!(!c.contains_one_zero);
        assert!(c.contains_zero_c);
        assert!(c.matches_expected);
    }
}
