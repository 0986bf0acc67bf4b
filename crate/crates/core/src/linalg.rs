//! Row reduction and subspaces of `F^d` in canonical form.

use std::fmt;

use serde_json::Value;
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

pub type Vector = Vec<Scalar>;
pub type Matrix = Vec<Vector>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector of length {got} in a space of dimension {want}")]
    DimMismatch { want: usize, got: usize },
    #[error("subspaces over different fields or of different dimensions")]
    SpaceMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("malformed subspace encoding: {0}")]
    Encoding(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Reduced row echelon form. Returns the nonzero rows and the pivot columns.
pub fn rref(field: &Field, rows: &[Vector]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(&m[r][c]).expect("pivot is nonzero");
        if !field.is_one(&inv) {
            for x in m[r].iter_mut().skip(c) {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(field: &Field, rows: &[Vector]) -> usize {
    rref(field, rows).1.len()
}

/// Basis of `{ x : rows * x^T = 0 }`.
pub fn nullspace(field: &Field, rows: &[Vector], ncols: usize) -> Matrix {
    let (r, pivots) = rref(field, rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = field.neg(&row[f]);
            }
            v
        })
        .collect()
}

pub fn mat_mul(field: &Field, a: &[Vector], b: &[Vector]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| {
                        field.add(&acc, &field.mul(&row[k], &b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_inverse(field: &Field, m: &[Vector]) -> Result<Matrix, LinalgError> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(field, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(LinalgError::Singular);
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A subspace of `F^dim`, stored by its reduced row echelon basis so that
/// equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn span(field: &Field, dim: usize, rows: &[Vector]) -> Result<Subspace, LinalgError> {
        for r in rows {
            if r.len() != dim {
                return Err(LinalgError::DimMismatch {
                    want: dim,
                    got: r.len(),
                });
            }
            if !r.iter().all(|x| field.validate(x)) {
                return Err(LinalgError::Encoding("scalar outside the field".into()));
            }
        }
        Ok(Self::span_unchecked(field, dim, rows))
    }

    fn span_unchecked(field: &Field, dim: usize, rows: &[Vector]) -> Subspace {
        let (basis, _) = rref(field, rows);
        Subspace {
            field: field.clone(),
            dim,
            basis,
        }
    }

    pub fn zero(field: &Field, dim: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            dim,
            basis: vec![],
        }
    }

    pub fn full(field: &Field, dim: usize) -> Subspace {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        Subspace {
            field: field.clone(),
            dim,
            basis,
        }
    }

    /// Span of a single vector.
    pub fn point(field: &Field, v: Vector) -> Result<Subspace, LinalgError> {
        let d = v.len();
        Self::span(field, d, &[v])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn same_space(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.dim != other.dim || self.field != other.field {
            return Err(LinalgError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.iter().all(|x| self.field.is_zero(x)) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&self.field, &rows) == self.basis.len()
    }

    pub fn leq(&self, other: &Subspace) -> bool {
        self.rank() <= other.rank() && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn join(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.same_space(other)?;
        Ok(self.join_unchecked(other))
    }

    pub(crate) fn join_unchecked(&self, other: &Subspace) -> Subspace {
        if other.basis.is_empty() || self.basis.len() == self.dim {
            return self.clone();
        }
        if self.basis.is_empty() || other.basis.len() == self.dim {
            return other.clone();
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::span_unchecked(&self.field, self.dim, &rows)
    }

    /// Intersection by the Zassenhaus procedure.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.same_space(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Subspace) -> Subspace {
        let f = &self.field;
        let d = self.dim;
        if self.basis.is_empty() || other.basis.len() == d {
            return self.clone();
        }
        if other.basis.is_empty() || self.basis.len() == d {
            return other.clone();
        }
        let mut rows: Matrix = Vec::with_capacity(self.basis.len() + other.basis.len());
        for a in &self.basis {
            let mut r = a.clone();
            r.extend(a.iter().cloned());
            rows.push(r);
        }
        for b in &other.basis {
            let mut r = b.clone();
            r.extend(std::iter::repeat_n(f.zero(), d));
            rows.push(r);
        }
        let (red, _) = rref(f, &rows);
        let inter: Matrix = red
            .into_iter()
            .filter(|r| r[..d].iter().all(|x| f.is_zero(x)))
            .map(|r| r[d..].to_vec())
            .collect();
        Self::span_unchecked(f, d, &inter)
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn perp(&self) -> Subspace {
        let ns = nullspace(&self.field, &self.basis, self.dim);
        Self::span_unchecked(&self.field, self.dim, &ns)
    }

    /// Image under `v -> v * m` for a `dim x dim` matrix.
    pub fn transform(&self, m: &[Vector]) -> Subspace {
        let img = mat_mul(&self.field, &self.basis, m);
        Self::span_unchecked(&self.field, self.dim, &img)
    }

    /// Same coordinates read in a larger field (the caller guarantees that
    /// every coordinate lies in a common subfield).
    pub fn with_field(&self, field: &Field, map: impl Fn(&Scalar) -> Scalar) -> Subspace {
        let rows: Matrix = self
            .basis
            .iter()
            .map(|r| r.iter().map(&map).collect())
            .collect();
        Self::span_unchecked(field, self.dim, &rows)
    }

    /// All vectors of the subspace (finite fields only), in code order of
    /// the coefficient tuples.
    pub fn vectors(&self) -> Result<Vec<Vector>, LinalgError> {
        let els = self.field.elements()?;
        let mut out = vec![vec![self.field.zero(); self.dim]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * els.len());
            for v in &out {
                for c in &els {
                    next.push(
                        v.iter()
                            .zip(b)
                            .map(|(x, y)| self.field.add(x, &self.field.mul(c, y)))
                            .collect(),
                    );
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// JSON encoding: a list of basis rows of element strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.basis
                .iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|x| Value::String(self.field.format_element(x)))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Accepts rows whose entries are strings or integers; rows need not be
    /// independent or reduced.
    pub fn from_json(field: &Field, dim: usize, v: &Value) -> Result<Subspace, LinalgError> {
        let rows = v
            .as_array()
            .ok_or_else(|| LinalgError::Encoding("expected a list of rows".into()))?;
        let mut m = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r
                .as_array()
                .ok_or_else(|| LinalgError::Encoding("expected a row list".into()))?;
            let row = r
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(field.parse_element(s)?),
                    Value::Number(n) => {
                        let i = n
                            .as_i64()
                            .ok_or_else(|| LinalgError::Encoding(format!("bad number {n}")))?;
                        Ok(field.from_i64(i))
                    }
                    other => Err(LinalgError::Encoding(format!("bad entry {other}"))),
                })
                .collect::<Result<Vector, LinalgError>>()?;
            m.push(row);
        }
        Self::span(field, dim, &m)
    }

    /// Compact text form, e.g. `<[1,0,-1]>`; `0` and `1` for the bounds.
    pub fn short(&self) -> String {
        if self.basis.is_empty() {
            return "0".into();
        }
        if self.basis.len() == self.dim && self.dim > 1 {
            return "1".into();
        }
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let xs: Vec<String> = r.iter().map(|x| self.field.signed_repr(x)).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        format!("<{}>", rows.join(","))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

/// Every subspace of `F^d` (finite fields), ordered by rank, then pivot set,
/// then free entries. Index 0 is the zero space and the last is `F^d`.
pub fn all_subspaces(field: &Field, d: usize) -> Result<Vec<Subspace>, LinalgError> {
    let els = field.elements()?;
    let mut out = Vec::new();
    for r in 0..=d {
        for pivots in combinations(d, r) {
            // free positions: row i, column c > pivots[i], c not a pivot
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let pv = pivots.clone();
                    ((pivots[i] + 1)..d)
                        .filter(move |c| !pv.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let mut counter = vec![0usize; free.len()];
            loop {
                let mut basis = vec![vec![field.zero(); d]; r];
                for (i, &p) in pivots.iter().enumerate() {
                    basis[i][p] = field.one();
                }
                for (k, &(i, c)) in free.iter().enumerate() {
                    basis[i][c] = els[counter[k]].clone();
                }
                out.push(Subspace {
                    field: field.clone(),
                    dim: d,
                    basis,
                });
                // odometer, last position fastest
                let mut done = true;
                for k in (0..free.len()).rev() {
                    counter[k] += 1;
                    if counter[k] < els.len() {
                        done = false;
                        break;
                    }
                    counter[k] = 0;
                }
                if done {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// `r`-subsets of `0..n` in lexicographic order, generated lazily.
pub fn combinations(n: usize, r: usize) -> Combinations {
    Combinations {
        n,
        cur: (0..r).collect(),
        done: r > n,
    }
}

pub struct Combinations {
    n: usize,
    cur: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let r = self.cur.len();
        // rightmost position that can still move right
        match (0..r).rev().find(|&i| self.cur[i] < self.n - r + i) {
            Some(i) => {
                self.cur[i] += 1;
                for j in i + 1..r {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}
