//! The projective view of `Sub(F^d)`: canonical frames, coordinate rings
//! computed by lattice terms, projectivities, reciprocals and a few plane
//! geometry tools.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError, FieldKind, Scalar};
use crate::lattice::{LatticeError, LatticeTerm, SubspaceAlgebra};
use crate::linalg::{
    combinations, mat_inverse, mat_mul, rank, LinalgError, Matrix, Subspace, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectiveError {
    #[error("frames need dimension at least 3, got {0}")]
    DimTooSmall(usize),
    #[error("bad frame indices {0:?}")]
    BadIndices(Vec<usize>),
    #[error("{0} is not in the coordinate ring R({1},{2})")]
    NotInCoordinateRing(String, usize, usize),
    #[error("{0} is not below a_{1} v a_{2}")]
    OutOfInterval(String, usize, usize),
    #[error("{0} is a point at infinity")]
    PointAtInfinity(String),
    #[error("{0} is not a point")]
    NotAPoint(String),
    #[error("expected two atoms of one subspace lattice")]
    NotAtoms,
    #[error("{0} is neither a point nor a line")]
    NotPointOrLine(String),
    #[error("points are not in general position")]
    DegenerateQuadrangle,
    #[error("{0} is not a subfield of {1}")]
    NotASubfield(String, String),
    #[error("bad point literal {0:?}: {1}")]
    Parse(String, String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

type Result<T> = std::result::Result<T, ProjectiveError>;

fn unit(field: &Field, d: usize, i: usize, v: Scalar) -> Vector {
    (0..d)
        .map(|k| if k == i { v.clone() } else { field.zero() })
        .collect()
}

/// Name of the constant standing for `a_i`.
pub fn a_name(i: usize) -> String {
    format!("a{i}")
}

/// Name of the constant standing for `c_{i,j} = c_{j,i}`.
pub fn c_name(i: usize, j: usize) -> String {
    format!("c{}_{}", i.min(j), i.max(j))
}

/// A point of the projective space, rendered with the last coordinate `-1`
/// for finite points and a leading `1` at infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint(Subspace);

impl ProjectivePoint {
    pub fn new(s: Subspace) -> Result<Self> {
        if s.rank() != 1 {
            return Err(ProjectiveError::NotAPoint(s.short()));
        }
        Ok(ProjectivePoint(s))
    }

    pub fn from_coords(field: &Field, coords: Vector) -> Result<Self> {
        Self::new(Subspace::point(field, coords)?)
    }

    /// Parses `[x1,...,xd]`; the entries need not be normalized.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let bad = |why: &str| ProjectiveError::Parse(s.to_string(), why.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected [x1,...,xd]"))?;
        let coords = inner
            .split(',')
            .map(|t| field.parse_element(t))
            .collect::<std::result::Result<Vector, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        if coords.iter().all(|x| field.is_zero(x)) {
            return Err(bad("the zero vector is not a point"));
        }
        Self::from_coords(field, coords)
    }

    pub fn subspace(&self) -> &Subspace {
        &self.0
    }

    pub fn into_subspace(self) -> Subspace {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        let v = &self.0.basis()[0];
        !self.0.field().is_zero(&v[v.len() - 1])
    }

    /// Homogeneous coordinates in the rendering normalization.
    pub fn coords(&self) -> Vector {
        let f = self.0.field();
        let v = &self.0.basis()[0];
        let last = &v[v.len() - 1];
        if f.is_zero(last) {
            return v.clone();
        }
        let s = f.div(&f.neg(&f.one()), last).expect("nonzero");
        v.iter().map(|x| f.mul(x, &s)).collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.0.field();
        let xs: Vec<String> = self.coords().iter().map(|x| f.signed_repr(x)).collect();
        write!(out, "[{}]", xs.join(","))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which leg of a perspectivity is replaced by the new index `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectivityKind {
    /// `[0, a_p v a_q] -> [0, a_r v a_q]`.
    RForP,
    /// `[0, a_p v a_q] -> [0, a_p v a_r]`.
    RForQ,
}

/// Symbols for the frame components inside terms: named constants by
/// default, or arbitrary terms (e.g. terms in generators).
#[derive(Clone, Debug)]
pub struct FrameSymbols {
    d: usize,
    a: Vec<LatticeTerm>,
    c: Vec<Option<LatticeTerm>>,
}

impl FrameSymbols {
    pub fn constants(d: usize) -> Self {
        Self::from_fn(
            d,
            |i| LatticeTerm::constant(a_name(i)),
            |i, j| LatticeTerm::constant(c_name(i, j)),
        )
    }

    /// `a(i)` and `c(i, j)` use 1-based indices; `c` is asked for `i < j`
    /// only.
    pub fn from_fn(
        d: usize,
        a: impl Fn(usize) -> LatticeTerm,
        c: impl Fn(usize, usize) -> LatticeTerm,
    ) -> Self {
        let a = (1..=d).map(a).collect();
        let mut cs = vec![None; d * d];
        for i in 1..=d {
            for j in i + 1..=d {
                let t = c(i, j);
                cs[(i - 1) * d + j - 1] = Some(t.clone());
                cs[(j - 1) * d + i - 1] = Some(t);
            }
        }
        FrameSymbols { d, a, c: cs }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn a(&self, i: usize) -> LatticeTerm {
        self.a[i - 1].clone()
    }

    pub fn c(&self, i: usize, j: usize) -> LatticeTerm {
        self.c[(i - 1) * self.d + j - 1]
            .clone()
            .expect("c_{i,i} is not a frame component")
    }

    fn aa(&self, i: usize, j: usize) -> LatticeTerm {
        self.a(i).join(&self.a(j))
    }

    /// `(x v c_{p,r}) ^ (a_r v a_q)`.
    pub fn r_for_p(&self, p: usize, q: usize, r: usize, x: &LatticeTerm) -> LatticeTerm {
        x.join(&self.c(p, r)).meet(&self.aa(r, q))
    }

    /// `(x v c_{q,r}) ^ (a_p v a_r)`.
    pub fn r_for_q(&self, p: usize, q: usize, r: usize, x: &LatticeTerm) -> LatticeTerm {
        x.join(&self.c(q, r)).meet(&self.aa(p, r))
    }

    pub fn projectivity(
        &self,
        kind: ProjectivityKind,
        p: usize,
        q: usize,
        r: usize,
        x: &LatticeTerm,
    ) -> LatticeTerm {
        match kind {
            ProjectivityKind::RForP => self.r_for_p(p, q, r, x),
            ProjectivityKind::RForQ => self.r_for_q(p, q, r, x),
        }
    }

    pub fn add(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &LatticeTerm,
        y: &LatticeTerm,
    ) -> LatticeTerm {
        let left = x.join(&self.a(k)).meet(&self.c(i, k).join(&self.a(j)));
        self.aa(i, j).meet(&left.join(&self.r_for_p(i, j, k, y)))
    }

    pub fn mul(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &LatticeTerm,
        y: &LatticeTerm,
    ) -> LatticeTerm {
        self.aa(i, j)
            .meet(&self.r_for_q(i, j, k, x).join(&self.r_for_p(i, j, k, y)))
    }

    pub fn sub(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &LatticeTerm,
        y: &LatticeTerm,
    ) -> LatticeTerm {
        let inner = self
            .c(j, k)
            .join(x)
            .meet(&self.a(j).join(&self.r_for_q(i, j, k, y)));
        self.aa(i, j).meet(&self.a(k).join(&inner))
    }

    pub fn recip(&self, i: usize, j: usize, k: usize, x: &LatticeTerm) -> LatticeTerm {
        let z = x.join(&self.c(k, i)).meet(&self.aa(j, k));
        let y = z.join(&self.c(j, i)).meet(&self.aa(k, i));
        y.join(&self.c(k, j)).meet(&self.aa(i, j))
    }

    /// `(a_iota v a_d) ^ (u v join of a_j for j < d, j != iota)`.
    pub fn extract(&self, iota: usize, u: &LatticeTerm) -> LatticeTerm {
        let d = self.d;
        let others = (1..d).filter(|&j| j != iota).map(|j| self.a(j));
        let big = LatticeTerm::join_all(std::iter::once(u.clone()).chain(others));
        self.aa(iota, d).meet(&big)
    }
}

/// The canonical frame: `a_i = F v_i` and `c_{i,j} = F (v_i - v_j)`.
#[derive(Clone, Debug)]
pub struct Frame {
    field: Field,
    d: usize,
    a: Vec<Subspace>,
    c: Vec<Subspace>,
    bindings: HashMap<String, Subspace>,
    symbols: FrameSymbols,
}

pub fn canonical_frame(field: &Field, d: usize) -> Result<Frame> {
    Frame::canonical(field, d)
}

impl Frame {
    pub fn canonical(field: &Field, d: usize) -> Result<Frame> {
        if d < 3 {
            return Err(ProjectiveError::DimTooSmall(d));
        }
        let a: Vec<Subspace> = (0..d)
            .map(|i| Subspace::point(field, unit(field, d, i, field.one())))
            .collect::<std::result::Result<_, _>>()?;
        let mut c = vec![Subspace::zero(field, d); d * d];
        let mut bindings = HashMap::new();
        for i in 0..d {
            bindings.insert(a_name(i + 1), a[i].clone());
            for j in 0..d {
                if i != j {
                    let mut v = unit(field, d, i, field.one());
                    v[j] = field.neg(&field.one());
                    c[i * d + j] = Subspace::point(field, v)?;
                    bindings.insert(c_name(i + 1, j + 1), c[i * d + j].clone());
                }
            }
        }
        Ok(Frame {
            field: field.clone(),
            d,
            a,
            c,
            bindings,
            symbols: FrameSymbols::constants(d),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn a(&self, i: usize) -> &Subspace {
        &self.a[i - 1]
    }

    pub fn c(&self, i: usize, j: usize) -> &Subspace {
        assert!(i != j, "c_{{i,i}} is not a frame component");
        &self.c[(i - 1) * self.d + j - 1]
    }

    /// The canonical rendering of `c_{i,j}`: `1` at `i`, `-1` at `j`.
    pub fn c_coords(&self, i: usize, j: usize) -> Vector {
        let f = &self.field;
        let mut v = unit(f, self.d, i - 1, f.one());
        v[j - 1] = f.neg(&f.one());
        v
    }

    /// Values of the constants used by [`FrameSymbols::constants`].
    pub fn bindings(&self) -> &HashMap<String, Subspace> {
        &self.bindings
    }

    pub fn symbols(&self) -> &FrameSymbols {
        &self.symbols
    }

    pub fn algebra(&self) -> SubspaceAlgebra {
        SubspaceAlgebra::new(&self.field, self.d)
    }

    /// Evaluates a term over this frame's constants.
    pub fn eval(&self, t: &LatticeTerm, vars: &[Subspace]) -> Result<Subspace> {
        Ok(t.eval(&self.algebra(), vars, &self.bindings)?)
    }

    /// `c_{i,j} v a_j = a_i v a_j`, `c_{i,j} ^ a_j = 0` and the `a_i` join
    /// to the top.
    pub fn check_laws(&self) -> bool {
        let d = self.d;
        let top = Subspace::full(&self.field, d);
        let all = self
            .a
            .iter()
            .fold(Subspace::zero(&self.field, d), |acc, x| {
                acc.join_unchecked(x)
            });
        if all != top {
            return false;
        }
        (1..=d).all(|i| {
            (1..=d).filter(|&j| j != i).all(|j| {
                let aij = self.a(i).join_unchecked(self.a(j));
                self.c(i, j).join_unchecked(self.a(j)) == aij
                    && self.c(i, j).meet_unchecked(self.a(j)).rank() == 0
            })
        })
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        let ok = idx.iter().all(|&i| (1..=self.d).contains(&i))
            && idx.iter().enumerate().all(|(n, i)| !idx[..n].contains(i));
        if ok {
            Ok(())
        } else {
            Err(ProjectiveError::BadIndices(idx.to_vec()))
        }
    }

    fn check_space(&self, x: &Subspace) -> Result<()> {
        if x.field() != &self.field || x.ambient_dim() != self.d {
            return Err(LinalgError::SpaceMismatch.into());
        }
        Ok(())
    }

    /// `x v a_j = a_i v a_j` and `x ^ a_j = 0`.
    pub fn in_coordinate_ring(&self, i: usize, j: usize, x: &Subspace) -> bool {
        x.join_unchecked(self.a(j)) == self.a(i).join_unchecked(self.a(j))
            && x.meet_unchecked(self.a(j)).rank() == 0
    }

    fn require_ring(&self, i: usize, j: usize, x: &Subspace) -> Result<()> {
        self.check_space(x)?;
        if !self.in_coordinate_ring(i, j, x) {
            return Err(ProjectiveError::NotInCoordinateRing(x.short(), i, j));
        }
        Ok(())
    }

    /// `r` at position `j`, `-1` at position `i`.
    pub fn delta(&self, i: usize, j: usize, r: &Scalar) -> Result<ProjectivePoint> {
        self.check_indices(&[i, j])?;
        if !self.field.validate(r) {
            return Err(LinalgError::Encoding("scalar outside the field".into()).into());
        }
        let f = &self.field;
        let mut v = unit(f, self.d, j - 1, r.clone());
        v[i - 1] = f.neg(&f.one());
        ProjectivePoint::from_coords(f, v)
    }

    /// Inverse of [`Frame::delta`].
    pub fn delta_read(&self, i: usize, j: usize, x: &Subspace) -> Result<Scalar> {
        self.check_indices(&[i, j])?;
        self.require_ring(i, j, x)?;
        let f = &self.field;
        let v = &x.basis()[0];
        Ok(f.div(&v[j - 1], &f.neg(&v[i - 1]))
            .expect("a_j is not below x"))
    }

    pub fn projectivity(
        &self,
        kind: ProjectivityKind,
        p: usize,
        q: usize,
        r: usize,
        x: &Subspace,
    ) -> Result<Subspace> {
        self.check_indices(&[p, q, r])?;
        self.check_space(x)?;
        if !x.leq(&self.a(p).join_unchecked(self.a(q))) {
            return Err(ProjectiveError::OutOfInterval(x.short(), p, q));
        }
        let t = self
            .symbols
            .projectivity(kind, p, q, r, &LatticeTerm::var(0));
        self.eval(&t, std::slice::from_ref(x))
    }

    fn binary(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &Subspace,
        y: &Subspace,
        t: LatticeTerm,
    ) -> Result<Subspace> {
        self.check_indices(&[i, j, k])?;
        self.require_ring(i, j, x)?;
        self.require_ring(i, j, y)?;
        self.eval(&t, &[x.clone(), y.clone()])
    }

    pub fn coring_add(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &Subspace,
        y: &Subspace,
    ) -> Result<Subspace> {
        let t = self
            .symbols
            .add(i, j, k, &LatticeTerm::var(0), &LatticeTerm::var(1));
        self.binary(i, j, k, x, y, t)
    }

    pub fn coring_mul(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &Subspace,
        y: &Subspace,
    ) -> Result<Subspace> {
        let t = self
            .symbols
            .mul(i, j, k, &LatticeTerm::var(0), &LatticeTerm::var(1));
        self.binary(i, j, k, x, y, t)
    }

    pub fn coring_sub(
        &self,
        i: usize,
        j: usize,
        k: usize,
        x: &Subspace,
        y: &Subspace,
    ) -> Result<Subspace> {
        let t = self
            .symbols
            .sub(i, j, k, &LatticeTerm::var(0), &LatticeTerm::var(1));
        self.binary(i, j, k, x, y, t)
    }

    /// The reciprocal in `R(i,j)`; the ring zero `a_i` goes to `a_j`.
    pub fn coring_recip(&self, i: usize, j: usize, k: usize, x: &Subspace) -> Result<Subspace> {
        self.check_indices(&[i, j, k])?;
        self.require_ring(i, j, x)?;
        let t = self.symbols.recip(i, j, k, &LatticeTerm::var(0));
        self.eval(&t, std::slice::from_ref(x))
    }

    /// The element of `R(d, iota)` carrying the `iota`-th coordinate of a
    /// finite point.
    pub fn extract_coordinate(&self, u: &Subspace, iota: usize) -> Result<Subspace> {
        self.check_space(u)?;
        if iota == 0 || iota >= self.d {
            return Err(ProjectiveError::BadIndices(vec![iota]));
        }
        let p = ProjectivePoint::new(u.clone())?;
        if !p.is_finite() {
            return Err(ProjectiveError::PointAtInfinity(p.to_string()));
        }
        let t = self.symbols.extract(iota, &LatticeTerm::var(0));
        self.eval(&t, std::slice::from_ref(u))
    }
}

/// For distinct atoms `a`, `b` the atom spanned by `w_a + w_b`, where each
/// `w` is the spanning vector scaled to coordinate sum 1 (or, when the sum
/// vanishes, to a leading 1). Equal atoms give the bottom.
pub fn third_atom(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    if a.rank() != 1
        || b.rank() != 1
        || a.field() != b.field()
        || a.ambient_dim() != b.ambient_dim()
    {
        return Err(ProjectiveError::NotAtoms);
    }
    let f = a.field();
    if a == b {
        return Ok(Subspace::zero(f, a.ambient_dim()));
    }
    let norm = |v: &Vector| -> Vector {
        let s = v.iter().fold(f.zero(), |acc, x| f.add(&acc, x));
        let s = if f.is_zero(&s) {
            v.iter().find(|x| !f.is_zero(x)).unwrap().clone()
        } else {
            s
        };
        let inv = f.inv(&s).expect("nonzero");
        v.iter().map(|x| f.mul(x, &inv)).collect()
    };
    let (wa, wb) = (norm(&a.basis()[0]), norm(&b.basis()[0]));
    let sum: Vector = wa.iter().zip(&wb).map(|(x, y)| f.add(x, y)).collect();
    Ok(Subspace::point(f, sum)?)
}

fn height_point_or_line(x: &Subspace) -> Result<usize> {
    match x.rank() {
        1 | 2 => Ok(x.rank()),
        _ => Err(ProjectiveError::NotPointOrLine(x.short())),
    }
}

/// Number of points and of lines.
pub fn type_of(quad: &[Subspace]) -> Result<(usize, usize)> {
    let hs = ftype_of(quad)?;
    let points = hs.iter().filter(|&&h| h == 1).count();
    Ok((points, hs.len() - points))
}

/// The heights, in order.
pub fn ftype_of(quad: &[Subspace]) -> Result<Vec<usize>> {
    quad.iter().map(height_point_or_line).collect()
}

/// Antichain, no three collinear points and no three concurrent lines.
pub fn general_position(quad: &[Subspace]) -> Result<bool> {
    ftype_of(quad)?;
    for (n, x) in quad.iter().enumerate() {
        for y in &quad[..n] {
            if x.leq(y) || y.leq(x) {
                return Ok(false);
            }
        }
    }
    let points: Vec<&Subspace> = quad.iter().filter(|x| x.rank() == 1).collect();
    let lines: Vec<&Subspace> = quad.iter().filter(|x| x.rank() == 2).collect();
    for t in combinations(points.len(), 3) {
        let j = points[t[0]]
            .join_unchecked(points[t[1]])
            .join_unchecked(points[t[2]]);
        if j.rank() <= 2 {
            return Ok(false);
        }
    }
    for t in combinations(lines.len(), 3) {
        let m = lines[t[0]]
            .meet_unchecked(lines[t[1]])
            .meet_unchecked(lines[t[2]]);
        if m.rank() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The quadrangle `[1,0,0], [0,1,0], [0,0,-1], [1,1,-1]`.
pub fn canonical_quadrangle(field: &Field) -> Vec<Subspace> {
    let (o, z, m) = (field.one(), field.zero(), field.neg(&field.one()));
    [[&o, &z, &z], [&z, &o, &z], [&z, &z, &m], [&o, &o, &m]]
        .iter()
        .map(|v| Subspace::point(field, v.iter().map(|&x| x.clone()).collect()).expect("nonzero"))
        .collect()
}

/// Rows `lambda_i p_i` with `sum lambda_i p_i = p_{d+1}`: the matrix sending
/// `e_i` to `p_i` and the all-ones vector to `p_{d+1}`, up to scalars.
fn frame_matrix(field: &Field, pts: &[Subspace]) -> Result<Matrix> {
    let d = pts[0].ambient_dim();
    let p: Matrix = pts[..d].iter().map(|x| x.basis()[0].clone()).collect();
    let inv = mat_inverse(field, &p).map_err(|_| ProjectiveError::DegenerateQuadrangle)?;
    let lambda = mat_mul(field, &[pts[d].basis()[0].clone()], &inv).remove(0);
    if lambda.iter().any(|l| field.is_zero(l)) {
        return Err(ProjectiveError::DegenerateQuadrangle);
    }
    Ok(p.iter()
        .zip(&lambda)
        .map(|(row, l)| row.iter().map(|x| field.mul(x, l)).collect())
        .collect())
}

fn in_general_position(pts: &[Subspace]) -> bool {
    let d = pts[0].ambient_dim();
    combinations(pts.len(), d).all(|c| {
        let rows: Matrix = c.iter().map(|&i| pts[i].basis()[0].clone()).collect();
        rank(pts[0].field(), &rows) == d
    })
}

/// The projective map sending `src[i]` to `dst[i]` for `d + 1` points in
/// general position, as a matrix acting by `v -> v * m`, scaled so that its
/// first nonzero entry is 1.
pub fn quadrangle_transform(src: &[Subspace], dst: &[Subspace]) -> Result<Matrix> {
    let Some(first) = src.first() else {
        return Err(ProjectiveError::DegenerateQuadrangle);
    };
    let (field, d) = (first.field().clone(), first.ambient_dim());
    for x in src.iter().chain(dst) {
        if x.field() != &field || x.ambient_dim() != d {
            return Err(LinalgError::SpaceMismatch.into());
        }
        if x.rank() != 1 {
            return Err(ProjectiveError::NotAPoint(x.short()));
        }
    }
    if src.len() != d + 1
        || dst.len() != d + 1
        || !in_general_position(src)
        || !in_general_position(dst)
    {
        return Err(ProjectiveError::DegenerateQuadrangle);
    }
    let a = frame_matrix(&field, src)?;
    let b = frame_matrix(&field, dst)?;
    let t = mat_mul(&field, &mat_inverse(&field, &a)?, &b);
    let lead = t
        .iter()
        .flatten()
        .find(|x| !field.is_zero(x))
        .expect("invertible")
        .clone();
    let s = field.inv(&lead).expect("nonzero");
    let t: Matrix = t
        .iter()
        .map(|r| r.iter().map(|x| field.mul(x, &s)).collect())
        .collect();
    debug_assert!(src.iter().zip(dst).all(|(x, y)| &x.transform(&t) == y));
    Ok(t)
}

/// The `target`-span of `x`, for `x` over `target` itself or over its prime
/// subfield.
pub fn embed(x: &Subspace, target: &Field) -> Result<Subspace> {
    let src = x.field();
    if src == target {
        return Ok(x.clone());
    }
    if src.kind() == FieldKind::Prime
        && target.is_finite()
        && src.characteristic() == target.characteristic()
    {
        return Ok(x.with_field(target, |s| target.from_prime_subfield(s)));
    }
    Err(ProjectiveError::NotASubfield(
        src.to_string(),
        target.to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> Field {
        s.parse().unwrap()
    }

    fn pt(f: &Field, s: &str) -> Subspace {
        ProjectivePoint::parse(f, s).unwrap().into_subspace()
    }

    #[test]
    fn frame_components() {
        let f2 = gf("2");
        let fr = canonical_frame(&f2, 3).unwrap();
        assert_eq!(fr.a(3), &pt(&f2, "[0,0,1]"));
        assert_eq!(
            ProjectivePoint::new(fr.a(3).clone()).unwrap().to_string(),
            "[0,0,1]"
        );
        let f5 = gf("5");
        let fr = canonical_frame(&f5, 4).unwrap();
        assert_eq!(fr.c(1, 4), &pt(&f5, "[1,0,0,-1]"));
        assert_eq!(
            ProjectivePoint::new(fr.a(4).clone()).unwrap().to_string(),
            "[0,0,0,-1]"
        );
        assert!(fr.check_laws());
        assert!(matches!(
            canonical_frame(&f5, 2),
            Err(ProjectiveError::DimTooSmall(2))
        ));
    }

    #[test]
    fn rendering_and_parsing() {
        let f5 = gf("5");
        let p = ProjectivePoint::parse(&f5, "[ 4, 0, 2 ]").unwrap();
        assert_eq!(p.to_string(), "[3,0,-1]");
        assert!(p.is_finite());
        let q = ProjectivePoint::parse(&f5, "[0,3,0]").unwrap();
        assert_eq!(q.to_string(), "[0,1,0]");
        assert!(!q.is_finite());
        assert!(ProjectivePoint::parse(&f5, "[0,0,0]").is_err());
        assert!(ProjectivePoint::parse(&f5, "1,2,3").is_err());
    }

    #[test]
    fn delta_examples() {
        let f5 = gf("5");
        let fr = canonical_frame(&f5, 3).unwrap();
        assert_eq!(
            fr.delta(3, 1, &f5.from_i64(2)).unwrap().to_string(),
            "[2,0,-1]"
        );
        assert_eq!(fr.delta(3, 1, &f5.zero()).unwrap().subspace(), fr.a(3));
        let x = fr.delta(3, 1, &f5.from_i64(4)).unwrap();
        assert_eq!(fr.delta_read(3, 1, x.subspace()).unwrap(), f5.from_i64(4));
        assert!(matches!(
            fr.delta_read(3, 1, fr.a(1)),
            Err(ProjectiveError::NotInCoordinateRing(..))
        ));
        assert!(matches!(
            fr.delta(2, 2, &f5.one()),
            Err(ProjectiveError::BadIndices(_))
        ));
    }

    #[test]
    fn ring_operation_examples() {
        let f5 = gf("5");
        let fr = canonical_frame(&f5, 3).unwrap();
        let d = |r: i64| fr.delta(3, 1, &f5.from_i64(r)).unwrap().into_subspace();
        assert_eq!(fr.coring_add(3, 1, 2, &d(2), &d(4)).unwrap(), d(1));
        assert_eq!(fr.coring_add(3, 1, 2, &d(3), fr.a(3)).unwrap(), d(3));
        assert_eq!(fr.coring_mul(3, 1, 2, &d(2), &d(3)).unwrap(), d(1));
        assert_eq!(fr.coring_sub(3, 1, 2, &d(2), &d(4)).unwrap(), d(3));
        assert_eq!(fr.coring_recip(3, 1, 2, &d(2)).unwrap(), d(3));
        assert_eq!(fr.coring_recip(3, 1, 2, fr.c(1, 3)).unwrap(), *fr.c(1, 3));
        assert_eq!(fr.coring_recip(3, 1, 2, fr.a(3)).unwrap(), *fr.a(1));
        assert!(fr.coring_add(3, 1, 2, fr.a(1), &d(1)).is_err());
    }

    #[test]
    fn projectivity_examples() {
        let f5 = gf("5");
        let fr = canonical_frame(&f5, 3).unwrap();
        let x = fr.delta(3, 2, &f5.from_i64(3)).unwrap().into_subspace();
        let y = fr
            .projectivity(ProjectivityKind::RForQ, 3, 2, 1, &x)
            .unwrap();
        assert_eq!(y, fr.delta(3, 1, &f5.from_i64(3)).unwrap().into_subspace());
        assert_eq!(
            fr.projectivity(ProjectivityKind::RForP, 3, 2, 1, fr.a(3))
                .unwrap(),
            *fr.a(1)
        );
        assert_eq!(
            fr.projectivity(ProjectivityKind::RForQ, 3, 2, 1, fr.a(3))
                .unwrap(),
            *fr.a(3)
        );
        let outside = pt(&f5, "[1,1,1]");
        assert!(matches!(
            fr.projectivity(ProjectivityKind::RForP, 3, 2, 1, &outside),
            Err(ProjectiveError::OutOfInterval(..))
        ));
        let f5d4 = canonical_frame(&f5, 4).unwrap();
        for r in 0..5 {
            let x = f5d4.delta(4, 3, &f5.from_i64(r)).unwrap().into_subspace();
            let y = f5d4
                .projectivity(ProjectivityKind::RForQ, 4, 3, 1, &x)
                .unwrap();
            assert_eq!(
                y,
                f5d4.delta(4, 1, &f5.from_i64(r)).unwrap().into_subspace()
            );
        }
    }

    #[test]
    fn extraction_examples() {
        let f5 = gf("5");
        let fr = canonical_frame(&f5, 3).unwrap();
        let u = pt(&f5, "[2,3,-1]");
        let want = fr.delta(3, 2, &f5.from_i64(3)).unwrap().into_subspace();
        assert_eq!(fr.extract_coordinate(&u, 2).unwrap(), want);
        assert_eq!(fr.extract_coordinate(fr.a(3), 1).unwrap(), *fr.a(3));
        assert!(matches!(
            fr.extract_coordinate(fr.a(1), 2),
            Err(ProjectiveError::PointAtInfinity(_))
        ));
        let fr4 = canonical_frame(&f5, 4).unwrap();
        let u = pt(&f5, "[1,1,1,-1]");
        assert_eq!(
            fr4.extract_coordinate(&u, 3).unwrap(),
            fr4.delta(4, 3, &f5.one()).unwrap().into_subspace()
        );
    }

    #[test]
    fn third_atoms() {
        let f2 = gf("2");
        let a = pt(&f2, "[1,0,0]");
        let b = pt(&f2, "[0,1,0]");
        let c = third_atom(&a, &b).unwrap();
        assert_eq!(c, pt(&f2, "[1,1,0]"));
        assert_eq!(third_atom(&a, &a).unwrap().rank(), 0);
        let f5 = gf("5");
        let (a, b) = (pt(&f5, "[1,2,0]"), pt(&f5, "[0,1,-1]"));
        let c = third_atom(&a, &b).unwrap();
        let ab = a.join(&b).unwrap();
        assert!(c.leq(&ab) && c != a && c != b && c.rank() == 1);
        assert!(matches!(
            third_atom(&ab, &a),
            Err(ProjectiveError::NotAtoms)
        ));
    }

    #[test]
    fn types_and_general_position() {
        let f2 = gf("2");
        let (a1, a2, a3) = (pt(&f2, "[1,0,0]"), pt(&f2, "[0,1,0]"), pt(&f2, "[0,0,1]"));
        let c = pt(&f2, "[1,1,1]");
        let line = a1.join(&a2).unwrap();
        let quad = [a1.clone(), a2.clone(), a3.clone(), c.clone()];
        assert_eq!(type_of(&quad).unwrap(), (4, 0));
        assert!(general_position(&quad).unwrap());
        let mixed = [a1.clone(), a2.clone(), a3.clone(), line.clone()];
        assert_eq!(type_of(&mixed).unwrap(), (3, 1));
        assert_eq!(ftype_of(&mixed).unwrap(), vec![1, 1, 1, 2]);
        assert!(!general_position(&mixed).unwrap());
        let collinear = [a1.clone(), a2.clone(), pt(&f2, "[1,1,0]"), a3.clone()];
        assert!(!general_position(&collinear).unwrap());
        let top = Subspace::full(&f2, 3);
        assert!(matches!(
            type_of(&[top, a1, a2, a3]),
            Err(ProjectiveError::NotPointOrLine(_))
        ));
    }

    #[test]
    fn quadrangles() {
        let f5 = gf("5");
        let q = canonical_quadrangle(&f5);
        let id = quadrangle_transform(&q, &q).unwrap();
        let eye = Subspace::full(&f5, 3).basis().clone();
        assert_eq!(id, eye);
        let permuted = vec![q[1].clone(), q[0].clone(), q[2].clone(), q[3].clone()];
        let t = quadrangle_transform(&q, &permuted).unwrap();
        for (x, y) in q.iter().zip(&permuted) {
            assert_eq!(&x.transform(&t), y);
        }
        let bad = vec![q[0].clone(), q[1].clone(), pt(&f5, "[1,1,0]"), q[3].clone()];
        assert!(matches!(
            quadrangle_transform(&q, &bad),
            Err(ProjectiveError::DegenerateQuadrangle)
        ));
    }

    #[test]
    fn embedding() {
        let (f2, f4) = (gf("2"), gf("2^2"));
        let x = pt(&f2, "[1,1,0]");
        let y = embed(&x, &f4).unwrap();
        assert_eq!(y.rank(), 1);
        assert_eq!(y.field(), &f4);
        assert_eq!(
            embed(&Subspace::zero(&f2, 3), &f4).unwrap(),
            Subspace::zero(&f4, 3)
        );
        assert_eq!(
            embed(&Subspace::full(&f2, 3), &f4).unwrap(),
            Subspace::full(&f4, 3)
        );
        assert!(matches!(
            embed(&y, &f2),
            Err(ProjectiveError::NotASubfield(..))
        ));
        assert!(embed(&x, &gf("3")).is_err());
    }
}
