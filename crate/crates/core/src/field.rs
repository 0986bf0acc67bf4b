//! Exact scalar arithmetic over GF(p), GF(p^n) and the rationals.
//!
//! A [`Field`] is a cheap handle (reference counted) describing the field;
//! scalars are plain [`Scalar`] values interpreted relative to a field. Finite
//! field elements are encoded as a single integer code: the residue for prime
//! fields, and `c0 + c1*p + ... + c_{n-1}*p^{n-1}` for the coefficient vector
//! of an extension element. [`FieldElement`] pairs a scalar with its owner
//! and checks that binary operations do not mix fields.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest field order for which full addition and multiplication tables are
/// precomputed.
const TABLE_LIMIT: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("the rationals are infinite and cannot be enumerated")]
    InfiniteField,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0:?} is not irreducible of degree {1} over GF({2})")]
    NotIrreducible(Vec<u32>, u32, u32),
    #[error("field order {0} is too large")]
    TooLarge(u64),
    #[error("cannot parse field spec {0:?}: {1}")]
    BadSpec(String, String),
    #[error("cannot parse field element {0:?} in {1}")]
    BadElement(String, String),
    #[error("operation needs {0} operand(s)")]
    Arity(usize),
}

/// A cardinal number as used for `mng F` and Gaussian binomials over infinite
/// fields. Only ceiling division is defined on `Aleph0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cardinal {
    Finite(BigUint),
    Aleph0,
}

impl Cardinal {
    pub fn finite(n: u64) -> Self {
        Cardinal::Finite(BigUint::from(n))
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Cardinal::Finite(n) => u64::try_from(n).ok(),
            Cardinal::Aleph0 => None,
        }
    }

    /// `min { m : m * n >= self }` for a positive integer `n`.
    pub fn ceil_div(&self, n: u64) -> Cardinal {
        assert!(n > 0, "ceiling division by zero");
        match self {
            Cardinal::Finite(t) => {
                let n = BigUint::from(n);
                Cardinal::Finite((t + &n - 1u32) / n)
            }
            Cardinal::Aleph0 => Cardinal::Aleph0,
        }
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => f.write_str("aleph0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    Extension,
    Rationals,
}

/// A field scalar. `Fin` codes are only meaningful relative to a finite
/// [`Field`]; `Rat` is always kept reduced by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fin(u32),
    Rat(BigRational),
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

#[derive(Debug)]
struct FieldData {
    kind: FieldKind,
    p: u32,
    n: u32,
    /// Monic modulus, constant term first, length n + 1 (extension only).
    modulus: Vec<u32>,
    q: u64,
    neg: Vec<u32>,
    inv: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.p == other.0.p
                && self.0.n == other.0.n
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state);
        self.0.p.hash(state);
        self.0.n.hash(state);
        self.0.modulus.hash(state);
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p); coefficient
/// vectors are constant term first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let off = r.len() - dm;
        for (i, &mc) in m[..dm].iter().enumerate() {
            r[off + i] = (r[off + i] + (p - lead) * mc as u64) % p;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg);
    (0..count).map(move |mut code| {
        let mut v = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            v.push((code % p as u64) as u32);
            code /= p as u64;
        }
        v.push(1);
        v
    })
}

/// Irreducibility by exhaustive search for monic factors of degree up to n/2.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() as u32 - 1;
    if n == 0 || *modulus.last().unwrap() != 1 {
        return false;
    }
    (1..=n / 2)
        .all(|deg| monic_polys(p, deg).all(|f| poly_rem(modulus, &f, p).iter().any(|&c| c != 0)))
}

/// The built-in modulus: the first monic irreducible polynomial of degree `n`
/// when the lower coefficients `(c0, .., c_{n-1})` are read as a base-p
/// number with `c0` least significant.
pub fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    monic_polys(p, n)
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists for every degree")
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        Ok(Self::build(FieldKind::Prime, p, 1, vec![]))
    }

    /// GF(p^n) modulo `modulus` (constant term first, degree n). `None`
    /// selects [`default_modulus`]. A degree-one extension is the prime field.
    pub fn extension(p: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<Field, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(FieldError::BadSpec(
                format!("{p}^0"),
                "degree must be >= 1".into(),
            ));
        }
        if n == 1 && modulus.is_none() {
            return Self::prime(p);
        }
        let q = (p as u64).checked_pow(n).filter(|&q| q < (1u64 << 31));
        let Some(_) = q else {
            return Err(FieldError::TooLarge(u64::MAX));
        };
        let modulus = match modulus {
            None => default_modulus(p, n),
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|&c| c % p).collect();
                if m.len() as u32 != n + 1 || m[n as usize] == 0 {
                    return Err(FieldError::NotIrreducible(m, n, p));
                }
                // normalize to monic
                let lead_inv = pow_mod(m[n as usize] as u64, p as u64 - 2, p as u64);
                m.iter()
                    .map(|&c| (c as u64 * lead_inv % p as u64) as u32)
                    .collect()
            }
        };
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::NotIrreducible(modulus, n, p));
        }
        if n == 1 {
            return Self::prime(p);
        }
        Ok(Self::build(FieldKind::Extension, p, n, modulus))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(FieldData {
            kind: FieldKind::Rationals,
            p: 0,
            n: 1,
            modulus: vec![],
            q: 0,
            neg: vec![],
            inv: vec![],
            tables: None,
        }))
    }

    fn build(kind: FieldKind, p: u32, n: u32, modulus: Vec<u32>) -> Field {
        let q = (p as u64).pow(n);
        let tmp = Field(Arc::new(FieldData {
            kind,
            p,
            n,
            modulus: modulus.clone(),
            q,
            neg: vec![],
            inv: vec![],
            tables: None,
        }));
        let mut data = FieldData {
            kind,
            p,
            n,
            modulus,
            q,
            neg: vec![],
            inv: vec![],
            tables: None,
        };
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0u32; qs * qs];
            let mut mul = vec![0u32; qs * qs];
            for a in 0..qs {
                for b in 0..qs {
                    add[a * qs + b] = tmp.raw_add(a as u32, b as u32);
                    mul[a * qs + b] = tmp.raw_mul(a as u32, b as u32);
                }
            }
            data.tables = Some(Tables { add, mul });
        }
        if q <= 1 << 16 {
            data.neg = (0..q as u32).map(|a| tmp.raw_neg(a)).collect();
            data.inv = (0..q as u32)
                .map(|a| if a == 0 { 0 } else { tmp.raw_inv(a) })
                .collect();
        }
        Field(Arc::new(data))
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_finite(&self) -> bool {
        self.0.kind != FieldKind::Rationals
    }

    /// Number of elements; `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then_some(self.0.q)
    }

    pub fn cardinality(&self) -> Cardinal {
        match self.order() {
            Some(q) => Cardinal::finite(q),
            None => Cardinal::Aleph0,
        }
    }

    pub fn prime_subfield(&self) -> Field {
        match self.0.kind {
            FieldKind::Rationals | FieldKind::Prime => self.clone(),
            FieldKind::Extension => Field::prime(self.0.p).expect("characteristic is prime"),
        }
    }

    // --- raw finite-field arithmetic on codes ---

    fn digits(&self, mut code: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.n)
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.0.p + d)
    }

    fn raw_add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.n == 1 {
            return ((a as u64 + b as u64) % p as u64) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.undigits(&s)
    }

    fn raw_neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.n == 1 {
            return (p - a % p) % p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (p - x) % p).collect();
        self.undigits(&d)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p as u64;
        if self.0.n == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut r = poly_rem(&prod, &self.0.modulus, self.0.p);
        r.resize(self.0.n as usize, 0);
        self.undigits(&r)
    }

    fn raw_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn raw_inv(&self, a: u32) -> u32 {
        self.raw_pow(a, self.0.q - 2)
    }

    #[inline]
    fn fin_add(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.add[a as usize * self.0.q as usize + b as usize],
            None => self.raw_add(a, b),
        }
    }

    #[inline]
    fn fin_mul(&self, a: u32, b: u32) -> u32 {
        match &self.0.tables {
            Some(t) => t.mul[a as usize * self.0.q as usize + b as usize],
            None => self.raw_mul(a, b),
        }
    }

    #[inline]
    fn fin_neg(&self, a: u32) -> u32 {
        if self.0.neg.is_empty() {
            self.raw_neg(a)
        } else {
            self.0.neg[a as usize]
        }
    }

    fn fin_inv(&self, a: u32) -> u32 {
        if self.0.inv.is_empty() {
            self.raw_inv(a)
        } else {
            self.0.inv[a as usize]
        }
    }

    // --- scalar arithmetic ---

    pub fn zero(&self) -> Scalar {
        if self.is_finite() {
            Scalar::Fin(0)
        } else {
            Scalar::Rat(BigRational::zero())
        }
    }

    pub fn one(&self) -> Scalar {
        if self.is_finite() {
            Scalar::Fin(1)
        } else {
            Scalar::Rat(BigRational::one())
        }
    }

    /// Image of an integer under the canonical ring map Z -> F.
    pub fn from_i64(&self, v: i64) -> Scalar {
        if self.is_finite() {
            let p = self.0.p as i64;
            Scalar::Fin(v.rem_euclid(p) as u32)
        } else {
            Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(c) => *c == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(c) => *c == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_add(*x, *y)),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Fin(x) => Scalar::Fin(self.fin_neg(*x)),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Fin(x), Scalar::Fin(y)) => Scalar::Fin(self.fin_mul(*x, *y)),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar representations"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match a {
            Scalar::Fin(x) => Scalar::Fin(self.fin_inv(*x)),
            Scalar::Rat(x) => Scalar::Rat(x.recip()),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// All elements in code order (residues, or coefficient vectors read as
    /// base-p numbers).
    pub fn elements(&self) -> Result<Vec<Scalar>, FieldError> {
        match self.order() {
            Some(q) => Ok((0..q as u32).map(Scalar::Fin).collect()),
            None => Err(FieldError::InfiniteField),
        }
    }

    /// Multiplicative order of a nonzero finite-field element.
    pub fn multiplicative_order(&self, a: &Scalar) -> Option<u64> {
        let Scalar::Fin(x) = a else { return None };
        if *x == 0 {
            return None;
        }
        let mut acc = *x;
        let mut k = 1u64;
        while acc != 1 {
            acc = self.fin_mul(acc, *x);
            k += 1;
        }
        Some(k)
    }

    /// `(t, gens)` with `t = mng F`: empty for prime fields (including the
    /// rationals), otherwise a single primitive element, which lies in no
    /// proper subfield.
    pub fn generating_data(&self) -> (Cardinal, Vec<Scalar>) {
        match self.0.kind {
            FieldKind::Prime | FieldKind::Rationals => (Cardinal::finite(0), vec![]),
            FieldKind::Extension => {
                let q = self.0.q;
                let g = (2..q as u32)
                    .map(Scalar::Fin)
                    .find(|a| self.multiplicative_order(a) == Some(q - 1))
                    .expect("finite multiplicative groups are cyclic");
                (Cardinal::finite(1), vec![g])
            }
        }
    }

    /// Embeds an element of the prime subfield.
    pub fn from_prime_subfield(&self, a: &Scalar) -> Scalar {
        // constant polynomials share their code with the residue
        a.clone()
    }

    /// Whether the scalar is in the prime subfield.
    pub fn in_prime_subfield(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x < self.0.p,
            Scalar::Rat(_) => true,
        }
    }

    pub fn validate(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => self.is_finite() && (*x as u64) < self.0.q,
            Scalar::Rat(_) => !self.is_finite(),
        }
    }

    // --- text ---

    pub fn parse_element(&self, s: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadElement(s.to_string(), self.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        match self.0.kind {
            FieldKind::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (t.as_str(), "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(num, den)))
            }
            FieldKind::Prime => {
                let v: i64 = t.parse().map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
            FieldKind::Extension => {
                let p = self.0.p as i64;
                let mut coeffs = vec![0i64; self.0.n as usize];
                let mut rest = t.as_str();
                while !rest.is_empty() {
                    let (sign, body_start) = match rest.as_bytes()[0] {
                        b'-' => (-1, 1),
                        b'+' => (1, 1),
                        _ => (1, 0),
                    };
                    let body = &rest[body_start..];
                    let end = body.find(['+', '-']).unwrap_or(body.len());
                    let term = &body[..end];
                    rest = &body[end..];
                    if term.is_empty() {
                        return Err(bad());
                    }
                    let (coef, deg) = match term.find('w') {
                        None => (term.parse::<i64>().map_err(|_| bad())?, 0usize),
                        Some(pos) => {
                            let c = term[..pos].trim_end_matches('*');
                            let c = if c.is_empty() {
                                1
                            } else {
                                c.parse::<i64>().map_err(|_| bad())?
                            };
                            let e = &term[pos + 1..];
                            let e = if e.is_empty() {
                                1
                            } else {
                                e.strip_prefix('^')
                                    .ok_or_else(bad)?
                                    .parse::<usize>()
                                    .map_err(|_| bad())?
                            };
                            (c, e)
                        }
                    };
                    if deg >= coeffs.len() {
                        // reduce higher powers through the modulus
                        let mut poly = vec![0u32; deg + 1];
                        poly[deg] = (sign * coef).rem_euclid(p) as u32;
                        let r = poly_rem(&poly, &self.0.modulus, self.0.p);
                        for (i, c) in r.iter().enumerate() {
                            coeffs[i] += *c as i64;
                        }
                    } else {
                        coeffs[deg] += sign * coef;
                    }
                }
                let digits: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
                Ok(Scalar::Fin(self.undigits(&digits)))
            }
        }
    }

    pub fn format_element(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fin(x) if self.0.kind == FieldKind::Prime => x.to_string(),
            Scalar::Fin(x) => {
                let digits = self.digits(*x);
                let mut parts = Vec::new();
                for (deg, &c) in digits.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let coef = if c == 1 && deg > 0 {
                        String::new()
                    } else {
                        c.to_string()
                    };
                    parts.push(match deg {
                        0 => coef,
                        1 => format!("{coef}w"),
                        _ => format!("{coef}w^{deg}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
        }
    }

    /// Wraps a scalar with this field as owner.
    pub fn element(&self, value: Scalar) -> FieldElement {
        debug_assert!(self.validate(&value));
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    /// Signed integer view of a prime-field residue (`p-1` maps to `-1`),
    /// used for signed rendering of coordinates.
    pub fn signed_repr(&self, a: &Scalar) -> String {
        if let (FieldKind::Prime, Scalar::Fin(x)) = (self.0.kind, a) {
            if *x != 0 && *x == self.0.p - 1 && self.0.p > 2 {
                return "-1".into();
            }
        }
        self.format_element(a)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rationals => f.write_str("Q"),
            FieldKind::Prime => write!(f, "{}", self.0.p),
            FieldKind::Extension => {
                let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "{}^{}:{}", self.0.p, self.0.n, m.join(","))
            }
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// `p`, `p^n`, `p^n:c0,c1,...,cn` or `Q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |why: &str| FieldError::BadSpec(s.to_string(), why.to_string());
        if s == "Q" || s == "q" {
            return Ok(Field::rationals());
        }
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad("modulus coefficients must be non-negative integers"))?;
                (h, Some(coeffs))
            }
            None => (s, None),
        };
        let (p, n) = match head.split_once('^') {
            Some((p, n)) => (
                p.parse::<u32>().map_err(|_| bad("bad characteristic"))?,
                n.parse::<u32>().map_err(|_| bad("bad degree"))?,
            ),
            None => (
                head.parse::<u32>()
                    .map_err(|_| bad("expected p, p^n[:modulus] or Q"))?,
                1,
            ),
        };
        if modulus.is_some() && !head.contains('^') {
            return Err(bad("a modulus needs an explicit degree"));
        }
        Field::extension(p, n, modulus)
    }
}

impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A scalar together with the field it lives in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl FieldElement {
    pub fn new(field: &Field, value: Scalar) -> Self {
        field.element(value)
    }

    pub fn parse(field: &Field, s: &str) -> Result<Self, FieldError> {
        Ok(field.element(field.parse_element(s)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self
            .field
            .element(self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self
            .field
            .element(self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        Ok(self
            .field
            .element(self.field.mul(&self.value, &other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(other)?;
        self.field
            .div(&self.value, &other.value)
            .map(|v| self.field.element(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field
            .inv(&self.value)
            .map(|v| self.field.element(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }
}

/// Dispatches one of the six field operations; `b` must be present exactly
/// for the binary ones.
pub fn field_arith(
    op: ArithOp,
    a: &FieldElement,
    b: Option<&FieldElement>,
) -> Result<FieldElement, FieldError> {
    match (op, b) {
        (ArithOp::Add, Some(b)) => a.add(b),
        (ArithOp::Sub, Some(b)) => a.sub(b),
        (ArithOp::Mul, Some(b)) => a.mul(b),
        (ArithOp::Div, Some(b)) => a.div(b),
        (ArithOp::Neg, None) => Ok(a.neg()),
        (ArithOp::Inv, None) => a.inv(),
        (ArithOp::Neg | ArithOp::Inv, Some(_)) => Err(FieldError::Arity(1)),
        (_, None) => Err(FieldError::Arity(2)),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_element(&self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> Field {
        s.parse().unwrap()
    }

    #[test]
    fn gf5_examples() {
        let f = gf("5");
        let two = FieldElement::parse(&f, "2").unwrap();
        let four = FieldElement::parse(&f, "4").unwrap();
        assert_eq!(
            field_arith(ArithOp::Add, &two, Some(&four))
                .unwrap()
                .to_string(),
            "1"
        );
        assert_eq!(
            field_arith(ArithOp::Inv, &two, None).unwrap().to_string(),
            "3"
        );
        let zero = FieldElement::parse(&f, "0").unwrap();
        assert_eq!(zero.inv(), Err(FieldError::DivisionByZero));
        assert_eq!(two.div(&zero), Err(FieldError::DivisionByZero));
        assert_eq!(
            field_arith(ArithOp::Add, &two, None),
            Err(FieldError::Arity(2))
        );
    }

    #[test]
    fn gf4_omega_squared() {
        let f = gf("2^2");
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = FieldElement::parse(&f, "w").unwrap();
        assert_eq!(w.mul(&w).unwrap().to_string(), "w+1");
        // exhaustive table against schoolbook multiplication mod w^2+w+1
        for a in 0..4u32 {
            for b in 0..4u32 {
                let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
                // (a0 + a1 w)(b0 + b1 w) = a0b0 + (a0b1+a1b0) w + a1b1 w^2, w^2 = w + 1
                let c0 = (a0 * b0 + a1 * b1) % 2;
                let c1 = (a0 * b1 + a1 * b0 + a1 * b1) % 2;
                assert_eq!(
                    f.mul(&Scalar::Fin(a), &Scalar::Fin(b)),
                    Scalar::Fin(c0 + 2 * c1)
                );
            }
        }
    }

    #[test]
    fn mismatch_is_reported() {
        let a = FieldElement::parse(&gf("3"), "1").unwrap();
        let b = FieldElement::parse(&gf("5"), "1").unwrap();
        assert!(matches!(a.add(&b), Err(FieldError::FieldMismatch(..))));
    }

    #[test]
    fn generating_data_examples() {
        assert_eq!(gf("7").generating_data(), (Cardinal::finite(0), vec![]));
        assert_eq!(
            Field::rationals().generating_data(),
            (Cardinal::finite(0), vec![])
        );
        let f4 = gf("2^2");
        let (t, gens) = f4.generating_data();
        assert_eq!(t, Cardinal::finite(1));
        assert_eq!(f4.format_element(&gens[0]), "w");
        // {w} generates GF(4): the subring generated by 0, 1, w is everything
        let mut seen = std::collections::BTreeSet::from([0u32, 1, 2]);
        loop {
            let cur: Vec<u32> = seen.iter().copied().collect();
            let before = seen.len();
            for &x in &cur {
                for &y in &cur {
                    for v in [
                        f4.add(&Scalar::Fin(x), &Scalar::Fin(y)),
                        f4.mul(&Scalar::Fin(x), &Scalar::Fin(y)),
                    ] {
                        if let Scalar::Fin(c) = v {
                            seen.insert(c);
                        }
                    }
                }
            }
            if seen.len() == before {
                break;
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn enumerate_examples() {
        let names = |s: &str| -> Vec<String> {
            let f = gf(s);
            f.elements()
                .unwrap()
                .iter()
                .map(|e| f.format_element(e))
                .collect()
        };
        assert_eq!(names("2"), ["0", "1"]);
        assert_eq!(names("3"), ["0", "1", "2"]);
        assert_eq!(names("2^2"), ["0", "1", "w", "w+1"]);
        assert_eq!(
            Field::rationals().elements(),
            Err(FieldError::InfiniteField)
        );
    }

    #[test]
    fn spec_strings() {
        assert_eq!(gf("2^2:1,1,1").to_string(), "2^2:1,1,1");
        assert_eq!(gf("3^2").to_string(), "3^2:1,0,1");
        assert_eq!(gf("Q").to_string(), "Q");
        assert!(matches!("4".parse::<Field>(), Err(FieldError::NotPrime(4))));
        assert!(matches!(
            "2^2:1,0,1".parse::<Field>(),
            Err(FieldError::NotIrreducible(..))
        ));
        assert!(matches!("x".parse::<Field>(), Err(FieldError::BadSpec(..))));
        assert_eq!(gf("3^1"), gf("3"));
    }

    #[test]
    fn element_text_round_trip() {
        for spec in ["2^3", "3^2", "5^2"] {
            let f = gf(spec);
            for e in f.elements().unwrap() {
                let s = f.format_element(&e);
                assert_eq!(f.parse_element(&s).unwrap(), e, "{spec}: {s}");
            }
        }
        let q = Field::rationals();
        assert_eq!(q.format_element(&q.parse_element("4/-10").unwrap()), "-2/5");
        assert_eq!(
            gf("2^2").parse_element("w^2").unwrap(),
            gf("2^2").parse_element("w+1").unwrap()
        );
        assert_eq!(gf("7").parse_element("-1").unwrap(), Scalar::Fin(6));
    }

    fn check_axioms(f: &Field) {
        let els = f.elements().unwrap();
        let zero = f.zero();
        let one = f.one();
        for a in &els {
            assert_eq!(f.add(a, &zero), *a);
            assert_eq!(f.mul(a, &one), *a);
            assert!(f.is_zero(&f.add(a, &f.neg(a))));
            if !f.is_zero(a) {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), one);
            }
            for b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in &els {
                    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for spec in [
            "2", "3", "5", "7", "11", "13", "17", "19", "23", "29", "31", "2^2", "2^3", "2^4",
            "2^5", "3^2", "3^3", "5^2",
        ] {
            check_axioms(&gf(spec));
        }
    }

    #[test]
    fn untabled_extension_agrees_with_tables() {
        // GF(3^6) has 729 elements, above the table limit
        let big = gf("3^6");
        let a = Scalar::Fin(123);
        let b = Scalar::Fin(456);
        let prod = big.mul(&a, &b);
        assert_eq!(big.div(&prod, &b).unwrap(), a);
        assert_eq!(
            big.multiplicative_order(&big.generating_data().1[0]),
            Some(728)
        );
    }
}
