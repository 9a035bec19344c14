//! Prime fields, their small extensions, and dense linear algebra over F_p.
//!
//! Extension fields F_{p^m} use a fixed defining polynomial per `(p, m)`: the
//! lexicographically least monic irreducible polynomial of degree `m`, where
//! polynomials are compared by their coefficient vectors read from the
//! `x^{m-1}` coefficient down to the constant term. For example F_4 uses
//! `x^2 + x + 1`, F_8 uses `x^3 + x + 1` and F_9 uses `x^2 + 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u32 = 1 << 16;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if p > MAX_MODULUS {
        return Err(Error::unsupported(format!("modulus {p} exceeds 2^16")));
    }
    Ok(())
}

pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
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

/// Inverse of `a` modulo `p` for prime `p`, or `None` when `a ≡ 0`.
pub fn mod_inv(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i64) as u32)
}

/// An element of F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpScalar {
    p: u32,
    value: u32,
}

impl FpScalar {
    pub fn new(p: u32, value: i64) -> Result<Self> {
        check_prime(p)?;
        Ok(FpScalar { p, value: value.rem_euclid(p as i64) as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<Self> {
        mod_inv(self.value, self.p)
            .map(|v| FpScalar { p: self.p, value: v })
            .ok_or_else(|| Error::domain("inversion of zero"))
    }

    pub fn pow(&self, e: u64) -> Self {
        FpScalar { p: self.p, value: mod_pow(self.value as u64, e, self.p as u64) as u32 }
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing F_{} and F_{}", self.p, other.p);
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        FpScalar { p: self.p, value: (self.value + rhs.value) % self.p }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        FpScalar { p: self.p, value: (self.value + self.p - rhs.value) % self.p }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(&rhs);
        FpScalar { p: self.p, value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32 }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar { p: self.p, value: (self.p - self.value) % self.p }
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for FpScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.value)
    }
}

// ---------------------------------------------------------------------------
// Matrices

/// Dense row-major matrix over F_p. Vectors are plain `Vec<u32>` of residues
/// whose modulus is that of the matrix they meet.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

/// Result of [`FpMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSolution {
    pub rank: usize,
    pub solution: Option<Vec<u32>>,
    pub kernel: Vec<Vec<u32>>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged matrix rows"));
        }
        let data = rows.iter().flatten().map(|&x| x % p).collect();
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(p: u32, n_rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, n_rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n_rows {
                m.data[i * cols.len() + j] = c[i] % p;
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc += self.get(i, j) as u64 * v[j] as u64;
                }
                (acc % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.p).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + self.p - b) % self.p).collect();
        FpMatrix { data, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = mod_inv(m.get(r, c), self.p).unwrap() as u64;
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = (m.data[idx] as u64 * inv % p) as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = f * m.get(r, j) as u64 % p;
                    let idx = i * m.cols + j;
                    m.data[idx] = ((m.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (self.p - r.get(row, f)) % self.p;
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b`. An inconsistent system is reported through
    /// `solution == None`, not as an error.
    pub fn solve(&self, b: &[u32]) -> Result<LinearSolution> {
        if b.len() != self.rows {
            return Err(Error::domain("right-hand side has the wrong length"));
        }
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % self.p;
        }
        let (r, pivots) = aug.rref();
        let kernel = self.kernel();
        let rank = self.rank();
        if pivots.contains(&self.cols) {
            return Ok(LinearSolution { rank, solution: None, kernel });
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(LinearSolution { rank, solution: Some(x), kernel })
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j);
            }
        }
        Some(inv)
    }
}

/// Iterates over all vectors of F_p^dim in lexicographic order (first
/// coordinate most significant).
pub fn all_vectors(p: u32, dim: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(dim as u32);
    (0..total).map(move |i| index_to_vector(p, dim, i as usize))
}

/// Lexicographic index of a vector: coordinate 0 is the most significant digit.
pub fn vector_index(p: u32, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub fn index_to_vector(p: u32, dim: usize, mut idx: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    for i in (0..dim).rev() {
        v[i] = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    v
}

pub fn vec_add(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn vec_sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

pub fn vec_scale(p: u32, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|x| ((*x as u64 * c as u64) % p as u64) as u32).collect()
}

/// Rank of the span of a list of vectors.
pub fn span_rank(p: u32, dim: usize, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FpMatrix::from_cols(p, dim, vectors).rank()
}

// ---------------------------------------------------------------------------
// Extension fields

/// The field F_{p^m} with its fixed defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct GfExt {
    pub p: u32,
    pub m: usize,
    /// Monic defining polynomial, constant term first, length `m + 1`.
    pub modulus: Vec<u32>,
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let lead_inv = mod_inv(*b.last().unwrap(), p).unwrap() as u64;
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = *r.last().unwrap() as u64 * lead_inv % p as u64;
        for (i, &c) in b.iter().enumerate() {
            let sub = f * c as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = poly_trim(r);
    }
    r
}

fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut g = index_to_vector(p, d, idx);
            g.reverse();
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GfExt {
    pub fn new(p: u32, m: usize) -> Result<Arc<Self>> {
        check_prime(p)?;
        if m == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        if (p as u64).pow(m as u32) > MAX_MODULUS as u64 {
            return Err(Error::unsupported(format!("F_{p}^{m} exceeds 2^16 elements")));
        }
        let count = (p as usize).pow(m as u32);
        for idx in 0..count {
            // index_to_vector puts the x^{m-1} coefficient first.
            let mut poly = index_to_vector(p, m, idx);
            poly.reverse();
            poly.push(1);
            if m == 1 || is_irreducible(p, &poly) {
                return Ok(Arc::new(GfExt { p, m, modulus: poly }));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    fn reduce(&self, mut a: Vec<u32>) -> Vec<u32> {
        let p = self.p as u64;
        let m = self.m;
        while a.len() > m {
            let top = a.pop().unwrap() as u64;
            if top == 0 {
                continue;
            }
            let base = a.len() - m;
            for i in 0..m {
                let sub = top * self.modulus[i] as u64 % p;
                a[base + i] = ((a[base + i] as u64 + p - sub) % p) as u32;
            }
        }
        a.resize(m, 0);
        a
    }
}

/// An element of F_{p^m}, in the power basis of the fixed defining polynomial.
#[derive(Clone, Debug)]
pub struct FqScalar {
    field: Arc<GfExt>,
    coeffs: Vec<u32>,
}

impl PartialEq for FqScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for FqScalar {}

impl std::hash::Hash for FqScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.coeffs.hash(state);
    }
}

impl Serialize for FqScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl FqScalar {
    pub fn new(field: &Arc<GfExt>, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() != field.m {
            return Err(Error::domain(format!("expected {} coefficients", field.m)));
        }
        Ok(FqScalar { field: field.clone(), coeffs: coeffs.iter().map(|c| c % field.p).collect() })
    }

    pub fn zero(field: &Arc<GfExt>) -> Self {
        FqScalar { field: field.clone(), coeffs: vec![0; field.m] }
    }

    pub fn one(field: &Arc<GfExt>) -> Self {
        let mut c = vec![0; field.m];
        c[0] = 1;
        FqScalar { field: field.clone(), coeffs: c }
    }

    /// The class of `x` in the defining quotient (equal to `1` when `m = 1`).
    pub fn generator(field: &Arc<GfExt>) -> Self {
        let mut c = vec![0; field.m + 1];
        c[1] = 1;
        FqScalar { field: field.clone(), coeffs: field.reduce(c) }
    }

    /// Element with the given base-p digit index (constant term least significant).
    pub fn from_index(field: &Arc<GfExt>, mut idx: u64) -> Self {
        let mut c = vec![0; field.m];
        for slot in c.iter_mut() {
            *slot = (idx % field.p as u64) as u32;
            idx /= field.p as u64;
        }
        FqScalar { field: field.clone(), coeffs: c }
    }

    pub fn to_index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.field.p as u64 + c as u64)
    }

    pub fn field(&self) -> &Arc<GfExt> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "mixing different extension fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.p;
        FqScalar { field: self.field.clone(), coeffs: vec_add(p, &self.coeffs, &other.coeffs) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.p;
        FqScalar { field: self.field.clone(), coeffs: vec_sub(p, &self.coeffs, &other.coeffs) }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        FqScalar { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| (p - c) % p).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.p as u64;
        let m = self.field.m;
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + a as u64 * b as u64) % p) as u32;
            }
        }
        FqScalar { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = FqScalar::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("inversion of zero"));
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// Norm and trace down to the subfield of degree `k`. Both results are
    /// returned as elements of the ambient field lying in that subfield.
    pub fn norm_trace(&self, k: usize) -> Result<(FqScalar, FqScalar)> {
        self.relative_norm_trace(self.field.m, k)
    }

    /// Norm and trace from the subfield of degree `from` (which must contain
    /// `self`) down to the subfield of degree `to`.
    pub fn relative_norm_trace(&self, from: usize, to: usize) -> Result<(FqScalar, FqScalar)> {
        let m = self.field.m;
        if to == 0 || !from.is_multiple_of(to) || !m.is_multiple_of(from) {
            return Err(Error::domain(format!("degrees {to} | {from} | {m} required")));
        }
        let sub_order = (self.field.p as u64).pow(from as u32);
        if self.pow(sub_order) != *self {
            return Err(Error::domain("element does not lie in the source subfield"));
        }
        let step = (self.field.p as u64).pow(to as u32);
        let mut conj = self.clone();
        let mut norm = FqScalar::one(&self.field);
        let mut trace = FqScalar::zero(&self.field);
        for _ in 0..from / to {
            norm = norm.mul(&conj);
            trace = trace.add(&conj);
            conj = conj.pow(step);
        }
        Ok((norm, trace))
    }

    /// The value as an element of F_p, when it lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

/// Lookup tables for F_q with elements encoded as their digit index, for the
/// enumeration-heavy matrix group code.
#[derive(Clone, Debug)]
pub struct FqTables {
    pub p: u32,
    pub q: u32,
    pub field: Arc<GfExt>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FqTables {
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if q > 256 {
            return Err(Error::resource(format!("table arithmetic limited to q <= 256, got {q}")));
        }
        let field = GfExt::new(p, m)?;
        let elems: Vec<FqScalar> = (0..q as u64).map(|i| FqScalar::from_index(&field, i)).collect();
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        let mut neg = vec![0; n];
        let mut inv = vec![0; n];
        for a in 0..n {
            neg[a] = elems[a].neg().to_index() as u32;
            if a != 0 {
                inv[a] = elems[a].inv()?.to_index() as u32;
            }
            for b in 0..n {
                add[a * n + b] = elems[a].add(&elems[b]).to_index() as u32;
                mul[a * n + b] = elems[a].mul(&elems[b]).to_index() as u32;
            }
        }
        Ok(FqTables { p, q, field, add, mul, neg, inv })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        let order = self.q - 1;
        (1..self.q)
            .find(|&g| {
                let mut x = 1;
                for k in 1..=order {
                    x = self.mul(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .unwrap_or(1)
    }

    /// Additive basis of F_q over F_p: the powers of the polynomial generator.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.field.m).map(|i| (self.p as u64).pow(i as u32) as u32).collect()
    }
}

/// `Some((p, m))` with `q = p^m`.
pub fn prime_power(q: u32) -> Option<(u32, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_inverses() {
        assert_eq!(FpScalar::new(5, 3).unwrap().inv().unwrap().value(), 2);
        assert!(FpScalar::new(7, 0).unwrap().inv().is_err());
        let one = FpScalar::new(2, 1).unwrap();
        assert!((one + one).is_zero());
    }

    #[test]
    fn defining_polynomials() {
        assert_eq!(GfExt::new(2, 2).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(GfExt::new(2, 3).unwrap().modulus, vec![1, 1, 0, 1]);
        assert_eq!(GfExt::new(3, 2).unwrap().modulus, vec![1, 0, 1]);
        assert_eq!(GfExt::new(2, 4).unwrap().modulus, vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn rank_of_all_ones() {
        let m = FpMatrix::from_rows(2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel(), vec![vec![1, 1]]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
    }
}
