//! Exact arithmetic in cyclotomic fields Q(ζ_N), generic over the rational
//! coefficient type, and dense matrices over them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Coefficient scalars: exact fields of characteristic zero.
pub trait Scalar: Clone + fmt::Debug + PartialEq + Num + Neg<Output = Self> + Signed + FromPrimitive + ToPrimitive {}

impl<T> Scalar for T where T: Clone + fmt::Debug + PartialEq + Num + Neg<Output = T> + Signed + FromPrimitive + ToPrimitive {}

/// The field Q(ζ_N) with its power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycField {
    conductor: u64,
    degree: usize,
    /// Coefficients of Φ_N, lowest degree first.
    cyclotomic_poly: Vec<i64>,
    /// `powers[k]` is ζ^k in the power basis, for `0 ≤ k < N`.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1] / lead;
        quot[i] = c;
        for j in 0..dl {
            rem[i + j] -= c * den[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Coefficients of the N-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut poly = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

impl CycField {
    pub fn new(conductor: u64) -> Result<Arc<Self>> {
        if conductor == 0 || conductor > 1024 {
            return Err(Error::unsupported(format!("cyclotomic conductor {conductor} outside 1..=1024")));
        }
        let poly = cyclotomic_polynomial(conductor);
        let degree = poly.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and reduce modulo the monic Φ_N
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..degree {
                next[i] -= top * poly[i];
            }
            cur = next;
        }
        Ok(Arc::new(CycField { conductor, degree, cyclotomic_poly: poly, powers }))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.cyclotomic_poly
    }
}

#[derive(Clone)]
pub struct Cyclotomic<T> {
    field: Arc<CycField>,
    coeffs: Vec<T>,
}

impl<T: PartialEq> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl<T: fmt::Debug> fmt::Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}{:?}", self.field.conductor, self.coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr<T> {
    #[serde(rename = "N")]
    conductor: u64,
    coeffs: Vec<T>,
}

impl<T: Serialize + Clone> Serialize for Cyclotomic<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr { conductor: self.field.conductor, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de, T: Deserialize<'de> + Scalar> Deserialize<'de> for Cyclotomic<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycRepr::<T>::deserialize(d)?;
        let field = CycField::new(repr.conductor).map_err(serde::de::Error::custom)?;
        if repr.coeffs.len() != field.degree {
            return Err(serde::de::Error::custom("coefficient count differs from φ(N)"));
        }
        Ok(Cyclotomic { field, coeffs: repr.coeffs })
    }
}

fn int<T: Scalar>(k: i64) -> T {
    T::from_i64(k).expect("small integer")
}

impl<T: Scalar> Cyclotomic<T> {
    pub fn zero(field: &Arc<CycField>) -> Self {
        Cyclotomic { field: field.clone(), coeffs: vec![T::zero(); field.degree] }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_scalar(field, T::one())
    }

    pub fn from_scalar(field: &Arc<CycField>, x: T) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = x;
        c
    }

    pub fn from_int(field: &Arc<CycField>, k: i64) -> Self {
        Self::from_scalar(field, int(k))
    }

    pub fn from_coeffs(field: &Arc<CycField>, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != field.degree {
            return Err(Error::domain("coefficient count differs from φ(N)"));
        }
        Ok(Cyclotomic { field: field.clone(), coeffs })
    }

    /// ζ_N^k.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let n = field.conductor as i64;
        let idx = k.rem_euclid(n) as usize;
        Cyclotomic { field: field.clone(), coeffs: field.powers[idx].iter().map(|&c| int(c)).collect() }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this lies in Q.
    pub fn as_scalar(&self) -> Option<T> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| self.coeffs[0].clone())
    }

    /// Reduces a coefficient vector indexed by exponents modulo N.
    fn reduce_exponents(field: &Arc<CycField>, by_exp: Vec<T>) -> Self {
        let d = field.degree;
        let mut out = vec![T::zero(); d];
        for (k, c) in by_exp.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out[k] = out[k].clone() + c;
            } else {
                for (slot, &r) in out.iter_mut().zip(&field.powers[k]) {
                    if r != 0 {
                        *slot = slot.clone() + c.clone() * int::<T>(r);
                    }
                }
            }
        }
        Cyclotomic { field: field.clone(), coeffs: out }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.conductor, other.field.conductor, "mixed cyclotomic fields");
    }

    pub fn scale(&self, s: &T) -> Self {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// Applies ζ ↦ ζ^j for `j` prime to N.
    pub fn galois(&self, j: i64) -> Self {
        let n = self.field.conductor as i64;
        let mut by_exp = vec![T::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (i as i64 * j).rem_euclid(n) as usize;
                by_exp[e] = by_exp[e].clone() + c.clone();
            }
        }
        Self::reduce_exponents(&self.field, by_exp)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Product of all Galois conjugates; a rational number.
    pub fn norm(&self) -> T {
        let n = self.field.conductor as i64;
        let mut acc = self.clone();
        for j in 2..n.max(2) {
            if j.gcd(&n) == 1 {
                acc = &acc * &self.galois(j);
            }
        }
        acc.as_scalar().expect("norm is rational")
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.conductor as i64;
        let mut others = Self::one(&self.field);
        for j in 2..n.max(2) {
            if j.gcd(&n) == 1 {
                others = &others * &self.galois(j);
            }
        }
        let norm = (&others * self).as_scalar().expect("norm is rational");
        Some(others.scale(&(T::one() / norm)))
    }

    /// Image under Q(ζ_M) → Q(ζ_N), ζ_M ↦ ζ_N^{N/M}.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<Self> {
        let m = self.field.conductor;
        let n = target.conductor;
        if !n.is_multiple_of(m) {
            return Err(Error::domain(format!("Q(ζ_{m}) does not embed in Q(ζ_{n})")));
        }
        let step = (n / m) as usize;
        let mut by_exp = vec![T::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            by_exp[i * step] = c.clone();
        }
        Ok(Self::reduce_exponents(target, by_exp))
    }

    /// `k` with `self = ζ_N^k`, if this is an N-th root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<u64> {
        (0..self.field.conductor).find(|&k| {
            self.coeffs.iter().zip(&self.field.powers[k as usize]).all(|(c, &r)| *c == int::<T>(r))
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), std::f64::consts::TAU * k as f64 / n))
            .sum()
    }
}

impl<T: Scalar> Add for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: Self) -> Cyclotomic<T> {
        self.check_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: Self) -> Cyclotomic<T> {
        self.check_field(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: Self) -> Cyclotomic<T> {
        self.check_field(rhs);
        let n = self.field.conductor as usize;
        let mut by_exp = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = (i + j) % n;
                by_exp[e] = by_exp[e].clone() + a.clone() * b.clone();
            }
        }
        Cyclotomic::reduce_exponents(&self.field, by_exp)
    }
}

impl<T: Scalar> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Scalar> Add for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn add(self, rhs: Self) -> Cyclotomic<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn sub(self, rhs: Self) -> Cyclotomic<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn mul(self, rhs: Self) -> Cyclotomic<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Square roots of rationals

fn squarefree_split(mut k: u64) -> (u64, u64) {
    // k = s^2 * m with m squarefree
    let mut s = 1;
    let mut m = 1;
    let mut d = 2;
    while d * d <= k {
        while k.is_multiple_of(d * d) {
            k /= d * d;
            s *= d;
        }
        if k.is_multiple_of(d) {
            k /= d;
            m *= d;
        }
        d += 1;
    }
    (s, m * k)
}

/// Smallest conductor whose field contains √r.
pub fn sqrt_conductor(r: &Rational) -> Option<u64> {
    if r.is_zero() {
        return Some(1);
    }
    let num = r.numer().unsigned_abs();
    let den = r.denom().unsigned_abs();
    let prod = u64::try_from(num * den).ok()?;
    let (_, m) = squarefree_split(prod);
    let mut cond: u64 = 1;
    for (p, _) in crate::zmod::factorize(m) {
        let c = if p == 2 {
            8
        } else if p % 4 == 1 {
            p
        } else {
            4 * p
        };
        cond = cond.lcm(&c);
    }
    if r.is_negative() {
        // √-m = i√m; for m ≡ 3 mod 4 products this may collapse, stay safe.
        cond = cond.lcm(&4);
    }
    Some(cond)
}

impl Cyclotomic<Rational> {
    /// √p for a prime p, provided the field contains it.
    fn sqrt_prime(field: &Arc<CycField>, p: u64) -> Option<Self> {
        let n = field.conductor;
        if p == 2 {
            if !n.is_multiple_of(8) {
                return None;
            }
            let z = |k| Self::zeta_pow(field, k * (n / 8) as i64);
            return Some(&z(1) + &z(-1));
        }
        // Gauss sum g with g² = (−1)^{(p−1)/2} p.
        let need = if p % 4 == 1 { p } else { 4 * p };
        if !n.is_multiple_of(need) {
            return None;
        }
        let step = (n / p) as i64;
        let mut g = Self::zero(field);
        for x in 1..p {
            let legendre = crate::gf::mod_pow(x, (p - 1) / 2, p);
            let term = Self::zeta_pow(field, x as i64 * step);
            g = if legendre == 1 { &g + &term } else { &g - &term };
        }
        if p % 4 == 1 {
            Some(g)
        } else {
            // g = i√p
            let minus_i = Self::zeta_pow(field, -((n / 4) as i64));
            Some(&g * &minus_i)
        }
    }

    /// An element whose square is `r`, if the field contains one.
    pub fn sqrt_rational(field: &Arc<CycField>, r: &Rational) -> Option<Self> {
        if r.is_zero() {
            return Some(Self::zero(field));
        }
        let num = r.numer().unsigned_abs();
        let den = r.denom().unsigned_abs();
        let prod = u64::try_from(num * den).ok()?;
        let (s, m) = squarefree_split(prod);
        // √(num/den) = √(num·den)/den = s√m/den
        let mut root = Self::from_scalar(field, Rational::new(s as i128, den as i128));
        for (p, _) in crate::zmod::factorize(m) {
            root = &root * &Self::sqrt_prime(field, p)?;
        }
        if r.is_negative() {
            if !field.conductor.is_multiple_of(4) {
                return None;
            }
            root = &root * &Self::zeta_pow(field, (field.conductor / 4) as i64);
        }
        debug_assert_eq!(&root * &root, Self::from_scalar(field, *r));
        Some(root)
    }
}

// ---------------------------------------------------------------------------
// Matrices

#[derive(Clone, PartialEq)]
pub struct CycMatrix<T> {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic<T>>,
}

impl<T: fmt::Debug> fmt::Debug for CycMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1)).map(|r| r.iter().collect::<Vec<_>>())).finish()
    }
}

impl<T: Serialize + Clone> Serialize for CycMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[Cyclotomic<T>]> = self.data.chunks(self.cols.max(1)).collect();
        rows.serialize(s)
    }
}

impl<'de, T: Deserialize<'de> + Scalar> Deserialize<'de> for CycMatrix<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic<T>>>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        let field = match rows.first().and_then(|r| r.first()) {
            Some(x) => x.field.clone(),
            None => CycField::new(1).map_err(serde::de::Error::custom)?,
        };
        let data: Vec<Cyclotomic<T>> = rows.into_iter().flatten().collect();
        if data.iter().any(|x| x.field.conductor != field.conductor) {
            return Err(serde::de::Error::custom("matrix entries lie in different fields"));
        }
        Ok(CycMatrix { rows: if cols == 0 { 0 } else { data.len() / cols }, cols, field, data })
    }
}

impl<T: Scalar> CycMatrix<T> {
    pub fn zeros(field: &Arc<CycField>, rows: usize, cols: usize) -> Self {
        CycMatrix { field: field.clone(), rows, cols, data: vec![Cyclotomic::zero(field); rows * cols] }
    }

    pub fn identity(field: &Arc<CycField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Cyclotomic::one(field);
        }
        m
    }

    pub fn scalar(field: &Arc<CycField>, n: usize, c: &Cyclotomic<T>) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_rows(field: &Arc<CycField>, rows: Vec<Vec<Cyclotomic<T>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        CycMatrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic<T> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Cyclotomic<T>) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Cyclotomic<T>] {
        &self.data
    }

    /// Product, skipping zero entries of the left factor (representation
    /// matrices here are often monomial).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = &*slot + &prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        CycMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CycMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic<T>) -> Self {
        self.map(|x| x * c)
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic<T>) -> Cyclotomic<T>) -> Self {
        CycMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn trace(&self) -> Cyclotomic<T> {
        (0..self.rows.min(self.cols)).fold(Cyclotomic::zero(&self.field), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    /// `c` when the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<Cyclotomic<T>> {
        if self.rows != self.cols {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if (i == j && *x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Cyclotomic<T>)> {
        self.data.iter().position(|x| !x.is_zero()).map(|k| (k / self.cols, k % self.cols, &self.data[k]))
    }

    /// Rescales so the first nonzero entry is 1.
    pub fn normalized(&self) -> Option<Self> {
        let (_, _, lead) = self.first_nonzero()?;
        Some(self.scale(&lead.inv()?))
    }

    pub fn embed(&self, target: &Arc<CycField>) -> Result<Self> {
        let data = self.data.iter().map(|x| x.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix { field: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_complex())
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            for j in 0..cols {
                self.data.swap(r * cols + j, pr * cols + j);
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..cols {
                self.data[r * cols + j] = &self.data[r * cols + j] * &inv;
            }
            for i in 0..rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..cols {
                    let sub = &f * &self.data[r * cols + j];
                    self.data[i * cols + j] = &self.data[i * cols + j] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut a = self.clone();
        let mut inv = Self::identity(&self.field, n);
        for c in 0..n {
            let pr = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            for j in 0..n {
                a.data.swap(c * n + j, pr * n + j);
                inv.data.swap(c * n + j, pr * n + j);
            }
            let piv = a.get(c, c).inv()?;
            for j in 0..n {
                a.data[c * n + j] = &a.data[c * n + j] * &piv;
                inv.data[c * n + j] = &inv.data[c * n + j] * &piv;
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = a.get(r, c).clone();
                for j in 0..n {
                    a.data[r * n + j] = &a.data[r * n + j] - &(&f * &a.data[c * n + j]);
                    inv.data[r * n + j] = &inv.data[r * n + j] - &(&f * &inv.data[c * n + j]);
                }
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Cyc;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_has_order_n() {
        let f = CycField::new(12).unwrap();
        let z = Cyc::zeta_pow(&f, 1);
        let mut acc = Cyc::one(&f);
        for _ in 0..12 {
            acc = &acc * &z;
        }
        assert!(acc.is_one());
        assert_eq!(z.root_of_unity_exponent(), Some(1));
    }

    #[test]
    fn square_roots() {
        let f = CycField::new(120).unwrap();
        for r in [2i128, 3, 5, 6, -1, -3, 15] {
            let s = Cyc::sqrt_rational(&f, &Rational::from_integer(r)).unwrap();
            assert_eq!(&s * &s, Cyc::from_int(&f, r as i64));
        }
    }
}
