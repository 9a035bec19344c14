//! Bilinear, alternating and quadratic forms over F_p, with the
//! characteristic-2 conventions: quadratic forms carry their diagonal values
//! separately from the cross terms, so the polar form forgets exactly the
//! diagonal part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, check_prime, mod_inv, vec_add, vec_scale, vec_sub, FpMatrix, FqScalar, GfExt};

/// Enumeration bound for [`QuadraticForm::count_zeros`] (number of vectors).
pub const MAX_ENUMERATION: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BilinearRepr", into = "BilinearRepr")]
pub struct BilinearForm {
    pub p: u32,
    pub dim: usize,
    /// Entry `(i, j)` is `B(e_i, e_j)`.
    pub gram: FpMatrix,
}

#[derive(Serialize, Deserialize)]
struct BilinearRepr {
    p: u32,
    dim: usize,
    gram: Vec<Vec<u32>>,
}

impl From<BilinearForm> for BilinearRepr {
    fn from(b: BilinearForm) -> Self {
        BilinearRepr { p: b.p, dim: b.dim, gram: b.gram.to_rows() }
    }
}

impl TryFrom<BilinearRepr> for BilinearForm {
    type Error = Error;
    fn try_from(r: BilinearRepr) -> Result<Self> {
        let b = BilinearForm::from_rows(r.p, &r.gram)?;
        if b.dim != r.dim {
            return Err(Error::domain("dim does not match gram size"));
        }
        Ok(b)
    }
}

impl BilinearForm {
    pub fn new(gram: FpMatrix) -> Result<Self> {
        check_prime(gram.p)?;
        if !gram.is_square() {
            return Err(Error::domain("gram matrix must be square"));
        }
        Ok(BilinearForm { p: gram.p, dim: gram.rows, gram })
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        Self::new(FpMatrix::from_rows(p, rows)?)
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        BilinearForm { p, dim, gram: FpMatrix::zeros(p, dim, dim) }
    }

    /// Alternating form with `ω(e_{2i}, e_{2i+1}) = 1` on `2n` coordinates.
    pub fn standard_symplectic(p: u32, n: usize) -> Self {
        let mut g = FpMatrix::zeros(p, 2 * n, 2 * n);
        for i in 0..n {
            g.set(2 * i, 2 * i + 1, 1);
            g.set(2 * i + 1, 2 * i, p - 1);
        }
        BilinearForm { p, dim: 2 * n, gram: g }
    }

    pub fn eval(&self, v: &[u32], w: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            let mut row = 0u64;
            for j in 0..self.dim {
                row += self.gram.get(i, j) as u64 * w[j] as u64;
            }
            acc += v[i] as u64 * (row % p);
        }
        (acc % p) as u32
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    /// Zero diagonal and antisymmetric, so `B(v, v) = 0` for all `v`.
    pub fn is_alternating(&self) -> bool {
        (0..self.dim).all(|i| self.gram.get(i, i) == 0) && self.gram.add(&self.gram.transpose()).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim
    }

    /// Basis of the left radical `{v : B(v, -) = 0}`.
    pub fn radical(&self) -> Vec<Vec<u32>> {
        self.gram.transpose().kernel()
    }

    /// `ω_B = B - Bᵀ`.
    pub fn associated_alternating(&self) -> BilinearForm {
        BilinearForm { p: self.p, dim: self.dim, gram: self.gram.sub(&self.gram.transpose()) }
    }

    /// `v ↦ B(v, v)` as a quadratic form.
    pub fn diagonal_quadratic(&self) -> QuadraticForm {
        let mut upper = FpMatrix::zeros(self.p, self.dim, self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                upper.set(i, j, self.gram.get(i, j) + self.gram.get(j, i));
            }
        }
        let diag = (0..self.dim).map(|i| self.gram.get(i, i)).collect();
        QuadraticForm { p: self.p, dim: self.dim, upper, diag }
    }

    /// `(v, w) ↦ B(Mv, Mw)`.
    pub fn pullback(&self, m: &FpMatrix) -> BilinearForm {
        let gram = m.transpose().mul(&self.gram).mul(m);
        BilinearForm { p: self.p, dim: m.cols, gram }
    }

    pub fn orthogonal_sum(&self, other: &BilinearForm) -> Result<BilinearForm> {
        if self.p != other.p {
            return Err(Error::domain("orthogonal sum of forms over different fields"));
        }
        let d = self.dim + other.dim;
        let mut g = FpMatrix::zeros(self.p, d, d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                g.set(i, j, self.gram.get(i, j));
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                g.set(self.dim + i, self.dim + j, other.gram.get(i, j));
            }
        }
        Ok(BilinearForm { p: self.p, dim: d, gram: g })
    }

    /// Change of basis bringing a nondegenerate alternating form to the
    /// standard block form: the returned `M` satisfies `Mᵀ G M = standard`.
    pub fn symplectic_basis(&self) -> Result<FpMatrix> {
        if !self.is_alternating() {
            return Err(Error::domain("form is not alternating"));
        }
        if self.dim % 2 == 1 {
            return Err(Error::domain("alternating form on an odd-dimensional space is degenerate"));
        }
        let pol = find_polarization(&PolarizationInput::Alternating(self.clone()))?;
        let mut cols = Vec::with_capacity(self.dim);
        for (v, w) in pol.plus.iter().zip(&pol.minus) {
            cols.push(v.clone());
            cols.push(w.clone());
        }
        Ok(FpMatrix::from_cols(self.p, self.dim, &cols))
    }
}

/// `Q(v) = Σ diag_i v_i² + Σ_{i<j} upper_ij v_i v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuadraticRepr", into = "QuadraticRepr")]
pub struct QuadraticForm {
    pub p: u32,
    pub dim: usize,
    pub upper: FpMatrix,
    pub diag: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    p: u32,
    dim: usize,
    upper: Vec<Vec<u32>>,
    diag: Vec<u32>,
}

impl From<QuadraticForm> for QuadraticRepr {
    fn from(q: QuadraticForm) -> Self {
        QuadraticRepr { p: q.p, dim: q.dim, upper: q.upper.to_rows(), diag: q.diag }
    }
}

impl TryFrom<QuadraticRepr> for QuadraticForm {
    type Error = Error;
    fn try_from(r: QuadraticRepr) -> Result<Self> {
        let upper = if r.dim == 0 { FpMatrix::zeros(r.p, 0, 0) } else { FpMatrix::from_rows(r.p, &r.upper)? };
        QuadraticForm::new(upper, r.diag)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Split,
    Nonsplit,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormClass {
    pub kind: FormKind,
    pub witt_index: usize,
}

impl QuadraticForm {
    pub fn new(upper: FpMatrix, diag: Vec<u32>) -> Result<Self> {
        check_prime(upper.p)?;
        let dim = diag.len();
        if upper.rows != dim || upper.cols != dim {
            return Err(Error::domain("upper table and diagonal sizes disagree"));
        }
        for i in 0..dim {
            for j in 0..=i {
                if upper.get(i, j) != 0 {
                    return Err(Error::domain("cross-term table must be strictly upper triangular"));
                }
            }
        }
        let p = upper.p;
        Ok(QuadraticForm { p, dim, upper, diag: diag.into_iter().map(|d| d % p).collect() })
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        QuadraticForm { p, dim, upper: FpMatrix::zeros(p, dim, dim), diag: vec![0; dim] }
    }

    /// Builds the form from its values: `diag_i = Q(e_i)` and the cross terms
    /// from `Q(e_i + e_j) - Q(e_i) - Q(e_j)`.
    pub fn from_fn(p: u32, dim: usize, q: impl Fn(&[u32]) -> u32) -> Self {
        let e = |i: usize| {
            let mut v = vec![0u32; dim];
            v[i] = 1;
            v
        };
        let diag: Vec<u32> = (0..dim).map(|i| q(&e(i)) % p).collect();
        let mut upper = FpMatrix::zeros(p, dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let mut v = e(i);
                v[j] = 1;
                let val = (q(&v) + 2 * p - diag[i] - diag[j]) % p;
                upper.set(i, j, val);
            }
        }
        QuadraticForm { p, dim, upper, diag }
    }

    /// `Σ x_{2i} x_{2i+1}` on `2n` coordinates.
    pub fn split_model(p: u32, n: usize) -> Self {
        let mut q = Self::zero(p, 2 * n);
        for i in 0..n {
            q.upper.set(2 * i, 2 * i + 1, 1);
        }
        q
    }

    /// Norm form of F_{p²}/F_p on the power basis `1, x` of the fixed
    /// quadratic extension; for `p = 2` this is `x² + xy + y²`.
    pub fn norm_form(p: u32) -> Result<Self> {
        let f = GfExt::new(p, 2)?;
        Ok(Self::from_fn(p, 2, |v| {
            let x = FqScalar::new(&f, v).expect("length checked");
            x.norm_trace(1).expect("degree divides").0.as_prime().expect("norm lies in F_p")
        }))
    }

    /// Split form on the first `2n - 2` coordinates plus the norm form on the
    /// last two: Witt index `n - 1`.
    pub fn nonsplit_model(p: u32, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("nonsplit model needs n >= 1"));
        }
        Self::split_model(p, n - 1).orthogonal_sum(&Self::norm_form(p)?)
    }

    /// `v ↦ Tr_{F_q/F_p}(Nm_{F_{q²}/F_q}(v))` on F_{q²} viewed as an F_p-space
    /// of dimension `2m` (`q = p^m`), in the power basis of F_{q²}.
    pub fn trace_norm(q: u32) -> Result<Self> {
        let (p, m) = gf::prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        let big = GfExt::new(p, 2 * m)?;
        Ok(Self::from_fn(p, 2 * m, |v| {
            let x = FqScalar::new(&big, v).expect("length checked");
            let (nm, _) = x.relative_norm_trace(2 * m, m).expect("degrees divide");
            let (_, tr) = nm.relative_norm_trace(m, 1).expect("norm lies in F_q");
            tr.as_prime().expect("trace lies in F_p")
        }))
    }

    pub fn eval(&self, v: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for i in 0..self.dim {
            if v[i] == 0 {
                continue;
            }
            let vi = v[i] as u64;
            acc += self.diag[i] as u64 * (vi * vi % p);
            let mut cross = 0u64;
            for j in i + 1..self.dim {
                cross += self.upper.get(i, j) as u64 * v[j] as u64;
            }
            acc += vi * (cross % p);
            acc %= p;
        }
        (acc % p) as u32
    }

    /// `B_Q(v, w) = Q(v + w) - Q(v) - Q(w)`.
    pub fn polar_form(&self) -> BilinearForm {
        let mut g = FpMatrix::zeros(self.p, self.dim, self.dim);
        for i in 0..self.dim {
            g.set(i, i, 2 * self.diag[i]);
            for j in i + 1..self.dim {
                g.set(i, j, self.upper.get(i, j));
                g.set(j, i, self.upper.get(i, j));
            }
        }
        BilinearForm { p: self.p, dim: self.dim, gram: g }
    }

    pub fn pullback(&self, m: &FpMatrix) -> QuadraticForm {
        QuadraticForm::from_fn(self.p, m.cols, |v| self.eval(&m.mul_vec(v)))
    }

    pub fn orthogonal_sum(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.p != other.p {
            return Err(Error::domain("orthogonal sum of forms over different fields"));
        }
        let d = self.dim + other.dim;
        let mut q = Self::zero(self.p, d);
        for i in 0..self.dim {
            q.diag[i] = self.diag[i];
            for j in i + 1..self.dim {
                q.upper.set(i, j, self.upper.get(i, j));
            }
        }
        for i in 0..other.dim {
            q.diag[self.dim + i] = other.diag[i];
            for j in i + 1..other.dim {
                q.upper.set(self.dim + i, self.dim + j, other.upper.get(i, j));
            }
        }
        Ok(q)
    }

    /// Exact number of zeros by full enumeration.
    pub fn count_zeros(&self) -> Result<u64> {
        let total = (self.p as u64).checked_pow(self.dim as u32).unwrap_or(u64::MAX);
        if self.dim > 24 || total > MAX_ENUMERATION {
            return Err(Error::resource(format!("enumerating {}^{} vectors", self.p, self.dim)));
        }
        Ok(gf::all_vectors(self.p, self.dim).filter(|v| self.eval(v) == 0).count() as u64)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.polar_form().is_nondegenerate()
    }

    /// Largest dimension of a subspace on which `Q` vanishes identically.
    pub fn witt_index(&self) -> usize {
        witt_index(self)
    }

    pub fn classify(&self) -> Result<FormClass> {
        if self.dim % 2 == 1 {
            return Err(Error::unsupported("classification needs an even dimension"));
        }
        let witt_index = self.witt_index();
        let n = self.dim / 2;
        let kind = if !self.is_nondegenerate() {
            FormKind::Degenerate
        } else if witt_index == n {
            FormKind::Split
        } else if witt_index + 1 == n {
            FormKind::Nonsplit
        } else {
            unreachable!("nondegenerate even-dimensional forms have Witt index n or n - 1")
        };
        Ok(FormClass { kind, witt_index })
    }
}

/// Up to this many vectors the Witt index search backtracks over every
/// branch; above it the first maximal totally singular subspace found is
/// accepted, which is exact for nondegenerate forms by Witt's theorem.
const FULL_BACKTRACK_LIMIT: u64 = 256;

fn witt_index(q: &QuadraticForm) -> usize {
    let p = q.p;
    let dim = q.dim;
    if dim == 0 {
        return 0;
    }
    let polar = q.polar_form();
    let bound = (dim + polar.radical().len()) / 2;
    let singular: Vec<Vec<u32>> = gf::all_vectors(p, dim).skip(1).filter(|v| q.eval(v) == 0).collect();
    let exhaustive = (p as u64).pow(dim as u32) <= FULL_BACKTRACK_LIMIT;

    struct Search<'a> {
        polar: &'a BilinearForm,
        singular: &'a [Vec<u32>],
        p: u32,
        dim: usize,
        bound: usize,
        exhaustive: bool,
        best: usize,
    }

    impl Search<'_> {
        fn go(&mut self, start: usize, basis: &mut Vec<Vec<u32>>) {
            self.best = self.best.max(basis.len());
            if self.best >= self.bound {
                return;
            }
            for idx in start..self.singular.len() {
                let v = &self.singular[idx];
                if basis.iter().any(|b| self.polar.eval(b, v) != 0) {
                    continue;
                }
                basis.push(v.clone());
                let independent = gf::span_rank(self.p, self.dim, basis) == basis.len();
                if independent {
                    self.go(idx + 1, basis);
                }
                basis.pop();
                if self.best >= self.bound || (independent && !self.exhaustive) {
                    return;
                }
            }
        }
    }

    let mut s = Search { polar: &polar, singular: &singular, p, dim, bound, exhaustive, best: 0 };
    s.go(0, &mut Vec::new());
    s.best
}

/// Either an alternating form (all vectors isotropic) or a quadratic form
/// (isotropic means `Q(v) = 0`).
#[derive(Clone, Debug)]
pub enum PolarizationInput {
    Alternating(BilinearForm),
    Quadratic(QuadraticForm),
}

/// `V = V⁺ ⊕ V₀ ⊕ V⁻` with `V±` totally isotropic, paired by `plus[i]`,
/// `minus[i]` with pairing value 1, and `V₀` orthogonal to both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    pub plus: Vec<Vec<u32>>,
    pub zero: Vec<Vec<u32>>,
    pub minus: Vec<Vec<u32>>,
}

impl Polarization {
    /// Coordinates of `v` in the concatenated basis `plus ++ zero ++ minus`.
    pub fn coordinates(&self, p: u32, v: &[u32]) -> Vec<u32> {
        let basis: Vec<Vec<u32>> = self.plus.iter().chain(&self.zero).chain(&self.minus).cloned().collect();
        let m = FpMatrix::from_cols(p, v.len(), &basis);
        m.solve(v).expect("square system").solution.expect("basis spans V")
    }
}

/// Greedy hyperbolic splitting with lexicographically least choices.
pub fn find_polarization(input: &PolarizationInput) -> Result<Polarization> {
    let (p, dim, polar, quad): (u32, usize, BilinearForm, Option<&QuadraticForm>) = match input {
        PolarizationInput::Alternating(w) => {
            if !w.is_alternating() {
                return Err(Error::domain("form is not alternating"));
            }
            (w.p, w.dim, w.clone(), None)
        }
        PolarizationInput::Quadratic(q) => (q.p, q.dim, q.polar_form(), Some(q)),
    };
    if !polar.is_nondegenerate() {
        return Err(Error::domain("polarization of a degenerate form"));
    }
    let qv = |v: &[u32]| quad.map_or(0, |q| q.eval(v));
    let mut remaining: Vec<Vec<u32>> = (0..dim)
        .map(|i| {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            e
        })
        .collect();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let in_span = |basis: &[Vec<u32>], v: &[u32]| {
        let mut ext = basis.to_vec();
        ext.push(v.to_vec());
        gf::span_rank(p, dim, &ext) == basis.len()
    };
    loop {
        if remaining.is_empty() {
            break;
        }
        let Some(v) = gf::all_vectors(p, dim).skip(1).find(|v| qv(v) == 0 && in_span(&remaining, v)) else {
            break;
        };
        let w = gf::all_vectors(p, dim)
            .find(|w| polar.eval(&v, w) != 0 && in_span(&remaining, w))
            .expect("nondegenerate restriction");
        let w = vec_scale(p, mod_inv(polar.eval(&v, &w), p).unwrap(), &w);
        let w = vec_sub(p, &w, &vec_scale(p, qv(&w), &v));
        debug_assert_eq!(qv(&w), 0);
        // Orthogonal complement of span(v, w) inside the remaining space.
        let k = remaining.len();
        let mut eq = FpMatrix::zeros(p, 2, k);
        for (c, b) in remaining.iter().enumerate() {
            eq.set(0, c, polar.eval(&v, b));
            eq.set(1, c, polar.eval(&w, b));
        }
        remaining = eq
            .kernel()
            .into_iter()
            .map(|coef| {
                let mut x = vec![0u32; dim];
                for (c, b) in coef.iter().zip(&remaining) {
                    x = vec_add(p, &x, &vec_scale(p, *c, b));
                }
                x
            })
            .collect();
        plus.push(v);
        minus.push(w);
    }
    Ok(Polarization { plus, zero: remaining, minus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_two_models() {
        assert_eq!(QuadraticForm::split_model(2, 1).count_zeros().unwrap(), 3);
        let nf = QuadraticForm::norm_form(2).unwrap();
        assert_eq!(nf.diag, vec![1, 1]);
        assert_eq!(nf.upper.get(0, 1), 1);
        assert_eq!(nf.count_zeros().unwrap(), 1);
    }

    #[test]
    fn polar_of_square_is_zero_in_char_two() {
        let q = QuadraticForm::new(FpMatrix::zeros(2, 1, 1), vec![1]).unwrap();
        assert!(q.polar_form().gram.is_zero());
        let q3 = QuadraticForm::new(FpMatrix::zeros(3, 1, 1), vec![1]).unwrap();
        assert_eq!(q3.polar_form().gram.get(0, 0), 2);
    }
}
