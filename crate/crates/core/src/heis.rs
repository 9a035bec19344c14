//! Heisenberg groups `V♯_B`: pairs `(a, v) ∈ F_p × F_p^{2n}` with
//! `(a, v)(b, w) = (a + b + B(v, w), v + w)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{BilinearForm, FormKind, PolarizationInput, QuadraticForm};
use crate::gf::{self, mod_inv, FpMatrix};
use crate::grp::{FinGroup, Subgroup, MAX_TABLE_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeisType {
    Odd,
    Positive,
    Negative,
}

impl std::str::FromStr for HeisType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(HeisType::Odd),
            "positive" => Ok(HeisType::Positive),
            "negative" => Ok(HeisType::Negative),
            _ => Err(Error::domain(format!("unknown type {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisElement {
    pub a: u32,
    pub v: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HeisRepr", into = "HeisRepr")]
pub struct HeisenbergGroup {
    p: u32,
    n: usize,
    b: BilinearForm,
    omega: BilinearForm,
    quadratic: Option<QuadraticForm>,
    kind: HeisType,
}

#[derive(Serialize, Deserialize)]
struct HeisRepr {
    p: u32,
    n: usize,
    gram: Vec<Vec<u32>>,
    #[serde(rename = "type")]
    kind: HeisType,
}

impl From<HeisenbergGroup> for HeisRepr {
    fn from(h: HeisenbergGroup) -> Self {
        HeisRepr { p: h.p, n: h.n, gram: h.b.gram.to_rows(), kind: h.kind }
    }
}

impl TryFrom<HeisRepr> for HeisenbergGroup {
    type Error = Error;
    fn try_from(r: HeisRepr) -> Result<Self> {
        let b = if r.gram.is_empty() { BilinearForm::zero(r.p, 0) } else { BilinearForm::from_rows(r.p, &r.gram)? };
        let h = HeisenbergGroup::build(r.p, b)?;
        if h.n != r.n || h.kind != r.kind {
            return Err(Error::domain("recorded n or type disagrees with the form"));
        }
        Ok(h)
    }
}

impl HeisenbergGroup {
    /// `V♯_B`; `B` may be any bilinear form whose alternating part is
    /// nondegenerate (the zero-dimensional form gives `Z/p`).
    pub fn build(p: u32, b: BilinearForm) -> Result<Self> {
        gf::check_prime(p)?;
        if b.p != p {
            return Err(Error::domain("form is over a different field"));
        }
        let omega = b.associated_alternating();
        if let Some(k) = omega.radical().into_iter().next() {
            return Err(Error::domain(format!("ω_B is degenerate: kernel vector {k:?}")));
        }
        let n = b.dim / 2;
        let quadratic = (p == 2).then(|| b.diagonal_quadratic());
        let kind = match &quadratic {
            None => HeisType::Odd,
            Some(q) if q.dim == 0 => HeisType::Positive,
            Some(q) => match q.classify()?.kind {
                FormKind::Split => HeisType::Positive,
                FormKind::Nonsplit => HeisType::Negative,
                FormKind::Degenerate => unreachable!("polar form of Q_P is ω_B"),
            },
        };
        Ok(HeisenbergGroup { p, n, b, omega, quadratic, kind })
    }

    /// The reference models: `B(e_{2i}, e_{2i+1}) = 1` on each hyperbolic
    /// block, except that the negative type puts `B(e, e) = B(f, f) = B(e, f) = 1`
    /// on the last block, and odd `p` uses `B = ω/2`.
    pub fn standard_model(p: u32, n: usize, kind: HeisType) -> Result<Self> {
        gf::check_prime(p)?;
        let mut g = FpMatrix::zeros(p, 2 * n, 2 * n);
        match (p == 2, kind) {
            (false, HeisType::Odd) => {
                let half = mod_inv(2, p).unwrap();
                for i in 0..n {
                    g.set(2 * i, 2 * i + 1, half);
                    g.set(2 * i + 1, 2 * i, p - half);
                }
            }
            (true, HeisType::Positive) | (true, HeisType::Negative) => {
                for i in 0..n {
                    g.set(2 * i, 2 * i + 1, 1);
                }
                if kind == HeisType::Negative {
                    if n == 0 {
                        return Err(Error::domain("negative type needs n >= 1"));
                    }
                    g.set(2 * n - 2, 2 * n - 2, 1);
                    g.set(2 * n - 1, 2 * n - 1, 1);
                }
            }
            _ => return Err(Error::domain(format!("type {kind:?} is not available for p = {p}"))),
        }
        Self::build(p, BilinearForm::new(g)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn form(&self) -> &BilinearForm {
        &self.b
    }

    pub fn omega(&self) -> &BilinearForm {
        &self.omega
    }

    /// `Q_P(v) = B(v, v)`, present for `p = 2`.
    pub fn quadratic(&self) -> Option<&QuadraticForm> {
        self.quadratic.as_ref()
    }

    pub fn kind(&self) -> HeisType {
        self.kind
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(2 * self.n as u32 + 1)
    }

    pub fn vector_count(&self) -> usize {
        (self.p as usize).pow(2 * self.n as u32)
    }

    // Elements are indexed as a + p · (index of v).

    pub fn index_of(&self, x: &HeisElement) -> usize {
        x.a as usize + self.p as usize * gf::vector_index(self.p, &x.v)
    }

    pub fn element(&self, idx: usize) -> HeisElement {
        let p = self.p as usize;
        HeisElement { a: (idx % p) as u32, v: gf::index_to_vector(self.p, self.dim(), idx / p) }
    }

    pub fn central(&self, a: u32) -> usize {
        (a % self.p) as usize
    }

    pub fn vector_lift(&self, v: &[u32]) -> usize {
        self.p as usize * gf::vector_index(self.p, v)
    }

    pub fn mul(&self, x: &HeisElement, y: &HeisElement) -> HeisElement {
        let a = (x.a + y.a + self.b.eval(&x.v, &y.v)) % self.p;
        HeisElement { a, v: gf::vec_add(self.p, &x.v, &y.v) }
    }

    pub fn inv(&self, x: &HeisElement) -> HeisElement {
        let v = gf::vec_scale(self.p, self.p - 1, &x.v);
        // (a, v)(c, -v) = (a + c - B(v, v), 0)
        let a = (2 * self.p - x.a + self.b.eval(&x.v, &x.v)) % self.p;
        HeisElement { a, v }
    }

    /// Multiplication table; element 0 is the identity.
    pub fn group(&self) -> Result<FinGroup> {
        let order = self.order();
        if order > MAX_TABLE_ORDER {
            return Err(Error::resource(format!("Heisenberg group of order {order}")));
        }
        let p = self.p as usize;
        let vc = self.vector_count();
        let vecs: Vec<Vec<u32>> = (0..vc).map(|i| gf::index_to_vector(self.p, self.dim(), i)).collect();
        let mut bvals = vec![0u32; vc * vc];
        let mut sums = vec![0u32; vc * vc];
        for i in 0..vc {
            for j in 0..vc {
                bvals[i * vc + j] = self.b.eval(&vecs[i], &vecs[j]);
                sums[i * vc + j] = gf::vector_index(self.p, &gf::vec_add(self.p, &vecs[i], &vecs[j])) as u32;
            }
        }
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (a, i) = (x % p, x / p);
            for y in 0..order {
                let (b, j) = (y % p, y / p);
                let c = (a + b + bvals[i * vc + j] as usize) % p;
                table[x * order + y] = (c + p * sums[i * vc + j] as usize) as u32;
            }
        }
        FinGroup::from_table(table, order)
    }

    /// `ω_P` from commutators of lifts and, for `p = 2`, `Q_P` from squares.
    pub fn induced_forms(&self) -> (BilinearForm, Option<QuadraticForm>) {
        let d = self.dim();
        let lift = |v: &[u32]| HeisElement { a: 0, v: v.to_vec() };
        let mut gram = FpMatrix::zeros(self.p, d, d);
        for i in 0..d {
            for j in 0..d {
                let (mut ei, mut ej) = (vec![0; d], vec![0; d]);
                ei[i] = 1;
                ej[j] = 1;
                let (x, y) = (lift(&ei), lift(&ej));
                let comm = self.mul(&self.mul(&x, &y), &self.mul(&self.inv(&x), &self.inv(&y)));
                debug_assert!(comm.v.iter().all(|&c| c == 0));
                gram.set(i, j, comm.a);
            }
        }
        let omega = BilinearForm::new(gram).expect("prime checked at build");
        let quadratic = (self.p == 2).then(|| {
            QuadraticForm::from_fn(2, d, |v| {
                let x = lift(v);
                self.mul(&x, &x).a
            })
        });
        (omega, quadratic)
    }

    pub fn classify(&self) -> HeisType {
        self.kind
    }

    pub fn is_isomorphic(&self, other: &HeisenbergGroup) -> bool {
        self.p == other.p && self.n == other.n && self.kind == other.kind
    }

    /// Central product, realised on the orthogonal sum of the defining forms.
    pub fn central_product(&self, other: &HeisenbergGroup) -> Result<HeisenbergGroup> {
        if self.p != other.p {
            return Err(Error::domain("central product of groups over different primes"));
        }
        Self::build(self.p, self.b.orthogonal_sum(&other.b)?)
    }

    /// A vector of `W` violating isotropy (`Q_P(w) ≠ 0` for `p = 2`,
    /// `ω(w, w') ≠ 0` for odd `p`), if any.
    pub fn isotropy_witness(&self, basis: &[Vec<u32>]) -> Option<Vec<u32>> {
        if let Some(q) = &self.quadratic {
            for coef in gf::all_vectors(2, basis.len()).skip(1) {
                let w = combine(2, self.dim(), basis, &coef);
                if q.eval(&w) != 0 {
                    return Some(w);
                }
            }
            None
        } else {
            for (i, u) in basis.iter().enumerate() {
                for w in &basis[i + 1..] {
                    if self.omega.eval(u, w) != 0 {
                        return Some(u.clone());
                    }
                }
            }
            None
        }
    }

    /// Element `∏ (0, u_i)^{x_i}` of the splitting spanned by `basis`.
    pub fn splitting_element(&self, basis: &[Vec<u32>], coords: &[u32]) -> HeisElement {
        let mut x = HeisElement { a: 0, v: vec![0; self.dim()] };
        for (u, &c) in basis.iter().zip(coords) {
            let g = HeisElement { a: 0, v: u.clone() };
            for _ in 0..c {
                x = self.mul(&x, &g);
            }
        }
        x
    }

    /// Splitting of an isotropic subspace: the subgroup generated by the
    /// lifts `(0, u_i)` of a basis, which projects bijectively onto `W`.
    pub fn splitting(&self, basis: &[Vec<u32>]) -> Result<Subgroup> {
        if gf::span_rank(self.p, self.dim(), basis) != basis.len() {
            return Err(Error::domain("subspace basis is not linearly independent"));
        }
        if let Some(w) = self.isotropy_witness(basis) {
            return Err(Error::domain(format!("subspace is not isotropic: witness {w:?}")));
        }
        let mut out: Subgroup = gf::all_vectors(self.p, basis.len())
            .map(|c| self.index_of(&self.splitting_element(basis, &c)) as u32)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Input for polarizations of `V_P`: `Q_P` when `p = 2`, `ω_P` otherwise.
    pub fn polarization_input(&self) -> PolarizationInput {
        match &self.quadratic {
            Some(q) => PolarizationInput::Quadratic(q.clone()),
            None => PolarizationInput::Alternating(self.omega.clone()),
        }
    }
}

pub(crate) fn combine(p: u32, dim: usize, basis: &[Vec<u32>], coef: &[u32]) -> Vec<u32> {
    let mut w = vec![0u32; dim];
    for (b, &c) in basis.iter().zip(coef) {
        w = gf::vec_add(p, &w, &gf::vec_scale(p, c, b));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_in_char_two() {
        let q8 = HeisenbergGroup::standard_model(2, 1, HeisType::Negative).unwrap();
        let x = HeisElement { a: 0, v: vec![1, 0] };
        assert_eq!(q8.mul(&x, &x), HeisElement { a: 1, v: vec![0, 0] });
        assert_eq!(q8.kind(), HeisType::Negative);
    }

    #[test]
    fn odd_type_rejected_for_two() {
        assert!(HeisenbergGroup::standard_model(2, 1, HeisType::Odd).is_err());
    }
}
