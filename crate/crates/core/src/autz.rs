//! Automorphisms of a Heisenberg group that fix the center: explicit
//! `(M, μ)` pairs acting by `(a, v) ↦ (a + μ(v), M v)`, the inner ones, the
//! projection to the isometry group of `V_P`, and the exact sequence
//! `1 → V → Aut_Z(P) → O(V, Q_P) or Sp(V, ω_P) → 1`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, mod_inv, FpMatrix};
use crate::grp::{complement_exists, ComplementCertificate, FinGroup, Subgroup, MAX_TABLE_ORDER};
use crate::heis::{HeisElement, HeisType, HeisenbergGroup};

/// Largest isometry group [`isometry_group`] will enumerate.
pub const MAX_ISOMETRY_ORDER: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralAutomorphism {
    p: u32,
    #[serde(rename = "M")]
    m: FpMatrix,
    /// Values on `V`, indexed by [`gf::vector_index`].
    mu: Vec<u32>,
}

impl CentralAutomorphism {
    /// Checks the automorphism identity
    /// `μ(v+w) − μ(v) − μ(w) = B(Mv, Mw) − B(v, w)` on all pairs.
    pub fn new(h: &HeisenbergGroup, m: FpMatrix, mu: Vec<u32>) -> Result<Self> {
        let f = CentralAutomorphism { p: h.p(), m, mu };
        f.check_shape(h)?;
        if f.m.inverse().is_none() {
            return Err(Error::domain("M is not invertible"));
        }
        if let Some((v, w)) = f.identity_violation(h) {
            return Err(Error::domain(format!("not an automorphism: identity fails at v={v:?}, w={w:?}")));
        }
        Ok(f)
    }

    pub fn identity(h: &HeisenbergGroup) -> Self {
        CentralAutomorphism { p: h.p(), m: FpMatrix::identity(h.p(), h.dim()), mu: vec![0; h.vector_count()] }
    }

    fn check_shape(&self, h: &HeisenbergGroup) -> Result<()> {
        if self.p != h.p() || self.m.rows != h.dim() || self.m.cols != h.dim() || self.mu.len() != h.vector_count() {
            return Err(Error::domain("automorphism belongs to a different Heisenberg group"));
        }
        Ok(())
    }

    fn identity_violation(&self, h: &HeisenbergGroup) -> Option<(Vec<u32>, Vec<u32>)> {
        let p = self.p;
        let vecs: Vec<Vec<u32>> = gf::all_vectors(p, h.dim()).collect();
        let images: Vec<Vec<u32>> = vecs.iter().map(|v| self.m.mul_vec(v)).collect();
        for (i, v) in vecs.iter().enumerate() {
            for (j, w) in vecs.iter().enumerate() {
                let sum = gf::vector_index(p, &gf::vec_add(p, v, w));
                let lhs = (self.mu[sum] + 2 * p - self.mu[i] - self.mu[j]) % p;
                let rhs = (h.form().eval(&images[i], &images[j]) + p - h.form().eval(v, w)) % p;
                if lhs != rhs {
                    return Some((v.clone(), w.clone()));
                }
            }
        }
        None
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.m
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.mu.len(), other.mu.len());
        let p = self.p;
        let dim = self.m.rows;
        let mu = (0..self.mu.len())
            .map(|i| {
                let v = gf::index_to_vector(p, dim, i);
                let w = other.m.mul_vec(&v);
                (other.mu[i] + self.mu[gf::vector_index(p, &w)]) % p
            })
            .collect();
        CentralAutomorphism { p, m: self.m.mul(&other.m), mu }
    }

    pub fn invert(&self) -> Self {
        let p = self.p;
        let dim = self.m.rows;
        let m_inv = self.m.inverse().expect("automorphisms are invertible");
        let mu = (0..self.mu.len())
            .map(|i| {
                let v = gf::index_to_vector(p, dim, i);
                (p - self.mu[gf::vector_index(p, &m_inv.mul_vec(&v))]) % p
            })
            .collect();
        CentralAutomorphism { p, m: m_inv, mu }
    }

    pub fn apply(&self, x: &HeisElement) -> HeisElement {
        let idx = gf::vector_index(self.p, &x.v);
        HeisElement { a: (x.a + self.mu[idx]) % self.p, v: self.m.mul_vec(&x.v) }
    }

    /// Action on element indices of `h`.
    pub fn permutation(&self, h: &HeisenbergGroup) -> Vec<u32> {
        (0..h.order()).map(|i| h.index_of(&self.apply(&h.element(i))) as u32).collect()
    }

    pub fn is_inner(&self) -> bool {
        self.m == FpMatrix::identity(self.p, self.m.rows)
    }
}

/// Conjugation by a lift of `u`: `μ(v) = ω_B(u, v)`.
pub fn inner(h: &HeisenbergGroup, u: &[u32]) -> CentralAutomorphism {
    let mu = gf::all_vectors(h.p(), h.dim()).map(|v| h.omega().eval(u, &v)).collect();
    CentralAutomorphism { p: h.p(), m: FpMatrix::identity(h.p(), h.dim()), mu }
}

pub fn project(f: &CentralAutomorphism) -> FpMatrix {
    f.m.clone()
}

/// Whether `M` preserves `Q_P` (`p = 2`) or `ω_P` (odd `p`); on failure a
/// witness vector (or the first vector of a witness pair).
pub fn isometry_witness(h: &HeisenbergGroup, m: &FpMatrix) -> Option<Vec<u32>> {
    let vecs: Vec<Vec<u32>> = gf::all_vectors(h.p(), h.dim()).collect();
    if let Some(q) = h.quadratic() {
        return vecs.into_iter().find(|v| q.eval(&m.mul_vec(v)) != q.eval(v));
    }
    let d = h.dim();
    let basis: Vec<Vec<u32>> = (0..d).map(|i| unit(d, i)).collect();
    for u in &basis {
        for w in &basis {
            if h.omega().eval(&m.mul_vec(u), &m.mul_vec(w)) != h.omega().eval(u, w) {
                return Some(u.clone());
            }
        }
    }
    None
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; d];
    e[i] = 1;
    e
}

/// For odd `p` and `B = ω_P/2`, the automorphism `(a, v) ↦ (a, M v)`.
pub fn section_odd(h: &HeisenbergGroup, m: &FpMatrix) -> Result<CentralAutomorphism> {
    let p = h.p();
    if p == 2 {
        return Err(Error::domain("no canonical section for p = 2"));
    }
    let half = mod_inv(2, p).expect("p odd");
    let d = h.dim();
    for i in 0..d {
        for j in 0..d {
            if h.form().gram.get(i, j) != h.omega().gram.get(i, j) * half % p {
                return Err(Error::domain("section requires B = ω/2"));
            }
        }
    }
    if let Some(v) = isometry_witness(h, m) {
        return Err(Error::domain(format!("M is not symplectic: witness {v:?}")));
    }
    CentralAutomorphism::new(h, m.clone(), vec![0; h.vector_count()])
}

/// The lift of an isometry `M` with `μ` vanishing on the standard basis.
pub fn lift_pointwise(h: &HeisenbergGroup, m: &FpMatrix) -> Result<CentralAutomorphism> {
    if m.rows != h.dim() || m.cols != h.dim() {
        return Err(Error::domain("matrix has the wrong size"));
    }
    if let Some(v) = isometry_witness(h, m) {
        return Err(Error::domain(format!("M is not an isometry of V_P: witness {v:?}")));
    }
    let p = h.p();
    let d = h.dim();
    let basis: Vec<Vec<u32>> = (0..d).map(|i| m.col(i)).collect();
    // D(e_i, e_j) = B(M e_i, M e_j) − B(e_i, e_j)
    let defect: Vec<Vec<u32>> = (0..d)
        .map(|i| (0..d).map(|j| (h.form().eval(&basis[i], &basis[j]) + p - h.form().gram.get(i, j)) % p).collect())
        .collect();
    let mu = gf::all_vectors(p, d)
        .map(|x| {
            let mut acc = 0u64;
            if p == 2 {
                for i in 0..d {
                    for j in i + 1..d {
                        acc += (x[i] * x[j] * defect[i][j]) as u64;
                    }
                }
            } else {
                // D(x, x)/2 minus its linear part, so that μ(e_i) = 0.
                let half = mod_inv(2, p).expect("p odd") as u64;
                let mut quad = 0u64;
                let mut lin = 0u64;
                for i in 0..d {
                    lin += x[i] as u64 * defect[i][i] as u64;
                    for j in 0..d {
                        quad += (x[i] * x[j]) as u64 % p as u64 * defect[i][j] as u64;
                    }
                }
                acc = (quad % p as u64 + (p as u64 - lin % p as u64)) * half;
            }
            (acc % p as u64) as u32
        })
        .collect();
    CentralAutomorphism::new(h, m.clone(), mu)
}

/// `|O^ε_{2n}(F_2)|` for `p = 2`, `|Sp_{2n}(F_p)|` otherwise.
pub fn isometry_group_order(h: &HeisenbergGroup) -> u64 {
    let q = h.p() as u64;
    let n = h.n() as u32;
    if n == 0 {
        return 1;
    }
    match h.kind() {
        HeisType::Odd => q.pow(n * n) * (1..=n).map(|i| q.pow(2 * i) - 1).product::<u64>(),
        kind => {
            let qn = q.pow(n);
            let twist = if kind == HeisType::Positive { qn - 1 } else { qn + 1 };
            2 * q.pow(n * (n - 1)) * twist * (1..n).map(|i| q.pow(2 * i) - 1).product::<u64>()
        }
    }
}

/// All isometries of `V_P`, by backtracking over images of the standard basis.
pub fn isometries(h: &HeisenbergGroup) -> Result<Vec<FpMatrix>> {
    let expected = isometry_group_order(h);
    if expected > MAX_ISOMETRY_ORDER {
        return Err(Error::resource(format!("isometry group of order {expected}")));
    }
    let p = h.p();
    let d = h.dim();
    let vecs: Vec<Vec<u32>> = gf::all_vectors(p, d).collect();
    let q = h.quadratic();
    let polar = q.map(|q| q.polar_form());
    let pairing = |u: &[u32], w: &[u32]| match &polar {
        Some(b) => b.eval(u, w),
        None => h.omega().eval(u, w),
    };
    let basis: Vec<Vec<u32>> = (0..d).map(|i| unit(d, i)).collect();
    // Admissible images of e_k given the images already chosen for e_0..e_{k-1}.
    let admissible = |k: usize, v: &[u32], chosen: &[usize]| -> bool {
        let own = match q {
            Some(q) => q.eval(v) == q.eval(&basis[k]),
            None => v.iter().any(|&c| c != 0),
        };
        own && chosen.iter().enumerate().all(|(j, &t)| {
            pairing(&vecs[t], v) == pairing(&basis[j], &basis[k]) && pairing(v, &vecs[t]) == pairing(&basis[k], &basis[j])
        })
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut next: Vec<usize> = vec![0];
    while let Some(start) = next.pop() {
        let k = chosen.len();
        if k == d {
            let cols: Vec<Vec<u32>> = chosen.iter().map(|&t| vecs[t].clone()).collect();
            let m = FpMatrix::from_cols(p, d, &cols);
            if m.rank() == d {
                out.push(m);
            }
            chosen.pop();
            continue;
        }
        match (start..vecs.len()).find(|&t| admissible(k, &vecs[t], &chosen)) {
            Some(t) => {
                next.push(t + 1);
                chosen.push(t);
                next.push(0);
            }
            None => {
                chosen.pop();
            }
        }
    }
    if out.len() as u64 != expected {
        return Err(Error::domain(format!("enumerated {} isometries, expected {expected}", out.len())));
    }
    Ok(out)
}

/// The isometry group of `V_P` as an abstract group; `matrices[i]` is element `i`.
#[derive(Clone, Debug)]
pub struct IsometryGroup {
    pub group: FinGroup,
    pub matrices: Vec<FpMatrix>,
}

pub fn isometry_group(h: &HeisenbergGroup) -> Result<IsometryGroup> {
    let mut matrices = isometries(h)?;
    let id = FpMatrix::identity(h.p(), h.dim());
    let pos = matrices.iter().position(|m| *m == id).expect("identity is an isometry");
    matrices.swap(0, pos);
    let index: HashMap<FpMatrix, u32> = matrices.iter().cloned().enumerate().map(|(i, m)| (m, i as u32)).collect();
    let group = FinGroup::from_elements(&matrices, &index, |a, b| a.mul(b))?;
    Ok(IsometryGroup { group, matrices })
}

/// A finite group of central automorphisms; `elements[i]` is element `i`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FinGroup,
    pub elements: Vec<CentralAutomorphism>,
}

impl AutGroup {
    pub fn generated(h: &HeisenbergGroup, gens: &[CentralAutomorphism]) -> Result<Self> {
        for g in gens {
            g.check_shape(h)?;
        }
        let (group, elements) = FinGroup::from_generators(CentralAutomorphism::identity(h), gens, |a, b| a.compose(b))?;
        Ok(AutGroup { group, elements })
    }

    pub fn trivial(h: &HeisenbergGroup) -> Self {
        Self::generated(h, &[]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, f: &CentralAutomorphism) -> Option<usize> {
        self.elements.iter().position(|g| g == f)
    }

    /// The subgroup on the given indices, re-indexed.
    pub fn subgroup(&self, sub: &[u32]) -> AutGroup {
        let (group, embed) = self.group.subgroup_group(sub);
        let elements = embed.iter().map(|&i| self.elements[i as usize].clone()).collect();
        AutGroup { group, elements }
    }
}

/// `Aut_Z(P)` generated by the inner automorphisms and lifts of generators
/// of the isometry group.
pub fn autz_group(h: &HeisenbergGroup, iso: &IsometryGroup) -> Result<AutGroup> {
    let total = h.vector_count() as u64 * iso.matrices.len() as u64;
    if total > MAX_TABLE_ORDER as u64 {
        return Err(Error::resource(format!("Aut_Z(P) of order {total}")));
    }
    let d = h.dim();
    let mut gens: Vec<CentralAutomorphism> = (0..d).map(|i| inner(h, &unit(d, i))).collect();
    for g in iso.group.small_generating_set(&iso.group.all()) {
        gens.push(lift_pointwise(h, &iso.matrices[g as usize])?);
    }
    let aut = AutGroup::generated(h, &gens)?;
    if aut.order() as u64 != total {
        return Err(Error::domain(format!("Aut_Z(P) has order {}, expected {total}", aut.order())));
    }
    Ok(aut)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactSequenceReport {
    pub p: u32,
    pub n: usize,
    #[serde(rename = "type")]
    pub kind: HeisType,
    pub kernel_order: u64,
    pub image_order: u64,
    pub autz_order: u64,
    pub materialized: bool,
    /// Kernel of the projection equals the inner automorphisms.
    pub kernel_is_inner: Option<bool>,
    /// Projection onto the full isometry group.
    pub image_is_full: Option<bool>,
    /// `None` when not decided.
    pub splits: Option<bool>,
    pub certificate: Option<ComplementCertificate>,
    /// For `p = 2`: the prediction "splits iff dim V ≤ 2".
    pub predicted_by_dimension: Option<bool>,
    /// For `p = 2`: the prediction "nonsplit iff n ≥ 3".
    pub predicted_by_rank: Option<bool>,
}

pub fn exact_sequence_report(h: &HeisenbergGroup) -> Result<ExactSequenceReport> {
    let kernel_order = h.vector_count() as u64;
    let image_order = isometry_group_order(h);
    let two = h.p() == 2;
    let mut report = ExactSequenceReport {
        p: h.p(),
        n: h.n(),
        kind: h.kind(),
        kernel_order,
        image_order,
        autz_order: kernel_order * image_order,
        materialized: false,
        kernel_is_inner: None,
        image_is_full: None,
        splits: None,
        certificate: None,
        predicted_by_dimension: two.then_some(h.dim() <= 2),
        predicted_by_rank: two.then_some(h.n() < 3),
    };
    if h.dim() > 4 || kernel_order * image_order > MAX_TABLE_ORDER as u64 {
        return Ok(report);
    }
    let iso = isometry_group(h)?;
    let aut = autz_group(h, &iso)?;
    let kernel: Subgroup = (0..aut.order() as u32).filter(|&i| aut.elements[i as usize].is_inner()).collect();
    let inner_set: HashSet<CentralAutomorphism> = gf::all_vectors(h.p(), h.dim()).map(|u| inner(h, &u)).collect();
    let kernel_set: HashSet<CentralAutomorphism> = kernel.iter().map(|&i| aut.elements[i as usize].clone()).collect();
    let image: HashSet<&FpMatrix> = aut.elements.iter().map(|f| &f.m).collect();
    report.materialized = true;
    report.kernel_is_inner = Some(kernel_set == inner_set && inner_set.len() as u64 == kernel_order);
    report.image_is_full = Some(image.len() == iso.matrices.len() && iso.matrices.iter().all(|m| image.contains(m)));
    let comp = complement_exists(&aut.group, &kernel)?;
    report.splits = Some(comp.complement.is_some());
    report.certificate = Some(comp.certificate);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum StabilizerViolation {
    /// `f(x) ∉ Ṽ⁺` for some `x ∈ Ṽ⁺`.
    MovesLift { x: u32, image: u32 },
    /// `f(x) x⁻¹ ∉ Ṽ⁺` for some `x ∈ Ṽ⁺ × P₀`.
    NotTrivialModLift { x: u32, image: u32 },
}

/// Validated pair `(Ṽ⁺, P₀)` of subgroups of `P`.
#[derive(Clone, Debug)]
pub struct PartialPolarization {
    pub lift: Subgroup,
    pub p0: Subgroup,
    product: Vec<u32>,
}

impl PartialPolarization {
    pub fn new(h: &HeisenbergGroup, lift: &[u32], p0: &[u32]) -> Result<Self> {
        let order = h.order();
        let lift_set: HashSet<u32> = lift.iter().copied().collect();
        let p0_set: HashSet<u32> = p0.iter().copied().collect();
        if lift.iter().chain(p0).any(|&x| x as usize >= order) {
            return Err(Error::domain("subgroup element out of range"));
        }
        for &x in lift {
            let ex = h.element(x as usize);
            for &y in lift {
                let prod = h.index_of(&h.mul(&ex, &h.element(y as usize))) as u32;
                if !lift_set.contains(&prod) {
                    return Err(Error::domain("Ṽ⁺ is not closed under multiplication"));
                }
            }
            if x != 0 && ex.v.iter().all(|&c| c == 0) {
                return Err(Error::domain("Ṽ⁺ meets the center"));
            }
        }
        if !(0..h.p()).all(|a| p0_set.contains(&(h.central(a) as u32))) {
            return Err(Error::domain("P₀ must contain the center"));
        }
        let mut product = HashSet::new();
        for &x in lift {
            let ex = h.element(x as usize);
            for &y in p0 {
                let ey = h.element(y as usize);
                if h.mul(&ex, &ey) != h.mul(&ey, &ex) {
                    return Err(Error::domain("Ṽ⁺ and P₀ do not commute"));
                }
                let xy = h.index_of(&h.mul(&ex, &ey)) as u32;
                product.insert(xy);
                for &y2 in p0 {
                    let prod = h.index_of(&h.mul(&ey, &h.element(y2 as usize))) as u32;
                    if !p0_set.contains(&prod) {
                        return Err(Error::domain("P₀ is not closed under multiplication"));
                    }
                }
            }
        }
        let mut product: Vec<u32> = product.into_iter().collect();
        product.sort_unstable();
        Ok(PartialPolarization { lift: lift.to_vec(), p0: p0.to_vec(), product })
    }

    /// `Ṽ⁺` and `P₀` from the polarization used by the Heisenberg representation.
    pub fn from_polarization(h: &HeisenbergGroup, pol: &crate::forms::Polarization) -> Result<Self> {
        let lift = h.splitting(&pol.plus)?;
        let mut p0: Subgroup = (0..h.order() as u32)
            .filter(|&x| {
                let c = pol.coordinates(h.p(), &h.element(x as usize).v);
                c[..pol.plus.len()].iter().chain(&c[pol.plus.len() + pol.zero.len()..]).all(|&t| t == 0)
            })
            .collect();
        p0.sort_unstable();
        Self::new(h, &lift, &p0)
    }

    pub fn product(&self) -> &[u32] {
        &self.product
    }
}

/// `None` when `f ∈ 𝒫(Ṽ⁺)`, otherwise the first violation found.
pub fn stabilizer_violation(h: &HeisenbergGroup, f: &CentralAutomorphism, pp: &PartialPolarization) -> Result<Option<StabilizerViolation>> {
    f.check_shape(h)?;
    let lift_set: HashSet<u32> = pp.lift.iter().copied().collect();
    for &x in &pp.lift {
        let image = h.index_of(&f.apply(&h.element(x as usize))) as u32;
        if !lift_set.contains(&image) {
            return Ok(Some(StabilizerViolation::MovesLift { x, image }));
        }
    }
    for &x in &pp.product {
        let ex = h.element(x as usize);
        let image = h.index_of(&h.mul(&f.apply(&ex), &h.inv(&ex))) as u32;
        if !lift_set.contains(&image) {
            return Ok(Some(StabilizerViolation::NotTrivialModLift { x, image }));
        }
    }
    Ok(None)
}

pub fn stabilizer_membership(h: &HeisenbergGroup, f: &CentralAutomorphism, pp: &PartialPolarization) -> Result<bool> {
    Ok(stabilizer_violation(h, f, pp)?.is_none())
}

/// Indices of `aut` lying in `𝒫(Ṽ⁺)`.
pub fn polarization_stabilizer(h: &HeisenbergGroup, aut: &AutGroup, pp: &PartialPolarization) -> Result<Subgroup> {
    let mut out = Vec::new();
    for (i, f) in aut.elements.iter().enumerate() {
        if stabilizer_membership(h, f, pp)? {
            out.push(i as u32);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_on_quaternions() {
        let h = HeisenbergGroup::standard_model(2, 1, HeisType::Negative).unwrap();
        let f = inner(&h, &[1, 0]);
        assert_eq!(f.apply(&HeisElement { a: 0, v: vec![0, 1] }), HeisElement { a: 1, v: vec![0, 1] });
    }

    #[test]
    fn small_isometry_orders() {
        for (kind, order) in [(HeisType::Positive, 2), (HeisType::Negative, 6)] {
            let h = HeisenbergGroup::standard_model(2, 1, kind).unwrap();
            assert_eq!(isometries(&h).unwrap().len(), order);
        }
        let h = HeisenbergGroup::standard_model(3, 1, HeisType::Odd).unwrap();
        assert_eq!(isometries(&h).unwrap().len(), 24);
    }
}
