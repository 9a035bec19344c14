//! Representations of finite groups by matrices over cyclotomic fields:
//! Heisenberg representations, characters, Frobenius–Schur indicators and
//! real/quaternionic structures, induction, invariants, intertwiners and
//! Clifford decomposition.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{sqrt_conductor, CycField};
use crate::error::{Error, Result};
use crate::forms::{find_polarization, Polarization};
use crate::gf;
use crate::grp::{FinGroup, Subgroup};
use crate::heis::{HeisElement, HeisenbergGroup};
use crate::{Cyc, CycMat, Rational};

/// Largest index for [`induce`].
pub const MAX_INDUCTION_INDEX: usize = 512;

/// Matrices for every element of a group, indexed like the group table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CycRepRepr", into = "CycRepRepr")]
pub struct CycRep {
    field: Arc<CycField>,
    dim: usize,
    matrices: Vec<CycMat>,
}

#[derive(Serialize, Deserialize)]
struct CycRepRepr {
    #[serde(rename = "N")]
    conductor: u64,
    dim: usize,
    matrices: Vec<CycMat>,
}

impl From<CycRep> for CycRepRepr {
    fn from(r: CycRep) -> Self {
        CycRepRepr { conductor: r.field.conductor(), dim: r.dim, matrices: r.matrices }
    }
}

impl TryFrom<CycRepRepr> for CycRep {
    type Error = Error;
    fn try_from(r: CycRepRepr) -> Result<Self> {
        let field = CycField::new(r.conductor)?;
        let matrices = r.matrices.iter().map(|m| m.embed(&field)).collect::<Result<Vec<_>>>()?;
        CycRep::new(&field, r.dim, matrices)
    }
}

impl CycRep {
    pub fn new(field: &Arc<CycField>, dim: usize, matrices: Vec<CycMat>) -> Result<Self> {
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim || m.field().conductor() != field.conductor()) {
            return Err(Error::domain("representation matrices have inconsistent shape or field"));
        }
        Ok(CycRep { field: field.clone(), dim, matrices })
    }

    pub fn trivial(field: &Arc<CycField>, order: usize) -> Self {
        CycRep { field: field.clone(), dim: 1, matrices: vec![CycMat::identity(field, 1); order] }
    }

    /// Left regular representation.
    pub fn regular(field: &Arc<CycField>, g: &FinGroup) -> Self {
        let n = g.order();
        let matrices = (0..n)
            .map(|x| {
                let mut m = CycMat::zeros(field, n, n);
                for y in 0..n {
                    m.set(g.mul(x, y), y, Cyc::one(field));
                }
                m
            })
            .collect();
        CycRep { field: field.clone(), dim: n, matrices }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, g: usize) -> &CycMat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CycMat] {
        &self.matrices
    }

    pub fn embed(&self, target: &Arc<CycField>) -> Result<Self> {
        let matrices = self.matrices.iter().map(|m| m.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(CycRep { field: target.clone(), dim: self.dim, matrices })
    }

    /// Exact check of `ρ(1) = 1` and `ρ(s)ρ(x) = ρ(sx)` for generators `s`
    /// and all `x`, which forces multiplicativity everywhere.
    pub fn is_homomorphism(&self, g: &FinGroup) -> bool {
        if self.matrices.len() != g.order() || !self.matrices[0].is_identity() {
            return false;
        }
        let gens = g.generators_of(&g.all());
        gens.iter().all(|&s| {
            (0..g.order()).all(|x| self.matrices[s as usize].mul(&self.matrices[x]) == self.matrices[g.mul(s as usize, x)])
        })
    }

    pub fn character(&self) -> Vec<Cyc> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Restriction to the elements of `sub`, in that order.
    pub fn restrict(&self, sub: &[u32]) -> CycRep {
        CycRep { field: self.field.clone(), dim: self.dim, matrices: sub.iter().map(|&h| self.matrices[h as usize].clone()).collect() }
    }

    /// Tensor product with a linear character given as exponents of ζ_N.
    pub fn twist(&self, chi: &[u64], modulus: u64) -> Result<CycRep> {
        if !self.field.conductor().is_multiple_of(modulus) {
            return Err(Error::domain("character values are outside the field"));
        }
        let step = (self.field.conductor() / modulus) as i64;
        let matrices = self
            .matrices
            .iter()
            .zip(chi)
            .map(|(m, &k)| m.scale(&Cyc::zeta_pow(&self.field, k as i64 * step)))
            .collect();
        Ok(CycRep { field: self.field.clone(), dim: self.dim, matrices })
    }
}

/// A class function given on conjugacy-class representatives.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Character {
    pub class_reps: Vec<u32>,
    pub values: Vec<Cyc>,
}

impl Character {
    pub fn of(g: &FinGroup, rep: &CycRep) -> Self {
        let chi = rep.character();
        let class_reps: Vec<u32> = g.conjugacy_classes().iter().map(|c| c[0]).collect();
        let values = class_reps.iter().map(|&r| chi[r as usize].clone()).collect();
        Character { class_reps, values }
    }
}

/// `(1/|G|) Σ χ₁(g) conj(χ₂(g))`, which is rational for characters.
pub fn inner_product(chi1: &[Cyc], chi2: &[Cyc]) -> Result<Rational> {
    let field = chi1[0].field().clone();
    let mut acc = Cyc::zero(&field);
    for (a, b) in chi1.iter().zip(chi2) {
        acc = &acc + &(a * &b.conj());
    }
    let total = acc.as_scalar().ok_or_else(|| Error::domain("character inner product is not rational"))?;
    Ok(total / Rational::from_integer(chi1.len() as i128))
}

pub fn is_irreducible(rep: &CycRep) -> bool {
    let chi = rep.character();
    inner_product(&chi, &chi).is_ok_and(|v| v.is_one())
}

/// Frobenius–Schur indicator `(1/|G|) Σ χ(g²)` of an irreducible representation.
pub fn frobenius_schur(g: &FinGroup, rep: &CycRep) -> Result<i8> {
    if !is_irreducible(rep) {
        return Err(Error::domain("Frobenius–Schur indicator of a reducible representation"));
    }
    let chi = rep.character();
    let mut acc = Cyc::zero(rep.field());
    for x in 0..g.order() {
        acc = &acc + &chi[g.mul(x, x)];
    }
    let v = acc.as_scalar().ok_or_else(|| Error::domain("indicator is not rational"))? / Rational::from_integer(g.order() as i128);
    if v.is_zero() {
        Ok(0)
    } else if v.is_one() {
        Ok(1)
    } else if v == -Rational::one() {
        Ok(-1)
    } else {
        Err(Error::domain(format!("indicator {v} outside {{-1, 0, 1}}")))
    }
}

/// `Σ_g ρ₂(g) S ρ₁(g⁻¹)` for the elementary seeds `S = E_ij` in row-major
/// order, returning the first nonzero average rescaled so its first nonzero
/// entry is 1. The result `T` satisfies `T ρ₁(g) = ρ₂(g) T`.
pub fn intertwiner_by<'a>(
    g: &FinGroup,
    dim1: usize,
    dim2: usize,
    field: &Arc<CycField>,
    rho1: &dyn Fn(usize) -> &'a CycMat,
    rho2: &dyn Fn(usize) -> &'a CycMat,
) -> Option<CycMat> {
    for i in 0..dim2 {
        for j in 0..dim1 {
            let mut t = CycMat::zeros(field, dim2, dim1);
            for x in 0..g.order() {
                let a = rho2(x);
                let b = rho1(g.inv(x));
                for r in 0..dim2 {
                    let ar = a.get(r, i);
                    if ar.is_zero() {
                        continue;
                    }
                    for c in 0..dim1 {
                        let bc = b.get(j, c);
                        if bc.is_zero() {
                            continue;
                        }
                        let cur = t.get(r, c).clone();
                        t.set(r, c, &cur + &(ar * bc));
                    }
                }
            }
            if !t.is_zero() {
                return t.normalized();
            }
        }
    }
    None
}

pub fn intertwiner(g: &FinGroup, rep1: &CycRep, rep2: &CycRep) -> Option<CycMat> {
    intertwiner_by(g, rep1.dim, rep2.dim, &rep1.field, &|x| rep1.matrix(x), &|x| rep2.matrix(x))
}

/// An antilinear self-intertwiner `v ↦ J·conj(v)` with `J·conj(J) = sign·I`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RStructure {
    pub j: CycMat,
    pub sign: i8,
}

/// Real or quaternionic structure of an irreducible self-dual representation;
/// `None` for complex type. The field may be enlarged to hold the
/// normalising square root.
pub fn r_structure(g: &FinGroup, rep: &CycRep) -> Result<Option<RStructure>> {
    let fs = frobenius_schur(g, rep)?;
    if fs == 0 {
        return Ok(None);
    }
    let conj: Vec<CycMat> = rep.matrices.iter().map(|m| m.conj()).collect();
    let j = intertwiner_by(g, rep.dim, rep.dim, &rep.field, &|x| &conj[x], &|x| rep.matrix(x))
        .ok_or_else(|| Error::domain("no intertwiner between ρ and its conjugate"))?;
    let lambda = j.mul(&j.conj()).as_scalar().ok_or_else(|| Error::domain("J·conj(J) is not scalar"))?;
    let lambda = lambda.as_scalar().ok_or_else(|| Error::domain("J·conj(J) is not rational"))?;
    let sign = if lambda.is_positive() { 1 } else { -1 };
    if sign != fs {
        return Err(Error::domain("sign of J·conj(J) disagrees with the indicator"));
    }
    let abs = lambda.abs();
    let need = sqrt_conductor(&abs).ok_or_else(|| Error::domain("square root out of range"))?;
    let cond = rep.field.conductor().lcm(&need);
    let field = if cond == rep.field.conductor() { rep.field.clone() } else { CycField::new(cond)? };
    let root = Cyc::sqrt_rational(&field, &abs).expect("conductor chosen to contain the root");
    let j = j.embed(&field)?.scale(&root.inv().expect("nonzero"));
    debug_assert_eq!(j.mul(&j.conj()).as_scalar().and_then(|c| c.as_scalar()), Some(Rational::from_integer(sign as i128)));
    Ok(Some(RStructure { j, sign }))
}

// ---------------------------------------------------------------------------
// Induction, invariants

/// Left coset representatives of `sub`: the least element index in each coset,
/// cosets ordered by that representative.
pub fn coset_representatives(g: &FinGroup, sub: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for t in 0..g.order() {
        if seen[t] {
            continue;
        }
        reps.push(t as u32);
        for &h in sub {
            seen[g.mul(t, h as usize)] = true;
        }
    }
    reps
}

/// `Ind_H^G(π)` on the basis `t_i ⊗ e_k`; `pi` is indexed by position in
/// `sub`, and `reps` lists one representative per left coset.
pub fn induce(g: &FinGroup, sub: &[u32], pi: &CycRep, reps: Option<&[u32]>) -> Result<CycRep> {
    if pi.order() != sub.len() {
        return Err(Error::domain("subgroup representation has the wrong number of matrices"));
    }
    let owned;
    let reps = match reps {
        Some(r) => r,
        None => {
            owned = coset_representatives(g, sub);
            &owned
        }
    };
    let index = reps.len();
    if index * sub.len() != g.order() {
        return Err(Error::domain("coset representatives do not partition the group"));
    }
    if index > MAX_INDUCTION_INDEX {
        return Err(Error::resource(format!("induction of index {index}")));
    }
    let pos: HashMap<u32, usize> = sub.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut coset_of = vec![usize::MAX; g.order()];
    for (i, &t) in reps.iter().enumerate() {
        for &h in sub {
            let x = g.mul(t as usize, h as usize);
            if coset_of[x] != usize::MAX {
                return Err(Error::domain("two representatives share a coset"));
            }
            coset_of[x] = i;
        }
    }
    let d = pi.dim;
    let field = &pi.field;
    let matrices = (0..g.order())
        .map(|x| {
            let mut m = CycMat::zeros(field, index * d, index * d);
            for (col, &t) in reps.iter().enumerate() {
                let gt = g.mul(x, t as usize);
                let row = coset_of[gt];
                let h = g.mul(g.inv(reps[row] as usize), gt);
                let block = pi.matrix(pos[&(h as u32)]);
                for r in 0..d {
                    for c in 0..d {
                        m.set(row * d + r, col * d + c, block.get(r, c).clone());
                    }
                }
            }
            m
        })
        .collect();
    Ok(CycRep { field: field.clone(), dim: index * d, matrices })
}

/// `(1/|H|) Σ_{h ∈ H} ρ(h)`.
pub fn averaging_projector(rep: &CycRep, sub: &[u32]) -> CycMat {
    let mut acc = CycMat::zeros(&rep.field, rep.dim, rep.dim);
    for &h in sub {
        acc = acc.add(rep.matrix(h as usize));
    }
    acc.scale(&Cyc::from_scalar(&rep.field, Rational::new(1, sub.len() as i128)))
}

/// Basis (as rows in reduced echelon form) of the `H`-fixed vectors.
pub fn invariants(rep: &CycRep, sub: &[u32]) -> Vec<Vec<Cyc>> {
    row_space(&averaging_projector(rep, sub).transpose())
}

/// Nonzero rows of the reduced echelon form.
pub fn row_space(m: &CycMat) -> Vec<Vec<Cyc>> {
    let mut r = m.clone();
    let piv = r.row_reduce();
    (0..piv.len()).map(|i| (0..r.cols()).map(|j| r.get(i, j).clone()).collect()).collect()
}

// ---------------------------------------------------------------------------
// Heisenberg representations

/// The Heisenberg representation together with the data it was induced from.
#[derive(Clone, Debug)]
pub struct HeisenbergRep {
    pub psi: u32,
    pub rep: CycRep,
    pub polarization: Polarization,
    /// Splitting of `V⁺` (element indices of `P`).
    pub plus_lift: Subgroup,
    /// Preimage of `V₀`.
    pub p0: Subgroup,
    /// `ω_{0,ψ}` on the elements of `p0`, in that order.
    pub base: CycRep,
    /// Coset representatives `(0, x)`, `x ∈ V⁻` in lexicographic coordinate order.
    pub coset_reps: Vec<u32>,
}

/// Conductor used for a Heisenberg group over F_p.
pub fn heisenberg_conductor(p: u32) -> u64 {
    (p as u64).lcm(&4)
}

/// `ψ_k(a) = ζ_p^{k a}` as an element of `field`.
pub fn psi_value(field: &Arc<CycField>, p: u32, k: u32, a: u32) -> Cyc {
    let step = (field.conductor() / p as u64) as i64;
    Cyc::zeta_pow(field, step * ((k as i64 * a as i64) % p as i64))
}

/// `ω_ψ ≅ Ind_{V⁺×P₀}^P(triv ⊠ ω_{0,ψ})` with `ψ(a) = ζ_p^{k a}`.
pub fn heisenberg_rep(h: &HeisenbergGroup, k: u32) -> Result<HeisenbergRep> {
    let p = h.p();
    if k.is_multiple_of(p) {
        return Err(Error::domain("ψ must be nontrivial on the center"));
    }
    let field = CycField::new(heisenberg_conductor(p))?;
    let dim = h.dim();
    let pol = find_polarization(&h.polarization_input())?;
    let vc = h.vector_count();
    let coords: Vec<Vec<u32>> = (0..vc).map(|i| pol.coordinates(p, &gf::index_to_vector(p, dim, i))).collect();
    let (np, nz) = (pol.plus.len(), pol.zero.len());
    let split = |c: &[u32]| (c[..np].to_vec(), c[np..np + nz].to_vec(), c[np + nz..].to_vec());

    // ω_{0,ψ} on P₀.
    let d0 = if nz == 0 { 1 } else { 2 };
    let i_unit = Cyc::zeta_pow(&field, (field.conductor() / 4) as i64);
    let one = Cyc::one(&field);
    let zero = Cyc::zero(&field);
    let x_mat = CycMat::from_rows(&field, vec![vec![i_unit.clone(), zero.clone()], vec![zero.clone(), -&i_unit]]);
    let y_mat = CycMat::from_rows(&field, vec![vec![zero.clone(), one.clone()], vec![-&one, zero.clone()]]);
    let base_of = |z: &HeisElement| -> CycMat {
        if nz == 0 {
            debug_assert!(z.v.iter().all(|&c| c == 0));
            return CycMat::scalar(&field, 1, &psi_value(&field, p, k, z.a));
        }
        let c = &coords[gf::vector_index(p, &z.v)];
        let (alpha, beta) = (c[np], c[np + 1]);
        let w = h.splitting_element(&pol.zero, &[alpha, beta]);
        let central = (z.a + p - w.a) % p;
        let mut m = CycMat::scalar(&field, 2, &psi_value(&field, p, k, central));
        if alpha == 1 {
            m = m.mul(&x_mat);
        }
        if beta == 1 {
            m = m.mul(&y_mat);
        }
        m
    };

    let minus_vecs: Vec<Vec<u32>> = gf::all_vectors(p, pol.minus.len()).map(|c| crate::heis::combine(p, dim, &pol.minus, &c)).collect();
    let coset_reps: Vec<u32> = minus_vecs.iter().map(|v| h.vector_lift(v) as u32).collect();
    let minus_pos: HashMap<Vec<u32>, usize> = gf::all_vectors(p, pol.minus.len()).enumerate().map(|(i, c)| (c, i)).collect();
    let index = coset_reps.len();
    let total = index * d0;

    let mut matrices = Vec::with_capacity(h.order());
    for gi in 0..h.order() {
        let g = h.element(gi);
        let mut m = CycMat::zeros(&field, total, total);
        for (col, xv) in minus_vecs.iter().enumerate() {
            let t = HeisElement { a: 0, v: xv.clone() };
            let gt = h.mul(&g, &t);
            let (_, _, ym) = split(&coords[gf::vector_index(p, &gt.v)]);
            let row = minus_pos[&ym];
            let ty = HeisElement { a: 0, v: minus_vecs[row].clone() };
            let hh = h.mul(&h.inv(&ty), &gt);
            let (hp, _, hm) = split(&coords[gf::vector_index(p, &hh.v)]);
            debug_assert!(hm.iter().all(|&c| c == 0));
            let s = h.splitting_element(&pol.plus, &hp);
            let z = h.mul(&h.inv(&s), &hh);
            let block = base_of(&z);
            for r in 0..d0 {
                for c in 0..d0 {
                    m.set(row * d0 + r, col * d0 + c, block.get(r, c).clone());
                }
            }
        }
        matrices.push(m);
    }
    let rep = CycRep { field: field.clone(), dim: total, matrices };

    let plus_lift = h.splitting(&pol.plus)?;
    let mut p0: Subgroup = (0..h.order())
        .filter(|&x| {
            let (cp, _, cm) = split(&coords[x / p as usize]);
            cp.iter().chain(&cm).all(|&c| c == 0)
        })
        .map(|x| x as u32)
        .collect();
    p0.sort_unstable();
    let base_mats = p0.iter().map(|&z| base_of(&h.element(z as usize))).collect();
    let base = CycRep { field: field.clone(), dim: d0, matrices: base_mats };
    Ok(HeisenbergRep { psi: k, rep, polarization: pol, plus_lift, p0, base, coset_reps })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SvnEntry {
    pub psi: u32,
    pub dim: usize,
    pub irreducible: bool,
    pub central_character_ok: bool,
    pub homomorphism_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SvnReport {
    pub p: u32,
    pub n: usize,
    pub order: usize,
    pub conjugacy_classes: usize,
    pub linear_characters: usize,
    pub expected_dim: usize,
    pub entries: Vec<SvnEntry>,
    /// `|G/[G,G]| + Σ_ψ dim(ω_ψ)² = |P|` and the class count matches, so the
    /// constructed representations exhaust the irreducibles.
    pub complete: bool,
}

/// Builds `ω_ψ` for every nontrivial `ψ` and checks it against the
/// irreducible-count identity.
pub fn verify_stone_von_neumann(h: &HeisenbergGroup) -> Result<SvnReport> {
    let g = h.group()?;
    let p = h.p();
    let classes = g.conjugacy_classes().len();
    let linear = g.abelianization_order();
    let expected_dim = (p as usize).pow(h.n() as u32);
    let mut entries = Vec::new();
    let mut sum_sq = linear;
    for k in 1..p {
        let hr = heisenberg_rep(h, k)?;
        let rep = &hr.rep;
        let central_ok = (0..p).all(|a| {
            rep.matrix(h.central(a)).as_scalar().is_some_and(|c| c == psi_value(rep.field(), p, k, a))
        });
        let entry = SvnEntry {
            psi: k,
            dim: rep.dim(),
            irreducible: is_irreducible(rep),
            central_character_ok: central_ok,
            homomorphism_ok: rep.is_homomorphism(&g),
        };
        sum_sq += entry.dim * entry.dim;
        entries.push(entry);
    }
    let complete = sum_sq == g.order()
        && classes == linear + (p as usize - 1)
        && entries.iter().all(|e| e.irreducible && e.central_character_ok && e.homomorphism_ok && e.dim == expected_dim);
    Ok(SvnReport {
        p,
        n: h.n(),
        order: g.order(),
        conjugacy_classes: classes,
        linear_characters: linear,
        expected_dim,
        entries,
        complete,
    })
}

// ---------------------------------------------------------------------------
// Clifford decomposition

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliffordComponent {
    pub sigma: CycRep,
    pub multiplicity: usize,
    pub character: Vec<Cyc>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliffordDecomposition {
    pub induced_dim: usize,
    pub end_dim: usize,
    pub components: Vec<CliffordComponent>,
}

const NUMERIC_TOL: f64 = 1e-6;

/// Decomposes `Ind_C^B(ρ)` into irreducibles. Irreducible constituents are
/// located numerically (eigenspaces of a random Hermitian element of the
/// commutant), then everything is recomputed exactly: characters from
/// eigenvalue multiplicities, isotypic projectors, and the matrices of each
/// `σ` on an exact cyclic subspace.
pub fn clifford_decompose(b: &FinGroup, c: &[u32], rho: &CycRep, seed: u64) -> Result<CliffordDecomposition> {
    if !b.is_subgroup(c) || !b.is_normal(c) {
        return Err(Error::domain("C must be a normal subgroup of B"));
    }
    if b.order() / c.len() > 64 {
        return Err(Error::resource("index of C in B exceeds 64"));
    }
    if !is_irreducible(rho) {
        return Err(Error::domain("ρ must be irreducible"));
    }
    let exp = b.exponent();
    let field = CycField::new(rho.field().conductor().lcm(&exp).lcm(&2))?;
    let rho = rho.embed(&field)?;
    let ind = induce(b, c, &rho, None)?;
    let chi_ind = ind.character();
    let end_dim = inner_product(&chi_ind, &chi_ind)?;
    let end_dim = end_dim.to_integer() as usize;
    let n = ind.dim();

    let numeric: Vec<DMatrix<Complex64>> = ind.matrices().iter().map(|m| m.to_complex()).collect();
    for m in &numeric {
        if (m * m.adjoint() - DMatrix::identity(n, n)).norm() > NUMERIC_TOL {
            return Err(Error::unsupported("clifford_decompose needs a unitary ρ"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s0 = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let s = &s0 + s0.adjoint();
    let mut hmat = DMatrix::<Complex64>::zeros(n, n);
    for m in &numeric {
        hmat += m * &s * m.adjoint();
    }
    let eig = hmat.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let scale = eig.eigenvalues.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(cl) if (eig.eigenvalues[i] - eig.eigenvalues[*cl.last().unwrap()]).abs() < 1e-7 * scale => cl.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    // Numeric characters of the eigenspaces.
    let mut kinds: Vec<(Vec<Complex64>, usize, usize)> = Vec::new();
    for cl in &clusters {
        let q = DMatrix::from_fn(n, cl.len(), |r, k| eig.eigenvectors[(r, cl[k])]);
        let chi: Vec<Complex64> = numeric.iter().map(|m| (q.adjoint() * m * &q).trace()).collect();
        match kinds.iter_mut().find(|(c, _, _)| c.iter().zip(&chi).all(|(a, b)| (a - b).norm() < NUMERIC_TOL)) {
            Some(entry) => entry.1 += 1,
            None => kinds.push((chi, 1, cl.len())),
        }
    }

    let mut components = Vec::new();
    for (chi_num, multiplicity, d) in kinds {
        // Exact character from eigenvalue multiplicities of σ(g).
        let mut chi = Vec::with_capacity(b.order());
        let mut eig_mults: Vec<Vec<usize>> = Vec::with_capacity(b.order());
        for x in 0..b.order() {
            let o = b.element_order(x) as usize;
            let mut powers = vec![0usize; o];
            for t in 1..o {
                powers[t] = b.mul(powers[t - 1], x);
            }
            let mut mults = vec![0usize; o];
            let mut val = Cyc::zero(&field);
            for (jj, slot) in mults.iter_mut().enumerate() {
                let s: Complex64 = (0..o)
                    .map(|t| chi_num[powers[t]] * Complex64::from_polar(1.0, -std::f64::consts::TAU * (jj * t) as f64 / o as f64))
                    .sum::<Complex64>()
                    / o as f64;
                let k = s.re.round();
                if (s.re - k).abs() > 1e-4 || s.im.abs() > 1e-4 || k < 0.0 {
                    return Err(Error::domain("numeric eigenvalue multiplicities are not integral"));
                }
                *slot = k as usize;
                let step = field.conductor() as i64 / o as i64;
                for _ in 0..*slot {
                    val = &val + &Cyc::zeta_pow(&field, step * jj as i64);
                }
            }
            chi.push(val);
            eig_mults.push(mults);
        }
        if !inner_product(&chi, &chi)?.is_one() {
            return Err(Error::domain("recovered character is not irreducible"));
        }
        if inner_product(&chi_ind, &chi)? != Rational::from_integer(multiplicity as i128) {
            return Err(Error::domain("recovered multiplicity disagrees with the inner product"));
        }
        // Exact isotypic projector (up to a nonzero scalar).
        let mut proj = CycMat::zeros(&field, n, n);
        for x in 0..b.order() {
            proj = proj.add(&ind.matrix(x).scale(&chi[x].conj()));
        }
        let start = if multiplicity == 1 { proj } else { isolate_copy(b, &ind, proj, &eig_mults, multiplicity)? };
        let v = (0..n)
            .map(|col| (0..n).map(|r| start.get(r, col).clone()).collect::<Vec<_>>())
            .find(|col| col.iter().any(|x| !x.is_zero()))
            .ok_or_else(|| Error::domain("empty isotypic component"))?;
        let sigma = cyclic_subrep(b, &ind, &v)?;
        if sigma.dim() != d {
            return Err(Error::domain("cyclic subspace is not irreducible"));
        }
        if sigma.character() != chi || !sigma.is_homomorphism(b) {
            return Err(Error::domain("extracted σ does not match its character"));
        }
        components.push(CliffordComponent { sigma, multiplicity, character: chi });
    }
    let total: usize = components.iter().map(|c| c.multiplicity * c.sigma.dim()).sum();
    let end: usize = components.iter().map(|c| c.multiplicity * c.multiplicity).sum();
    if total != n || end != end_dim {
        return Err(Error::domain("decomposition does not account for Ind(ρ)"));
    }
    Ok(CliffordDecomposition { induced_dim: n, end_dim, components })
}

/// Cuts the isotypic projector down to a single copy of `σ`: the image of
/// `M` is `T ⊗ C^mult` with `T ⊆ V_σ`, and composing with spectral projectors
/// of `σ(x)` (after some `σ(g)`) shrinks `T` until it is a line.
fn isolate_copy(b: &FinGroup, ind: &CycRep, proj: CycMat, eig_mults: &[Vec<usize>], multiplicity: usize) -> Result<CycMat> {
    let field = ind.field().clone();
    let n = ind.dim();
    let spectral = |x: usize, jj: usize| {
        let o = b.element_order(x) as i64;
        let step = field.conductor() as i64 / o;
        let mut e = CycMat::zeros(&field, n, n);
        let mut gt = 0usize;
        for t in 0..o {
            e = e.add(&ind.matrix(gt).scale(&Cyc::zeta_pow(&field, -step * jj as i64 * t)));
            gt = b.mul(gt, x);
        }
        e
    };
    let candidates: Vec<(usize, usize)> = (0..b.order())
        .flat_map(|x| eig_mults[x].iter().enumerate().filter(|(_, &m)| m > 0).map(move |(jj, _)| (x, jj)))
        .collect();
    let mut m = proj;
    let mut rank = m.rank();
    while rank > multiplicity {
        let next = (0..b.order()).find_map(|g| {
            let moved = ind.matrix(g).mul(&m);
            candidates.iter().find_map(|&(x, jj)| {
                let cut = spectral(x, jj).mul(&moved);
                let r = cut.rank();
                (r > 0 && r < rank).then_some((cut, r))
            })
        });
        let Some((cut, r)) = next else {
            return Err(Error::unsupported("no spectral projector splits the isotypic component"));
        };
        m = cut;
        rank = r;
    }
    Ok(m)
}

/// The subrepresentation spanned by `{ρ(g) v}`.
fn cyclic_subrep(g: &FinGroup, rep: &CycRep, v: &[Cyc]) -> Result<CycRep> {
    let n = rep.dim();
    let field = rep.field();
    let rows: Vec<Vec<Cyc>> = (0..g.order())
        .map(|x| {
            let m = rep.matrix(x);
            (0..n).map(|r| (0..n).fold(Cyc::zero(field), |acc, c| &acc + &(m.get(r, c) * &v[c]))).collect()
        })
        .collect();
    let mut span = CycMat::from_rows(field, rows);
    let piv = span.row_reduce();
    let d = piv.len();
    let basis: Vec<Vec<Cyc>> = (0..d).map(|i| (0..n).map(|j| span.get(i, j).clone()).collect()).collect();
    let matrices = (0..g.order())
        .map(|x| {
            let m = rep.matrix(x);
            let mut out = CycMat::zeros(field, d, d);
            for (i, bvec) in basis.iter().enumerate() {
                // image of basis vector i, read off at the pivot coordinates
                for (k, &pc) in piv.iter().enumerate() {
                    let val = (0..n).fold(Cyc::zero(field), |acc, c| &acc + &(m.get(pc, c) * &bvec[c]));
                    out.set(k, i, val);
                }
            }
            out
        })
        .collect();
    CycRep::new(field, d, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::cyclic;

    #[test]
    fn regular_rep_of_z3() {
        let f = CycField::new(3).unwrap();
        let g = cyclic(3);
        let reg = CycRep::regular(&f, &g);
        let chi = reg.character();
        assert_eq!(inner_product(&chi, &chi).unwrap(), Rational::from_integer(3));
        assert!(reg.is_homomorphism(&g));
    }
}
