//! Small matrix groups over `F_q`: unipotent commutator inclusions,
//! abelianizations, and randomized instances of the triviality criterion for
//! `π|_U` on `P ⋉ H`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autz::{autz_group, isometry_group, AutGroup};
use crate::cyclotomic::CycField;
use crate::error::{Error, Result};
use crate::gf::FqTables;
use crate::grp::{linear_characters, FinGroup};
use crate::heis::{HeisType, HeisenbergGroup};
use crate::reps::heisenberg_rep;
use crate::weil::{linearize, projective_weil};
use crate::{Cyc, CycMat};

/// Largest matrix group materialized element by element.
pub const MAX_MATRIX_GROUP: u64 = 2_000_000;
pub const MAX_Q: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixGroupType {
    Sl2,
    Sl3,
    Sp4,
    Gl2,
}

impl fmt::Display for MatrixGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixGroupType::Sl2 => "SL2",
            MatrixGroupType::Sl3 => "SL3",
            MatrixGroupType::Sp4 => "Sp4",
            MatrixGroupType::Gl2 => "GL2",
        })
    }
}

impl Serialize for MatrixGroupType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for MatrixGroupType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "").to_ascii_uppercase().as_str() {
            "SL2" => Ok(MatrixGroupType::Sl2),
            "SL3" => Ok(MatrixGroupType::Sl3),
            "SP4" => Ok(MatrixGroupType::Sp4),
            "GL2" => Ok(MatrixGroupType::Gl2),
            _ => Err(Error::unsupported(format!("unknown matrix group type {s:?}"))),
        }
    }
}

impl MatrixGroupType {
    pub fn degree(&self) -> usize {
        match self {
            MatrixGroupType::Sl2 | MatrixGroupType::Gl2 => 2,
            MatrixGroupType::Sl3 => 3,
            MatrixGroupType::Sp4 => 4,
        }
    }

    pub fn order(&self, q: u64) -> u64 {
        match self {
            MatrixGroupType::Sl2 => q * (q * q - 1),
            MatrixGroupType::Sl3 => q.pow(3) * (q * q - 1) * (q.pow(3) - 1),
            MatrixGroupType::Sp4 => q.pow(4) * (q * q - 1) * (q.pow(4) - 1),
            MatrixGroupType::Gl2 => (q * q - 1) * (q * q - q),
        }
    }
}

type Mat = Vec<u32>;

/// Square matrices of a fixed size over `F_q`, row-major.
struct MatOps<'a> {
    fq: &'a FqTables,
    n: usize,
}

impl MatOps<'_> {
    fn identity(&self) -> Mat {
        let mut m = vec![0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        m
    }

    fn diag(&self, d: &[u32]) -> Mat {
        let mut m = vec![0; self.n * self.n];
        for (i, &x) in d.iter().enumerate() {
            m[i * self.n + i] = x;
        }
        m
    }

    fn elementary(&self, i: usize, j: usize, t: u32) -> Mat {
        let mut m = self.identity();
        m[i * self.n + j] = t;
        m
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = self.fq.mul(x, b[k * n + j]);
                    out[i * n + j] = self.fq.add(out[i * n + j], y);
                }
            }
        }
        out
    }

    fn transpose(&self, a: &Mat) -> Mat {
        let n = self.n;
        (0..n * n).map(|k| a[(k % n) * n + k / n]).collect()
    }

    fn inverse(&self, a: &Mat) -> Option<Mat> {
        let n = self.n;
        let fq = self.fq;
        let mut m = a.clone();
        let mut inv = self.identity();
        for c in 0..n {
            let r = (c..n).find(|&r| m[r * n + c] != 0)?;
            for j in 0..n {
                m.swap(c * n + j, r * n + j);
                inv.swap(c * n + j, r * n + j);
            }
            let s = fq.inv(m[c * n + c])?;
            for j in 0..n {
                m[c * n + j] = fq.mul(m[c * n + j], s);
                inv[c * n + j] = fq.mul(inv[c * n + j], s);
            }
            for r in 0..n {
                let f = m[r * n + c];
                if r == c || f == 0 {
                    continue;
                }
                for j in 0..n {
                    m[r * n + j] = fq.sub(m[r * n + j], fq.mul(f, m[c * n + j]));
                    inv[r * n + j] = fq.sub(inv[r * n + j], fq.mul(f, inv[c * n + j]));
                }
            }
        }
        Some(inv)
    }

    fn commutator(&self, a: &Mat, b: &Mat) -> Mat {
        let ai = self.inverse(a).expect("invertible");
        let bi = self.inverse(b).expect("invertible");
        self.mul(&self.mul(a, b), &self.mul(&ai, &bi))
    }

    fn conjugate(&self, g: &Mat, x: &Mat) -> Mat {
        self.mul(&self.mul(g, x), &self.inverse(g).expect("invertible"))
    }
}

/// A subgroup grown generator by generator, closed under right
/// multiplication by every generator added so far.
struct Closure<'a> {
    ops: &'a MatOps<'a>,
    gens: Vec<Mat>,
    set: HashSet<Mat>,
    elems: Vec<Mat>,
    bound: u64,
}

impl<'a> Closure<'a> {
    fn new(ops: &'a MatOps<'a>, bound: u64) -> Self {
        let id = ops.identity();
        Closure { ops, gens: Vec::new(), set: HashSet::from([id.clone()]), elems: vec![id], bound }
    }

    fn contains(&self, m: &Mat) -> bool {
        self.set.contains(m)
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    /// Returns whether the subgroup grew.
    fn add(&mut self, c: Mat) -> Result<bool> {
        if self.set.contains(&c) {
            return Ok(false);
        }
        self.gens.push(c.clone());
        let old = self.elems.len();
        for i in 0..old {
            let x = self.ops.mul(&self.elems[i], &c);
            self.insert(x)?;
        }
        let mut i = old;
        while i < self.elems.len() {
            for g in 0..self.gens.len() {
                let x = self.ops.mul(&self.elems[i], &self.gens[g]);
                self.insert(x)?;
            }
            i += 1;
        }
        Ok(true)
    }

    fn insert(&mut self, x: Mat) -> Result<()> {
        if self.set.insert(x.clone()) {
            self.elems.push(x);
            if self.elems.len() as u64 > self.bound {
                return Err(Error::resource(format!("matrix group exceeds {} elements", self.bound)));
            }
        }
        Ok(())
    }

    /// Grows into the normal closure under conjugation by `conj_gens`.
    fn normalize(&mut self, conj_gens: &[Mat]) -> Result<()> {
        let mut k = 0;
        while k < self.gens.len() {
            let s = self.gens[k].clone();
            for g in conj_gens {
                let c = self.ops.conjugate(g, &s);
                self.add(c)?;
            }
            k += 1;
        }
        Ok(())
    }
}

fn check_q(q: u32) -> Result<FqTables> {
    if q > MAX_Q {
        return Err(Error::unsupported(format!("q = {q} exceeds the enumeration bound {MAX_Q}")));
    }
    FqTables::new(q)
}

/// The Gram matrix `antidiag(1, 1, −1, −1)`.
fn sp4_form(fq: &FqTables) -> Mat {
    let m1 = fq.neg(1);
    let mut j = vec![0; 16];
    j[3] = 1;
    j[6] = 1;
    j[9] = m1;
    j[12] = m1;
    j
}

fn in_group(t: MatrixGroupType, ops: &MatOps<'_>, m: &Mat) -> bool {
    match t {
        MatrixGroupType::Sp4 => {
            let j = sp4_form(ops.fq);
            ops.mul(&ops.mul(&ops.transpose(m), &j), m) == j
        }
        // unitriangular and diagonal candidates below already have the right determinant
        _ => true,
    }
}

fn torus_generators(t: MatrixGroupType, ops: &MatOps<'_>) -> Vec<Mat> {
    let fq = ops.fq;
    let g = fq.primitive_element();
    let gi = fq.inv(g).expect("nonzero");
    match t {
        MatrixGroupType::Sl2 => vec![ops.diag(&[g, gi])],
        MatrixGroupType::Sl3 => vec![ops.diag(&[g, gi, 1]), ops.diag(&[1, g, gi])],
        MatrixGroupType::Sp4 => vec![ops.diag(&[g, 1, 1, gi]), ops.diag(&[1, g, gi, 1])],
        MatrixGroupType::Gl2 => vec![ops.diag(&[g, 1]), ops.diag(&[1, g])],
    }
}

/// Upper unitriangular matrices lying in the group.
fn unipotent_radical(t: MatrixGroupType, ops: &MatOps<'_>) -> Vec<Mat> {
    let n = ops.n;
    let q = ops.fq.q;
    let slots: Vec<usize> = (0..n).flat_map(|i| (i + 1..n).map(move |j| i * n + j)).collect();
    let total = (q as u64).pow(slots.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut m = ops.identity();
        for &s in &slots {
            m[s] = (code % q as u64) as u32;
            code /= q as u64;
        }
        if in_group(t, ops, &m) {
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorCheck {
    #[serde(rename = "type")]
    pub group: MatrixGroupType,
    pub q: u32,
    pub borel_order: u64,
    pub unipotent_order: usize,
    pub commutator_order: usize,
    /// `U(F_q) ⊆ [P(F_q), U(F_q)]` for the Borel `P`.
    pub holds: bool,
}

/// Decides `U ⊆ [P, U]` for the upper-triangular Borel `P`. `[P, U]` is the
/// normal closure in `P` of the commutators of generators.
pub fn unipotent_commutator_check(t: MatrixGroupType, q: u32) -> Result<CommutatorCheck> {
    let fq = check_q(q)?;
    let ops = MatOps { fq: &fq, n: t.degree() };
    let u_elems = unipotent_radical(t, &ops);
    let mut u = Closure::new(&ops, MAX_MATRIX_GROUP);
    for m in &u_elems {
        u.add(m.clone())?;
    }
    if u.len() != u_elems.len() {
        return Err(Error::domain("unitriangular elements do not form a group"));
    }
    let u_gens = u.gens.clone();
    let mut p_gens = torus_generators(t, &ops);
    p_gens.extend(u_gens.iter().cloned());
    let mut comm = Closure::new(&ops, MAX_MATRIX_GROUP);
    for a in &p_gens {
        for b in &u_gens {
            comm.add(ops.commutator(a, b))?;
        }
    }
    comm.normalize(&p_gens)?;
    let torus = (q as u64 - 1).pow(torus_generators(t, &ops).len() as u32);
    Ok(CommutatorCheck {
        group: t,
        q,
        borel_order: torus * u_elems.len() as u64,
        unipotent_order: u_elems.len(),
        commutator_order: comm.len(),
        holds: comm.len() == u_elems.len() && u_elems.iter().all(|m| comm.contains(m)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianizationCheck {
    #[serde(rename = "type")]
    pub group: MatrixGroupType,
    pub q: u32,
    pub group_order: u64,
    pub derived_order: u64,
    pub abelianization_order: u64,
    pub prime_to_q: bool,
}

pub fn abelianization_order_check(t: MatrixGroupType, q: u32) -> Result<AbelianizationCheck> {
    if t == MatrixGroupType::Sp4 {
        return Err(Error::unsupported("abelianization is computed for SL2, SL3 and GL2"));
    }
    let fq = check_q(q)?;
    let expected = t.order(q as u64);
    if expected > MAX_MATRIX_GROUP {
        return Err(Error::resource(format!("|{t}(F_{q})| = {expected} exceeds {MAX_MATRIX_GROUP}")));
    }
    let n = t.degree();
    let ops = MatOps { fq: &fq, n };
    let basis = fq.additive_basis();
    let mut gens: Vec<Mat> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .flat_map(|(i, j)| basis.iter().map(move |&b| (i, j, b)))
        .map(|(i, j, b)| ops.elementary(i, j, b))
        .collect();
    if t == MatrixGroupType::Gl2 {
        gens.push(ops.diag(&[fq.primitive_element(), 1]));
    }
    let mut g = Closure::new(&ops, MAX_MATRIX_GROUP);
    for m in &gens {
        g.add(m.clone())?;
    }
    if g.len() as u64 != expected {
        return Err(Error::domain(format!("generated {} elements, expected {expected}", g.len())));
    }
    let mut derived = Closure::new(&ops, MAX_MATRIX_GROUP);
    for a in &gens {
        for b in &gens {
            derived.add(ops.commutator(a, b))?;
        }
    }
    derived.normalize(&gens)?;
    let ab = expected / derived.len() as u64;
    Ok(AbelianizationCheck {
        group: t,
        q,
        group_order: expected,
        derived_order: derived.len() as u64,
        abelianization_order: ab,
        prime_to_q: !ab.is_multiple_of(fq.p as u64),
    })
}

// ---------------------------------------------------------------------------
// π|_U on P ⋉ H

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityInstance {
    pub q: u32,
    pub heis_p: u32,
    pub heis_n: usize,
    pub heis_type: HeisType,
    pub action_order: u64,
    /// The linear character twisting `π`, as values mod `character_modulus`.
    pub character: Vec<u64>,
    pub character_modulus: u64,
    pub is_representation: bool,
    pub restriction_irreducible: bool,
    pub u_acts_trivially: bool,
    pub u_in_commutator: bool,
    pub restriction_to_u_trivial: bool,
}

impl TrivialityInstance {
    pub fn passes(&self) -> bool {
        let hypotheses = self.is_representation && self.restriction_irreducible && self.u_acts_trivially && self.u_in_commutator;
        !hypotheses || self.restriction_to_u_trivial
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialityReport {
    pub seed: u64,
    pub instances: Vec<TrivialityInstance>,
    pub hypotheses_met: usize,
    pub all_pass: bool,
}

struct Borel {
    group: FinGroup,
    /// Discrete log of the diagonal entry of each element.
    torus_log: Vec<u64>,
    unipotent: Vec<u32>,
    u_in_commutator: bool,
}

fn sl2_borel(q: u32) -> Result<Borel> {
    let fq = check_q(q)?;
    let ops = MatOps { fq: &fq, n: 2 };
    let g = fq.primitive_element();
    let mut gens = torus_generators(MatrixGroupType::Sl2, &ops);
    gens.extend(fq.additive_basis().into_iter().map(|b| ops.elementary(0, 1, b)));
    let (group, elems) = FinGroup::from_generators(ops.identity(), &gens, |a, b| ops.mul(a, b))?;
    let mut log = HashMap::new();
    let mut x = 1;
    for k in 0..q as u64 - 1 {
        log.insert(x, k);
        x = fq.mul(x, g);
    }
    let torus_log: Vec<u64> = elems.iter().map(|m| log[&m[0]]).collect();
    let unipotent: Vec<u32> = (0..elems.len() as u32).filter(|&i| elems[i as usize][0] == 1).collect();
    let all = group.all();
    let p_gens = group.generators_of(&all);
    let u_gens = group.generators_of(&unipotent);
    let seeds: Vec<u32> =
        p_gens.iter().flat_map(|&a| u_gens.iter().map(move |&b| (a, b))).map(|(a, b)| group.commutator(a as usize, b as usize) as u32).collect();
    let comm = group.normal_closure(&seeds, &p_gens);
    let comm: HashSet<u32> = comm.into_iter().collect();
    let u_in_commutator = unipotent.iter().all(|u| comm.contains(u));
    Ok(Borel { group, torus_log, unipotent, u_in_commutator })
}

struct HeisModel {
    h: HeisenbergGroup,
    hgroup: FinGroup,
    aut: AutGroup,
}

const SUITE_Q: [u32; 4] = [4, 5, 7, 8];
const SUITE_MODELS: [(u32, usize, HeisType); 5] = [
    (2, 1, HeisType::Positive),
    (2, 1, HeisType::Negative),
    (3, 1, HeisType::Odd),
    (2, 2, HeisType::Positive),
    (2, 2, HeisType::Negative),
];

/// Builds `π(s, x) = τ(s)·W(f^{k(s)})·ω_ψ(x)` on `B ⋉ H`, where `B` is the
/// Borel of `SL_2(F_q)` acting through its torus `diag(g^k, g^{-k}) ↦ f^k`,
/// `W` linearizes `⟨f⟩`, and `τ` is a linear character of `B`; then checks
/// the hypotheses and whether `π|_U` is trivial.
pub fn unipotent_triviality_suite(count: usize, seed: u64) -> Result<TrivialityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut borels: HashMap<u32, Borel> = HashMap::new();
    let mut models: HashMap<usize, HeisModel> = HashMap::new();
    let mut instances = Vec::with_capacity(count);
    for _ in 0..count {
        let q = *SUITE_Q.choose(&mut rng).expect("nonempty");
        let mi = rng.gen_range(0..SUITE_MODELS.len());
        let (hp, hn, kind) = SUITE_MODELS[mi];
        if let std::collections::hash_map::Entry::Vacant(e) = borels.entry(q) {
            e.insert(sl2_borel(q)?);
        }
        if let std::collections::hash_map::Entry::Vacant(e) = models.entry(mi) {
            let h = HeisenbergGroup::standard_model(hp, hn, kind)?;
            let iso = isometry_group(&h)?;
            let aut = autz_group(&h, &iso)?;
            e.insert(HeisModel { hgroup: h.group()?, h, aut });
        }
        let borel = &borels[&q];
        let model = &models[&mi];
        let period = q as u64 - 1;
        let candidates: Vec<usize> =
            (1..model.aut.order()).filter(|&a| period.is_multiple_of(model.aut.group.element_order(a))).collect();
        let f = candidates.choose(&mut rng).copied().unwrap_or(0);
        let cyclic = AutGroup::generated(&model.h, &[model.aut.elements[f].clone()])?;
        let psi = rng.gen_range(1..hp);
        let pw = projective_weil(&model.h, psi, &cyclic)?;
        let lin = linearize(&pw, &cyclic)?
            .linearized()
            .ok_or_else(|| Error::domain("cyclic group of automorphisms failed to linearize"))?;
        let omega_ok = heisenberg_rep(&model.h, psi)?.rep.is_homomorphism(&model.hgroup);
        let modulus = borel.group.exponent();
        let chars = linear_characters(&borel.group, modulus);
        let tau = chars.choose(&mut rng).expect("trivial character").clone();
        instances.push(assemble_and_check(borel, model, &cyclic, &lin, (&tau, modulus), omega_ok, q, SUITE_MODELS[mi])?);
    }
    let hypotheses_met = instances
        .iter()
        .filter(|i| i.is_representation && i.restriction_irreducible && i.u_acts_trivially && i.u_in_commutator)
        .count();
    let all_pass = instances.iter().all(TrivialityInstance::passes);
    Ok(TrivialityReport { seed, instances, hypotheses_met, all_pass })
}

#[allow(clippy::too_many_arguments)]
fn assemble_and_check(
    borel: &Borel,
    model: &HeisModel,
    cyclic: &AutGroup,
    lin: &crate::weil::WeilLinearization,
    (tau, modulus): (&[u64], u64),
    omega_ok: bool,
    q: u32,
    (heis_p, heis_n, heis_type): (u32, usize, HeisType),
) -> Result<TrivialityInstance> {
    let order_f = cyclic.order() as u64;
    let conductor = num_integer::lcm(lin.rep.field().conductor(), modulus);
    let field = CycField::new(conductor)?;
    let rho = lin.rep.embed(&field)?;
    let omega = lin.omega.embed(&field)?;
    let b = &borel.group;
    let powers: Vec<usize> = {
        // powers[k] = index of f^k in the cyclic group
        let f = if cyclic.order() > 1 { cyclic.group.generators_of(&cyclic.group.all())[0] as usize } else { 0 };
        let mut out = vec![0usize];
        for k in 1..order_f as usize {
            out.push(cyclic.group.mul(out[k - 1], f));
        }
        out
    };
    let act = |s: usize| powers[(borel.torus_log[s] % order_f) as usize];
    let sigma: Vec<CycMat> = (0..b.order())
        .map(|s| {
            let t = Cyc::zeta_pow(&field, (tau[s] * (conductor / modulus)) as i64);
            rho.matrix(act(s)).scale(&t)
        })
        .collect();
    let perms: Vec<Vec<u32>> = cyclic.elements.iter().map(|a| a.permutation(&model.h)).collect();
    let b_gens = b.generators_of(&b.all());
    let h_gens = model.hgroup.generators_of(&model.hgroup.all());
    let sigma_hom = sigma[0].is_identity()
        && b_gens.iter().all(|&s| (0..b.order()).all(|x| sigma[s as usize].mul(&sigma[x]) == sigma[b.mul(s as usize, x)]));
    let compatible = b_gens.iter().all(|&s| {
        let perm = &perms[act(s as usize)];
        h_gens.iter().all(|&x| {
            let lhs = sigma[s as usize].mul(omega.matrix(x as usize));
            let rhs = omega.matrix(perm[x as usize] as usize).mul(&sigma[s as usize]);
            lhs == rhs
        })
    });
    let u_acts_trivially = borel.unipotent.iter().all(|&u| perms[act(u as usize)].iter().enumerate().all(|(i, &j)| i as u32 == j));
    let restriction_to_u_trivial = borel.unipotent.iter().all(|&u| sigma[u as usize].is_identity());
    Ok(TrivialityInstance {
        q,
        heis_p,
        heis_n,
        heis_type,
        action_order: order_f,
        character: tau.to_vec(),
        character_modulus: modulus,
        is_representation: sigma_hom && compatible && omega_ok,
        restriction_irreducible: crate::reps::is_irreducible(&omega),
        u_acts_trivially,
        u_in_commutator: borel.u_in_commutator,
        restriction_to_u_trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_small_fields() {
        for (q, expect) in [(2, false), (3, false), (4, true), (5, true)] {
            assert_eq!(unipotent_commutator_check(MatrixGroupType::Sl2, q).unwrap().holds, expect, "q = {q}");
        }
    }
}
