//! Projective Weil representations of groups of central automorphisms and
//! their linearizations: cocycles of the intertwiners, obstructions,
//! the construction by induction from a polarization, real/quaternionic
//! linearizations for `p = 2`, and the odd-`p` Weil representation of the
//! symplectic group.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::autz::{self, AutGroup, CentralAutomorphism, PartialPolarization, StabilizerViolation};
use crate::cyclotomic::{sqrt_conductor, CycField};
use crate::error::{Error, Result};
use crate::gf::FpMatrix;
use crate::grp::{
    coboundary_solve, exhaustive_coboundary_search, linear_characters, CoboundaryResult, Cocycle2, FinGroup, GroupHom,
    MAX_TABLE_ORDER,
};
use crate::heis::{HeisElement, HeisenbergGroup};
use crate::reps::{self, frobenius_schur, heisenberg_rep, intertwiner_by, r_structure, CycRep, HeisenbergRep};
use crate::{Cyc, CycMat, Rational};

/// Largest `|A|` accepted by [`projective_weil`].
pub const MAX_AUT_ORDER: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Complex,
    Real,
    Quaternionic,
}

impl Flavor {
    fn from_indicator(fs: i8) -> Self {
        match fs {
            1 => Flavor::Real,
            -1 => Flavor::Quaternionic,
            _ => Flavor::Complex,
        }
    }
}

/// `A ⋉ P` with elements `(a, x)` at index `a·|P| + x` and
/// `(a, x)(b, y) = (ab, b⁻¹(x)·y)`, so that `(a,1)(1,x)(a,1)⁻¹ = (1, a(x))`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: FinGroup,
    pub aut_order: usize,
    pub heis_order: usize,
}

impl SemidirectProduct {
    pub fn index(&self, a: usize, x: usize) -> usize {
        a * self.heis_order + x
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.heis_order, i % self.heis_order)
    }

    /// `{1} ⋉ P` as element indices.
    pub fn heis_part(&self) -> Vec<u32> {
        (0..self.heis_order as u32).collect()
    }
}

pub fn semidirect_product(h: &HeisenbergGroup, aut: &AutGroup) -> Result<SemidirectProduct> {
    let np = h.order();
    let na = aut.order();
    let total = na * np;
    if total > MAX_TABLE_ORDER {
        return Err(Error::resource(format!("semidirect product of order {total}")));
    }
    let pg = h.group()?;
    let inv_perms: Vec<Vec<u32>> =
        (0..na).map(|b| aut.elements[aut.group.inv(b)].permutation(h)).collect();
    let mut table = vec![0u32; total * total];
    for i in 0..total {
        let (a, x) = (i / np, i % np);
        for j in 0..total {
            let (b, y) = (j / np, j % np);
            let bx = inv_perms[b][x] as usize;
            table[i * total + j] = (aut.group.mul(a, b) * np + pg.mul(bx, y)) as u32;
        }
    }
    let group = FinGroup::from_table(table, total)?;
    Ok(SemidirectProduct { group, aut_order: na, heis_order: np })
}

/// Intertwiners `U_a` with `U_a ω(x) U_a⁻¹ = ω(a(x))`, scaled to be unitary,
/// and the cocycle `U_a U_b = ζ_N^{c(a,b)} U_{ab}`.
#[derive(Clone, Debug)]
pub struct ProjectiveWeil {
    pub psi: u32,
    pub flavor: Flavor,
    /// Order of the scalar group `μ_N` holding the cocycle.
    pub modulus: u64,
    pub field: Arc<CycField>,
    pub omega: CycRep,
    pub heisenberg: HeisenbergRep,
    /// Normalised intertwiners (first nonzero entry 1), in the base field.
    pub intertwiners: Vec<CycMat>,
    /// `T_a T_a* = r_a · 1`.
    pub norms: Vec<Rational>,
    pub unitary: Vec<CycMat>,
    pub cocycle: Cocycle2,
}

pub fn projective_weil(h: &HeisenbergGroup, psi: u32, aut: &AutGroup) -> Result<ProjectiveWeil> {
    if aut.order() > MAX_AUT_ORDER {
        return Err(Error::resource(format!("|A| = {} exceeds {MAX_AUT_ORDER}", aut.order())));
    }
    let pg = h.group()?;
    let hr = heisenberg_rep(h, psi)?;
    let omega0 = &hr.rep;
    let d = omega0.dim();
    let base = omega0.field().clone();
    let flavor = Flavor::from_indicator(frobenius_schur(&pg, omega0)?);

    let mut intertwiners = Vec::with_capacity(aut.order());
    let mut norms = Vec::with_capacity(aut.order());
    let mut conductor = base.conductor();
    for f in &aut.elements {
        let perm = f.permutation(h);
        let t = intertwiner_by(&pg, d, d, &base, &|x| omega0.matrix(x), &|x| omega0.matrix(perm[x] as usize))
            .ok_or_else(|| Error::domain("no intertwiner between ω and its twist"))?;
        let r = t
            .mul(&t.conj_transpose())
            .as_scalar()
            .and_then(|c| c.as_scalar())
            .ok_or_else(|| Error::unsupported("intertwiner is not a rational multiple of a unitary matrix"))?;
        conductor = conductor.lcm(&sqrt_conductor(&r).ok_or_else(|| Error::unsupported("square root out of range"))?);
        intertwiners.push(t);
        norms.push(r);
    }
    let mut modulus = aut.group.exponent().lcm(&(2 * h.p() as u64)).lcm(&4);
    conductor = conductor.lcm(&modulus);
    let field = CycField::new(conductor)?;
    let omega = omega0.embed(&field)?;
    let mut unitary = Vec::with_capacity(aut.order());
    for (t, r) in intertwiners.iter().zip(&norms) {
        let root = Cyc::sqrt_rational(&field, r).expect("conductor contains the root");
        unitary.push(t.embed(&field)?.scale(&root.inv().expect("nonzero")));
    }
    // c(a,b) from one entry: U_ab has entry 1/√r_ab at the first nonzero of T_ab.
    let pivots: Vec<(usize, usize)> = intertwiners
        .iter()
        .map(|t| {
            let (i, j, _) = t.first_nonzero().expect("nonzero intertwiner");
            (i, j)
        })
        .collect();
    let roots: Vec<Cyc> = norms.iter().map(|r| Cyc::sqrt_rational(&field, r).expect("root")).collect();
    let n = aut.order();
    let mut raw = vec![0u64; n * n];
    let l = field.conductor();
    let mut orders = 1u64;
    for a in 0..n {
        for b in 0..n {
            let ab = aut.group.mul(a, b);
            let (i, j) = pivots[ab];
            let mut entry = Cyc::zero(&field);
            for k in 0..d {
                let x = unitary[a].get(i, k);
                if x.is_zero() {
                    continue;
                }
                let y = unitary[b].get(k, j);
                if !y.is_zero() {
                    entry = &entry + &(x * y);
                }
            }
            let c = &entry * &roots[ab];
            let e = c
                .root_of_unity_exponent()
                .ok_or_else(|| Error::domain("cocycle value is not a root of unity"))?;
            orders = orders.lcm(&(l / e.gcd(&l)));
            raw[a * n + b] = e;
        }
    }
    modulus = modulus.lcm(&orders);
    if l % modulus != 0 {
        return Err(Error::domain("cocycle values outside the field"));
    }
    let step = l / modulus;
    let cocycle = Cocycle2::new(n, modulus, raw.iter().map(|e| e / step).collect())?;
    Ok(ProjectiveWeil {
        psi,
        flavor,
        modulus,
        field,
        omega,
        heisenberg: hr,
        intertwiners,
        norms,
        unitary,
        cocycle,
    })
}

/// A representation `ρ` of `A` with `ρ(a) ω(x) ρ(a)⁻¹ = ω(a(x))`.
#[derive(Clone, Debug, Serialize)]
pub struct WeilLinearization {
    pub flavor: Flavor,
    /// The scalars used lie in `μ_N`.
    pub modulus: u64,
    pub rep: CycRep,
    pub omega: CycRep,
}

impl WeilLinearization {
    /// `R(a, x) = ρ(a) ω(x)` on `A ⋉ P`.
    pub fn assemble(&self, sd: &SemidirectProduct) -> CycRep {
        let mats = (0..sd.group.order())
            .map(|i| {
                let (a, x) = sd.split(i);
                self.rep.matrix(a).mul(self.omega.matrix(x))
            })
            .collect();
        CycRep::new(self.rep.field(), self.rep.dim(), mats).expect("consistent shapes")
    }

    pub fn generator_matrices(&self, a: &FinGroup) -> Vec<(u32, CycMat)> {
        a.generators_of(&a.all()).into_iter().map(|g| (g, self.rep.matrix(g as usize).clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Obstruction {
    pub modulus: u64,
    /// Certificate of `coboundary_solve` over `Z/(N·exp A)`.
    pub class: CoboundaryResult,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Linearization {
    Linearized(WeilLinearization),
    Obstructed(Obstruction),
}

impl Linearization {
    pub fn linearized(self) -> Option<WeilLinearization> {
        match self {
            Linearization::Linearized(l) => Some(l),
            Linearization::Obstructed(_) => None,
        }
    }
}

/// A cocycle with values in `μ_N` is trivial in `H²(A, C^×)` iff it is a
/// coboundary over `Z/(N·exp A)`; try `Z/N` first.
fn solve_in_units(aut: &FinGroup, c: &Cocycle2) -> Result<(u64, std::result::Result<Vec<u64>, CoboundaryResult>)> {
    if let CoboundaryResult::Solved { cochain } = coboundary_solve(aut, c)? {
        return Ok((c.modulus, Ok(cochain)));
    }
    let e = aut.exponent();
    let scaled = Cocycle2::new(c.order, c.modulus * e, c.values.iter().map(|v| v * e).collect())?;
    match coboundary_solve(aut, &scaled)? {
        CoboundaryResult::Solved { cochain } => Ok((scaled.modulus, Ok(cochain))),
        nontrivial => Ok((scaled.modulus, Err(nontrivial))),
    }
}

pub fn linearize(pw: &ProjectiveWeil, aut: &AutGroup) -> Result<Linearization> {
    let (modulus, solved) = solve_in_units(&aut.group, &pw.cocycle)?;
    let cochain = match solved {
        Ok(b) => b,
        Err(class) => return Ok(Linearization::Obstructed(Obstruction { modulus, class })),
    };
    let field = if pw.field.conductor().is_multiple_of(modulus) {
        pw.field.clone()
    } else {
        CycField::new(pw.field.conductor().lcm(&modulus))?
    };
    let step = (field.conductor() / modulus) as i64;
    let mats = pw
        .unitary
        .iter()
        .zip(&cochain)
        .map(|(u, &b)| Ok(u.embed(&field)?.scale(&Cyc::zeta_pow(&field, -(b as i64) * step))))
        .collect::<Result<Vec<_>>>()?;
    let rep = CycRep::new(&field, pw.omega.dim(), mats)?;
    if !rep.is_homomorphism(&aut.group) {
        return Err(Error::domain("internal: rescaled intertwiners are not multiplicative"));
    }
    Ok(Linearization::Linearized(WeilLinearization {
        flavor: pw.flavor,
        modulus: modulus.lcm(&pw.modulus),
        rep,
        omega: pw.omega.embed(&field)?,
    }))
}

/// Brute-force confirmation that the cocycle is not a coboundary in `C^×`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveObstruction {
    pub modulus: u64,
    pub assignments_tried: u64,
    pub nontrivial: bool,
}

pub fn exhaustive_obstruction(pw: &ProjectiveWeil, aut: &AutGroup, limit: u64) -> Result<ExhaustiveObstruction> {
    let e = aut.group.exponent();
    let c = &pw.cocycle;
    let scaled = Cocycle2::new(c.order, c.modulus * e, c.values.iter().map(|v| v * e).collect())?;
    let (tried, found) = exhaustive_coboundary_search(&aut.group, &scaled, limit)?;
    Ok(ExhaustiveObstruction { modulus: scaled.modulus, assignments_tried: tried, nontrivial: found.is_none() })
}

/// `χ` with `rep2(a) = χ(a) rep1(a)` for all `a`, as exponents of `ζ_M`
/// (`M` the common conductor), if such a scalar function exists.
pub fn scalar_ratio(rep1: &CycRep, rep2: &CycRep) -> Option<Vec<u64>> {
    let field = rep1.field();
    if field.conductor() != rep2.field().conductor() || rep1.dim() != rep2.dim() || rep1.order() != rep2.order() {
        return None;
    }
    let mut out = Vec::with_capacity(rep1.order());
    for a in 0..rep1.order() {
        let (i, j, x) = rep1.matrix(a).first_nonzero()?;
        let ratio = rep2.matrix(a).get(i, j) * &x.inv()?;
        let e = ratio.root_of_unity_exponent()?;
        if rep1.matrix(a).scale(&ratio) != *rep2.matrix(a) {
            return None;
        }
        out.push(e);
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Construction by induction

#[derive(Clone, Debug)]
pub struct PolarizationLinearization {
    pub semidirect: SemidirectProduct,
    /// Representation of `A ⋉ P` induced from `A ⋉ (Ṽ⁺ × P₀)`.
    pub rep: CycRep,
    pub partial: PartialPolarization,
    /// Restriction to `{1} ⋉ P` equals the Heisenberg representation entrywise.
    pub restricts_to_heisenberg: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PolarizationOutcome {
    Built,
    NotInStabilizer { automorphism: u32, violation: StabilizerViolation },
}

/// Induces `π(a, s·z) = ω₀(z)` (`s ∈ Ṽ⁺`, `z ∈ P₀`) from `A ⋉ (Ṽ⁺ × P₀)`
/// to `A ⋉ P`, using the polarization of the Heisenberg representation.
pub fn linearize_via_polarization(
    h: &HeisenbergGroup,
    psi: u32,
    aut: &AutGroup,
) -> Result<std::result::Result<PolarizationLinearization, PolarizationOutcome>> {
    let hr = heisenberg_rep(h, psi)?;
    let pp = PartialPolarization::from_polarization(h, &hr.polarization)?;
    for (i, f) in aut.elements.iter().enumerate() {
        if let Some(violation) = autz::stabilizer_violation(h, f, &pp)? {
            return Ok(Err(PolarizationOutcome::NotInStabilizer { automorphism: i as u32, violation }));
        }
    }
    let sd = semidirect_product(h, aut)?;
    let np = h.order();
    let p0_pos: HashMap<u32, usize> = hr.p0.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    // x = s·z with s ∈ Ṽ⁺, z ∈ P₀
    let mut p0_part: HashMap<u32, u32> = HashMap::new();
    for &s in &pp.lift {
        let es = h.element(s as usize);
        for &z in &hr.p0 {
            let x = h.index_of(&h.mul(&es, &h.element(z as usize))) as u32;
            p0_part.insert(x, z);
        }
    }
    let mut sub: Vec<u32> = Vec::new();
    for a in 0..aut.order() {
        for &x in pp.product() {
            sub.push(sd.index(a, x as usize) as u32);
        }
    }
    sub.sort_unstable();
    let mats = sub
        .iter()
        .map(|&i| {
            let (_, x) = sd.split(i as usize);
            hr.base.matrix(p0_pos[&p0_part[&(x as u32)]]).clone()
        })
        .collect();
    let pi = CycRep::new(hr.base.field(), hr.base.dim(), mats)?;
    let coset_reps: Vec<u32> = hr.coset_reps.iter().map(|&t| sd.index(0, t as usize) as u32).collect();
    let rep = reps::induce(&sd.group, &sub, &pi, Some(&coset_reps))?;
    let restricts = (0..np).all(|x| rep.matrix(sd.index(0, x)) == hr.rep.matrix(x));
    Ok(Ok(PolarizationLinearization { semidirect: sd, rep, partial: pp, restricts_to_heisenberg: restricts }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathComparison {
    /// `ρ_induced(a) = ζ^{χ(a)} ρ_cocycle(a)`.
    pub character: Vec<u64>,
    pub character_is_multiplicative: bool,
    pub twisted_equal: bool,
}

/// Compares the induced construction with a cocycle linearization on `A`.
pub fn compare_paths(pl: &PolarizationLinearization, lin: &WeilLinearization, aut: &FinGroup) -> Result<Option<PathComparison>> {
    let field = lin.rep.field();
    let induced = pl.rep.embed(field)?;
    let on_a = induced.restrict(&(0..aut.order()).map(|a| pl.semidirect.index(a, 0) as u32).collect::<Vec<_>>());
    let Some(chi) = scalar_ratio(&lin.rep, &on_a) else { return Ok(None) };
    let m = field.conductor();
    let multiplicative = (0..aut.order()).all(|a| (0..aut.order()).all(|b| (chi[a] + chi[b]) % m == chi[aut.mul(a, b)]));
    let twisted = lin.rep.twist(&chi, m)?;
    Ok(Some(PathComparison { character: chi, character_is_multiplicative: multiplicative, twisted_equal: twisted == on_a }))
}

// ---------------------------------------------------------------------------
// Real and quaternionic linearizations

#[derive(Clone, Debug, Serialize)]
pub struct RLinearization {
    pub flavor: Flavor,
    pub sign: i8,
    pub j: CycMat,
    /// All linearizations commuting with `J`, one per character `s` with `2s = κ`.
    pub reps: Vec<CycRep>,
    /// Number of characters of `A` of order at most 2.
    pub order_two_characters: usize,
    pub unique: bool,
}

pub fn r_linearize(h: &HeisenbergGroup, lin: &WeilLinearization, aut: &AutGroup) -> Result<RLinearization> {
    if h.p() != 2 {
        return Err(Error::domain("R-linearization applies to p = 2 only"));
    }
    let pg = h.group()?;
    let rs = r_structure(&pg, &lin.omega)?.ok_or_else(|| Error::domain("Heisenberg representation of complex type"))?;
    let cond = lin.rep.field().conductor().lcm(&rs.j.field().conductor()).lcm(&(2 * aut.group.exponent()));
    let field = CycField::new(cond)?;
    let rho = lin.rep.embed(&field)?;
    let j = rs.j.embed(&field)?;
    let j_inv = j.conj().scale(&Cyc::from_int(&field, rs.sign as i64));
    // J conj(ρ(a)) J⁻¹ = κ(a) ρ(a)
    let twisted = CycRep::new(&field, rho.dim(), rho.matrices().iter().map(|m| j.mul(&m.conj()).mul(&j_inv)).collect())?;
    let kappa = scalar_ratio(&rho, &twisted).ok_or_else(|| Error::domain("J does not normalise the linearization"))?;
    let m = cond;
    // ρ'(a) = ζ^{s(a)} ρ(a) commutes with J iff 2 s(a) = κ(a).
    let mut reps_out = Vec::new();
    for s in linear_characters(&aut.group, m) {
        if s.iter().zip(&kappa).all(|(x, k)| (2 * x) % m == *k % m) {
            reps_out.push(rho.twist(&s, m)?);
        }
    }
    let order_two = linear_characters(&aut.group, 2).len();
    if reps_out.is_empty() {
        return Err(Error::domain("no rescaling commutes with J"));
    }
    for r in &reps_out {
        debug_assert!(r.matrices().iter().all(|a| j.mul(&a.conj()) == a.mul(&j)));
    }
    Ok(RLinearization {
        flavor: lin.flavor,
        sign: rs.sign,
        j,
        unique: reps_out.len() == 1,
        reps: reps_out,
        order_two_characters: order_two,
    })
}

// ---------------------------------------------------------------------------
// Odd p: the symplectic group

/// `Sp(V, ω_P)` acting through the canonical section, for `B = ω/2`.
pub fn symplectic_section(h: &HeisenbergGroup) -> Result<AutGroup> {
    let iso = autz::isometry_group(h)?;
    let gens = iso
        .group
        .small_generating_set(&iso.group.all())
        .into_iter()
        .map(|g| autz::section_odd(h, &iso.matrices[g as usize]))
        .collect::<Result<Vec<_>>>()?;
    let aut = AutGroup::generated(h, &gens)?;
    if aut.order() != iso.matrices.len() {
        return Err(Error::domain("section is not injective"));
    }
    Ok(aut)
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledLinearization {
    pub label: String,
    /// Twisting character relative to label `chi0`, as exponents of `ζ_modulus`.
    pub character: Vec<u64>,
    pub rep: CycRep,
}

#[derive(Clone, Debug, Serialize)]
pub struct GerardinWeil {
    pub modulus: u64,
    pub abelianization_order: usize,
    pub count: usize,
    pub linearizations: Vec<LabelledLinearization>,
}

/// Every linearization of the projective Weil representation of `A ≤ Sp`
/// (through the canonical section), labelled `chi0, chi1, …` by the sorted
/// twisting characters.
pub fn gerardin_weil(h: &HeisenbergGroup, psi: u32, aut: &AutGroup) -> Result<GerardinWeil> {
    if h.p() == 2 {
        return Err(Error::domain("the symplectic section needs odd p"));
    }
    if aut.elements.iter().any(|f| f.mu().iter().any(|&m| m != 0)) {
        return Err(Error::domain("A must lie in the canonical section of Sp"));
    }
    let pw = projective_weil(h, psi, aut)?;
    let lin = linearize(&pw, aut)?.linearized().ok_or_else(|| Error::domain("projective Weil representation does not linearize"))?;
    let m = lin.rep.field().conductor();
    let chars = linear_characters(&aut.group, m);
    let abelianization_order = aut.group.abelianization_order();
    if chars.len() != abelianization_order {
        return Err(Error::domain("character count disagrees with the abelianization"));
    }
    let linearizations = chars
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            Ok(LabelledLinearization { label: format!("chi{i}"), character: chi.clone(), rep: lin.rep.twist(chi, m)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GerardinWeil { modulus: m, abelianization_order, count: linearizations.len(), linearizations })
}

/// Number of linearizations: linear characters of `A` when one exists
/// (complex type), characters of order ≤ 2 for `p = 2`; zero if obstructed.
pub fn count_linearizations(h: &HeisenbergGroup, psi: u32, aut: &AutGroup) -> Result<usize> {
    let pw = projective_weil(h, psi, aut)?;
    match linearize(&pw, aut)? {
        Linearization::Obstructed(_) => Ok(0),
        Linearization::Linearized(lin) => {
            if h.p() == 2 {
                Ok(r_linearize(h, &lin, aut)?.reps.len())
            } else {
                Ok(aut.group.abelianization_order())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Uniqueness of special isomorphisms

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecialIsoOutcome {
    /// `h ∈ P` (element index) with `f2 = conj_h ∘ f1`.
    pub conjugator: Option<u32>,
    pub conjugator_element: Option<HeisElement>,
    pub candidates_checked: usize,
}

/// Given `f1, f2: A ⋉ P → S ⋉ P` (with `S` the section of `Sp`), searches
/// for `h ∈ P` with `f2 = conj_h ∘ f1` after checking the hypotheses: both
/// are homomorphisms, restrict on `A` to the projection, and restrict on `P`
/// to maps inducing the identity on `V`.
pub fn special_iso_uniqueness_check(
    h: &HeisenbergGroup,
    source: (&AutGroup, &SemidirectProduct),
    target: (&AutGroup, &SemidirectProduct),
    f1: &GroupHom,
    f2: &GroupHom,
) -> Result<SpecialIsoOutcome> {
    if h.p() == 2 {
        return Err(Error::domain("special isomorphisms are defined for odd p"));
    }
    let (src_aut, src) = source;
    let (tgt_aut, tgt) = target;
    for (name, f) in [("f1", f1), ("f2", f2)] {
        if !f.is_homomorphism(&src.group, &tgt.group) {
            return Err(Error::domain(format!("{name} is not a homomorphism")));
        }
        for a in 0..src_aut.order() {
            let (s, _) = tgt.split(f.images[src.index(a, 0)] as usize);
            if tgt_aut.elements[s].matrix() != src_aut.elements[a].matrix() {
                return Err(Error::domain(format!("{name} does not restrict to the projection on A")));
            }
        }
        for x in 0..src.heis_order {
            let (s, y) = tgt.split(f.images[src.index(0, x)] as usize);
            if s != 0 || h.element(y).v != h.element(x).v {
                return Err(Error::domain(format!("{name} is not a special isomorphism on P")));
            }
        }
    }
    let mut checked = 0;
    for cand in 0..tgt.heis_order {
        checked += 1;
        let c = tgt.index(0, cand);
        if (0..src.group.order()).all(|y| f2.images[y] as usize == tgt.group.conjugate(c, f1.images[y] as usize)) {
            return Ok(SpecialIsoOutcome {
                conjugator: Some(cand as u32),
                conjugator_element: Some(h.element(cand)),
                candidates_checked: checked,
            });
        }
    }
    Ok(SpecialIsoOutcome { conjugator: None, conjugator_element: None, candidates_checked: checked })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialIsoDemo {
    pub w: Vec<u32>,
    pub stabilizer_order: usize,
    pub outcome: SpecialIsoOutcome,
    pub conjugator_projects_to_w: bool,
}

/// `A` = stabilizer of `w` in the section of `Sp`, `f1` the inclusion and
/// `f2 = conj_{(0,w)} ∘ f1`; the search must recover a lift of `w`.
pub fn special_iso_demo(h: &HeisenbergGroup, w: &[u32]) -> Result<SpecialIsoDemo> {
    let sp = symplectic_section(h)?;
    let stab: Vec<u32> = (0..sp.order() as u32).filter(|&i| sp.elements[i as usize].matrix().mul_vec(w) == w).collect();
    let a = sp.subgroup(&stab);
    let src = semidirect_product(h, &a)?;
    let tgt = semidirect_product(h, &sp)?;
    let f1 = GroupHom {
        images: (0..src.group.order())
            .map(|i| {
                let (ai, x) = src.split(i);
                let s = sp.index_of(&a.elements[ai]).expect("subgroup of the section");
                tgt.index(s, x) as u32
            })
            .collect(),
    };
    let wl = tgt.index(0, h.vector_lift(w));
    let f2 = GroupHom { images: f1.images.iter().map(|&y| tgt.group.conjugate(wl, y as usize) as u32).collect() };
    let outcome = special_iso_uniqueness_check(h, (&a, &src), (&sp, &tgt), &f1, &f2)?;
    let projects = outcome.conjugator_element.as_ref().is_some_and(|e| e.v == w);
    Ok(SpecialIsoDemo { w: w.to_vec(), stabilizer_order: a.order(), outcome, conjugator_projects_to_w: projects })
}

/// The subgroup of `Aut_Z(P)` generated by given automorphisms, each a lift
/// of an isometry with `μ` vanishing on the basis.
pub fn lifted_subgroup(h: &HeisenbergGroup, matrices: &[FpMatrix]) -> Result<AutGroup> {
    let gens = matrices.iter().map(|m| autz::lift_pointwise(h, m)).collect::<Result<Vec<_>>>()?;
    AutGroup::generated(h, &gens)
}

/// Inner automorphisms `{inner(u)} ≅ V`.
pub fn inner_subgroup(h: &HeisenbergGroup) -> Result<AutGroup> {
    let d = h.dim();
    let gens: Vec<CentralAutomorphism> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            autz::inner(h, &e)
        })
        .collect();
    AutGroup::generated(h, &gens)
}
