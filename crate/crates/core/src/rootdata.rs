//! Root systems of small rank in standard coordinates, Weyl groups as root
//! permutations, torsion primes, centralizers of residue functionals with the
//! genericity conditions GE1/GE2, and the `D_4` example with weight lattice
//! `Z⁴ + Z·ϖ₄`.

pub mod finite;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grp::{complement_exists, FinGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('_', "");
        let bad = || Error::domain(format!("unknown root system type {s:?}"));
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match (head.to_ascii_uppercase().as_str(), n) {
            ("A", n) if n >= 1 => CartanType::A(n),
            ("B", n) if n >= 2 => CartanType::B(n),
            ("C", n) if n >= 2 => CartanType::C(n),
            ("D", n) if n >= 3 => CartanType::D(n),
            ("E", n) if (6..=8).contains(&n) => CartanType::E(n),
            ("F", 4) => CartanType::F4,
            ("G", 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(t)
    }
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Torsion primes of the irreducible root system. `B_2` is `C_2` and
    /// `D_3` is `A_3`.
    pub fn torsion_primes(&self) -> BTreeSet<u64> {
        let primes: &[u64] = match *self {
            CartanType::A(_) | CartanType::C(_) => &[],
            CartanType::B(n) if n >= 3 => &[2],
            CartanType::B(_) => &[],
            CartanType::D(n) if n >= 4 => &[2],
            CartanType::D(_) => &[],
            CartanType::G2 => &[2],
            CartanType::E(6) | CartanType::E(7) | CartanType::F4 => &[2, 3],
            CartanType::E(_) => &[2, 3, 5],
        };
        primes.iter().copied().collect()
    }
}

/// Torsion primes of a root datum: those of each irreducible component plus
/// the primes dividing the torsion of the fundamental group.
pub fn torsion_primes(types: &[CartanType], pi1_torsion: u64) -> Result<BTreeSet<u64>> {
    if pi1_torsion == 0 {
        return Err(Error::domain("fundamental group torsion order must be positive"));
    }
    let mut out: BTreeSet<u64> = types.iter().flat_map(|t| t.torsion_primes()).collect();
    out.extend(crate::zmod::factorize(pi1_torsion).into_iter().map(|(p, _)| p));
    Ok(out)
}

type Q = Ratio<i64>;

/// Solves `Σ c_i cols[i] = target` over Q; `None` if inconsistent.
fn rational_coordinates(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<Q>> {
    let rows = target.len();
    let k = cols.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = (0..k).map(|c| Q::from_integer(cols[c][r])).collect();
            row.push(Q::from_integer(target[r]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=k {
                    let v = m[r][j] * f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut out = vec![Q::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = m[i][k];
    }
    Some(out)
}

fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// A reduced root system. Vectors are stored in doubled standard coordinates
/// so that the half-integral roots of `F_4` are integral.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub ambient_dim: usize,
    pub simple: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    /// Coordinates of each root in the simple roots.
    pub root_coords: Vec<Vec<i64>>,
    /// Coordinates of each coroot in the simple coroots.
    pub coroot_coords: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Result<Self> {
        let e = |dim: usize, terms: &[(usize, i64)]| {
            let mut v = vec![0i64; dim];
            for &(i, c) in terms {
                v[i] += 2 * c;
            }
            v
        };
        let (dim, simple): (usize, Vec<Vec<i64>>) = match t {
            CartanType::A(n) if n <= 4 => (n + 1, (0..n).map(|i| e(n + 1, &[(i, 1), (i + 1, -1)])).collect()),
            CartanType::B(n) if n <= 4 => (n, {
                let mut s: Vec<_> = (0..n - 1).map(|i| e(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(e(n, &[(n - 1, 1)]));
                s
            }),
            CartanType::C(n) if n <= 4 => (n, {
                let mut s: Vec<_> = (0..n - 1).map(|i| e(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(e(n, &[(n - 1, 2)]));
                s
            }),
            CartanType::D(n) if n <= 4 => (n, {
                let mut s: Vec<_> = (0..n - 1).map(|i| e(n, &[(i, 1), (i + 1, -1)])).collect();
                s.push(e(n, &[(n - 2, 1), (n - 1, 1)]));
                s
            }),
            CartanType::F4 => (4, vec![e(4, &[(1, 1), (2, -1)]), e(4, &[(2, 1), (3, -1)]), e(4, &[(3, 1)]), vec![1, -1, -1, -1]]),
            CartanType::G2 => (3, vec![e(3, &[(0, 1), (1, -1)]), e(3, &[(0, -2), (1, 1), (2, 1)])]),
            _ => return Err(Error::unsupported(format!("root system {t} is only tabulated for torsion primes"))),
        };
        let rank = simple.len();
        let pairing = |b: &[i64], a: &[i64]| -> i64 {
            let num = 2 * dot(b, a);
            let den = dot(a, a);
            debug_assert_eq!(num % den, 0);
            num / den
        };
        let mut roots: Vec<Vec<i64>> = simple.clone();
        let mut coords: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        let mut index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut i = 0;
        while i < roots.len() {
            for (j, a) in simple.iter().enumerate() {
                let c = pairing(&roots[i], a);
                let r: Vec<i64> = roots[i].iter().zip(a).map(|(x, y)| x - c * y).collect();
                if !index.contains_key(&r) {
                    let mut rc = coords[i].clone();
                    rc[j] -= c;
                    index.insert(r.clone(), roots.len());
                    roots.push(r);
                    coords.push(rc);
                }
            }
            i += 1;
        }
        let coroot_coords = roots
            .iter()
            .zip(&coords)
            .map(|(r, c)| {
                let rr = dot(r, r);
                c.iter()
                    .zip(&simple)
                    .map(|(ci, s)| {
                        let num = ci * dot(s, s);
                        debug_assert_eq!(num % rr, 0);
                        num / rr
                    })
                    .collect()
            })
            .collect();
        let rs = RootSystem { cartan_type: t, ambient_dim: dim, simple, roots, root_coords: coords, coroot_coords };
        let expected = match t {
            CartanType::A(n) => n * (n + 1),
            CartanType::B(n) | CartanType::C(n) => 2 * n * n,
            CartanType::D(n) => 2 * n * (n - 1),
            CartanType::F4 => 48,
            CartanType::G2 => 12,
            CartanType::E(_) => unreachable!(),
        };
        if rs.roots.len() != expected {
            return Err(Error::domain(format!("generated {} roots for {t}, expected {expected}", rs.roots.len())));
        }
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }

    /// `⟨β, α^∨⟩`.
    pub fn pairing(&self, beta: &[i64], alpha: usize) -> i64 {
        let a = &self.roots[alpha];
        2 * dot(beta, a) / dot(a, a)
    }

    /// Root permutation of the reflection `s_α`.
    pub fn reflection(&self, alpha: usize) -> Vec<u32> {
        let a = &self.roots[alpha];
        let index: HashMap<&Vec<i64>, usize> = self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        self.roots
            .iter()
            .map(|b| {
                let c = self.pairing(b, alpha);
                let r: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - c * y).collect();
                index[&r] as u32
            })
            .collect()
    }

    /// Cartan integers `⟨α_i, α_j^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.pairing(&self.simple[i], j)).collect()).collect()
    }

    /// Types of the Levi subsystem spanned by the given simple roots.
    pub fn levi_types(&self, subset: &[usize]) -> Vec<CartanType> {
        let a = self.cartan_matrix();
        let len = |i: usize| dot(&self.simple[i], &self.simple[i]);
        let mut seen = vec![false; self.rank()];
        let mut out = Vec::new();
        for &s in subset {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let u = comp[k];
                for &v in subset {
                    if !seen[v] && a[u][v] != 0 {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                k += 1;
            }
            let size = comp.len();
            let bond = |u: usize, v: usize| a[u][v] * a[v][u];
            let degree = |u: usize| comp.iter().filter(|&&v| v != u && a[u][v] != 0).count();
            let multi: Vec<(usize, usize)> = comp
                .iter()
                .flat_map(|&u| comp.iter().map(move |&v| (u, v)))
                .filter(|&(u, v)| u < v && bond(u, v) > 1)
                .collect();
            let t = match multi.first() {
                None if comp.iter().any(|&u| degree(u) == 3) => CartanType::D(size),
                None => CartanType::A(size),
                Some(&(u, v)) if bond(u, v) == 3 => CartanType::G2,
                Some(_) if size == 2 => CartanType::C(2),
                Some(&(u, v)) => {
                    if degree(u) == 2 && degree(v) == 2 {
                        CartanType::F4
                    } else {
                        let (leaf, other) = if degree(u) == 1 { (u, v) } else { (v, u) };
                        if len(leaf) < len(other) {
                            CartanType::B(size)
                        } else {
                            CartanType::C(size)
                        }
                    }
                }
            };
            out.push(t);
        }
        out.sort();
        out
    }

    /// Matrix (rational, standard coordinates) of a Weyl element given as a
    /// root permutation, when the roots span the ambient space.
    pub fn ambient_matrix(&self, w: &[u32]) -> Option<Vec<Vec<Q>>> {
        let d = self.ambient_dim;
        let simple_idx: Vec<usize> = self.simple.iter().map(|s| self.root_index(s).expect("simple roots are roots")).collect();
        let mut cols = Vec::with_capacity(d);
        for i in 0..d {
            let mut e = vec![0i64; d];
            e[i] = 2;
            let c = rational_coordinates(&self.simple, &e)?;
            let col: Vec<Q> = (0..d)
                .map(|r| {
                    c.iter()
                        .zip(&simple_idx)
                        .fold(Q::zero(), |acc, (ci, &s)| acc + ci * Q::from_integer(self.roots[w[s] as usize][r]) / 2)
                })
                .collect();
            cols.push(col);
        }
        Some((0..d).map(|r| (0..d).map(|c| cols[c][r]).collect()).collect())
    }
}

/// The Weyl group acting on roots; `perms[i]` is element `i`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub group: FinGroup,
    pub perms: Vec<Vec<u32>>,
}

fn compose(a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        let gens: Vec<Vec<u32>> = rs.simple.iter().map(|s| rs.reflection(rs.root_index(s).expect("root"))).collect();
        let id: Vec<u32> = (0..rs.roots.len() as u32).collect();
        let (group, perms) = FinGroup::from_generators(id, &gens, compose)?;
        Ok(WeylGroup { group, perms })
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn index_of(&self, perm: &[u32]) -> Option<usize> {
        self.perms.iter().position(|p| p == perm)
    }

    /// `⟨s_α : α ∈ roots⟩`.
    pub fn reflection_subgroup(&self, rs: &RootSystem, roots: &[usize]) -> Subgroup {
        let gens: Vec<u32> = roots.iter().map(|&a| self.index_of(&rs.reflection(a)).expect("reflection in W") as u32).collect();
        self.group.generate(&gens)
    }
}

/// `X̄`: an F_p-linear functional on the coroot lattice with values in the
/// span of `symbols` formal symbols, given on the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueFunctional {
    pub p: u32,
    pub symbols: usize,
    /// `simple_values[i][s]`: coefficient of symbol `s` in `X̄(H_{α_i})`.
    pub simple_values: Vec<Vec<u32>>,
}

impl ResidueFunctional {
    pub fn new(p: u32, symbols: usize, simple_values: Vec<Vec<u32>>) -> Result<Self> {
        crate::gf::check_prime(p)?;
        if symbols > 3 || simple_values.iter().any(|v| v.len() != symbols) {
            return Err(Error::domain("functional needs at most 3 symbols and one value per simple coroot"));
        }
        Ok(ResidueFunctional { p, symbols, simple_values: simple_values.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect() })
    }

    /// `X̄ = Σ_s a_s λ_s` for weights `λ_s` in doubled standard coordinates.
    pub fn from_weights(rs: &RootSystem, p: u32, weights: &[Vec<i64>]) -> Result<Self> {
        let mut vals = Vec::with_capacity(rs.rank());
        for a in &rs.simple {
            let mut row = Vec::with_capacity(weights.len());
            for w in weights {
                let num = 2 * dot(w, a);
                let den = dot(a, a);
                if num % den != 0 {
                    return Err(Error::domain("weight pairs non-integrally with a coroot"));
                }
                row.push((num / den).rem_euclid(p as i64) as u32);
            }
            vals.push(row);
        }
        Self::new(p, weights.len(), vals)
    }

    /// Values on every coroot.
    pub fn evaluate(&self, rs: &RootSystem) -> Vec<Vec<u32>> {
        let p = self.p as i64;
        rs.coroot_coords
            .iter()
            .map(|c| {
                (0..self.symbols)
                    .map(|s| c.iter().zip(&self.simple_values).map(|(ci, v)| ci * v[s] as i64).sum::<i64>().rem_euclid(p) as u32)
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralizerReport {
    pub centralizer_order: usize,
    pub w_prime_order: usize,
    pub quotient_order: usize,
    pub w_prime_normal: bool,
    pub is_p_group: bool,
    pub ge2: bool,
    #[serde(skip)]
    pub centralizer: Subgroup,
}

/// `Z_W(X̄) = {w : X̄ ∘ w = X̄}`, `W′ = ⟨s_α : X̄(H_α) = 0⟩`, and GE2 for the
/// sub-root-system `phi_h` (root indices).
pub fn weyl_centralizer(rs: &RootSystem, w: &WeylGroup, x: &ResidueFunctional, phi_h: &[usize]) -> CentralizerReport {
    let vals = x.evaluate(rs);
    let centralizer: Subgroup = (0..w.order() as u32)
        .filter(|&i| {
            let perm = &w.perms[i as usize];
            (0..rs.roots.len()).all(|a| vals[perm[a] as usize] == vals[a])
        })
        .collect();
    let zeros: Vec<usize> = (0..rs.roots.len()).filter(|&a| vals[a].iter().all(|&c| c == 0)).collect();
    let w_prime = w.reflection_subgroup(rs, &zeros);
    let w_h = w.reflection_subgroup(rs, phi_h);
    let quotient = centralizer.len() / w_prime.len();
    let (zg, embed) = w.group.subgroup_group(&centralizer);
    let pos: HashMap<u32, u32> = embed.iter().enumerate().map(|(i, &g)| (g, i as u32)).collect();
    let w_prime_normal = w_prime.iter().all(|g| pos.contains_key(g)) && {
        let local: Vec<u32> = w_prime.iter().map(|g| pos[g]).collect();
        zg.is_normal(&local)
    };
    let mut sorted_h = w_h.clone();
    sorted_h.sort_unstable();
    let mut sorted_z = centralizer.clone();
    sorted_z.sort_unstable();
    CentralizerReport {
        centralizer_order: centralizer.len(),
        w_prime_order: w_prime.len(),
        quotient_order: quotient,
        w_prime_normal,
        is_p_group: is_power_of(quotient as u64, x.p as u64),
        ge2: sorted_h == sorted_z,
        centralizer,
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ge1Result {
    pub holds: bool,
    /// A root outside `Φ_H` on which `X̄` vanishes.
    pub witness: Option<Vec<i64>>,
}

pub fn ge1_check(rs: &RootSystem, x: &ResidueFunctional, phi_h: &[usize]) -> Ge1Result {
    let vals = x.evaluate(rs);
    let witness = (0..rs.roots.len()).find(|a| !phi_h.contains(a) && vals[*a].iter().all(|&c| c == 0));
    Ge1Result { holds: witness.is_none(), witness: witness.map(|a| halve(&rs.roots[a])) }
}

fn halve(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| x / 2).collect()
}

/// Every Levi subsystem (subset of simple roots) with its type and torsion.
pub fn levi_torsion(rs: &RootSystem) -> Vec<(Vec<usize>, Vec<CartanType>, BTreeSet<u64>)> {
    let r = rs.rank();
    (0..1u32 << r)
        .map(|mask| {
            let subset: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
            let types = rs.levi_types(&subset);
            let torsion = torsion_primes(&types, 1).expect("positive");
            (subset, types, torsion)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The D_4 example

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixDReport {
    pub weyl_order: usize,
    pub stabilizer_order: usize,
    pub stabilizer_nonabelian: bool,
    pub stabilizer_normal: bool,
    /// Order of the sign-change subgroup inside the stabilizer.
    pub sign_change_order: usize,
    pub sign_change_elementary_abelian: bool,
    pub complement_order: Option<usize>,
    pub complement_is_klein_four: bool,
    pub structure: String,
    /// The lattice computation agrees with the residue-functional centralizer.
    pub residue_centralizer_agrees: bool,
    pub ge1: Ge1Result,
    pub ge2: bool,
    pub w_prime_order: usize,
    pub quotient_is_2_group: bool,
}

/// `x ∈ Z⁴ + Z·ϖ₄` for `x` in doubled coordinates.
fn in_weight_lattice(doubled: &[i64]) -> bool {
    let parity = doubled[0].rem_euclid(2);
    doubled.iter().all(|c| c.rem_euclid(2) == parity)
}

pub fn appendix_d_report() -> Result<AppendixDReport> {
    let rs = RootSystem::new(CartanType::D(4))?;
    let w = WeylGroup::new(&rs)?;
    let lambdas = [vec![2, 2, 0, 0], vec![0, 2, 2, 0]];
    let idx: Vec<usize> = lambdas.iter().map(|l| rs.root_index(l).expect("e1+e2 and e2+e3 are roots")).collect();
    // w fixes λ mod 2X* iff (λ − wλ)/2 ∈ X*.
    let stab: Subgroup = (0..w.order() as u32)
        .filter(|&i| {
            let perm = &w.perms[i as usize];
            idx.iter().all(|&a| {
                let wl = &rs.roots[perm[a] as usize];
                let diff: Vec<i64> = rs.roots[a].iter().zip(wl).map(|(x, y)| x - y).collect();
                diff.iter().all(|c| c % 2 == 0) && in_weight_lattice(&diff.iter().map(|c| c / 2).collect::<Vec<_>>())
            })
        })
        .collect();
    let (pg, embed) = w.group.subgroup_group(&stab);
    let is_sign_change = |g: u32| -> bool {
        let m = rs.ambient_matrix(&w.perms[g as usize]).expect("D4 roots span");
        (0..4).all(|r| (0..4).all(|c| r == c || m[r][c].is_zero())) && (0..4).all(|r| m[r][r].is_one() || (-m[r][r]).is_one())
    };
    let sign: Vec<u32> = (0..pg.order() as u32).filter(|&i| is_sign_change(embed[i as usize])).collect();
    let elementary = pg.is_subgroup(&sign) && sign.iter().all(|&x| pg.mul(x as usize, x as usize) == 0);
    let comp = complement_exists(&pg, &sign)?;
    let klein = comp.complement.as_ref().is_some_and(|c| c.len() == 4 && c.iter().all(|&x| pg.mul(x as usize, x as usize) == 0));
    let functional = ResidueFunctional::from_weights(&rs, 2, &lambdas)?;
    let report = weyl_centralizer(&rs, &w, &functional, &[]);
    let mut a = report.centralizer.clone();
    a.sort_unstable();
    let ge1 = ge1_check(&rs, &functional, &[]);
    let nonabelian = !pg.is_abelian();
    let structure = if sign.len() == 8 && elementary && klein && nonabelian {
        "(Z/2)^3 ⋊ (Z/2)^2".to_string()
    } else {
        format!("order {} with sign-change subgroup of order {}", stab.len(), sign.len())
    };
    Ok(AppendixDReport {
        weyl_order: w.order(),
        stabilizer_order: stab.len(),
        stabilizer_nonabelian: nonabelian,
        stabilizer_normal: w.group.is_normal(&stab),
        sign_change_order: sign.len(),
        sign_change_elementary_abelian: elementary,
        complement_order: comp.complement.as_ref().map(|c| c.len()),
        complement_is_klein_four: klein,
        structure,
        residue_centralizer_agrees: a == stab,
        ge1,
        ge2: report.ge2,
        w_prime_order: report.w_prime_order,
        quotient_is_2_group: report.is_p_group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        for (t, n) in [("A2", 6), ("B3", 48), ("C3", 48), ("D4", 192), ("F4", 1152), ("G2", 12)] {
            let rs = RootSystem::new(t.parse().unwrap()).unwrap();
            assert_eq!(WeylGroup::new(&rs).unwrap().order(), n, "{t}");
        }
    }
}
