//! Finite groups given by full multiplication tables, with the structural
//! queries, complement search, cocycle solving and iterated semidirect
//! products used by the rest of the crate.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, FpMatrix};
use crate::zmod;

/// Largest group materialised as a multiplication table.
pub const MAX_TABLE_ORDER: usize = 4096;

/// Subgroups are sorted lists of element indices.
pub type Subgroup = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FinGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    order: usize,
    table: Vec<Vec<u32>>,
}

impl From<FinGroup> for GroupRepr {
    fn from(g: FinGroup) -> Self {
        let table = (0..g.order).map(|a| g.table[a * g.order..(a + 1) * g.order].to_vec()).collect();
        GroupRepr { order: g.order, table }
    }
}

impl TryFrom<GroupRepr> for FinGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        if r.table.len() != r.order || r.table.iter().any(|row| row.len() != r.order) {
            return Err(Error::domain("table shape does not match order"));
        }
        FinGroup::from_table(r.table.concat(), r.order)
    }
}

impl FinGroup {
    /// Validates a row-major table whose element 0 must be the identity.
    pub fn from_table(table: Vec<u32>, order: usize) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::domain("table size must be order^2 with order > 0"));
        }
        if table.iter().any(|&x| x as usize >= order) {
            return Err(Error::domain("table entry out of range"));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::domain("element 0 is not the identity"));
            }
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    if table[b * order + a] != 0 {
                        return Err(Error::domain("one-sided inverse"));
                    }
                    inverses[a] = b as u32;
                    break;
                }
            }
            if inverses[a] == u32::MAX {
                return Err(Error::domain(format!("element {a} has no inverse")));
            }
        }
        let g = FinGroup { order, table, inverses };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c));
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::domain(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::domain(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        Ok(())
    }

    /// Closes `gens` under `mul`, returning the group and its elements in
    /// breadth-first order (identity first). The table is filled from the
    /// right-multiplication graph, so `mul` is called only `|G|·|gens|` times.
    pub fn from_generators<T, F>(identity: T, gens: &[T], mul: F) -> Result<(FinGroup, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let k = gens.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        // parent[y] = (x, g) with elems[y] = elems[x] * gens[g]
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut right: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let x = mul(&elems[i], g);
                let idx = match index.get(&x) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= MAX_TABLE_ORDER {
                            return Err(Error::resource(format!("group exceeds {MAX_TABLE_ORDER} elements")));
                        }
                        let j = elems.len() as u32;
                        index.insert(x.clone(), j);
                        elems.push(x);
                        parent.push((i as u32, gi as u32));
                        j
                    }
                };
                right.push(idx);
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            table[a * n] = a as u32;
            for b in 1..n {
                let (x, g) = parent[b];
                let ax = table[a * n + x as usize] as usize;
                table[a * n + b] = right[ax * k + g as usize];
            }
        }
        let group = FinGroup::from_table(table, n)?;
        Ok((group, elems))
    }

    /// Builds the table of a finite set already known to be closed.
    pub fn from_elements<T, F>(elems: &[T], index: &HashMap<T, u32>, mul: F) -> Result<FinGroup>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elems.len();
        if n > MAX_TABLE_ORDER {
            return Err(Error::resource(format!("group exceeds {MAX_TABLE_ORDER} elements")));
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let x = mul(&elems[a], &elems[b]);
                table[a * n + b] = *index.get(&x).ok_or_else(|| Error::domain("element set not closed"))?;
            }
        }
        FinGroup::from_table(table, n)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn all(&self) -> Subgroup {
        (0..self.order as u32).collect()
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        self.generate_bounded(gens, usize::MAX).expect("unbounded")
    }

    /// Like [`FinGroup::generate`] but gives up once the subgroup exceeds `limit`.
    pub fn generate_bounded(&self, gens: &[u32], limit: usize) -> Option<Subgroup> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut elems = vec![0u32];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i] as usize;
            for &g in gens {
                let y = self.mul(x, g as usize);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y as u32);
                    if elems.len() > limit {
                        return None;
                    }
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Some(elems)
    }

    /// Greedy generating set: scan elements in index order and keep those
    /// not already in the span.
    pub fn generators_of(&self, sub: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span: HashSet<u32> = HashSet::from([0]);
        for &x in sub {
            if !span.contains(&x) {
                gens.push(x);
                span = self.generate(&gens).into_iter().collect();
                if span.len() == sub.len() {
                    break;
                }
            }
        }
        gens
    }

    /// A generating set of size at most two when one exists among pairs
    /// scanned in index order, otherwise the greedy set.
    pub fn small_generating_set(&self, sub: &[u32]) -> Vec<u32> {
        let greedy = self.generators_of(sub);
        if greedy.len() <= 2 || sub.len() > 4096 {
            return greedy;
        }
        for (ia, &a) in sub.iter().enumerate() {
            for &b in &sub[ia + 1..] {
                if self.generate_bounded(&[a, b], sub.len()).is_some_and(|s| s.len() == sub.len()) {
                    return vec![a, b];
                }
            }
        }
        greedy
    }

    pub fn center(&self) -> Subgroup {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .map(|a| a as u32)
            .collect()
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let gens = self.generators_of(&self.all());
        // Normal closure of commutators of generators.
        let mut seeds: Vec<u32> = Vec::new();
        for &a in &gens {
            for &b in &gens {
                seeds.push(self.commutator(a as usize, b as usize) as u32);
            }
        }
        self.normal_closure(&seeds, &gens)
    }

    /// Smallest subgroup containing `seeds` and stable under conjugation by
    /// `conj_gens`.
    pub fn normal_closure(&self, seeds: &[u32], conj_gens: &[u32]) -> Subgroup {
        let mut current: Vec<u32> = seeds.to_vec();
        loop {
            let sub = self.generate(&current);
            let set: HashSet<u32> = sub.iter().copied().collect();
            let mut grew = false;
            for &x in &sub {
                for &g in conj_gens {
                    let y = self.conjugate(g as usize, x as usize) as u32;
                    if !set.contains(&y) {
                        current.push(y);
                        grew = true;
                    }
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    pub fn abelianization_order(&self) -> usize {
        self.order / self.commutator_subgroup().len()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut class: Vec<u32> = Vec::new();
            for g in 0..self.order {
                let c = self.conjugate(g, a);
                if !seen[c] {
                    seen[c] = true;
                    class.push(c as u32);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    pub fn is_subgroup(&self, sub: &[u32]) -> bool {
        let set: HashSet<u32> = sub.iter().copied().collect();
        set.contains(&0)
            && sub.iter().all(|&a| sub.iter().all(|&b| set.contains(&(self.mul(a as usize, b as usize) as u32))))
    }

    pub fn is_normal(&self, sub: &[u32]) -> bool {
        let set: HashSet<u32> = sub.iter().copied().collect();
        let gens = self.generators_of(&self.all());
        sub.iter().all(|&x| gens.iter().all(|&g| set.contains(&(self.conjugate(g as usize, x as usize) as u32))))
    }

    pub fn normalizer(&self, sub: &[u32]) -> Subgroup {
        let set: HashSet<u32> = sub.iter().copied().collect();
        (0..self.order)
            .filter(|&g| sub.iter().all(|&x| set.contains(&(self.conjugate(g, x as usize) as u32))))
            .map(|g| g as u32)
            .collect()
    }

    /// A Sylow p-subgroup, grown one normalising p-element at a time.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let mut target = 1usize;
        while self.order.is_multiple_of(target * p as usize) {
            target *= p as usize;
        }
        let is_p_power = |mut k: u64| {
            while k.is_multiple_of(p) {
                k /= p;
            }
            k == 1
        };
        let mut sub: Subgroup = vec![0];
        while sub.len() < target {
            let set: HashSet<u32> = sub.iter().copied().collect();
            let norm = self.normalizer(&sub);
            let x = norm
                .iter()
                .copied()
                .find(|&x| !set.contains(&x) && is_p_power(self.element_order(x as usize)))
                .expect("Sylow theory guarantees a normalising p-element");
            let mut gens = self.generators_of(&sub);
            gens.push(x);
            sub = self.generate(&gens);
        }
        sub
    }

    /// The subgroup as a group in its own right, with the embedding (the
    /// identity maps to index 0).
    pub fn subgroup_group(&self, sub: &[u32]) -> (FinGroup, Vec<u32>) {
        let mut elems: Vec<u32> = sub.to_vec();
        elems.sort_unstable();
        let pos: HashMap<u32, u32> = elems.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = pos[&(self.mul(elems[a] as usize, elems[b] as usize) as u32)];
            }
        }
        let inverses = (0..n).map(|a| pos[&(self.inv(elems[a] as usize) as u32)]).collect();
        (FinGroup { order: n, table, inverses }, elems)
    }

    /// Quotient by a normal subgroup.
    pub fn quotient(&self, normal: &[u32]) -> Result<Quotient> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::domain("quotient by a non-normal subgroup"));
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g as u32);
            for &n in normal {
                coset_of[self.mul(g, n as usize)] = id;
            }
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for a in 0..k {
            for b in 0..k {
                table[a * k + b] = coset_of[self.mul(reps[a] as usize, reps[b] as usize)];
            }
        }
        let inverses = (0..k).map(|a| coset_of[self.inv(reps[a] as usize)]).collect();
        Ok(Quotient { group: FinGroup { order: k, table, inverses }, coset_of, reps })
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinGroup,
    pub coset_of: Vec<u32>,
    pub reps: Vec<u32>,
}

/// A map between groups given by the images of all elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHom {
    pub images: Vec<u32>,
}

impl GroupHom {
    pub fn is_homomorphism(&self, source: &FinGroup, target: &FinGroup) -> bool {
        self.images.len() == source.order()
            && (0..source.order()).all(|a| {
                (0..source.order()).all(|b| {
                    self.images[source.mul(a, b)] as usize
                        == target.mul(self.images[a] as usize, self.images[b] as usize)
                })
            })
    }
}

/// Exhaustive search for an isomorphism (intended for orders up to 64):
/// backtracking over images of a small generating set.
pub fn find_isomorphism(g: &FinGroup, h: &FinGroup) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    let mut profile_g: Vec<u64> = (0..g.order()).map(|a| g.element_order(a)).collect();
    let mut profile_h: Vec<u64> = (0..h.order()).map(|a| h.element_order(a)).collect();
    let orders_g = profile_g.clone();
    let orders_h = profile_h.clone();
    profile_g.sort_unstable();
    profile_h.sort_unstable();
    if profile_g != profile_h || g.is_abelian() != h.is_abelian() {
        return None;
    }
    let gens = g.generators_of(&g.all());
    // Words: every element as (parent, generator) from a BFS over right multiplication.
    let mut parent = vec![(usize::MAX, usize::MAX); g.order()];
    parent[0] = (0, usize::MAX);
    let mut bfs = vec![0usize];
    let mut i = 0;
    while i < bfs.len() {
        let x = bfs[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s as usize);
            if parent[y].0 == usize::MAX {
                parent[y] = (x, k);
                bfs.push(y);
            }
        }
        i += 1;
    }
    let try_images = |imgs: &[usize]| -> Option<GroupHom> {
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        for &x in &bfs[1..] {
            let (par, k) = parent[x];
            map[x] = h.mul(map[par], imgs[k]);
        }
        let mut hit = vec![false; h.order()];
        for &y in &map {
            if hit[y] {
                return None;
            }
            hit[y] = true;
        }
        let hom = GroupHom { images: map.iter().map(|&x| x as u32).collect() };
        hom.is_homomorphism(g, h).then_some(hom)
    };
    fn rec(
        k: usize,
        imgs: &mut Vec<usize>,
        gens: &[u32],
        orders_g: &[u64],
        orders_h: &[u64],
        try_images: &dyn Fn(&[usize]) -> Option<GroupHom>,
    ) -> Option<GroupHom> {
        if k == gens.len() {
            return try_images(imgs);
        }
        for cand in 0..orders_h.len() {
            if orders_h[cand] != orders_g[gens[k] as usize] {
                continue;
            }
            imgs.push(cand);
            if let Some(found) = rec(k + 1, imgs, gens, orders_g, orders_h, try_images) {
                return Some(found);
            }
            imgs.pop();
        }
        None
    }
    rec(0, &mut Vec::new(), &gens, &orders_g, &orders_h, &try_images)
}

// ---------------------------------------------------------------------------
// Complements

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementCertificate {
    /// Every choice of lifts of a generating tuple of `E/N` was tried.
    ExhaustiveLifts { generators: usize, tuples_checked: u64 },
    /// The section equations over F_p (elementary abelian `N`) are inconsistent
    /// or solvable.
    Cohomology { unknowns: usize, equations: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementResult {
    pub complement: Option<Subgroup>,
    pub certificate: ComplementCertificate,
}

const MAX_LIFT_TUPLES: u64 = 1 << 22;

/// Searches for `H ≤ E` with `H ∩ N = 1` and `HN = E`.
pub fn complement_exists(e: &FinGroup, n: &[u32]) -> Result<ComplementResult> {
    let quotient = e.quotient(n)?;
    let q = &quotient.group;
    let q_order = q.order();
    let q_gens = q.small_generating_set(&q.all());
    let tuples = (n.len() as u64).checked_pow(q_gens.len() as u32).unwrap_or(u64::MAX);
    if tuples > MAX_LIFT_TUPLES {
        if let Some(res) = complement_by_cohomology(e, n)? {
            return Ok(res);
        }
        return Err(Error::resource(format!("{tuples} lift tuples to search")));
    }
    let in_n: HashSet<u32> = n.iter().copied().collect();
    let k = q_gens.len();
    let mut counter = vec![0usize; k];
    let mut checked = 0u64;
    loop {
        checked += 1;
        let lifts: Vec<u32> = (0..k)
            .map(|i| e.mul(quotient.reps[q_gens[i] as usize] as usize, n[counter[i]] as usize) as u32)
            .collect();
        if let Some(h) = e.generate_bounded(&lifts, q_order) {
            if h.len() == q_order && h.iter().filter(|x| in_n.contains(x)).count() == 1 {
                debug_assert_eq!(h.len() * n.len(), e.order());
                return Ok(ComplementResult {
                    complement: Some(h),
                    certificate: ComplementCertificate::ExhaustiveLifts { generators: k, tuples_checked: checked },
                });
            }
        }
        // Next tuple in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(ComplementResult {
                    complement: None,
                    certificate: ComplementCertificate::ExhaustiveLifts { generators: k, tuples_checked: checked },
                });
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < n.len() {
                break;
            }
            counter[i] = 0;
        }
    }
}

/// For elementary abelian `N`, decides whether a complement exists by solving
/// the linear equations for a section `s(q) = t(q) n(q)`. Returns `None` when
/// `N` is not elementary abelian.
pub fn complement_by_cohomology(e: &FinGroup, n: &[u32]) -> Result<Option<ComplementResult>> {
    let (ng, emb) = e.subgroup_group(n);
    if !ng.is_abelian() || n.len() == 1 {
        return Ok(None);
    }
    let exp = ng.exponent();
    let p = exp as u32;
    if !gf::is_prime(p) {
        return Ok(None);
    }
    // Coordinates of N ≅ F_p^d.
    let basis = ng.generators_of(&ng.all());
    let d = basis.len();
    let mut coords: HashMap<u32, Vec<u32>> = HashMap::new();
    for v in gf::all_vectors(p, d) {
        let mut x = 0usize;
        for (i, &c) in v.iter().enumerate() {
            x = ng.mul(x, ng.pow(basis[i] as usize, c as u64));
        }
        coords.insert(emb[x], v);
    }
    if coords.len() != n.len() {
        return Ok(None);
    }
    let quotient = e.quotient(n)?;
    let q = &quotient.group;
    let qn = q.order();
    let gens = q.small_generating_set(&q.all());
    let t = |c: usize| quotient.reps[c] as usize;
    let unknowns = qn * d;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for &g in &gens {
        let g = g as usize;
        for x in 0..qn {
            let gx = q.mul(g, x);
            // t_g t_x = t_gx f
            let f = e.mul(e.inv(t(gx)), e.mul(t(g), t(x)));
            let fv = &coords[&(f as u32)];
            // Equation: f + A_x(n_g) + n_x - n_gx = 0 with A_x(m) = t_x^{-1} m t_x.
            let mut block = vec![vec![0u32; unknowns]; d];
            for (bi, &b) in basis.iter().enumerate() {
                let m = emb[b as usize] as usize;
                let conj = e.mul(e.mul(e.inv(t(x)), m), t(x));
                let cv = &coords[&(conj as u32)];
                for r in 0..d {
                    block[r][g * d + bi] = (block[r][g * d + bi] + cv[r]) % p;
                }
            }
            for r in 0..d {
                block[r][x * d + r] = (block[r][x * d + r] + 1) % p;
                block[r][gx * d + r] = (block[r][gx * d + r] + p - 1) % p;
                rows.push(std::mem::take(&mut block[r]));
                rhs.push((p - fv[r]) % p);
            }
        }
    }
    let equations = rows.len();
    let mat = FpMatrix::from_rows(p, &rows)?;
    let sol = mat.solve(&rhs)?;
    let certificate = ComplementCertificate::Cohomology { unknowns, equations };
    let Some(x) = sol.solution else {
        return Ok(Some(ComplementResult { complement: None, certificate }));
    };
    let section: Vec<u32> = (0..qn)
        .map(|c| {
            let v = &x[c * d..(c + 1) * d];
            let mut m = 0usize;
            for (i, &cf) in v.iter().enumerate() {
                m = ng.mul(m, ng.pow(basis[i] as usize, cf as u64));
            }
            e.mul(t(c), emb[m] as usize) as u32
        })
        .collect();
    let h = e.generate(&section);
    if h.len() != qn {
        return Err(Error::domain("section equations solved but image is not a complement"));
    }
    Ok(Some(ComplementResult { complement: Some(h), certificate }))
}

// ---------------------------------------------------------------------------
// Cocycles

/// A normalised-or-not 2-cocycle `c: A × A → Z/N`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle2 {
    pub order: usize,
    pub modulus: u64,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowRestriction {
    pub prime: u64,
    pub order: usize,
    pub solvable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CoboundaryResult {
    /// `b` with `c(x, y) = b(x) + b(y) - b(xy)`.
    Solved { cochain: Vec<u64> },
    Nontrivial { generators: Vec<u32>, sylow2: Option<SylowRestriction> },
}

impl Cocycle2 {
    pub fn new(order: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if values.len() != order * order || modulus == 0 {
            return Err(Error::domain("cocycle table has the wrong size"));
        }
        Ok(Cocycle2 { order, modulus, values: values.into_iter().map(|v| v % modulus).collect() })
    }

    pub fn zero(order: usize, modulus: u64) -> Self {
        Cocycle2 { order, modulus, values: vec![0; order * order] }
    }

    #[inline]
    pub fn at(&self, a: usize, b: usize) -> u64 {
        self.values[a * self.order + b]
    }

    /// Checks `c(a,b) + c(ab,c) = c(b,c) + c(a,bc)`, exhaustively when
    /// `|A|^3 ≤ 10^7` and on 10^5 seeded samples otherwise.
    pub fn is_cocycle(&self, g: &FinGroup) -> bool {
        let n = self.order;
        let m = self.modulus;
        let ok = |a: usize, b: usize, c: usize| {
            (self.at(a, b) + self.at(g.mul(a, b), c)) % m == (self.at(b, c) + self.at(a, g.mul(b, c))) % m
        };
        if (n as u64).pow(3) <= 10_000_000 {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| ok(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            (0..100_000).all(|_| ok(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        }
    }

    pub fn coboundary_of(g: &FinGroup, modulus: u64, b: &[u64]) -> Cocycle2 {
        let n = g.order();
        let mut values = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                values[x * n + y] = (b[x] + b[y] + modulus - b[g.mul(x, y)] % modulus) % modulus;
            }
        }
        Cocycle2 { order: n, modulus, values }
    }

    pub fn restrict(&self, sub: &[u32]) -> Cocycle2 {
        let k = sub.len();
        let mut values = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                values[i * k + j] = self.at(sub[i] as usize, sub[j] as usize);
            }
        }
        Cocycle2 { order: k, modulus: self.modulus, values }
    }
}

/// Affine expressions of the cochain values in the generator unknowns.
struct GeneratorSystem {
    gens: Vec<u32>,
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
    /// value of `b(x)` = `coef · u + constant`
    exprs: Vec<(Vec<u64>, u64)>,
}

fn generator_system(g: &FinGroup, c: &Cocycle2) -> GeneratorSystem {
    let m = c.modulus;
    let n = g.order();
    let gens = g.generators_of(&g.all());
    let k = gens.len();
    let mut exprs: Vec<Option<(Vec<u64>, u64)>> = vec![None; n];
    exprs[0] = Some((vec![0; k], c.at(0, 0)));
    let mut order = vec![0usize];
    let mut i = 0;
    // b(gx) = u_g + b(x) - c(g, x)
    while i < order.len() {
        let x = order[i];
        for (gi, &s) in gens.iter().enumerate() {
            let y = g.mul(s as usize, x);
            if exprs[y].is_none() {
                let (coef, cst) = exprs[x].clone().unwrap();
                let mut coef = coef;
                coef[gi] = (coef[gi] + 1) % m;
                exprs[y] = Some((coef, (cst + m - c.at(s as usize, x)) % m));
                order.push(y);
            }
        }
        i += 1;
    }
    let exprs: Vec<(Vec<u64>, u64)> = exprs.into_iter().map(|e| e.expect("generators generate")).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (gi, &s) in gens.iter().enumerate() {
        for x in 0..n {
            let y = g.mul(s as usize, x);
            // u_g + b(x) - b(y) = c(g, x)
            let mut row = vec![0u64; k];
            row[gi] = 1;
            for j in 0..k {
                row[j] = (row[j] + exprs[x].0[j] + m - exprs[y].0[j]) % m;
            }
            let cst = (exprs[x].1 + m - exprs[y].1) % m;
            rows.push(row);
            rhs.push((c.at(s as usize, x) + m - cst) % m);
        }
    }
    GeneratorSystem { gens, rows, rhs, exprs }
}

fn evaluate_cochain(sys: &GeneratorSystem, u: &[u64], m: u64) -> Vec<u64> {
    sys.exprs
        .iter()
        .map(|(coef, cst)| coef.iter().zip(u).fold(*cst, |acc, (a, b)| (acc + a * b) % m))
        .collect()
}

/// Finds `b` with `db = c`, or certifies that the class is nontrivial.
pub fn coboundary_solve(g: &FinGroup, c: &Cocycle2) -> Result<CoboundaryResult> {
    if c.order != g.order() {
        return Err(Error::domain("cocycle and group orders differ"));
    }
    if !c.is_cocycle(g) {
        return Err(Error::domain("table fails the cocycle identity"));
    }
    let sys = generator_system(g, c);
    let k = sys.gens.len();
    match zmod::solve(&sys.rows, &sys.rhs, k, c.modulus) {
        Some(sol) => {
            let b = evaluate_cochain(&sys, &sol.particular, c.modulus);
            if Cocycle2::coboundary_of(g, c.modulus, &b) != *c {
                return Err(Error::domain("internal: reconstructed coboundary differs"));
            }
            Ok(CoboundaryResult::Solved { cochain: b })
        }
        None => {
            let sylow2 = if g.order().is_multiple_of(2) {
                let s = g.sylow(2);
                let (sg, _) = g.subgroup_group(&s);
                let rc = c.restrict(&s);
                let rs = generator_system(&sg, &rc);
                let solvable = zmod::solve(&rs.rows, &rs.rhs, rs.gens.len(), c.modulus).is_some();
                Some(SylowRestriction { prime: 2, order: s.len(), solvable })
            } else {
                None
            };
            Ok(CoboundaryResult::Nontrivial { generators: sys.gens, sylow2 })
        }
    }
}

/// Brute-force companion of [`coboundary_solve`]: tries every assignment of
/// the generator values (every solution is determined by them). Returns the
/// number of assignments tried and a solution if one exists.
pub fn exhaustive_coboundary_search(g: &FinGroup, c: &Cocycle2, limit: u64) -> Result<(u64, Option<Vec<u64>>)> {
    let sys = generator_system(g, c);
    let k = sys.gens.len() as u32;
    let total = c.modulus.checked_pow(k).unwrap_or(u64::MAX);
    if total > limit {
        return Err(Error::resource(format!("{total} generator assignments")));
    }
    for idx in 0..total {
        let mut u = vec![0u64; k as usize];
        let mut r = idx;
        for slot in u.iter_mut() {
            *slot = r % c.modulus;
            r /= c.modulus;
        }
        let b = evaluate_cochain(&sys, &u, c.modulus);
        if Cocycle2::coboundary_of(g, c.modulus, &b) == *c {
            return Ok((idx + 1, Some(b)));
        }
    }
    Ok((total, None))
}

/// All homomorphisms `A → Z/N`, as value tables.
pub fn linear_characters(g: &FinGroup, modulus: u64) -> Vec<Vec<u64>> {
    let zero = Cocycle2::zero(g.order(), modulus);
    let sys = generator_system(g, &zero);
    let sol = zmod::solve(&sys.rows, &sys.rhs, sys.gens.len(), modulus).expect("homogeneous system");
    let mut chars: Vec<Vec<u64>> =
        sol.enumerate(modulus).iter().map(|u| evaluate_cochain(&sys, u, modulus)).collect();
    chars.sort();
    chars.dedup();
    chars
}

// ---------------------------------------------------------------------------
// Iterated semidirect products

/// Groups `A_1, …, A_n` with actions of `A_j` on `A_i` for `i < j`:
/// `actions[j][i][b][a]` is `^b a`.
#[derive(Clone, Debug)]
pub struct SemidirectData {
    pub groups: Vec<FinGroup>,
    pub actions: Vec<Vec<Vec<Vec<u32>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

#[derive(Clone, Debug)]
pub struct IteratedSemidirect {
    pub data: SemidirectData,
    pub group: FinGroup,
    /// Element index to its tuple `(a_1, …, a_n)`.
    pub tuples: Vec<Vec<u32>>,
}

impl SemidirectData {
    /// Trivial actions everywhere.
    pub fn direct(groups: Vec<FinGroup>) -> Self {
        let n = groups.len();
        let mut actions = vec![Vec::new(); n];
        for j in 0..n {
            for i in 0..n {
                let row = if i < j {
                    (0..groups[j].order()).map(|_| groups[i].all()).collect()
                } else {
                    Vec::new()
                };
                actions[j].push(row);
            }
        }
        SemidirectData { groups, actions }
    }

    fn act(&self, j: usize, i: usize, b: u32, a: u32) -> u32 {
        self.actions[j][i][b as usize][a as usize]
    }

    /// Checks each action is an action by automorphisms and the cocycle
    /// condition `^{^c b}(^c a) = ^{cb} a` where `^{cb} a = ^c(^b a)`.
    pub fn check(&self) -> std::result::Result<(), ActionWitness> {
        let n = self.groups.len();
        for j in 0..n {
            for i in 0..j {
                let (gi, gj) = (&self.groups[i], &self.groups[j]);
                for b in 0..gj.order() as u32 {
                    for a in 0..gi.order() as u32 {
                        for a2 in 0..gi.order() as u32 {
                            let lhs = self.act(j, i, b, gi.mul(a as usize, a2 as usize) as u32);
                            let rhs = gi.mul(self.act(j, i, b, a) as usize, self.act(j, i, b, a2) as usize) as u32;
                            if lhs != rhs {
                                return Err(ActionWitness { i, j, k: j, a, b, c: a2 });
                            }
                        }
                        for b2 in 0..gj.order() as u32 {
                            let lhs = self.act(j, i, gj.mul(b as usize, b2 as usize) as u32, a);
                            let rhs = self.act(j, i, b, self.act(j, i, b2, a));
                            if lhs != rhs {
                                return Err(ActionWitness { i, j, k: j, a, b, c: b2 });
                            }
                        }
                    }
                }
            }
        }
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    for c in 0..self.groups[k].order() as u32 {
                        for b in 0..self.groups[j].order() as u32 {
                            let cb = self.act(k, j, c, b);
                            for a in 0..self.groups[i].order() as u32 {
                                let lhs = self.act(j, i, cb, self.act(k, i, c, a));
                                let rhs = self.act(k, i, c, self.act(j, i, b, a));
                                if lhs != rhs {
                                    return Err(ActionWitness { i, j, k, a, b, c });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `^y a` for `y = (b_{i+1}, …, b_n)`: apply `b_n` first.
    fn act_tail(&self, i: usize, tail: &[u32], a: u32) -> u32 {
        let mut x = a;
        for (off, &b) in tail.iter().enumerate().rev() {
            x = self.act(i + 1 + off, i, b, x);
        }
        x
    }

    fn mul_tuples(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.groups.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let moved = self.act_tail(i, &x[i + 1..], y[i]);
            out.push(self.groups[i].mul(x[i] as usize, moved as usize) as u32);
        }
        out
    }

    pub fn build(self) -> Result<std::result::Result<IteratedSemidirect, ActionWitness>> {
        if let Err(w) = self.check() {
            return Ok(Err(w));
        }
        let sizes: Vec<usize> = self.groups.iter().map(|g| g.order()).collect();
        let total: usize = sizes.iter().product();
        if total > MAX_TABLE_ORDER {
            return Err(Error::resource(format!("semidirect product of order {total}")));
        }
        let tuples: Vec<Vec<u32>> = (0..total)
            .map(|mut idx| {
                let mut t = vec![0u32; sizes.len()];
                for i in (0..sizes.len()).rev() {
                    t[i] = (idx % sizes[i]) as u32;
                    idx /= sizes[i];
                }
                t
            })
            .collect();
        let index: HashMap<Vec<u32>, u32> = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        let group = FinGroup::from_elements(&tuples, &index, |x, y| self.mul_tuples(x, y))?;
        Ok(Ok(IteratedSemidirect { data: self, group, tuples }))
    }
}

impl IteratedSemidirect {
    /// The map `(a_1, …, a_n) ↦ f_1(a_1) ⋯ f_n(a_n)` when it is a
    /// homomorphism, else the first `(i, j, a, b)` violating
    /// `f_i(^b a) = f_j(b) f_i(a) f_j(b)^{-1}`.
    pub fn hom_descends(&self, target: &FinGroup, maps: &[GroupHom]) -> std::result::Result<GroupHom, ActionWitness> {
        let d = &self.data;
        let n = d.groups.len();
        for j in 0..n {
            for i in 0..j {
                for b in 0..d.groups[j].order() as u32 {
                    for a in 0..d.groups[i].order() as u32 {
                        let lhs = maps[i].images[d.act(j, i, b, a) as usize] as usize;
                        let rhs = target.conjugate(maps[j].images[b as usize] as usize, maps[i].images[a as usize] as usize);
                        if lhs != rhs {
                            return Err(ActionWitness { i, j, k: j, a, b, c: 0 });
                        }
                    }
                }
            }
        }
        let images = self
            .tuples
            .iter()
            .map(|t| t.iter().enumerate().fold(0usize, |acc, (i, &a)| target.mul(acc, maps[i].images[a as usize] as usize)) as u32)
            .collect();
        Ok(GroupHom { images })
    }
}

// ---------------------------------------------------------------------------
// Small standard groups

/// Cyclic group Z/n with element k at index k.
pub fn cyclic(n: usize) -> FinGroup {
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    FinGroup::from_table(table, n).expect("cyclic group")
}

/// Symmetric group on `n` points as permutations (identity first).
pub fn symmetric(n: usize) -> (FinGroup, Vec<Vec<u8>>) {
    let id: Vec<u8> = (0..n as u8).collect();
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t = id.clone();
        t.swap(0, 1);
        gens.push(t);
        let cyc: Vec<u8> = (0..n).map(|i| ((i + 1) % n) as u8).collect();
        gens.push(cyc);
    }
    FinGroup::from_generators(id, &gens, |a: &Vec<u8>, b: &Vec<u8>| b.iter().map(|&i| a[i as usize]).collect())
        .expect("small symmetric group")
}

/// Direct product, pairs `(a, b)` at index `a * |H| + b`.
pub fn direct_product(g: &FinGroup, h: &FinGroup) -> FinGroup {
    let (m, n) = (g.order(), h.order());
    let mut table = vec![0u32; m * n * m * n];
    for x in 0..m * n {
        for y in 0..m * n {
            let a = g.mul(x / n, y / n);
            let b = h.mul(x % n, y % n);
            table[x * m * n + y] = (a * n + b) as u32;
        }
    }
    FinGroup::from_table(table, m * n).expect("direct product")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s4_sylows() {
        let (s4, _) = symmetric(4);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.sylow(2).len(), 8);
        assert_eq!(s4.sylow(3).len(), 3);
    }

    #[test]
    fn z4_has_no_complement() {
        let z4 = cyclic(4);
        let res = complement_exists(&z4, &[0, 2]).unwrap();
        assert!(res.complement.is_none());
    }
}
