//! Linear systems over Z/N, solved prime-power by prime-power with a
//! Smith-style diagonalisation and glued back by the Chinese remainder theorem.

use num_integer::Integer;

/// Solution set of `A x = b` over Z/N: one particular solution plus
/// generators of the homogeneous solutions, each with its additive order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSolution {
    pub particular: Vec<u64>,
    pub kernel: Vec<(Vec<u64>, u64)>,
}

impl ModSolution {
    /// Number of solutions.
    pub fn count(&self) -> u64 {
        self.kernel.iter().map(|(_, o)| *o).product()
    }

    /// Every solution, in a fixed order. Callers keep the count small.
    pub fn enumerate(&self, modulus: u64) -> Vec<Vec<u64>> {
        let mut out = vec![self.particular.clone()];
        for (g, ord) in &self.kernel {
            let mut next = Vec::with_capacity(out.len() * *ord as usize);
            for base in &out {
                for t in 0..*ord {
                    next.push(base.iter().zip(g).map(|(x, y)| (x + t * y) % modulus).collect());
                }
            }
            out = next;
        }
        out
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m as i128) as u64
}

fn valuation(mut x: u64, q: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    while x.is_multiple_of(q) && v < e {
        x /= q;
        v += 1;
    }
    v
}

/// Solves over Z/q^e. Rows of `a` all have length `cols`.
fn solve_prime_power(a: &[Vec<u64>], b: &[u64], cols: usize, q: u64, e: u32) -> Option<ModSolution> {
    let m = q.pow(e);
    let rows = a.len();
    let mut mat: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % m).collect()).collect();
    let mut rhs: Vec<u64> = b.iter().map(|x| x % m).collect();
    // Column transform: x = V y.
    let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
    let mut diag = Vec::new();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % m as u128) as u64;
    for k in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in mat.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                let val = valuation(x, q, e);
                if val < e && best.is_none_or(|(bv, _, _)| val < bv) {
                    best = Some((val, i, j));
                    if val == 0 {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bv, _, _)| bv == 0) {
                break;
            }
        }
        let Some((val, pi, pj)) = best else { break };
        mat.swap(k, pi);
        rhs.swap(k, pi);
        for row in mat.iter_mut() {
            row.swap(k, pj);
        }
        for row in v.iter_mut() {
            row.swap(k, pj);
        }
        let qv = q.pow(val);
        let unit_inv = inv_mod(mat[k][k] / qv, m);
        for i in k + 1..rows {
            if mat[i][k] == 0 {
                continue;
            }
            let f = mulm(mat[i][k] / qv, unit_inv);
            for j in k..cols {
                let sub = mulm(f, mat[k][j]);
                mat[i][j] = (mat[i][j] + m - sub) % m;
            }
            rhs[i] = (rhs[i] + m - mulm(f, rhs[k])) % m;
        }
        for j in k + 1..cols {
            if mat[k][j] == 0 {
                continue;
            }
            let f = mulm(mat[k][j] / qv, unit_inv);
            for i in k..rows {
                let sub = mulm(f, mat[i][k]);
                mat[i][j] = (mat[i][j] + m - sub) % m;
            }
            for row in v.iter_mut() {
                let sub = mulm(f, row[k]);
                row[j] = (row[j] + m - sub) % m;
            }
        }
        diag.push((val, mat[k][k] / qv));
    }
    let rank = diag.len();
    if rhs[rank..].iter().any(|&x| x % m != 0) {
        return None;
    }
    let mut y = vec![0u64; cols];
    let mut kernel_y: Vec<(Vec<u64>, u64)> = Vec::new();
    for (k, &(val, unit)) in diag.iter().enumerate() {
        if valuation(rhs[k], q, e) < val {
            return None;
        }
        let qv = q.pow(val);
        y[k] = mulm(rhs[k] / qv, inv_mod(unit, m)) % (m / qv);
        if val > 0 {
            let mut g = vec![0u64; cols];
            g[k] = m / qv;
            kernel_y.push((g, qv));
        }
    }
    for k in rank..cols {
        let mut g = vec![0u64; cols];
        g[k] = 1;
        kernel_y.push((g, m));
    }
    let apply = |yy: &[u64]| -> Vec<u64> {
        (0..cols).map(|i| (0..cols).fold(0u64, |acc, j| (acc + mulm(v[i][j], yy[j])) % m)).collect()
    };
    Some(ModSolution {
        particular: apply(&y),
        kernel: kernel_y.iter().map(|(g, o)| (apply(g), *o)).collect(),
    })
}

/// Solves `A x = b` over Z/modulus, or `None` when inconsistent.
pub fn solve(a: &[Vec<u64>], b: &[u64], cols: usize, modulus: u64) -> Option<ModSolution> {
    assert!(modulus >= 1);
    if modulus == 1 {
        return Some(ModSolution { particular: vec![0; cols], kernel: Vec::new() });
    }
    let parts = factorize(modulus);
    let mut particular = vec![0u64; cols];
    let mut kernel = Vec::new();
    for &(q, e) in &parts {
        let qe = q.pow(e);
        let sol = solve_prime_power(a, b, cols, q, e)?;
        // CRT idempotent for this component.
        let other = modulus / qe;
        let idem = ((other as u128 * inv_mod(other % qe, qe) as u128) % modulus as u128) as u64;
        let lift = |x: u64| ((x as u128 * idem as u128) % modulus as u128) as u64;
        for (slot, x) in particular.iter_mut().zip(&sol.particular) {
            *slot = (*slot + lift(*x)) % modulus;
        }
        for (g, o) in sol.kernel {
            kernel.push((g.into_iter().map(lift).collect(), o));
        }
    }
    Some(ModSolution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inconsistent_over_z4() {
        // 2x = 1 has no solution mod 4.
        assert!(solve(&[vec![2]], &[1], 1, 4).is_none());
        let s = solve(&[vec![2]], &[2], 1, 4).unwrap();
        assert_eq!(s.count(), 2);
    }

    #[test]
    fn crt_kernel_count() {
        // 6x = 0 mod 12 has 6 solutions.
        let s = solve(&[vec![6]], &[0], 1, 12).unwrap();
        assert_eq!(s.count(), 6);
        for x in s.enumerate(12) {
            assert_eq!(6 * x[0] % 12, 0);
        }
    }
}
