//! Linear algebra over `Z/m` by diagonalization.
//!
//! `Z/m` is not a field for composite `m`, so systems are brought to a
//! diagonal form `U A V = D` with unimodular row and column transforms.
//! Row operations are replayed on caller-supplied augmented columns; the
//! column transform `V` is kept explicitly.

use num_integer::Integer;

/// Result of diagonalizing an `rows x cols` matrix modulo `m`.
#[derive(Clone, Debug)]
pub struct Diagonal {
    pub modulus: i64,
    pub cols: usize,
    /// Nonzero diagonal entries `d_0..d_{rank-1}` (reduced mod `m`).
    pub diag: Vec<i64>,
    /// Column transform, `v[i][j]` is row `i`, column `j`.
    pub v: Vec<Vec<i64>>,
    /// Augmented columns after the row transform, one `Vec` per original
    /// augmented column, indexed by row.
    pub aug: Vec<Vec<i64>>,
}

#[inline]
fn md(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

fn mod_inv(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    md(e.x, m)
}

/// Diagonalizes `a` (rows of length `cols`) modulo `m`. `aug` holds extra
/// columns (each of length `a.len()`) that undergo the same row operations.
pub fn diagonalize(mut a: Vec<Vec<i64>>, cols: usize, m: i64, aug: Vec<Vec<i64>>) -> Diagonal {
    assert!(m >= 1);
    let rows = a.len();
    for r in a.iter_mut() {
        debug_assert_eq!(r.len(), cols);
        for x in r.iter_mut() {
            *x = md(*x, m);
        }
    }
    // append augmented columns to the row storage
    let naug = aug.len();
    for (c, col) in aug.iter().enumerate() {
        assert_eq!(col.len(), rows, "augmented column {c} has wrong length");
    }
    for (i, r) in a.iter_mut().enumerate() {
        r.extend(aug.iter().map(|col| md(col[i], m)));
    }
    let width = cols + naug;
    let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| (i == j) as i64).collect()).collect();
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        // pivot: entry with the smallest gcd against m
        let mut best: Option<(i64, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row[t..cols].iter().enumerate() {
                if x != 0 {
                    let g = x.gcd(&m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j + t));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            for r in v.iter_mut() {
                r.swap(t, pj);
            }
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..rows {
                let q = a[i][t];
                if q == 0 {
                    continue;
                }
                let p = a[t][t];
                let g = p.gcd(&m);
                if q % g == 0 {
                    let c = md((q / g) * mod_inv((p / g) % (m / g), m / g), m);
                    let (top, rest) = a.split_at_mut(i);
                    let (pivot_row, row) = (&top[t], &mut rest[0]);
                    for k in t..width {
                        row[k] = md(row[k] - c * pivot_row[k], m);
                    }
                } else {
                    let e = p.extended_gcd(&q);
                    let (s, u, d) = (e.x, e.y, e.gcd);
                    let (pq, qd) = (p / d, q / d);
                    let (top, rest) = a.split_at_mut(i);
                    let (pivot_row, row) = (&mut top[t], &mut rest[0]);
                    for k in t..width {
                        let (x, y) = (pivot_row[k], row[k]);
                        pivot_row[k] = md(s * x + u * y, m);
                        row[k] = md(-qd * x + pq * y, m);
                    }
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..cols {
                let q = a[t][j];
                if q == 0 {
                    continue;
                }
                let p = a[t][t];
                let g = p.gcd(&m);
                if q % g == 0 {
                    let c = md((q / g) * mod_inv((p / g) % (m / g), m / g), m);
                    for r in a[t..].iter_mut() {
                        r[j] = md(r[j] - c * r[t], m);
                    }
                    for r in v.iter_mut() {
                        r[j] = md(r[j] - c * r[t], m);
                    }
                } else {
                    let e = p.extended_gcd(&q);
                    let (s, u, d) = (e.x, e.y, e.gcd);
                    let (pq, qd) = (p / d, q / d);
                    let apply = |r: &mut Vec<i64>| {
                        let (x, y) = (r[t], r[j]);
                        r[t] = md(s * x + u * y, m);
                        r[j] = md(-qd * x + pq * y, m);
                    };
                    a[t..].iter_mut().for_each(apply);
                    v.iter_mut().for_each(apply);
                    dirty = true;
                }
            }
            if !dirty || (t + 1..rows).all(|i| a[i][t] == 0) {
                break;
            }
        }
        diag.push(a[t][t]);
    }
    let aug = (0..naug).map(|c| a.iter().map(|r| r[cols + c]).collect()).collect();
    Diagonal { modulus: m, cols, diag, v, aug }
}

impl Diagonal {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Solves `A x = b` for the augmented column `which`.
    pub fn solve(&self, which: usize) -> Option<Vec<i64>> {
        let m = self.modulus;
        let b = &self.aug[which];
        let r = self.rank();
        if b[r..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut y = vec![0i64; self.cols];
        for (i, &d) in self.diag.iter().enumerate() {
            let g = d.gcd(&m);
            if b[i] % g != 0 {
                return None;
            }
            let mg = m / g;
            y[i] = md((b[i] / g) * mod_inv((d / g) % mg, mg), mg);
        }
        Some(self.apply_v(&y))
    }

    pub fn apply_v(&self, y: &[i64]) -> Vec<i64> {
        let m = self.modulus;
        (0..self.cols).map(|i| md(self.v[i].iter().zip(y).map(|(a, b)| a * b).sum::<i64>(), m)).collect()
    }

    /// Generators of the solution set of `A x = 0`.
    pub fn kernel(&self) -> Vec<Vec<i64>> {
        let m = self.modulus;
        let mut gens = Vec::new();
        for i in 0..self.cols {
            let scale = match self.diag.get(i) {
                Some(&d) => m / d.gcd(&m),
                None => 1,
            };
            if scale % m == 0 {
                continue;
            }
            let col: Vec<i64> = (0..self.cols).map(|r| md(self.v[r][i] * scale, m)).collect();
            gens.push(col);
        }
        gens
    }
}

/// Splits cyclic orders into invariant factors `d_1 | d_2 | ...` (factors
/// equal to 1 dropped). Each returned entry lists, for every input, the
/// multiplier to apply to that input's generator.
pub fn invariant_factor_split(orders: &[u64]) -> Vec<(u64, Vec<u64>)> {
    use std::collections::BTreeMap;
    // prime -> list of (prime power, generator index, multiplier)
    let mut by_prime: BTreeMap<u64, Vec<(u64, usize, u64)>> = BTreeMap::new();
    for (idx, &o) in orders.iter().enumerate() {
        let mut rest = o;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                let mut pk = 1;
                while rest % p == 0 {
                    rest /= p;
                    pk *= p;
                }
                by_prime.entry(p).or_default().push((pk, idx, o / pk));
            }
            p += 1;
        }
    }
    let depth = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    for v in by_prime.values_mut() {
        v.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    }
    let mut out: Vec<(u64, Vec<u64>)> = (0..depth)
        .map(|t| {
            let mut factor = 1;
            let mut mult = vec![0u64; orders.len()];
            for v in by_prime.values() {
                if let Some(&(pk, idx, c)) = v.get(t) {
                    factor *= pk;
                    mult[idx] += c;
                }
            }
            (factor, mult)
        })
        .collect();
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_vec(a: &[Vec<i64>], x: &[i64], m: i64) -> Vec<i64> {
        a.iter().map(|r| md(r.iter().zip(x).map(|(p, q)| p * q).sum(), m)).collect()
    }

    #[test]
    fn solve_and_kernel_mod_composite() {
        let a = vec![vec![2, 4, 6], vec![3, 0, 9], vec![0, 6, 0]];
        let m = 12;
        for b in [vec![2, 3, 6], vec![1, 0, 0], vec![0, 0, 0]] {
            let d = diagonalize(a.clone(), 3, m, vec![b.clone()]);
            let brute = (0..m * m * m).find(|&n| {
                let x = [n % m, n / m % m, n / (m * m)];
                mat_vec(&a, &x, m) == b.iter().map(|&v| md(v, m)).collect::<Vec<_>>()
            });
            match d.solve(0) {
                Some(x) => assert_eq!(mat_vec(&a, &x, m), b),
                None => assert!(brute.is_none(), "missed solution for {b:?}"),
            }
            assert_eq!(d.solve(0).is_some(), brute.is_some());
            for k in d.kernel() {
                assert!(mat_vec(&a, &k, m).iter().all(|&v| v == 0));
            }
        }
    }

    #[test]
    fn kernel_generates_full_solution_set() {
        // count kernel elements generated vs brute force
        let a = vec![vec![2, 2], vec![0, 4]];
        let m = 8;
        let d = diagonalize(a.clone(), 2, m, vec![]);
        let gens = d.kernel();
        let mut span = std::collections::HashSet::new();
        span.insert(vec![0i64, 0]);
        loop {
            let before = span.len();
            let cur: Vec<_> = span.iter().cloned().collect();
            for x in &cur {
                for g in &gens {
                    span.insert(vec![md(x[0] + g[0], m), md(x[1] + g[1], m)]);
                }
            }
            if span.len() == before {
                break;
            }
        }
        let brute = (0..m * m).filter(|n| mat_vec(&a, &[n % m, n / m], m).iter().all(|&v| v == 0)).count();
        assert_eq!(span.len(), brute);
    }

    #[test]
    fn invariant_factors_combine_coprime_parts() {
        let split = invariant_factor_split(&[2, 3]);
        assert_eq!(split.iter().map(|s| s.0).collect::<Vec<_>>(), vec![6]);
        let split = invariant_factor_split(&[4, 2, 1]);
        assert_eq!(split.iter().map(|s| s.0).collect::<Vec<_>>(), vec![2, 4]);
        assert!(invariant_factor_split(&[1, 1]).is_empty());
    }
}
