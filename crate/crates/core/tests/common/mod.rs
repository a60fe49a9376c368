//! Brute-force oracles shared by the integration tests. None of them call
//! the solvers they are used to check.
#![allow(dead_code)]

use std::sync::Arc;

use gradalg::algebra::GradedAlgebra;
use gradalg::cohomology::ExpCocycle;
use gradalg::group::{build_group, FiniteGroup, GroupSpec, Subgroup};
use gradalg::maps::MonomialMap;
use num_rational::Ratio;

pub fn grp(spec: &str) -> Arc<FiniteGroup> {
    build_group(&GroupSpec::parse(spec).unwrap()).unwrap()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order of the Schur multiplier of `C_{n_1} x ... x C_{n_r}`.
pub fn abelian_multiplier_order(factors: &[u64]) -> u64 {
    let mut p = 1;
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            p *= gcd(factors[i], factors[j]);
        }
    }
    p
}

pub fn cyclic_factors(name: &str) -> Vec<u64> {
    name.split('x').map(|c| c.trim_start_matches('C').parse().unwrap()).collect()
}

/// Cocycle identity checked directly on the table.
pub fn satisfies_cocycle_identity(g: &FiniteGroup, h: &[usize], m: u64, s: impl Fn(usize, usize) -> u64) -> bool {
    h.iter().all(|&x| {
        h.iter().all(|&y| h.iter().all(|&z| (s(x, y) + s(g.mul(x, y), z)) % m == (s(x, g.mul(y, z)) + s(y, z)) % m))
    })
}

/// `sigma(x, y) / sigma(y, x)` as an exponent at the cocycle's modulus; on
/// an abelian group a class is trivial iff this vanishes everywhere.
pub fn alternating_form(s: &ExpCocycle, x: usize, y: usize) -> u64 {
    let m = s.modulus();
    (s.get(x, y) + m - s.get(y, x)) % m
}

/// Whether `target` is `(delta xi_j theta_alpha(j))_j` for some `delta` in
/// the normalizer, `xi_j` in `h` and permutation `alpha`, by enumeration.
pub fn lambda_brute(g: &FiniteGroup, h: &Subgroup, theta: &[usize], target: &[usize]) -> bool {
    let k = theta.len();
    if target.len() != k {
        return false;
    }
    let normalizes = |d: usize| h.members().iter().all(|&x| h.contains(g.mul(g.mul(g.inv(d), x), d)));
    let mut perm: Vec<usize> = (0..k).collect();
    let perms = all_perms(&mut perm, 0);
    (0..g.order()).filter(|&d| normalizes(d)).any(|d| {
        perms.iter().any(|a| (0..k).all(|j| h.contains(g.mul(g.mul(g.inv(d), target[j]), g.inv(theta[a[j]])))))
    })
}

fn all_perms(p: &mut Vec<usize>, i: usize) -> Vec<Vec<usize>> {
    if i == p.len() {
        return vec![p.clone()];
    }
    let mut out = Vec::new();
    for j in i..p.len() {
        p.swap(i, j);
        out.extend(all_perms(p, i + 1));
        p.swap(i, j);
    }
    out
}

/// Phase `e / m` as a fraction of a full turn.
fn turn(e: u64, m: u64) -> Ratio<u64> {
    Ratio::new(e % m, m)
}

fn frac(x: Ratio<u64>) -> Ratio<u64> {
    x - Ratio::from_integer(x.to_integer())
}

/// Independent check of a monomial map: injective, degree preserving and
/// multiplicative on every pair of basis elements, with phases compared as
/// rational turns rather than modular exponents.
pub fn monomial_map_is_embedding(map: &MonomialMap, a: &dyn GradedAlgebra, b: &dyn GradedAlgebra) -> bool {
    if map.images.len() != a.dim() {
        return false;
    }
    let mut used = std::collections::BTreeSet::new();
    let mut img = Vec::new();
    for (x, i) in map.images.iter().enumerate() {
        let Some((t, e)) = *i else { return false };
        if t >= b.dim() || !used.insert(t) || b.degree(t) != a.degree(x) {
            return false;
        }
        img.push((t, turn(e, map.modulus)));
    }
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let lhs = a.basis_product(x, y).map(|(c, p)| (img[c].0, frac(turn(p, a.phase_modulus()) + img[c].1)));
            let (tx, px) = img[x];
            let (ty, py) = img[y];
            let rhs = b.basis_product(tx, ty).map(|(c, q)| (c, frac(turn(q, b.phase_modulus()) + px + py)));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Associativity of basis triple `(x, y, z)` using only structure constants.
pub fn associative_on(a: &dyn GradedAlgebra, x: usize, y: usize, z: usize) -> bool {
    let m = a.phase_modulus();
    let left = a.basis_product(x, y).and_then(|(xy, p)| a.basis_product(xy, z).map(|(r, q)| (r, (p + q) % m)));
    let right = a.basis_product(y, z).and_then(|(yz, p)| a.basis_product(x, yz).map(|(r, q)| (r, (p + q) % m)));
    left == right
}
