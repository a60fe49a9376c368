//! Second cohomology with coefficients in roots of unity (trivial action).
//!
//! A 2-cocycle is stored by exponents: `r(x, y)` in `Z/M` stands for the
//! value `zeta_M^r(x, y)`. Two cocycles valued in `mu_M` on a group `H` are
//! cohomologous over an algebraically closed field of characteristic zero
//! iff they are cohomologous with cochains valued in `mu_(M * exp(H))`: if
//! `s - r = d f` then `f^M` is a homomorphism, so `f^M` takes values in
//! `mu_exp(H)`. Every equivalence and extension question is therefore a
//! linear system over `Z/(M * exp(H))`, solved by [`crate::zmod`].

use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::zmod::{diagonalize, invariant_factor_split};

/// Cocycle on a subgroup `H`, `exps[i * |H| + j] = r(h_i, h_j)` where `h_i`
/// are the sorted members of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpCocycle {
    group: Arc<FiniteGroup>,
    subgroup: Subgroup,
    modulus: u64,
    exps: Vec<u64>,
}

/// A function `H -> Z/M'` (exponents of `mu_M'`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpFunction {
    group: Arc<FiniteGroup>,
    subgroup: Subgroup,
    modulus: u64,
    values: Vec<u64>,
}

/// `H` with products expressed in member positions.
struct PosTable {
    n: usize,
    mul: Vec<usize>,
}

impl PosTable {
    fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let m = h.members();
        let n = m.len();
        let mut mul = Vec::with_capacity(n * n);
        for &a in m {
            for &b in m {
                mul.push(h.position(g.mul(a, b)).expect("subgroup closed"));
            }
        }
        Self { n, mul }
    }

    #[inline]
    fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j]
    }
}

fn lift_factor(from: u64, to: u64) -> Result<u64> {
    if from == 0 || !to.is_multiple_of(from) {
        return Err(Error::Validation(format!("modulus {from} does not divide {to}")));
    }
    Ok(to / from)
}

impl ExpCocycle {
    /// Builds a cocycle from a `|H| x |H|` exponent matrix. The cocycle
    /// identity is not enforced here; see [`is_cocycle`].
    pub fn new(group: Arc<FiniteGroup>, subgroup: Subgroup, modulus: u64, exps: Vec<Vec<u64>>) -> Result<Self> {
        subgroup.check_in(&group)?;
        if modulus == 0 {
            return Err(Error::Validation("modulus must be positive".into()));
        }
        let n = subgroup.len();
        if exps.len() != n || exps.iter().any(|r| r.len() != n) {
            return Err(Error::Validation(format!("exponent matrix must be {n}x{n}")));
        }
        let exps = exps.into_iter().flatten().map(|x| x % modulus).collect();
        Ok(Self { group, subgroup, modulus, exps })
    }

    pub fn trivial(group: Arc<FiniteGroup>, subgroup: Subgroup, modulus: u64) -> Self {
        let n = subgroup.len();
        Self { group, subgroup, modulus: modulus.max(1), exps: vec![0; n * n] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent of `sigma(x, y)` for group elements `x, y` of the domain.
    pub fn get(&self, x: usize, y: usize) -> u64 {
        let n = self.subgroup.len();
        let i = self.subgroup.position(x).expect("element outside cocycle domain");
        let j = self.subgroup.position(y).expect("element outside cocycle domain");
        self.exps[i * n + j]
    }

    #[inline]
    pub(crate) fn get_pos(&self, i: usize, j: usize) -> u64 {
        self.exps[i * self.subgroup.len() + j]
    }

    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let n = self.subgroup.len().max(1);
        self.exps.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn is_trivial_matrix(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    /// Same values at modulus `to` (a multiple of the current modulus).
    pub fn lift(&self, to: u64) -> Result<Self> {
        let f = lift_factor(self.modulus, to)?;
        Ok(Self { modulus: to, exps: self.exps.iter().map(|x| x * f).collect(), ..self.clone() })
    }

    /// `sigma^k`
    pub fn scale(&self, k: i64) -> Self {
        let m = self.modulus as i64;
        let exps = self.exps.iter().map(|&x| (x as i64 * k.rem_euclid(m)).rem_euclid(m) as u64).collect();
        Self { exps, ..self.clone() }
    }

    /// Pointwise product `sigma * rho` (moduli harmonized to their lcm).
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    /// Pointwise quotient `sigma / rho`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        if self.subgroup != other.subgroup || *self.group != *other.group {
            return Err(Error::DomainMismatch);
        }
        let m = self.modulus.lcm(&other.modulus);
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        let exps = a
            .exps
            .iter()
            .zip(&b.exps)
            .map(|(&x, &y)| (x as i64 + sign * y as i64).rem_euclid(m as i64) as u64)
            .collect();
        Ok(Self { modulus: m, exps, ..a })
    }

    fn require_cocycle(&self) -> Result<()> {
        if is_cocycle(self) {
            Ok(())
        } else {
            Err(Error::NotACocycle(format!("cocycle identity fails on {}", self.group.name())))
        }
    }
}

impl ExpFunction {
    pub fn new(group: Arc<FiniteGroup>, subgroup: Subgroup, modulus: u64, values: Vec<u64>) -> Result<Self> {
        subgroup.check_in(&group)?;
        if values.len() != subgroup.len() || modulus == 0 {
            return Err(Error::Validation("function values must cover the subgroup".into()));
        }
        let values = values.into_iter().map(|v| v % modulus).collect();
        Ok(Self { group, subgroup, modulus, values })
    }

    pub fn zero(group: Arc<FiniteGroup>, subgroup: Subgroup, modulus: u64) -> Self {
        let n = subgroup.len();
        Self { group, subgroup, modulus, values: vec![0; n] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Exponent of `f(x)`.
    pub fn get(&self, x: usize) -> u64 {
        self.values[self.subgroup.position(x).expect("element outside function domain")]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Checks `r(x,y) + r(xy,z) = r(y,z) + r(x,yz)` on all triples.
pub fn is_cocycle(sigma: &ExpCocycle) -> bool {
    let t = PosTable::new(&sigma.group, &sigma.subgroup);
    let m = sigma.modulus;
    let n = t.n;
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = t.mul(a, b);
            (0..n).all(|c| {
                (sigma.get_pos(a, b) + sigma.get_pos(ab, c)) % m
                    == (sigma.get_pos(b, c) + sigma.get_pos(a, t.mul(b, c))) % m
            })
        })
    })
}

/// `r(x, y) = f(x) + f(y) - f(xy)`.
pub fn coboundary_from(f: &ExpFunction) -> ExpCocycle {
    let t = PosTable::new(&f.group, &f.subgroup);
    let m = f.modulus as i64;
    let mut exps = Vec::with_capacity(t.n * t.n);
    for a in 0..t.n {
        for b in 0..t.n {
            let v = f.values[a] as i64 + f.values[b] as i64 - f.values[t.mul(a, b)] as i64;
            exps.push(v.rem_euclid(m) as u64);
        }
    }
    ExpCocycle { group: f.group.clone(), subgroup: f.subgroup.clone(), modulus: f.modulus, exps }
}

/// Subtracts the constant coboundary `f = r(e,e)`; returns the normalized
/// cocycle and the adjusting function.
pub fn normalize(sigma: &ExpCocycle) -> Result<(ExpCocycle, ExpFunction)> {
    sigma.require_cocycle()?;
    let c = sigma.get_pos(0, 0);
    let n = sigma.subgroup.len();
    let f = ExpFunction {
        group: sigma.group.clone(),
        subgroup: sigma.subgroup.clone(),
        modulus: sigma.modulus,
        values: vec![c; n],
    };
    let m = sigma.modulus;
    let exps = sigma.exps.iter().map(|&x| (x + m - c) % m).collect();
    Ok((ExpCocycle { exps, ..sigma.clone() }, f))
}

/// Restriction to a subgroup of the cocycle's domain.
pub fn restrict(sigma: &ExpCocycle, h: &Subgroup) -> Result<ExpCocycle> {
    h.check_in(&sigma.group)?;
    if !h.is_subset_of(&sigma.subgroup) {
        return Err(Error::NotASubgroup("restriction target is not inside the cocycle domain".into()));
    }
    let pos: Vec<usize> = h.members().iter().map(|&x| sigma.subgroup.position(x).unwrap()).collect();
    let exps = pos.iter().flat_map(|&i| pos.iter().map(move |&j| sigma.get_pos(i, j))).collect();
    Ok(ExpCocycle { group: sigma.group.clone(), subgroup: h.clone(), modulus: sigma.modulus, exps })
}

/// `rho(x a x^-1, x b x^-1) = sigma(a, b)` on the conjugate subgroup.
pub fn conjugate_class(sigma: &ExpCocycle, x: usize) -> Result<ExpCocycle> {
    sigma.require_cocycle()?;
    let g = &sigma.group;
    if x >= g.order() {
        return Err(Error::IndexOutOfRange(format!("element {x}")));
    }
    let k = sigma.subgroup.conjugate(g, x);
    let n = k.len();
    let mut exps = vec![0; n * n];
    for (i, &a) in sigma.subgroup.members().iter().enumerate() {
        let ca = k.position(g.conj(x, a)).unwrap();
        for (j, &b) in sigma.subgroup.members().iter().enumerate() {
            let cb = k.position(g.conj(x, b)).unwrap();
            exps[ca * n + cb] = sigma.get_pos(i, j);
        }
    }
    Ok(ExpCocycle { group: g.clone(), subgroup: k, modulus: sigma.modulus, exps })
}

/// Working modulus for equivalence questions on `h` at base modulus `m`.
pub fn working_modulus(g: &FiniteGroup, h: &Subgroup, m: u64) -> u64 {
    m * h.exponent(g) as u64
}

/// Finds `f` with `coboundary_from(f) = sigma - rho` at the working modulus.
pub fn classes_equivalent(sigma: &ExpCocycle, rho: &ExpCocycle) -> Result<Option<ExpFunction>> {
    classes_equivalent_at(sigma, rho, None)
}

/// As [`classes_equivalent`], with an explicit working modulus (must be a
/// multiple of both cocycle moduli).
pub fn classes_equivalent_at(
    sigma: &ExpCocycle,
    rho: &ExpCocycle,
    modulus: Option<u64>,
) -> Result<Option<ExpFunction>> {
    if sigma.subgroup != rho.subgroup || *sigma.group != *rho.group {
        return Err(Error::DomainMismatch);
    }
    let base = sigma.modulus.lcm(&rho.modulus);
    let w = match modulus {
        Some(w) => {
            lift_factor(base, w)?;
            w
        }
        None => working_modulus(&sigma.group, &sigma.subgroup, base),
    };
    let diff = sigma.lift(w)?.sub(&rho.lift(w)?)?;
    let t = PosTable::new(&sigma.group, &sigma.subgroup);
    let n = t.n;
    let mk = |values: Vec<u64>| ExpFunction {
        group: sigma.group.clone(),
        subgroup: sigma.subgroup.clone(),
        modulus: w,
        values,
    };
    if n == 1 {
        return Ok(Some(mk(vec![diff.exps[0]])));
    }
    let rows: Vec<Vec<i64>> = (0..n * n)
        .map(|idx| {
            let (a, b) = (idx / n, idx % n);
            let mut row = vec![0i64; n];
            row[a] += 1;
            row[b] += 1;
            row[t.mul(a, b)] -= 1;
            row
        })
        .collect();
    let rhs = diff.exps.iter().map(|&x| x as i64).collect();
    let d = diagonalize(rows, n, w as i64, vec![rhs]);
    Ok(d.solve(0).map(|x| mk(x.into_iter().map(|v| v as u64).collect())))
}

/// Least `k >= 1` with `sigma^k` cohomologous to the trivial cocycle.
pub fn class_order(sigma: &ExpCocycle) -> Result<u64> {
    sigma.require_cocycle()?;
    let w = working_modulus(&sigma.group, &sigma.subgroup, sigma.modulus);
    let trivial = ExpCocycle::trivial(sigma.group.clone(), sigma.subgroup.clone(), sigma.modulus);
    for k in 1..=w {
        if classes_equivalent(&sigma.scale(k as i64), &trivial)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("sigma^W is the trivial cocycle")
}

/// A cocycle `tau` at modulus `lambda * M` whose `lambda`-th power equals
/// `sigma` entrywise.
pub fn root_representative(sigma: &ExpCocycle, lambda: u64) -> Result<ExpCocycle> {
    sigma.require_cocycle()?;
    if lambda <= 1 {
        return Ok(sigma.clone());
    }
    let m = sigma.modulus;
    let t = PosTable::new(&sigma.group, &sigma.subgroup);
    let n = t.n;
    // tau = r + M s with s in Z/lambda; the cocycle defect of r is M * k
    // (as integers), so s must satisfy defect(s) = -k (mod lambda).
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut seen = HashSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, bc) = (t.mul(a, b), t.mul(b, c));
                let defect = sigma.get_pos(a, b) as i64 + sigma.get_pos(ab, c) as i64
                    - sigma.get_pos(b, c) as i64
                    - sigma.get_pos(a, bc) as i64;
                debug_assert_eq!(defect % m as i64, 0);
                let k = defect / m as i64;
                let mut row = vec![0i64; n * n];
                row[a * n + b] += 1;
                row[ab * n + c] += 1;
                row[b * n + c] -= 1;
                row[a * n + bc] -= 1;
                let r = -k;
                if row.iter().all(|&x| x == 0) && r.rem_euclid(lambda as i64) == 0 {
                    continue;
                }
                if seen.insert((row.clone(), r.rem_euclid(lambda as i64))) {
                    rows.push(row);
                    rhs.push(r);
                }
            }
        }
    }
    let d = diagonalize(rows, n * n, lambda as i64, vec![rhs]);
    let s = d.solve(0).ok_or(Error::NoExactRoot(lambda))?;
    let big = lambda * m;
    let exps = sigma.exps.iter().zip(&s).map(|(&r, &s)| (r + m * s as u64) % big).collect();
    Ok(ExpCocycle { modulus: big, exps, ..sigma.clone() })
}

/// `(H1, sigma1) <= (H2, sigma2)`: `H1 <= H2` and `[sigma1] = [sigma2|H1]`.
pub fn pair_leq(sigma1: &ExpCocycle, sigma2: &ExpCocycle) -> Result<Option<ExpFunction>> {
    if *sigma1.group != *sigma2.group {
        return Err(Error::DomainMismatch);
    }
    if !sigma1.subgroup.is_subset_of(&sigma2.subgroup) {
        return Ok(None);
    }
    classes_equivalent(sigma1, &restrict(sigma2, &sigma1.subgroup)?)
}

/// Structure of `H^2(H, F*)` for a subgroup `H` (or the full group).
#[derive(Clone, Debug)]
pub struct H2Description {
    pub group: Arc<FiniteGroup>,
    pub subgroup: Subgroup,
    pub base_modulus: u64,
    pub working_modulus: u64,
    /// `d_1 | d_2 | ...`, each at least 2.
    pub invariant_factors: Vec<u64>,
    /// One normalized cocycle per invariant factor, of that order.
    pub representatives: Vec<ExpCocycle>,
    pub order: u64,
}

impl H2Description {
    /// Every class, as `prod rep_i^(c_i)` with `0 <= c_i < d_i`, in
    /// lexicographic order of the exponent tuples.
    pub fn all_classes(&self) -> Vec<ExpCocycle> {
        let mut out = vec![ExpCocycle::trivial(self.group.clone(), self.subgroup.clone(), self.base_modulus)];
        for (rep, &d) in self.representatives.iter().zip(&self.invariant_factors) {
            out = out
                .iter()
                .flat_map(|base| (0..d).map(move |c| base.add(&rep.scale(c as i64)).expect("same domain")))
                .collect();
        }
        out
    }
}

pub fn h2_over_fstar(g: &Arc<FiniteGroup>) -> Result<H2Description> {
    h2_of_subgroup(g, &Subgroup::full(g), DEFAULT_ORDER_CAP)
}

/// `H^2(H, F*)` for a subgroup `H` of `g`, refusing `|H| > cap`.
pub fn h2_of_subgroup(g: &Arc<FiniteGroup>, h: &Subgroup, cap: usize) -> Result<H2Description> {
    h.check_in(g)?;
    let n = h.len();
    if n > cap {
        return Err(Error::OrderCapExceeded { order: n, cap });
    }
    let m = n as u64;
    let e = h.exponent(g) as u64;
    let l = m * e;
    let mut desc = H2Description {
        group: g.clone(),
        subgroup: h.clone(),
        base_modulus: m,
        working_modulus: l,
        invariant_factors: vec![],
        representatives: vec![],
        order: 1,
    };
    if n == 1 {
        return Ok(desc);
    }
    let t = PosTable::new(g, h);
    let k = n - 1;
    // normalized cochains: unknown for each pair of non-neutral positions
    let var = |a: usize, b: usize| (a - 1) * k + (b - 1);

    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for a in 1..n {
        for b in 1..n {
            let ab = t.mul(a, b);
            for c in 1..n {
                let bc = t.mul(b, c);
                let mut row = vec![0i64; k * k];
                row[var(a, b)] += 1;
                if ab != 0 {
                    row[var(ab, c)] += 1;
                }
                row[var(b, c)] -= 1;
                if bc != 0 {
                    row[var(a, bc)] -= 1;
                }
                if row.iter().any(|x| x.rem_euclid(m as i64) != 0) && seen.insert(row.clone()) {
                    rows.push(row);
                }
            }
        }
    }
    let z = diagonalize(rows, k * k, m as i64, vec![]).kernel();

    // normalized coboundaries at modulus L, with e*z riding along
    let b_rows: Vec<Vec<i64>> = (0..k * k)
        .map(|idx| {
            let (a, b) = (idx / k + 1, idx % k + 1);
            let mut row = vec![0i64; k];
            row[a - 1] += 1;
            row[b - 1] += 1;
            let ab = t.mul(a, b);
            if ab != 0 {
                row[ab - 1] -= 1;
            }
            row
        })
        .collect();
    let aug: Vec<Vec<i64>> = z.iter().map(|zi| zi.iter().map(|&x| x * e as i64).collect()).collect();
    let bd = diagonalize(b_rows, k, l as i64, aug);
    let li = l as i64;
    let scales: Vec<i64> = (0..k * k)
        .map(|row| match bd.diag.get(row) {
            Some(&d) => li / d.gcd(&li),
            None => 1,
        })
        .collect();
    let quotient_rows: Vec<Vec<i64>> = (0..k * k)
        .map(|row| bd.aug.iter().map(|col| (col[row] * scales[row]).rem_euclid(li)).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    if quotient_rows.is_empty() || z.is_empty() {
        return Ok(desc);
    }
    let qd = diagonalize(quotient_rows, z.len(), li, vec![]);
    let mut orders = Vec::new();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for (i, &d) in qd.diag.iter().enumerate() {
        let o = (li / d.gcd(&li)) as u64;
        if o <= 1 {
            continue;
        }
        let mut cocycle = vec![0i64; k * k];
        for (j, zj) in z.iter().enumerate() {
            let c = qd.v[j][i];
            for (acc, &x) in cocycle.iter_mut().zip(zj) {
                *acc = (*acc + c * x).rem_euclid(m as i64);
            }
        }
        orders.push(o);
        gens.push(cocycle);
    }
    let expand = |v: &[i64]| -> ExpCocycle {
        let mut exps = vec![0u64; n * n];
        for a in 1..n {
            for b in 1..n {
                exps[a * n + b] = v[var(a, b)] as u64;
            }
        }
        ExpCocycle { group: g.clone(), subgroup: h.clone(), modulus: m, exps }
    };
    for (factor, mult) in invariant_factor_split(&orders) {
        let mut v = vec![0i64; k * k];
        for (gen, &c) in gens.iter().zip(&mult) {
            for (acc, &x) in v.iter_mut().zip(gen) {
                *acc = (*acc + c as i64 * x).rem_euclid(m as i64);
            }
        }
        desc.invariant_factors.push(factor);
        desc.representatives.push(expand(&v));
        desc.order *= factor;
    }
    Ok(desc)
}

/// Finds a cocycle on `target` whose restriction to the domain of `sigma`
/// is cohomologous to `sigma`, or `None` if no such cocycle exists.
pub fn extend_class(sigma: &ExpCocycle, target: &Subgroup) -> Result<Option<ExpCocycle>> {
    let h2 = h2_of_subgroup(&sigma.group, target, usize::MAX)?;
    extend_class_using(sigma, &h2, None)
}

/// [`extend_class`] against a precomputed `H^2(target)`, optionally at a
/// caller-chosen working modulus.
///
/// Every cocycle on the target is cohomologous to `prod rho_i^(c_i)` for the
/// class representatives `rho_i`, and coboundaries on the target restrict to
/// coboundaries on `H`, so the unknowns are the integers `c_i` together with
/// a cochain `F` on `H`:
/// `sum_i c_i rho_i|H - dF = sigma` over `Z/W`.
pub fn extend_class_using(sigma: &ExpCocycle, h2: &H2Description, modulus: Option<u64>) -> Result<Option<ExpCocycle>> {
    sigma.require_cocycle()?;
    if *sigma.group != *h2.group {
        return Err(Error::DomainMismatch);
    }
    if !sigma.subgroup.is_subset_of(&h2.subgroup) {
        return Err(Error::NotASubgroup("cocycle domain is not inside the extension target".into()));
    }
    let g = &sigma.group;
    let base = sigma.modulus.lcm(&h2.base_modulus);
    let w = match modulus {
        Some(w) => {
            lift_factor(base, w)?;
            w
        }
        None => base * h2.subgroup.exponent(g) as u64,
    };
    let target_lift = w / h2.base_modulus;
    let sigma_w = sigma.lift(w)?;
    let h = &sigma.subgroup;
    let t = PosTable::new(g, h);
    let n = t.n;
    let s = h2.representatives.len();
    let restricted: Vec<ExpCocycle> = h2.representatives.iter().map(|r| restrict(r, h)).collect::<Result<_>>()?;
    let rows: Vec<Vec<i64>> = (0..n * n)
        .map(|idx| {
            let (a, b) = (idx / n, idx % n);
            let mut row = vec![0i64; s + n];
            for (i, r) in restricted.iter().enumerate() {
                row[i] = (r.get_pos(a, b) * target_lift) as i64;
            }
            row[s + a] -= 1;
            row[s + b] -= 1;
            row[s + t.mul(a, b)] += 1;
            row
        })
        .collect();
    let rhs: Vec<i64> = sigma_w.exps.iter().map(|&x| x as i64).collect();
    let d = diagonalize(rows, s + n, w as i64, vec![rhs]);
    let Some(x) = d.solve(0) else { return Ok(None) };
    let mut out = ExpCocycle::trivial(g.clone(), h2.subgroup.clone(), h2.base_modulus);
    for (rep, &c) in h2.representatives.iter().zip(&x) {
        out = out.add(&rep.scale(c))?;
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};
    use rand::{Rng, SeedableRng};

    fn grp(s: &str) -> Arc<FiniteGroup> {
        build_group(&GroupSpec::parse(s).unwrap()).unwrap()
    }

    /// The table on Z2 x Z2 with -1 at ((1,0),(0,1)), ((1,0),(1,1)),
    /// ((1,1),(0,1)), ((1,1),(1,1)).
    pub(crate) fn example_sigma(g: &Arc<FiniteGroup>) -> ExpCocycle {
        let table = vec![vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 1, 0, 1]];
        ExpCocycle::new(g.clone(), Subgroup::full(g), 2, table).unwrap()
    }

    #[test]
    fn example_table_is_a_cocycle() {
        let g = grp("C2xC2");
        let s = example_sigma(&g);
        assert!(is_cocycle(&s));
        let mut bad = s.matrix();
        bad[2][1] = 0;
        assert!(!is_cocycle(&ExpCocycle::new(g.clone(), Subgroup::full(&g), 2, bad).unwrap()));
        assert!(is_cocycle(&ExpCocycle::trivial(g.clone(), Subgroup::full(&g), 4)));
    }

    #[test]
    fn coboundary_examples() {
        let g = grp("C2");
        let f = ExpFunction::new(g.clone(), Subgroup::full(&g), 4, vec![0, 1]).unwrap();
        let c = coboundary_from(&f);
        assert_eq!(c.matrix(), vec![vec![0, 0], vec![0, 2]]);
        let z = ExpFunction::zero(g.clone(), Subgroup::full(&g), 4);
        assert!(coboundary_from(&z).is_trivial_matrix());
    }

    #[test]
    fn random_coboundaries_are_cocycles() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for s in ["C2xC4", "S3", "Q8", "D4", "C3xC3"] {
            let g = grp(s);
            for _ in 0..20 {
                let vals = (0..g.order()).map(|_| rng.gen_range(0..16)).collect();
                let f = ExpFunction::new(g.clone(), Subgroup::full(&g), 16, vals).unwrap();
                assert!(is_cocycle(&coboundary_from(&f)));
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let g = grp("C2xC2");
        let s = example_sigma(&g);
        let (n, f) = normalize(&s).unwrap();
        assert_eq!(n, s);
        assert!(f.is_zero());
        let shifted = s.add(&ExpCocycle::new(g.clone(), Subgroup::full(&g), 2, vec![vec![1; 4]; 4]).unwrap()).unwrap();
        assert!(is_cocycle(&shifted));
        let (n, f) = normalize(&shifted).unwrap();
        assert_eq!(f.values(), &[1, 1, 1, 1]);
        for x in 0..4 {
            assert_eq!(n.get(0, x), 0);
            assert_eq!(n.get(x, 0), 0);
            assert_eq!(n.get(x, g.inv(x)), n.get(g.inv(x), x));
        }
    }

    #[test]
    fn h2_small_groups() {
        assert_eq!(h2_over_fstar(&grp("C4")).unwrap().order, 1);
        let v = h2_over_fstar(&grp("C2xC2")).unwrap();
        assert_eq!(v.invariant_factors, vec![2]);
        assert_eq!(h2_over_fstar(&grp("C2xC2xC2")).unwrap().order, 8);
        assert_eq!(h2_over_fstar(&grp("C1")).unwrap().order, 1);
        for rep in &v.representatives {
            assert!(is_cocycle(rep));
            assert_eq!(class_order(rep).unwrap(), 2);
        }
    }

    #[test]
    fn equivalence_examples() {
        let g = grp("C2xC2");
        let s = example_sigma(&g);
        assert!(classes_equivalent(&s, &s).unwrap().unwrap().is_zero());
        let triv = ExpCocycle::trivial(g.clone(), Subgroup::full(&g), 2);
        assert!(classes_equivalent(&s, &triv).unwrap().is_none());
        // on N = {00, 11} the restricted class dies: f(11) is a quarter turn
        let nsub = Subgroup::new(&g, [0, 3]).unwrap();
        let sn = restrict(&s, &nsub).unwrap();
        let tn = ExpCocycle::trivial(g.clone(), nsub.clone(), 2);
        let f = classes_equivalent(&sn, &tn).unwrap().unwrap();
        assert_eq!(f.modulus(), 4);
        assert_eq!(f.get(0), 0);
        assert!(f.get(3) == 1 || f.get(3) == 3);
        assert_eq!(coboundary_from(&f), sn.lift(4).unwrap().sub(&tn.lift(4).unwrap()).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let g = grp("C2xC2");
        let s = example_sigma(&g);
        assert!(restrict(&s, &Subgroup::new(&g, [0, 1]).unwrap()).unwrap().is_trivial_matrix());
        assert_eq!(restrict(&s, &Subgroup::full(&g)).unwrap(), s);
        assert_eq!(restrict(&s, &Subgroup::trivial(&g)).unwrap().matrix(), vec![vec![0]]);
    }

    #[test]
    fn extension_examples() {
        let g = grp("C2xC2xC2");
        // {000, 001, 010, 011} carries the Z2 x Z2 table with the same ids
        let h = Subgroup::new(&g, [0, 1, 2, 3]).unwrap();
        let table = example_sigma(&grp("C2xC2")).matrix();
        let s = ExpCocycle::new(g.clone(), h.clone(), 2, table).unwrap();
        let ext = extend_class(&s, &Subgroup::full(&g)).unwrap().unwrap();
        assert!(is_cocycle(&ext));
        assert!(classes_equivalent(&restrict(&ext, &h).unwrap(), &s).unwrap().is_some());

        let triv = ExpCocycle::trivial(g.clone(), h.clone(), 4);
        assert!(extend_class(&triv, &Subgroup::full(&g)).unwrap().unwrap().is_trivial_matrix());

        let s3 = grp("S3");
        let t = Subgroup::generated(&s3, &[s3.element("(12)").unwrap()]);
        let sig = ExpCocycle::new(s3.clone(), t.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(classes_equivalent(&sig, &ExpCocycle::trivial(s3.clone(), t.clone(), 2)).unwrap().is_some());
        assert!(extend_class(&sig, &Subgroup::full(&s3)).unwrap().is_some());
    }

    #[test]
    fn alternating_form_obstructs_extension() {
        // V = <(1,0), (0,2)> in C2 x C4 is central, but the commutator
        // pairing of any cocycle on C2 x C4 is trivial on V: w(x, 2y) = w(x, y)^2.
        let g = grp("C2xC4");
        let v = Subgroup::generated(&g, &[4, 2]);
        assert_eq!(v.len(), 4);
        let h2v = h2_of_subgroup(&g, &v, 64).unwrap();
        let sigma = h2v.representatives[0].clone();
        let (x, y) = (4, 2);
        assert_ne!(sigma.get(x, y), sigma.get(y, x));
        for class in h2_over_fstar(&g).unwrap().all_classes() {
            assert_eq!(class.get(x, y), class.get(y, x));
        }
        assert!(extend_class(&sigma, &Subgroup::full(&g)).unwrap().is_none());
    }

    #[test]
    fn conjugation_examples() {
        let s3 = grp("S3");
        let t12 = s3.element("(12)").unwrap();
        let t13 = s3.element("(13)").unwrap();
        let h = Subgroup::generated(&s3, &[t12]);
        let sig = ExpCocycle::new(s3.clone(), h.clone(), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let c = conjugate_class(&sig, t13).unwrap();
        assert_eq!(
            c.subgroup().members(),
            &[0, s3.element("(23)").unwrap()][..]
                .iter()
                .copied()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()[..]
        );
        let g = grp("C2xC4");
        let s = h2_over_fstar(&g).unwrap().representatives[0].clone();
        for x in 0..g.order() {
            assert_eq!(conjugate_class(&s, x).unwrap(), s);
        }
        let q = grp("D4");
        let z = Subgroup::full(&q);
        let reps = h2_over_fstar(&q).unwrap().representatives;
        for x in 0..q.order() {
            assert!(classes_equivalent(&conjugate_class(&reps[0], x).unwrap(), &reps[0]).unwrap().is_some());
        }
        assert_eq!(z.len(), 8);
    }

    #[test]
    fn class_order_divides_group_order() {
        let g = grp("C2xC4");
        let h2 = h2_over_fstar(&g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let c = rng.gen_range(0..4);
            let vals = (0..8).map(|_| rng.gen_range(0..8)).collect();
            let f = ExpFunction::new(g.clone(), Subgroup::full(&g), 8, vals).unwrap();
            let s = h2.representatives[0].scale(c).add(&coboundary_from(&f)).unwrap();
            let o = class_order(&s).unwrap();
            assert_eq!(8 % o, 0);
            assert_eq!(o, if c % 2 == 0 { 1 } else { 2 });
        }
        assert_eq!(class_order(&example_sigma(&grp("C2xC2"))).unwrap(), 2);
    }

    #[test]
    fn root_representative_examples() {
        let g = grp("C2");
        let s = ExpCocycle::new(g.clone(), Subgroup::full(&g), 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(root_representative(&s, 1).unwrap(), s);
        let r = root_representative(&s, 2).unwrap();
        assert_eq!(r.modulus(), 4);
        assert_eq!(r.get(1, 1), 1);
        assert!(is_cocycle(&r));
        assert_eq!(r.scale(2).lift(4).unwrap(), s.lift(4).unwrap());
        let triv = ExpCocycle::trivial(g.clone(), Subgroup::full(&g), 2);
        assert!(root_representative(&triv, 3).unwrap().is_trivial_matrix());
    }

    #[test]
    fn pair_order_examples() {
        let g = grp("C2xC2");
        let s = example_sigma(&g);
        let full = Subgroup::full(&g);
        assert!(pair_leq(&s, &s).unwrap().unwrap().is_zero());
        let h = Subgroup::new(&g, [0, 1]).unwrap();
        let th = ExpCocycle::trivial(g.clone(), h, 2);
        assert!(pair_leq(&th, &s).unwrap().is_some());
        let tf = ExpCocycle::trivial(g.clone(), full, 2);
        assert!(pair_leq(&tf, &s).unwrap().is_none());
        assert!(pair_leq(&s, &tf).unwrap().is_none());
    }
}
