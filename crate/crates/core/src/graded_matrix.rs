//! `M_k(F^sigma[H])` with the elementary-canonical grading given by a tuple
//! `theta` of ambient elements: `E_ij eta_z` has degree `theta_i^-1 z theta_j`.
//!
//! Indices `i, j` and permutations are 0-based. Basis element `E_ij eta_z`
//! has index `(i * k + j) * |H| + position(z)`.

use std::sync::Arc;

use crate::algebra::{fingerprint, GradedAlgebra};
use crate::cohomology::conjugate_class;
use crate::cyclo::CycloField;
use crate::error::{Error, Result};
use crate::group::{left_transversal, normalizer, FiniteGroup};
use crate::maps::{verify_monomial_isomorphism, MonomialMap};
use crate::twisted::TwistedGroupAlgebra;

#[derive(Clone, Debug)]
pub struct GradedMatrixAlgebra {
    k: usize,
    base: TwistedGroupAlgebra,
    theta: Vec<usize>,
    in_normalizer: bool,
    key: u64,
}

impl PartialEq for GradedMatrixAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.theta == other.theta
    }
}

impl GradedMatrixAlgebra {
    pub fn new(base: TwistedGroupAlgebra, theta: Vec<usize>) -> Result<Self> {
        let g = base.ambient().clone();
        if theta.is_empty() {
            return Err(Error::Validation("matrix size k must be at least 1".into()));
        }
        if let Some(&t) = theta.iter().find(|&&t| t >= g.order()) {
            return Err(Error::IndexOutOfRange(format!("theta entry {t} is not an element of {}", g.name())));
        }
        let nh = normalizer(&g, base.subgroup())?;
        let in_normalizer = theta.iter().all(|&t| nh.contains(t));
        let key = fingerprint(&("mat", base.key(), &theta));
        Ok(Self { k: theta.len(), base, theta, in_normalizer, key })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &TwistedGroupAlgebra {
        &self.base
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// Whether every `theta_i` normalizes `H`.
    pub fn theta_in_normalizer(&self) -> bool {
        self.in_normalizer
    }

    pub fn over_field(&self, field: Arc<CycloField>) -> Result<Self> {
        Self::new(self.base.over_field(field)?, self.theta.clone())
    }

    fn n(&self) -> usize {
        self.base.dim()
    }

    /// Index of `E_ij eta_z` (`z` an element of `H`).
    pub fn basis_index(&self, i: usize, j: usize, z: usize) -> Result<usize> {
        if i >= self.k || j >= self.k {
            return Err(Error::IndexOutOfRange(format!("matrix position ({i}, {j}) with k = {}", self.k)));
        }
        let p = self
            .base
            .subgroup()
            .position(z)
            .ok_or_else(|| Error::IndexOutOfRange(format!("element {z} is not in the subgroup")))?;
        Ok((i * self.k + j) * self.n() + p)
    }

    /// `(i, j, position of z)` for a basis index.
    pub fn decode(&self, b: usize) -> (usize, usize, usize) {
        let n = self.n();
        ((b / n) / self.k, (b / n) % self.k, b % n)
    }

    pub fn degree_of(&self, i: usize, j: usize, z: usize) -> Result<usize> {
        Ok(self.degree(self.basis_index(i, j, z)?))
    }
}

impl GradedAlgebra for GradedMatrixAlgebra {
    fn ambient(&self) -> &Arc<FiniteGroup> {
        self.base.ambient()
    }

    fn field(&self) -> &Arc<CycloField> {
        self.base.field()
    }

    fn dim(&self) -> usize {
        self.k * self.k * self.n()
    }

    fn degree(&self, b: usize) -> usize {
        let g = self.ambient();
        let (i, j, p) = self.decode(b);
        let z = self.base.subgroup().members()[p];
        g.mul(g.mul(g.inv(self.theta[i]), z), self.theta[j])
    }

    fn basis_product(&self, a: usize, b: usize) -> Option<(usize, u64)> {
        let (i, j, z) = self.decode(a);
        let (p, q, w) = self.decode(b);
        if j != p {
            return None;
        }
        let (c, e) = self.base.basis_product(z, w)?;
        Some(((i * self.k + q) * self.n() + c, e))
    }

    fn phase_modulus(&self) -> u64 {
        self.base.phase_modulus()
    }

    fn unit_terms(&self) -> Vec<(usize, u64)> {
        let (_, e) = self.base.unit_terms()[0];
        (0..self.k).map(|i| ((i * self.k + i) * self.n(), e)).collect()
    }

    fn basis_label(&self, b: usize) -> String {
        let (i, j, p) = self.decode(b);
        format!("E{}{}{}", i + 1, j + 1, self.base.basis_label(p))
    }

    fn key(&self) -> u64 {
        self.key
    }
}

/// `target_j = delta xi_j theta_(alpha(j))` for every slot `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaWitness {
    delta: usize,
    alpha: Vec<usize>,
    xis: Vec<usize>,
    target: Vec<usize>,
}

impl LambdaWitness {
    /// Validates the witness against `a` and the target tuple.
    pub fn new(
        a: &GradedMatrixAlgebra,
        target: Vec<usize>,
        delta: usize,
        alpha: Vec<usize>,
        xis: Vec<usize>,
    ) -> Result<Self> {
        let g = a.ambient();
        let h = a.base.subgroup();
        let k = a.k;
        let bad = |m: String| Err(Error::InvalidWitness(m));
        if target.len() != k || alpha.len() != k || xis.len() != k {
            return bad(format!("witness lengths must all equal k = {k}"));
        }
        let mut seen = vec![false; k];
        for &x in &alpha {
            if x >= k || std::mem::replace(&mut seen[x], true) {
                return bad("alpha is not a permutation".into());
            }
        }
        if delta >= g.order() || !normalizer(g, h)?.contains(delta) {
            return bad(format!("delta {delta} does not normalize the subgroup"));
        }
        if let Some(&x) = xis.iter().find(|&&x| !h.contains(x)) {
            return bad(format!("shift {x} is not in the subgroup"));
        }
        for j in 0..k {
            if g.mul(g.mul(delta, xis[j]), a.theta[alpha[j]]) != target[j] {
                return bad(format!("slot {j} does not reconstruct the target"));
            }
        }
        Ok(Self { delta, alpha, xis, target })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn xis(&self) -> &[usize] {
        &self.xis
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }
}

/// Lexicographically smallest injection `j -> alpha(j)` of `0..left` into
/// `0..right` using only allowed edges.
pub(crate) fn smallest_matching(left: usize, right: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let adj: Vec<Vec<usize>> = (0..left).map(|j| (0..right).filter(|&i| edge(j, i)).collect()).collect();
    // can rows from..left be matched avoiding `used`?
    fn feasible(adj: &[Vec<usize>], from: usize, used: &[bool]) -> bool {
        let right = used.len();
        let mut owner: Vec<Option<usize>> = vec![None; right];
        fn augment(
            adj: &[Vec<usize>],
            j: usize,
            used: &[bool],
            owner: &mut [Option<usize>],
            seen: &mut [bool],
        ) -> bool {
            for &i in &adj[j] {
                if used[i] || seen[i] {
                    continue;
                }
                seen[i] = true;
                if owner[i].is_none() || augment(adj, owner[i].unwrap(), used, owner, seen) {
                    owner[i] = Some(j);
                    return true;
                }
            }
            false
        }
        (from..adj.len()).all(|j| augment(adj, j, used, &mut owner, &mut vec![false; right]))
    }
    let mut used = vec![false; right];
    if !feasible(&adj, 0, &used) {
        return None;
    }
    let mut alpha = Vec::with_capacity(left);
    for j in 0..left {
        let i = *adj[j].iter().find(|&&i| {
            if used[i] {
                return false;
            }
            used[i] = true;
            let ok = feasible(&adj, j + 1, &used);
            used[i] = false;
            ok
        })?;
        used[i] = true;
        alpha.push(i);
    }
    Some(alpha)
}

/// Normalizer transversal used for the `delta` search.
pub(crate) fn delta_candidates(a: &GradedMatrixAlgebra) -> Result<Vec<usize>> {
    let g = a.ambient();
    let h = a.base.subgroup();
    let nh = normalizer(g, h)?;
    Ok(left_transversal(g, h, nh.members().iter().copied()))
}

/// Witness for `target` in the orbit of `a.theta()` under normalizer
/// shifts, subgroup shifts and permutations, if there is one.
pub fn lambda_membership(target: &[usize], a: &GradedMatrixAlgebra) -> Result<Option<LambdaWitness>> {
    Ok(lambda_witnesses(target, a)?.into_iter().next())
}

/// One witness per `delta` in the normalizer transversal that admits a matching.
pub(crate) fn lambda_witnesses(target: &[usize], a: &GradedMatrixAlgebra) -> Result<Vec<LambdaWitness>> {
    let g = a.ambient().clone();
    let h = a.base.subgroup().clone();
    if target.len() != a.k {
        return Err(Error::LengthMismatch { expected: a.k, got: target.len() });
    }
    if let Some(&t) = target.iter().find(|&&t| t >= g.order()) {
        return Err(Error::IndexOutOfRange(format!("tuple entry {t}")));
    }
    let mut out = Vec::new();
    for delta in delta_candidates(a)? {
        let di = g.inv(delta);
        let shift = |j: usize, i: usize| g.mul(g.mul(di, target[j]), g.inv(a.theta[i]));
        if let Some(alpha) = smallest_matching(a.k, a.k, |j, i| h.contains(shift(j, i))) {
            let xis = (0..a.k).map(|j| shift(j, alpha[j])).collect();
            out.push(LambdaWitness::new(a, target.to_vec(), delta, alpha, xis)?);
        }
    }
    Ok(out)
}

/// Graded isomorphism from `a` onto the regraded algebra with tuple
/// `w.target()` (and cocycle conjugated by `delta`).
///
/// The map is the composite of a permutation of matrix slots, conjugation
/// by `sum_i E_ii eta_(xi_i)`, and relabelling `eta_z` as `eta_(delta z delta^-1)`.
pub fn regrade_iso(a: &GradedMatrixAlgebra, w: &LambdaWitness) -> Result<(GradedMatrixAlgebra, MonomialMap)> {
    let w = LambdaWitness::new(a, w.target.clone(), w.delta, w.alpha.clone(), w.xis.clone())?;
    let g = a.ambient().clone();
    let h = a.base.subgroup().clone();
    let sigma = a.base.sigma();
    let m = sigma.modulus();
    let (k, n) = (a.k, a.n());
    let pos = |x: usize| h.position(x).expect("element of H");

    let mut alpha_inv = vec![0; k];
    for (j, &i) in w.alpha.iter().enumerate() {
        alpha_inv[i] = j;
    }
    let step1 = MonomialMap {
        images: (0..a.dim())
            .map(|b| {
                let (i, j, p) = a.decode(b);
                Some(((alpha_inv[i] * k + alpha_inv[j]) * n + p, 0))
            })
            .collect(),
        modulus: 1,
    };

    let xi_pos: Vec<usize> = w.xis.iter().map(|&x| pos(x)).collect();
    let xi_inv_pos: Vec<usize> = w.xis.iter().map(|&x| pos(g.inv(x))).collect();
    let s = |p: usize, q: usize| sigma.get_pos(p, q);
    let step2 = MonomialMap {
        images: (0..a.dim())
            .map(|b| {
                let (i, j, z) = a.decode(b);
                let left = a.base.mul_pos(xi_pos[i], z);
                let image = a.base.mul_pos(left, xi_inv_pos[j]);
                let e = s(xi_pos[i], z) + s(left, xi_inv_pos[j]) + 2 * m - s(xi_pos[j], xi_inv_pos[j]) - s(0, 0);
                Some(((i * k + j) * n + image, e % m))
            })
            .collect(),
        modulus: m,
    };

    let conj = conjugate_class(sigma, w.delta)?;
    let target_base = TwistedGroupAlgebra::with_field(conj, a.field().clone())?;
    let target = GradedMatrixAlgebra::new(target_base, w.target.clone())?;
    let hk = target.base.subgroup();
    let step3 = MonomialMap {
        images: (0..a.dim())
            .map(|b| {
                let (i, j, z) = a.decode(b);
                let c = hk.position(g.conj(w.delta, h.members()[z])).unwrap();
                Some(((i * k + j) * n + c, 0))
            })
            .collect(),
        modulus: 1,
    };
    let map = step1.then(&step2)?.then(&step3)?;
    if !verify_monomial_isomorphism(&map, a, &target) {
        return Err(Error::WitnessConstructionFailed("regrading map failed verification".into()));
    }
    Ok((target, map))
}
