//! Graded embeddings and isomorphisms between twisted group algebras and
//! graded matrix algebras.
//!
//! Verdicts come from the structural criteria (subgroup containment,
//! cohomology classes, tuple matching). Every yes verdict carries an explicit
//! monomial map that has been checked by [`verify_monomial_monomorphism`];
//! a criterion that says yes without a verifiable map is reported as
//! [`Error::WitnessConstructionFailed`] rather than silently trusted.

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::cohomology::{classes_equivalent, extend_class, pair_leq, restrict, ExpCocycle, ExpFunction};
use crate::error::{Error, Result};
use crate::graded_matrix::{
    delta_candidates, lambda_witnesses, regrade_iso, smallest_matching, GradedMatrixAlgebra, LambdaWitness,
};
use crate::group::Subgroup;
use crate::maps::{verify_monomial_isomorphism, verify_monomial_monomorphism, MonomialMap};
use crate::twisted::TwistedGroupAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
}

/// Why a decision came out negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Reason {
    /// Domain matrix size exceeds the codomain's.
    Size {
        domain: usize,
        codomain: usize,
    },
    /// Isomorphism requires equal matrix sizes.
    SizeMismatch {
        left: usize,
        right: usize,
    },
    SubgroupNotContained,
    SubgroupsDiffer,
    ClassMismatch,
    NoTupleMatching,
    /// Some component of a product has no target.
    Unassigned {
        component: usize,
    },
}

/// `eta_x -> f(x) eta'_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TgaEmbedWitness {
    pub f: ExpFunction,
    pub map: MonomialMap,
}

/// `theta1_j = delta xi_j theta2_(alpha(j))`, with the scalar function used
/// on the twisted group algebra part and the resulting basis map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEmbedWitness {
    pub f: ExpFunction,
    pub delta: usize,
    pub alpha: Vec<usize>,
    pub xis: Vec<usize>,
    pub map: MonomialMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Tga(TgaEmbedWitness),
    Matrix(MatrixEmbedWitness),
    Product(Vec<MatrixEmbedWitness>),
}

impl Witness {
    pub fn map(&self) -> Option<&MonomialMap> {
        match self {
            Witness::Tga(w) => Some(&w.map),
            Witness::Matrix(w) => Some(&w.map),
            Witness::Product(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub reasons: Vec<Reason>,
    /// For products: the chosen codomain component of each domain component.
    pub assignment: Option<Vec<Option<usize>>>,
    pub notes: Vec<String>,
}

impl DecisionReport {
    fn no(reasons: Vec<Reason>) -> Self {
        Self { verdict: Verdict::No, witness: None, reasons, assignment: None, notes: vec![] }
    }

    fn yes(witness: Witness) -> Self {
        Self { verdict: Verdict::Yes, witness: Some(witness), reasons: vec![], assignment: None, notes: vec![] }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

fn same_ambient<A: GradedAlgebra + ?Sized, B: GradedAlgebra + ?Sized>(a: &A, b: &B) -> Result<()> {
    if *a.ambient() != *b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// `eta_x -> f(x) eta'_x` for `H1 <= H2`.
fn scalar_tga_map(h1: &Subgroup, h2: &Subgroup, f: &ExpFunction) -> MonomialMap {
    MonomialMap {
        images: h1.members().iter().map(|&x| Some((h2.position(x).unwrap(), f.get(x)))).collect(),
        modulus: f.modulus(),
    }
}

pub fn twisted_embed(b1: &TwistedGroupAlgebra, b2: &TwistedGroupAlgebra) -> Result<DecisionReport> {
    same_ambient(b1, b2)?;
    if !b1.subgroup().is_subset_of(b2.subgroup()) {
        return Ok(DecisionReport::no(vec![Reason::SubgroupNotContained]));
    }
    let Some(f) = pair_leq(b1.sigma(), b2.sigma())? else {
        return Ok(DecisionReport::no(vec![Reason::ClassMismatch]));
    };
    let map = scalar_tga_map(b1.subgroup(), b2.subgroup(), &f);
    if !verify_monomial_monomorphism(&map, b1, b2) {
        return Err(Error::WitnessConstructionFailed("scalar map is not multiplicative".into()));
    }
    Ok(DecisionReport::yes(Witness::Tga(TgaEmbedWitness { f, map })))
}

pub fn twisted_iso(b1: &TwistedGroupAlgebra, b2: &TwistedGroupAlgebra) -> Result<DecisionReport> {
    same_ambient(b1, b2)?;
    if b1.subgroup() != b2.subgroup() {
        return Ok(DecisionReport::no(vec![Reason::SubgroupsDiffer]));
    }
    let report = twisted_embed(b1, b2)?;
    if let Some(Witness::Tga(w)) = &report.witness {
        if !verify_monomial_isomorphism(&w.map, b1, b2) {
            return Err(Error::WitnessConstructionFailed("scalar map is not bijective".into()));
        }
    }
    Ok(report)
}

fn require_normalizer(a: &GradedMatrixAlgebra, which: &str) -> Result<()> {
    if !a.theta_in_normalizer() {
        return Err(Error::HypothesisViolated(format!(
            "theta of {which} has entries outside the normalizer of its subgroup"
        )));
    }
    Ok(())
}

/// `E_ij eta_x -> f(x) E_ij eta'_x` from `M_k1` into the top-left corner of `M_k2`.
fn corner_map(a1: &GradedMatrixAlgebra, a2: &GradedMatrixAlgebra, f: &ExpFunction) -> MonomialMap {
    let (h1, h2) = (a1.base().subgroup(), a2.base().subgroup());
    let k2 = a2.k();
    let images = (0..a1.dim())
        .map(|b| {
            let (i, j, p) = a1.decode(b);
            let x = h1.members()[p];
            Some(((i * k2 + j) * h2.len() + h2.position(x).unwrap(), f.get(x)))
        })
        .collect();
    MonomialMap { images, modulus: f.modulus() }
}

/// Tries to realize `a1 -> a2` through the regrading `w` of `a2` whose first
/// `k1` slots equal `theta1`.
fn realize(
    a1: &GradedMatrixAlgebra,
    a2: &GradedMatrixAlgebra,
    w: &LambdaWitness,
) -> Result<Option<MatrixEmbedWitness>> {
    let (regraded, r) = regrade_iso(a2, w)?;
    let sigma2 = regraded.base().sigma();
    let Some(f) = classes_equivalent(a1.base().sigma(), &restrict(sigma2, a1.base().subgroup())?)? else {
        return Ok(None);
    };
    let iota = corner_map(a1, &regraded, &f);
    let map = iota.then(&r.inverse()?)?;
    if !verify_monomial_monomorphism(&map, a1, a2) {
        return Err(Error::WitnessConstructionFailed("composed embedding failed verification".into()));
    }
    let k1 = a1.k();
    Ok(Some(MatrixEmbedWitness {
        f,
        delta: w.delta(),
        alpha: w.alpha()[..k1].to_vec(),
        xis: w.xis()[..k1].to_vec(),
        map,
    }))
}

/// Decides `a1 -> a2` for graded matrix algebras whose tuples normalize
/// their subgroups.
pub fn matrix_embed(a1: &GradedMatrixAlgebra, a2: &GradedMatrixAlgebra) -> Result<DecisionReport> {
    same_ambient(a1, a2)?;
    require_normalizer(a1, "the domain")?;
    require_normalizer(a2, "the codomain")?;
    let g = a1.ambient().clone();
    let (k1, k2) = (a1.k(), a2.k());
    let mut reasons = Vec::new();
    if k1 > k2 {
        reasons.push(Reason::Size { domain: k1, codomain: k2 });
    }
    let tga = twisted_embed(a1.base(), a2.base())?;
    reasons.extend(tga.reasons.iter().cloned());
    let h2 = a2.base().subgroup();
    let (t1, t2) = (a1.theta(), a2.theta());
    let mut matchings = Vec::new();
    if k1 <= k2 {
        for delta in delta_candidates(a2)? {
            let di = g.inv(delta);
            let shift = |j: usize, i: usize| g.mul(g.mul(di, t1[j]), g.inv(t2[i]));
            if let Some(alpha) = smallest_matching(k1, k2, |j, i| h2.contains(shift(j, i))) {
                let xis: Vec<usize> = (0..k1).map(|j| shift(j, alpha[j])).collect();
                matchings.push((delta, alpha, xis));
            }
        }
        if matchings.is_empty() {
            reasons.push(Reason::NoTupleMatching);
        }
    }
    if !reasons.is_empty() {
        return Ok(DecisionReport::no(reasons));
    }
    for (delta, mut alpha, mut xis) in matchings {
        // extend the injection to a permutation, unmatched slots unshifted
        let mut used = vec![false; k2];
        alpha.iter().for_each(|&i| used[i] = true);
        alpha.extend((0..k2).filter(|&i| !used[i]));
        xis.resize(k2, 0);
        let target: Vec<usize> = (0..k2).map(|j| g.mul(g.mul(delta, xis[j]), t2[alpha[j]])).collect();
        let w = LambdaWitness::new(a2, target, delta, alpha, xis)?;
        if let Some(wit) = realize(a1, a2, &w)? {
            return Ok(DecisionReport::yes(Witness::Matrix(wit)));
        }
    }
    Err(Error::WitnessConstructionFailed("criterion holds but no normalizer shift gives a compatible cocycle".into()))
}

/// Decides `a1 ~ a2` for graded matrix algebras whose tuples normalize
/// their subgroups.
pub fn matrix_iso(a1: &GradedMatrixAlgebra, a2: &GradedMatrixAlgebra) -> Result<DecisionReport> {
    same_ambient(a1, a2)?;
    require_normalizer(a1, "the left algebra")?;
    require_normalizer(a2, "the right algebra")?;
    let mut reasons = Vec::new();
    if a1.k() != a2.k() {
        reasons.push(Reason::SizeMismatch { left: a1.k(), right: a2.k() });
    }
    let tga = twisted_iso(a1.base(), a2.base())?;
    reasons.extend(tga.reasons.iter().cloned());
    let witnesses = if reasons.is_empty() { lambda_witnesses(a1.theta(), a2)? } else { vec![] };
    if reasons.is_empty() && witnesses.is_empty() {
        reasons.push(Reason::NoTupleMatching);
    }
    if !reasons.is_empty() {
        return Ok(DecisionReport::no(reasons));
    }
    for w in &witnesses {
        if let Some(wit) = realize(a1, a2, w)? {
            if !verify_monomial_isomorphism(&wit.map, a1, a2) {
                return Err(Error::WitnessConstructionFailed("isomorphism failed verification".into()));
            }
            return Ok(DecisionReport::yes(Witness::Matrix(wit)));
        }
    }
    Err(Error::WitnessConstructionFailed("criterion holds but no normalizer shift gives a compatible cocycle".into()))
}

/// `F^sigma[H]` as the graded matrix algebra `M_1(F^sigma[H])` with `theta = (e)`.
pub fn as_matrix(b: &TwistedGroupAlgebra) -> GradedMatrixAlgebra {
    GradedMatrixAlgebra::new(b.clone(), vec![0]).expect("k = 1 with the identity is always valid")
}

/// Embeds each domain component into the first codomain component that
/// accepts it. Components are 0-based: `assignment[j] = Some(i)` means
/// `bs[j] -> as_[i]`.
pub fn product_embed(bs: &[GradedMatrixAlgebra], as_: &[GradedMatrixAlgebra]) -> Result<DecisionReport> {
    let mut notes =
        vec!["index convention: each domain component j is assigned one codomain component i_j".to_string()];
    for (i, x) in bs.iter().enumerate() {
        for (j, y) in bs.iter().enumerate() {
            if i != j && x.ambient() == y.ambient() && matrix_embed(x, y)?.is_yes() {
                notes.push(format!(
                    "warning: domain component {i} embeds into domain component {j}; the components are assumed mutually non-embeddable"
                ));
            }
        }
    }
    let mut assignment = Vec::with_capacity(bs.len());
    let mut witnesses = Vec::new();
    let mut reasons = Vec::new();
    for (j, b) in bs.iter().enumerate() {
        let mut found = None;
        for (i, a) in as_.iter().enumerate() {
            let r = matrix_embed(b, a)?;
            if let Some(Witness::Matrix(w)) = r.witness {
                found = Some((i, w));
                break;
            }
        }
        match found {
            Some((i, w)) => {
                assignment.push(Some(i));
                witnesses.push(w);
            }
            None => {
                assignment.push(None);
                reasons.push(Reason::Unassigned { component: j });
            }
        }
    }
    let verdict = if reasons.is_empty() { Verdict::Yes } else { Verdict::No };
    Ok(DecisionReport {
        verdict,
        witness: (verdict == Verdict::Yes).then_some(Witness::Product(witnesses)),
        reasons,
        assignment: Some(assignment),
        notes,
    })
}

/// Canonical commuting square `F^sigma[H] -> F^rho[N]` over
/// `M_k(F^sigma[H]) -> M_t(F^rho[N])` with corner inclusions (all tuples trivial).
#[derive(Clone, Debug)]
pub struct TowerSquare {
    pub small: GradedMatrixAlgebra,
    pub big: GradedMatrixAlgebra,
    pub top: MonomialMap,
    pub left: MonomialMap,
    pub right: MonomialMap,
    pub bottom: MonomialMap,
    pub commutes: bool,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    /// `sigma_i` on the `i`-th chain member.
    pub cocycles: Vec<ExpCocycle>,
    pub algebras: Vec<TwistedGroupAlgebra>,
    /// Verified embeddings `algebras[i] -> algebras[i + 1]`.
    pub embeddings: Vec<MonomialMap>,
    pub square: TowerSquare,
}

/// Extends the class of `b` along a chain of subgroups, each central in the
/// next, and builds the verified embeddings and the matrix square of sizes
/// `k <= t` over the ends of the chain.
pub fn build_tower(b: &TwistedGroupAlgebra, chain: &[Subgroup], k: usize, t: usize) -> Result<TowerReport> {
    let g = b.ambient().clone();
    let Some(first) = chain.first() else {
        return Err(Error::Validation("empty chain".into()));
    };
    if first != b.subgroup() {
        return Err(Error::Validation("the chain must start at the algebra's subgroup".into()));
    }
    if k == 0 || k > t {
        return Err(Error::Validation(format!("matrix sizes must satisfy 1 <= k <= t (got {k}, {t})")));
    }
    for (i, pair) in chain.windows(2).enumerate() {
        let (small, big) = (&pair[0], &pair[1]);
        big.check_in(&g)?;
        let central = small.is_subset_of(big)
            && small.members().iter().all(|&a| big.members().iter().all(|&x| g.mul(a, x) == g.mul(x, a)));
        if !central {
            return Err(Error::ChainNotCentral(format!("member {i} is not central in member {}", i + 1)));
        }
    }
    let mut cocycles = vec![b.sigma().clone()];
    let mut algebras = vec![b.clone()];
    let mut embeddings = Vec::new();
    for (i, next) in chain.iter().enumerate().skip(1) {
        let sigma = extend_class(&cocycles[i - 1], next)?.ok_or_else(|| {
            Error::ExtensionFailed(format!("the class on member {} has no extension to member {i}", i - 1))
        })?;
        let alg = TwistedGroupAlgebra::new(sigma.clone())?;
        let report = twisted_embed(&algebras[i - 1], &alg)?;
        let Some(Witness::Tga(w)) = report.witness else {
            return Err(Error::WitnessConstructionFailed("extended class does not restrict back".into()));
        };
        embeddings.push(w.map);
        cocycles.push(sigma);
        algebras.push(alg);
    }
    let top_alg = algebras.last().unwrap().clone();
    let square = tower_square(b, &top_alg, k, t)?;
    Ok(TowerReport { cocycles, algebras, embeddings, square })
}

fn tower_square(b: &TwistedGroupAlgebra, top_alg: &TwistedGroupAlgebra, k: usize, t: usize) -> Result<TowerSquare> {
    let small = GradedMatrixAlgebra::new(b.clone(), vec![0; k])?;
    let big = GradedMatrixAlgebra::new(top_alg.clone(), vec![0; t])?;
    let f = pair_leq(b.sigma(), top_alg.sigma())?
        .ok_or_else(|| Error::WitnessConstructionFailed("chain ends are not ordered".into()))?;
    let top = scalar_tga_map(b.subgroup(), top_alg.subgroup(), &f);
    let left = corner_map(&as_matrix(b), &small, &ExpFunction::zero(b.ambient().clone(), b.subgroup().clone(), 1));
    let right =
        corner_map(&as_matrix(top_alg), &big, &ExpFunction::zero(b.ambient().clone(), top_alg.subgroup().clone(), 1));
    let bottom = corner_map(&small, &big, &f);
    let checks = [
        verify_monomial_monomorphism(&top, b, top_alg),
        verify_monomial_monomorphism(&left, b, &small),
        verify_monomial_monomorphism(&right, top_alg, &big),
        verify_monomial_monomorphism(&bottom, &small, &big),
    ];
    if checks.iter().any(|ok| !ok) {
        return Err(Error::WitnessConstructionFailed(format!("square maps failed verification: {checks:?}")));
    }
    let commutes = top.then(&right)? == left.then(&bottom)?;
    Ok(TowerSquare { small, big, top, left, right, bottom, commutes })
}
