//! Multilinear graded polynomial identities of bounded degree.
//!
//! A multilinear polynomial in `x_1..x_n` (variable `x_i` of degree `g_i`)
//! is stored as coefficients on permutations `w`, the monomial being
//! `x_w(0) x_w(1) ... x_w(n-1)`. By multilinearity it is an identity iff it
//! vanishes on all tuples of basis elements of the right degrees, so the
//! identities form the kernel of a finite evaluation matrix.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::algebra::{Element, GradedAlgebra};
use crate::cyclo::{CycloField, CycloNumber};
use crate::error::{Error, Result};
use crate::linalg::Rref;

pub const DEFAULT_DEGREE_CAP: usize = 4;
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Degrees `(g_1, ..., g_n)` of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeAssignment {
    degs: Vec<usize>,
}

impl DegreeAssignment {
    pub fn new(degs: Vec<usize>) -> Result<Self> {
        Self::with_cap(degs, DEFAULT_DEGREE_CAP)
    }

    pub fn with_cap(degs: Vec<usize>, cap: usize) -> Result<Self> {
        if degs.is_empty() {
            return Err(Error::Validation("a degree assignment needs at least one variable".into()));
        }
        if degs.len() > cap {
            return Err(Error::DegreeCapExceeded { got: degs.len(), cap });
        }
        Ok(Self { degs })
    }

    pub fn degs(&self) -> &[usize] {
        &self.degs
    }

    pub fn n(&self) -> usize {
        self.degs.len()
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMultilinearPoly {
    assignment: DegreeAssignment,
    field: Arc<CycloField>,
    coeffs: BTreeMap<Vec<usize>, CycloNumber>,
}

impl GradedMultilinearPoly {
    pub fn new(
        assignment: DegreeAssignment,
        field: Arc<CycloField>,
        terms: impl IntoIterator<Item = (Vec<usize>, CycloNumber)>,
    ) -> Result<Self> {
        let n = assignment.n();
        let mut coeffs: BTreeMap<Vec<usize>, CycloNumber> = BTreeMap::new();
        for (w, c) in terms {
            let mut sorted = w.clone();
            sorted.sort_unstable();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::Validation(format!("{w:?} is not a permutation of 0..{n}")));
            }
            if c.field() != &field {
                return Err(Error::FieldMismatch(c.field().modulus(), field.modulus()));
            }
            let s = match coeffs.remove(&w) {
                Some(old) => &old + &c,
                None => c,
            };
            if !s.is_zero() {
                coeffs.insert(w, s);
            }
        }
        Ok(Self { assignment, field, coeffs })
    }

    /// `x_1 x_2 - x_2 x_1`
    pub fn commutator(assignment: DegreeAssignment, field: Arc<CycloField>) -> Result<Self> {
        Self::two_term(assignment, field, -1)
    }

    /// `x_1 x_2 + x_2 x_1`
    pub fn anticommutator(assignment: DegreeAssignment, field: Arc<CycloField>) -> Result<Self> {
        Self::two_term(assignment, field, 1)
    }

    fn two_term(assignment: DegreeAssignment, field: Arc<CycloField>, sign: i64) -> Result<Self> {
        if assignment.n() != 2 {
            return Err(Error::Validation("two-variable polynomial needs n = 2".into()));
        }
        let terms = [(vec![0, 1], field.one()), (vec![1, 0], field.from_int(sign))];
        Self::new(assignment, field, terms)
    }

    fn from_vector(
        assignment: &DegreeAssignment,
        field: &Arc<CycloField>,
        perms: &[Vec<usize>],
        v: Vec<CycloNumber>,
    ) -> Self {
        let coeffs = perms.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
        Self { assignment: assignment.clone(), field: field.clone(), coeffs }
    }

    fn to_vector(&self, perms: &[Vec<usize>]) -> Vec<CycloNumber> {
        perms.iter().map(|w| self.coeffs.get(w).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    pub fn assignment(&self) -> &DegreeAssignment {
        &self.assignment
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, CycloNumber> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Renames variable `i` to `sigma[i]` (and its degree with it).
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        let n = self.assignment.n();
        let mut degs = vec![0; n];
        for i in 0..n {
            degs[sigma[i]] = self.assignment.degs[i];
        }
        let coeffs = self.coeffs.iter().map(|(w, c)| (w.iter().map(|&i| sigma[i]).collect(), c.clone())).collect();
        Self { assignment: DegreeAssignment { degs }, field: self.field.clone(), coeffs }
    }
}

/// Evaluates `p` at homogeneous elements `subst` of the prescribed degrees.
pub fn evaluate<A: GradedAlgebra + ?Sized>(p: &GradedMultilinearPoly, alg: &A, subst: &[Element]) -> Result<Element> {
    let n = p.assignment.n();
    if subst.len() != n {
        return Err(Error::DegreeMismatch(format!("{} substitutions for {n} variables", subst.len())));
    }
    if p.field != *alg.field() {
        return Err(Error::FieldMismatch(p.field.modulus(), alg.field().modulus()));
    }
    for (i, x) in subst.iter().enumerate() {
        match alg.homogeneous_degree(x) {
            Ok(d) if d == p.assignment.degs[i] => {}
            Err(Error::ZeroElement) => {}
            Ok(d) => {
                return Err(Error::DegreeMismatch(format!(
                    "variable {} has degree {} but was given an element of degree {d}",
                    i + 1,
                    p.assignment.degs[i]
                )))
            }
            Err(Error::NotHomogeneous) => {
                return Err(Error::DegreeMismatch(format!("substitution {} is not homogeneous", i + 1)))
            }
            Err(e) => return Err(e),
        }
    }
    let mut out = alg.zero();
    for (w, c) in &p.coeffs {
        let mut prod = subst[w[0]].clone();
        for &i in &w[1..] {
            prod = alg.multiply(&prod, &subst[i])?;
        }
        out = out.try_add(&prod.scale(c))?;
    }
    Ok(out)
}

/// Multilinear identities of fixed degrees, as a subspace of the span of
/// the `n!` monomials.
#[derive(Clone, Debug)]
pub struct IdentitySpace {
    pub assignment: DegreeAssignment,
    pub field: Arc<CycloField>,
    /// Kernel basis, one polynomial per free column of the reduced
    /// evaluation matrix, normalized to leading coefficient 1.
    pub basis: Vec<GradedMultilinearPoly>,
    /// Rank of the evaluation matrix.
    pub rank: usize,
}

impl IdentitySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn span(&self) -> Rref {
        let perms = permutations(self.assignment.n());
        let mut r = Rref::new(&self.field, perms.len());
        for p in &self.basis {
            r.insert(p.to_vector(&perms));
        }
        r
    }

    pub fn contains(&self, p: &GradedMultilinearPoly) -> bool {
        p.assignment == self.assignment && self.span().contains(&p.to_vector(&permutations(self.assignment.n())))
    }

    /// First basis polynomial of `self` outside `other`, if any.
    pub fn first_outside(&self, other: &IdentitySpace) -> Option<GradedMultilinearPoly> {
        let span = other.span();
        let perms = permutations(self.assignment.n());
        self.basis.iter().find(|p| !span.contains(&p.to_vector(&perms))).cloned()
    }

    pub fn is_subspace_of(&self, other: &IdentitySpace) -> bool {
        self.first_outside(other).is_none()
    }
}

/// Smallest common field for the phases of the given algebras.
pub fn common_field(algs: &[&dyn GradedAlgebra]) -> Arc<CycloField> {
    CycloField::new(algs.iter().fold(1u64, |m, a| m.lcm(&a.phase_modulus())))
}

pub fn identity_space<A: GradedAlgebra>(alg: &A, d: &DegreeAssignment) -> Result<IdentitySpace> {
    identity_space_over(&[alg as &dyn GradedAlgebra], d, alg.field())
}

/// Identities shared by every algebra in `algs`, i.e. those of their
/// direct product.
pub fn product_identity_space(algs: &[&dyn GradedAlgebra], d: &DegreeAssignment) -> Result<IdentitySpace> {
    identity_space_over(algs, d, &common_field(algs))
}

/// Evaluation rows of `alg` as root-of-unity exponents at `modulus`
/// (`None` for a zero entry), normalized and deduplicated.
fn evaluation_rows(
    alg: &dyn GradedAlgebra,
    d: &DegreeAssignment,
    perms: &[Vec<usize>],
    modulus: u64,
    rows: &mut HashSet<Vec<Option<u64>>>,
) {
    let comps: Vec<Vec<usize>> = d.degs.iter().map(|&g| alg.component(g)).collect();
    if comps.iter().any(|c| c.is_empty()) {
        return;
    }
    let scale = modulus / alg.phase_modulus();
    let n = d.n();
    let mut idx = vec![0usize; n];
    loop {
        let tuple: Vec<usize> = (0..n).map(|i| comps[i][idx[i]]).collect();
        let mut by_output: BTreeMap<usize, Vec<Option<u64>>> = BTreeMap::new();
        for (c, w) in perms.iter().enumerate() {
            let mut acc = Some((tuple[w[0]], 0u64));
            for &i in &w[1..] {
                acc = acc.and_then(|(b, e)| alg.basis_product(b, tuple[i]).map(|(c, f)| (c, e + f * scale)));
            }
            if let Some((out, e)) = acc {
                by_output.entry(out).or_insert_with(|| vec![None; perms.len()])[c] = Some(e % modulus);
            }
        }
        for mut row in by_output.into_values() {
            let lead = row.iter().flatten().next().copied().unwrap_or(0);
            for x in row.iter_mut().flatten() {
                *x = (*x + modulus - lead) % modulus;
            }
            rows.insert(row);
        }
        // next tuple
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < comps[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Identity space computed with scalars in `field`.
pub fn identity_space_over(
    algs: &[&dyn GradedAlgebra],
    d: &DegreeAssignment,
    field: &Arc<CycloField>,
) -> Result<IdentitySpace> {
    let m = field.modulus();
    for a in algs {
        if !m.is_multiple_of(a.phase_modulus()) {
            return Err(Error::FieldMismatch(a.phase_modulus(), m));
        }
    }
    let perms = permutations(d.n());
    let mut rows = HashSet::new();
    for a in algs {
        evaluation_rows(*a, d, &perms, m, &mut rows);
    }
    let mut rows: Vec<Vec<Option<u64>>> = rows.into_iter().collect();
    rows.sort();
    let roots: Vec<CycloNumber> = (0..m).map(|e| field.root_of_unity(e as i64)).collect();
    let mut rref = Rref::new(field, perms.len());
    for row in rows {
        rref.insert(row.iter().map(|x| x.map_or_else(|| field.zero(), |e| roots[e as usize].clone())).collect());
        if rref.is_full() {
            break;
        }
    }
    let basis = rref
        .kernel()
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|c| !c.is_zero()).expect("kernel vectors are nonzero").inv().unwrap();
            let v = v.iter().map(|c| c * &lead).collect();
            GradedMultilinearPoly::from_vector(d, field, &perms, v)
        })
        .collect();
    Ok(IdentitySpace { assignment: d.clone(), field: field.clone(), basis, rank: rref.rank() })
}

#[derive(Clone, Debug)]
pub struct AssignmentResult {
    pub assignment: DegreeAssignment,
    pub dim_a: usize,
    pub dim_b: usize,
    pub contained: bool,
    /// An identity of the first algebra that is not an identity of the second.
    pub separating: Option<GradedMultilinearPoly>,
}

/// Result of comparing multilinear identities up to degree `n_max`.
#[derive(Clone, Debug)]
pub struct ContainmentReport {
    pub n_max: usize,
    /// Identities of the first algebra are identities of the second at every
    /// computed assignment of degree at most `n_max`.
    pub contained: bool,
    pub results: Vec<AssignmentResult>,
    /// Assignments over the work budget, not computed.
    pub skipped: Vec<DegreeAssignment>,
}

impl ContainmentReport {
    pub fn first_separating(&self) -> Option<&AssignmentResult> {
        self.results.iter().find(|r| !r.contained)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PiConfig {
    pub degree_cap: usize,
    pub budget: u64,
}

impl Default for PiConfig {
    fn default() -> Self {
        Self { degree_cap: DEFAULT_DEGREE_CAP, budget: DEFAULT_BUDGET }
    }
}

/// Whether every multilinear identity of `a` of degree at most `n_max` is
/// one of `b`, over assignments drawn from `Supp(a) u Supp(b)`.
pub fn multilinear_containment(
    a: &dyn GradedAlgebra,
    b: &dyn GradedAlgebra,
    n_max: usize,
) -> Result<ContainmentReport> {
    multilinear_containment_with(a, b, n_max, PiConfig::default())
}

pub fn multilinear_containment_with(
    a: &dyn GradedAlgebra,
    b: &dyn GradedAlgebra,
    n_max: usize,
    config: PiConfig,
) -> Result<ContainmentReport> {
    if n_max > config.degree_cap {
        return Err(Error::DegreeCapExceeded { got: n_max, cap: config.degree_cap });
    }
    if *a.ambient() != *b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    let field = common_field(&[a, b]);
    let mut degs: Vec<usize> = a.support().into_iter().chain(b.support()).collect();
    degs.sort_unstable();
    degs.dedup();
    let mut assignments = Vec::new();
    for n in 1..=n_max {
        let mut idx = vec![0usize; n];
        'outer: loop {
            assignments.push(DegreeAssignment::with_cap(idx.iter().map(|&i| degs[i]).collect(), config.degree_cap)?);
            let mut i = n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < degs.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
    let work = |d: &DegreeAssignment| -> u64 {
        let fact: u64 = (1..=d.n() as u64).product();
        [a, b]
            .iter()
            .map(|alg| d.degs.iter().fold(fact, |acc, &g| acc.saturating_mul(alg.component(g).len() as u64)))
            .max()
            .unwrap_or(0)
    };
    let (run, skipped): (Vec<_>, Vec<_>) = assignments.into_iter().partition(|d| work(d) <= config.budget);
    let results = run
        .par_iter()
        .map(|d| -> Result<AssignmentResult> {
            let sa = identity_space_over(&[a], d, &field)?;
            let sb = identity_space_over(&[b], d, &field)?;
            let separating = sa.first_outside(&sb);
            Ok(AssignmentResult {
                assignment: d.clone(),
                dim_a: sa.dim(),
                dim_b: sb.dim(),
                contained: separating.is_none(),
                separating,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContainmentReport { n_max, contained: results.iter().all(|r| r.contained), results, skipped })
}
