//! Finite-dimensional graded algebras with a monomial basis: the product of
//! two basis elements is zero or a root of unity times a basis element.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{CycloField, CycloNumber};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Interface shared by twisted group algebras and graded matrix algebras.
pub trait GradedAlgebra: Send + Sync {
    fn ambient(&self) -> &Arc<FiniteGroup>;
    fn field(&self) -> &Arc<CycloField>;
    fn dim(&self) -> usize;
    /// Degree (an ambient group element) of basis element `b`.
    fn degree(&self, b: usize) -> usize;
    /// `b_a * b_b = zeta^e b_c` as `Some((c, e))` with `zeta` a primitive
    /// `phase_modulus()`-th root of unity, or `None` when the product is zero.
    fn basis_product(&self, a: usize, b: usize) -> Option<(usize, u64)>;
    fn phase_modulus(&self) -> u64;
    /// Unit as `(basis index, exponent)` pairs.
    fn unit_terms(&self) -> Vec<(usize, u64)>;
    fn basis_label(&self, b: usize) -> String;
    /// Structural fingerprint; elements of different algebras never mix.
    fn key(&self) -> u64;

    fn zero(&self) -> Element {
        Element { key: self.key(), field: self.field().clone(), terms: BTreeMap::new() }
    }

    fn basis_element(&self, b: usize) -> Element {
        let mut x = self.zero();
        x.terms.insert(b, self.field().one());
        x
    }

    fn unit(&self) -> Element {
        let mut x = self.zero();
        for (b, e) in self.unit_terms() {
            x.terms.insert(b, self.phase(e));
        }
        x
    }

    /// `zeta^e` for `zeta` of order `phase_modulus()`.
    fn phase(&self, e: u64) -> CycloNumber {
        self.field().root_of_unity_at(e as i64, self.phase_modulus()).expect("field contains the phase roots")
    }

    fn element(&self, terms: impl IntoIterator<Item = (usize, CycloNumber)>) -> Result<Element>
    where
        Self: Sized,
    {
        let mut x = self.zero();
        for (b, c) in terms {
            if b >= self.dim() {
                return Err(Error::IndexOutOfRange(format!("basis index {b} (dim {})", self.dim())));
            }
            if c.field() != self.field() {
                return Err(Error::FieldMismatch(c.field().modulus(), self.field().modulus()));
            }
            x.add_term(b, c);
        }
        Ok(x)
    }

    fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for (&a, ca) in &x.terms {
            for (&b, cb) in &y.terms {
                if let Some((c, e)) = self.basis_product(a, b) {
                    let coeff = &(ca * cb) * &self.phase(e);
                    out.add_term(c, coeff);
                }
            }
        }
        Ok(out)
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.key != self.key() {
            return Err(Error::AlgebraMismatch("element belongs to another algebra".into()));
        }
        Ok(())
    }

    /// Degree of a nonzero homogeneous element.
    fn homogeneous_degree(&self, x: &Element) -> Result<usize> {
        self.check(x)?;
        let mut degs = x.terms.keys().map(|&b| self.degree(b));
        let d = degs.next().ok_or(Error::ZeroElement)?;
        if degs.all(|e| e == d) {
            Ok(d)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Sorted set of degrees carrying a basis element.
    fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.dim()).map(|b| self.degree(b)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Basis elements of degree `g`.
    fn component(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.degree(b) == g).collect()
    }
}

/// Element of a graded algebra, sparse over the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    key: u64,
    field: Arc<CycloField>,
    terms: BTreeMap<usize, CycloNumber>,
}

impl Element {
    pub fn terms(&self) -> &BTreeMap<usize, CycloNumber> {
        &self.terms
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeff(&self, b: usize) -> CycloNumber {
        self.terms.get(&b).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, b: usize, c: CycloNumber) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.key != other.key {
            return Err(Error::AlgebraMismatch("cannot add elements of different algebras".into()));
        }
        let mut out = self.clone();
        for (&b, c) in &other.terms {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (&b, x) in &self.terms {
            out.add_term(b, x * c);
        }
        out
    }
}

pub(crate) fn fingerprint(parts: &impl std::hash::Hash) -> u64 {
    use std::hash::{DefaultHasher, Hasher};
    let mut h = DefaultHasher::new();
    parts.hash(&mut h);
    h.finish()
}

/// Checks `deg(ab) = deg(a) deg(b)` on every nonzero product of basis elements.
pub fn verify_grading<A: GradedAlgebra + ?Sized>(alg: &A) -> bool {
    let g = alg.ambient();
    (0..alg.dim()).all(|a| {
        (0..alg.dim()).all(|b| match alg.basis_product(a, b) {
            Some((c, _)) => alg.degree(c) == g.mul(alg.degree(a), alg.degree(b)),
            None => true,
        })
    })
}

/// Division-grading test: the support is a subgroup, every homogeneous
/// component is one-dimensional (over an algebraically closed field the
/// neutral component of a division graded algebra is the field itself) and
/// each basis element acts bijectively by left multiplication.
pub fn is_division_graded<A: GradedAlgebra + ?Sized>(alg: &A) -> bool {
    let g = alg.ambient();
    let support = alg.support();
    let closed = support.contains(&0)
        && support.iter().all(|&x| support.iter().all(|&y| support.binary_search(&g.mul(x, y)).is_ok()));
    if !closed || support.len() != alg.dim() {
        return false;
    }
    (0..alg.dim()).all(|a| {
        let mut hit = vec![false; alg.dim()];
        (0..alg.dim()).all(|b| match alg.basis_product(a, b) {
            Some((c, _)) => !std::mem::replace(&mut hit[c], true),
            None => false,
        })
    })
}
