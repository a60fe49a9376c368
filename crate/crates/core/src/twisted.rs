//! Twisted group algebras `F^sigma[H]`, graded by the ambient group.
//!
//! Basis element `eta_h` has index `position(h)` in the sorted subgroup and
//! `eta_x eta_y = sigma(x, y) eta_(xy)`.

use std::sync::Arc;

use crate::algebra::{fingerprint, Element, GradedAlgebra};
use crate::cohomology::{is_cocycle, ExpCocycle};
use crate::cyclo::CycloField;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    sigma: ExpCocycle,
    field: Arc<CycloField>,
    /// products in member positions
    mul: Vec<usize>,
    key: u64,
}

impl PartialEq for TwistedGroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.field == other.field
    }
}

impl TwistedGroupAlgebra {
    /// Algebra over `Q(zeta_M)`, `M` the cocycle modulus.
    pub fn new(sigma: ExpCocycle) -> Result<Self> {
        let field = CycloField::new(sigma.modulus());
        Self::with_field(sigma, field)
    }

    pub fn with_field(sigma: ExpCocycle, field: Arc<CycloField>) -> Result<Self> {
        if !is_cocycle(&sigma) {
            return Err(Error::NotACocycle("twisting table fails the cocycle identity".into()));
        }
        if !field.modulus().is_multiple_of(sigma.modulus()) {
            return Err(Error::Validation(format!(
                "field Q(zeta_{}) does not contain the cocycle values (modulus {})",
                field.modulus(),
                sigma.modulus()
            )));
        }
        let g = sigma.group().clone();
        let h = sigma.subgroup().clone();
        let mul = h
            .members()
            .iter()
            .flat_map(|&a| h.members().iter().map(|&b| h.position(g.mul(a, b)).unwrap()).collect::<Vec<_>>())
            .collect();
        let key =
            fingerprint(&("tga", g.name(), g.table(), h.members(), sigma.modulus(), sigma.matrix(), field.modulus()));
        Ok(Self { sigma, field, mul, key })
    }

    /// Untwisted group algebra `F[H]`.
    pub fn untwisted(group: Arc<FiniteGroup>, subgroup: Subgroup) -> Result<Self> {
        Self::new(ExpCocycle::trivial(group, subgroup, 1))
    }

    pub fn sigma(&self) -> &ExpCocycle {
        &self.sigma
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.sigma.subgroup()
    }

    /// Same algebra over a larger cyclotomic field.
    pub fn over_field(&self, field: Arc<CycloField>) -> Result<Self> {
        Self::with_field(self.sigma.clone(), field)
    }

    /// `eta_h` for an element `h` of the subgroup.
    pub fn eta(&self, h: usize) -> Result<Element> {
        let p = self
            .subgroup()
            .position(h)
            .ok_or_else(|| Error::IndexOutOfRange(format!("element {h} is not in the subgroup")))?;
        Ok(self.basis_element(p))
    }

    #[inline]
    pub(crate) fn mul_pos(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.subgroup().len() + j]
    }

    /// Inverse of a nonzero homogeneous element `c eta_x`:
    /// `c^-1 sigma(x, x^-1)^-1 sigma(e, e)^-1 eta_(x^-1)`.
    pub fn homogeneous_inverse(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if x.terms().len() != 1 {
            return Err(Error::NotHomogeneous);
        }
        let (&p, c) = x.terms().iter().next().unwrap();
        let h = self.subgroup();
        let xi = h.members()[p];
        let q = h.position(self.ambient().inv(xi)).unwrap();
        let m = self.sigma.modulus();
        let e = (2 * m - self.sigma.get_pos(p, q) - self.sigma.get_pos(0, 0)) % m;
        let coeff = &c.inv()? * &self.phase(e);
        self.element([(q, coeff)])
    }
}

impl GradedAlgebra for TwistedGroupAlgebra {
    fn ambient(&self) -> &Arc<FiniteGroup> {
        self.sigma.group()
    }

    fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    fn dim(&self) -> usize {
        self.subgroup().len()
    }

    fn degree(&self, b: usize) -> usize {
        self.subgroup().members()[b]
    }

    fn basis_product(&self, a: usize, b: usize) -> Option<(usize, u64)> {
        Some((self.mul_pos(a, b), self.sigma.get_pos(a, b)))
    }

    fn phase_modulus(&self) -> u64 {
        self.sigma.modulus()
    }

    fn unit_terms(&self) -> Vec<(usize, u64)> {
        let m = self.sigma.modulus();
        vec![(0, (m - self.sigma.get_pos(0, 0)) % m)]
    }

    fn basis_label(&self, b: usize) -> String {
        format!("eta[{}]", self.ambient().label(self.degree(b)))
    }

    fn key(&self) -> u64 {
        self.key
    }
}
