//! Basis-indexed linear maps between graded algebras and their verification.

use std::sync::Arc;

use num_integer::Integer;

use crate::algebra::GradedAlgebra;
use crate::cyclo::{CycloField, CycloNumber};
use crate::error::{Error, Result};
use crate::linalg::rank;

/// Map sending basis element `a` to `zeta^e * b_t` (`images[a] = Some((t, e))`,
/// `zeta` of order `modulus`) or to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub images: Vec<Option<(usize, u64)>>,
    pub modulus: u64,
}

/// General map: `images[a]` lists `(basis index, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub field: Arc<CycloField>,
    pub images: Vec<Vec<(usize, CycloNumber)>>,
}

impl MonomialMap {
    pub fn identity(dim: usize) -> Self {
        Self { images: (0..dim).map(|a| Some((a, 0))).collect(), modulus: 1 }
    }

    pub fn zero(dim: usize) -> Self {
        Self { images: vec![None; dim], modulus: 1 }
    }

    pub fn with_modulus(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.modulus) {
            return Err(Error::Validation(format!("modulus {} does not divide {m}", self.modulus)));
        }
        let f = m / self.modulus;
        Ok(Self { images: self.images.iter().map(|i| i.map(|(t, e)| (t, e * f))).collect(), modulus: m })
    }

    /// `other` after `self`.
    pub fn then(&self, other: &MonomialMap) -> Result<Self> {
        let m = self.modulus.lcm(&other.modulus);
        let (a, b) = (self.with_modulus(m)?, other.with_modulus(m)?);
        let images = a
            .images
            .iter()
            .map(|img| {
                let (t, e) = (*img)?;
                let (u, f) = (*b.images.get(t)?)?;
                Some((u, (e + f) % m))
            })
            .collect();
        Ok(Self { images, modulus: m })
    }

    /// Inverse of a bijective monomial map on `dim` basis elements.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.images.len();
        let mut inv = vec![None; n];
        for (a, img) in self.images.iter().enumerate() {
            let (t, e) = img.ok_or_else(|| Error::Validation("map is not injective".into()))?;
            if t >= n || inv[t].is_some() {
                return Err(Error::Validation("map is not bijective".into()));
            }
            inv[t] = Some((a, (self.modulus - e) % self.modulus));
        }
        Ok(Self { images: inv, modulus: self.modulus })
    }

    pub fn to_linear(&self, field: &Arc<CycloField>) -> Result<LinearMap> {
        let images = self
            .images
            .iter()
            .map(|img| match img {
                Some((t, e)) => Ok(vec![(*t, field.root_of_unity_at(*e as i64, self.modulus)?)]),
                None => Ok(vec![]),
            })
            .collect::<Result<_>>()?;
        Ok(LinearMap { field: field.clone(), images })
    }
}

/// Exact check that a monomial map is an injective, degree-preserving
/// algebra homomorphism, by exponent arithmetic only.
pub fn verify_monomial_monomorphism<A, B>(map: &MonomialMap, a: &A, b: &B) -> bool
where
    A: GradedAlgebra + ?Sized,
    B: GradedAlgebra + ?Sized,
{
    if map.images.len() != a.dim() || *a.ambient() != *b.ambient() {
        return false;
    }
    let m = map.modulus.lcm(&a.phase_modulus()).lcm(&b.phase_modulus());
    let Ok(map) = map.with_modulus(m) else { return false };
    let (fa, fb) = (m / a.phase_modulus(), m / b.phase_modulus());
    let mut hit = vec![false; b.dim()];
    for (x, img) in map.images.iter().enumerate() {
        let Some((t, _)) = *img else { return false };
        if t >= b.dim() || std::mem::replace(&mut hit[t], true) || b.degree(t) != a.degree(x) {
            return false;
        }
    }
    let img = |x: usize| map.images[x].unwrap();
    for x in 0..a.dim() {
        let (tx, ex) = img(x);
        for y in 0..a.dim() {
            let (ty, ey) = img(y);
            let lhs = a.basis_product(x, y).map(|(c, p)| {
                let (tc, ec) = img(c);
                (tc, (p * fa + ec) % m)
            });
            let rhs = b.basis_product(tx, ty).map(|(c, q)| (c, (q * fb + ex + ey) % m));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn verify_monomial_isomorphism<A, B>(map: &MonomialMap, a: &A, b: &B) -> bool
where
    A: GradedAlgebra + ?Sized,
    B: GradedAlgebra + ?Sized,
{
    a.dim() == b.dim() && verify_monomial_monomorphism(map, a, b)
}

fn image_vector<B: GradedAlgebra + ?Sized>(
    b: &B,
    terms: &[(usize, CycloNumber)],
    field: &Arc<CycloField>,
) -> Vec<CycloNumber> {
    let mut v = vec![field.zero(); b.dim()];
    for (t, c) in terms {
        v[*t] = &v[*t] + c;
    }
    v
}

/// Product in `b` of two coefficient vectors, with scalars in `field`.
fn multiply_vectors<B: GradedAlgebra + ?Sized>(
    b: &B,
    x: &[CycloNumber],
    y: &[CycloNumber],
    field: &Arc<CycloField>,
) -> Result<Vec<CycloNumber>> {
    let mut out = vec![field.zero(); b.dim()];
    for (s, cs) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (t, ct) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if let Some((u, e)) = b.basis_product(s, t) {
                let ph = field.root_of_unity_at(e as i64, b.phase_modulus())?;
                out[u] = &out[u] + &(&(cs * ct) * &ph);
            }
        }
    }
    Ok(out)
}

/// Exact check that the linear extension of `map` is multiplicative on all
/// basis pairs, sends each basis element to a homogeneous element of the
/// same degree, and is injective.
pub fn verify_graded_monomorphism<A, B>(map: &LinearMap, a: &A, b: &B) -> bool
where
    A: GradedAlgebra + ?Sized,
    B: GradedAlgebra + ?Sized,
{
    check_linear(map, a, b).unwrap_or(false)
}

/// Monomorphism between algebras of equal dimension.
pub fn verify_graded_isomorphism<A, B>(map: &LinearMap, a: &A, b: &B) -> bool
where
    A: GradedAlgebra + ?Sized,
    B: GradedAlgebra + ?Sized,
{
    a.dim() == b.dim() && verify_graded_monomorphism(map, a, b)
}

fn check_linear<A, B>(map: &LinearMap, a: &A, b: &B) -> Result<bool>
where
    A: GradedAlgebra + ?Sized,
    B: GradedAlgebra + ?Sized,
{
    let field = &map.field;
    if map.images.len() != a.dim() || *a.ambient() != *b.ambient() {
        return Ok(false);
    }
    if !field.modulus().is_multiple_of(a.phase_modulus()) || !field.modulus().is_multiple_of(b.phase_modulus()) {
        return Ok(false);
    }
    for (x, terms) in map.images.iter().enumerate() {
        for (t, c) in terms {
            if *t >= b.dim() || c.field() != field {
                return Ok(false);
            }
            if !c.is_zero() && b.degree(*t) != a.degree(x) {
                return Ok(false);
            }
        }
    }
    let vecs: Vec<Vec<CycloNumber>> = map.images.iter().map(|t| image_vector(b, t, field)).collect();
    if rank(vecs.clone()) != a.dim() {
        return Ok(false);
    }
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let lhs = match a.basis_product(x, y) {
                Some((c, p)) => {
                    let ph = field.root_of_unity_at(p as i64, a.phase_modulus())?;
                    vecs[c].iter().map(|v| v * &ph).collect()
                }
                None => vec![field.zero(); b.dim()],
            };
            if lhs != multiply_vectors(b, &vecs[x], &vecs[y], field)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
