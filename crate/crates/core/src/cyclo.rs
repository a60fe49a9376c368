//! Exact arithmetic in the cyclotomic field `Q(zeta_M)`.
//!
//! Numbers are coefficient vectors of length `phi(M)` modulo the cyclotomic
//! polynomial, with arbitrary-precision rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
#[cfg(test)]
use num_traits::Signed;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Integer coefficients (constant term first) of the `m`-th cyclotomic
/// polynomial, from `x^m - 1 = prod_{d | m} Phi_d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut num: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

#[derive(Debug)]
pub struct CycloField {
    modulus: u64,
    phi: usize,
    min_poly: Vec<BigInt>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for CycloField {}

impl CycloField {
    pub fn new(modulus: u64) -> Arc<Self> {
        assert!(modulus >= 1, "cyclotomic field needs modulus >= 1");
        let min_poly = cyclotomic_polynomial(modulus);
        Arc::new(Self { modulus, phi: min_poly.len() - 1, min_poly })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn zero(self: &Arc<Self>) -> CycloNumber {
        CycloNumber { field: self.clone(), coeffs: vec![BigRational::zero(); self.phi] }
    }

    pub fn one(self: &Arc<Self>) -> CycloNumber {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CycloNumber {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(self: &Arc<Self>, q: BigRational) -> CycloNumber {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    /// `zeta_M^k`, `k` reduced modulo `M`.
    pub fn root_of_unity(self: &Arc<Self>, k: i64) -> CycloNumber {
        let m = self.modulus as i64;
        let k = k.rem_euclid(m) as usize;
        let mut poly = vec![BigRational::zero(); k.max(self.phi) + 1];
        poly[k] = BigRational::one();
        CycloNumber { field: self.clone(), coeffs: self.reduce(poly) }
    }

    /// `zeta_n^k` for a modulus `n` dividing the field modulus.
    pub fn root_of_unity_at(self: &Arc<Self>, k: i64, n: u64) -> Result<CycloNumber> {
        if n == 0 || !self.modulus.is_multiple_of(n) {
            return Err(Error::FieldMismatch(self.modulus, n));
        }
        Ok(self.root_of_unity(k.rem_euclid(n as i64) * (self.modulus / n) as i64))
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<BigRational>) -> CycloNumber {
        CycloNumber { field: self.clone(), coeffs: self.reduce(coeffs) }
    }

    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let phi = self.phi;
        if poly.len() > phi {
            for d in (phi..poly.len()).rev() {
                let c = std::mem::take(&mut poly[d]);
                if c.is_zero() {
                    continue;
                }
                for (i, p) in self.min_poly[..phi].iter().enumerate() {
                    if !p.is_zero() {
                        poly[d - phi + i] -= &c * BigRational::from_integer(p.clone());
                    }
                }
            }
            poly.truncate(phi);
        }
        poly.resize(phi, BigRational::zero());
        poly
    }
}

#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.modulus == other.field.modulus && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z{}", self.field.modulus)?,
                _ => write!(f, "({c})z{}^{i}", self.field.modulus)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycloNumber {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field.modulus != other.field.modulus {
            return Err(Error::FieldMismatch(self.field.modulus, other.field.modulus));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let phi = self.field.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self { field: self.field.clone(), coeffs: self.field.reduce(prod) })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nonconst = self.coeffs.iter().skip(1).any(|c| !c.is_zero());
        if !nonconst {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let modulus: Vec<BigRational> =
            self.field.min_poly.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        // invariant: s * a == r (mod Phi)
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while r1.len() != 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd is not constant; impossible for a nonzero element of a field
                return Err(Error::DivisionByZero);
            }
        }
        let c = r1[0].recip();
        let coeffs = s1.into_iter().map(|x| x * &c).collect();
        Ok(self.field.from_coeffs(coeffs))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// If this number equals `zeta_M^k`, returns `k`.
    pub fn as_root_of_unity(&self) -> Option<u64> {
        (0..self.field.modulus).find(|&k| self.field.root_of_unity(k as i64) == *self)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    (trim(q), trim(rem))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            /// Panics if the operands live in different fields.
            fn $m(self, rhs: &CycloNumber) -> CycloNumber {
                self.$f(rhs).expect("cyclotomic field mismatch")
            }
        }
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $m(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$f(&rhs).expect("cyclotomic field mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

/// Renders a rational as the `["num","den"]` pair used by the JSON format.
pub fn rational_to_pair(q: &BigRational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

pub fn rational_from_pair(p: &[String; 2]) -> Result<BigRational> {
    let n: BigInt = p[0].parse().map_err(|_| Error::Parse(format!("bad integer `{}`", p[0])))?;
    let d: BigInt = p[1].parse().map_err(|_| Error::Parse(format!("bad integer `{}`", p[1])))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
fn is_monic(p: &[BigInt]) -> bool {
    p.last().is_some_and(|c| c.is_one() && !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        for m in 1..=40u64 {
            let p = cyclotomic_polynomial(m);
            assert!(is_monic(&p));
            assert_eq!(p.len() as u64 - 1, euler_phi(m), "m = {m}");
        }
    }

    #[test]
    fn numeric_sanity_of_min_poly() {
        for m in 1..=24u64 {
            let p = cyclotomic_polynomial(m);
            let theta = 2.0 * std::f64::consts::PI / m as f64;
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for (k, c) in p.iter().enumerate() {
                let c: f64 = c.to_string().parse().unwrap();
                re += c * (theta * k as f64).cos();
                im += c * (theta * k as f64).sin();
            }
            assert!(re.abs() < 1e-9 && im.abs() < 1e-9, "m = {m}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f = CycloField::new(4);
        let z = f.root_of_unity(1);
        assert_eq!(&z * &z, f.from_int(-1));
        let f3 = CycloField::new(3);
        let z = f3.root_of_unity(1);
        assert!((f3.one() + z.clone() + &z * &z).is_zero());
        assert_eq!(CycloField::new(2).root_of_unity(1), CycloField::new(2).from_int(-1));
        assert!(f.root_of_unity(0).is_one());
        assert_eq!(z.inv().unwrap(), f3.root_of_unity(2));
    }

    #[test]
    fn mismatched_fields_error() {
        let a = CycloField::new(4).one();
        let b = CycloField::new(3).one();
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch(4, 3)));
        assert_eq!(CycloField::new(5).zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn root_of_unity_laws_exhaustive() {
        for m in 1..=24u64 {
            let f = CycloField::new(m);
            let roots: Vec<_> = (0..m as i64).map(|k| f.root_of_unity(k)).collect();
            for (k, r) in roots.iter().enumerate() {
                assert!(r.pow(m).is_one());
                assert_eq!(r.inv().unwrap(), f.root_of_unity(m as i64 - k as i64));
                for (j, s) in roots.iter().enumerate() {
                    assert_eq!((k == j), (r == s));
                    assert_eq!(r * s, roots[(k + j) % m as usize]);
                }
            }
        }
    }

    #[test]
    fn random_field_axioms() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..200 {
            let m = [3u64, 4, 5, 8, 12, 16][trial % 6];
            let f = CycloField::new(m);
            let mut rand_num = || {
                let coeffs = (0..f.degree())
                    .map(|_| BigRational::new(rng.gen_range(-9..10).into(), rng.gen_range(1..6).into()))
                    .collect();
                f.from_coeffs(coeffs)
            };
            let (a, b, c) = (rand_num(), rand_num(), rand_num());
            if !a.is_zero() {
                assert!((&a * &a.inv().unwrap()).is_one());
            }
            assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
