//! Arithmetic in F_{p^r}, represented as polynomials over Z_p modulo a monic
//! irreducible polynomial.
//!
//! Elements are identified by their index `Σ coeffs[i]·p^i`, so index 0 is
//! zero, index 1 is one, and enumeration order is lexicographic in the
//! coefficient vector (highest-degree coefficient most significant).
//! [`Field`] precomputes discrete log/antilog tables over a primitive element
//! so the exhaustive tests elsewhere in the crate run on table lookups.

mod defaults;
pub(crate) mod zp_poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use defaults::default_modulus;

/// Largest field order the crate will build tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX_Q: u32 = 1024;

/// Parameters of F_{p^r}: the characteristic, the degree and the modulus.
///
/// Construction validates that `p` is an odd prime, that the modulus is monic
/// of degree exactly `r` with coefficients in `[0, p)`, and that it is
/// irreducible over Z_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec", into = "RawFieldSpec")]
pub struct FieldSpec {
    p: u32,
    r: u32,
    modulus: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawFieldSpec {
    p: u32,
    r: u32,
    modulus: Vec<u32>,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawFieldSpec) -> Result<Self> {
        FieldSpec::new(raw.p, raw.r, raw.modulus)
    }
}

impl From<FieldSpec> for RawFieldSpec {
    fn from(spec: FieldSpec) -> Self {
        RawFieldSpec {
            p: spec.p,
            r: spec.r,
            modulus: spec.modulus,
        }
    }
}

fn check_characteristic(p: u32, r: u32) -> Result<()> {
    if !zp_poly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    match (p as u64).checked_pow(r) {
        Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(Error::FieldTooLarge {
            p,
            r,
            max: MAX_FIELD_ORDER,
        }),
    }
}

impl FieldSpec {
    /// Validates and builds a spec. `modulus` lists `c_0..c_r`, lowest first.
    pub fn new(p: u32, r: u32, modulus: Vec<u32>) -> Result<Self> {
        check_characteristic(p, r)?;
        if modulus.len() != r as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients for degree {r}, found {}",
                r + 1,
                modulus.len()
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficient {c} is not reduced modulo {p}"
            )));
        }
        if modulus[r as usize] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if !zp_poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        Ok(FieldSpec { p, r, modulus })
    }

    /// The spec with the built-in modulus for `(p, r)`.
    pub fn with_default_modulus(p: u32, r: u32) -> Result<Self> {
        check_characteristic(p, r)?;
        FieldSpec::new(p, r, default_modulus(p, r))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.r)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Alltop functions need `p >= 5`; characteristic 3 fields are accepted
    /// (planar tests are meaningful there) but flagged through this method.
    pub fn supports_alltop(&self) -> bool {
        self.p >= 5
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod [", self.p, self.r)?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

struct FieldInner {
    spec: FieldSpec,
    q: u32,
    /// p^i for i in 0..r
    place: Vec<u32>,
    /// exp[k] = g^k for the primitive element g, k in 0..q-1
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] is unused
    log: Vec<u32>,
    neg: Vec<u32>,
    trace: Vec<u32>,
    add: Option<Vec<u16>>,
    primitive: u32,
}

/// A finite field with precomputed arithmetic tables. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("spec", &self.inner.spec)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Field {
        let p = spec.p;
        let r = spec.r as usize;
        let q = spec.q();
        let modulus = spec.modulus.clone();
        let place: Vec<u32> = (0..r).map(|i| p.pow(i as u32)).collect();

        let to_poly =
            |idx: u32| -> Vec<u32> { zp_poly::trim((0..r).map(|i| idx / place[i] % p).collect()) };
        let to_index = |poly: &[u32]| -> u32 { poly.iter().zip(&place).map(|(c, w)| c * w).sum() };

        let order = q as u64 - 1;
        let factors = zp_poly::prime_factors(order);
        let primitive = (1..q)
            .find(|&cand| {
                let g = to_poly(cand);
                factors
                    .iter()
                    .all(|&l| zp_poly::pow_mod_poly(&g, order / l, &modulus, p) != vec![1])
            })
            .expect("an irreducible modulus always yields a primitive element");

        let g = to_poly(primitive);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for k in 0..order as u32 {
            let idx = to_index(&cur);
            exp.push(idx);
            log[idx as usize] = k;
            cur = zp_poly::mul_mod(&cur, &g, &modulus, p);
        }

        let digit_add = |a: u32, b: u32| -> u32 {
            place
                .iter()
                .map(|&w| ((a / w % p + b / w % p) % p) * w)
                .sum()
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| place.iter().map(|&w| ((p - a / w % p) % p) * w).sum())
            .collect();
        let add = (q <= ADD_TABLE_MAX_Q).then(|| {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(digit_add(a, b) as u16);
                }
            }
            t
        });

        let mut inner = FieldInner {
            spec,
            q,
            place,
            exp,
            log,
            neg,
            trace: Vec::new(),
            add,
            primitive,
        };
        let trace: Vec<u32> = (0..q).map(|x| compute_trace(&inner, x)).collect();
        inner.trace = trace;
        Field {
            inner: Arc::new(inner),
        }
    }

    pub fn from_parts(p: u32, r: u32, modulus: Vec<u32>) -> Result<Field> {
        Ok(Field::new(FieldSpec::new(p, r, modulus)?))
    }

    pub fn with_default_modulus(p: u32, r: u32) -> Result<Field> {
        Ok(Field::new(FieldSpec::with_default_modulus(p, r)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.inner.spec
    }

    pub fn p(&self) -> u32 {
        self.inner.spec.p
    }

    pub fn r(&self) -> u32 {
        self.inner.spec.r
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn same_field(&self, other: &Field) -> bool {
        self == other
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of the indeterminate, i.e. the root of the modulus.
    pub fn alpha(&self) -> FieldElement {
        if self.r() == 1 {
            let c0 = self.inner.spec.modulus[0];
            self.wrap((self.p() - c0) % self.p())
        } else {
            self.wrap(self.p())
        }
    }

    /// The generator of the multiplicative group used for the log tables
    /// (the smallest-index primitive element).
    pub fn primitive_element(&self) -> FieldElement {
        self.wrap(self.inner.primitive)
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.q() {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                q: self.q() as u64,
            });
        }
        Ok(self.wrap(index))
    }

    /// Builds an element from polynomial-basis coordinates, lowest degree
    /// first. Coordinates are reduced modulo p; missing ones are zero.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.r() as usize {
            return Err(Error::Malformed(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.r()
            )));
        }
        let p = self.p() as i64;
        let idx = coeffs
            .iter()
            .zip(&self.inner.place)
            .map(|(&c, &w)| c.rem_euclid(p) as u32 * w)
            .sum();
        Ok(self.wrap(idx))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(n.rem_euclid(self.p() as i64) as u32)
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q()).map(move |i| self.wrap(i))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q()).map(move |i| self.wrap(i))
    }

    pub(crate) fn wrap(&self, index: u32) -> FieldElement {
        debug_assert!(index < self.q());
        FieldElement {
            field: self.clone(),
            index,
        }
    }

    /// Coordinates of the element with the given index.
    pub fn coeffs_of(&self, index: u32) -> Vec<u32> {
        let p = self.p();
        self.inner.place.iter().map(|&w| index / w % p).collect()
    }

    // Index-level arithmetic. These are the hot paths of every exhaustive
    // test; callers guarantee indices are below q.

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        match &inner.add {
            Some(t) => t[(a * inner.q + b) as usize] as u32,
            None => {
                let p = inner.spec.p;
                inner
                    .place
                    .iter()
                    .map(|&w| ((a / w % p + b / w % p) % p) * w)
                    .sum()
            }
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let k = (inner.log[a as usize] as u64 + inner.log[b as usize] as u64) % order as u64;
        inner.exp[k as usize]
    }

    /// `a^e` with the convention `0^0 = 1`.
    #[inline]
    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        pow_in(&self.inner, a, e)
    }

    /// Inverse of a nonzero element; `None` for zero.
    #[inline]
    pub fn inv_idx(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        let k = (order - inner.log[a as usize]) % order;
        Some(inner.exp[k as usize])
    }

    /// Absolute trace as an integer in `[0, p)`.
    #[inline]
    pub fn trace_idx(&self, a: u32) -> u32 {
        self.inner.trace[a as usize]
    }

    /// `x^(p^k)`.
    #[inline]
    pub fn frobenius_idx(&self, a: u32, k: u32) -> u32 {
        self.pow_idx(a, (self.p() as u64).pow(k))
    }

    /// The full trace table in index order.
    pub fn trace_table(&self) -> &[u32] {
        &self.inner.trace
    }

    /// Both square roots of `c` (smaller index first), `[0]` for zero and an
    /// empty vector for a non-square. Exhaustive search.
    pub fn sqrt(&self, c: &FieldElement) -> Result<Vec<FieldElement>> {
        self.check(c)?;
        let roots: Vec<FieldElement> = (0..self.q())
            .filter(|&x| self.mul_idx(x, x) == c.index)
            .map(|x| self.wrap(x))
            .collect();
        Ok(roots)
    }

    pub(crate) fn check(&self, e: &FieldElement) -> Result<()> {
        if self == &e.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

fn pow_in(inner: &FieldInner, a: u32, e: u64) -> u32 {
    if e == 0 {
        return 1;
    }
    if a == 0 {
        return 0;
    }
    let order = (inner.q - 1) as u64;
    let k = (inner.log[a as usize] as u64 % order) * (e % order) % order;
    inner.exp[k as usize]
}

fn compute_trace(inner: &FieldInner, x: u32) -> u32 {
    let p = inner.spec.p;
    let mut acc = 0u32;
    let mut term = x;
    for _ in 0..inner.spec.r {
        acc = inner
            .place
            .iter()
            .map(|&w| ((acc / w % p + term / w % p) % p) * w)
            .sum();
        term = pow_in(inner, term, p as u64);
    }
    assert!(acc < p, "trace left the prime subfield");
    acc
}

/// An element of a [`Field`]. Equality requires the same field.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    index: u32,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.spec().hash(state);
        self.index.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Polynomial-basis coordinates, lowest degree first.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs_of(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// True for elements of the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.index < self.field.p()
    }

    fn binary(&self, rhs: &FieldElement, op: impl Fn(&Field, u32, u32) -> u32) -> Result<Self> {
        self.field.check(rhs)?;
        Ok(self.field.wrap(op(&self.field, self.index, rhs.index)))
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<Self> {
        self.binary(rhs, Field::add_idx)
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<Self> {
        self.binary(rhs, Field::sub_idx)
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<Self> {
        self.binary(rhs, Field::mul_idx)
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<Self> {
        self.field.check(rhs)?;
        let inv = rhs.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv_idx(self.index)
            .map(|i| self.field.wrap(i))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        self.field.wrap(self.field.pow_idx(self.index, e))
    }

    /// `x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p() as u64)
    }

    /// Absolute trace Σ x^(p^i), as an integer in `[0, p)`.
    pub fn trace(&self) -> u32 {
        self.field.trace_idx(self.index)
    }

    /// Square roots of `self`; see [`Field::sqrt`].
    pub fn sqrt(&self) -> Vec<FieldElement> {
        self.field.sqrt(self).expect("same field")
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Prime-subfield elements print as integers, others as coordinate tuples
/// `[c0,c1,...]`; both forms are accepted by the polynomial literal parser.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_subfield() {
            write!(f, "{}", self.index)
        } else {
            let c = self.coeffs();
            write!(f, "[")?;
            for (i, v) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")
        }
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }

        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self)
                    .$checked(&rhs)
                    .expect("operands from different fields")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.neg_idx(self.index))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}
