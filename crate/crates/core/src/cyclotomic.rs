//! Exact arithmetic in Z[ω], ω = e^(2πi/p), modulo the p-th cyclotomic
//! polynomial `1 + ω + ... + ω^(p-1)`.
//!
//! A [`CycInt`] stores `c_0 + c_1·ω + ... + c_{p-2}·ω^(p-2)`; the relation
//! `ω^(p-1) = -(1 + ω + ... + ω^(p-2))` keeps this form canonical, so
//! equality of values is equality of coefficient vectors.
//!
//! Note on conventions: the additive character is `χ(x) = ω^tr(x)` with the
//! p-th root of unity. A 2p-th root `e^(iπ/p)` would not give a character of
//! (F_q, +), and the unbiasedness arguments depend on it being one.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::fn_algebra::PolyFn;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "root order must be at least 2");
        CycInt {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    /// `ω^k`.
    pub fn root_power(p: u32, k: u64) -> Self {
        let mut counts = vec![0u64; p as usize];
        counts[(k % p as u64) as usize] = 1;
        Self::from_exponent_counts(&counts)
    }

    /// `Σ_t counts[t]·ω^t`, `counts` of length p.
    pub fn from_exponent_counts(counts: &[u64]) -> Self {
        Self::from_unreduced(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Reduces a length-p vector of coefficients of `1, ω, ..., ω^(p-1)`.
    fn from_unreduced(mut full: Vec<BigInt>) -> Self {
        let p = full.len() as u32;
        let top = full.pop().expect("p >= 2");
        for c in &mut full {
            *c -= &top;
        }
        CycInt { p, coeffs: full }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients of `1, ω, ..., ω^(p-2)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(n)` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                full[(i + j) % p] += a * b;
            }
        }
        Ok(Self::from_unreduced(full))
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> CycInt {
        let k = k.into();
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
    }

    pub fn neg(&self) -> CycInt {
        self.scale(-1)
    }

    /// Complex conjugation, `ω^k ↦ ω^(p-k)`.
    pub fn conj(&self) -> CycInt {
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (k, c) in self.coeffs.iter().enumerate() {
            full[(p - k) % p] += c;
        }
        Self::from_unreduced(full)
    }

    /// `z·conj(z)`, the squared complex magnitude.
    pub fn norm_sq(&self) -> CycInt {
        self.mul(&self.conj()).expect("same order")
    }

    /// Floating-point value, for display and the approximate paths.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        use num_traits::ToPrimitive;
        let step = std::f64::consts::TAU / self.p as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                num_complex::Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), step * k as f64)
            })
            .sum()
    }
}

/// Renders `c0 + c1·w + c2·w^2 + ...`, dropping zero terms.
impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if k == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt<{}>({})", self.p, self)
    }
}

/// `Σ_{x ∈ F_q} ω^tr(a·f(x) + b·x)`, by counting trace values.
pub fn char_sum(f: &PolyFn, a: &FieldElement, b: &FieldElement) -> Result<CycInt> {
    let field = f.field();
    field.check(a)?;
    field.check(b)?;
    let mut counts = vec![0u64; field.p() as usize];
    for x in 0..field.q() {
        let v = field.add_idx(
            field.mul_idx(a.index(), f.eval_idx(x)),
            field.mul_idx(b.index(), x),
        );
        counts[field.trace_idx(v) as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(&counts))
}
