//! Signal sets and their correlation amplitudes.
//!
//! For unit vectors `v_1..v_N` in C^K:
//!
//! * `I_rms^2 = (1/(N(N-1))) Σ_{i≠j} |⟨v_i|v_j⟩|^2`
//! * `I_max^2 = max_{i≠j} |⟨v_i|v_j⟩|^2`
//! * Welch: `I_max^2 >= I_rms^2 >= (N-K)/((N-1)K)` (taken as 0 when N <= K)
//! * Levenstein, for `N > K^2`: `I_max^2 >= (2N-K^2-K)/((K+1)(N-K))`
//!
//! When every vector is a standard basis vector or an exponent vector, each
//! `K^2·|⟨v_i|v_j⟩|^2` is an algebraic integer that must be a rational
//! integer for the set to be analysed exactly; otherwise the report falls
//! back to floating point with a `1e-9` tolerance on the bound comparisons.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};

use super::{difference_counts, Basis, MubCollection};

pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum SignalVector {
    /// The standard basis vector `e_i`.
    Unit(usize),
    /// `(1/√K)(ω^t_x)_x` with ω a primitive root of unity of the set's order.
    Phase(Vec<u32>),
    /// Explicit entries; must have unit norm.
    Complex(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalSet {
    dimension: usize,
    root_order: u32,
    vectors: Vec<SignalVector>,
}

impl SignalSet {
    /// `root_order` is the order of ω used by `Phase` vectors (ignored when
    /// there are none).
    pub fn new(dimension: usize, root_order: u32, vectors: Vec<SignalVector>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        if vectors.is_empty() {
            return Err(Error::DegenerateSet(0));
        }
        for (i, v) in vectors.iter().enumerate() {
            match v {
                SignalVector::Unit(k) if *k >= dimension => {
                    return Err(Error::Malformed(format!(
                        "vector {i}: unit index {k} out of range"
                    )))
                }
                SignalVector::Phase(t) => {
                    if root_order < 2 {
                        return Err(Error::Malformed("phase vectors need a root order".into()));
                    }
                    if t.len() != dimension || t.iter().any(|&e| e >= root_order) {
                        return Err(Error::Malformed(format!("vector {i}: bad exponent table")));
                    }
                }
                SignalVector::Complex(c) => {
                    if c.len() != dimension {
                        return Err(Error::Malformed(format!(
                            "vector {i}: length {} in dimension {dimension}",
                            c.len()
                        )));
                    }
                    let norm: f64 = c.iter().map(Complex64::norm_sqr).sum();
                    if (norm - 1.0).abs() > FLOAT_TOLERANCE {
                        return Err(Error::Malformed(format!(
                            "vector {i}: squared norm {norm} is not 1"
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(SignalSet {
            dimension,
            root_order,
            vectors,
        })
    }

    /// N
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    /// K
    pub fn k(&self) -> usize {
        self.dimension
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn vectors(&self) -> &[SignalVector] {
        &self.vectors
    }

    /// Explicit complex entries of vector `i`.
    pub fn to_complex(&self, i: usize) -> Vec<Complex64> {
        let k = self.dimension;
        match &self.vectors[i] {
            SignalVector::Unit(j) => {
                let mut v = vec![Complex64::zero(); k];
                v[*j] = Complex64::new(1.0, 0.0);
                v
            }
            SignalVector::Phase(t) => {
                let scale = 1.0 / (k as f64).sqrt();
                let step = std::f64::consts::TAU / self.root_order as f64;
                t.iter()
                    .map(|&e| Complex64::from_polar(scale, step * e as f64))
                    .collect()
            }
            SignalVector::Complex(c) => c.clone(),
        }
    }

    /// `K^2·|⟨v_i|v_j⟩|^2` when it is a rational integer.
    fn exact_numerator(&self, i: usize, j: usize) -> Option<u64> {
        let k = self.dimension as u64;
        use SignalVector::*;
        match (&self.vectors[i], &self.vectors[j]) {
            (Unit(a), Unit(b)) => Some(if a == b { k * k } else { 0 }),
            (Unit(_), Phase(_)) | (Phase(_), Unit(_)) => Some(k),
            (Phase(s), Phase(t)) => {
                let z = CycInt::from_exponent_counts(&difference_counts(self.root_order, s, t));
                z.norm_sq().as_integer().and_then(ToPrimitive::to_u64)
            }
            _ => None,
        }
    }

    fn float_value(&self, i: usize, j: usize) -> f64 {
        let u = self.to_complex(i);
        let v = self.to_complex(j);
        u.iter()
            .zip(&v)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// N = q^2 + q vectors in C^q: the standard basis first, then each phase
/// basis in order.
pub fn to_signal_set(m: &MubCollection) -> SignalSet {
    let q = m.dimension();
    let mut vectors = Vec::with_capacity(q * (q + 1));
    for basis in m.bases() {
        match basis {
            Basis::Standard { dim } => vectors.extend((0..*dim).map(SignalVector::Unit)),
            Basis::Phase { vectors: vs, .. } => {
                vectors.extend(vs.iter().map(|v| SignalVector::Phase(v.exps().to_vec())))
            }
        }
    }
    SignalSet {
        dimension: q,
        root_order: m.field().p(),
        vectors,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Approx(f64),
}

impl Quantity {
    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Quantity::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Quantity::Exact(r) => Some(r),
            Quantity::Approx(_) => None,
        }
    }

    /// Exact equality for two exact values; within the float tolerance
    /// otherwise.
    pub fn matches(&self, bound: &BigRational) -> bool {
        match self {
            Quantity::Exact(r) => r == bound,
            Quantity::Approx(x) => {
                (x - bound.to_f64().unwrap_or(f64::NAN)).abs() <= FLOAT_TOLERANCE
            }
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{r}"),
            Quantity::Approx(x) => write!(f, "{x:.12}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub n: usize,
    pub k: usize,
    pub exact: bool,
    pub i_rms_sq: Quantity,
    pub i_max_sq: Quantity,
    /// Lexicographically first pair `(i, j)`, `i < j`, attaining `I_max`.
    pub max_pair: (usize, usize),
    pub welch_rms_sq: BigRational,
    pub welch_max_sq: BigRational,
    /// `None` when `N <= K^2`, where the bound does not apply.
    pub levenstein_sq: Option<BigRational>,
    pub meets_welch_rms: bool,
    pub meets_welch_max: bool,
    pub meets_levenstein: Option<bool>,
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn welch_sq(n: usize, k: usize) -> BigRational {
    if n <= k {
        return BigRational::zero();
    }
    ratio((n - k) as u64, ((n - 1) * k) as u64)
}

pub fn levenstein_sq(n: usize, k: usize) -> Option<BigRational> {
    let (n, k) = (n as u64, k as u64);
    (n > k * k).then(|| ratio(2 * n - k * k - k, (k + 1) * (n - k)))
}

struct Acc<T> {
    sum: T,
    max: T,
    at: (usize, usize),
}

fn merge<T: PartialOrd + std::ops::Add<Output = T> + Copy>(a: Acc<T>, b: Acc<T>) -> Acc<T> {
    // Rows are merged in order, so on ties the left operand is the earlier pair.
    let (max, at) = if b.max > a.max {
        (b.max, b.at)
    } else {
        (a.max, a.at)
    };
    Acc {
        sum: a.sum + b.sum,
        max,
        at,
    }
}

fn exact_pass(s: &SignalSet) -> Option<Acc<u128>> {
    let n = s.n();
    (0..n)
        .into_par_iter()
        .map(|i| -> Option<Acc<u128>> {
            let mut acc = Acc {
                sum: 0u128,
                max: 0u128,
                at: (0, 1),
            };
            let mut first = true;
            for j in i + 1..n {
                let v = s.exact_numerator(i, j)? as u128;
                acc.sum += v;
                if first || v > acc.max {
                    acc.max = v;
                    acc.at = (i, j);
                    first = false;
                }
            }
            Some(acc)
        })
        .try_reduce_with(|a, b| Some(merge(a, b)))
        .flatten()
}

fn float_pass(s: &SignalSet) -> Acc<f64> {
    let n = s.n();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = Acc {
                sum: 0.0,
                max: f64::NEG_INFINITY,
                at: (0, 1),
            };
            for j in i + 1..n {
                let v = s.float_value(i, j);
                acc.sum += v;
                if v > acc.max {
                    acc.max = v;
                    acc.at = (i, j);
                }
            }
            acc
        })
        .reduce_with(merge)
        .expect("n >= 2")
}

pub fn correlation_report(s: &SignalSet) -> Result<CorrelationReport> {
    let (n, k) = (s.n(), s.k());
    if n < 2 {
        return Err(Error::DegenerateSet(n));
    }
    let pairs = (n * (n - 1)) as u64;
    let (exact, i_rms_sq, i_max_sq, max_pair) = match exact_pass(s) {
        Some(acc) => {
            let den = BigInt::from(k as u64 * k as u64);
            (
                true,
                Quantity::Exact(ratio(BigInt::from(2 * acc.sum), den.clone() * pairs)),
                Quantity::Exact(ratio(BigInt::from(acc.max), den)),
                acc.at,
            )
        }
        None => {
            let acc = float_pass(s);
            (
                false,
                Quantity::Approx(2.0 * acc.sum / pairs as f64),
                Quantity::Approx(acc.max),
                acc.at,
            )
        }
    };
    let welch = welch_sq(n, k);
    let lev = levenstein_sq(n, k);
    Ok(CorrelationReport {
        n,
        k,
        exact,
        meets_welch_rms: i_rms_sq.matches(&welch),
        meets_welch_max: i_max_sq.matches(&welch),
        meets_levenstein: lev.as_ref().map(|l| i_max_sq.matches(l)),
        i_rms_sq,
        i_max_sq,
        max_pair,
        welch_rms_sq: welch.clone(),
        welch_max_sq: welch,
        levenstein_sq: lev,
    })
}
