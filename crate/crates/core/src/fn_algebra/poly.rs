use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Reduces an exponent modulo `x^q - x`: 0 stays 0, anything else lands in
/// `[1, q-1]`.
pub fn reduce_exponent(q: u32, e: u64) -> u32 {
    if e == 0 {
        0
    } else {
        ((e - 1) % (q as u64 - 1) + 1) as u32
    }
}

/// A function F_q → F_q as a reduced sparse polynomial.
///
/// Exponents live in `[0, q)` and no zero coefficient is stored, so two
/// values are equal exactly when the functions they denote agree everywhere.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyFn {
    field: Field,
    /// exponent → coefficient index (never 0)
    terms: BTreeMap<u32, u32>,
}

impl PolyFn {
    pub fn zero(field: &Field) -> Self {
        PolyFn {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The identity map `x`.
    pub fn identity(field: &Field) -> Self {
        Self::monomial(field, 1)
    }

    pub fn monomial(field: &Field, e: u64) -> Self {
        Self::from_index_terms(field, [(e, 1)])
    }

    pub fn term(coeff: &FieldElement, e: u64) -> Self {
        Self::from_index_terms(coeff.field(), [(e, coeff.index())])
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::term(c, 0)
    }

    /// Sums `c·x^e` over the given terms, reducing exponents and merging
    /// like terms.
    pub fn from_terms<I>(field: &Field, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, FieldElement)>,
    {
        let mut out = Self::zero(field);
        for (e, c) in terms {
            field.check(&c)?;
            out.add_term(e, c.index());
        }
        Ok(out)
    }

    pub(crate) fn from_index_terms<I>(field: &Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, u32)>,
    {
        let mut out = Self::zero(field);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: u64, c: u32) {
        if c == 0 {
            return;
        }
        let e = reduce_exponent(self.field.q(), e);
        let cur = self.terms.get(&e).copied().unwrap_or(0);
        let sum = self.field.add_idx(cur, c);
        if sum == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    /// Interpolates the unique reduced polynomial with the given value table.
    ///
    /// Uses `c_0 = f(0)`, `c_k = -Σ_{a≠0} f(a)·a^(q-1-k)` for `0 < k < q-1`
    /// and `c_{q-1} = -Σ_a f(a)`.
    pub fn from_table(table: &FnTable) -> Self {
        let field = table.field();
        let q = field.q();
        let v = table.values();
        let mut terms = BTreeMap::new();
        if v[0] != 0 {
            terms.insert(0, v[0]);
        }
        for k in 1..q {
            let mut acc = 0u32;
            if k == q - 1 {
                for &fa in v {
                    acc = field.add_idx(acc, fa);
                }
            } else {
                let e = (q - 1 - k) as u64;
                for a in 1..q {
                    if v[a as usize] != 0 {
                        let t = field.mul_idx(v[a as usize], field.pow_idx(a, e));
                        acc = field.add_idx(acc, t);
                    }
                }
            }
            let c = field.neg_idx(acc);
            if c != 0 {
                terms.insert(k, c);
            }
        }
        PolyFn {
            field: field.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Exponents in increasing order.
    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, self.field.wrap(c)))
    }

    pub fn coefficient(&self, e: u32) -> FieldElement {
        self.field.wrap(self.terms.get(&e).copied().unwrap_or(0))
    }

    #[inline]
    pub fn eval_idx(&self, x: u32) -> u32 {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (&e, &c)| {
            f.add_idx(acc, f.mul_idx(c, f.pow_idx(x, e as u64)))
        })
    }

    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        self.field.check(x)?;
        Ok(self.field.wrap(self.eval_idx(x.index())))
    }

    /// The value table in element-index order.
    pub fn tabulate(&self) -> FnTable {
        FnTable::from_fn(&self.field, |x| self.eval_idx(x))
    }

    fn same_field(&self, other: &PolyFn) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &PolyFn) -> Result<PolyFn> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e as u64, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyFn) -> Result<PolyFn> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyFn {
        self.map_coeffs(|c| self.field.neg_idx(c))
    }

    pub fn scale(&self, c: &FieldElement) -> Result<PolyFn> {
        self.field.check(c)?;
        Ok(self.map_coeffs(|k| self.field.mul_idx(k, c.index())))
    }

    fn map_coeffs(&self, op: impl Fn(u32) -> u32) -> PolyFn {
        let terms = self
            .terms
            .iter()
            .map(|(&e, &c)| (e, op(c)))
            .filter(|&(_, c)| c != 0)
            .collect();
        PolyFn {
            field: self.field.clone(),
            terms,
        }
    }

    /// Pointwise product, reduced.
    pub fn mul(&self, other: &PolyFn) -> Result<PolyFn> {
        self.same_field(other)?;
        let mut out = PolyFn::zero(&self.field);
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.add_term(e1 as u64 + e2 as u64, self.field.mul_idx(c1, c2));
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`, i.e. `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &PolyFn) -> Result<PolyFn> {
        self.same_field(inner)?;
        let table = FnTable::from_fn(&self.field, |x| self.eval_idx(inner.eval_idx(x)));
        Ok(PolyFn::from_table(&table))
    }

    /// The difference function `x ↦ f(x + a) - f(x)`, expanded binomially.
    pub fn delta(&self, a: &FieldElement) -> Result<PolyFn> {
        self.field.check(a)?;
        let f = &self.field;
        let p = f.p();
        let binom = Binomial::new(p);
        let max_e = self.degree().unwrap_or(0) as usize;
        let mut acc = vec![0u32; max_e.max(1)];
        for (&e, &c) in &self.terms {
            // (x+a)^e - x^e = Σ_{k<e} C(e,k) a^(e-k) x^k
            for k in 0..e {
                let b = binom.eval(e as u64, k as u64);
                if b == 0 {
                    continue;
                }
                let t = f.mul_idx(f.mul_idx(c, b), f.pow_idx(a.index(), (e - k) as u64));
                acc[k as usize] = f.add_idx(acc[k as usize], t);
            }
        }
        Ok(PolyFn::from_index_terms(
            f,
            acc.into_iter().enumerate().map(|(k, c)| (k as u64, c)),
        ))
    }

    /// `f(x + y) - f(x) - f(y)`.
    pub fn dform(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.field.check(x)?;
        self.field.check(y)?;
        Ok(self.field.wrap(self.dform_idx(x.index(), y.index())))
    }

    #[inline]
    pub(crate) fn dform_idx(&self, x: u32, y: u32) -> u32 {
        let f = &self.field;
        let s = self.eval_idx(f.add_idx(x, y));
        f.sub_idx(f.sub_idx(s, self.eval_idx(x)), self.eval_idx(y))
    }
}

/// Binomial coefficients modulo a prime, via Lucas' theorem.
struct Binomial {
    p: u64,
    fact: Vec<u64>,
    inv_fact: Vec<u64>,
}

impl Binomial {
    fn new(p: u32) -> Self {
        let p = p as u64;
        let mut fact = vec![1u64; p as usize];
        for i in 1..p as usize {
            fact[i] = fact[i - 1] * i as u64 % p;
        }
        let inv_fact = fact
            .iter()
            .map(|&x| crate::field::zp_poly::pow_mod(x, p - 2, p))
            .collect();
        Binomial { p, fact, inv_fact }
    }

    fn small(&self, n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        self.fact[n as usize] * self.inv_fact[k as usize] % self.p * self.inv_fact[(n - k) as usize]
            % self.p
    }

    fn eval(&self, mut n: u64, mut k: u64) -> u32 {
        let mut acc = 1u64;
        while k > 0 || n > 0 {
            acc = acc * self.small(n % self.p, k % self.p) % self.p;
            if acc == 0 {
                return 0;
            }
            n /= self.p;
            k /= self.p;
        }
        acc as u32
    }
}

/// A full value table of a function, indexed by element index.
#[derive(Clone, PartialEq, Eq)]
pub struct FnTable {
    field: Field,
    values: Vec<u32>,
}

impl FnTable {
    pub fn new(field: &Field, values: Vec<u32>) -> Result<Self> {
        let q = field.q() as usize;
        if values.len() != q {
            return Err(Error::TableLength {
                expected: q,
                found: values.len(),
            });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= field.q()) {
            return Err(Error::IndexOutOfRange {
                index: v as u64,
                q: q as u64,
            });
        }
        Ok(FnTable {
            field: field.clone(),
            values,
        })
    }

    pub fn from_fn(field: &Field, f: impl Fn(u32) -> u32) -> Self {
        FnTable {
            field: field.clone(),
            values: (0..field.q()).map(f).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, x: &FieldElement) -> FieldElement {
        self.field.wrap(self.values[x.index() as usize])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl std::fmt::Debug for FnTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}
