//! Exhaustive searches for planar and Alltop monomials and binomials.
//!
//! Candidates are tested in parallel; results are collected in candidate
//! order, so inventories are identical for any thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::fn_algebra::{is_alltop, is_planar, PolyFn};

pub const DEFAULT_MAX_Q: u64 = 625;
pub const MAX_Q_ENV: &str = "ALLTOPLAB_MAX_Q";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Planar,
    Alltop,
}

impl Property {
    pub fn holds(self, f: &PolyFn) -> Result<bool> {
        match self {
            Property::Planar => Ok(is_planar(f)),
            Property::Alltop => is_alltop(f),
        }
    }

    /// Rough number of table lookups for one exhaustive test over F_q.
    fn test_cost(self, q: u64) -> u64 {
        match self {
            Property::Planar => q * q,
            Property::Alltop => q * q * q,
        }
    }
}

/// Limits on the field size a search may run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_q: u64,
    pub allow_large: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_q: DEFAULT_MAX_Q,
            allow_large: false,
        }
    }
}

impl SearchLimits {
    /// The default cap, overridden by `ALLTOPLAB_MAX_Q` when it is set to an
    /// integer.
    pub fn from_env() -> Self {
        let max_q = std::env::var(MAX_Q_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_Q);
        SearchLimits {
            max_q,
            allow_large: false,
        }
    }

    fn check(&self, q: u64) -> Result<()> {
        if q > self.max_q && !self.allow_large {
            return Err(Error::SearchTooLarge { q, cap: self.max_q });
        }
        Ok(())
    }
}

fn check_range(field: &Field, min: u64, max: u64) -> Result<()> {
    let q = field.q() as u64;
    if min < 2 || min > max || max + 1 >= q {
        return Err(Error::InvalidRange { min, max, q });
    }
    Ok(())
}

/// Every `d` in `[min, max]` with `x^d` having the property, ascending.
pub fn search_monomials(
    field: &Field,
    property: Property,
    min: u64,
    max: u64,
    limits: &SearchLimits,
) -> Result<Vec<u64>> {
    check_range(field, min, max)?;
    limits.check(field.q() as u64)?;
    let hits: Vec<Option<u64>> = (min..=max)
        .into_par_iter()
        .map(|d| Ok(property.holds(&PolyFn::monomial(field, d))?.then_some(d)))
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// A passing binomial `x^e1 + c·x^e2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialHit {
    pub e1: u64,
    pub e2: u64,
    pub c: FieldElement,
}

impl BinomialHit {
    pub fn function(&self) -> PolyFn {
        let field = self.c.field();
        PolyFn::from_terms(field, [(self.e1, field.one()), (self.e2, self.c.clone())])
            .expect("coefficients from the same field")
    }
}

/// Candidate count and estimated table lookups for a binomial search.
///
/// Multiplying a function by a nonzero constant preserves both properties,
/// so the leading coefficient is fixed to 1 and only `c ≠ 0` varies.
pub fn binomial_cost(field: &Field, property: Property, min: u64, max: u64) -> (u64, u64) {
    let q = field.q() as u64;
    let span = max.saturating_sub(min) + 1;
    let candidates = span * (span - 1) / 2 * (q - 1);
    (candidates, candidates.saturating_mul(property.test_cost(q)))
}

/// Every `x^e1 + c·x^e2` with `min <= e1 < e2 <= max` and `c ≠ 0` having
/// the property, ordered by `(e1, e2, c)`.
pub fn search_binomials(
    field: &Field,
    property: Property,
    min: u64,
    max: u64,
    limits: &SearchLimits,
) -> Result<Vec<BinomialHit>> {
    check_range(field, min, max)?;
    limits.check(field.q() as u64)?;
    let q = field.q();
    let candidates: Vec<(u64, u64, u32)> = (min..=max)
        .flat_map(|e1| (e1 + 1..=max).flat_map(move |e2| (1..q).map(move |c| (e1, e2, c))))
        .collect();
    let hits: Vec<Option<BinomialHit>> = candidates
        .into_par_iter()
        .map(|(e1, e2, c)| {
            let hit = BinomialHit {
                e1,
                e2,
                c: field.wrap(c),
            };
            Ok(property.holds(&hit.function())?.then_some(hit))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}
