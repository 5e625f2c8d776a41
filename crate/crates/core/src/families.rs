//! Known planar and Alltop families.
//!
//! * `x^2`, planar in every odd characteristic;
//! * `x^3`, the classical Alltop cubic (p >= 5);
//! * `x^(p^r+2)` on F_{p^(2r)}, Alltop whenever 3 does not divide `p^r + 1`,
//!   together with the planar binomial `Π_a(x) = 2a·x^(p^r+1) + a^(p^r)·x^2`
//!   that its difference functions reduce to, and the identity exhibiting
//!   `Π_a` as EA-equivalent to `x^2`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::fn_algebra::PolyFn;

pub fn quadratic_planar(field: &Field) -> Result<PolyFn> {
    if field.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    Ok(PolyFn::monomial(field, 2))
}

pub fn cubic_alltop(field: &Field) -> Result<PolyFn> {
    if field.p() < 5 {
        return Err(Error::CharacteristicTooSmall { p: field.p() });
    }
    Ok(PolyFn::monomial(field, 3))
}

/// Checks the preconditions on `(p, r)` and returns `p^r`.
fn new_family_half_order(p: u32, r: u32) -> Result<u64> {
    if p < 5 {
        return Err(Error::CharacteristicTooSmall { p });
    }
    let pr = (p as u64).pow(r);
    if (pr + 1).is_multiple_of(3) {
        return Err(Error::ConditionViolated { divisor: pr + 1 });
    }
    Ok(pr)
}

/// `x^(p^r+2)` over F_{p^(2r)} with the built-in modulus.
pub fn new_alltop(p: u32, r: u32) -> Result<PolyFn> {
    if r == 0 {
        return Err(Error::ZeroDegree);
    }
    // validate before building a possibly large field
    new_family_half_order(p, r)?;
    let field = Field::with_default_modulus(p, 2 * r)?;
    new_alltop_in(&field)
}

/// `x^(p^r+2)` over a caller-supplied field of even degree `2r`.
pub fn new_alltop_in(field: &Field) -> Result<PolyFn> {
    let r = half_degree(field)?;
    let pr = new_family_half_order(field.p(), r)?;
    Ok(PolyFn::monomial(field, pr + 2))
}

fn half_degree(field: &Field) -> Result<u32> {
    if !field.r().is_multiple_of(2) {
        return Err(Error::OddDegree { r: field.r() });
    }
    Ok(field.r() / 2)
}

/// `Π_a(x) = 2a·x^(p^r+1) + a^(p^r)·x^2` over F_{p^(2r)}.
pub fn pi_a(field: &Field, a: &FieldElement) -> Result<PolyFn> {
    field.check(a)?;
    if a.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let pr = (field.p() as u64).pow(half_degree(field)?);
    let two_a = &field.from_int(2) * a;
    PolyFn::from_terms(field, [(pr + 1, two_a), (2, a.pow(pr))])
}

/// Checks, pointwise over all of F_{p^(2r)}, that for some `γ` with
/// `γ^2 = -3`:
///
/// `a^(p^r)·Π_a(x) + ((γ-1)/2)·a·Π_a(x)^(p^r) = (a^(p^r)·x + ((1+γ)/2)·a·x^(p^r))^2`.
///
/// Both square roots of `-3` are tried.
pub fn verify_note_identity(field: &Field, a: &FieldElement) -> Result<bool> {
    let pi = pi_a(field, a)?;
    let pr = (field.p() as u64).pow(half_degree(field)?);
    let half = field.from_int(2).inv()?;
    let one = field.one();
    let a_pr = a.pow(pr);
    let table = pi.tabulate();

    let holds = |gamma: &FieldElement| -> bool {
        let lhs_coeff = &(&(gamma - &one) * &half) * a;
        let rhs_coeff = &(&(gamma + &one) * &half) * a;
        field.elements().all(|x| {
            let pix = table.get(&x);
            let lhs = &(&a_pr * &pix) + &(&lhs_coeff * &pix.pow(pr));
            let inner = &(&a_pr * &x) + &(&rhs_coeff * &x.pow(pr));
            lhs == &inner * &inner
        })
    };
    Ok(field.from_int(-3).sqrt().iter().any(holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fn_algebra::{is_alltop, is_planar};

    #[test]
    fn quadratic() {
        for (p, r) in [(5, 1), (7, 2), (3, 2)] {
            let f = Field::with_default_modulus(p, r).unwrap();
            assert!(is_planar(&quadratic_planar(&f).unwrap()));
        }
        assert_eq!(
            Field::with_default_modulus(2, 1).map(|_| ()),
            Err(Error::CharacteristicTwo)
        );
    }

    #[test]
    fn cubic() {
        let f7 = Field::with_default_modulus(7, 1).unwrap();
        assert!(is_alltop(&cubic_alltop(&f7).unwrap()).unwrap());
        let f3 = Field::with_default_modulus(3, 1).unwrap();
        assert_eq!(
            cubic_alltop(&f3),
            Err(Error::CharacteristicTooSmall { p: 3 })
        );
    }

    #[test]
    fn new_family_preconditions() {
        assert_eq!(
            new_alltop(5, 1),
            Err(Error::ConditionViolated { divisor: 6 })
        );
        assert_eq!(
            new_alltop(11, 1),
            Err(Error::ConditionViolated { divisor: 12 })
        );
        assert_eq!(
            new_alltop(3, 1),
            Err(Error::CharacteristicTooSmall { p: 3 })
        );
        let a = new_alltop(7, 1).unwrap();
        assert_eq!(a.field().q(), 49);
        assert_eq!(a.to_string(), "x^9");
        let f7 = Field::with_default_modulus(7, 1).unwrap();
        assert_eq!(new_alltop_in(&f7), Err(Error::OddDegree { r: 1 }));
    }

    #[test]
    fn pi_a_shape() {
        let f = Field::with_default_modulus(7, 2).unwrap();
        let pi = pi_a(&f, &f.one()).unwrap();
        assert_eq!(pi.to_string(), "2*x^8 + x^2");
        assert!(is_planar(&pi));
        assert_eq!(pi_a(&f, &f.zero()), Err(Error::ZeroParameter));

        let f25 = Field::with_default_modulus(5, 2).unwrap();
        let pi = pi_a(&f25, &f25.one()).unwrap();
        assert_eq!(pi.to_string(), "2*x^6 + x^2");
        assert!(!is_planar(&pi));
    }

    #[test]
    fn note_identity_small_cases() {
        let f = Field::with_default_modulus(7, 2).unwrap();
        assert!(verify_note_identity(&f, &f.one()).unwrap());
        assert!(verify_note_identity(&f, &f.alpha()).unwrap());
        assert_eq!(
            verify_note_identity(&f, &f.zero()),
            Err(Error::ZeroParameter)
        );
    }
}
