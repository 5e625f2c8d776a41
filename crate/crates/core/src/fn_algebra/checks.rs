//! Structural tests on functions over F_q.
//!
//! The planar and Alltop tests are exhaustive and fan out over the direction
//! `a` with rayon. Each reports the first counterexample in index order, so
//! results never depend on scheduling.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::poly::{reduce_exponent, FnTable, PolyFn};

/// True iff the table's q values are pairwise distinct.
pub fn is_bijection(t: &FnTable) -> bool {
    bijection_witness(t.field(), t.values()).is_none()
}

/// First pair `x < y` (by index) with `t[x] = t[y]`.
pub(crate) fn bijection_witness(field: &Field, t: &[u32]) -> Option<(u32, u32)> {
    let mut first = vec![u32::MAX; field.q() as usize];
    for (x, &v) in t.iter().enumerate() {
        let slot = &mut first[v as usize];
        if *slot != u32::MAX {
            return Some((*slot, x as u32));
        }
        *slot = x as u32;
    }
    None
}

/// Scratch space for repeated bijection checks of difference tables.
struct Scratch {
    stamp: Vec<u32>,
    first: Vec<u32>,
}

impl Scratch {
    fn new(q: u32) -> Self {
        Scratch {
            stamp: vec![0; q as usize],
            first: vec![0; q as usize],
        }
    }

    /// Is `x ↦ t[x + a] - t[x]` a bijection? Returns the colliding `(x, y)`
    /// otherwise. `a` must be nonzero.
    #[inline]
    fn delta_collision(&mut self, field: &Field, t: &[u32], a: u32) -> Option<(u32, u32)> {
        for x in 0..field.q() {
            let d = field.sub_idx(t[field.add_idx(x, a) as usize], t[x as usize]) as usize;
            if self.stamp[d] == a {
                return Some((self.first[d], x));
            }
            self.stamp[d] = a;
            self.first[d] = x;
        }
        None
    }

    fn reset(&mut self) {
        self.stamp.iter_mut().for_each(|s| *s = 0);
    }
}

/// Why a function is not planar: `Δ_a(x) = Δ_a(y)` with `x ≠ y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarWitness {
    pub a: FieldElement,
    pub x: FieldElement,
    pub y: FieldElement,
}

fn table_planar_witness_seq(field: &Field, t: &[u32]) -> Option<(u32, u32, u32)> {
    let mut scratch = Scratch::new(field.q());
    (1..field.q()).find_map(|a| scratch.delta_collision(field, t, a).map(|(x, y)| (a, x, y)))
}

/// Planarity of a value table, parallel over `a`.
pub fn table_planar_witness(table: &FnTable) -> Option<PlanarWitness> {
    let field = table.field();
    let t = table.values();
    (1..field.q())
        .into_par_iter()
        .map_init(
            || Scratch::new(field.q()),
            |scratch, a| {
                scratch.reset();
                scratch.delta_collision(field, t, a).map(|(x, y)| (a, x, y))
            },
        )
        .find_first(|w| w.is_some())
        .flatten()
        .map(|(a, x, y)| PlanarWitness {
            a: field.wrap(a),
            x: field.wrap(x),
            y: field.wrap(y),
        })
}

/// First `a ≠ 0` (by index) whose difference function is not a bijection,
/// with a colliding pair.
pub fn planar_witness(f: &PolyFn) -> Option<PlanarWitness> {
    table_planar_witness(&f.tabulate())
}

/// `f` is planar iff every `Δ_{f,a}` with `a ≠ 0` is a bijection.
pub fn is_planar(f: &PolyFn) -> bool {
    planar_witness(f).is_none()
}

/// The Dembowski-Ostrom shortcut: for a DO polynomial, planarity is
/// equivalent to `D_f(x, y) ≠ 0` for all nonzero `x, y`. Returns `None` when
/// `f` does not have DO shape, since the shortcut does not apply.
pub fn is_planar_do(f: &PolyFn) -> Option<bool> {
    if !is_do_shape(f) {
        return None;
    }
    let field = f.field();
    let t = f.tabulate();
    let t = t.values();
    let q = field.q();
    let zero_found = (1..q).into_par_iter().any(|x| {
        (1..q).any(|y| {
            let s = t[field.add_idx(x, y) as usize];
            field.sub_idx(field.sub_idx(s, t[x as usize]), t[y as usize]) == 0
        })
    });
    Some(!zero_found)
}

/// Why a function is not Alltop: `Δ_{A,a}` fails to be planar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlltopWitness {
    pub a: FieldElement,
    pub planar: PlanarWitness,
}

fn require_alltop_characteristic(field: &Field) -> Result<()> {
    if field.p() < 5 {
        Err(Error::CharacteristicTooSmall { p: field.p() })
    } else {
        Ok(())
    }
}

/// Difference table `x ↦ t[x + a] - t[x]` into `out`.
#[inline]
fn delta_table_into(field: &Field, t: &[u32], a: u32, out: &mut [u32]) {
    for x in 0..field.q() {
        out[x as usize] = field.sub_idx(t[field.add_idx(x, a) as usize], t[x as usize]);
    }
}

/// First `a ≠ 0` (by index) whose difference function is not planar.
pub fn alltop_witness(f: &PolyFn) -> Result<Option<AlltopWitness>> {
    let field = f.field();
    require_alltop_characteristic(field)?;
    let t = f.tabulate();
    let t = t.values();
    let q = field.q();
    let found = (1..q)
        .into_par_iter()
        .map_init(
            || (vec![0u32; q as usize], Scratch::new(q)),
            |(buf, scratch), a| {
                delta_table_into(field, t, a, buf);
                scratch.reset();
                (1..q).find_map(|b| {
                    scratch
                        .delta_collision(field, buf, b)
                        .map(|(x, y)| (a, b, x, y))
                })
            },
        )
        .find_first(|w| w.is_some())
        .flatten();
    Ok(found.map(|(a, b, x, y)| AlltopWitness {
        a: field.wrap(a),
        planar: PlanarWitness {
            a: field.wrap(b),
            x: field.wrap(x),
            y: field.wrap(y),
        },
    }))
}

/// `A` is Alltop iff `Δ_{A,a}` is planar for every `a ≠ 0`.
pub fn is_alltop(f: &PolyFn) -> Result<bool> {
    Ok(alltop_witness(f)?.is_none())
}

/// Planarity of `Δ_{A,a}` for each `a ≠ 0`, in index order.
pub fn delta_planarity_profile(f: &PolyFn) -> Vec<(FieldElement, bool)> {
    let field = f.field();
    let t = f.tabulate();
    let t = t.values();
    let q = field.q();
    let flags: Vec<bool> = (1..q)
        .into_par_iter()
        .map(|a| {
            let mut buf = vec![0u32; q as usize];
            delta_table_into(field, t, a, &mut buf);
            table_planar_witness_seq(field, &buf).is_none()
        })
        .collect();
    (1..q).map(|a| field.wrap(a)).zip(flags).collect()
}

fn powers_of_p(field: &Field) -> Vec<u32> {
    (0..field.r()).map(|k| field.p().pow(k)).collect()
}

/// Syntactic additivity: every exponent is `p^k` with `k < r`.
pub fn is_additive(f: &PolyFn) -> bool {
    let pows = powers_of_p(f.field());
    f.exponents().all(|e| pows.contains(&e))
}

/// Additive plus an optional constant term.
pub fn is_affine(f: &PolyFn) -> bool {
    let pows = powers_of_p(f.field());
    f.exponents().all(|e| e == 0 || pows.contains(&e))
}

/// Checks `L(x + y) = L(x) + L(y)` on all pairs. Quadratic in q; used to
/// cross-validate [`is_additive`] on small fields.
pub fn is_additive_by_table(f: &PolyFn) -> bool {
    let field = f.field();
    let t = f.tabulate();
    let t = t.values();
    let q = field.q();
    (0..q).all(|x| {
        (0..q)
            .all(|y| t[field.add_idx(x, y) as usize] == field.add_idx(t[x as usize], t[y as usize]))
    })
}

/// An additive polynomial permutes F_q iff it has no nonzero root.
pub fn is_additive_permutation(l: &PolyFn) -> Result<bool> {
    if !is_additive(l) {
        return Err(Error::NotAdditive);
    }
    Ok((1..l.field().q()).all(|x| l.eval_idx(x) != 0))
}

/// True iff the value table is a permutation of F_q.
pub fn is_permutation(f: &PolyFn) -> bool {
    is_bijection(&f.tabulate())
}

/// First colliding pair of a non-permutation.
pub fn permutation_witness(f: &PolyFn) -> Option<(FieldElement, FieldElement)> {
    let t = f.tabulate();
    bijection_witness(f.field(), t.values()).map(|(x, y)| (f.field().wrap(x), f.field().wrap(y)))
}

/// Dembowski-Ostrom shape: every exponent is `p^i + p^j`, `0 <= i, j < r`.
pub fn is_do_shape(f: &PolyFn) -> bool {
    let field = f.field();
    let pows = powers_of_p(field);
    let shapes: BTreeSet<u32> = pows
        .iter()
        .flat_map(|&a| pows.iter().map(move |&b| (a, b)))
        .map(|(a, b)| reduce_exponent(field.q(), (a + b) as u64))
        .collect();
    f.exponents().all(|e| shapes.contains(&e))
}

/// One-sided EA-inequivalence test against `x^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeEquivalence {
    /// Every exponent is `p^k + p^j + p^i` with `(k, j, i)` not all equal,
    /// which rules out EA-equivalence to `x^3`.
    InequivalentToCube,
    /// The sufficient condition does not apply. This never asserts
    /// equivalence.
    Inconclusive,
}

pub fn ea_inequiv_to_cube(f: &PolyFn) -> CubeEquivalence {
    let field = f.field();
    let q = field.q();
    let pows = powers_of_p(field);
    let mut diagonal = BTreeSet::new();
    let mut mixed = BTreeSet::new();
    for (ik, &k) in pows.iter().enumerate() {
        for (ij, &j) in pows.iter().enumerate() {
            for (ii, &i) in pows.iter().enumerate() {
                let e = reduce_exponent(q, (k + j + i) as u64);
                if ik == ij && ij == ii {
                    diagonal.insert(e);
                } else {
                    mixed.insert(e);
                }
            }
        }
    }
    let ok = f
        .exponents()
        .all(|e| mixed.contains(&e) && !diagonal.contains(&e));
    if ok {
        CubeEquivalence::InequivalentToCube
    } else {
        CubeEquivalence::Inconclusive
    }
}
