//! Complete sets of mutually unbiased bases from planar and Alltop
//! functions, their exact verification, and the signal sets they form.
//!
//! Every vector of a non-standard basis has the form `(1/√q)·(ω^t_x)_x`, so
//! it is stored as its exponent table `t` over Z_p. The scale is implicit:
//! [`inner_product_scaled`] returns `q·⟨u|v⟩ = Σ_x ω^(t_u(x) - t_v(x))`,
//! which lies in Z[ω], and all checks are identities there.

mod export;
mod signal;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::fn_algebra::{is_alltop, is_planar, PolyFn};

pub use export::{
    correlation_csv, load_signal_set, BasisExport, MubExport, SignalFile, VectorExport,
};
pub use signal::{
    correlation_report, levenstein_sq, to_signal_set, welch_sq, CorrelationReport, Quantity,
    SignalSet, SignalVector, FLOAT_TOLERANCE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Planar,
    Alltop,
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Construction::Planar => write!(f, "planar"),
            Construction::Alltop => write!(f, "alltop"),
        }
    }
}

/// The unit vector `(1/√q)·(ω^exps[x])_x`, labelled by `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    a: FieldElement,
    b: FieldElement,
    exps: Vec<u32>,
}

impl ExponentVector {
    pub fn new(a: FieldElement, b: FieldElement, exps: Vec<u32>) -> Result<Self> {
        let field = a.field();
        field.check(&b)?;
        if exps.len() != field.q() as usize {
            return Err(Error::TableLength {
                expected: field.q() as usize,
                found: exps.len(),
            });
        }
        if let Some(&t) = exps.iter().find(|&&t| t >= field.p()) {
            return Err(Error::Malformed(format!(
                "exponent {t} is not reduced modulo {}",
                field.p()
            )));
        }
        Ok(ExponentVector { a, b, exps })
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn p(&self) -> u32 {
        self.a.field().p()
    }

    /// Overwrites one exponent (must be below p).
    pub fn set_exponent(&mut self, x: usize, t: u32) -> Result<()> {
        if t >= self.p() {
            return Err(Error::Malformed(format!("exponent {t} out of range")));
        }
        let q = self.exps.len() as u64;
        let slot = self
            .exps
            .get_mut(x)
            .ok_or(Error::IndexOutOfRange { index: x as u64, q })?;
        *slot = t;
        Ok(())
    }
}

/// Histogram of `u - v mod p` over positions.
pub(crate) fn difference_counts(p: u32, u: &[u32], v: &[u32]) -> Vec<u64> {
    let mut counts = vec![0u64; p as usize];
    for (&s, &t) in u.iter().zip(v) {
        counts[((s + p - t) % p) as usize] += 1;
    }
    counts
}

/// `q·⟨u|v⟩ = Σ_x ω^(t_u(x) - t_v(x))`. Swapping the arguments conjugates.
pub fn inner_product_scaled(u: &ExponentVector, v: &ExponentVector) -> Result<CycInt> {
    u.a.field().check(&v.a)?;
    Ok(CycInt::from_exponent_counts(&difference_counts(
        u.p(),
        &u.exps,
        &v.exps,
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Standard,
    Planar,
    Alltop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// The standard basis of C^q, kept implicit.
    Standard { dim: usize },
    /// `V_a = {v_ab : b ∈ F_q}`, indexed by b.
    Phase {
        construction: Construction,
        a: FieldElement,
        vectors: Vec<ExponentVector>,
    },
}

impl Basis {
    pub fn kind(&self) -> BasisKind {
        match self {
            Basis::Standard { .. } => BasisKind::Standard,
            Basis::Phase {
                construction: Construction::Planar,
                ..
            } => BasisKind::Planar,
            Basis::Phase {
                construction: Construction::Alltop,
                ..
            } => BasisKind::Alltop,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Basis::Standard { dim } => *dim,
            Basis::Phase { vectors, .. } => vectors.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> &[ExponentVector] {
        match self {
            Basis::Standard { .. } => &[],
            Basis::Phase { vectors, .. } => vectors,
        }
    }
}

/// The standard basis followed by `V_a` for every `a` in index order.
#[derive(Debug, Clone)]
pub struct MubCollection {
    field: Field,
    construction: Construction,
    function: PolyFn,
    bases: Vec<Basis>,
}

impl MubCollection {
    pub(crate) fn from_parts(
        field: Field,
        construction: Construction,
        function: PolyFn,
        bases: Vec<Basis>,
    ) -> Self {
        MubCollection {
            field,
            construction,
            function,
            bases,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn function(&self) -> &PolyFn {
        &self.function
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn dimension(&self) -> usize {
        self.field.q() as usize
    }

    /// Mutable access to vector `b` of basis `basis` (0 is the standard
    /// basis, which has no stored vectors).
    pub fn vector_mut(&mut self, basis: usize, b: usize) -> Option<&mut ExponentVector> {
        match self.bases.get_mut(basis)? {
            Basis::Standard { .. } => None,
            Basis::Phase { vectors, .. } => vectors.get_mut(b),
        }
    }

    fn phase_vectors(&self) -> Vec<&[ExponentVector]> {
        self.bases
            .iter()
            .filter(|b| matches!(b, Basis::Phase { .. }))
            .map(Basis::vectors)
            .collect()
    }
}

fn build(
    f: &PolyFn,
    construction: Construction,
    entry: impl Fn(&Field, &[u32], u32, u32, u32) -> u32 + Sync,
) -> MubCollection {
    let field = f.field();
    let q = field.q();
    let table = f.tabulate();
    let t = table.values();
    let phase: Vec<Basis> = (0..q)
        .into_par_iter()
        .map(|a| {
            let vectors = (0..q)
                .map(|b| ExponentVector {
                    a: field.wrap(a),
                    b: field.wrap(b),
                    exps: (0..q).map(|x| entry(field, t, a, b, x)).collect(),
                })
                .collect();
            Basis::Phase {
                construction,
                a: field.wrap(a),
                vectors,
            }
        })
        .collect();
    let mut bases = Vec::with_capacity(q as usize + 1);
    bases.push(Basis::Standard { dim: q as usize });
    bases.extend(phase);
    MubCollection::from_parts(field.clone(), construction, f.clone(), bases)
}

/// `v_ab = (1/√q)(ω^tr(a·Π(x) + b·x))_x`, plus the standard basis.
pub fn build_planar_mubs(pi: &PolyFn) -> Result<MubCollection> {
    if !is_planar(pi) {
        return Err(Error::NotPlanar);
    }
    Ok(build(pi, Construction::Planar, |f, t, a, b, x| {
        f.trace_idx(f.add_idx(f.mul_idx(a, t[x as usize]), f.mul_idx(b, x)))
    }))
}

/// `v_ab = (1/√q)(ω^tr(A(x+a) + b·(x+a)))_x`, plus the standard basis.
pub fn build_alltop_mubs(a_fn: &PolyFn) -> Result<MubCollection> {
    if !is_alltop(a_fn)? {
        return Err(Error::NotAlltop);
    }
    Ok(build(a_fn, Construction::Alltop, |f, t, a, b, x| {
        let y = f.add_idx(x, a);
        f.trace_idx(f.add_idx(t[y as usize], f.mul_idx(b, y)))
    }))
}

/// Basis index (0 = standard) and vector index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct VectorRef {
    pub basis: usize,
    pub vector: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// `q·⟨v|v⟩ ≠ q`
    NotNormalized,
    /// same basis, `q·⟨u|v⟩ ≠ 0`
    NotOrthogonal,
    /// different bases, `|q·⟨u|v⟩|^2 ≠ q`
    Biased,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub left: VectorRef,
    pub right: VectorRef,
    pub kind: FailureKind,
    /// The offending scaled inner product (or its squared norm for `Biased`).
    pub value: CycInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MubVerification {
    pub bases: usize,
    pub dimension: usize,
    /// diagonal checks `q·⟨v|v⟩ = q`
    pub norms_checked: u64,
    /// distinct pairs inside non-standard bases, computed
    pub intra_pairs_checked: u64,
    /// pairs across two non-standard bases, computed
    pub cross_pairs_checked: u64,
    /// pairs between the standard basis and another basis; every entry has
    /// magnitude 1/√q by construction, so these are counted, not computed
    pub standard_cross_pairs: u64,
    /// distinct pairs inside the standard basis, orthonormal by construction
    pub standard_intra_pairs: u64,
    pub sampled: bool,
    pub first_failure: Option<PairFailure>,
}

impl MubVerification {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    /// All distinct pairs inside a basis, standard basis included.
    pub fn total_intra_pairs(&self) -> u64 {
        self.intra_pairs_checked + self.standard_intra_pairs
    }

    /// All pairs across distinct bases, standard basis included.
    pub fn total_cross_pairs(&self) -> u64 {
        self.cross_pairs_checked + self.standard_cross_pairs
    }
}

fn check_intra(
    q: u64,
    u: &ExponentVector,
    v: &ExponentVector,
    same: bool,
) -> Option<(FailureKind, CycInt)> {
    let z = CycInt::from_exponent_counts(&difference_counts(u.p(), &u.exps, &v.exps));
    if same {
        (z != CycInt::from_int(u.p(), q)).then_some((FailureKind::NotNormalized, z))
    } else {
        (!z.is_zero()).then_some((FailureKind::NotOrthogonal, z))
    }
}

fn check_cross(q: u64, u: &ExponentVector, v: &ExponentVector) -> Option<(FailureKind, CycInt)> {
    let n = CycInt::from_exponent_counts(&difference_counts(u.p(), &u.exps, &v.exps)).norm_sq();
    (n != CycInt::from_int(u.p(), q)).then_some((FailureKind::Biased, n))
}

/// Exhaustive exact verification.
pub fn verify_mub_collection(m: &MubCollection) -> MubVerification {
    verify(m, None)
}

/// All norms and intra-basis pairs, plus a deterministic pseudorandom sample
/// of `cross_samples` cross-basis pairs drawn from `seed`.
pub fn verify_mub_collection_sampled(
    m: &MubCollection,
    cross_samples: usize,
    seed: u64,
) -> MubVerification {
    verify(m, Some((cross_samples, seed)))
}

fn verify(m: &MubCollection, sample: Option<(usize, u64)>) -> MubVerification {
    let q = m.dimension() as u64;
    let phase = m.phase_vectors();
    let nphase = phase.len();
    // basis indices of the phase bases in m.bases
    let phase_ids: Vec<usize> = m
        .bases
        .iter()
        .enumerate()
        .filter(|(_, b)| matches!(b, Basis::Phase { .. }))
        .map(|(i, _)| i)
        .collect();
    let has_standard = nphase < m.bases.len();
    let r = |pi: usize, v: usize| VectorRef {
        basis: phase_ids[pi],
        vector: v,
    };
    let fail = |l: VectorRef, rr: VectorRef, (kind, value): (FailureKind, CycInt)| PairFailure {
        left: l,
        right: rr,
        kind,
        value,
    };

    // Diagonal and intra-basis pairs, in (basis, u, v) order with u <= v.
    let mut intra_index = Vec::new();
    for (bi, vs) in phase.iter().enumerate() {
        for u in 0..vs.len() {
            for v in u..vs.len() {
                intra_index.push((bi, u, v));
            }
        }
    }
    let norms_checked: u64 = phase.iter().map(|vs| vs.len() as u64).sum();
    let intra_pairs_checked = intra_index.len() as u64 - norms_checked;
    let mut first_failure = intra_index
        .par_iter()
        .map(|&(bi, u, v)| {
            check_intra(q, &phase[bi][u], &phase[bi][v], u == v)
                .map(|f| fail(r(bi, u), r(bi, v), f))
        })
        .find_first(Option::is_some)
        .flatten();

    // Cross-basis pairs.
    let basis_pairs: Vec<(usize, usize)> = (0..nphase)
        .flat_map(|i| (i + 1..nphase).map(move |j| (i, j)))
        .collect();
    let cross_pairs_checked;
    let cross_failure = match sample {
        None => {
            let per = q * q;
            let total = basis_pairs.len() as u64 * per;
            cross_pairs_checked = total;
            (0..total)
                .into_par_iter()
                .map(|idx| {
                    let (i, j) = basis_pairs[(idx / per) as usize];
                    let u = ((idx % per) / q) as usize;
                    let v = (idx % q) as usize;
                    let (bu, bv) = (phase[i].get(u), phase[j].get(v));
                    match (bu, bv) {
                        (Some(x), Some(y)) => {
                            check_cross(q, x, y).map(|f| fail(r(i, u), r(j, v), f))
                        }
                        _ => None,
                    }
                })
                .find_first(Option::is_some)
                .flatten()
        }
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws: Vec<(usize, usize, usize, usize)> = if basis_pairs.is_empty() {
                Vec::new()
            } else {
                (0..count)
                    .map(|_| {
                        let (i, j) = basis_pairs[rng.gen_range(0..basis_pairs.len())];
                        let u = rng.gen_range(0..phase[i].len());
                        let v = rng.gen_range(0..phase[j].len());
                        (i, j, u, v)
                    })
                    .collect()
            };
            cross_pairs_checked = draws.len() as u64;
            draws
                .par_iter()
                .map(|&(i, j, u, v)| {
                    check_cross(q, &phase[i][u], &phase[j][v]).map(|f| fail(r(i, u), r(j, v), f))
                })
                .find_first(Option::is_some)
                .flatten()
        }
    };
    first_failure = first_failure.or(cross_failure);

    let (standard_cross_pairs, standard_intra_pairs) = if has_standard {
        (q * norms_checked, q * (q - 1) / 2)
    } else {
        (0, 0)
    };

    MubVerification {
        bases: m.bases.len(),
        dimension: q as usize,
        norms_checked,
        intra_pairs_checked,
        cross_pairs_checked,
        standard_cross_pairs,
        standard_intra_pairs,
        sampled: sample.is_some(),
        first_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, r: u32) -> Field {
        Field::with_default_modulus(p, r).unwrap()
    }

    #[test]
    fn planar_collection_f5() {
        let f = field(5, 1);
        let m = build_planar_mubs(&PolyFn::monomial(&f, 2)).unwrap();
        assert_eq!(m.bases().len(), 6);
        assert!(m.bases()[1..].iter().all(|b| b.len() == 5));
        assert_eq!(m.bases()[0].kind(), BasisKind::Standard);
        assert_eq!(m.bases()[1].kind(), BasisKind::Planar);
        // v_{0,0} is the constant vector
        assert!(m.bases()[1].vectors()[0].exps().iter().all(|&t| t == 0));

        let rep = verify_mub_collection(&m);
        assert!(rep.passed(), "{:?}", rep.first_failure);
        // (q+1 choose 2)·q^2 cross pairs and (q+1)·(q choose 2) intra pairs
        assert_eq!(rep.total_cross_pairs(), 15 * 25);
        assert_eq!(rep.total_intra_pairs(), 6 * 10);
        assert_eq!(rep.norms_checked, 25);
    }

    #[test]
    fn rejects_non_planar_and_non_alltop() {
        let f = field(5, 1);
        assert_eq!(
            build_planar_mubs(&PolyFn::monomial(&f, 3)).map(|_| ()),
            Err(Error::NotPlanar)
        );
        let f25 = field(5, 2);
        assert_eq!(
            build_alltop_mubs(&PolyFn::monomial(&f25, 7)).map(|_| ()),
            Err(Error::NotAlltop)
        );
        let f9 = field(3, 2);
        assert_eq!(
            build_alltop_mubs(&PolyFn::monomial(&f9, 3)).map(|_| ()),
            Err(Error::CharacteristicTooSmall { p: 3 })
        );
    }

    #[test]
    fn inner_products() {
        let f = field(5, 1);
        let m = build_alltop_mubs(&PolyFn::monomial(&f, 3)).unwrap();
        let v = |basis: usize, b: usize| &m.bases()[basis].vectors()[b];
        assert_eq!(
            inner_product_scaled(v(1, 2), v(1, 2)).unwrap(),
            CycInt::from_int(5, 5)
        );
        assert!(inner_product_scaled(v(2, 1), v(2, 3)).unwrap().is_zero());
        let z = inner_product_scaled(v(1, 1), v(4, 3)).unwrap();
        assert_eq!(z.norm_sq(), CycInt::from_int(5, 5));
        assert_eq!(inner_product_scaled(v(4, 3), v(1, 1)).unwrap(), z.conj());
    }

    #[test]
    fn corrupted_collection_is_located() {
        let f = field(5, 1);
        let mut m = build_planar_mubs(&PolyFn::monomial(&f, 2)).unwrap();
        let vec = m.vector_mut(3, 2).unwrap();
        let t = vec.exps()[4];
        vec.set_exponent(4, (t + 1) % 5).unwrap();
        let rep = verify_mub_collection(&m);
        let fail = rep.first_failure.expect("corruption must be detected");
        assert_eq!(fail.kind, FailureKind::NotOrthogonal);
        assert!(fail.left.basis == 3 && (fail.left.vector == 2 || fail.right.vector == 2));
    }

    #[test]
    fn sampled_verification_is_deterministic() {
        let f = field(7, 1);
        let m = build_alltop_mubs(&PolyFn::monomial(&f, 3)).unwrap();
        let a = verify_mub_collection_sampled(&m, 500, 42);
        let b = verify_mub_collection_sampled(&m, 500, 42);
        assert_eq!(a, b);
        assert!(a.passed());
        assert_eq!(a.cross_pairs_checked, 500);
        assert!(a.sampled);
    }

    #[test]
    fn exponent_vector_validation() {
        let f = field(5, 1);
        assert!(ExponentVector::new(f.zero(), f.zero(), vec![0; 4]).is_err());
        assert!(ExponentVector::new(f.zero(), f.zero(), vec![0, 0, 0, 0, 5]).is_err());
        assert!(ExponentVector::new(f.zero(), f.zero(), vec![0, 1, 2, 3, 4]).is_ok());
    }
}
