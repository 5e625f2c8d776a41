mod common;

use std::collections::BTreeSet;

use alltoplab::cyclotomic::CycInt;
use alltoplab::mub::{
    build_alltop_mubs, build_planar_mubs, correlation_report, inner_product_scaled,
    load_signal_set, to_signal_set, verify_mub_collection, verify_mub_collection_sampled,
    FailureKind, MubCollection, MubExport, Quantity, SignalSet, SignalVector,
};
use alltoplab::{Error, PolyFn};
use common::{field, Gf};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn planar(p: u32, r: u32, e: u64) -> MubCollection {
    build_planar_mubs(&PolyFn::monomial(&field(p, r), e)).unwrap()
}

fn alltop(p: u32, r: u32, e: u64) -> MubCollection {
    build_alltop_mubs(&PolyFn::monomial(&field(p, r), e)).unwrap()
}

fn binom(n: u64) -> u64 {
    n * (n - 1) / 2
}

#[test]
fn full_verification_counts() {
    let cases = [
        planar(5, 1, 2),
        planar(7, 1, 2),
        planar(5, 2, 2),
        planar(5, 2, 10),
        alltop(5, 1, 3),
        alltop(7, 1, 3),
        alltop(5, 2, 3),
        alltop(5, 2, 15),
        planar(3, 2, 2),
    ];
    for m in &cases {
        let q = m.dimension() as u64;
        let rep = verify_mub_collection(m);
        assert!(rep.passed(), "{:?}: {:?}", m.function(), rep.first_failure);
        assert_eq!(rep.bases as u64, q + 1);
        assert_eq!(rep.total_cross_pairs(), binom(q + 1) * q * q);
        assert_eq!(rep.total_intra_pairs(), (q + 1) * binom(q));
        assert_eq!(rep.norms_checked, q * q);
        assert!(!rep.sampled);
    }
}

#[test]
fn alltop_construction_entries() {
    // entry (a, b) at x is tr(A(x+a) + b(x+a)); check a few by hand
    let f = field(7, 1);
    let m = alltop(7, 1, 3);
    for (a, b) in [(0u32, 0u32), (2, 5), (6, 1)] {
        let v = &m.bases()[1 + a as usize].vectors()[b as usize];
        for x in 0..7u32 {
            let y = (x + a) % 7;
            let expected = (y * y * y + b * y) % 7;
            assert_eq!(v.exps()[x as usize], expected);
        }
        assert_eq!(v.a(), &f.element(a).unwrap());
        assert_eq!(v.b(), &f.element(b).unwrap());
    }
}

#[test]
fn planar_entries_match_oracle_trace() {
    let f = field(5, 2);
    let gf = Gf::of(&f);
    let m = planar(5, 2, 2);
    for (a, b) in [(1u64, 0u64), (7, 13), (24, 24)] {
        let v = &m.bases()[1 + a as usize].vectors()[b as usize];
        for x in 0..25u64 {
            let arg = gf.add(gf.mul(a, gf.mul(x, x)), gf.mul(b, x));
            assert_eq!(v.exps()[x as usize] as u64, gf.trace(arg));
        }
    }
}

#[test]
fn inner_products_are_conjugate_symmetric_and_two_valued() {
    let m = alltop(5, 1, 3);
    let q = CycInt::from_int(5, 5);
    let vectors: Vec<_> = m.bases()[1..].iter().flat_map(|b| b.vectors()).collect();
    for u in &vectors {
        for v in &vectors {
            let uv = inner_product_scaled(u, v).unwrap();
            assert_eq!(uv, inner_product_scaled(v, u).unwrap().conj());
            let n = uv.norm_sq();
            assert!(n.is_zero() || n == q || u == v);
        }
    }
}

#[test]
fn mismatched_fields_are_rejected() {
    let a = planar(5, 1, 2);
    let b = planar(7, 1, 2);
    let u = &a.bases()[1].vectors()[0];
    let v = &b.bases()[1].vectors()[0];
    assert_eq!(inner_product_scaled(u, v), Err(Error::FieldMismatch));
}

#[test]
fn sampled_verification_on_f49() {
    let m = alltop(7, 2, 9);
    assert_eq!(m.bases().len(), 50);
    let rep = verify_mub_collection_sampled(&m, 100_000, 7);
    assert!(rep.passed());
    assert_eq!(rep.cross_pairs_checked, 100_000);
    assert_eq!(rep.intra_pairs_checked, 49 * binom(49));
}

#[test]
fn corruption_is_reported() {
    let mut m = alltop(7, 1, 3);
    let v = m.vector_mut(5, 3).unwrap();
    let t = v.exps()[0];
    v.set_exponent(0, (t + 3) % 7).unwrap();
    let rep = verify_mub_collection(&m);
    let fail = rep.first_failure.unwrap();
    assert_eq!(fail.kind, FailureKind::NotOrthogonal);
    assert_eq!(fail.left.basis, 5);
    assert_eq!((fail.left.vector, fail.right.vector), (0, 3));
    assert!(m.vector_mut(0, 0).is_none());
}

fn exact(q: &Quantity) -> &BigRational {
    q.as_exact().expect("exact report")
}

#[test]
fn complete_sets_meet_both_bounds() {
    for (m, q) in [
        (planar(5, 1, 2), 5u64),
        (alltop(7, 1, 3), 7),
        (planar(5, 2, 2), 25),
        (alltop(5, 2, 3), 25),
    ] {
        let s = to_signal_set(&m);
        assert_eq!((s.n() as u64, s.k() as u64), (q * q + q, q));
        let rep = correlation_report(&s).unwrap();
        assert!(rep.exact);
        assert_eq!(exact(&rep.i_max_sq), &ratio(1, q));
        assert_eq!(rep.levenstein_sq, Some(ratio(1, q)));
        assert_eq!(rep.meets_levenstein, Some(true));
        let n = q * q + q;
        assert_eq!(exact(&rep.i_rms_sq), &ratio(n - q, (n - 1) * q));
        assert!(rep.meets_welch_rms);
        assert!(exact(&rep.i_max_sq) >= exact(&rep.i_rms_sq));
    }
}

/// Direct complex summation over all ordered pairs, independent of the
/// exact path.
#[test]
fn rms_matches_direct_float_summation() {
    let s = to_signal_set(&planar(5, 1, 2));
    let vecs: Vec<Vec<Complex64>> = (0..s.n()).map(|i| s.to_complex(i)).collect();
    let mut total = 0.0;
    let mut max: f64 = 0.0;
    let mut pairs = 0;
    for (i, u) in vecs.iter().enumerate() {
        for (j, v) in vecs.iter().enumerate() {
            if i == j {
                continue;
            }
            let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
            total += ip.norm_sqr();
            max = max.max(ip.norm_sqr());
            pairs += 1;
        }
    }
    assert_eq!(pairs, 870);
    assert!((total / 870.0 - 5.0 / 29.0).abs() < 1e-12);
    assert!((max - 0.2).abs() < 1e-12);
    let rep = correlation_report(&s).unwrap();
    assert_eq!(exact(&rep.i_rms_sq), &ratio(5, 29));
}

#[test]
fn correlation_spectrum_is_two_valued() {
    let s = to_signal_set(&alltop(5, 1, 3));
    let vecs: Vec<Vec<Complex64>> = (0..s.n()).map(|i| s.to_complex(i)).collect();
    let mut values = BTreeSet::new();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            let ip: Complex64 = vecs[i]
                .iter()
                .zip(&vecs[j])
                .map(|(a, b)| a * b.conj())
                .sum();
            values.insert((ip.norm_sqr() * 5.0).round() as i64);
        }
    }
    assert_eq!(values, BTreeSet::from([0, 1]));
}

#[test]
fn lone_basis_and_degenerate_sets() {
    let m = planar(5, 1, 2);
    let mut e = MubExport::from_collection(&m);
    e.bases.clear();
    let s = e.to_signal_set().unwrap();
    let rep = correlation_report(&s).unwrap();
    assert_eq!(exact(&rep.i_max_sq), &ratio(0, 1));
    assert!(rep.meets_welch_max && rep.meets_welch_rms);
    assert_eq!(rep.levenstein_sq, None);

    let one = SignalSet::new(5, 5, vec![SignalVector::Phase(vec![0; 5])]).unwrap();
    assert_eq!(correlation_report(&one), Err(Error::DegenerateSet(1)));
}

#[test]
fn export_round_trip_preserves_report() {
    let m = alltop(7, 1, 3);
    let json = MubExport::from_collection(&m).to_json();
    let direct = correlation_report(&to_signal_set(&m)).unwrap();
    let loaded = correlation_report(&load_signal_set(&json).unwrap()).unwrap();
    assert_eq!(direct, loaded);
    let back = MubExport::from_json(&json)
        .unwrap()
        .to_collection()
        .unwrap();
    assert!(verify_mub_collection(&back).passed());
}

#[test]
fn rejected_constructions() {
    let f5 = field(5, 1);
    assert!(matches!(
        build_planar_mubs(&PolyFn::monomial(&f5, 3)),
        Err(Error::NotPlanar)
    ));
    let f25 = field(5, 2);
    assert!(matches!(
        build_alltop_mubs(&PolyFn::monomial(&f25, 7)),
        Err(Error::NotAlltop)
    ));
}
