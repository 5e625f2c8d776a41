//! Seeded property suites for the function algebra: 20 pseudorandom
//! instances per property on F_25 plus the named boundary cases. Each suite
//! panics on the first violation.

use alltoplab::fn_algebra::{
    alltop_witness, is_additive, is_additive_by_table, is_additive_permutation, is_alltop,
    is_do_shape, is_permutation, is_planar, planar_witness,
};
use alltoplab::{Field, FieldElement, PolyFn};
use rand::Rng;

use super::{field, random_additive, random_affine_permutation, random_poly, rng, Gf};

const INSTANCES: usize = 20;

fn lit(f: &Field, s: &str) -> PolyFn {
    PolyFn::parse(f, s).unwrap()
}

fn random_element(f: &Field, rng: &mut impl Rng) -> FieldElement {
    f.element(rng.gen_range(0..f.q())).unwrap()
}

fn random_nonzero(f: &Field, rng: &mut impl Rng) -> FieldElement {
    f.element(rng.gen_range(1..f.q())).unwrap()
}

fn constant(c: &FieldElement) -> PolyFn {
    PolyFn::constant(c)
}

/// Planar quadratics on F_25: c·x^2 and c·x^10.
fn random_planar(f: &Field, rng: &mut impl Rng) -> PolyFn {
    let e = if rng.gen_bool(0.5) { 2 } else { 10 };
    PolyFn::term(&random_nonzero(f, rng), e)
}

fn delta_composition_instance(f: &Field, func: &PolyFn, l: &PolyFn) {
    let lt = l.tabulate();
    let composed = func.compose(l).unwrap();
    for a in f.nonzero_elements() {
        let lhs = func.delta(&lt.get(&a)).unwrap().tabulate();
        let rhs = composed.delta(&a).unwrap().tabulate();
        for x in f.elements() {
            assert_eq!(
                lhs.get(&lt.get(&x)),
                rhs.get(&x),
                "f = {func}, L = {l}, a = {a}, x = {x}"
            );
        }
    }
}

pub fn delta_of_composition_with_additive() {
    let f = field(5, 2);
    let mut g = rng(0x1e1);
    for _ in 0..INSTANCES {
        let func = random_poly(&f, 4, &mut g);
        let l = random_additive(&f, &mut g);
        delta_composition_instance(&f, &func, &l);
    }
    // boundary: L = 0, L = x, L = x^5 - x (nontrivial kernel)
    for l in ["0", "x", "x^5 - x"] {
        delta_composition_instance(&f, &lit(&f, "x^3 + 2*x^7"), &lit(&f, l));
    }
}

pub fn delta_of_composition_on_f49() {
    let f = field(7, 2);
    let mut g = rng(0x1e149);
    for _ in 0..5 {
        let func = random_poly(&f, 3, &mut g);
        let l = random_additive(&f, &mut g);
        delta_composition_instance(&f, &func, &l);
    }
}

pub fn planar_closure_under_affine_addition() {
    let f = field(5, 2);
    let mut g = rng(0xe3);
    let mut planar_seen = 0;
    for i in 0..INSTANCES {
        let pi = if i % 2 == 0 {
            random_planar(&f, &mut g)
        } else {
            random_poly(&f, 3, &mut g)
        };
        let l = random_additive(&f, &mut g);
        let c = constant(&random_element(&f, &mut g));
        let shifted = pi.add(&l).unwrap().add(&c).unwrap();
        let before = is_planar(&pi);
        planar_seen += before as usize;
        assert_eq!(before, is_planar(&shifted), "Π = {pi}, L = {l}");
    }
    assert!(planar_seen >= INSTANCES / 2);
    // boundary: x^2 + x^5 + 1 is planar, x^3 + x is not
    assert!(is_planar(&lit(&f, "x^2 + x^5 + 1")));
    assert!(!is_planar(&lit(&f, "x^3 + x")));
}

pub fn alltop_closure_under_planar_do_addition() {
    let f = field(5, 2);
    let mut g = rng(0x12);
    let a = PolyFn::monomial(&f, 3);
    for i in 0..INSTANCES {
        let pi = if i == 0 {
            PolyFn::monomial(&f, 2)
        } else {
            random_planar(&f, &mut g)
        };
        assert!(is_do_shape(&pi) && is_planar(&pi));
        let l = random_additive(&f, &mut g);
        let c = constant(&random_element(&f, &mut g));
        let sum = a.add(&pi).unwrap().add(&l).unwrap().add(&c).unwrap();
        assert!(is_alltop(&sum).unwrap(), "{sum}");
    }
}

fn alltop_composition_instance(a: &PolyFn, l: &PolyFn) {
    let expected = is_alltop(a).unwrap() && is_additive_permutation(l).unwrap();
    let inner = is_alltop(&a.compose(l).unwrap()).unwrap();
    let outer = is_alltop(&l.compose(a).unwrap()).unwrap();
    assert_eq!((inner, outer), (expected, expected), "A = {a}, L = {l}");
}

pub fn alltop_preserved_by_additive_composition() {
    let f = field(5, 2);
    let mut g = rng(0x13);
    let cube = PolyFn::monomial(&f, 3);
    let mut perms = 0;
    for _ in 0..INSTANCES {
        let l = random_additive(&f, &mut g);
        perms += is_permutation(&l) as usize;
        alltop_composition_instance(&cube, &l);
    }
    assert!(perms > 0 && perms < INSTANCES, "both kinds of L sampled");
    alltop_composition_instance(&cube, &lit(&f, "x^5"));
    alltop_composition_instance(&cube, &lit(&f, "x^5 - x"));
    alltop_composition_instance(&PolyFn::monomial(&f, 7), &lit(&f, "x^5"));
}

pub fn products_of_additive_with_a_root_are_not_alltop() {
    let f = field(5, 2);
    let mut g = rng(0x73);
    for _ in 0..INSTANCES {
        let l1 = loop {
            let l = random_additive(&f, &mut g);
            if !is_permutation(&l) {
                break l;
            }
        };
        let l2 = random_additive(&f, &mut g);
        let l3 = random_additive(&f, &mut g);
        let prod = l1.mul(&l2).unwrap().mul(&l3).unwrap();
        assert!(!is_alltop(&prod).unwrap(), "{l1} · {l2} · {l3}");
    }
    // x^7 = x^5·x·x has only permutation factors and is still not Alltop
    let x7 = lit(&f, "x^5")
        .mul(&lit(&f, "x"))
        .unwrap()
        .mul(&lit(&f, "x"))
        .unwrap();
    assert_eq!(x7, PolyFn::monomial(&f, 7));
    assert!(!is_alltop(&x7).unwrap());
}

pub fn planarity_is_ea_invariant() {
    let f = field(5, 2);
    let mut g = rng(0xea);
    for i in 0..INSTANCES {
        let func = if i % 2 == 0 {
            random_planar(&f, &mut g)
        } else {
            random_poly(&f, 3, &mut g)
        };
        let l1 = random_affine_permutation(&f, &mut g);
        let l2 = random_affine_permutation(&f, &mut g);
        let l3 = random_additive(&f, &mut g);
        let moved = l1
            .compose(&func.compose(&l2).unwrap())
            .unwrap()
            .add(&l3)
            .unwrap();
        assert_eq!(is_planar(&func), is_planar(&moved), "f = {func}");
    }
}

pub fn delta_matches_pointwise_difference() {
    let f = field(5, 2);
    let gf = Gf::of(&f);
    let mut g = rng(0xd1);
    for i in 0..INSTANCES {
        let func = random_poly(&f, 5, &mut g);
        let a = if i == 0 {
            f.zero()
        } else {
            random_element(&f, &mut g)
        };
        let d = func.delta(&a).unwrap().tabulate();
        let t = func.tabulate();
        for x in f.elements() {
            assert_eq!(d.get(&x), &t.get(&(&x + &a)) - &t.get(&x));
        }
        let oracle = gf.delta(&gf.table(&func), a.index() as u64);
        let got: Vec<u64> = d.values().iter().map(|&v| v as u64).collect();
        assert_eq!(got, oracle);
    }
}

pub fn checks_agree_with_naive_oracle() {
    let f = field(5, 2);
    let gf = Gf::of(&f);
    let mut g = rng(0x0c);
    let mut cases: Vec<PolyFn> = (0..INSTANCES).map(|_| random_poly(&f, 3, &mut g)).collect();
    for s in [
        "x^2",
        "x^10",
        "x^3",
        "x^15",
        "x^7",
        "2*x^6 + x^2",
        "x^2 + [0,1]*x^10",
    ] {
        cases.push(lit(&f, s));
    }
    for func in &cases {
        let t = gf.table(func);
        assert_eq!(is_planar(func), gf.is_planar(&t), "{func}");
        assert_eq!(is_alltop(func).unwrap(), gf.is_alltop(&t), "{func}");
        assert_eq!(is_permutation(func), gf.is_bijective(&t), "{func}");
        assert_eq!(is_additive(func), is_additive_by_table(func), "{func}");
    }
}

pub fn witnesses_are_genuine() {
    let f = field(5, 2);
    let x7 = PolyFn::monomial(&f, 7);
    let w = alltop_witness(&x7)
        .unwrap()
        .expect("x^7 is not Alltop on F_25");
    let d = x7.delta(&w.a).unwrap();
    let dd = d.delta(&w.planar.a).unwrap();
    assert_ne!(w.planar.x, w.planar.y);
    assert_eq!(
        dd.evaluate(&w.planar.x).unwrap(),
        dd.evaluate(&w.planar.y).unwrap()
    );
    assert!(planar_witness(&d).is_some());

    let w = planar_witness(&PolyFn::monomial(&f, 3)).unwrap();
    let d = PolyFn::monomial(&f, 3).delta(&w.a).unwrap();
    assert_eq!(d.evaluate(&w.x).unwrap(), d.evaluate(&w.y).unwrap());
}

pub const ALL: &[(&str, fn())] = &[
    (
        "delta of composition with additive maps",
        delta_of_composition_with_additive,
    ),
    ("delta of composition on F_49", delta_of_composition_on_f49),
    (
        "planar closure under affine addition",
        planar_closure_under_affine_addition,
    ),
    (
        "alltop closure under planar DO addition",
        alltop_closure_under_planar_do_addition,
    ),
    (
        "composition with additive maps",
        alltop_preserved_by_additive_composition,
    ),
    (
        "products of additive maps with a root",
        products_of_additive_with_a_root_are_not_alltop,
    ),
    ("EA invariance of planarity", planarity_is_ea_invariant),
    (
        "delta against pointwise difference",
        delta_matches_pointwise_difference,
    ),
    (
        "checks against naive oracle",
        checks_agree_with_naive_oracle,
    ),
    ("witnesses are genuine", witnesses_are_genuine),
];
