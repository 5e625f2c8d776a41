//! A deliberately naive finite-field oracle for cross-checking the library.
//!
//! Elements are coefficient vectors over Z_p, multiplied by schoolbook
//! convolution and long division by the modulus. No tables, no logs. The
//! only thing shared with the library is the index encoding
//! `index = Σ c_i·p^i`.

#![allow(dead_code)]

use std::collections::HashSet;

pub mod suites;

use alltoplab::{Field, PolyFn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gf {
    pub p: u64,
    pub r: usize,
    pub modulus: Vec<u64>,
}

impl Gf {
    pub fn new(p: u64, modulus: &[u32]) -> Self {
        Gf {
            p,
            r: modulus.len() - 1,
            modulus: modulus.iter().map(|&c| c as u64).collect(),
        }
    }

    pub fn of(field: &Field) -> Self {
        Gf::new(field.p() as u64, field.spec().modulus())
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.r as u32)
    }

    pub fn coeffs(&self, mut i: u64) -> Vec<u64> {
        (0..self.r)
            .map(|_| {
                let c = i % self.p;
                i /= self.p;
                c
            })
            .collect()
    }

    pub fn index(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.index(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let s: Vec<u64> = self
            .coeffs(a)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.index(&s)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.r];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for k in (self.r..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (t, m) in self.modulus.iter().enumerate() {
                let slot = k - self.r + t;
                prod[slot] = (prod[slot] + self.p * self.p - c * m) % self.p;
            }
        }
        self.index(&prod[..self.r])
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `x + x^p + ... + x^(p^(r-1))`, which lies in Z_p.
    pub fn trace(&self, a: u64) -> u64 {
        let mut s = 0;
        let mut y = a;
        for _ in 0..self.r {
            s = self.add(s, y);
            y = self.pow(y, self.p);
        }
        assert!(s < self.p, "trace left the prime field");
        s
    }

    /// Evaluates `Σ c·x^e` for `(e, c)` pairs.
    pub fn eval(&self, terms: &[(u64, u64)], x: u64) -> u64 {
        terms
            .iter()
            .fold(0, |acc, &(e, c)| self.add(acc, self.mul(c, self.pow(x, e))))
    }

    pub fn table(&self, f: &PolyFn) -> Vec<u64> {
        let terms: Vec<(u64, u64)> = f
            .terms()
            .map(|(e, c)| (e as u64, c.index() as u64))
            .collect();
        (0..self.q()).map(|x| self.eval(&terms, x)).collect()
    }

    pub fn delta(&self, t: &[u64], a: u64) -> Vec<u64> {
        (0..self.q())
            .map(|x| self.sub(t[self.add(x, a) as usize], t[x as usize]))
            .collect()
    }

    pub fn is_bijective(&self, t: &[u64]) -> bool {
        t.iter().collect::<HashSet<_>>().len() == t.len()
    }

    pub fn is_planar(&self, t: &[u64]) -> bool {
        (1..self.q()).all(|a| self.is_bijective(&self.delta(t, a)))
    }

    pub fn is_alltop(&self, t: &[u64]) -> bool {
        (1..self.q()).all(|a| self.is_planar(&self.delta(t, a)))
    }

    /// `Σ_x e^(2πi·tr(a·t[x] + b·x)/p)` in floating point.
    pub fn char_sum(&self, t: &[u64], a: u64, b: u64) -> Complex64 {
        let step = std::f64::consts::TAU / self.p as f64;
        (0..self.q())
            .map(|x| {
                let v = self.add(self.mul(a, t[x as usize]), self.mul(b, x));
                Complex64::from_polar(1.0, step * self.trace(v) as f64)
            })
            .sum()
    }
}

pub fn field(p: u32, r: u32) -> Field {
    Field::with_default_modulus(p, r).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random additive polynomial `Σ c_k·x^(p^k)`.
pub fn random_additive(field: &Field, rng: &mut impl Rng) -> PolyFn {
    let q = field.q();
    let terms: Vec<(u64, alltoplab::FieldElement)> = (0..field.r())
        .map(|k| {
            (
                (field.p() as u64).pow(k),
                field.element(rng.gen_range(0..q)).unwrap(),
            )
        })
        .collect();
    PolyFn::from_terms(field, terms).unwrap()
}

/// Random sparse polynomial with up to `max_terms` terms.
pub fn random_poly(field: &Field, max_terms: usize, rng: &mut impl Rng) -> PolyFn {
    let q = field.q();
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(u64, alltoplab::FieldElement)> = (0..n)
        .map(|_| {
            (
                rng.gen_range(0..q as u64),
                field.element(rng.gen_range(1..q)).unwrap(),
            )
        })
        .collect();
    PolyFn::from_terms(field, terms).unwrap()
}

/// Random affine permutation `L + c` with `L` an additive permutation.
pub fn random_affine_permutation(field: &Field, rng: &mut impl Rng) -> PolyFn {
    loop {
        let l = random_additive(field, rng);
        if alltoplab::fn_algebra::is_permutation(&l) {
            let c = PolyFn::constant(&field.element(rng.gen_range(0..field.q())).unwrap());
            return l.add(&c).unwrap();
        }
    }
}
