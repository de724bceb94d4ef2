//! Double description (Motzkin) conversion from an inequality system to
//! generators, over the integers.
//!
//! Rays are kept primitive; adjacency of a positive/negative pair is decided
//! combinatorially from the sets of tight inequalities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::LatticeVector;

#[derive(Clone, Debug)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }

    fn full_prefix(n: usize, len: usize) -> Self {
        let mut s = BitSet::new(n);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    tight: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    LatticeVector::new(v).primitive().into_entries()
}

/// `c·x − s·l0`, made primitive. With `c > 0` the direction of `x` modulo `l0` is kept.
fn shift(c: &BigInt, x: &[BigInt], s: &BigInt, l0: &[BigInt]) -> Vec<BigInt> {
    primitive(x.iter().zip(l0).map(|(a, b)| c * a - s * b).collect())
}

/// Generators of `{x : a·x ≥ 0 ∀a ∈ ineqs, e·x = 0 ∀e ∈ eqs}`: a basis of the
/// lineality space and the extreme rays modulo it (neither canonicalized).
#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub lineality: Vec<LatticeVector>,
    pub rays: Vec<LatticeVector>,
}

pub(crate) fn generators_of(dim: usize, ineqs: &[LatticeVector], eqs: &[LatticeVector]) -> Generators {
    let n = ineqs.len();
    let mut lin: Vec<Vec<BigInt>> = (0..dim).map(|i| LatticeVector::unit(dim, i).into_entries()).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for e in eqs {
        let e = e.entries();
        if let Some(k) = lin.iter().position(|l| !dot(e, l).is_zero()) {
            let mut l0 = lin.remove(k);
            let mut c = dot(e, &l0);
            if c.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                c = -c;
            }
            for l in lin.iter_mut() {
                let s = dot(e, l);
                if !s.is_zero() {
                    *l = shift(&c, l, &s, &l0);
                }
            }
            for r in rays.iter_mut() {
                let s = dot(e, &r.v);
                if !s.is_zero() {
                    r.v = shift(&c, &r.v, &s, &l0);
                }
            }
        }
        // Otherwise the equation vanishes on the whole current space (no rays exist yet).
    }

    for (idx, a) in ineqs.iter().enumerate() {
        let a = a.entries();
        if let Some(k) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lin.remove(k);
            let mut c = dot(a, &l0);
            if c.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                c = -c;
            }
            for l in lin.iter_mut() {
                let s = dot(a, l);
                if !s.is_zero() {
                    *l = shift(&c, l, &s, &l0);
                }
            }
            for r in rays.iter_mut() {
                let s = dot(a, &r.v);
                if !s.is_zero() {
                    r.v = shift(&c, &r.v, &s, &l0);
                }
                r.tight.insert(idx);
            }
            // l0 was a line, so it is tight on every earlier inequality.
            rays.push(Ray { v: l0, tight: BitSet::full_prefix(n, idx) });
        } else {
            rays = cut(rays, a, idx);
        }
    }

    Generators {
        lineality: lin.into_iter().map(LatticeVector::new).collect(),
        rays: rays.into_iter().map(|r| LatticeVector::new(r.v)).collect(),
    }
}

/// One double-description step against `a·x ≥ 0`, inequality number `idx`.
fn cut(rays: Vec<Ray>, a: &[BigInt], idx: usize) -> Vec<Ray> {
    let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
    let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
    let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();

    let mut out = Vec::with_capacity(rays.len());
    for (r, v) in rays.iter().zip(&values) {
        if v.is_negative() {
            continue;
        }
        let mut r = r.clone();
        if v.is_zero() {
            r.tight.insert(idx);
        }
        out.push(r);
    }
    for &p in &pos {
        for &q in &neg {
            let common = rays[p].tight.intersect(&rays[q].tight);
            let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == q || !common.is_subset(&r.tight));
            if !adjacent {
                continue;
            }
            let (sp, sq) = (&values[p], &values[q]);
            let v: Vec<BigInt> = rays[q].v.iter().zip(&rays[p].v).map(|(x, y)| sp * x - sq * y).collect();
            let mut tight = common;
            tight.insert(idx);
            out.push(Ray { v: primitive(v), tight });
        }
    }
    out
}
