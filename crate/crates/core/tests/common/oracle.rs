//! Independent reference implementations used to cross-check the library:
//! Fourier–Motzkin elimination for cone membership, brute-force lattice point
//! and monomial enumeration, and random test data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use coxring::linalg::LatticeVector;

/// Inequalities `a·x ≥ 0` describing `Cone(rays)` in `Z^rank`, by eliminating the
/// multipliers from `{(x, λ) : x = Σ λ_i r_i, λ ≥ 0}`. A multiplier that occurs in
/// a remaining equation is substituted away; otherwise it is eliminated by
/// Fourier–Motzkin with Chernikov's history rule. Redundant rows may remain.
pub fn fourier_motzkin(rank: usize, rays: &[LatticeVector]) -> Vec<Vec<BigInt>> {
    let m = rays.len();
    // Row layout: x_0..x_{rank-1}, λ_0..λ_{m-1}.
    let mut eqs: Vec<Vec<BigInt>> = (0..rank)
        .map(|j| {
            let mut eq = vec![BigInt::zero(); rank + m];
            eq[j] = BigInt::from(1);
            for (i, r) in rays.iter().enumerate() {
                eq[rank + i] = -r.get(j).clone();
            }
            eq
        })
        .collect();
    // Each inequality carries the set of original inequalities it combines.
    let mut ineqs: Vec<(Vec<BigInt>, Vec<usize>)> = (0..m)
        .map(|i| {
            let mut row = vec![BigInt::zero(); rank + m];
            row[rank + i] = BigInt::from(1);
            (row, vec![i])
        })
        .collect();
    let combine = |p: &[BigInt], a: &BigInt, n: &[BigInt], b: &BigInt| -> Vec<BigInt> {
        primitive_row(p.iter().zip(n).map(|(x, y)| x * a + y * b).collect())
    };
    for (step, i) in (0..m).enumerate() {
        let col = rank + i;
        if let Some(k) = eqs.iter().position(|e| !e[col].is_zero()) {
            let mut pivot = eqs.swap_remove(k);
            if pivot[col].is_negative() {
                pivot = pivot.iter().map(|a| -a).collect();
            }
            let pc = pivot[col].clone();
            for e in eqs.iter_mut() {
                let c = e[col].clone();
                *e = combine(e, &pc, &pivot, &-c);
            }
            for (r, _) in ineqs.iter_mut() {
                let c = r[col].clone();
                *r = combine(r, &pc, &pivot, &-c);
            }
            continue;
        }
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in ineqs {
            if r.0[col].is_positive() {
                pos.push(r);
            } else if r.0[col].is_negative() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        for (p, hp) in &pos {
            for (n, hn) in &neg {
                let mut h: Vec<usize> = hp.iter().chain(hn).copied().collect();
                h.sort();
                h.dedup();
                if h.len() > step + 2 {
                    continue;
                }
                next.push((combine(p, &-&n[col], n, &p[col]), h));
            }
        }
        next.sort();
        next.dedup_by(|a, b| a.0 == b.0);
        ineqs = next;
    }
    let mut out: Vec<Vec<BigInt>> = ineqs.into_iter().map(|(r, _)| r[..rank].to_vec()).collect();
    for e in eqs {
        out.push(e[..rank].iter().map(|a| -a).collect());
        out.push(e[..rank].to_vec());
    }
    out.retain(|r| r.iter().any(|a| !a.is_zero()));
    out
}

fn primitive_row(r: Vec<BigInt>) -> Vec<BigInt> {
    let g = r.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if g.is_zero() || g == BigInt::from(1) {
        return r;
    }
    r.into_iter().map(|a| a / &g).collect()
}

pub fn satisfies(ineqs: &[Vec<BigInt>], x: &LatticeVector) -> bool {
    ineqs.iter().all(|a| a.iter().zip(x.entries()).map(|(p, q)| p * q).sum::<BigInt>() >= BigInt::zero())
}

/// All `a ∈ N^m` with `Σ a_i c_i = target`, for columns with nonnegative entries
/// and no zero column: depth-first over the non-unit columns, trying every
/// multiple that keeps the residual nonnegative; the exponents of distinct unit
/// columns are then read off the residual.
pub fn brute_force_points(columns: &[LatticeVector], target: &LatticeVector) -> Vec<LatticeVector> {
    assert!(columns.iter().all(|c| c.is_nonnegative() && !c.is_zero()), "oracle needs nonnegative columns");
    if !target.is_nonnegative() {
        return Vec::new();
    }
    let small = |v: &LatticeVector| v.to_i64s().expect("small entries");
    let cols: Vec<Vec<i64>> = columns.iter().map(small).collect();
    let unit_index = |c: &[i64]| -> Option<usize> {
        let nz: Vec<usize> = (0..c.len()).filter(|&j| c[j] != 0).collect();
        (nz.len() == 1 && c[nz[0]] == 1).then(|| nz[0])
    };
    // Unit columns (first occurrence per coordinate) are solved last.
    let mut seen = std::collections::BTreeSet::new();
    let (mut searched, mut units) = (Vec::new(), Vec::new());
    for (i, c) in cols.iter().enumerate() {
        match unit_index(c) {
            Some(j) if seen.insert(j) => units.push((i, j)),
            _ => searched.push(i),
        }
    }
    struct Search<'a> {
        cols: &'a [Vec<i64>],
        searched: &'a [usize],
        units: &'a [(usize, usize)],
        out: Vec<LatticeVector>,
    }
    fn go(s: &mut Search, depth: usize, residual: Vec<i64>, a: &mut Vec<i64>) {
        if depth == s.searched.len() {
            let mut r = residual;
            for &(i, j) in s.units {
                a[i] = r[j];
                r[j] = 0;
            }
            if r.iter().all(|&x| x == 0) {
                s.out.push(LatticeVector::from_i64s(a));
            }
            for &(i, _) in s.units {
                a[i] = 0;
            }
            return;
        }
        let i = s.searched[depth];
        let mut r = residual;
        let mut k = 0;
        while r.iter().all(|&x| x >= 0) {
            a[i] = k;
            go(s, depth + 1, r.clone(), a);
            for (x, c) in r.iter_mut().zip(&s.cols[i]) {
                *x -= c;
            }
            k += 1;
        }
        a[i] = 0;
    }
    let mut s = Search { cols: &cols, searched: &searched, units: &units, out: Vec::new() };
    let mut a = vec![0; cols.len()];
    go(&mut s, 0, small(target), &mut a);
    let mut out = s.out;
    out.sort();
    out
}

pub fn random_vector<R: Rng>(rng: &mut R, rank: usize, lo: i64, hi: i64) -> LatticeVector {
    LatticeVector::from_i64s(&(0..rank).map(|_| rng.gen_range(lo..=hi)).collect::<Vec<_>>())
}

/// Up to `max_rays` nonzero random generators with entries in `[-bound, bound]`.
pub fn random_rays<R: Rng>(rng: &mut R, rank: usize, max_rays: usize, bound: i64) -> Vec<LatticeVector> {
    let k = rng.gen_range(1..=max_rays);
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let v = random_vector(rng, rank, -bound, bound);
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}

/// A random unimodular integer matrix: a product of elementary row operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            m.swap(0, i);
            continue;
        }
        let c = rng.gen_range(-1..=1);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    m
}
