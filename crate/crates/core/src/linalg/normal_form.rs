//! Hermite and Smith normal forms over the integers, integer kernels and
//! lattice comparisons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LatticeVector, QMatrix, ZMatrix};

type Rows = Vec<Vec<BigInt>>;

fn identity_rows(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn combine(rows: &mut Rows, p: usize, i: usize, c: [&BigInt; 4]) {
    // (row_p, row_i) <- (c0*row_p + c1*row_i, c2*row_p + c3*row_i)
    let (rp, ri) = (rows[p].clone(), rows[i].clone());
    rows[p] = rp.iter().zip(&ri).map(|(a, b)| c[0] * a + c[1] * b).collect();
    rows[i] = rp.iter().zip(&ri).map(|(a, b)| c[2] * a + c[3] * b).collect();
}

fn sub_multiple(rows: &mut Rows, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form with the unimodular transform:
/// returns `(H, U, rank)` with `U · m = H`; rows `rank..` of `H` are zero.
pub fn hermite_with_transform(m: &ZMatrix) -> (ZMatrix, ZMatrix, usize) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.row_vecs();
    let mut u = identity_rows(rows);
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if h[i][col].is_zero() {
                continue;
            }
            let eg = h[p][col].extended_gcd(&h[i][col]);
            let a = &h[p][col] / &eg.gcd;
            let b = &h[i][col] / &eg.gcd;
            let nb = -b;
            let c = [&eg.x, &eg.y, &nb, &a];
            combine(&mut h, p, i, c);
            combine(&mut u, p, i, c);
        }
        if h[p][col].is_zero() {
            continue;
        }
        if h[p][col].is_negative() {
            for x in h[p].iter_mut().chain(u[p].iter_mut()) {
                *x = -&*x;
            }
        }
        let pivot = h[p][col].clone();
        for i in 0..p {
            let q = h[i][col].div_floor(&pivot);
            sub_multiple(&mut h, i, p, &q);
            sub_multiple(&mut u, i, p, &q);
        }
        p += 1;
    }
    (ZMatrix::from_rows(h, cols).expect("rectangular"), ZMatrix::from_rows(u, rows).expect("square"), p)
}

/// Nonzero rows of the row Hermite normal form: a canonical basis of the row lattice.
pub fn hermite_normal_form(m: &ZMatrix) -> ZMatrix {
    let (h, _, rank) = hermite_with_transform(m);
    ZMatrix::from_rows((0..rank).map(|i| h.row(i).to_vec()).collect(), m.cols()).expect("rectangular")
}

/// Basis of the integer kernel `{v ∈ Z^cols : m · v = 0}` in row Hermite normal form.
pub fn kernel_basis(m: &QMatrix) -> Vec<LatticeVector> {
    // Scaling rows by their denominators leaves the kernel unchanged.
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let l = m.row(i).iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            m.row(i).iter().map(|q| (q * num_rational::BigRational::from(l.clone())).to_integer()).collect()
        })
        .collect();
    let z = ZMatrix::from_rows(rows, m.cols()).expect("rectangular");
    integer_kernel_basis(&z)
}

pub fn integer_kernel_basis(m: &ZMatrix) -> Vec<LatticeVector> {
    let n = m.cols();
    let (_, u, rank) = hermite_with_transform(&m.transpose());
    if rank == n {
        return Vec::new();
    }
    let kernel = ZMatrix::from_rows((rank..n).map(|i| u.row(i).to_vec()).collect(), n).expect("rectangular");
    hermite_normal_form(&kernel).row_vectors()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).filter(|x| !x.is_zero()).collect()
    }
}

/// `U · m · V = D` with `U`, `V` unimodular and `D` diagonal, `d_i | d_{i+1}`, `d_i ≥ 0`.
pub fn smith_normal_form(m: &ZMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.row_vecs();
    let mut u = identity_rows(rows);
    // Column operations are tracked on V^T as row operations.
    let mut vt = identity_rows(cols);
    let swap_cols = |a: &mut Rows, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else {
                return finish(a, u, vt, rows, cols);
            };
            a.swap(t, i);
            u.swap(t, i);
            swap_cols(&mut a, t, j);
            vt.swap(t, j);

            let mut clean = true;
            for i in t + 1..rows {
                let q = &a[i][t] / &a[t][t];
                sub_multiple(&mut a, i, t, &q);
                sub_multiple(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    sub_multiple(&mut vt, j, t, &q);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &pivot).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    sub_multiple(&mut a, t, i, &one);
                    sub_multiple(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -&*x;
            }
        }
    }
    finish(a, u, vt, rows, cols)
}

fn finish(a: Rows, u: Rows, vt: Rows, rows: usize, cols: usize) -> SmithForm {
    SmithForm {
        u: ZMatrix::from_rows(u, rows).expect("square"),
        d: ZMatrix::from_rows(a, cols).expect("rectangular"),
        v: ZMatrix::from_rows(vt, cols).expect("square").transpose(),
    }
}

/// Whether two families of integer vectors generate the same lattice, decided by
/// comparing Smith invariants of each family with those of the stacked family.
pub fn same_lattice_snf(a: &[LatticeVector], b: &[LatticeVector], dim: usize) -> bool {
    let stacked: Vec<LatticeVector> = a.iter().chain(b).cloned().collect();
    let fa = smith_normal_form(&ZMatrix::from_vectors(a, dim).expect("dims")).invariant_factors();
    let fb = smith_normal_form(&ZMatrix::from_vectors(b, dim).expect("dims")).invariant_factors();
    let fs = smith_normal_form(&ZMatrix::from_vectors(&stacked, dim).expect("dims")).invariant_factors();
    let volume = |f: &[BigInt]| f.iter().fold(BigInt::one(), |p, x| p * x);
    fa.len() == fs.len() && fb.len() == fs.len() && volume(&fa) == volume(&fs) && volume(&fb) == volume(&fs)
}
