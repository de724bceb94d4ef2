//! Fraction-free (Bareiss) determinants and inverses, plus rational row
//! reduction for solving and rank computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinalgError, QMatrix, ZMatrix};

fn integer_rows(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    m.row_vecs()
}

/// Determinant of an integer matrix by Bareiss elimination.
pub fn integer_determinant(m: &ZMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = integer_rows(m);
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

pub fn determinant(m: &QMatrix) -> Result<BigRational, LinalgError> {
    let (b, d) = m.clear_denominators();
    let det_b = integer_determinant(&b)?;
    let scale = num_traits::pow(d, m.rows());
    Ok(BigRational::new(det_b, scale))
}

/// Exact inverse by fraction-free Gauss-Jordan elimination on `[B | I]`,
/// where `B` is `m` with denominators cleared.
pub fn invert(m: &QMatrix) -> Result<QMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let (b, d) = m.clear_denominators();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = b.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(LinalgError::SingularMatrix)?;
        a.swap(k, p);
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    // Every diagonal entry now equals `prev` and the right block is prev * B^{-1}.
    let scale = BigRational::from(d);
    Ok(QMatrix::from_fn(n, n, |i, j| BigRational::new(a[i][n + j].clone(), a[i][i].clone()) * &scale))
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.row_vecs();
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (QMatrix::from_rows(a, cols).expect("rectangular"), pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).1.len()
}

#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Unique(Vec<BigRational>),
    /// Consistent but with a solution space of the given dimension; carries one solution.
    Underdetermined {
        particular: Vec<BigRational>,
        freedom: usize,
    },
    Inconsistent,
}

/// Solves `a · x = b` exactly.
pub fn solve(a: &QMatrix, b: &[BigRational]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let aug = QMatrix::from_fn(a.rows(), n + 1, |i, j| if j < n { a.get(i, j).clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return LinearSolution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = r.get(i, n).clone();
    }
    if pivots.len() == n {
        LinearSolution::Unique(x)
    } else {
        LinearSolution::Underdetermined { particular: x, freedom: n - pivots.len() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> QMatrix {
        ZMatrix::from_i64_rows(rows).to_rational()
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(invert(&m).unwrap(), q(&[&[1, -1], &[-1, 2]]));
        assert_eq!(invert(&QMatrix::identity(3)).unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn inverse_needs_pivoting_and_fractions() {
        let m = q(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 4]]);
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert_eq!(inv.mul(&m), QMatrix::identity(3));
        let half: QMatrix = serde_json::from_str(r#"[["1/2","1/3"],["0","5/7"]]"#).unwrap();
        assert_eq!(half.mul(&invert(&half).unwrap()), QMatrix::identity(2));
    }

    #[test]
    fn singular_detected() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(invert(&m), Err(LinalgError::SingularMatrix));
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&QMatrix::identity(4)).unwrap(), BigRational::one());
        let m = q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        assert_eq!(determinant(&m).unwrap(), BigRational::from(BigInt::from(-5)));
        let h: QMatrix = serde_json::from_str(r#"[["1/2","0"],["0","1/3"]]"#).unwrap();
        assert_eq!(determinant(&h).unwrap(), BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn solve_cases() {
        let a = q(&[&[1, 1], &[1, -1]]);
        let b = vec![BigRational::from(BigInt::from(3)), BigRational::from(BigInt::from(1))];
        assert_eq!(
            solve(&a, &b),
            LinearSolution::Unique(vec![BigRational::from(BigInt::from(2)), BigRational::from(BigInt::from(1))])
        );
        let a = q(&[&[1, 1]]);
        assert!(matches!(solve(&a, &b[..1]), LinearSolution::Underdetermined { freedom: 1, .. }));
        let a = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &b), LinearSolution::Inconsistent);
    }
}
