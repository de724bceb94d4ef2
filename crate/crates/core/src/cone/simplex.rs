//! Exact phase-one simplex with Bland's rule, used for feasibility problems
//! of the form `A x = b, x ≥ 0`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::QMatrix;

/// A nonnegative solution of `a · x = b`, if one exists. The returned point
/// is a basic feasible solution.
pub fn nonnegative_solution(a: &QMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(m, b.len(), "right-hand side length mismatch");
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row: Vec<BigRational> =
                (0..n).map(|j| if flip { -a.get(i, j).clone() } else { a.get(i, j).clone() }).collect();
            row.extend((0..m).map(|k| if k == i { BigRational::from_integer(1.into()) } else { BigRational::zero() }));
            row.push(if flip { -b[i].clone() } else { b[i].clone() });
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let cost = |j: usize| -> BigRational {
        if j >= n {
            BigRational::from_integer(1.into())
        } else {
            BigRational::zero()
        }
    };

    loop {
        // Reduced costs of the phase-one objective (sum of artificials).
        let entering = (0..n + m).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut d = cost(j);
            for (i, &bi) in basis.iter().enumerate() {
                d -= cost(bi) * &t[i][j];
            }
            d.is_negative()
        });
        let Some(j) = entering else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][j].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][j];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &t[l][width - 1] / &t[l][j];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let Some(r) = leave else {
            // Unbounded direction cannot occur for a phase-one objective bounded below by 0.
            unreachable!("phase-one objective is bounded");
        };
        let piv = t[r][j].clone();
        t[r].iter_mut().for_each(|x| *x /= &piv);
        for i in 0..m {
            if i != r && !t[i][j].is_zero() {
                let f = t[i][j].clone();
                for k in 0..width {
                    let delta = &f * &t[r][k];
                    t[i][k] -= delta;
                }
            }
        }
        basis[r] = j;
    }

    let infeasible = basis.iter().enumerate().any(|(i, &bi)| bi >= n && !t[i][width - 1].is_zero());
    if infeasible {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            x[bi] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZMatrix;
    use num_bigint::BigInt;

    fn r(x: i64) -> BigRational {
        BigRational::from(BigInt::from(x))
    }

    #[test]
    fn feasible_system() {
        let a = ZMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 1]]).to_rational();
        let x = nonnegative_solution(&a, &[r(2), r(3)]).unwrap();
        assert!(x.iter().all(|v| !v.is_negative()));
        assert_eq!(&x[0] + &x[1], r(2));
        assert_eq!(&x[1] + &x[2], r(3));
    }

    #[test]
    fn infeasible_system() {
        let a = ZMatrix::from_i64_rows(&[&[1, 1]]).to_rational();
        assert!(nonnegative_solution(&a, &[r(-1)]).is_none());
        let a = ZMatrix::from_i64_rows(&[&[1, -1], &[1, 1]]).to_rational();
        assert!(nonnegative_solution(&a, &[r(3), r(1)]).is_none());
    }
}
