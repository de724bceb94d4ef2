//! Nonnegative integer solutions of `χ · a = t`, i.e. lattice points of the
//! polytope `χ^{-1}(t) ∩ orthant`.
//!
//! The search fixes `a_0, a_1, …` in turn. After fixing `a_0..a_{k-1}` the
//! residual must lie in the cone spanned by the remaining columns; its facets
//! and equations give the exact feasible interval for `a_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{zero_in_convex_hull, Cone, ConeError};
use crate::linalg::{LatticeVector, ZMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSlicePolytope {
    pub map: ZMatrix,
    pub target: LatticeVector,
}

pub fn lattice_points(p: &ConeSlicePolytope) -> Result<Vec<LatticeVector>, ConeError> {
    SliceEnumerator::new(&p.map.column_vectors(), p.map.rows())?.points(&p.target)
}

/// Constraint data for the residual after fixing the first `k` variables.
#[derive(Clone, Debug)]
struct Stage<T> {
    facets: Vec<Vec<T>>,
    equations: Vec<Vec<T>>,
}

/// Reusable enumerator for a fixed column set.
#[derive(Clone, Debug)]
pub struct SliceEnumerator {
    rank: usize,
    columns: Vec<LatticeVector>,
    image: Cone,
    bounded: bool,
    stages: Vec<Stage<BigInt>>,
    small: Option<(Vec<Vec<i64>>, Vec<Stage<i64>>)>,
    /// Positive functional on all columns (when bounded), used for overflow bounds.
    height: Option<LatticeVector>,
}

const SMALL_LIMIT: u64 = 1 << 60;

impl SliceEnumerator {
    pub fn new(columns: &[LatticeVector], rank: usize) -> Result<Self, ConeError> {
        super::check_rank(rank, columns)?;
        let m = columns.len();
        let mut stages = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let suffix = Cone::from_rays(rank, &columns[k..])?;
            stages.push(Stage {
                facets: suffix.facets().iter().map(|f| f.entries().to_vec()).collect(),
                equations: suffix.equations().iter().map(|e| e.entries().to_vec()).collect(),
            });
        }
        let image = Cone::from_rays(rank, columns)?;
        let bounded = m == 0 || !zero_in_convex_hull(columns);
        let height = bounded.then(|| {
            let mut h = LatticeVector::zeros(rank);
            for f in image.dual().rays() {
                h = &h + f;
            }
            h
        });
        let small = (|| {
            let cols = columns.iter().map(|c| c.to_i64s()).collect::<Option<Vec<_>>>()?;
            let convert = |vs: &Vec<Vec<BigInt>>| -> Option<Vec<Vec<i64>>> {
                vs.iter().map(|v| v.iter().map(ToPrimitive::to_i64).collect()).collect()
            };
            let st = stages
                .iter()
                .map(|s| Some(Stage { facets: convert(&s.facets)?, equations: convert(&s.equations)? }))
                .collect::<Option<Vec<_>>>()?;
            Some((cols, st))
        })();
        Ok(SliceEnumerator { rank, columns: columns.to_vec(), image, bounded, stages, small, height })
    }

    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    pub fn image_cone(&self) -> &Cone {
        &self.image
    }

    /// All solutions in lexicographic order.
    pub fn points(&self, target: &LatticeVector) -> Result<Vec<LatticeVector>, ConeError> {
        let mut out = Vec::new();
        self.run(target, &mut |a: &[BigInt]| out.push(LatticeVector::new(a.to_vec())))?;
        Ok(out)
    }

    pub fn count(&self, target: &LatticeVector) -> Result<usize, ConeError> {
        let mut n = 0usize;
        self.run(target, &mut |_: &[BigInt]| n += 1)?;
        Ok(n)
    }

    fn run(&self, target: &LatticeVector, emit: &mut dyn FnMut(&[BigInt])) -> Result<(), ConeError> {
        super::check_rank(self.rank, std::slice::from_ref(target))?;
        if !self.image.contains(target, false)? {
            return Ok(());
        }
        if !self.bounded {
            return Err(ConeError::UnboundedSlice);
        }
        if let (Some((cols, stages)), true) = (&self.small, self.fits_small(target)) {
            let t: Vec<i64> = target.to_i64s().expect("checked");
            let mut a = vec![0i64; cols.len()];
            search(cols, stages, 0, t, &mut a, &mut |sol: &[i64]| {
                let big: Vec<BigInt> = sol.iter().map(|&x| BigInt::from(x)).collect();
                emit(&big);
            });
        } else {
            let cols: Vec<Vec<BigInt>> = self.columns.iter().map(|c| c.entries().to_vec()).collect();
            let mut a = vec![BigInt::zero(); cols.len()];
            search(&cols, &self.stages, 0, target.entries().to_vec(), &mut a, emit);
        }
        Ok(())
    }

    /// Whether every intermediate value of the search fits comfortably in `i64`.
    fn fits_small(&self, target: &LatticeVector) -> bool {
        let Some(h) = &self.height else { return false };
        let inf = |v: &LatticeVector| v.entries().iter().map(|x| x.abs()).max().unwrap_or_default();
        let ht = h.dot(target);
        let mut reach = inf(target);
        for c in &self.columns {
            let hc = h.dot(c);
            if hc.is_positive() {
                reach += (&ht / &hc + 1) * inf(c);
            }
        }
        let widest = self
            .stages
            .iter()
            .flat_map(|s| s.facets.iter().chain(&s.equations))
            .map(|f| f.iter().map(|x| x.abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default();
        let worst = (widest + 1) * (reach + 1);
        worst < BigInt::from(SMALL_LIMIT) && target.to_i64s().is_some()
    }
}

trait Scalar: Integer + Signed + Clone {}
impl Scalar for i64 {}
impl Scalar for BigInt {}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + x.clone() * y.clone())
}

fn ceil_div<T: Scalar>(a: &T, b: &T) -> T {
    -(-a.clone()).div_floor(b)
}

/// Feasible interval for `a_k` given residual `t` (before subtracting `a_k χ_k`).
fn interval<T: Scalar>(col: &[T], next: &Stage<T>, t: &[T]) -> Option<(T, Option<T>)> {
    let mut lo = T::zero();
    let mut hi: Option<T> = None;
    let tighten_hi = |v: T, hi: &mut Option<T>| {
        if hi.as_ref().is_none_or(|h| v < *h) {
            *hi = Some(v);
        }
    };
    for e in &next.equations {
        let alpha = dot(e, t);
        let beta = dot(e, col);
        if beta.is_zero() {
            if !alpha.is_zero() {
                return None;
            }
        } else {
            let (q, r) = alpha.div_mod_floor(&beta);
            if !r.is_zero() {
                return None;
            }
            if q > lo {
                lo = q.clone();
            }
            tighten_hi(q, &mut hi);
        }
    }
    for f in &next.facets {
        let alpha = dot(f, t);
        let beta = dot(f, col);
        if beta.is_positive() {
            tighten_hi(alpha.div_floor(&beta), &mut hi);
        } else if beta.is_negative() {
            let l = ceil_div(&alpha, &beta);
            if l > lo {
                lo = l;
            }
        } else if alpha.is_negative() {
            return None;
        }
    }
    if let Some(h) = &hi {
        if *h < lo {
            return None;
        }
    }
    Some((lo, hi))
}

fn search<T: Scalar, F: FnMut(&[T]) + ?Sized>(
    cols: &[Vec<T>],
    stages: &[Stage<T>],
    k: usize,
    t: Vec<T>,
    a: &mut [T],
    emit: &mut F,
) {
    if k == cols.len() {
        if t.iter().all(Zero::is_zero) {
            emit(a);
        }
        return;
    }
    let Some((lo, hi)) = interval(&cols[k], &stages[k + 1], &t) else { return };
    let hi = hi.expect("bounded slice gives a finite interval");
    let mut x = lo;
    while x <= hi {
        let residual: Vec<T> = t.iter().zip(&cols[k]).map(|(ti, ci)| ti.clone() - x.clone() * ci.clone()).collect();
        a[k] = x.clone();
        search(cols, stages, k + 1, residual, a, emit);
        x = x + T::one();
    }
    a[k] = T::zero();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(v)
    }

    #[test]
    fn compositions() {
        // a + b + c = 3 has 10 solutions.
        let e = SliceEnumerator::new(&[lv(&[1]), lv(&[1]), lv(&[1])], 1).unwrap();
        let pts = e.points(&lv(&[3])).unwrap();
        assert_eq!(pts.len(), 10);
        assert_eq!(pts[0], lv(&[0, 0, 3]));
        assert_eq!(pts[9], lv(&[3, 0, 0]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
        assert_eq!(e.points(&lv(&[0])).unwrap(), vec![lv(&[0, 0, 0])]);
        assert!(e.points(&lv(&[-1])).unwrap().is_empty());
    }

    #[test]
    fn integrality_gaps() {
        // 2a + 3b = 7: (2,1) only.
        let e = SliceEnumerator::new(&[lv(&[2]), lv(&[3])], 1).unwrap();
        assert_eq!(e.points(&lv(&[7])).unwrap(), vec![lv(&[2, 1])]);
        assert!(e.points(&lv(&[1])).unwrap().is_empty());
    }

    #[test]
    fn unbounded_detected() {
        let e = SliceEnumerator::new(&[lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1])], 2).unwrap();
        assert_eq!(e.points(&lv(&[0, 1])), Err(ConeError::UnboundedSlice));
    }

    #[test]
    fn big_path_agrees_with_small_path() {
        let big = BigInt::from(1u64 << 62);
        let cols = vec![lv(&[1, 0]), lv(&[1, 1]), lv(&[0, 1])];
        let e = SliceEnumerator::new(&cols, 2).unwrap();
        let t = LatticeVector::new(vec![big.clone() + 2, BigInt::from(2)]);
        let pts = e.points(&t).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(e.count(&lv(&[4, 2])).unwrap(), 3);
    }
}
