//! Picard lattices of surfaces with their intersection pairing.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cone::{Cone, ConeError, SliceEnumerator};
use crate::linalg::{integer_determinant, invert, solve, LatticeVector, LinearSolution, QMatrix, ZMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("gram matrix is not symmetric: entry ({row},{col}) differs from its transpose")]
    Asymmetric { row: usize, col: usize },
    #[error("gram matrix is singular")]
    Singular,
    #[error("gram matrix is {rows}x{cols} but {labels} basis labels were given")]
    Shape { rows: usize, cols: usize, labels: usize },
    #[error("class has length {got}, lattice rank is {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("chi(O(D)) = 1 + ({numerator})/2 is not an integer")]
    NonIntegralChi { numerator: BigInt },
    #[error("no canonical class is known for this lattice")]
    MissingCanonical,
    #[error("the curve conditions do not determine the canonical class ({freedom} free parameters)")]
    UnderdeterminedSystem { freedom: usize },
    #[error("the curve conditions are inconsistent")]
    InconsistentSystem,
    #[error("the conditions determine a non-integral class")]
    NonIntegralClass,
    #[error("class {0} is not in the effective cone")]
    NotEffective(LatticeVector),
    #[error("fixed/moving decomposition did not terminate within {0} steps")]
    NoTermination(usize),
    #[error("basis change is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("unknown class name `{0}`")]
    UnknownClass(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    labels: Vec<String>,
    gram: ZMatrix,
    canonical: Option<LatticeVector>,
    determinant: BigInt,
}

impl IntersectionLattice {
    pub fn new(labels: Vec<String>, gram: ZMatrix, canonical: Option<LatticeVector>) -> Result<Self, SurfaceError> {
        if !gram.is_square() || gram.rows() != labels.len() {
            return Err(SurfaceError::Shape { rows: gram.rows(), cols: gram.cols(), labels: labels.len() });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in i + 1..n {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(SurfaceError::Asymmetric { row: i, col: j });
                }
            }
        }
        let determinant = integer_determinant(&gram).expect("square");
        if determinant.is_zero() {
            return Err(SurfaceError::Singular);
        }
        if let Some(k) = &canonical {
            if k.len() != n {
                return Err(SurfaceError::RankMismatch { expected: n, got: k.len() });
            }
        }
        Ok(IntersectionLattice { labels, gram, canonical, determinant })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &ZMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }

    pub fn canonical_class(&self) -> Option<&LatticeVector> {
        self.canonical.as_ref()
    }

    pub fn with_canonical(mut self, k: LatticeVector) -> Result<Self, SurfaceError> {
        self.check(&k)?;
        self.canonical = Some(k);
        Ok(self)
    }

    /// The basis vector with the given label.
    pub fn basis_class(&self, label: &str) -> Option<LatticeVector> {
        self.labels.iter().position(|l| l == label).map(|i| LatticeVector::unit(self.rank(), i))
    }

    fn check(&self, d: &LatticeVector) -> Result<(), SurfaceError> {
        if d.len() != self.rank() {
            return Err(SurfaceError::RankMismatch { expected: self.rank(), got: d.len() });
        }
        Ok(())
    }

    /// `d1ᵀ · gram · d2`.
    pub fn pair(&self, d1: &LatticeVector, d2: &LatticeVector) -> Result<BigInt, SurfaceError> {
        self.check(d1)?;
        self.check(d2)?;
        Ok(d1.dot(&self.gram.mul_vector(d2)))
    }

    /// The functional `x ↦ d · x`, as a vector in the dual basis.
    pub fn dual_vector(&self, d: &LatticeVector) -> LatticeVector {
        self.gram.mul_vector(d)
    }

    /// `χ(O(d)) = 1 + (d·d − d·K)/2`.
    pub fn euler_characteristic(&self, d: &LatticeVector) -> Result<BigInt, SurfaceError> {
        let k = self.canonical.as_ref().ok_or(SurfaceError::MissingCanonical)?;
        let numerator = self.pair(d, d)? - self.pair(d, k)?;
        let (q, r) = numerator.div_rem(&BigInt::from(2));
        if !r.is_zero() {
            return Err(SurfaceError::NonIntegralChi { numerator });
        }
        Ok(q + 1)
    }

    /// The unique class `K` with `K · c = value` for every condition.
    pub fn solve_canonical(&self, conditions: &[(LatticeVector, BigInt)]) -> Result<LatticeVector, SurfaceError> {
        for (c, _) in conditions {
            self.check(c)?;
        }
        let rows: Vec<LatticeVector> = conditions.iter().map(|(c, _)| self.dual_vector(c)).collect();
        let a = ZMatrix::from_vectors(&rows, self.rank()).expect("dims").to_rational();
        let b: Vec<BigRational> = conditions.iter().map(|(_, v)| BigRational::from(v.clone())).collect();
        match solve(&a, &b) {
            LinearSolution::Unique(x) => {
                if x.iter().any(|q| !q.is_integer()) {
                    return Err(SurfaceError::NonIntegralClass);
                }
                Ok(LatticeVector::new(x.into_iter().map(|q| q.to_integer()).collect()))
            }
            LinearSolution::Underdetermined { freedom, .. } => Err(SurfaceError::UnderdeterminedSystem { freedom }),
            LinearSolution::Inconsistent => Err(SurfaceError::InconsistentSystem),
        }
    }

    /// Adjunction: a smooth rational curve `C` of arithmetic genus `g` has `K·C = 2g − 2 − C²`.
    pub fn adjunction_conditions(
        &self,
        curves: &[(LatticeVector, u32)],
    ) -> Result<Vec<(LatticeVector, BigInt)>, SurfaceError> {
        curves
            .iter()
            .map(|(c, g)| {
                let value = BigInt::from(2 * *g) - 2 - self.pair(c, c)?;
                Ok((c.clone(), value))
            })
            .collect()
    }

    /// Change of basis: row `i` of `p` is the new basis vector `i` in old coordinates.
    pub fn regrade(&self, p: &ZMatrix, labels: Option<Vec<String>>) -> Result<IntersectionLattice, SurfaceError> {
        if !p.is_square() || p.rows() != self.rank() {
            return Err(SurfaceError::Shape { rows: p.rows(), cols: p.cols(), labels: self.rank() });
        }
        let det = integer_determinant(p).expect("square");
        if !det.abs().is_one() {
            return Err(SurfaceError::NotUnimodular(det));
        }
        let gram = p.mul(&self.gram).mul(&p.transpose());
        let canonical = self.canonical.as_ref().map(|k| coordinates_after(p, k));
        let labels = labels.unwrap_or_else(|| self.labels.clone());
        IntersectionLattice::new(labels, gram, canonical)
    }

    /// Coordinates in this basis of the class `x` given in old coordinates, when
    /// this lattice was obtained by [`IntersectionLattice::regrade`] with `p`.
    pub fn transport(p: &ZMatrix, x: &LatticeVector) -> LatticeVector {
        coordinates_after(p, x)
    }
}

/// `x_new = p^{-T} x_old`.
fn coordinates_after(p: &ZMatrix, x: &LatticeVector) -> LatticeVector {
    let inv_t: QMatrix = invert(&p.transpose().to_rational()).expect("unimodular");
    let z = inv_t.to_integer().expect("unimodular inverse is integral");
    z.mul_vector(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub moving: LatticeVector,
    /// Multiplicities of negative curves in the fixed part, in fixture order; zeros omitted.
    pub fixed: IndexMap<String, BigInt>,
}

/// A lattice together with named effective generators and its negative curves.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub lattice: IntersectionLattice,
    pub effective: IndexMap<String, LatticeVector>,
    pub negative_curves: Vec<String>,
}

/// Default iteration cap for [`SurfaceModel::decompose_fixed_moving`].
pub const DECOMPOSITION_CAP: usize = 10_000;

impl SurfaceModel {
    pub fn new(
        lattice: IntersectionLattice,
        effective: IndexMap<String, LatticeVector>,
        negative_curves: Vec<String>,
    ) -> Result<Self, SurfaceError> {
        for v in effective.values() {
            lattice.check(v)?;
        }
        let model = SurfaceModel { lattice, effective, negative_curves: Vec::new() };
        for name in &negative_curves {
            model.effective.get(name).ok_or_else(|| SurfaceError::UnknownClass(name.clone()))?;
        }
        Ok(SurfaceModel { negative_curves, ..model })
    }

    pub fn generators(&self) -> Vec<LatticeVector> {
        self.effective.values().cloned().collect()
    }

    pub fn effective_cone(&self) -> Cone {
        Cone::from_rays(self.lattice.rank(), &self.generators()).expect("checked ranks")
    }

    /// `{d : d · g ≥ 0 for every effective generator g}`.
    pub fn nef_cone(&self) -> Cone {
        let normals: Vec<LatticeVector> = self.effective.values().map(|g| self.lattice.dual_vector(g)).collect();
        Cone::from_rays(self.lattice.rank(), &normals).expect("checked ranks").dual()
    }

    pub fn is_nef(&self, d: &LatticeVector) -> Result<bool, SurfaceError> {
        for g in self.effective.values() {
            if self.lattice.pair(d, g)?.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn curve(&self, name: &str) -> &LatticeVector {
        &self.effective[name]
    }

    /// Moving and fixed part of an effective class, scanning the negative curves in
    /// fixture order.
    pub fn decompose_fixed_moving(&self, d: &LatticeVector) -> Result<Decomposition, SurfaceError> {
        let order: Vec<usize> = (0..self.negative_curves.len()).collect();
        self.decompose_with_order(d, &order, DECOMPOSITION_CAP)
    }

    /// As [`SurfaceModel::decompose_fixed_moving`] with an explicit scan order given
    /// as indices into `negative_curves`.
    pub fn decompose_with_order(
        &self,
        d: &LatticeVector,
        order: &[usize],
        cap: usize,
    ) -> Result<Decomposition, SurfaceError> {
        self.lattice.check(d)?;
        if !self.effective_cone().contains(d, false)? {
            return Err(SurfaceError::NotEffective(d.clone()));
        }
        let mut current = d.clone();
        let mut counts = vec![BigInt::zero(); self.negative_curves.len()];
        for _ in 0..cap {
            let mut step = None;
            for &i in order {
                let c = self.curve(&self.negative_curves[i]);
                let dc = self.lattice.pair(&current, c)?;
                let cc = self.lattice.pair(c, c)?;
                if dc.is_negative() && cc.is_negative() {
                    // ceil((-dc) / (-cc))
                    step = Some((i, (-dc).div_ceil(&-cc)));
                    break;
                }
            }
            let Some((i, k)) = step else {
                if !self.is_nef(&current)? {
                    return Err(SurfaceError::NotEffective(d.clone()));
                }
                let fixed = self
                    .negative_curves
                    .iter()
                    .zip(counts)
                    .filter(|(_, k)| !k.is_zero())
                    .map(|(n, k)| (n.clone(), k))
                    .collect();
                return Ok(Decomposition { moving: current, fixed });
            };
            current = &current - &self.curve(&self.negative_curves[i]).scale(&k);
            counts[i] += k;
        }
        Err(SurfaceError::NoTermination(cap))
    }

    /// Nonnegative integer coefficients over `rays` summing to `d`, if any.
    pub fn monoid_membership(
        &self,
        rays: &[LatticeVector],
        d: &LatticeVector,
    ) -> Result<Option<LatticeVector>, SurfaceError> {
        self.lattice.check(d)?;
        let e = SliceEnumerator::new(rays, self.lattice.rank())?;
        Ok(e.points(d)?.into_iter().next())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(v)
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn construction_checks() {
        let asym = ZMatrix::from_i64_rows(&[&[1, 2], &[0, 1]]);
        assert_eq!(IntersectionLattice::new(labels(2), asym, None), Err(SurfaceError::Asymmetric { row: 0, col: 1 }));
        let sing = ZMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(IntersectionLattice::new(labels(2), sing, None), Err(SurfaceError::Singular));
        let ok = IntersectionLattice::new(labels(2), ZMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]), None).unwrap();
        assert!(ok.is_unimodular());
        assert_eq!(ok.pair(&lv(&[1, 1]), &lv(&[0, 0])).unwrap(), BigInt::zero());
        assert_eq!(ok.euler_characteristic(&lv(&[0, 0])), Err(SurfaceError::MissingCanonical));
    }

    #[test]
    fn one_by_one_canonical() {
        let l = IntersectionLattice::new(labels(1), ZMatrix::from_i64_rows(&[&[-1]]), None).unwrap();
        let k = l.solve_canonical(&[(lv(&[1]), BigInt::from(1))]).unwrap();
        assert_eq!(k, lv(&[-1]));
        let l = l.with_canonical(k).unwrap();
        assert_eq!(l.euler_characteristic(&lv(&[0])).unwrap(), BigInt::one());
        // Adjunction for a (-1)-curve gives K·E = -1.
        assert_eq!(l.adjunction_conditions(&[(lv(&[1]), 0)]).unwrap()[0].1, BigInt::from(-1));
    }

    #[test]
    fn underdetermined_canonical() {
        let l = IntersectionLattice::new(labels(2), ZMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]), None).unwrap();
        assert_eq!(
            l.solve_canonical(&[(lv(&[1, 0]), BigInt::from(-3))]),
            Err(SurfaceError::UnderdeterminedSystem { freedom: 1 })
        );
    }

    #[test]
    fn self_dual_quadrant_nef() {
        let l = IntersectionLattice::new(labels(2), ZMatrix::identity(2), None).unwrap();
        let mut eff = IndexMap::new();
        eff.insert("a".to_string(), lv(&[1, 0]));
        eff.insert("b".to_string(), lv(&[0, 1]));
        let s = SurfaceModel::new(l, eff, vec![]).unwrap();
        assert_eq!(s.nef_cone(), Cone::orthant(2));
    }

    #[test]
    fn regrade_identity_and_permutation() {
        let g = ZMatrix::from_i64_rows(&[&[-2, 1], &[1, -2]]);
        let l = IntersectionLattice::new(labels(2), g.clone(), Some(lv(&[0, 0]))).unwrap();
        assert_eq!(l.regrade(&ZMatrix::identity(2), None).unwrap(), l);
        let swap = ZMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let s = l.regrade(&swap, None).unwrap();
        assert_eq!(s.determinant(), l.determinant());
        assert_eq!(s.gram(), &g);
        let twice = ZMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(l.regrade(&twice, None), Err(SurfaceError::NotUnimodular(BigInt::from(2))));
    }

    #[test]
    fn decomposition_on_a_minus_one_curve() {
        // Blow-up of the plane: basis H, E with H² = 1, E² = -1, K = -3H + E.
        let l = IntersectionLattice::new(labels(2), ZMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]), Some(lv(&[-3, 1])))
            .unwrap();
        let mut eff = IndexMap::new();
        eff.insert("E".to_string(), lv(&[0, 1]));
        eff.insert("F".to_string(), lv(&[1, -1]));
        let s = SurfaceModel::new(l, eff, vec!["E".to_string()]).unwrap();
        // H + 2E: (H+2E)·E = -2, so two copies of E are fixed.
        let dec = s.decompose_fixed_moving(&lv(&[1, 2])).unwrap();
        assert_eq!(dec.moving, lv(&[1, 0]));
        assert_eq!(dec.fixed.get("E"), Some(&BigInt::from(2)));
        assert!(matches!(s.decompose_fixed_moving(&lv(&[-1, 0])), Err(SurfaceError::NotEffective(_))));
    }
}
