//! Torus actions on affine space given by a degree matrix `χ` (columns are the
//! characters of the coordinates): one-skeletons of the quotients, moving cones,
//! projectivity and the rays of polarized models.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cone::{zero_in_convex_hull, Cone, ConeError};
use crate::linalg::{integer_kernel_basis, rank, smith_normal_form, LatticeVector, QMatrix, ZMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("column `{name}` has length {got}, grading rank is {expected}")]
    RankMismatch { name: String, expected: usize, got: usize },
    #[error("the degree matrix is not surjective onto Z^{0}")]
    NotSurjective(usize),
    #[error("class {0} is not in the image of the orthant")]
    NotEffective(LatticeVector),
    #[error("the polytope for {0} is unbounded")]
    Unbounded(LatticeVector),
    #[error("clearing vertex denominators needs multiplier {needed}, above the cap {cap}")]
    MultiplierTooLarge { needed: BigInt, cap: u64 },
    #[error("multiplier must be positive")]
    BadMultiplier,
    #[error(transparent)]
    Cone(#[from] ConeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    rank: usize,
    names: Vec<String>,
    columns: Vec<LatticeVector>,
}

/// Columns `ē_i^*` of the dependence-relation matrix, and the matrix rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneSkeleton {
    pub relations: Vec<LatticeVector>,
    pub vectors: Vec<LatticeVector>,
}

impl OneSkeleton {
    /// Problems with the skeleton hypotheses: zero vectors, or one vector a
    /// positive multiple of another.
    pub fn violations(&self, names: &[String]) -> Vec<String> {
        let mut out = Vec::new();
        for (i, v) in self.vectors.iter().enumerate() {
            if v.is_zero() {
                out.push(format!("{} has zero one-skeleton vector", names[i]));
                continue;
            }
            for (j, w) in self.vectors.iter().enumerate() {
                if i != j && !w.is_zero() && v.primitive() == w.primitive() && i < j {
                    out.push(format!("{} and {} have proportional one-skeleton vectors", names[i], names[j]));
                }
            }
        }
        out
    }
}

/// A polarized quotient model and the rays of its fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedModel {
    pub nu: LatticeVector,
    pub multiplier: BigInt,
    /// Vertices of the polytope `P_{d0·ν}`; integral unless a multiplier was forced.
    pub vertices: Vec<Vec<BigRational>>,
    pub polytope_dimension: usize,
    /// Indices `i` whose coordinate hyperplane cuts out a facet.
    pub facet_indices: Vec<usize>,
    /// Primitive `ē_i^*` for the facet indices, sorted and deduplicated.
    pub fan_rays: Vec<LatticeVector>,
    /// Every vertex lies on exactly `n` coordinate hyperplanes.
    pub simplicial: bool,
}

impl PolarizedModel {
    /// `ν` lies on a wall: the vertex-degeneracy test failed.
    pub fn degenerate(&self) -> bool {
        !self.simplicial
    }
}

/// Default cap on the multiplier `d0`.
pub const DEFAULT_MULTIPLIER_CAP: u64 = 60;

fn affine_rank(points: &[Vec<BigRational>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let diffs: Vec<Vec<BigRational>> =
        points[1..].iter().map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect()).collect();
    if diffs.is_empty() {
        return 0;
    }
    let cols = first.len();
    rank(&QMatrix::from_rows(diffs, cols).expect("rectangular"))
}

impl CharacterData {
    pub fn new(rank: usize, columns: Vec<(String, LatticeVector)>) -> Result<Self, ToricError> {
        for (name, c) in &columns {
            if c.len() != rank {
                return Err(ToricError::RankMismatch { name: name.clone(), expected: rank, got: c.len() });
            }
        }
        let (names, columns) = columns.into_iter().unzip();
        Ok(CharacterData { rank, names, columns })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    /// The `rank × (n + r)` matrix with the characters as columns.
    pub fn matrix(&self) -> ZMatrix {
        ZMatrix::from_columns(&self.columns, self.rank).expect("checked")
    }

    pub fn is_surjective(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        let f = smith_normal_form(&self.matrix()).invariant_factors();
        f.len() == self.rank && f.iter().all(|d| d.is_one())
    }

    /// Rows: a Hermite basis of `{a ∈ Z^{n+r} : χ a = 0}`; the columns are the `ē_i^*`.
    pub fn one_skeleton(&self) -> Result<OneSkeleton, ToricError> {
        if !self.is_surjective() {
            return Err(ToricError::NotSurjective(self.rank));
        }
        let m = self.columns.len();
        let relations = integer_kernel_basis(&self.matrix());
        let vectors = if relations.is_empty() {
            vec![LatticeVector::zeros(0); m]
        } else {
            ZMatrix::from_vectors(&relations, m).expect("dims").column_vectors()
        };
        Ok(OneSkeleton { relations, vectors })
    }

    /// `Cone(χ_1, …, χ_{n+r})`.
    pub fn effective_image(&self) -> Cone {
        Cone::from_rays(self.rank, &self.columns).expect("checked")
    }

    /// `⋂_i Cone(χ_j : j ≠ i)`.
    pub fn moving_cone(&self) -> Cone {
        if self.columns.is_empty() {
            return Cone::zero(self.rank);
        }
        let cones: Vec<Cone> = (0..self.columns.len())
            .into_par_iter()
            .map(|i| {
                let rest: Vec<LatticeVector> =
                    self.columns.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| c.clone()).collect();
                Cone::from_rays(self.rank, &rest).expect("checked")
            })
            .collect();
        Cone::intersect(&cones).expect("same rank")
    }

    pub fn is_projective(&self) -> bool {
        !zero_in_convex_hull(&self.columns)
    }

    /// Vertices of `P_ν = {a ≥ 0 : χ a = ν}` over the rationals.
    pub fn polytope_vertices(&self, nu: &LatticeVector) -> Result<Vec<Vec<BigRational>>, ToricError> {
        if nu.len() != self.rank {
            return Err(ConeError::RankMismatch { expected: self.rank, got: nu.len() }.into());
        }
        if !self.effective_image().contains(nu, false)? {
            return Err(ToricError::NotEffective(nu.clone()));
        }
        // Homogenize: (a, s) ≥ 0 with χ a − s ν = 0; vertices are the rays with s > 0.
        let m = self.columns.len();
        let dim = m + 1;
        let ineqs: Vec<LatticeVector> = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
        let eqs: Vec<LatticeVector> = (0..self.rank)
            .map(|k| {
                let mut row: Vec<BigInt> = self.columns.iter().map(|c| c.get(k).clone()).collect();
                row.push(-nu.get(k).clone());
                LatticeVector::new(row)
            })
            .collect();
        let cone = Cone::from_inequalities(dim, &ineqs, &eqs)?;
        let mut vertices = Vec::new();
        for r in cone.rays() {
            let s = r.get(m).clone();
            if s.is_zero() {
                return Err(ToricError::Unbounded(nu.clone()));
            }
            vertices.push((0..m).map(|i| BigRational::new(r.get(i).clone(), s.clone())).collect());
        }
        Ok(vertices)
    }

    /// The polarized model for `ν`; `multiplier` overrides the computed `d0`.
    pub fn model_fan(
        &self,
        nu: &LatticeVector,
        multiplier: Option<BigInt>,
        cap: u64,
    ) -> Result<PolarizedModel, ToricError> {
        let vertices = self.polytope_vertices(nu)?;
        let needed = vertices.iter().flatten().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let d0 = match multiplier {
            Some(d) if !d.is_positive() => return Err(ToricError::BadMultiplier),
            Some(d) => d,
            None => {
                if needed > BigInt::from(cap) {
                    return Err(ToricError::MultiplierTooLarge { needed, cap });
                }
                needed
            }
        };
        let scale = BigRational::from(d0.clone());
        let scaled: Vec<Vec<BigRational>> = vertices.iter().map(|v| v.iter().map(|x| x * &scale).collect()).collect();
        let m = self.columns.len();
        let dim_p = affine_rank(&scaled);
        let facet_indices: Vec<usize> = (0..m)
            .filter(|&i| {
                let on: Vec<Vec<BigRational>> = scaled.iter().filter(|v| v[i].is_zero()).cloned().collect();
                dim_p > 0 && !on.is_empty() && on.len() < scaled.len() && affine_rank(&on) + 1 == dim_p
            })
            .collect();
        let skeleton = self.one_skeleton()?;
        let mut fan_rays: Vec<LatticeVector> = facet_indices.iter().map(|&i| skeleton.vectors[i].primitive()).collect();
        fan_rays.sort();
        fan_rays.dedup();
        let n = m - rank(&self.matrix().to_rational());
        let simplicial = scaled.iter().all(|v| v.iter().filter(|x| x.is_zero()).count() == n);
        Ok(PolarizedModel {
            nu: nu.clone(),
            multiplier: d0,
            vertices: scaled,
            polytope_dimension: dim_p,
            facet_indices,
            fan_rays,
            simplicial,
        })
    }

    /// Model for `ν' = scale·ν0 + Σ_k k·r_k` over the sorted rays `r_1, r_2, …` of the
    /// moving cone: a small perturbation of `ν0` into its interior. Distinct weights
    /// keep `ν'` off the walls that contain the plain ray sum.
    pub fn perturbed_model(&self, nu0: &LatticeVector, scale: u64, cap: u64) -> Result<PolarizedModel, ToricError> {
        let mut nu = nu0.scale(&BigInt::from(scale));
        for (k, r) in self.moving_cone().rays().iter().enumerate() {
            nu = &nu + &r.scale(&BigInt::from(k + 1));
        }
        self.model_fan(&nu, None, cap)
    }

    /// `Σ_i χ_i`, the anticanonical class of the toric model.
    pub fn anticanonical(&self) -> LatticeVector {
        self.columns.iter().fold(LatticeVector::zeros(self.rank), |s, c| &s + c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(v)
    }

    fn data(rank: usize, cols: &[&[i64]]) -> CharacterData {
        CharacterData::new(rank, cols.iter().enumerate().map(|(i, c)| (format!("x{i}"), lv(c))).collect()).unwrap()
    }

    #[test]
    fn skeleton_of_a_line() {
        let d = data(1, &[&[1], &[1]]);
        let s = d.one_skeleton().unwrap();
        assert_eq!(s.relations, vec![lv(&[1, -1])]);
        assert_eq!(s.vectors, vec![lv(&[1]), lv(&[-1])]);
        assert!(s.violations(d.names()).is_empty());
        let id = data(2, &[&[1, 0], &[0, 1]]);
        assert!(id.one_skeleton().unwrap().relations.is_empty());
        assert_eq!(data(1, &[&[2], &[2]]).one_skeleton(), Err(ToricError::NotSurjective(1)));
    }

    #[test]
    fn moving_cones() {
        assert_eq!(data(1, &[&[1], &[1], &[1]]).moving_cone(), Cone::from_rays(1, &[lv(&[1])]).unwrap());
        let d = data(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(d.moving_cone(), Cone::from_rays(2, &[lv(&[1, 1])]).unwrap());
    }

    #[test]
    fn projectivity() {
        assert!(!data(2, &[&[1, 0], &[-1, 0], &[0, 1]]).is_projective());
        assert!(data(2, &[&[1, 0], &[0, 1], &[1, 1]]).is_projective());
    }

    #[test]
    fn projective_plane() {
        // C^3 // C^*: the polytope for ν = 1 is a triangle; the fan has all three rays.
        let d = data(1, &[&[1], &[1], &[1]]);
        let m = d.model_fan(&lv(&[1]), None, DEFAULT_MULTIPLIER_CAP).unwrap();
        assert_eq!(m.polytope_dimension, 2);
        assert_eq!(m.facet_indices, vec![0, 1, 2]);
        assert_eq!(m.fan_rays.len(), 3);
        assert!(m.simplicial);
        let point = data(1, &[&[1]]);
        let p = point.model_fan(&lv(&[1]), None, DEFAULT_MULTIPLIER_CAP).unwrap();
        assert_eq!(p.polytope_dimension, 0);
        assert!(p.fan_rays.is_empty());
        assert!(matches!(d.model_fan(&lv(&[-1]), None, 60), Err(ToricError::NotEffective(_))));
    }

    #[test]
    fn fractional_vertices_need_a_multiplier() {
        // 2a + 3b = 1 over the nonnegative reals has vertices (1/2, 0) and (0, 1/3).
        let d = data(1, &[&[2], &[3]]);
        let m = d.model_fan(&lv(&[1]), None, DEFAULT_MULTIPLIER_CAP).unwrap();
        assert_eq!(m.multiplier, BigInt::from(6));
        let ints: Vec<LatticeVector> = m.vertices.iter().map(|v| LatticeVector::from_rational_direction(v)).collect();
        assert_eq!(ints, vec![lv(&[0, 1]), lv(&[1, 0])]);
        assert!(m.vertices.iter().flatten().all(|q| q.is_integer()));
        assert_eq!(m.vertices.iter().flatten().map(|q| q.to_integer()).max(), Some(BigInt::from(3)));
        assert!(matches!(d.model_fan(&lv(&[1]), None, 5), Err(ToricError::MultiplierTooLarge { .. })));
    }
}
