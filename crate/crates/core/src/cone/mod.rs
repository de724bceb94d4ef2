//! Rational polyhedral cones in a lattice `Z^rank`.
//!
//! A [`Cone`] keeps both descriptions: extreme rays plus a lineality basis,
//! and facet normals plus a basis of the equations of its linear span. Both
//! are canonical, so two cones are equal exactly when their fields are equal.

mod dd;
mod simplex;
mod slice;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{invert, rank, rref, solve, LatticeVector, LinearSolution, QMatrix, ZMatrix};

pub use simplex::nonnegative_solution;
pub use slice::{lattice_points, ConeSlicePolytope, SliceEnumerator};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("vector has length {got}, expected ambient rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("the slice polytope is unbounded: 0 lies in the convex hull of the columns")]
    UnboundedSlice,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    lineality: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
    equations: Vec<LatticeVector>,
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Nonnegative coefficients, one per generator, reproducing the vector.
    Member(Vec<BigRational>),
    /// A normal `u` that is nonnegative on the cone with `u · v < 0`.
    Separated(LatticeVector),
}

impl Certificate {
    pub fn is_member(&self) -> bool {
        matches!(self, Certificate::Member(_))
    }
}

fn check_rank(rank: usize, vs: &[LatticeVector]) -> Result<(), ConeError> {
    match vs.iter().find(|v| v.len() != rank) {
        Some(v) => Err(ConeError::RankMismatch { expected: rank, got: v.len() }),
        None => Ok(()),
    }
}

/// Canonical basis of the span of `vs`: nonzero RREF rows scaled to primitive integers.
fn canonical_span(dim: usize, vs: &[LatticeVector]) -> Vec<LatticeVector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let q = ZMatrix::from_vectors(vs, dim).expect("dims").to_rational();
    let (r, pivots) = rref(&q);
    (0..pivots.len()).map(|i| LatticeVector::from_rational_direction(r.row(i))).collect()
}

/// Orthogonal projection onto the complement of `span(basis)`, scaled to a primitive vector.
struct Projector {
    basis: Vec<Vec<BigRational>>,
    gram_inv: Option<QMatrix>,
}

impl Projector {
    fn new(dim: usize, basis: &[LatticeVector]) -> Self {
        if basis.is_empty() {
            return Projector { basis: Vec::new(), gram_inv: None };
        }
        let b = ZMatrix::from_vectors(basis, dim).expect("dims").to_rational();
        let gram = b.mul(&b.transpose());
        let gram_inv = invert(&gram).expect("basis is independent");
        Projector { basis: b.row_vecs(), gram_inv: Some(gram_inv) }
    }

    fn project(&self, v: &LatticeVector) -> LatticeVector {
        let Some(gi) = &self.gram_inv else { return v.primitive() };
        let x = v.to_rational();
        let dots: Vec<BigRational> = self.basis.iter().map(|b| b.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
        let mut out = x;
        for i in 0..self.basis.len() {
            let c: BigRational = (0..dots.len()).map(|j| gi.get(i, j) * &dots[j]).sum();
            for (o, b) in out.iter_mut().zip(&self.basis[i]) {
                *o -= &c * b;
            }
        }
        LatticeVector::from_rational_direction(&out)
    }
}

fn canonical_list(vs: impl IntoIterator<Item = LatticeVector>) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = vs.into_iter().filter(|v| !v.is_zero()).collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    /// The cone generated by `rays` and the linear span of `lineality`.
    pub fn from_generators(
        rank: usize,
        rays: &[LatticeVector],
        lineality: &[LatticeVector],
    ) -> Result<Cone, ConeError> {
        check_rank(rank, rays)?;
        check_rank(rank, lineality)?;
        let dual = dd::generators_of(rank, rays, lineality);
        let equations = canonical_span(rank, &dual.lineality);
        let to_span = Projector::new(rank, &equations);
        let facets = canonical_list(dual.rays.iter().map(|f| to_span.project(f)));
        Ok(Cone::assemble(rank, facets, equations))
    }

    pub fn from_rays(rank: usize, rays: &[LatticeVector]) -> Result<Cone, ConeError> {
        Cone::from_generators(rank, rays, &[])
    }

    /// The cone `{x : f·x ≥ 0 for f in ineqs, e·x = 0 for e in eqs}`.
    pub fn from_inequalities(rank: usize, ineqs: &[LatticeVector], eqs: &[LatticeVector]) -> Result<Cone, ConeError> {
        check_rank(rank, ineqs)?;
        check_rank(rank, eqs)?;
        let g = dd::generators_of(rank, ineqs, eqs);
        Cone::from_generators(rank, &g.rays, &g.lineality)
    }

    /// Builds the generator side from canonical facets and equations.
    fn assemble(rank: usize, facets: Vec<LatticeVector>, equations: Vec<LatticeVector>) -> Cone {
        let g = dd::generators_of(rank, &facets, &equations);
        let lineality = canonical_span(rank, &g.lineality);
        let to_complement = Projector::new(rank, &lineality);
        let rays = canonical_list(g.rays.iter().map(|r| to_complement.project(r)));
        Cone { rank, rays, lineality, facets, equations }
    }

    /// The zero cone `{0}`.
    pub fn zero(rank: usize) -> Cone {
        Cone::from_rays(rank, &[]).expect("no vectors")
    }

    /// The nonnegative orthant of `Z^rank`.
    pub fn orthant(rank: usize) -> Cone {
        let units: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
        Cone::from_rays(rank, &units).expect("consistent rank")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Extreme rays, taken modulo the lineality space when the cone is not pointed.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    /// Facet normals, taken modulo the equations of the span.
    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    pub fn dimension(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        if !self.is_pointed() {
            return false;
        }
        if self.rays.is_empty() {
            return true;
        }
        rank(&ZMatrix::from_vectors(&self.rays, self.rank).expect("dims").to_rational()) == self.rays.len()
    }

    /// The dual cone under the standard dot product, recomputed by double description.
    pub fn dual(&self) -> Cone {
        Cone::from_generators(self.rank, &self.facets, &self.equations).expect("consistent rank")
    }

    pub fn intersect(cones: &[Cone]) -> Result<Cone, ConeError> {
        let Some(first) = cones.first() else {
            panic!("intersect needs at least one cone");
        };
        let rank = first.rank;
        if let Some(c) = cones.iter().find(|c| c.rank != rank) {
            return Err(ConeError::RankMismatch { expected: rank, got: c.rank });
        }
        let ineqs: Vec<LatticeVector> = cones.iter().flat_map(|c| c.facets.iter().cloned()).collect();
        let eqs: Vec<LatticeVector> = cones.iter().flat_map(|c| c.equations.iter().cloned()).collect();
        Cone::from_inequalities(rank, &ineqs, &eqs)
    }

    pub fn contains(&self, v: &LatticeVector, strict: bool) -> Result<bool, ConeError> {
        check_rank(self.rank, std::slice::from_ref(v))?;
        if strict {
            return Ok(self.is_full_dimensional() && self.facets.iter().all(|f| f.dot(v).is_positive()));
        }
        Ok(self.equations.iter().all(|e| e.dot(v).is_zero()) && self.facets.iter().all(|f| !f.dot(v).is_negative()))
    }

    /// A nonnegative combination of the rays and signed lineality vectors, in the
    /// order rays, then `+l` for each lineality vector, then `-l`.
    pub fn generator_list(&self) -> Vec<LatticeVector> {
        let mut g = self.rays.clone();
        g.extend(self.lineality.iter().cloned());
        g.extend(self.lineality.iter().map(|l| -l));
        g
    }

    /// Certificate over [`Cone::generator_list`], or a separating normal.
    pub fn membership_certificate(&self, v: &LatticeVector) -> Result<Certificate, ConeError> {
        check_rank(self.rank, std::slice::from_ref(v))?;
        if let Some(normal) = self.separating_normal(v) {
            return Ok(Certificate::Separated(normal));
        }
        let coefficients = combine(&self.generator_list(), v, self.rank).expect("member has a combination");
        Ok(Certificate::Member(coefficients))
    }

    fn separating_normal(&self, v: &LatticeVector) -> Option<LatticeVector> {
        for e in &self.equations {
            let s = e.dot(v);
            if s.is_positive() {
                return Some(-e);
            }
            if s.is_negative() {
                return Some(e.clone());
            }
        }
        self.facets.iter().find(|f| f.dot(v).is_negative()).cloned()
    }
}

/// Largest generator count for which certificates are searched by support size.
const SUBSET_SEARCH_LIMIT: usize = 20;

/// Nonnegative rational coefficients `λ` with `Σ λ_i g_i = v`, preferring the
/// smallest support and, among those, the lexicographically first index set.
fn combine(generators: &[LatticeVector], v: &LatticeVector, dim: usize) -> Option<Vec<BigRational>> {
    let n = generators.len();
    let target: Vec<BigRational> = v.to_rational();
    if v.is_zero() {
        return Some(vec![BigRational::zero(); n]);
    }
    if n <= SUBSET_SEARCH_LIMIT {
        for size in 1..=dim.min(n) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let cols: Vec<LatticeVector> = idx.iter().map(|&i| generators[i].clone()).collect();
                let a = ZMatrix::from_columns(&cols, dim).expect("dims").to_rational();
                if let LinearSolution::Unique(x) = solve(&a, &target) {
                    if x.iter().all(|c| !c.is_negative()) {
                        let mut out = vec![BigRational::zero(); n];
                        for (k, &i) in idx.iter().enumerate() {
                            out[i] = x[k].clone();
                        }
                        return Some(out);
                    }
                }
                if !next_combination(&mut idx, n) {
                    break;
                }
            }
        }
        return None;
    }
    let a = ZMatrix::from_columns(generators, dim).expect("dims").to_rational();
    nonnegative_solution(&a, &target)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Membership of `v` in `Cone(generators)` with a certificate over the given list
/// (which need not consist of extreme rays).
pub fn certify(rank: usize, generators: &[LatticeVector], v: &LatticeVector) -> Result<Certificate, ConeError> {
    check_rank(rank, generators)?;
    check_rank(rank, std::slice::from_ref(v))?;
    let cone = Cone::from_rays(rank, generators)?;
    if let Some(normal) = cone.separating_normal(v) {
        return Ok(Certificate::Separated(normal));
    }
    Ok(Certificate::Member(combine(generators, v, rank).expect("member has a combination")))
}

/// Re-expands a certificate: `Σ λ_i g_i`.
pub fn expand(generators: &[LatticeVector], coefficients: &[BigRational], rank: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); rank];
    for (g, c) in generators.iter().zip(coefficients) {
        for (o, x) in out.iter_mut().zip(g.entries()) {
            *o += c * BigRational::from(x.clone());
        }
    }
    out
}

/// Whether `0 = Σ λ_i v_i` for some convex combination.
pub fn zero_in_convex_hull(vectors: &[LatticeVector]) -> bool {
    let Some(first) = vectors.first() else { return false };
    let dim = first.len();
    let a = QMatrix::from_fn(dim + 1, vectors.len(), |i, j| {
        if i < dim {
            BigRational::from(vectors[j].get(i).clone())
        } else {
            BigRational::one()
        }
    });
    let mut b = vec![BigRational::zero(); dim + 1];
    b[dim] = BigRational::one();
    nonnegative_solution(&a, &b).is_some()
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = |f: &mut fmt::Formatter<'_>, title: &str, vs: &[LatticeVector]| -> fmt::Result {
            writeln!(f, "{title} ({}):", vs.len())?;
            for v in vs {
                let cells: Vec<String> = v.entries().iter().map(BigInt::to_string).collect();
                writeln!(f, "  {}", cells.join(" "))?;
            }
            Ok(())
        };
        writeln!(f, "rank {}, dimension {}", self.rank, self.dimension())?;
        table(f, "rays", &self.rays)?;
        table(f, "facets", &self.facets)?;
        if !self.lineality.is_empty() {
            table(f, "lineality", &self.lineality)?;
        }
        if !self.equations.is_empty() {
            table(f, "equations", &self.equations)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ConeDocument {
    rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rays: Option<Vec<LatticeVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<LatticeVector>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lineality: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    equations: Vec<LatticeVector>,
}

impl Serialize for Cone {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ConeDocument {
            rank: self.rank,
            rays: Some(self.rays.clone()),
            facets: Some(self.facets.clone()),
            lineality: self.lineality.clone(),
            equations: self.equations.clone(),
        }
        .serialize(s)
    }
}

/// Reads `{rank, rays, lineality?}` or, without rays, `{rank, facets, equations?}`;
/// the other side is recomputed.
impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = ConeDocument::deserialize(d)?;
        let cone = match (&doc.rays, &doc.facets) {
            (Some(rays), _) => Cone::from_generators(doc.rank, rays, &doc.lineality),
            (None, Some(facets)) => Cone::from_inequalities(doc.rank, facets, &doc.equations),
            (None, None) => return Err(D::Error::missing_field("rays")),
        }
        .map_err(D::Error::custom)?;
        Ok(cone)
    }
}
