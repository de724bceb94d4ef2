//! Polynomial rings graded by a lattice.

mod parse;
mod polynomial;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cone::{ConeError, SliceEnumerator};
use crate::linalg::LatticeVector;

pub use parse::parse_polynomial;
pub use polynomial::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("degree of `{name}` has length {got}, grading rank is {expected}")]
    RankMismatch { name: String, expected: usize, got: usize },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("expected exactly one relation, found {0}")]
    RelationCount(usize),
    #[error("relation has degree {actual}, not {declared}")]
    RelationDegree { declared: LatticeVector, actual: LatticeVector },
    #[error("exponent must be a nonnegative machine integer")]
    BadExponent,
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// A polynomial ring `k[x_1, …, x_n]` with `deg x_i ∈ Z^rank`, and homogeneous relations.
#[derive(Debug)]
pub struct GradedRing {
    rank: usize,
    names: Vec<String>,
    degrees: Vec<LatticeVector>,
    relations: Vec<Polynomial>,
    enumerator: OnceLock<SliceEnumerator>,
}

impl Clone for GradedRing {
    fn clone(&self) -> Self {
        GradedRing {
            rank: self.rank,
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            relations: self.relations.clone(),
            enumerator: self.enumerator.clone(),
        }
    }
}

impl GradedRing {
    pub fn new(
        rank: usize,
        variables: Vec<(String, LatticeVector)>,
        relations: Vec<Polynomial>,
    ) -> Result<Self, RingError> {
        let mut seen = BTreeSet::new();
        for (name, d) in &variables {
            if !seen.insert(name.clone()) {
                return Err(RingError::DuplicateVariable(name.clone()));
            }
            if d.len() != rank {
                return Err(RingError::RankMismatch { name: name.clone(), expected: rank, got: d.len() });
            }
        }
        let (names, degrees) = variables.into_iter().unzip();
        let ring = GradedRing { rank, names, degrees, relations: Vec::new(), enumerator: OnceLock::new() };
        for (i, r) in relations.iter().enumerate() {
            if ring.is_homogeneous(r)?.is_none() {
                return Err(RingError::NotHomogeneous(i));
            }
        }
        Ok(GradedRing { relations, ..ring })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[LatticeVector] {
        &self.degrees
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn degree_of(&self, variable: &str) -> Option<&LatticeVector> {
        self.index(variable).map(|i| &self.degrees[i])
    }

    fn index(&self, variable: &str) -> Option<usize> {
        self.names.iter().position(|n| n == variable)
    }

    fn enumerator(&self) -> &SliceEnumerator {
        self.enumerator.get_or_init(|| SliceEnumerator::new(&self.degrees, self.rank).expect("ranks checked"))
    }

    /// Exponent vector of a monomial over this ring's variables.
    pub fn exponents(&self, m: &Monomial) -> Result<LatticeVector, RingError> {
        let mut e = vec![BigInt::from(0); self.names.len()];
        for (v, &k) in m {
            let i = self.index(v).ok_or_else(|| RingError::UnknownVariable(v.clone()))?;
            e[i] = BigInt::from(k);
        }
        Ok(LatticeVector::new(e))
    }

    pub fn monomial(&self, exponents: &LatticeVector) -> Result<Monomial, RingError> {
        self.check_length(exponents)?;
        exponents
            .entries()
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| !num_traits::Zero::is_zero(*e))
            .map(|(e, n)| Ok((n.clone(), e.to_u32().ok_or(RingError::BadExponent)?)))
            .collect()
    }

    /// Human-readable monomial such as `xi1^2*tau1`, or `1`.
    pub fn monomial_name(&self, exponents: &LatticeVector) -> Result<String, RingError> {
        let mut parts = Vec::new();
        for (e, n) in exponents.entries().iter().zip(&self.names) {
            match e.to_u32().ok_or(RingError::BadExponent)? {
                0 => {}
                1 => parts.push(n.clone()),
                k => parts.push(format!("{n}^{k}")),
            }
        }
        Ok(if parts.is_empty() { "1".to_string() } else { parts.join("*") })
    }

    fn check_length(&self, e: &LatticeVector) -> Result<(), RingError> {
        if e.len() != self.names.len() {
            return Err(RingError::LengthMismatch { expected: self.names.len(), got: e.len() });
        }
        Ok(())
    }

    /// `Σ e_i · deg x_i`.
    pub fn degree_of_monomial(&self, exponents: &LatticeVector) -> Result<LatticeVector, RingError> {
        self.check_length(exponents)?;
        let mut out = LatticeVector::zeros(self.rank);
        for (e, d) in exponents.entries().iter().zip(&self.degrees) {
            out = &out + &d.scale(e);
        }
        Ok(out)
    }

    /// The common degree of all terms, if they agree. The zero polynomial has none.
    pub fn is_homogeneous(&self, p: &Polynomial) -> Result<Option<LatticeVector>, RingError> {
        let mut degree: Option<LatticeVector> = None;
        for (m, _) in p.terms() {
            let d = self.degree_of_monomial(&self.exponents(m)?)?;
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => return Ok(None),
                Some(_) => {}
            }
        }
        Ok(degree)
    }

    /// Exponent vectors of all monomials of the given degree, lexicographically ascending.
    pub fn monomials_of_degree(&self, target: &LatticeVector) -> Result<Vec<LatticeVector>, RingError> {
        Ok(self.enumerator().points(target)?)
    }

    pub fn count_of_degree(&self, target: &LatticeVector) -> Result<usize, RingError> {
        Ok(self.enumerator().count(target)?)
    }

    /// `#monomials(target) − #monomials(target − deg f)` for the single relation `f`.
    pub fn hilbert_hypersurface(
        &self,
        relation_degree: &LatticeVector,
        target: &LatticeVector,
    ) -> Result<i64, RingError> {
        let [relation] = self.relations.as_slice() else {
            return Err(RingError::RelationCount(self.relations.len()));
        };
        let actual = self.is_homogeneous(relation)?.ok_or(RingError::NotHomogeneous(0))?;
        if actual != *relation_degree {
            return Err(RingError::RelationDegree { declared: relation_degree.clone(), actual });
        }
        let all = self.count_of_degree(target)? as i64;
        let multiples = self.count_of_degree(&(target - relation_degree))? as i64;
        Ok(all - multiples)
    }

    /// Whether `variable` divides every monomial of degree `target`. An empty
    /// graded piece yields `false`.
    pub fn divides_all(&self, variable: &str, target: &LatticeVector) -> Result<bool, RingError> {
        let i = self.index(variable).ok_or_else(|| RingError::UnknownVariable(variable.to_string()))?;
        let monomials = self.monomials_of_degree(target)?;
        Ok(!monomials.is_empty() && monomials.iter().all(|e| e.get(i) > &BigInt::from(0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(v)
    }

    /// `k[x, y, z]` with the standard Z-grading and relation `xy - z^2`.
    fn conic() -> GradedRing {
        let vars = ["x", "y", "z"].iter().map(|n| (n.to_string(), lv(&[1]))).collect();
        GradedRing::new(1, vars, vec!["x*y - z^2".parse().unwrap()]).unwrap()
    }

    #[test]
    fn monomials_and_hilbert() {
        let r = conic();
        assert_eq!(r.count_of_degree(&lv(&[2])).unwrap(), 6);
        // Coordinate ring of a conic: 2d + 1 in degree d.
        for d in 0..6 {
            assert_eq!(r.hilbert_hypersurface(&lv(&[2]), &lv(&[d])).unwrap(), 2 * d + 1);
        }
        assert_eq!(r.monomials_of_degree(&lv(&[0])).unwrap(), vec![lv(&[0, 0, 0])]);
        assert_eq!(r.monomial_name(&lv(&[2, 0, 1])).unwrap(), "x^2*z");
    }

    #[test]
    fn homogeneity() {
        let r = conic();
        let two: Vec<(String, LatticeVector)> = vec![("a".into(), lv(&[1, 0])), ("b".into(), lv(&[0, 1]))];
        let bi = GradedRing::new(2, two.clone(), vec![]).unwrap();
        assert_eq!(bi.is_homogeneous(&"a + b".parse().unwrap()).unwrap(), None);
        assert_eq!(bi.is_homogeneous(&"a^2*b".parse().unwrap()).unwrap(), Some(lv(&[2, 1])));
        assert!(matches!(GradedRing::new(2, two, vec!["a + b".parse().unwrap()]), Err(RingError::NotHomogeneous(0))));
        assert!(matches!(r.is_homogeneous(&"w".parse().unwrap()), Err(RingError::UnknownVariable(_))));
    }

    #[test]
    fn divisibility() {
        let vars = vec![("x".into(), lv(&[1, 0])), ("y".into(), lv(&[1, 1]))];
        let r = GradedRing::new(2, vars, vec![]).unwrap();
        assert!(r.divides_all("x", &lv(&[1, 0])).unwrap());
        assert!(!r.divides_all("x", &lv(&[1, 1])).unwrap());
        assert!(!r.divides_all("x", &lv(&[0, 0])).unwrap());
    }
}
