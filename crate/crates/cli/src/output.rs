//! JSON documents printed under `--format json`. Cones print as the library's
//! cone document and verification as the library's report; everything else is
//! one of the types below. Integers are decimal strings, rationals `"p/q"`.

use coxring::linalg::LatticeVector;
use coxring::ring::Polynomial;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainsDocument {
    pub vector: LatticeVector,
    pub strict: bool,
    pub contains: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum CertificateDocument {
    Member { generators: Vec<LatticeVector>, coefficients: Vec<String> },
    Separated { normal: LatticeVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub class: LatticeVector,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiDocument {
    pub class: LatticeVector,
    pub chi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPart {
    pub curve: String,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub class: LatticeVector,
    pub moving: ClassDocument,
    pub fixed: Vec<FixedPart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRow {
    pub exponents: LatticeVector,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialsDocument {
    pub degree: LatticeVector,
    pub variables: Vec<String>,
    pub monomials: Vec<MonomialRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDocument {
    pub degree: LatticeVector,
    pub relation_degree: LatticeVector,
    pub dimension: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousDocument {
    pub polynomial: Polynomial,
    /// `None` when the polynomial is not homogeneous.
    pub degree: Option<LatticeVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstituteDocument {
    pub polynomial: Polynomial,
    pub result: Polynomial,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedVector {
    pub name: String,
    pub vector: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonDocument {
    pub relations: Vec<LatticeVector>,
    pub vectors: Vec<NamedVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveDocument {
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDocument {
    pub nu: LatticeVector,
    pub multiplier: String,
    pub polytope_dimension: usize,
    pub vertices: Vec<Vec<String>>,
    /// Characters whose coordinate hyperplane cuts out a facet.
    pub facets: Vec<String>,
    pub fan_rays: Vec<LatticeVector>,
    pub simplicial: bool,
}
