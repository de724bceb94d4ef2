//! On-disk fixture documents and their conversion into library values.
//!
//! Documents are deserialized without validation so that the verifier can
//! report malformed data as failed checks instead of load errors.

use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::serde_int::{deserialize_rational, serialize_rational};
use crate::linalg::{LatticeVector, ZMatrix};
use crate::ring::{GradedRing, Monomial, Polynomial, RingError};
use crate::surface::{IntersectionLattice, SurfaceError, SurfaceModel};
use crate::toric::{CharacterData, ToricError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {what}")]
    Json { what: String, source: serde_json::Error },
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

/// A curve used to pin down the canonical class by adjunction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjunctionCurve {
    pub class: String,
    #[serde(default)]
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDocument {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default)]
    pub name: String,
    pub basis_labels: Vec<String>,
    pub gram: Vec<LatticeVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_class: Option<LatticeVector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub adjunction_curves: Vec<AdjunctionCurve>,
    pub effective_generators: IndexMap<String, LatticeVector>,
    #[serde(default)]
    pub negative_curves: Vec<String>,
}

impl SurfaceDocument {
    pub fn gram_matrix(&self) -> Result<ZMatrix, FixtureError> {
        let rows: Vec<Vec<BigInt>> = self.gram.iter().map(|r| r.entries().to_vec()).collect();
        let cols = rows.first().map_or(0, Vec::len);
        ZMatrix::from_rows(rows, cols).map_err(|e| FixtureError::Invalid(format!("gram: {e}")))
    }

    /// A class given by name: a basis label or an effective generator.
    pub fn named_class(&self, name: &str) -> Option<LatticeVector> {
        if let Some(i) = self.basis_labels.iter().position(|l| l == name) {
            return Some(LatticeVector::unit(self.basis_labels.len(), i));
        }
        self.effective_generators.get(name).cloned()
    }

    /// The lattice without a canonical class unless one is stored.
    pub fn bare_lattice(&self) -> Result<IntersectionLattice, FixtureError> {
        Ok(IntersectionLattice::new(self.basis_labels.clone(), self.gram_matrix()?, self.canonical_class.clone())?)
    }

    pub fn adjunction_conditions(
        &self,
        lattice: &IntersectionLattice,
    ) -> Result<Vec<(LatticeVector, BigInt)>, FixtureError> {
        let curves = self
            .adjunction_curves
            .iter()
            .map(|c| {
                let v = self
                    .named_class(&c.class)
                    .ok_or_else(|| FixtureError::Invalid(format!("unknown adjunction curve `{}`", c.class)))?;
                Ok((v, c.genus))
            })
            .collect::<Result<Vec<_>, FixtureError>>()?;
        Ok(lattice.adjunction_conditions(&curves)?)
    }

    /// The lattice with its canonical class, solved by adjunction when not stored.
    pub fn lattice(&self) -> Result<IntersectionLattice, FixtureError> {
        let bare = self.bare_lattice()?;
        if bare.canonical_class().is_some() || self.adjunction_curves.is_empty() {
            return Ok(bare);
        }
        let k = bare.solve_canonical(&self.adjunction_conditions(&bare)?)?;
        Ok(bare.with_canonical(k)?)
    }

    pub fn model(&self) -> Result<SurfaceModel, FixtureError> {
        Ok(SurfaceModel::new(self.lattice()?, self.effective_generators.clone(), self.negative_curves.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariableDocument {
    pub name: String,
    pub degree: LatticeVector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    #[serde(serialize_with = "serialize_rational", deserialize_with = "deserialize_rational")]
    pub coeff: BigRational,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationDocument {
    pub terms: Vec<TermDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingDocument {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_ref: Option<String>,
    pub variables: Vec<VariableDocument>,
    #[serde(default)]
    pub relations: Vec<RelationDocument>,
}

impl RingDocument {
    pub fn rank(&self) -> usize {
        self.variables.first().map_or(0, |v| v.degree.len())
    }

    pub fn names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    /// A relation as a polynomial in the ring's variable names.
    pub fn relation(&self, i: usize) -> Result<Polynomial, FixtureError> {
        let r = self.relations.get(i).ok_or_else(|| FixtureError::Invalid(format!("no relation {i}")))?;
        let names = self.names();
        let terms = r
            .terms
            .iter()
            .map(|t| {
                if t.exponents.len() != names.len() {
                    return Err(FixtureError::Invalid(format!(
                        "relation term has {} exponents for {} variables",
                        t.exponents.len(),
                        names.len()
                    )));
                }
                let m: Monomial = names.iter().cloned().zip(t.exponents.iter().copied()).collect();
                Ok((m, t.coeff.clone()))
            })
            .collect::<Result<Vec<_>, FixtureError>>()?;
        Ok(Polynomial::from_terms(terms))
    }

    pub fn relations(&self) -> Result<Vec<Polynomial>, FixtureError> {
        (0..self.relations.len()).map(|i| self.relation(i)).collect()
    }

    fn variables(&self) -> Vec<(String, LatticeVector)> {
        self.variables.iter().map(|v| (v.name.clone(), v.degree.clone())).collect()
    }

    /// The ring without its relations.
    pub fn free_ring(&self) -> Result<GradedRing, FixtureError> {
        Ok(GradedRing::new(self.rank(), self.variables(), Vec::new())?)
    }

    pub fn ring(&self) -> Result<GradedRing, FixtureError> {
        Ok(GradedRing::new(self.rank(), self.variables(), self.relations()?)?)
    }

    /// Stores `p` as the relation list, with exponents over this ring's variables.
    pub fn set_relations(&mut self, ps: &[Polynomial]) -> Result<(), FixtureError> {
        let names = self.names();
        self.relations = ps
            .iter()
            .map(|p| {
                let terms = p
                    .terms()
                    .map(|(m, c)| {
                        if let Some(v) = m.keys().find(|v| !names.contains(v)) {
                            return Err(FixtureError::Invalid(format!("unknown variable `{v}`")));
                        }
                        let exponents = names.iter().map(|n| m.get(n).copied().unwrap_or(0)).collect();
                        Ok(TermDocument { coeff: c.clone(), exponents })
                    })
                    .collect::<Result<Vec<_>, FixtureError>>()?;
                Ok(RelationDocument { terms })
            })
            .collect::<Result<Vec<_>, FixtureError>>()?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterDocument {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_ref: Option<String>,
    pub grading_rank: usize,
    pub columns: Vec<VariableDocument>,
}

impl CharacterDocument {
    pub fn data(&self) -> Result<CharacterData, FixtureError> {
        let cols = self.columns.iter().map(|c| (c.name.clone(), c.degree.clone())).collect();
        Ok(CharacterData::new(self.grading_rank, cols)?)
    }
}

/// Where to find distinguished sections `xi^(D)` of effective classes: the
/// variable for each basis class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistinguishedSections {
    pub symbol: String,
    pub variables: IndexMap<String, String>,
}

/// A class as a coordinate vector or as an integer expression in other classes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassParams {
    Vector(LatticeVector),
    Expression(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleDocument {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub name: String,
    pub surface: String,
    pub ring: String,
    pub characters: String,
    #[serde(default)]
    pub classes: IndexMap<String, ClassParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished_sections: Option<DistinguishedSections>,
    pub identities: IndexMap<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A bundle with all referenced documents loaded.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureBundle {
    pub bundle: BundleDocument,
    pub surface: SurfaceDocument,
    pub ring: RingDocument,
    pub characters: CharacterDocument,
}

fn parse<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, FixtureError> {
    serde_json::from_str(text).map_err(|source| FixtureError::Json { what: what.to_string(), source })
}

fn read(path: &Path) -> Result<String, FixtureError> {
    std::fs::read_to_string(path).map_err(|source| FixtureError::Io { path: path.to_path_buf(), source })
}

fn check_schema(v: u32) -> Result<(), FixtureError> {
    if v != SCHEMA_VERSION {
        return Err(FixtureError::Schema(v));
    }
    Ok(())
}

pub fn read_surface(path: &Path) -> Result<SurfaceDocument, FixtureError> {
    let d: SurfaceDocument = parse(&path.display().to_string(), &read(path)?)?;
    check_schema(d.schema)?;
    Ok(d)
}

pub fn read_ring(path: &Path) -> Result<RingDocument, FixtureError> {
    let d: RingDocument = parse(&path.display().to_string(), &read(path)?)?;
    check_schema(d.schema)?;
    Ok(d)
}

pub fn read_characters(path: &Path) -> Result<CharacterDocument, FixtureError> {
    let d: CharacterDocument = parse(&path.display().to_string(), &read(path)?)?;
    check_schema(d.schema)?;
    Ok(d)
}

impl FixtureBundle {
    /// Reads a bundle file and the documents it references (relative to its directory).
    pub fn load(path: &Path) -> Result<FixtureBundle, FixtureError> {
        let bundle: BundleDocument = parse(&path.display().to_string(), &read(path)?)?;
        check_schema(bundle.schema)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Ok(FixtureBundle {
            surface: read_surface(&dir.join(&bundle.surface))?,
            ring: read_ring(&dir.join(&bundle.ring))?,
            characters: read_characters(&dir.join(&bundle.characters))?,
            bundle,
        })
    }

    /// Builds a bundle from in-memory JSON texts.
    pub fn from_texts(bundle: &str, surface: &str, ring: &str, characters: &str) -> Result<Self, FixtureError> {
        let out = FixtureBundle {
            bundle: parse("bundle", bundle)?,
            surface: parse("surface", surface)?,
            ring: parse("ring", ring)?,
            characters: parse("characters", characters)?,
        };
        for v in [out.bundle.schema, out.surface.schema, out.ring.schema, out.characters.schema] {
            check_schema(v)?;
        }
        Ok(out)
    }

    pub fn e6() -> FixtureBundle {
        FixtureBundle::from_texts(E6_BUNDLE, E6_SURFACE, E6_RING, E6_CHARACTERS).expect("shipped E6 fixture parses")
    }

    pub fn d4() -> FixtureBundle {
        FixtureBundle::from_texts(D4_BUNDLE, D4_SURFACE, D4_RING, D4_CHARACTERS).expect("shipped D4 fixture parses")
    }
}

pub const E6_BUNDLE: &str = include_str!("../../fixtures/e6_bundle.json");
pub const E6_SURFACE: &str = include_str!("../../fixtures/e6_surface.json");
pub const E6_RING: &str = include_str!("../../fixtures/e6_ring.json");
pub const E6_CHARACTERS: &str = include_str!("../../fixtures/e6_characters.json");
pub const D4_BUNDLE: &str = include_str!("../../fixtures/d4_bundle.json");
pub const D4_SURFACE: &str = include_str!("../../fixtures/d4_surface.json");
pub const D4_RING: &str = include_str!("../../fixtures/d4_ring.json");
pub const D4_CHARACTERS: &str = include_str!("../../fixtures/d4_characters.json");
