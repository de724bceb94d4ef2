//! Fixture-driven verification of Cox ring computations.
//!
//! A bundle names a surface document, a ring document, a character document and
//! an ordered map of identities. [`verify`] evaluates every identity against the
//! raw data and produces one report record per identity; malformed data shows up
//! as failed records rather than errors.

mod checks;
pub mod classes;
pub mod fixtures;
mod report;
mod sweep;

use serde_json::Value;

use crate::linalg::LatticeVector;
use crate::ring::{GradedRing, Polynomial};
use crate::surface::{IntersectionLattice, SurfaceModel};
use crate::toric::{CharacterData, DEFAULT_MULTIPLIER_CAP};

pub use classes::ClassTable;
pub use fixtures::{
    BundleDocument, CharacterDocument, ClassParams, FixtureBundle, FixtureError, RingDocument, SurfaceDocument,
    SCHEMA_VERSION,
};
pub use report::{CheckRecord, Status, VerificationReport};
pub use sweep::{sweep, sweep_degrees, SweepError, SweepMismatch, SweepMode, SweepOutcome};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Overrides the coefficient bound of every `hilbert_sweep` identity.
    pub sweep_bound: Option<u32>,
    pub multiplier_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { sweep_bound: None, multiplier_cap: DEFAULT_MULTIPLIER_CAP }
    }
}

/// Identity kinds the E6 report must contain.
pub const E6_REQUIRED: &[&str] = &[
    "inverse_gram",
    "nef_cone",
    "anticanonical",
    "euler_characteristics",
    "section_counts",
    "relation_degree",
    "parametrization",
    "one_skeleton",
    "moving_cone",
    "projective",
    "hilbert_sweep",
    "toric_anticanonical",
];

/// Identity kinds the D4 report must contain.
pub const D4_REQUIRED: &[&str] =
    &["lattice", "anticanonical", "nef_cone", "certificates", "relation_degree", "parametrization", "hilbert_sweep"];

/// Everything derived from the raw documents, each part independently fallible.
pub(crate) struct Context<'a> {
    fixture: &'a FixtureBundle,
    table: Result<ClassTable, String>,
    bare: Result<IntersectionLattice, String>,
    lattice: Result<IntersectionLattice, String>,
    model: Result<SurfaceModel, String>,
    free_ring: Result<GradedRing, String>,
    ring: Result<GradedRing, String>,
    relation: Result<Polynomial, String>,
    characters: Result<CharacterData, String>,
}

fn view<'b, T>(r: &'b Result<T, String>, what: &str) -> Result<&'b T, String> {
    r.as_ref().map_err(|e| format!("{what} unavailable: {e}"))
}

impl<'a> Context<'a> {
    fn new(fixture: &'a FixtureBundle) -> Self {
        let s = |e: FixtureError| e.to_string();
        let relation = match fixture.ring.relations.len() {
            1 => fixture.ring.relation(0).map_err(s),
            n => Err(format!("expected exactly one relation, found {n}")),
        };
        Context {
            fixture,
            table: ClassTable::for_bundle(fixture),
            bare: fixture.surface.bare_lattice().map_err(s),
            lattice: fixture.surface.lattice().map_err(s),
            model: fixture.surface.model().map_err(s),
            free_ring: fixture.ring.free_ring().map_err(s),
            ring: fixture.ring.ring().map_err(s),
            relation,
            characters: fixture.characters.data().map_err(s),
        }
    }

    fn table(&self) -> Result<&ClassTable, String> {
        view(&self.table, "class table")
    }
    fn bare(&self) -> Result<&IntersectionLattice, String> {
        view(&self.bare, "intersection lattice")
    }
    fn lattice(&self) -> Result<&IntersectionLattice, String> {
        view(&self.lattice, "intersection lattice with canonical class")
    }
    fn model(&self) -> Result<&SurfaceModel, String> {
        view(&self.model, "surface model")
    }
    fn free_ring(&self) -> Result<&GradedRing, String> {
        view(&self.free_ring, "polynomial ring")
    }
    fn ring(&self) -> Result<&GradedRing, String> {
        view(&self.ring, "ring with relation")
    }
    fn relation(&self) -> Result<&Polynomial, String> {
        view(&self.relation, "relation")
    }
    fn characters(&self) -> Result<&CharacterData, String> {
        view(&self.characters, "character data")
    }
}

fn record(name: &str, def: &Value, ctx: &Context, opts: &VerifyOptions) -> CheckRecord {
    let kind = def.get("kind").and_then(Value::as_str).unwrap_or("").to_string();
    let note = def.get("note").and_then(Value::as_str).unwrap_or("").to_string();
    let (status, computed, expected, detail) = match checks::run(&kind, ctx, def, opts) {
        Ok(o) => (if o.passed { Status::Pass } else { Status::Fail }, o.computed, o.expected, o.detail),
        Err(e) => (Status::Fail, Value::Null, Value::Null, e),
    };
    CheckRecord { name: name.to_string(), kind, status, computed, expected, detail, note }
}

/// Evaluates every identity of the bundle, in bundle order.
pub fn verify(fixture: &FixtureBundle, opts: &VerifyOptions) -> VerificationReport {
    let ctx = Context::new(fixture);
    let checks = fixture.bundle.identities.iter().map(|(name, def)| record(name, def, &ctx, opts)).collect();
    VerificationReport::new(&fixture.bundle.name, checks, fixture.bundle.notes.clone())
}

/// [`verify`], plus a failed record for every required kind the bundle lacks.
pub fn verify_with_required(fixture: &FixtureBundle, opts: &VerifyOptions, required: &[&str]) -> VerificationReport {
    let mut report = verify(fixture, opts);
    for kind in required {
        if !report.checks.iter().any(|c| c.kind == *kind) {
            report.checks.push(CheckRecord {
                name: format!("required {kind}"),
                kind: kind.to_string(),
                status: Status::Fail,
                computed: Value::Null,
                expected: Value::Null,
                detail: "identity missing from the bundle".to_string(),
                note: String::new(),
            });
        }
    }
    VerificationReport::new(&report.bundle, report.checks, report.notes)
}

pub fn verify_e6(fixture: &FixtureBundle, opts: &VerifyOptions) -> VerificationReport {
    verify_with_required(fixture, opts, E6_REQUIRED)
}

pub fn verify_d4(fixture: &FixtureBundle, opts: &VerifyOptions) -> VerificationReport {
    verify_with_required(fixture, opts, D4_REQUIRED)
}

/// Hilbert function against `χ` over the given degrees, using the bundle's single relation.
pub fn hilbert_sweep(fixture: &FixtureBundle, degrees: &[LatticeVector]) -> Result<SweepOutcome, SweepError> {
    let fail = |message: String| SweepError { degree: LatticeVector::zeros(0), message };
    let ring = fixture.ring.ring().map_err(|e| fail(e.to_string()))?;
    let lattice = fixture.surface.lattice().map_err(|e| fail(e.to_string()))?;
    let relation = ring.relations().first().cloned().ok_or_else(|| fail("ring has no relation".to_string()))?;
    let degree = ring
        .is_homogeneous(&relation)
        .map_err(|e| fail(e.to_string()))?
        .ok_or_else(|| fail("relation is not homogeneous".to_string()))?;
    sweep(&ring, &lattice, &degree, degrees)
}
