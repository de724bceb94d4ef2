//! One function per identity kind. Each reads its parameters from the bundle's
//! JSON and compares against values computed from the raw fixture data.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use super::classes::{distinguished_monomial, format_combination, parse_section, ClassTable};
use super::sweep::{sweep, sweep_degrees, SweepMode};
use super::{Context, VerifyOptions};
use crate::cone::{certify, Certificate, Cone};
use crate::linalg::serde_int::rational_to_string;
use crate::linalg::{invert, same_lattice_snf, smith_normal_form, LatticeVector};
use crate::ring::{parse_polynomial, Monomial, Polynomial};

pub(crate) struct Outcome {
    pub passed: bool,
    pub computed: Value,
    pub expected: Value,
    pub detail: String,
}

pub(crate) type CheckResult = Result<Outcome, String>;

fn params<T: DeserializeOwned>(def: &Value) -> Result<T, String> {
    serde_json::from_value(def.clone()).map_err(|e| format!("bad identity parameters: {e}"))
}

fn outcome(passed: bool, computed: Value, expected: Value, problems: Vec<String>, summary: String) -> Outcome {
    let detail = if problems.is_empty() { summary } else { problems.join("; ") };
    Outcome { passed: passed && problems.is_empty(), computed, expected, detail }
}

pub(crate) fn run(kind: &str, ctx: &Context, def: &Value, opts: &VerifyOptions) -> CheckResult {
    match kind {
        "lattice" => lattice(ctx, def),
        "inverse_gram" => inverse_gram(ctx, def),
        "dual_basis" => dual_basis(ctx, def),
        "effective_cone" => cone_check(ctx, def, false),
        "nef_cone" => cone_check(ctx, def, true),
        "anticanonical" => anticanonical(ctx, def),
        "euler_characteristics" => euler(ctx, def),
        "relation_degree" => relation_degree(ctx, def),
        "section_counts" => section_counts(ctx, def),
        "inclusion_chains" => inclusion_chains(ctx, def),
        "relation_derivation" => relation_derivation(ctx, def),
        "embedded_sections" => embedded_sections(ctx, def),
        "parametrization" => parametrization(ctx, def),
        "character_degrees" => character_degrees(ctx),
        "one_skeleton" => one_skeleton(ctx, def),
        "moving_cone" => moving_cone(ctx, def),
        "projective" => projective(ctx, def),
        "toric_anticanonical" => toric_anticanonical(ctx, def),
        "model_fan" => model_fan(ctx, def, opts),
        "decomposition" => decomposition(ctx, def),
        "certificates" => certificates(ctx, def),
        "hilbert_sweep" => hilbert_sweep(ctx, def, opts),
        other => Err(format!("unknown identity kind `{other}`")),
    }
}

fn ints(v: &LatticeVector) -> Value {
    Value::Array(v.entries().iter().map(|x| Value::String(x.to_string())).collect())
}

fn rationals(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(rational_to_string(x))).collect())
}

#[derive(Deserialize)]
struct LatticeParams {
    #[serde(default)]
    unimodular: Option<bool>,
}

fn lattice(ctx: &Context, def: &Value) -> CheckResult {
    let p: LatticeParams = params(def)?;
    let bare = ctx.bare()?;
    let factors = smith_normal_form(bare.gram()).invariant_factors();
    let by_det = bare.is_unimodular();
    let by_snf = factors.len() == bare.rank() && factors.iter().all(|d| d.abs() == BigInt::from(1));
    let mut problems = Vec::new();
    if by_det != by_snf {
        problems.push(format!("determinant {} disagrees with Smith form {:?}", bare.determinant(), factors));
    }
    if let Some(u) = p.unimodular {
        if u != by_det {
            problems.push(format!("unimodular is {by_det}, expected {u}"));
        }
    }
    let computed = json!({
        "determinant": bare.determinant().to_string(),
        "invariant_factors": factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "unimodular": by_det,
    });
    let summary = format!("rank {}, determinant {}", bare.rank(), bare.determinant());
    Ok(outcome(true, computed, json!({ "unimodular": p.unimodular }), problems, summary))
}

#[derive(Deserialize)]
struct InverseParams {
    expected: Vec<LatticeVector>,
}

fn inverse_gram(ctx: &Context, def: &Value) -> CheckResult {
    let p: InverseParams = params(def)?;
    let gram = ctx.fixture.surface.gram_matrix().map_err(|e| e.to_string())?;
    let inv = invert(&gram.to_rational()).map_err(|e| format!("intersection matrix: {e}"))?;
    let labels = &ctx.fixture.surface.basis_labels;
    let mut problems = Vec::new();
    if p.expected.len() != inv.rows() || p.expected.iter().any(|r| r.len() != inv.cols()) {
        problems.push(format!("expected matrix is not {}x{}", inv.rows(), inv.cols()));
    } else {
        for (i, row) in p.expected.iter().enumerate() {
            for (j, e) in row.entries().iter().enumerate() {
                let c = inv.get(i, j);
                if *c != BigRational::from(e.clone()) {
                    problems.push(format!(
                        "entry ({}, {}): computed {}, expected {}",
                        labels.get(i).map_or("?", String::as_str),
                        labels.get(j).map_or("?", String::as_str),
                        rational_to_string(c),
                        e
                    ));
                }
            }
        }
    }
    if problems.len() > 10 {
        let more = problems.len() - 10;
        problems.truncate(10);
        problems.push(format!("{more} more entries differ"));
    }
    let computed = Value::Array(inv.row_vecs().iter().map(|r| rationals(r)).collect());
    let expected = Value::Array(p.expected.iter().map(ints).collect());
    Ok(outcome(true, computed, expected, problems, "exact inverse matches".to_string()))
}

#[derive(Deserialize)]
struct DualBasisParams {
    classes: Vec<String>,
    basis: Vec<String>,
}

fn dual_basis(ctx: &Context, def: &Value) -> CheckResult {
    let p: DualBasisParams = params(def)?;
    let bare = ctx.bare()?;
    let table = ctx.table()?;
    let mut problems = Vec::new();
    let mut rows = Vec::new();
    for a in &p.classes {
        let va = table.eval(a)?;
        let mut row = Vec::new();
        for (j, b) in p.basis.iter().enumerate() {
            let vb = table.eval(b)?;
            let x = bare.pair(&va, &vb).map_err(|e| e.to_string())?;
            let want = BigInt::from(u8::from(p.classes.iter().position(|c| c == a) == Some(j)));
            if x != want {
                problems.push(format!("{a}·{b} = {x}, expected {want}"));
            }
            row.push(x.to_string());
        }
        rows.push(row);
    }
    let summary = format!("{} classes dual to {} basis curves", p.classes.len(), p.basis.len());
    Ok(outcome(true, json!(rows), json!("identity"), problems, summary))
}

#[derive(Deserialize)]
struct ConeParams {
    expected: Vec<String>,
    #[serde(default)]
    simplicial: Option<bool>,
}

/// Compares the rays of `cone` with the primitive vectors of `expected`.
fn compare_rays(
    table: &ClassTable,
    cone: &Cone,
    expected: &[String],
    problems: &mut Vec<String>,
) -> Result<Value, String> {
    let mut named: BTreeMap<LatticeVector, String> = BTreeMap::new();
    for e in expected {
        let v = table.eval(e)?.primitive();
        if v.is_zero() {
            problems.push(format!("expected ray {e} is zero"));
        }
        named.entry(v).or_insert_with(|| e.clone());
    }
    let computed: BTreeSet<LatticeVector> = cone.rays().iter().cloned().collect();
    for (v, name) in &named {
        if !computed.contains(v) {
            problems.push(format!("missing ray {name}"));
        }
    }
    for v in &computed {
        if !named.contains_key(v) {
            problems.push(format!("unexpected ray {}", table.format(v)));
        }
    }
    if !cone.lineality().is_empty() {
        problems.push(format!("cone contains {} independent lines", cone.lineality().len()));
    }
    Ok(Value::Array(
        cone.rays().iter().map(|r| Value::String(named.get(r).cloned().unwrap_or_else(|| table.format(r)))).collect(),
    ))
}

fn cone_check(ctx: &Context, def: &Value, nef: bool) -> CheckResult {
    let p: ConeParams = params(def)?;
    let model = ctx.model()?;
    let cone = if nef { model.nef_cone() } else { model.effective_cone() };
    let mut problems = Vec::new();
    let computed = compare_rays(ctx.table()?, &cone, &p.expected, &mut problems)?;
    if let Some(s) = p.simplicial {
        if s != cone.is_simplicial() {
            problems.push(format!("simplicial is {}, expected {s}", cone.is_simplicial()));
        }
    }
    let summary = format!(
        "{} rays, {} facets, {}simplicial",
        cone.rays().len(),
        cone.facets().len(),
        if cone.is_simplicial() { "" } else { "not " }
    );
    Ok(outcome(true, computed, json!(p.expected), problems, summary))
}

#[derive(Deserialize)]
struct AnticanonicalParams {
    expected: Vec<String>,
}

fn anticanonical(ctx: &Context, def: &Value) -> CheckResult {
    let p: AnticanonicalParams = params(def)?;
    let lattice = ctx.lattice()?;
    let table = ctx.table()?;
    let k = lattice.canonical_class().ok_or("no canonical class: neither stored nor fixed by adjunction")?;
    let minus_k = -k;
    let mut problems = Vec::new();
    for e in &p.expected {
        let v = table.eval(e)?;
        if v != minus_k {
            problems.push(format!("-K = {}, not {e}", table.format(&minus_k)));
        }
    }
    // A stored canonical class must also satisfy the adjunction conditions.
    let conditions = ctx.fixture.surface.adjunction_conditions(lattice).map_err(|e| e.to_string())?;
    for (c, value) in &conditions {
        let got = lattice.pair(k, c).map_err(|e| e.to_string())?;
        if got != *value {
            problems.push(format!("K·({}) = {got}, adjunction requires {value}", table.format(c)));
        }
    }
    let summary = format!("-K = {}", table.format(&minus_k));
    Ok(outcome(true, json!(table.format(&minus_k)), json!(p.expected), problems, summary))
}

#[derive(Deserialize)]
struct EulerParams {
    values: IndexMap<String, i64>,
}

fn euler(ctx: &Context, def: &Value) -> CheckResult {
    let p: EulerParams = params(def)?;
    let lattice = ctx.lattice()?;
    let table = ctx.table()?;
    let mut problems = Vec::new();
    let mut computed = serde_json::Map::new();
    for (e, want) in &p.values {
        let chi = lattice.euler_characteristic(&table.eval(e)?).map_err(|x| format!("{e}: {x}"))?;
        if chi != BigInt::from(*want) {
            problems.push(format!("chi({e}) = {chi}, expected {want}"));
        }
        computed.insert(e.clone(), json!(chi.to_string()));
    }
    let summary = format!("{} values", p.values.len());
    Ok(outcome(true, Value::Object(computed), json!(p.values), problems, summary))
}

#[derive(Deserialize)]
struct RelationDegreeParams {
    expected: String,
}

fn relation_degree(ctx: &Context, def: &Value) -> CheckResult {
    let p: RelationDegreeParams = params(def)?;
    let table = ctx.table()?;
    let ring = ctx.free_ring()?;
    let relation = ctx.relation()?;
    let want = table.eval(&p.expected)?;
    let mut degrees = BTreeSet::new();
    for (m, _) in relation.terms() {
        let e = ring.exponents(m).map_err(|e| e.to_string())?;
        degrees.insert(ring.degree_of_monomial(&e).map_err(|e| e.to_string())?);
    }
    let shown: Vec<String> = degrees.iter().map(|d| table.format(d)).collect();
    let mut problems = Vec::new();
    match degrees.len() {
        0 => problems.push("relation is zero".to_string()),
        1 if degrees.contains(&want) => {}
        1 => problems.push(format!("relation has degree {}, expected {}", shown[0], p.expected)),
        _ => problems.push(format!("relation is not homogeneous: term degrees {}", shown.join(", "))),
    }
    let summary = format!("homogeneous of degree {}", p.expected);
    Ok(outcome(true, json!(shown), json!(p.expected), problems, summary))
}

#[derive(Deserialize)]
struct SectionEntry {
    #[serde(default)]
    monomials: Option<usize>,
    #[serde(default)]
    hilbert: Option<i64>,
    #[serde(default)]
    sections: Option<Vec<String>>,
    #[serde(default)]
    listed: Option<Vec<String>>,
    #[serde(default)]
    note: Option<String>,
}

#[derive(Deserialize)]
struct SectionParams {
    #[serde(default)]
    relation_degree: Option<String>,
    degrees: IndexMap<String, SectionEntry>,
}

/// Exponent vector of a polynomial that must be a single monomial with coefficient 1.
fn single_monomial(ctx: &Context, p: &Polynomial, what: &str) -> Result<LatticeVector, String> {
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if *c == BigRational::from(BigInt::from(1)) => {
            ctx.free_ring()?.exponents(m).map_err(|e| e.to_string())
        }
        _ => Err(format!("{what} is not a monomial")),
    }
}

fn relation_degree_for(ctx: &Context, declared: &Option<String>) -> Result<LatticeVector, String> {
    match declared {
        Some(e) => ctx.table()?.eval(e),
        None => {
            let r = ctx.relation()?;
            ctx.free_ring()?
                .is_homogeneous(r)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| "relation is not homogeneous".to_string())
        }
    }
}

fn section_counts(ctx: &Context, def: &Value) -> CheckResult {
    let p: SectionParams = params(def)?;
    let table = ctx.table()?;
    let free = ctx.free_ring()?;
    let mut problems = Vec::new();
    let mut computed = serde_json::Map::new();
    let mut expected = serde_json::Map::new();
    let mut counts = Vec::new();
    for (name, entry) in &p.degrees {
        let d = table.eval(name)?;
        let monomials = free.monomials_of_degree(&d).map_err(|e| format!("{name}: {e}"))?;
        let mut c = serde_json::Map::new();
        let mut x = serde_json::Map::new();
        c.insert("monomials".into(), json!(monomials.len()));
        if let Some(n) = entry.monomials {
            x.insert("monomials".into(), json!(n));
            if n != monomials.len() {
                problems.push(format!("{name}: {} monomials, expected {n}", monomials.len()));
            }
        }
        if let Some(h) = entry.hilbert {
            let rd = relation_degree_for(ctx, &p.relation_degree)?;
            let got = ctx.ring()?.hilbert_hypersurface(&rd, &d).map_err(|e| format!("{name}: {e}"))?;
            c.insert("hilbert".into(), json!(got));
            x.insert("hilbert".into(), json!(h));
            if got != h {
                problems.push(format!("{name}: Hilbert function {got}, expected {h}"));
            }
        }
        if let Some(list) = &entry.sections {
            let ds = ctx.fixture.bundle.distinguished_sections.as_ref();
            let mut listed = BTreeSet::new();
            for s in list {
                let poly = parse_section(s, table, ds)?;
                let e = single_monomial(ctx, &poly, s)?;
                if !listed.insert(e) {
                    problems.push(format!("{name}: section {s} listed twice"));
                }
            }
            let actual: BTreeSet<LatticeVector> = monomials.iter().cloned().collect();
            for e in listed.difference(&actual) {
                problems.push(format!(
                    "{name}: listed section {} has another degree",
                    free.monomial_name(e).unwrap_or_default()
                ));
            }
            for e in actual.difference(&listed) {
                problems.push(format!("{name}: monomial {} is not listed", free.monomial_name(e).unwrap_or_default()));
            }
            x.insert("sections".into(), json!(list));
        }
        c.insert(
            "basis".into(),
            json!(monomials.iter().map(|e| free.monomial_name(e).unwrap_or_default()).collect::<Vec<_>>()),
        );
        if let Some(l) = &entry.listed {
            x.insert("listed".into(), json!(l));
        }
        if let Some(n) = &entry.note {
            x.insert("note".into(), json!(n));
        }
        counts.push(format!("{name}:{}", monomials.len()));
        computed.insert(name.clone(), Value::Object(c));
        expected.insert(name.clone(), Value::Object(x));
    }
    let summary = format!("monomial counts {}", counts.join(" "));
    Ok(outcome(true, Value::Object(computed), Value::Object(expected), problems, summary))
}

#[derive(Deserialize)]
struct ChainParams {
    chains: Vec<Vec<String>>,
    #[serde(default)]
    relation_degree: Option<String>,
}

fn inclusion_chains(ctx: &Context, def: &Value) -> CheckResult {
    let p: ChainParams = params(def)?;
    let table = ctx.table()?;
    let effective = ctx.model()?.effective_cone();
    let rd = relation_degree_for(ctx, &p.relation_degree)?;
    let ring = ctx.ring()?;
    let mut problems = Vec::new();
    let mut computed = Vec::new();
    for chain in &p.chains {
        let mut dims = Vec::new();
        for (i, name) in chain.iter().enumerate() {
            let d = table.eval(name)?;
            dims.push(ring.hilbert_hypersurface(&rd, &d).map_err(|e| format!("{name}: {e}"))?);
            if i > 0 {
                let prev = &chain[i - 1];
                let diff = &d - &table.eval(prev)?;
                if !effective.contains(&diff, false).map_err(|e| e.to_string())? {
                    problems.push(format!("{name} - {prev} is not effective"));
                }
                if dims[i] < dims[i - 1] {
                    problems.push(format!("dimension drops from {prev} to {name}"));
                }
            }
        }
        computed.push(json!(dims));
    }
    Ok(outcome(true, json!(computed), json!(p.chains), problems, format!("{} chains", p.chains.len())))
}

#[derive(Deserialize)]
struct SubstitutionParams {
    form: String,
    assignment: IndexMap<String, String>,
}

fn substituted(ctx: &Context, p: &SubstitutionParams) -> Result<Polynomial, String> {
    let form = parse_polynomial(&p.form).map_err(|e| format!("form: {e}"))?;
    let table = ctx.table().ok();
    let mut assignment = BTreeMap::new();
    for (v, text) in &p.assignment {
        let image = match (table, ctx.fixture.bundle.distinguished_sections.as_ref()) {
            (Some(t), ds) => parse_section(text, t, ds)?,
            (None, _) => parse_polynomial(text).map_err(|e| format!("{v}: {e}"))?,
        };
        assignment.insert(v.clone(), image);
    }
    form.substitute(&assignment).map_err(|e| e.to_string())
}

/// Splits off the largest monomial dividing every term.
fn monomial_content(p: &Polynomial) -> (Monomial, Polynomial) {
    let mut common: Option<Monomial> = None;
    for (m, _) in p.terms() {
        common = Some(match common {
            None => m.clone(),
            Some(c) => c.into_iter().filter_map(|(v, e)| m.get(&v).map(|&f| (v, e.min(f)))).collect(),
        });
    }
    let common = common.unwrap_or_default();
    let quotient = Polynomial::from_terms(p.terms().map(|(m, c)| {
        let q: Monomial = m.iter().map(|(v, e)| (v.clone(), e - common.get(v).copied().unwrap_or(0))).collect();
        (q, c.clone())
    }));
    (common, quotient)
}

fn monomial_string(m: &Monomial) -> String {
    Polynomial::from_terms([(m.clone(), BigRational::from(BigInt::from(1)))]).to_string()
}

fn ring_order(ctx: &Context) -> Vec<String> {
    ctx.fixture.ring.names()
}

fn relation_derivation(ctx: &Context, def: &Value) -> CheckResult {
    let p: SubstitutionParams = params(def)?;
    let relation = ctx.relation()?;
    let image = substituted(ctx, &p)?;
    let (factor, quotient) = monomial_content(&image);
    let order = ring_order(ctx);
    let mut problems = Vec::new();
    if quotient != *relation {
        problems.push(format!(
            "form reduces to {}, relation is {}",
            quotient.display_in(&order),
            relation.display_in(&order)
        ));
    }
    let computed = json!({ "factor": monomial_string(&factor), "quotient": quotient.display_in(&order) });
    let summary = format!("form = {} · relation", monomial_string(&factor));
    Ok(outcome(true, computed, json!(relation.display_in(&order)), problems, summary))
}

#[derive(Deserialize)]
struct EmbeddedParams {
    ambient: String,
    assignment: IndexMap<String, String>,
    #[serde(default)]
    relation_degree: Option<String>,
    degrees: IndexMap<String, Vec<String>>,
}

fn embedded_sections(ctx: &Context, def: &Value) -> CheckResult {
    let p: EmbeddedParams = params(def)?;
    let table = ctx.table()?;
    let ds = ctx.fixture.bundle.distinguished_sections.as_ref().ok_or("bundle has no distinguished sections")?;
    let free = ctx.free_ring()?;
    let ambient = table.eval(&p.ambient)?;
    let mut problems = Vec::new();
    let mut computed = serde_json::Map::new();
    for (name, forms) in &p.degrees {
        let d = table.eval(name)?;
        let factor_class = &ambient - &d;
        let factor = parse_section(&distinguished_monomial(table, ds, &factor_class)?, table, None)?;
        let (factor_m, _) = monomial_content(&factor);
        let basis: BTreeSet<LatticeVector> =
            free.monomials_of_degree(&d).map_err(|e| e.to_string())?.into_iter().collect();
        let mut images = BTreeSet::new();
        let mut shown = Vec::new();
        for form in forms {
            let sub = SubstitutionParams { form: form.clone(), assignment: p.assignment.clone() };
            let image = substituted(ctx, &sub)?;
            let (content, quotient) = monomial_content(&image);
            let divisible = factor_m.iter().all(|(v, e)| content.get(v).is_some_and(|f| f >= e));
            if !divisible {
                problems.push(format!(
                    "{name}: {form} is not divisible by the distinguished section of {}",
                    table.format(&factor_class)
                ));
                continue;
            }
            let mut m = content.clone();
            for (v, e) in &factor_m {
                let x = m.get_mut(v).expect("divisible");
                *x -= e;
            }
            let section = &Polynomial::from_terms([(m, BigRational::from(BigInt::from(1)))]) * &quotient;
            let Ok(e) = single_monomial(ctx, &section, form) else {
                problems.push(format!("{name}: {form} does not map to a monomial"));
                continue;
            };
            if !basis.contains(&e) {
                problems.push(format!("{name}: {form} maps outside the degree"));
            }
            if !images.insert(e.clone()) {
                problems.push(format!("{name}: {form} repeats a section"));
            }
            shown.push(free.monomial_name(&e).unwrap_or_default());
        }
        if p.relation_degree.is_some() {
            let rd = relation_degree_for(ctx, &p.relation_degree)?;
            let h = ctx.ring()?.hilbert_hypersurface(&rd, &d).map_err(|e| e.to_string())?;
            if h != forms.len() as i64 {
                problems.push(format!("{name}: {} forms for a space of dimension {h}", forms.len()));
            }
        }
        computed.insert(name.clone(), json!(shown));
    }
    let summary = format!("{} degrees embedded into {}", p.degrees.len(), p.ambient);
    Ok(outcome(true, Value::Object(computed), json!(p.degrees), problems, summary))
}

fn parametrization(ctx: &Context, def: &Value) -> CheckResult {
    let p: SubstitutionParams = params(def)?;
    let image = substituted(ctx, &p)?;
    let mut problems = Vec::new();
    if !image.is_zero() {
        problems.push(format!("substitution leaves {image}"));
    }
    Ok(outcome(true, json!(image.to_string()), json!("0"), problems, "substitution vanishes identically".to_string()))
}

fn character_degrees(ctx: &Context) -> CheckResult {
    let ring = &ctx.fixture.ring;
    let chars = &ctx.fixture.characters;
    let mut problems = Vec::new();
    if chars.grading_rank != ring.rank() {
        problems.push(format!("grading rank {} differs from ring rank {}", chars.grading_rank, ring.rank()));
    }
    if chars.columns.len() != ring.variables.len() {
        problems.push(format!("{} characters for {} variables", chars.columns.len(), ring.variables.len()));
    }
    for (c, v) in chars.columns.iter().zip(&ring.variables) {
        if c.name != v.name || c.degree != v.degree {
            problems.push(format!("character {} {} differs from variable {} {}", c.name, c.degree, v.name, v.degree));
        }
    }
    let data = ctx.characters()?;
    if !data.is_surjective() {
        problems.push("degree map is not surjective".to_string());
    }
    let summary = format!("{} columns, surjective onto rank {}", data.columns().len(), data.rank());
    Ok(outcome(true, json!(data.columns().len()), json!(ring.variables.len()), problems, summary))
}

#[derive(Deserialize)]
struct SkeletonParams {
    expected: IndexMap<String, LatticeVector>,
}

fn one_skeleton(ctx: &Context, def: &Value) -> CheckResult {
    let p: SkeletonParams = params(def)?;
    let data = ctx.characters()?;
    let skeleton = data.one_skeleton().map_err(|e| e.to_string())?;
    let names = data.names();
    let mut problems = skeleton.violations(names);
    let width = p.expected.values().next().map_or(0, LatticeVector::len);
    let mut columns = Vec::new();
    for n in names {
        match p.expected.get(n) {
            Some(v) if v.len() == width => columns.push(v.clone()),
            Some(_) => problems.push(format!("vector for {n} has the wrong length")),
            None => problems.push(format!("no expected vector for {n}")),
        }
    }
    if p.expected.len() != names.len() {
        problems.push(format!("{} expected vectors for {} columns", p.expected.len(), names.len()));
    }
    let mut rows = Vec::new();
    if problems.is_empty() {
        for k in 0..width {
            rows.push(LatticeVector::new(columns.iter().map(|v| v.get(k).clone()).collect()));
        }
        for (k, row) in rows.iter().enumerate() {
            let mut sum = LatticeVector::zeros(data.rank());
            for (c, x) in data.columns().iter().zip(row.entries()) {
                sum = &sum + &c.scale(x);
            }
            if !sum.is_zero() {
                problems.push(format!("coordinate {k} is not a relation among the characters"));
            }
        }
        if !same_lattice_snf(&rows, &skeleton.relations, names.len()) {
            problems.push("expected coordinate rows span a different lattice than the relations".to_string());
        }
    }
    let computed = json!({
        "relations": skeleton.relations.iter().map(ints).collect::<Vec<_>>(),
        "vectors": names.iter().zip(&skeleton.vectors).map(|(n, v)| (n.clone(), ints(v))).collect::<serde_json::Map<_, _>>(),
    });
    let expected = json!(p.expected.iter().map(|(n, v)| (n.clone(), ints(v))).collect::<serde_json::Map<_, _>>());
    let summary = format!("relation lattice of rank {} matches", skeleton.relations.len());
    Ok(outcome(true, computed, expected, problems, summary))
}

fn moving_cone(ctx: &Context, def: &Value) -> CheckResult {
    let p: ConeParams = params(def)?;
    let cone = ctx.characters()?.moving_cone();
    let mut problems = Vec::new();
    let computed = compare_rays(ctx.table()?, &cone, &p.expected, &mut problems)?;
    if !cone.is_full_dimensional() {
        problems.push("moving cone has empty interior".to_string());
    }
    let summary = format!("{} rays, full-dimensional", cone.rays().len());
    Ok(outcome(true, computed, json!(p.expected), problems, summary))
}

#[derive(Deserialize)]
struct ProjectiveParams {
    expected: bool,
}

fn projective(ctx: &Context, def: &Value) -> CheckResult {
    let p: ProjectiveParams = params(def)?;
    let got = ctx.characters()?.is_projective();
    let problems =
        if got == p.expected { Vec::new() } else { vec![format!("projective is {got}, expected {}", p.expected)] };
    Ok(outcome(true, json!(got), json!(p.expected), problems, "0 is not in the convex hull of the characters".into()))
}

#[derive(Deserialize)]
struct ClassSpecParam {
    expected: String,
}

fn toric_anticanonical(ctx: &Context, def: &Value) -> CheckResult {
    let p: ClassSpecParam = params(def)?;
    let table = ctx.table()?;
    let got = ctx.characters()?.anticanonical();
    let want = table.eval(&p.expected)?;
    let problems = if got == want { Vec::new() } else { vec![format!("sum of characters is {}", table.format(&got))] };
    Ok(outcome(true, json!(table.format(&got)), json!(p.expected), problems, format!("-K_Y = {}", p.expected)))
}

#[derive(Deserialize)]
struct FanParams {
    nu: String,
    #[serde(default)]
    full_skeleton: bool,
    /// A boundary class to perturb towards the interior of the moving cone.
    #[serde(default)]
    perturb_from: Option<String>,
    #[serde(default = "default_perturbation")]
    perturbation_scale: u64,
}

fn default_perturbation() -> u64 {
    1000
}

fn model_fan(ctx: &Context, def: &Value, opts: &VerifyOptions) -> CheckResult {
    let p: FanParams = params(def)?;
    let data = ctx.characters()?;
    let table = ctx.table()?;
    let nu = table.eval(&p.nu)?;
    let skeleton = data.one_skeleton().map_err(|e| e.to_string())?;
    let mut all: Vec<LatticeVector> = skeleton.vectors.iter().map(LatticeVector::primitive).collect();
    all.sort();
    all.dedup();
    let n = data.columns().len() - data.rank();
    let mut problems = Vec::new();
    let mut notes = Vec::new();
    let mut check = |label: &str,
                     model: &crate::toric::PolarizedModel,
                     need_simplicial: bool,
                     problems: &mut Vec<String>| {
        if model.degenerate() {
            if need_simplicial {
                problems.push(format!("{label}: polarization lies on a wall"));
            } else {
                notes.push(format!("{label} lies on a wall"));
            }
        }
        if model.polytope_dimension != n {
            problems.push(format!("{label}: polytope has dimension {}, expected {n}", model.polytope_dimension));
        }
        if p.full_skeleton && model.fan_rays != all {
            problems.push(format!("{label}: fan has {} rays, one-skeleton has {}", model.fan_rays.len(), all.len()));
        }
    };
    let model = data.model_fan(&nu, None, opts.multiplier_cap).map_err(|e| e.to_string())?;
    check(&p.nu, &model, false, &mut problems);
    let mut computed = json!({
        "multiplier": model.multiplier.to_string(),
        "vertices": model.vertices.len(),
        "polytope_dimension": model.polytope_dimension,
        "fan_rays": model.fan_rays.iter().map(ints).collect::<Vec<_>>(),
        "simplicial": model.simplicial,
    });
    if let Some(from) = &p.perturb_from {
        let nu0 = table.eval(from)?;
        let perturbed =
            data.perturbed_model(&nu0, p.perturbation_scale, opts.multiplier_cap).map_err(|e| e.to_string())?;
        check(&format!("perturbed {from}"), &perturbed, true, &mut problems);
        computed["perturbed"] = json!({
            "nu": table.format(&perturbed.nu),
            "multiplier": perturbed.multiplier.to_string(),
            "vertices": perturbed.vertices.len(),
            "simplicial": perturbed.simplicial,
        });
    }
    let mut summary = format!(
        "{} vertices, {} fan rays, multiplier {}",
        model.vertices.len(),
        model.fan_rays.len(),
        model.multiplier
    );
    for n in notes {
        summary.push_str(&format!("; {n}"));
    }
    Ok(outcome(true, computed, json!({ "full_skeleton": p.full_skeleton }), problems, summary))
}

#[derive(Deserialize)]
struct DecompositionCase {
    class: String,
    #[serde(default)]
    moving: Option<String>,
    #[serde(default)]
    fixed: Option<IndexMap<String, i64>>,
}

#[derive(Deserialize)]
struct DecompositionParams {
    cases: Vec<DecompositionCase>,
}

fn decomposition(ctx: &Context, def: &Value) -> CheckResult {
    let p: DecompositionParams = params(def)?;
    let model = ctx.model()?;
    let table = ctx.table()?;
    let k = model.negative_curves.len();
    let orders: Vec<Vec<usize>> = (0..k.max(1))
        .map(|s| (0..k).map(|i| (i + s) % k.max(1)).collect())
        .chain(std::iter::once((0..k).rev().collect()))
        .collect();
    let mut problems = Vec::new();
    let mut computed = Vec::new();
    for case in &p.cases {
        let d = table.eval(&case.class)?;
        let dec = model.decompose_fixed_moving(&d).map_err(|e| format!("{}: {e}", case.class))?;
        let mut fixed_sum = LatticeVector::zeros(d.len());
        for (name, mult) in &dec.fixed {
            fixed_sum = &fixed_sum + &model.effective[name].scale(mult);
        }
        if &dec.moving + &fixed_sum != d {
            problems.push(format!("{}: moving and fixed parts do not add up", case.class));
        }
        if !model.is_nef(&dec.moving).map_err(|e| e.to_string())? {
            problems.push(format!("{}: moving part is not nef", case.class));
        }
        for order in &orders {
            let other = model.decompose_with_order(&d, order, crate::surface::DECOMPOSITION_CAP);
            if other.as_ref().ok() != Some(&dec) {
                problems.push(format!("{}: result depends on the scan order", case.class));
                break;
            }
        }
        if let Some(m) = &case.moving {
            if table.eval(m)? != dec.moving {
                problems.push(format!("{}: moving part {}, expected {m}", case.class, table.format(&dec.moving)));
            }
        }
        if let Some(f) = &case.fixed {
            let want: IndexMap<String, BigInt> =
                f.iter().filter(|(_, v)| **v != 0).map(|(n, v)| (n.clone(), BigInt::from(*v))).collect();
            let got: BTreeMap<_, _> = dec.fixed.iter().collect();
            if got != want.iter().collect::<BTreeMap<_, _>>() {
                problems.push(format!("{}: fixed part differs", case.class));
            }
        }
        let fixed: serde_json::Map<String, Value> =
            dec.fixed.iter().map(|(n, m)| (n.clone(), json!(m.to_string()))).collect();
        computed.push(json!({ "class": case.class, "moving": table.format(&dec.moving), "fixed": fixed }));
    }
    Ok(outcome(true, json!(computed), json!(p.cases.len()), problems, format!("{} cases", p.cases.len())))
}

#[derive(Deserialize)]
struct CertificateRow {
    class: String,
    expected: Vec<String>,
}

#[derive(Deserialize)]
struct CertificateParams {
    generators: Vec<String>,
    rows: Vec<CertificateRow>,
}

fn certificates(ctx: &Context, def: &Value) -> CheckResult {
    let p: CertificateParams = params(def)?;
    let table = ctx.table()?;
    let rank = table.rank();
    let gens = p.generators.iter().map(|g| table.eval(g)).collect::<Result<Vec<_>, _>>()?;
    let over = ClassTable::new(p.generators.clone());
    let mut problems = Vec::new();
    let mut computed = Vec::new();
    for row in &p.rows {
        let v = table.eval(&row.class)?;
        let mut alternatives = Vec::new();
        for e in &row.expected {
            let coeffs = over.eval(e)?;
            if coeffs.entries().iter().any(Signed::is_negative) {
                problems.push(format!("{}: {e} has a negative coefficient", row.class));
            }
            let mut sum = LatticeVector::zeros(rank);
            for (g, c) in gens.iter().zip(coeffs.entries()) {
                sum = &sum + &g.scale(c);
            }
            if sum != v {
                problems.push(format!("{} != {e}", row.class));
            }
            alternatives.push(coeffs.to_rational());
        }
        match certify(rank, &gens, &v).map_err(|e| e.to_string())? {
            Certificate::Member(c) => {
                if !alternatives.contains(&c) {
                    problems.push(format!(
                        "{}: certificate {} is not among the expected forms",
                        row.class,
                        combination(&p.generators, &c)
                    ));
                }
                computed.push(json!({ "class": row.class, "certificate": combination(&p.generators, &c) }));
            }
            Certificate::Separated(n) => {
                problems.push(format!("{}: not in the cone, separated by {}", row.class, n));
                computed.push(json!({ "class": row.class, "separated_by": ints(&n) }));
            }
        }
    }
    let summary = format!("{} membership certificates", p.rows.len());
    Ok(outcome(true, json!(computed), json!(p.rows.len()), problems, summary))
}

fn combination(names: &[String], coeffs: &[BigRational]) -> String {
    if coeffs.iter().all(BigRational::is_integer) {
        let ints: Vec<BigInt> = coeffs.iter().map(BigRational::to_integer).collect();
        return format_combination(names, &ints);
    }
    let parts: Vec<String> = names
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| format!("{}*{n}", rational_to_string(c)))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[derive(Deserialize)]
struct SweepParams {
    generators: Vec<String>,
    #[serde(default)]
    mode: SweepMode,
    bound: u32,
    #[serde(default)]
    extra: Vec<String>,
    relation_degree: Option<String>,
}

fn hilbert_sweep(ctx: &Context, def: &Value, opts: &VerifyOptions) -> CheckResult {
    let p: SweepParams = params(def)?;
    let table = ctx.table()?;
    let model = ctx.model()?;
    let bound = opts.sweep_bound.unwrap_or(p.bound);
    let gens = p.generators.iter().map(|g| table.eval(g)).collect::<Result<Vec<_>, _>>()?;
    let mut problems = Vec::new();
    for (g, name) in gens.iter().zip(&p.generators) {
        if !model.is_nef(g).map_err(|e| e.to_string())? {
            problems.push(format!("generator {name} is not nef"));
        }
    }
    let mut degrees = sweep_degrees(&gens, p.mode, bound);
    for e in &p.extra {
        degrees.insert(table.eval(e)?);
    }
    let degrees: Vec<LatticeVector> = degrees.into_iter().collect();
    let rd = relation_degree_for(ctx, &p.relation_degree)?;
    let result = sweep(ctx.ring()?, ctx.lattice()?, &rd, &degrees).map_err(|e| e.to_string())?;
    for m in result.mismatches.iter().take(10) {
        problems.push(format!("at {}: Hilbert function {}, chi {}", table.format(&m.degree), m.hilbert, m.chi));
    }
    if result.mismatches.len() > 10 {
        problems.push(format!("{} mismatches in total", result.mismatches.len()));
    }
    let computed = json!({
        "degrees": result.checked,
        "mismatches": result.mismatches.len(),
        "largest_chi": result.largest_chi.to_string(),
    });
    let expected = json!({ "bound": bound, "mode": p.mode, "mismatches": 0 });
    let summary = format!("{} degrees, Hilbert function equals chi throughout", result.checked);
    Ok(outcome(true, computed, expected, problems, summary))
}
