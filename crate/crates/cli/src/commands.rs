//! Dispatch: each command computes a value and renders it as text or JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Result};
use coxring::cone::{certify, Certificate, Cone};
use coxring::linalg::serde_int::rational_to_string;
use coxring::linalg::LatticeVector;
use coxring::pipeline::{verify_d4, verify_e6, FixtureBundle, VerificationReport, VerifyOptions};
use coxring::ring::{parse_polynomial, Polynomial};
use coxring::toric::DEFAULT_MULTIPLIER_CAP;
use num_bigint::BigInt;
use serde::Serialize;

use crate::args::{Cli, Command, ConeCommand, Format, RingCommand, SurfaceCommand, ToricCommand, VerifyCommand};
use crate::input;
use crate::output::*;

/// What to print and whether the exit status is success.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub success: bool,
}

fn emit<T: Serialize>(format: Format, doc: &T, text: impl FnOnce() -> String) -> Result<Output> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(doc)? + "\n",
        Format::Text => text(),
    };
    Ok(Output { text, success: true })
}

fn row(v: &LatticeVector) -> String {
    v.entries().iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: &Cli) -> Result<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Cone(c) => cone(f, c),
        Command::Surface(c) => surface(f, c),
        Command::Ring(c) => ring(f, c),
        Command::Toric(c) => toric(f, c),
        Command::Verify(c) => verify(f, c),
    }
}

fn cone(f: Format, cmd: &ConeCommand) -> Result<Output> {
    match cmd {
        ConeCommand::Dual(input) => {
            let (c, _) = input::cone(input)?;
            let d = c.dual();
            emit(f, &d, || d.to_string())
        }
        ConeCommand::Intersect { rank, rays, cone } => {
            let mut cones = Vec::new();
            for r in rays {
                cones.push(input::cone_from_rays(*rank, r)?.0);
            }
            for p in cone {
                cones.push(input::read_cone(p)?);
            }
            if cones.is_empty() {
                bail!("give at least one cone with --rays or --cone");
            }
            let c = Cone::intersect(&cones)?;
            emit(f, &c, || c.to_string())
        }
        ConeCommand::Contains { input, vector, strict } => {
            let (c, _) = input::cone(input)?;
            let v = input::vector(vector)?;
            let contains = c.contains(&v, *strict)?;
            let doc = ContainsDocument { vector: v, strict: *strict, contains };
            emit(f, &doc, || format!("{contains}\n"))
        }
        ConeCommand::Certify { input, vector } => {
            let (c, gens) = input::cone(input)?;
            let v = input::vector(vector)?;
            let doc = match certify(c.rank(), &gens, &v)? {
                Certificate::Member(coeffs) => CertificateDocument::Member {
                    generators: gens,
                    coefficients: coeffs.iter().map(rational_to_string).collect(),
                },
                Certificate::Separated(u) => CertificateDocument::Separated { normal: u },
            };
            emit(f, &doc, || match &doc {
                CertificateDocument::Member { generators, coefficients } => {
                    let mut out = String::from("member\n");
                    for (g, q) in generators.iter().zip(coefficients) {
                        if q != "0" {
                            let _ = writeln!(out, "  {q} * {g}");
                        }
                    }
                    out
                }
                CertificateDocument::Separated { normal } => {
                    format!("separated by {normal}: {} < 0\n", normal.dot(&v))
                }
            })
        }
    }
}

fn surface(f: Format, cmd: &SurfaceCommand) -> Result<Output> {
    match cmd {
        SurfaceCommand::Nef { fixture } => {
            let (doc, table) = input::surface(fixture)?;
            let nef = doc.model()?.nef_cone();
            emit(f, &nef, || {
                let mut out = nef.to_string();
                out.push_str("rays in the basis:\n");
                for r in nef.rays() {
                    let _ = writeln!(out, "  {}", table.format(r));
                }
                out
            })
        }
        SurfaceCommand::Chi { fixture, class } => {
            let (doc, table) = input::surface(fixture)?;
            let d = input::class(class, table.rank(), Some(&table))?;
            let chi = doc.lattice()?.euler_characteristic(&d)?;
            let out = ChiDocument { class: d, chi: chi.to_string() };
            emit(f, &out, || format!("{chi}\n"))
        }
        SurfaceCommand::Anticanonical { fixture } => {
            let (doc, table) = input::surface(fixture)?;
            let lattice = doc.lattice()?;
            let k = lattice.canonical_class().ok_or_else(|| anyhow!("no canonical class"))?;
            let anti = -k;
            let out = ClassDocument { expression: table.format(&anti), class: anti };
            emit(f, &out, || format!("{}  {}\n", out.class, out.expression))
        }
        SurfaceCommand::Decompose { fixture, class } => {
            let (doc, table) = input::surface(fixture)?;
            let d = input::class(class, table.rank(), Some(&table))?;
            let dec = doc.model()?.decompose_fixed_moving(&d)?;
            let out = DecompositionDocument {
                class: d,
                moving: ClassDocument { expression: table.format(&dec.moving), class: dec.moving.clone() },
                fixed: dec
                    .fixed
                    .iter()
                    .map(|(c, k)| FixedPart { curve: c.clone(), multiplicity: k.to_string() })
                    .collect(),
            };
            emit(f, &out, || {
                let fixed: Vec<String> = out
                    .fixed
                    .iter()
                    .map(|p| {
                        if p.multiplicity == "1" {
                            p.curve.clone()
                        } else {
                            format!("{}*{}", p.multiplicity, p.curve)
                        }
                    })
                    .collect();
                let fixed = if fixed.is_empty() { "0".to_string() } else { fixed.join(" + ") };
                format!("moving: {}  {}\nfixed: {fixed}\n", out.moving.class, out.moving.expression)
            })
        }
    }
}

fn ring(f: Format, cmd: &RingCommand) -> Result<Output> {
    match cmd {
        RingCommand::Monomials { fixture, degree } => {
            let (doc, table) = input::ring(fixture)?;
            let r = doc.free_ring()?;
            let d = input::class(degree, doc.rank(), table.as_ref())?;
            let rows = r
                .monomials_of_degree(&d)?
                .into_iter()
                .map(|e| Ok(MonomialRow { monomial: r.monomial_name(&e)?, exponents: e }))
                .collect::<Result<Vec<_>>>()?;
            let out = MonomialsDocument { degree: d, variables: r.names().to_vec(), monomials: rows };
            emit(f, &out, || {
                let mut s = format!("{} monomials of degree {}\n", out.monomials.len(), out.degree);
                for m in &out.monomials {
                    let _ = writeln!(s, "  {}  {}", row(&m.exponents), m.monomial);
                }
                s
            })
        }
        RingCommand::Hilbert { fixture, degree } => {
            let (doc, table) = input::ring(fixture)?;
            let r = doc.ring()?;
            let d = input::class(degree, doc.rank(), table.as_ref())?;
            let [relation] = r.relations() else {
                bail!("hilbert needs exactly one relation, the fixture has {}", r.relations().len());
            };
            let rd = r.is_homogeneous(relation)?.ok_or_else(|| anyhow!("the relation is not homogeneous"))?;
            let dim = r.hilbert_hypersurface(&rd, &d)?;
            let out = HilbertDocument { degree: d, relation_degree: rd, dimension: dim };
            emit(f, &out, || format!("{dim}\n"))
        }
        RingCommand::Homogeneous { fixture, poly } => {
            let (doc, _) = input::ring(fixture)?;
            let r = doc.free_ring()?;
            let p = parse_polynomial(poly)?;
            let degree = r.is_homogeneous(&p)?;
            let out = HomogeneousDocument { polynomial: p, degree };
            emit(f, &out, || match &out.degree {
                Some(d) => format!("{d}\n"),
                None => "not homogeneous\n".to_string(),
            })
        }
        RingCommand::Substitute { poly, assign } => {
            let p = parse_polynomial(poly)?;
            let mut map: BTreeMap<String, Polynomial> =
                p.variables().into_iter().map(|v| (v.clone(), Polynomial::var(&v))).collect();
            for a in assign {
                let (name, q) = input::assignment(a)?;
                map.insert(name, q);
            }
            let result = p.substitute(&map)?;
            let out = SubstituteDocument { zero: result.is_zero(), polynomial: p, result };
            emit(f, &out, || format!("{}\n", out.result))
        }
    }
}

fn toric(f: Format, cmd: &ToricCommand) -> Result<Output> {
    match cmd {
        ToricCommand::Skeleton { fixture } => {
            let data = input::characters(fixture)?.0.data()?;
            let sk = data.one_skeleton()?;
            let out = SkeletonDocument {
                relations: sk.relations.clone(),
                vectors: data
                    .names()
                    .iter()
                    .zip(&sk.vectors)
                    .map(|(n, v)| NamedVector { name: n.clone(), vector: v.clone() })
                    .collect(),
            };
            emit(f, &out, || {
                let width = out.vectors.iter().map(|v| v.name.len()).max().unwrap_or(0);
                let mut s = String::new();
                for v in &out.vectors {
                    let _ = writeln!(s, "{:width$}  {}", v.name, row(&v.vector));
                }
                s
            })
        }
        ToricCommand::MovingCone { fixture } => {
            let c = input::characters(fixture)?.0.data()?.moving_cone();
            emit(f, &c, || c.to_string())
        }
        ToricCommand::Projective { fixture } => {
            let projective = input::characters(fixture)?.0.data()?.is_projective();
            emit(f, &ProjectiveDocument { projective }, || format!("{projective}\n"))
        }
        ToricCommand::Fan { fixture, nu, multiplier } => {
            let (doc, table) = input::characters(fixture)?;
            let data = doc.data()?;
            let nu = input::class(nu, data.rank(), table.as_ref())?;
            let m = data.model_fan(&nu, multiplier.map(BigInt::from), DEFAULT_MULTIPLIER_CAP)?;
            let out = FanDocument {
                nu: m.nu.clone(),
                multiplier: m.multiplier.to_string(),
                polytope_dimension: m.polytope_dimension,
                vertices: m.vertices.iter().map(|v| v.iter().map(rational_to_string).collect()).collect(),
                facets: m.facet_indices.iter().map(|&i| data.names()[i].clone()).collect(),
                fan_rays: m.fan_rays.clone(),
                simplicial: m.simplicial,
            };
            emit(f, &out, || {
                let mut s = format!(
                    "nu {}, multiplier {}, polytope dimension {}, {} vertices, {}\n",
                    out.nu,
                    out.multiplier,
                    out.polytope_dimension,
                    out.vertices.len(),
                    if out.simplicial { "simplicial" } else { "not simplicial (nu lies on a wall)" }
                );
                let _ = writeln!(s, "facets: {}", out.facets.join(" "));
                let _ = writeln!(s, "fan rays ({}):", out.fan_rays.len());
                for r in &out.fan_rays {
                    let _ = writeln!(s, "  {}", row(r));
                }
                s
            })
        }
    }
}

fn verify(f: Format, cmd: &VerifyCommand) -> Result<Output> {
    let (args, shipped, check): (_, fn() -> FixtureBundle, fn(&FixtureBundle, &VerifyOptions) -> VerificationReport) =
        match cmd {
            VerifyCommand::E6(a) => (a, FixtureBundle::e6, verify_e6),
            VerifyCommand::D4(a) => (a, FixtureBundle::d4, verify_d4),
        };
    let fixture = match &args.fixture {
        Some(p) => FixtureBundle::load(p)?,
        None => shipped(),
    };
    let opts = VerifyOptions { sweep_bound: args.sweep_bound, ..VerifyOptions::default() };
    let report = check(&fixture, &opts);
    let text = match args.report.unwrap_or(f) {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    Ok(Output { text, success: report.passed })
}
