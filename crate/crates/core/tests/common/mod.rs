//! Fixture corruptions shared by the pipeline tests and the acceptance suite.
#![allow(dead_code)]

pub mod oracle;

use num_bigint::BigInt;
use num_rational::BigRational;
use regex::Regex;

use coxring::linalg::LatticeVector;
use coxring::pipeline::{ClassParams, FixtureBundle};
use coxring::ring::{Monomial, Polynomial};

/// A single-entry change to a fixture.
#[derive(Clone, Debug)]
pub enum Corruption {
    Gram { row: usize, col: usize, delta: i64 },
    ClassEntry { class: String, index: usize, delta: i64 },
    RelationCoeff { term: usize, delta: i64 },
    RelationExponent { term: usize, var: usize, delta: i64 },
    Parametrization { var: String, term: usize, change: TermChange },
}

#[derive(Clone, Debug)]
pub enum TermChange {
    Coeff(i64),
    Exponent(String, i64),
}

fn bump(v: &LatticeVector, i: usize, delta: i64) -> LatticeVector {
    let mut e = v.entries().to_vec();
    e[i] += delta;
    LatticeVector::new(e)
}

fn parametrization(f: &FixtureBundle) -> Option<&serde_json::Map<String, serde_json::Value>> {
    f.bundle.identities.get("parametrization")?.get("assignment")?.as_object()
}

fn poly(s: &str) -> Polynomial {
    s.parse().expect("fixture polynomial parses")
}

/// Every coordinate-level corruption of the gram matrix, the vector classes,
/// the relation and the parametrization, each shifted by `delta`.
pub fn all_corruptions(f: &FixtureBundle, delta: i64) -> Vec<Corruption> {
    let mut out = Vec::new();
    let n = f.surface.gram.len();
    for row in 0..n {
        for col in 0..n {
            out.push(Corruption::Gram { row, col, delta });
        }
    }
    for (class, def) in &f.bundle.classes {
        if let ClassParams::Vector(v) = def {
            for index in 0..v.len() {
                out.push(Corruption::ClassEntry { class: class.clone(), index, delta });
            }
        }
    }
    for (t, term) in f.ring.relations[0].terms.iter().enumerate() {
        out.push(Corruption::RelationCoeff { term: t, delta });
        for (var, &e) in term.exponents.iter().enumerate() {
            if e as i64 + delta >= 0 {
                out.push(Corruption::RelationExponent { term: t, var, delta });
            }
        }
    }
    if let Some(a) = parametrization(f) {
        for (var, text) in a {
            let p = poly(text.as_str().expect("string"));
            let vars: Vec<String> = p.variables().into_iter().collect();
            for (t, (m, _)) in p.terms().enumerate() {
                out.push(Corruption::Parametrization { var: var.clone(), term: t, change: TermChange::Coeff(delta) });
                for v in &vars {
                    if m.get(v).copied().unwrap_or(0) as i64 + delta >= 0 {
                        out.push(Corruption::Parametrization {
                            var: var.clone(),
                            term: t,
                            change: TermChange::Exponent(v.clone(), delta),
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn apply(f: &FixtureBundle, c: &Corruption) -> FixtureBundle {
    let mut g = f.clone();
    match c {
        Corruption::Gram { row, col, delta } => {
            g.surface.gram[*row] = bump(&g.surface.gram[*row], *col, *delta);
        }
        Corruption::ClassEntry { class, index, delta } => {
            let ClassParams::Vector(v) = &g.bundle.classes[class] else { panic!("vector class") };
            let v = bump(v, *index, *delta);
            g.bundle.classes.insert(class.clone(), ClassParams::Vector(v));
        }
        Corruption::RelationCoeff { term, delta } => {
            g.ring.relations[0].terms[*term].coeff += BigRational::from(BigInt::from(*delta));
        }
        Corruption::RelationExponent { term, var, delta } => {
            let e = &mut g.ring.relations[0].terms[*term].exponents[*var];
            *e = (*e as i64 + delta) as u32;
        }
        Corruption::Parametrization { var, term, change } => {
            let def = g.bundle.identities.get_mut("parametrization").expect("parametrization");
            let text = def["assignment"][var].as_str().expect("string").to_string();
            let p = poly(&text);
            let terms: Vec<(Monomial, BigRational)> = p
                .terms()
                .enumerate()
                .map(|(i, (m, c))| {
                    let (mut m, mut c) = (m.clone(), c.clone());
                    if i == *term {
                        match change {
                            TermChange::Coeff(d) => c += BigRational::from(BigInt::from(*d)),
                            TermChange::Exponent(v, d) => {
                                let e = m.entry(v.clone()).or_insert(0);
                                *e = (*e as i64 + d) as u32;
                            }
                        }
                    }
                    (m, c)
                })
                .collect();
            def["assignment"][var] = serde_json::Value::String(Polynomial::from_terms(terms).to_string());
        }
    }
    g
}

/// Swaps the roles of indices 1 and 2 in every name of a D4 fixture.
pub fn swap_indices_1_2(f: &FixtureBundle) -> FixtureBundle {
    let re = Regex::new(r"\b(E|m|ell|eta|mu|lambda|u|x)([12])\b").unwrap();
    let swap = |text: String| -> String {
        re.replace_all(&text, |c: &regex::Captures| {
            let other = if &c[2] == "1" { "2" } else { "1" };
            format!("{}{}", &c[1], other)
        })
        .into_owned()
    };
    let j = |v: String| swap(v);
    FixtureBundle::from_texts(
        &j(serde_json::to_string(&f.bundle).unwrap()),
        &j(serde_json::to_string(&f.surface).unwrap()),
        &j(serde_json::to_string(&f.ring).unwrap()),
        &j(serde_json::to_string(&f.characters).unwrap()),
    )
    .expect("permuted fixture parses")
}
