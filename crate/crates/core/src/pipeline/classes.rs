//! Divisor classes written as integer linear expressions such as `2*L - E1 - 2*m1`,
//! and sections written with distinguished monomials such as `xi^(A6-2*A1)*tau1^2`.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::fixtures::{ClassParams, DistinguishedSections, FixtureBundle};
use crate::linalg::LatticeVector;
use crate::ring::{parse_polynomial, Polynomial};

/// Named classes of a surface: basis labels, effective generators, and bundle classes.
#[derive(Clone, Debug)]
pub struct ClassTable {
    labels: Vec<String>,
    named: IndexMap<String, LatticeVector>,
}

impl ClassTable {
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        let named = labels.iter().enumerate().map(|(i, l)| (l.clone(), LatticeVector::unit(n, i))).collect();
        ClassTable { labels, named }
    }

    /// All names a bundle makes available, in definition order.
    pub fn for_bundle(f: &FixtureBundle) -> Result<ClassTable, String> {
        let mut t = ClassTable::new(f.surface.basis_labels.clone());
        for (name, v) in &f.surface.effective_generators {
            t.insert(name, v.clone())?;
        }
        for (name, def) in &f.bundle.classes {
            let v = match def {
                ClassParams::Vector(v) => v.clone(),
                ClassParams::Expression(e) => t.eval(e)?,
            };
            t.insert(name, v)?;
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn insert(&mut self, name: &str, v: LatticeVector) -> Result<(), String> {
        if v.len() != self.rank() {
            return Err(format!("class `{name}` has length {}, lattice rank is {}", v.len(), self.rank()));
        }
        if let Some(old) = self.named.get(name) {
            if *old != v {
                return Err(format!("class `{name}` is defined twice with different values"));
            }
        }
        self.named.insert(name.to_string(), v);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&LatticeVector> {
        self.named.get(name)
    }

    /// Evaluates an integer linear combination of named classes. `0` is the zero class.
    pub fn eval(&self, expr: &str) -> Result<LatticeVector, String> {
        let p = parse_polynomial(expr).map_err(|e| format!("class `{expr}`: {e}"))?;
        let mut out = LatticeVector::zeros(self.rank());
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return Err(format!("class `{expr}` has a non-integer coefficient"));
            }
            let mut vars = m.iter();
            let (Some((name, 1)), None) = (vars.next(), vars.next()) else {
                return Err(format!("class `{expr}` is not linear"));
            };
            let v = self.named.get(name).ok_or_else(|| format!("unknown class `{name}` in `{expr}`"))?;
            out = &out + &v.scale(c.numer());
        }
        Ok(out)
    }

    /// Writes `v` in the basis, e.g. `3*L - E1 - 2*m1`.
    pub fn format(&self, v: &LatticeVector) -> String {
        format_combination(&self.labels, v.entries())
    }
}

/// `Σ c_i name_i` with unit coefficients elided and zero terms omitted.
pub fn format_combination(names: &[String], coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let term = if mag == BigInt::from(1) { name.clone() } else { format!("{mag}*{name}") };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The distinguished monomial `Π ξ_b^{d_b}` of an effective class `d` in basis coordinates.
pub fn distinguished_monomial(
    table: &ClassTable,
    sections: &DistinguishedSections,
    d: &LatticeVector,
) -> Result<String, String> {
    let mut parts = Vec::new();
    for (label, e) in table.labels.iter().zip(d.entries()) {
        if e.is_negative() {
            return Err(format!("class {} has no distinguished section", table.format(d)));
        }
        if e.is_zero() {
            continue;
        }
        let var = sections.variables.get(label).ok_or_else(|| format!("no distinguished section for `{label}`"))?;
        parts.push(if *e == BigInt::from(1) { var.clone() } else { format!("{var}^{e}") });
    }
    Ok(if parts.is_empty() { "1".to_string() } else { parts.join("*") })
}

/// Parses a polynomial in which `SYMBOL^(class)` stands for a distinguished monomial.
pub fn parse_section(
    text: &str,
    table: &ClassTable,
    sections: Option<&DistinguishedSections>,
) -> Result<Polynomial, String> {
    let mut expanded = String::new();
    let mut rest = text;
    if let Some(ds) = sections {
        let marker = format!("{}^(", ds.symbol);
        while let Some(at) = find_marker(rest, &marker) {
            expanded.push_str(&rest[..at]);
            let after = &rest[at + marker.len()..];
            let close = matching_paren(after).ok_or_else(|| format!("unbalanced parenthesis in `{text}`"))?;
            let class = table.eval(&after[..close])?;
            expanded.push('(');
            expanded.push_str(&distinguished_monomial(table, ds, &class)?);
            expanded.push(')');
            rest = &after[close + 1..];
        }
    }
    expanded.push_str(rest);
    parse_polynomial(&expanded).map_err(|e| format!("`{text}`: {e}"))
}

/// Position of `marker` not preceded by an identifier character.
fn find_marker(s: &str, marker: &str) -> Option<usize> {
    let mut from = 0;
    while let Some(i) = s[from..].find(marker) {
        let at = from + i;
        let prev = s[..at].chars().next_back();
        if !prev.is_some_and(|c| c.is_alphanumeric() || c == '_') {
            return Some(at);
        }
        from = at + marker.len();
    }
    None
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}
