//! Sparse multivariate polynomials over the rationals with named variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RingError;
use crate::linalg::serde_int::rational_to_string;

/// Variable name to positive exponent.
pub type Monomial = BTreeMap<String, u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

fn monomial_product(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (v, e) in b {
        *out.entry(v.clone()).or_insert(0) += e;
    }
    out
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::from_terms([(Monomial::new(), c)])
    }

    pub fn var(name: &str) -> Self {
        Polynomial::from_terms([(Monomial::from([(name.to_string(), 1)]), BigRational::one())])
    }

    /// Collects terms, merging equal monomials and dropping zero coefficients and
    /// zero exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (mut m, c) in terms {
            m.retain(|_, e| *e > 0);
            *out.entry(m).or_insert_with(BigRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Replaces every variable by its assigned polynomial and expands.
    pub fn substitute(&self, assignment: &BTreeMap<String, Polynomial>) -> Result<Polynomial, RingError> {
        let mut powers: BTreeMap<(String, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (v, &e) in m {
                let image = assignment.get(v).ok_or_else(|| RingError::UnassignedVariable(v.clone()))?;
                let p = powers.entry((v.clone(), e)).or_insert_with(|| image.pow(e));
                term = &term * p;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Renames variables; names absent from `names` are kept.
    pub fn rename(&self, names: &BTreeMap<String, String>) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let m: Monomial = m.iter().map(|(v, e)| (names.get(v).cloned().unwrap_or_else(|| v.clone()), *e)).collect();
            (m, c.clone())
        }))
    }

    /// Writes the polynomial with variables and terms ordered by `order`
    /// (terms in descending lexicographic order of their exponent vectors).
    pub fn display_in(&self, order: &[String]) -> String {
        let rank = |v: &str| order.iter().position(|o| o == v).unwrap_or(order.len());
        let mut terms: Vec<(Vec<(usize, String, u32)>, &BigRational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut vs: Vec<(usize, String, u32)> = m.iter().map(|(v, e)| (rank(v), v.clone(), *e)).collect();
                vs.sort();
                (vs, c)
            })
            .collect();
        // Descending lex on exponent vectors: compare variable by variable.
        let key = |vs: &Vec<(usize, String, u32)>| -> Vec<(std::cmp::Reverse<(usize, String)>, u32)> {
            vs.iter().map(|(r, v, e)| (std::cmp::Reverse((*r, v.clone())), *e)).collect()
        };
        terms.sort_by(|a, b| key(&b.0).cmp(&key(&a.0)));
        format_terms(terms.iter().map(|(vs, c)| (vs.iter().map(|(_, v, e)| (v.as_str(), *e)).collect(), *c)))
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (Vec<(&'a str, u32)>, &'a BigRational)>) -> String {
    let mut out = String::new();
    for (i, (vars, c)) in terms.enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> =
            vars.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
        if factors.is_empty() {
            out.push_str(&rational_to_string(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&rational_to_string(&abs));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Polynomial {
    /// Variables alphabetical, terms in descending lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.variables().into_iter().collect();
        f.write_str(&self.display_in(&order))
    }
}

impl std::str::FromStr for Polynomial {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_polynomial(s)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, other: &'a Polynomial) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().chain(&other.terms).map(|(m, c)| (m.clone(), c.clone())))
    }
}

impl<'a> Neg for &'a Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<'a> Sub for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &'a Polynomial) -> Polynomial {
        self + &(-other)
    }
}

impl<'a> Mul for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &'a Polynomial) -> Polynomial {
        let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *out.entry(monomial_product(ma, mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Polynomial { terms: out }
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(BigRational::from(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_collects_terms() {
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert!((&p("x*y") - &p("y*x")).is_zero());
        assert_eq!(p("(x + 1)").pow(3), p("x^3 + 3*x^2 + 3*x + 1"));
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2 - 1/2*y", "-a*b^3 + 7", "w*x - 3*z^2"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert_eq!(p("y + x").to_string(), "x + y");
        let order = vec!["y".to_string(), "x".to_string()];
        assert_eq!(p("x + y^2 + x*y").display_in(&order), "y^2 + y*x + x");
    }

    #[test]
    fn substitution() {
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), p("s + t"));
        a.insert("y".to_string(), p("s - t"));
        assert_eq!(p("x*y").substitute(&a).unwrap(), p("s^2 - t^2"));
        assert!(matches!(p("z").substitute(&a), Err(RingError::UnassignedVariable(v)) if v == "z"));
    }
}
