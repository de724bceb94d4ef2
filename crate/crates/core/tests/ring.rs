mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::oracle::brute_force_points;
use coxring::linalg::LatticeVector;
use coxring::pipeline::{ClassTable, FixtureBundle};
use coxring::ring::{parse_polynomial, GradedRing, Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn e6() -> (GradedRing, ClassTable) {
    let f = FixtureBundle::e6();
    (f.ring.ring().unwrap(), ClassTable::for_bundle(&f).unwrap())
}

fn count(r: &GradedRing, t: &ClassTable, d: &str) -> usize {
    r.count_of_degree(&t.eval(d).unwrap()).unwrap()
}

#[test]
fn relations_are_homogeneous_of_the_expected_degree() {
    let (r, t) = e6();
    assert_eq!(r.is_homogeneous(&r.relations()[0]).unwrap(), Some(t.eval("A6").unwrap()));
    let f = FixtureBundle::d4();
    let r = f.ring.ring().unwrap();
    let t = ClassTable::for_bundle(&f).unwrap();
    assert_eq!(r.is_homogeneous(&r.relations()[0]).unwrap(), Some(t.eval("L").unwrap()));
}

#[test]
fn e6_section_counts_and_inclusion_chains() {
    let (r, t) = e6();
    let counts: Vec<usize> = ["A1", "A2", "Al", "A3", "A4", "A5", "A6"].iter().map(|d| count(&r, &t, d)).collect();
    assert_eq!(counts, [2, 3, 4, 4, 5, 6, 8]);
    for chain in [&["A1", "A2", "Al"][..], &["A3", "A4", "A5", "A6", "2*Al"][..]] {
        let c: Vec<usize> = chain.iter().map(|d| count(&r, &t, d)).collect();
        assert!(c.windows(2).all(|w| w[0] <= w[1]), "{chain:?}: {c:?}");
    }
    let a6 = t.eval("A6").unwrap();
    let h: Vec<i64> = ["A1", "A2", "Al", "A3", "A4", "A5", "A6"]
        .iter()
        .map(|d| r.hilbert_hypersurface(&a6, &t.eval(d).unwrap()).unwrap())
        .collect();
    assert_eq!(h, [2, 3, 4, 4, 5, 6, 7]);
}

#[test]
fn monomials_match_brute_force() {
    // The E6 variable degrees are nonnegative, so the box oracle applies.
    let (r, t) = e6();
    for d in ["A1", "A4", "A6", "2*Al", "A1 + A3", "A2 + A5", "3*Al"] {
        let target = t.eval(d).unwrap();
        assert_eq!(r.monomials_of_degree(&target).unwrap(), brute_force_points(r.degrees(), &target), "degree {d}");
    }
}

#[test]
fn shifted_monomials_land_injectively_in_the_target_degree() {
    let (r, t) = e6();
    let relation = &r.relations()[0];
    let deg = r.is_homogeneous(relation).unwrap().unwrap();
    let (lead, _) = relation.terms().max_by(|a, b| a.0.cmp(b.0)).unwrap();
    let shift = r.exponents(lead).unwrap();
    for d in ["A6", "2*Al", "A6 + A1", "A6 + Al", "2*A6"] {
        let target = t.eval(d).unwrap();
        let all: BTreeSet<LatticeVector> = r.monomials_of_degree(&target).unwrap().into_iter().collect();
        let lower = r.monomials_of_degree(&(&target - &deg)).unwrap();
        let shifted: BTreeSet<LatticeVector> = lower.iter().map(|e| e + &shift).collect();
        assert_eq!(shifted.len(), lower.len());
        assert!(shifted.is_subset(&all), "degree {d}");
    }
}

#[test]
fn parametrizations_vanish() {
    for f in [FixtureBundle::e6(), FixtureBundle::d4()] {
        let def = &f.bundle.identities["parametrization"];
        let form = parse_polynomial(def["form"].as_str().unwrap()).unwrap();
        let assignment: BTreeMap<String, Polynomial> = def["assignment"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), parse_polynomial(v.as_str().unwrap()).unwrap()))
            .collect();
        assert!(form.substitute(&assignment).unwrap().is_zero(), "{}", f.bundle.name);
    }
}

#[test]
fn divides_all_on_an_empty_piece_is_false() {
    let (r, t) = e6();
    let negative = t.eval("0 - A1").unwrap();
    assert!(r.monomials_of_degree(&negative).unwrap().is_empty());
    assert!(!r.divides_all("xi1", &negative).unwrap());
    assert!(r.divides_all("xi1", &t.eval("F1").unwrap()).unwrap());
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..=2, 3)), 0..=4).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(c, e)| {
            let m: Monomial = VARS.iter().zip(e).filter(|(_, e)| *e > 0).map(|(v, e)| (v.to_string(), e)).collect();
            (m, BigRational::from(BigInt::from(c)))
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in small_poly(),
        q in small_poly(),
        images in prop::collection::vec(small_poly(), 3),
    ) {
        let a: BTreeMap<String, Polynomial> = VARS.iter().map(|v| v.to_string()).zip(images).collect();
        let s = |f: &Polynomial| f.substitute(&a).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
        prop_assert_eq!(s(&Polynomial::one()), Polynomial::one());
    }

    #[test]
    fn display_round_trips(p in small_poly()) {
        prop_assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
    }
}
