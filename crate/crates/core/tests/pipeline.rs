mod common;

use coxring::pipeline::{
    hilbert_sweep, verify, verify_d4, verify_e6, ClassTable, FixtureBundle, Status, VerificationReport, VerifyOptions,
};

fn quick() -> VerifyOptions {
    VerifyOptions { sweep_bound: Some(1), ..VerifyOptions::default() }
}

fn failed(r: &VerificationReport) -> Vec<String> {
    r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect()
}

#[test]
fn shipped_e6_passes() {
    let r = verify_e6(&FixtureBundle::e6(), &VerifyOptions::default());
    assert!(r.passed, "{}", r.to_text());
    let counts = &r.check("section_counts").unwrap().computed;
    let got: Vec<u64> =
        ["A1", "A2", "Al", "A3", "A4", "A5", "A6"].iter().map(|d| counts[d]["monomials"].as_u64().unwrap()).collect();
    assert_eq!(got, [2, 3, 4, 4, 5, 6, 8]);
    let hilbert: Vec<i64> =
        ["A1", "A2", "Al", "A3", "A4", "A5", "A6"].iter().map(|d| counts[d]["hilbert"].as_i64().unwrap()).collect();
    assert_eq!(hilbert, [2, 3, 4, 4, 5, 6, 7]);
    assert_eq!(r.check("hilbert_sweep").unwrap().computed["degrees"], 2188);
}

#[test]
fn shipped_d4_passes() {
    let r = verify_d4(&FixtureBundle::d4(), &VerifyOptions::default());
    assert!(r.passed, "{}", r.to_text());
    assert_eq!(r.notes.len(), 1);
    assert_eq!(r.check("nef_cone").unwrap().computed.as_array().unwrap().len(), 16);
}

#[test]
fn reports_are_exhaustive_and_deterministic() {
    for f in [FixtureBundle::e6(), FixtureBundle::d4()] {
        let a = verify(&f, &quick());
        let b = verify(&f, &quick());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        let names: Vec<&String> = a.checks.iter().map(|c| &c.name).collect();
        let expected: Vec<&String> = f.bundle.identities.keys().collect();
        assert_eq!(names, expected);
        let back: VerificationReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn gram_entry_corruption_is_located() {
    let mut f = FixtureBundle::e6();
    // F1·F3 changed from 1 to 2 in one position only.
    f.surface.gram[0] = coxring::linalg::LatticeVector::from_i64s(&[-2, 0, 2, 0, 0, 0, 0]);
    let r = verify_e6(&f, &quick());
    let inv = r.check("inverse_gram").unwrap();
    assert_eq!(inv.status, Status::Fail);
    assert!(r.check("lattice").unwrap().detail.contains("symmetric"), "{}", r.to_text());
    // Symmetric corruption: the inverse changes and the diff names entries.
    f.surface.gram[2] = coxring::linalg::LatticeVector::from_i64s(&[2, 0, -2, 0, 0, 0, 1]);
    let r = verify_e6(&f, &quick());
    let inv = r.check("inverse_gram").unwrap();
    assert_eq!(inv.status, Status::Fail);
    assert!(inv.detail.starts_with("entry (F1, F2): computed 1/2, expected 1"), "{}", inv.detail);
}

#[test]
fn relation_variable_swap_breaks_homogeneity() {
    let mut f = FixtureBundle::e6();
    let names = f.ring.names();
    let xi2 = names.iter().position(|n| n == "xi2").unwrap();
    let xi3 = names.iter().position(|n| n == "xi3").unwrap();
    let term = f.ring.relations[0].terms.iter_mut().find(|t| t.exponents[xi2] == 1).unwrap();
    term.exponents[xi2] = 0;
    term.exponents[xi3] = 1;
    let r = verify_e6(&f, &quick());
    let c = r.check("relation_degree").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(c.detail.contains("not homogeneous"), "{}", c.detail);
    let degrees = c.computed.as_array().unwrap();
    assert_eq!(degrees.len(), 2);
    // The two term degrees differ by F3 - F2.
    let table = ClassTable::for_bundle(&f).unwrap();
    let d: Vec<_> = degrees.iter().map(|d| table.eval(d.as_str().unwrap()).unwrap()).collect();
    let diff = &d[1] - &d[0];
    let f3_f2 = table.eval("F3 - F2").unwrap();
    assert!(diff == f3_f2 || diff == -&f3_f2);
}

#[test]
fn every_single_entry_corruption_is_detected() {
    for base in [FixtureBundle::e6(), FixtureBundle::d4()] {
        for delta in [1, -1] {
            let corruptions = common::all_corruptions(&base, delta);
            assert!(corruptions.len() > 50);
            for c in corruptions {
                let r = verify(&common::apply(&base, &c), &quick());
                assert!(!r.passed, "{} survived {c:?}", base.bundle.name);
            }
        }
    }
}

#[test]
fn dropping_the_product_monomial_is_caught_by_the_derivation() {
    let mut f = FixtureBundle::d4();
    f.ring.relations[0].terms.pop();
    let r = verify_d4(&f, &quick());
    assert_eq!(r.check("relation_degree").unwrap().status, Status::Pass);
    assert_eq!(r.check("hilbert_sweep").unwrap().status, Status::Pass);
    assert_eq!(r.check("relation_derivation").unwrap().status, Status::Fail);
}

#[test]
fn permuted_d4_passes() {
    let f = common::swap_indices_1_2(&FixtureBundle::d4());
    assert_eq!(f.surface.basis_labels[1], "E2");
    let r = verify_d4(&f, &VerifyOptions::default());
    assert!(r.passed, "{:?}", failed(&r));
}

#[test]
fn missing_required_identity_fails() {
    let mut f = FixtureBundle::d4();
    f.bundle.identities.shift_remove("certificates");
    let r = verify_d4(&f, &quick());
    assert!(!r.passed);
    assert!(r.check("required certificates").is_some());
}

#[test]
fn unknown_kind_fails() {
    let mut f = FixtureBundle::d4();
    f.bundle.identities.insert("mystery".into(), serde_json::json!({"kind": "mystery"}));
    let r = verify(&f, &quick());
    assert_eq!(r.check("mystery").unwrap().status, Status::Fail);
}

#[test]
fn sweep_at_zero_and_cubics() {
    let f = FixtureBundle::e6();
    let t = ClassTable::for_bundle(&f).unwrap();
    let out = hilbert_sweep(&f, &[t.eval("0").unwrap(), t.eval("3*Al").unwrap()]).unwrap();
    assert!(out.mismatches.is_empty());
    assert_eq!(out.largest_chi, 19.into());
    let lattice = f.surface.lattice().unwrap();
    assert_eq!(lattice.euler_characteristic(&t.eval("0").unwrap()).unwrap(), 1.into());
}

#[test]
fn fixtures_load_from_disk() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    assert_eq!(FixtureBundle::load(&dir.join("e6_bundle.json")).unwrap(), FixtureBundle::e6());
    assert_eq!(FixtureBundle::load(&dir.join("d4_bundle.json")).unwrap(), FixtureBundle::d4());
}
