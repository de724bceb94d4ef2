mod common;

use common::oracle::{brute_force_points, fourier_motzkin, satisfies};
use coxring::cone::{certify, expand, lattice_points, Certificate, Cone, ConeSlicePolytope, SliceEnumerator};
use coxring::linalg::{LatticeVector, ZMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(v)
}

fn vectors(rank: usize, max: usize, bound: i64) -> impl Strategy<Value = Vec<LatticeVector>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, rank), 1..=max)
        .prop_map(|vs| vs.iter().map(|v| lv(v)).filter(|v| !v.is_zero()).collect())
}

fn ranked(max_rank: usize, max_rays: usize, bound: i64) -> impl Strategy<Value = (usize, Vec<LatticeVector>)> {
    (1..=max_rank).prop_flat_map(move |r| (Just(r), vectors(r, max_rays, bound)))
}

fn rational(v: &LatticeVector) -> Vec<BigRational> {
    v.to_rational()
}

/// The cone property `v = x + y` with `x, y` in `c` not proportional to `v` fails
/// for an extreme ray: `v` is not in the cone of the other rays (pointed case).
fn is_extreme(c: &Cone, r: &LatticeVector) -> bool {
    let others: Vec<LatticeVector> = c.generator_list().into_iter().filter(|g| g != r).collect();
    others.is_empty() || !certify(c.rank(), &others, r).unwrap().is_member()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn duality_is_an_involution((rank, rays) in ranked(7, 12, 3)) {
        let c = Cone::from_rays(rank, &rays).unwrap();
        prop_assert_eq!(c.dual().dual(), c.clone());
        // Generators and facets describe the same cone.
        let again = Cone::from_inequalities(rank, c.facets(), c.equations()).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn agrees_with_fourier_motzkin((rank, rays) in ranked(4, 6, 2), probes in vectors(4, 12, 3)) {
        let c = Cone::from_rays(rank, &rays).unwrap();
        let ineqs = fourier_motzkin(rank, &rays);
        let mut probes: Vec<LatticeVector> =
            probes.iter().map(|p| LatticeVector::new(p.entries()[..rank].to_vec())).collect();
        probes.extend(rays.iter().cloned());
        probes.extend(rays.iter().map(|r| -r));
        probes.extend(c.rays().iter().cloned());
        for p in &probes {
            prop_assert_eq!(c.contains(p, false).unwrap(), satisfies(&ineqs, p), "probe {}", p);
        }
        // Every facet normal is valid on the input rays.
        for f in c.facets() {
            for r in &rays {
                prop_assert!(!f.dot(r).is_negative());
            }
        }
    }

    #[test]
    fn rays_are_canonical((rank, rays) in ranked(6, 10, 3)) {
        let c = Cone::from_rays(rank, &rays).unwrap();
        for r in c.rays() {
            prop_assert!(r.is_primitive());
        }
        let mut sorted = c.rays().to_vec();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.as_slice(), c.rays());
        let reversed: Vec<LatticeVector> = rays.iter().rev().cloned().collect();
        prop_assert_eq!(Cone::from_rays(rank, &reversed).unwrap(), c);
    }

    #[test]
    fn intersection_rays_are_extreme_members(
        (rank, a) in ranked(4, 6, 2),
        b in vectors(4, 6, 2),
    ) {
        let b: Vec<LatticeVector> = b.iter().map(|v| LatticeVector::new(v.entries()[..rank].to_vec())).filter(|v| !v.is_zero()).collect();
        let ca = Cone::from_rays(rank, &a).unwrap();
        let cb = Cone::from_rays(rank, &b).unwrap();
        let both = Cone::intersect(&[ca.clone(), cb.clone()]).unwrap();
        for r in both.rays().iter().chain(both.lineality()) {
            prop_assert!(ca.contains(r, false).unwrap() && cb.contains(r, false).unwrap());
        }
        if both.is_pointed() {
            for r in both.rays() {
                prop_assert!(is_extreme(&both, r), "ray {} is not extreme", r);
            }
        }
    }

    #[test]
    fn certificates_reexpand_and_agree_with_contains(
        (rank, rays) in ranked(6, 9, 3),
        v in prop::collection::vec(-4i64..=4, 6),
    ) {
        let v = LatticeVector::new(v.into_iter().take(rank).map(BigInt::from).collect());
        let c = Cone::from_rays(rank, &rays).unwrap();
        let inside = c.contains(&v, false).unwrap();
        let certs = [
            (c.membership_certificate(&v).unwrap(), c.generator_list()),
            (certify(rank, &rays, &v).unwrap(), rays.clone()),
        ];
        for (cert, gens) in certs {
            prop_assert_eq!(cert.is_member(), inside);
            match cert {
                Certificate::Member(coeffs) => {
                    prop_assert!(coeffs.iter().all(|q| !q.is_negative()));
                    prop_assert_eq!(expand(&gens, &coeffs, rank), rational(&v));
                }
                Certificate::Separated(u) => {
                    prop_assert!(u.dot(&v).is_negative());
                    for r in &rays {
                        prop_assert!(!u.dot(r).is_negative());
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_points_match_brute_force(
        cols in prop::collection::vec(prop::collection::vec(0i64..=3, 3), 1..=5),
        t in prop::collection::vec(0i64..=6, 3),
    ) {
        let cols: Vec<LatticeVector> = cols.iter().map(|c| lv(c)).filter(|c| !c.is_zero()).collect();
        prop_assume!(!cols.is_empty());
        let t = lv(&t);
        let p = ConeSlicePolytope { map: ZMatrix::from_columns(&cols, 3).unwrap(), target: t.clone() };
        let mut got = lattice_points(&p).unwrap();
        got.sort();
        prop_assert_eq!(got, brute_force_points(&cols, &t));
        let e = SliceEnumerator::new(&cols, 3).unwrap();
        prop_assert_eq!(e.count(&t).unwrap(), brute_force_points(&cols, &t).len());
    }
}

#[test]
fn lower_dimensional_cones() {
    // A ray in the plane: facets modulo the span, one equation.
    let c = Cone::from_rays(3, &[lv(&[1, 1, 0])]).unwrap();
    assert_eq!(c.dimension(), 1);
    assert_eq!(c.equations().len(), 2);
    assert!(c.contains(&lv(&[2, 2, 0]), false).unwrap());
    assert!(!c.contains(&lv(&[2, 2, 1]), false).unwrap());
    assert!(!c.contains(&lv(&[-1, -1, 0]), false).unwrap());
    // A line: lineality, no rays.
    let l = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 0])]).unwrap();
    assert!(!l.is_pointed());
    assert!(l.rays().is_empty());
    assert!(l.dual().rays().is_empty());
    assert_eq!(l.dual().lineality(), &[lv(&[0, 1])]);
}

#[test]
fn rank_mismatches_are_errors() {
    assert!(Cone::from_rays(2, &[lv(&[1, 0, 0])]).is_err());
    let c = Cone::orthant(2);
    assert!(c.contains(&lv(&[1]), false).is_err());
    assert!(Cone::intersect(&[c, Cone::orthant(3)]).is_err());
}

#[test]
fn strict_membership() {
    let c = Cone::orthant(2);
    assert!(c.contains(&lv(&[1, 1]), true).unwrap());
    assert!(!c.contains(&lv(&[1, 0]), true).unwrap());
    assert!(c.contains(&lv(&[1, 0]), false).unwrap());
    let z = Cone::zero(2);
    assert!(z.contains(&LatticeVector::zeros(2), false).unwrap());
    assert_eq!(z.dual(), Cone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1]), lv(&[0, -1])]).unwrap());
}
