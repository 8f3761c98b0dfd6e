use std::collections::BTreeMap;

use proptest::prelude::*;

use reflmono::carousel::*;
use reflmono::chi::*;
use reflmono::cyclo::{CycMatrix, CycNumber, CycPoly, RootOfUnity};
use reflmono::extdata::{Character, DatumFile, ExtensionDatum};
use reflmono::fixtures::{cyclic_nonsplit, direct, s2_over_s3, semidirect};
use reflmono::reflgrp::{FiniteGroup, GroupDatum, DEFAULT_GROUP_CAP};
use reflmono::Error;

fn load(d: &DatumFile) -> ExtensionDatum {
    ExtensionDatum::from_file(d, None, DEFAULT_GROUP_CAP).unwrap()
}

fn cat(m: usize, p: usize, r: usize) -> GroupDatum {
    GroupDatum::catalog(m, p, r).unwrap()
}

fn int(n: i64) -> CycNumber {
    CycNumber::from_integer(n)
}

fn poly(c: &[i64]) -> CycPoly {
    CycPoly::new(c.iter().map(|&x| int(x)).collect()).unwrap()
}

#[test]
fn trivial_character_stabilizes_everything() {
    let e = load(&direct("d", cat(3, 3, 2), 2, None));
    let inv = compute_chi_invariants(&e, &Character::trivial(&e), None).unwrap();
    assert_eq!(inv.w_chi.len(), 6);
    assert!(inv.hyperplanes.iter().all(|h| h.e_alpha == 1 && h.class == AlphaClass::A0));
    assert_eq!(inv.w_chi_zero.len(), 6);
    assert!(check_generation(&e, &inv).is_ok());
}

#[test]
fn faithful_character_on_s3_datum() {
    let e = load(&s2_over_s3("s"));
    let chi = Character::parse(&e, "3:1").unwrap();
    let inv = compute_chi_invariants(&e, &chi, None).unwrap();
    assert_eq!(inv.w_chi, vec![e.group.identity()]);
    assert_eq!(inv.hyperplanes[0].e_alpha, 2);
    assert_eq!(inv.hyperplanes[0].class, AlphaClass::A1);
    assert_eq!(inv.w_chi_zero.len(), 1);
    assert!(inv.rho_trivial);
    assert!(check_generation(&e, &inv).is_ok());
}

#[test]
fn faithful_character_on_cyclic_datum() {
    let e = load(&cyclic_nonsplit("c", 4, 2));
    let chi = Character::parse(&e, "2:1").unwrap();
    let inv = compute_chi_invariants(&e, &chi, None).unwrap();
    assert_eq!(inv.w_chi.len(), 4);
    assert_eq!(inv.hyperplanes[0].w_alpha_chi.len(), 4);
    assert_eq!(inv.hyperplanes[0].e_alpha, 1);
    assert_eq!(inv.w_chi_zero.len(), 4);
}

#[test]
fn corrupted_w_chi_zero_fails_generation() {
    let e = load(&direct("d", cat(3, 3, 2), 2, None));
    let mut inv = compute_chi_invariants(&e, &Character::trivial(&e), None).unwrap();
    inv.w_chi_zero.pop();
    assert!(check_generation(&e, &inv).is_err());
}

#[test]
fn w_chi_zero_is_generated_by_its_local_pieces() {
    for (d, specs) in [
        (semidirect("a", cat(3, 3, 2), 3, &[2, 2], None), &["trivial", "3:1", "3:2"][..]),
        (semidirect("b", cat(2, 1, 2), 3, &[2, 1], None), &["trivial", "3:1"][..]),
        (semidirect("c", cat(3, 1, 2), 7, &[2, 1], None), &["trivial", "7:1", "7:3"][..]),
    ] {
        let e = load(&d);
        for s in specs {
            let chi = Character::parse(&e, s).unwrap();
            let inv = compute_chi_invariants(&e, &chi, None).unwrap();
            assert!(check_generation(&e, &inv).is_ok(), "{} {s}", e.name);
            assert_eq!(e.group.order() % inv.w_chi_zero.len(), 0);
            assert_eq!(inv.w_chi.len() % inv.w_chi_zero.len(), 0);
        }
    }
}

#[test]
fn rbar_degree_is_checked() {
    let e = load(&s2_over_s3("s"));
    let chi = Character::parse(&e, "3:1").unwrap();
    let bad = RbarParams {
        by_orbit: BTreeMap::from([("0".to_string(), poly(&[-1, 0, 1]))]),
        by_hyperplane: BTreeMap::new(),
    };
    assert!(matches!(compute_chi_invariants(&e, &chi, Some(&bad)), Err(Error::Parameter(_))));
    let rho = RbarParams {
        by_orbit: BTreeMap::new(),
        by_hyperplane: BTreeMap::from([("0".to_string(), poly(&[-2, 1]))]),
    };
    let inv = compute_chi_invariants(&e, &chi, Some(&rho)).unwrap();
    assert!(!inv.rho_trivial);
    assert_eq!(inv.rho_values[&0], int(2));
    let zero_const = RbarParams {
        by_orbit: BTreeMap::from([("0".to_string(), poly(&[0, 1]))]),
        by_hyperplane: BTreeMap::new(),
    };
    assert!(matches!(compute_chi_invariants(&e, &chi, Some(&zero_const)), Err(Error::Parameter(_))));
}

#[test]
fn carousel_model_examples() {
    let swap = CycMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
    let m = build_carousel(2, 1, 1, &int(1)).unwrap();
    assert_eq!(m.lambda_inv, swap);
    assert_eq!(m.mu_e, swap);
    let p = carousel_minpolys(&m).unwrap();
    assert_eq!((p.r.clone(), p.rbar.clone(), p.rbar_mu.clone()), (poly(&[-1, 0, 1]), poly(&[-1, 0, 1]), poly(&[-1, 0, 1])));

    let m = build_carousel(1, 1, 1, &int(1)).unwrap();
    assert!(m.lambda_inv.is_identity() && m.mu_e.is_identity());
    assert_eq!(carousel_minpolys(&m).unwrap().r, poly(&[-1, 1]));

    let i = CycNumber::zeta(4, 1).unwrap();
    let m = build_carousel(4, 2, -1, &i).unwrap();
    let mut shift = CycMatrix::zeros(4, 4);
    for j in 0..3 {
        shift.set(j + 1, j, int(1));
    }
    shift.set(0, 3, i.clone());
    assert_eq!(m.lambda_inv, shift.scale(&int(-1)).unwrap());
    assert_eq!(m.mu_e, m.lambda_inv.pow(2).unwrap());
    assert_eq!(m.k(), 1);

    // n = 6, e = 2: the power factor has degree 3
    let m = build_carousel(6, 2, 1, &int(1)).unwrap();
    let lam2 = m.lambda_inv.inverse().unwrap().pow(2).unwrap();
    let r = m.lambda_inv.inverse().unwrap().minpoly().unwrap();
    let rbar = r.detect_power_factor(2).unwrap().unwrap();
    assert_eq!(rbar.degree(), 3);
    assert!(lam2.eval_poly(&rbar).unwrap().is_zero());
}

#[test]
fn carousel_rejects_bad_parameters() {
    assert!(matches!(build_carousel(4, 3, 1, &int(1)), Err(Error::Domain(_))));
    assert!(matches!(build_carousel(4, 0, 1, &int(1)), Err(Error::Domain(_))));
    assert!(matches!(build_carousel(4, 2, 1, &int(0)), Err(Error::Domain(_))));
    assert!(matches!(build_carousel(4, 2, 2, &int(1)), Err(Error::Domain(_))));
}

#[test]
fn twist_examples() {
    let e = load(&direct("d", cat(3, 1, 1), 2, None));
    let chi = Character::parse(&e, "2:1").unwrap();
    assert!(twist_from_extension(&e, 0, &chi).is_one());
    let e = load(&cyclic_nonsplit("c", 4, 2));
    let chi = Character::parse(&e, "2:1").unwrap();
    assert_eq!(twist_from_extension(&e, 0, &chi), RootOfUnity::MINUS_ONE);
    assert!(twist_from_extension(&e, 0, &Character::trivial(&e)).is_one());
}

proptest! {
    #[test]
    fn carousel_identities(n in 1usize..=12, ei in 0usize..6, neg in any::<bool>(), a in 0i64..12, t in 1u32..=12) {
        let divisors: Vec<usize> = (1..=n).filter(|e| n % e == 0).collect();
        let e = divisors[ei % divisors.len()];
        let sgn = if neg { -1 } else { 1 };
        let twist = CycNumber::zeta(t, a).unwrap();
        let m = build_carousel(n, e, sgn, &twist).unwrap();
        let p = carousel_minpolys(&m).unwrap();
        prop_assert_eq!(p.r.degree(), n);
        prop_assert_eq!(p.r.clone(), p.rbar.compose_power(e));
        prop_assert_eq!(m.mu_e.mul(&m.lambda_inv).unwrap(), m.lambda_inv.mul(&m.mu_e).unwrap());
        prop_assert_eq!(m.lambda_inv.minpoly().unwrap(), CycPoly::binomial(n, &m.wrap_scalar()));
        // the closed-form default agrees with the computed R̄
        prop_assert_eq!(default_rbar(&m).unwrap(), p.rbar);
    }
}
