use super::*;
use crate::decompose::{enumerate_components, LocalIndexProvider};
use crate::fields::{AbelianLocalField, CycFrame};
use crate::group::GroupSpec;
use crate::verify::failures;

fn setup(spec: GroupSpec, p: u64, power: Option<u64>, base: &AbelianLocalField) -> Setup {
    let g = FiniteGroup::build(&spec, 256).unwrap();
    let act = match power {
        Some(m) => GammaAction::power_map(&g, p, m).unwrap(),
        None => GammaAction::trivial(&g, p).unwrap(),
    };
    Setup::new(g, act, base, None).unwrap()
}

fn qp(p: u64) -> AbelianLocalField {
    AbelianLocalField::base(&CycFrame::build(p, 1).unwrap())
}

fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Runs every suite and returns the component idempotents.
fn full_suite(s: &Setup) -> Vec<GroupAlgebraElem> {
    let comps = enumerate_components(s, &LocalIndexProvider::new()).unwrap();
    let mut checks = Vec::new();
    let mut chis = Vec::new();
    for c in &comps {
        let (eps, cs) = component_suite(s, c).unwrap();
        checks.extend(cs);
        chis.push((c.eta, eps.eps_chi));
    }
    let refs: Vec<(usize, &GroupAlgebraElem)> = chis.iter().map(|(i, x)| (*i, x)).collect();
    checks.extend(global_suite(s, &refs));
    let bad = failures(&checks);
    assert!(bad.is_empty(), "{bad:#?}");
    chis.into_iter().map(|(_, x)| x).collect()
}

#[test]
fn c2_idempotents() {
    let s = setup(GroupSpec::Cyclic(2), 3, None, &qp(3));
    let sign = (0..2).find(|&i| !s.table().get(i).is_trivial()).unwrap();
    let e = build_e(&s, sign);
    assert_eq!(e.coeffs(), &[CycElem::from_scalar(2, rat(1, 2)), CycElem::from_scalar(2, rat(-1, 2))]);
    let triv = 1 - sign;
    let t = build_e(&s, triv);
    assert!(t.coeffs().iter().all(|c| *c == CycElem::from_scalar(2, rat(1, 2))));
    full_suite(&s);
}

#[test]
fn c7_primitive_idempotent() {
    let s = setup(GroupSpec::Cyclic(7), 3, Some(2), &qp(3));
    let g = s.group();
    // the character with eta(generator) = zeta_7
    let eta = (0..7).find(|&i| *s.table().value_at(i, 1) == CycElem::zeta_pow(7, 1)).unwrap();
    let e = build_e(&s, eta);
    for j in 0..7 {
        let expected = CycElem::zeta_pow(7, -(j as i64)).scale(&rat(1, 7));
        assert_eq!(*e.coeff(g.pow(1, j)), expected);
    }
    assert_eq!(e.mul(&e, g), e);
    assert!(e.is_central(g));
    assert_eq!(e.right_mult_matrix(g).rank(), 1);
}

#[test]
fn sophie_germain_three_epsilons() {
    let s = setup(GroupSpec::Cyclic(7), 3, Some(2), &qp(3));
    let g = s.group();
    let comps = enumerate_components(&s, &LocalIndexProvider::new()).unwrap();
    let big = comps.iter().find(|c| c.report.w_chi == 3).unwrap();
    let eps = build_epsilons(&s, big).unwrap();
    // 1 - (1/7) sum_h h
    let mut expected = GroupAlgebraElem::one(7, 7);
    let avg = GroupAlgebraElem::from_coeffs(7, vec![CycElem::from_scalar(7, rat(1, 7)); 7]).unwrap();
    expected = &expected - &avg;
    assert_eq!(eps.eps_chi, expected);
    assert_eq!(eps.eps_chi.right_mult_matrix(g).rank(), 6);
    assert_eq!(eps.eps_f[0].right_mult_matrix(g).rank(), 6);
    // W = F(eta) here, so Gal(W/F) has six elements and v = 1
    assert_eq!(coset_reps(&s, big).len(), 6);
    let grid = verify_orthogonality(&s, big, &eps).unwrap();
    assert!(grid.iter().all(|c| c.passed));
    full_suite(&s);
}

#[test]
fn trivial_galois_orbit_gives_e() {
    let s = setup(GroupSpec::Cyclic(4), 5, None, &qp(5));
    // 5 = 1 mod 4: every character of C_4 is defined over Q_5
    for i in 0..4 {
        assert_eq!(build_eps_f(&s, i), build_e(&s, i));
    }
    let one = GroupAlgebraElem::one(4, 4);
    assert_eq!(one.right_mult_matrix(s.group()).rank(), 4);
}

#[test]
fn broken_idempotents_are_caught() {
    let s = setup(GroupSpec::Cyclic(7), 3, Some(2), &qp(3));
    let comps = enumerate_components(&s, &LocalIndexProvider::new()).unwrap();
    let big = comps.iter().find(|c| c.report.w_chi == 3).unwrap();
    let eps = build_epsilons(&s, big).unwrap();
    let check = dimension_rank_check(&s, &eps.eps_chi, 5, "wrong expectation");
    assert!(!check.passed);
    let e = build_e(&s, big.eta);
    // a single e(eta) is not rational over Q_3
    assert_ne!(e.galois(3).unwrap(), e);
    // and it is not phi-invariant
    assert_ne!(e.twist(s.action()), e);
}

#[test]
fn suites_over_several_configurations() {
    let unram = AbelianLocalField::unramified(3, 2).unwrap();
    let frame = CycFrame::build(3, 3).unwrap();
    let ram = AbelianLocalField::fixed_field(&frame, frame.subgroup(&[4]).unwrap()).unwrap();
    assert_eq!((ram.degree(), ram.ramification_index()), (2, 2));
    for (spec, p, m, f) in [
        (GroupSpec::Cyclic(7), 3, Some(2), &unram),
        (GroupSpec::Cyclic(7), 3, Some(2), &ram),
        (GroupSpec::Abelian(vec![2, 2]), 3, None, &qp(3)),
        (GroupSpec::Metacyclic { n: 3, k: 2, m: 2 }, 5, None, &qp(5)),
        (GroupSpec::Cyclic(13), 3, Some(3), &qp(3)),
        (GroupSpec::Cyclic(8), 3, None, &ram),
    ] {
        let s = setup(spec, p, m, f);
        full_suite(&s);
    }
}
