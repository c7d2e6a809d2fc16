use super::*;
use crate::fields::CycFrame;
use crate::group::DEFAULT_ORDER_CAP;

fn table(spec: GroupSpec) -> (FiniteGroup, CharTable) {
    let g = FiniteGroup::build(&spec, DEFAULT_ORDER_CAP).unwrap();
    let t = CharTable::compute(&g).unwrap();
    (g, t)
}

#[test]
fn c2_table() {
    let (_, t) = table(GroupSpec::Cyclic(2));
    let rows: Vec<Vec<CycElem>> = t.chars().iter().map(|c| c.values().to_vec()).collect();
    let sign = CycElem::from_int(2, -1);
    let one = CycElem::one(2);
    assert!(rows.contains(&vec![one.clone(), one.clone()]));
    assert!(rows.contains(&vec![one, sign]));
}

#[test]
fn c7_linear_characters() {
    let (_, t) = table(GroupSpec::Cyclic(7));
    assert_eq!(t.len(), 7);
    for c in t.chars() {
        assert_eq!(c.degree(), 1);
        // h^j -> zeta^(jk): determined by the value at the generator
        let k = (0..7).find(|&k| *c.value(1) == CycElem::zeta_pow(7, k)).unwrap();
        for j in 0..7 {
            assert_eq!(*c.value(j as usize), CycElem::zeta_pow(7, j * k));
        }
    }
}

#[test]
fn frobenius_group_of_order_21() {
    let (_, t) = table(GroupSpec::Metacyclic { n: 7, k: 3, m: 2 });
    let degrees: Vec<u64> = t.chars().iter().map(Character::degree).collect();
    assert_eq!(degrees, vec![1, 1, 1, 3, 3]);
}

/// Both constructions sort the same way, so the tables must agree exactly.
#[test]
fn dixon_agrees_with_closed_forms() {
    let mut specs = vec![
        GroupSpec::Abelian(vec![2, 2]),
        GroupSpec::Metacyclic { n: 3, k: 2, m: 2 },
        GroupSpec::Metacyclic { n: 7, k: 3, m: 2 },
        GroupSpec::Metacyclic { n: 13, k: 3, m: 3 },
        GroupSpec::Metacyclic { n: 5, k: 4, m: 2 },
        GroupSpec::Metacyclic { n: 4, k: 2, m: 3 },
        GroupSpec::Metacyclic { n: 9, k: 3, m: 4 },
        GroupSpec::Abelian(vec![2, 4, 3]),
    ];
    specs.extend((1..=24).map(GroupSpec::Cyclic));
    for spec in specs {
        let g = FiniteGroup::build(&spec, DEFAULT_ORDER_CAP).unwrap();
        let closed = CharTable::closed_form(&g).unwrap().unwrap();
        let dixon = CharTable::dixon(&g).unwrap();
        assert_eq!(closed.chars(), dixon.chars(), "{spec:?}");
    }
}

#[test]
fn abelian_closed_form_matches_dixon_up_to_64() {
    for ns in [vec![2, 2, 2], vec![4, 4], vec![2, 6], vec![3, 3], vec![2, 2, 4], vec![8, 8], vec![2, 2, 2, 2, 2, 2]] {
        let g = FiniteGroup::abelian(&ns).unwrap();
        let closed = CharTable::closed_form(&g).unwrap().unwrap();
        assert_eq!(closed.chars(), CharTable::dixon(&g).unwrap().chars(), "{ns:?}");
    }
}

#[test]
fn dixon_on_explicit_tables() {
    // the same groups given only by their Cayley tables
    for spec in [
        GroupSpec::Metacyclic { n: 3, k: 2, m: 2 },
        GroupSpec::Metacyclic { n: 4, k: 2, m: 3 },
        GroupSpec::Metacyclic { n: 7, k: 3, m: 2 },
    ] {
        let g = FiniteGroup::build(&spec, DEFAULT_ORDER_CAP).unwrap();
        let t = FiniteGroup::build(&GroupSpec::Table(g.cayley_rows()), DEFAULT_ORDER_CAP).unwrap();
        let from_table = CharTable::compute(&t).unwrap();
        assert_eq!(from_table.chars(), CharTable::compute(&g).unwrap().chars());
    }
}

#[test]
fn verify_rejects_broken_tables() {
    let g = FiniteGroup::metacyclic(3, 2, 2).unwrap();
    let good = CharTable::compute(&g).unwrap();
    let mut chars = good.chars().to_vec();
    chars[0] = chars[1].clone();
    let classes = Arc::new(ConjClasses::compute(&g));
    assert!(matches!(CharTable::assemble(&g, classes.clone(), chars), Err(Error::CharacterTable(_))));
    let mut chars = good.chars().to_vec();
    chars.pop();
    assert!(CharTable::assemble(&g, classes, chars).is_err());
}

#[test]
fn restriction_fields() {
    let (_, t) = table(GroupSpec::Cyclic(7));
    let q3 = AbelianLocalField::base(&CycFrame::build(3, 7).unwrap());
    let triv = t.chars().iter().find(|c| c.is_trivial()).unwrap();
    assert_eq!(char_restrict_field(triv, &q3).unwrap(), q3);
    let eta = t.chars().iter().find(|c| !c.is_trivial()).unwrap();
    assert_eq!(char_restrict_field(eta, &q3).unwrap().degree(), 6);

    let q5 = AbelianLocalField::base(&CycFrame::build(5, 7).unwrap());
    assert_eq!(char_restrict_field(eta, &q5).unwrap().degree(), 6);

    // over the frame Q_3(zeta_21) the value field of a C_7 character is still degree 6
    let q3_21 = AbelianLocalField::base(&CycFrame::build(3, 21).unwrap());
    let f = char_restrict_field(eta, &q3_21).unwrap();
    assert_eq!(f.ext_invariants(&AbelianLocalField::fixed_field(f.frame(), UnitSubgroup::trivial(21)).unwrap()).unwrap().degree, 2);
    assert_eq!(f.degree(), 6);

    let q3_5 = AbelianLocalField::base(&CycFrame::build(3, 5).unwrap());
    assert!(matches!(char_restrict_field(eta, &q3_5), Err(Error::FrameMismatch(_))));
}

#[test]
fn twists_permute_the_table() {
    let g = FiniteGroup::cyclic(7).unwrap();
    let t = CharTable::compute(&g).unwrap();
    let act = GammaAction::power_map(&g, 3, 2).unwrap();
    let perm = t.gamma_permutation(&act).unwrap();
    let gal = t.galois_permutation(2).unwrap();
    // on a cyclic group, composing with squaring is the Galois twist by 2
    assert_eq!(perm, gal);

    let f21 = FiniteGroup::metacyclic(7, 3, 2).unwrap();
    let t = CharTable::compute(&f21).unwrap();
    for a in [2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20] {
        let p = t.galois_permutation(a).unwrap();
        let mut s = p.clone();
        s.sort_unstable();
        assert_eq!(s, (0..t.len()).collect::<Vec<_>>());
        for (i, &j) in p.iter().enumerate() {
            assert_eq!(t.get(i).degree(), t.get(j).degree());
        }
    }
}

#[test]
fn cache_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let g = FiniteGroup::metacyclic(7, 3, 2).unwrap();
    assert!(cache.load(&g).is_none());
    let t = CharTable::compute_cached(&g, Some(&cache)).unwrap();
    assert!(cache.path_for(&g).exists());
    assert_eq!(cache.load(&g).unwrap(), t.chars());
    let again = CharTable::compute_cached(&g, Some(&cache)).unwrap();
    assert_eq!(again.chars(), t.chars());

    // a corrupted entry is ignored and rewritten
    std::fs::write(cache.path_for(&g), "{\"version\": 1").unwrap();
    let t2 = CharTable::compute_cached(&g, Some(&cache)).unwrap();
    assert_eq!(t2.chars(), t.chars());
    assert!(cache.load(&g).is_some());
    let leftovers = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(leftovers, 1);
}

#[test]
fn concurrent_cache_writers() {
    let dir = tempfile::tempdir().unwrap();
    let g = FiniteGroup::metacyclic(13, 3, 3).unwrap();
    let expected = CharTable::compute(&g).unwrap();
    std::thread::scope(|s| {
        for _ in 0..8 {
            s.spawn(|| {
                let cache = TableCache::new(dir.path());
                let t = CharTable::compute_cached(&g, Some(&cache)).unwrap();
                assert_eq!(t.chars(), expected.chars());
            });
        }
    });
    assert_eq!(TableCache::new(dir.path()).load(&g).unwrap(), expected.chars());
}
