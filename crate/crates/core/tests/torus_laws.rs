use proptest::prelude::*;

use pwgl::pwgl::{compose, germ_at, inverse, t_gamma, validate, PWMap};
use pwgl::ratgeom::{rat, Rat};
use pwgl::torusmap::ToralAffine;
use pwgl::wordsearch::{evaluate, Word};

fn gens() -> Vec<PWMap> {
    vec![
        PWMap::global(ToralAffine::from_rows(&[[0, -1], [1, 0]]).unwrap()),
        PWMap::global(ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap()),
        PWMap::adams(),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 0..5).prop_map(|s| Word::from_signed(&s))
}

fn point() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((0i64..12, 1i64..12).prop_map(|(a, b)| rat(a % b, b)), 2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn words_are_homeomorphisms(w in word()) {
        let f = evaluate(&gens(), &w).unwrap();
        let report = validate(&f).unwrap();
        prop_assert!(report.valid, "{}", report);
        prop_assert_eq!(f.total_volume().unwrap(), rat(1, 1));
    }

    #[test]
    fn composition_is_pointwise(u in word(), v in word(), x in point()) {
        let g = gens();
        let f = evaluate(&g, &u).unwrap();
        let h = evaluate(&g, &v).unwrap();
        let fh = compose(&f, &h).unwrap();
        prop_assert_eq!(fh.apply(&x).unwrap(), f.apply(&h.apply(&x).unwrap()).unwrap());
        prop_assert!(fh.lipschitz_bound() <= f.lipschitz_bound() * h.lipschitz_bound());
    }

    #[test]
    fn associativity_and_inverses(u in word(), v in word(), w in word()) {
        let g = gens();
        let (a, b, c) = (evaluate(&g, &u).unwrap(), evaluate(&g, &v).unwrap(), evaluate(&g, &w).unwrap());
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
        let inv = inverse(&a).unwrap();
        prop_assert!(compose(&inv, &a).unwrap().is_identity());
        prop_assert!(inv.equals(&evaluate(&g, &u.inverse()).unwrap()).unwrap());
    }

    #[test]
    fn json_roundtrip(u in word()) {
        let f = evaluate(&gens(), &u).unwrap();
        let back = PWMap::from_json_str(&f.to_json_string()).unwrap();
        prop_assert!(back.equals(&f).unwrap());
    }

    #[test]
    fn t_gamma_partitions_volume(u in word()) {
        let f = evaluate(&gens(), &u).unwrap();
        let mut maps: Vec<ToralAffine> = Vec::new();
        for p in f.pieces() {
            if !maps.contains(&p.map) {
                maps.push(p.map.clone());
            }
        }
        let total: Rat = maps.iter().map(|m| t_gamma(&f, m).unwrap().volume().unwrap()).sum();
        prop_assert_eq!(total, rat(1, 1));
    }

    #[test]
    fn germ_sectors_come_from_pieces(u in word(), x in point()) {
        let f = evaluate(&gens(), &u).unwrap();
        let germ = germ_at(&f, &x).unwrap();
        prop_assert!(!germ.sectors.is_empty());
        for s in &germ.sectors {
            prop_assert_eq!(f.pieces()[s.piece].map.matrix(), &s.matrix);
        }
    }
}

#[test]
fn torsion_action_separates_adams_from_homology() {
    let f = PWMap::adams();
    let h = PWMap::global(ToralAffine::linear(f.homology().unwrap()).unwrap());
    assert!(!f.equals(&h).unwrap());
    assert_eq!(f.torsion_perm(2).unwrap().order(), 1);
    assert!(f.torsion_perm(3).unwrap().order() > 1);
}
