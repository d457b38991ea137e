use proptest::prelude::*;

use pwgl::circle::{CirclePoint, Moebius, Orientation, PWMoebius};
use pwgl::ratgeom::rat;

fn gens() -> Vec<PWMoebius> {
    vec![
        PWMoebius::example(),
        PWMoebius::global(Moebius::from_i64(1, 1, 0, 1).unwrap()),
        PWMoebius::global(Moebius::from_i64(4, 0, 0, 1).unwrap()),
        PWMoebius::global(Moebius::from_i64(0, -1, 1, 0).unwrap()),
    ]
}

fn element() -> impl Strategy<Value = PWMoebius> {
    prop::collection::vec((0usize..4, any::<bool>()), 0..5).prop_map(|letters| {
        let g = gens();
        letters.iter().fold(PWMoebius::identity(), |acc, &(i, inv)| {
            let x = if inv { g[i].inverse() } else { g[i].clone() };
            acc.compose(&x)
        })
    })
}

fn point() -> impl Strategy<Value = CirclePoint> {
    prop_oneof![
        1 => Just(CirclePoint::Infinity),
        9 => (-40i64..40, 1i64..9).prop_map(|(a, b)| CirclePoint::Finite(rat(a, b))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn products_are_homeomorphisms(f in element()) {
        let r = f.validate();
        prop_assert!(r.valid, "{}", r);
        prop_assert_eq!(r.orientation, Orientation::Preserving);
        prop_assert!(r.dyadic);
    }

    #[test]
    fn composition_is_pointwise(f in element(), g in element(), x in point()) {
        prop_assert_eq!(f.compose(&g).apply(&x), f.apply(&g.apply(&x)));
    }

    #[test]
    fn inverses(f in element(), x in point()) {
        let inv = f.inverse();
        prop_assert!(f.compose(&inv).is_identity());
        prop_assert_eq!(inv.apply(&f.apply(&x)), x);
    }

    #[test]
    fn json_roundtrip(f in element()) {
        let back = PWMoebius::from_json_str(&f.to_json_string()).unwrap();
        prop_assert!(back.equals(&f));
    }
}
