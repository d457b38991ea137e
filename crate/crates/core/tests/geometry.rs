use proptest::prelude::*;

use pwgl::ratgeom::{charpoly, intersect, int, rat, IntMatrix, Polytope, Rat};

fn boxed(n: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec((-8i64..8, 1i64..8, 1i64..4), n).prop_map(|c| {
        let lo: Vec<Rat> = c.iter().map(|&(a, _, d)| rat(a, d)).collect();
        let hi: Vec<Rat> = c.iter().map(|&(a, w, d)| rat(a + w, d)).collect();
        Polytope::from_box(&lo, &hi)
    })
}

proptest! {
    #[test]
    fn intersection_is_symmetric_and_smaller(p in boxed(3), q in boxed(3)) {
        let a = intersect(&p, &q).unwrap();
        let b = intersect(&q, &p).unwrap();
        prop_assert!(a.same_set(&b).unwrap());
        let v = a.volume().unwrap();
        prop_assert!(v <= p.volume().unwrap() && v <= q.volume().unwrap());
    }

    #[test]
    fn translation_keeps_volume(p in boxed(2), t in prop::collection::vec(-9i64..9, 2)) {
        let t: Vec<Rat> = t.into_iter().map(|x| rat(x, 5)).collect();
        prop_assert_eq!(p.translate(&t).unwrap().volume().unwrap(), p.volume().unwrap());
    }

    #[test]
    fn canonical_form_is_stable(p in boxed(2)) {
        let c = p.canonical().unwrap();
        prop_assert!(c.same_set(&p).unwrap());
        let again = c.canonical().unwrap();
        prop_assert_eq!(again.halfspaces(), c.halfspaces());
    }

    #[test]
    fn charpoly_matches_trace_and_det(e in prop::collection::vec(-5i64..5, 4)) {
        let m = IntMatrix::from_rows(&[[e[0], e[1]], [e[2], e[3]]]);
        let p = charpoly(&m).unwrap();
        let c = p.coeffs();
        let det = e[0] * e[3] - e[1] * e[2];
        prop_assert_eq!(p.eval(&int(0)), int(det));
        prop_assert_eq!(c.len(), 3);
        prop_assert_eq!(&c[1], &num_bigint::BigInt::from(-(e[0] + e[3])));
    }
}
