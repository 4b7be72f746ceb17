mod common;

use common::{bivector, chart, endo, oneform, poly, vector_field};
use pncalc_core::calculus::*;
use pncalc_core::expr::Poly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lie_bracket_is_antisymmetric(x in vector_field(chart(3), 2), y in vector_field(chart(3), 2)) {
        let xy = lie_bracket(&x, &y).unwrap();
        let yx = lie_bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn lie_bracket_satisfies_jacobi(x in vector_field(chart(2), 2), y in vector_field(chart(2), 2), z in vector_field(chart(2), 2)) {
        let b = |a: &VectorField, c: &VectorField| lie_bracket(a, c).unwrap();
        let s = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn torsion_is_tensorial(n in endo(chart(2), 1), x in vector_field(chart(2), 2), y in vector_field(chart(2), 2), f in poly(chart(2), 2, 3)) {
        let direct = torsion_on_fields(&n, &x, &y).unwrap();
        prop_assert_eq!(nijenhuis_torsion(&n).contract(&x, &y), direct.clone());
        prop_assert_eq!(torsion_on_fields(&n, &x.scale(&f), &y).unwrap(), direct.scale(&f));
    }

    #[test]
    fn oneform_bracket_is_antisymmetric(p in bivector(chart(3), 1), a in oneform(chart(3), 2), b in oneform(chart(3), 2)) {
        let ab = oneform_bracket(&p, &a, &b).unwrap();
        let ba = oneform_bracket(&p, &b, &a).unwrap();
        prop_assert!(ab.add(&ba).is_zero());
    }

    #[test]
    fn oneform_bracket_leibniz(p in bivector(chart(2), 2), a in oneform(chart(2), 2), b in oneform(chart(2), 2), f in poly(chart(2), 2, 3)) {
        let lhs = oneform_bracket(&p, &a, &b.scale(&f)).unwrap();
        let anchor = sharp(&p, &a).unwrap().apply(&f);
        let rhs = oneform_bracket(&p, &a, &b).unwrap().scale(&f).add(&b.scale(&anchor));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn concomitant_is_bilinear_over_functions(p in bivector(chart(2), 1), g in poly(chart(2), 1, 2), a in oneform(chart(2), 1), b in oneform(chart(2), 1), f in poly(chart(2), 2, 3)) {
        let c = chart(2);
        let n = EndoField::from_fn(&c, |i, j| if i == j { g.clone() } else { Poly::zero(&c) });
        let cm = magri_morosi(&p, &n).unwrap();
        prop_assert_eq!(cm.contract(&a.scale(&f), &b), cm.contract(&a, &b).scale(&f));
        prop_assert_eq!(cm.contract(&a, &b.scale(&f)), cm.contract(&a, &b).scale(&f));
    }

    #[test]
    fn schouten_vanishes_in_dimension_one_and_two_for_constants(p in bivector(chart(1), 2)) {
        prop_assert!(schouten_bivector(&p, &p).unwrap().is_zero());
    }
}
