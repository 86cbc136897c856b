use cycert::exactnum::{GaussRat, QuadExt};
use cycert::expr::parse_expression;
use cycert::wpoly::{weighted_degree, Monomial, Multiweight, WPoly};
use num_complex::Complex64;
use proptest::prelude::*;

const DIM: usize = 4;

fn coeff() -> impl Strategy<Value = GaussRat> {
    (-20i64..20, 1i64..9, -3i64..4).prop_map(|(n, d, im)| {
        let re = GaussRat::from_ratio(n, d);
        if im == 0 {
            re
        } else {
            &re + &(&GaussRat::i() * &GaussRat::from_int(im))
        }
    })
}

fn exps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, DIM)
}

fn poly() -> impl Strategy<Value = WPoly> {
    prop::collection::vec((coeff(), exps()), 0..7).prop_map(|terms| WPoly::from_terms(DIM, terms))
}

/// Weights in `Q(sqrt 3)`, as for the suspended pinch point, or plain integers.
fn weights() -> impl Strategy<Value = Multiweight> {
    prop_oneof![
        prop::collection::vec(1i64..7, DIM).prop_map(|w| Multiweight::from_ints(&w).unwrap()),
        prop::collection::vec((1i64..5, 0i64..3), DIM).prop_map(|w| {
            Multiweight::new(w.into_iter().map(|(a, b)| QuadExt::from_int(a) + QuadExt::sqrt(3) * QuadExt::from_int(b)).collect())
                .unwrap()
        }),
    ]
}

fn names() -> Vec<String> {
    WPoly::default_names(DIM)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn decomposition_resums(p in poly(), w in weights()) {
        let parts = p.homogeneous_decomposition(&w).unwrap();
        let mut sum = WPoly::zero(DIM);
        for (deg, part) in &parts {
            let h = part.is_homogeneous(&w).unwrap().expect("each part is homogeneous");
            prop_assert_eq!(&h.degree, deg);
            sum = sum.add(part);
        }
        prop_assert_eq!(sum, p);
        for pair in parts.windows(2) {
            prop_assert!(pair[0].0 > pair[1].0);
        }
    }

    #[test]
    fn weighted_degree_is_additive(a in exps(), b in exps(), w in weights()) {
        let (ma, mb) = (Monomial::new(a), Monomial::new(b));
        let lhs = weighted_degree(&ma.mul(&mb), &w).unwrap();
        let rhs = weighted_degree(&ma, &w).unwrap() + weighted_degree(&mb, &w).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(f in poly(), g in poly(), i in 0..DIM) {
        let lhs = f.mul(&g).partial_derivative(i).unwrap();
        let rhs = f.partial_derivative(i).unwrap().mul(&g).add(&f.mul(&g.partial_derivative(i).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parser_round_trip(p in poly()) {
        let text = p.display_with(&names());
        let q = parse_expression(&text, &names()).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.display_with(&names()), text);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in poly(), g in poly(), pt in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), DIM)) {
        let z: Vec<Complex64> = pt.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        let prod = f.mul(&g).eval_complex(&z);
        let expected = f.eval_complex(&z) * g.eval_complex(&z);
        prop_assert!((prod - expected).norm() <= 1e-9 * (1.0 + expected.norm()));
    }
}

#[test]
fn zero_polynomial_degree_is_flagged() {
    let w = Multiweight::from_ints(&[1, 2, 3, 4]).unwrap();
    let h = WPoly::zero(DIM).is_homogeneous(&w).unwrap().unwrap();
    assert!(h.degenerate);
    assert!(h.degree.is_zero());
}
