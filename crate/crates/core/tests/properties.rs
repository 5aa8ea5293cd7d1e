//! Randomized invariants: S4 group law and equivariance, residue membership, span containment.

use num_rational::BigRational;
use proptest::prelude::*;
use pvi_core::exactalg::{parse_poly, rat, AffineSubspace, MultiPoly};
use pvi_core::pvi::{build_curve_poly, pvi_residue, quadruple_from_rationals, solve_alpha_subspace};
use pvi_core::ramification::Partition;
use pvi_core::symmetry::{normalize_curve, quadruple_action, transform_curve, S4Element};
use pvi_core::tables::affine_span;

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1u8..=3, 0..8)
}

fn solved(curve: &str) -> AffineSubspace<BigRational> {
    solve_alpha_subspace(&parse_poly(curve).unwrap()).unwrap().unwrap()
}

const CURVE_4A: &str =
    "lambda^4 - 2*t*lambda^3 - 2*lambda^3 + 6*t*lambda^2 - 2*t^2*lambda - 2*t*lambda + t^3 - t^2 + t";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn words_compose_as_the_group_law(a in word(), b in word(), c in word()) {
        let (ga, gb, gc) = (S4Element::from_word(&a), S4Element::from_word(&b), S4Element::from_word(&c));
        let ab: Vec<u8> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(S4Element::from_word(&ab), ga.then(&gb));
        prop_assert_eq!(ga.then(&gb).then(&gc), ga.then(&gb.then(&gc)));
        prop_assert!(ga.then(&ga.inverse()).is_identity());
        prop_assert_eq!(24 % ga.order(), 0);
    }

    #[test]
    fn quadruple_action_is_a_right_action(a in word(), b in word(), v in prop::array::uniform4(0i32..100)) {
        let (ga, gb) = (S4Element::from_word(&a), S4Element::from_word(&b));
        prop_assert_eq!(quadruple_action(&ga.then(&gb), &v), quadruple_action(&gb, &quadruple_action(&ga, &v)));
    }

    #[test]
    fn partition_text_round_trips(parts in prop::collection::vec(1u32..7, 1..6)) {
        let p = Partition::new(parts);
        prop_assert_eq!(Partition::parse(&p.to_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn curve_action_is_equivariant_on_numeric_beta(
        w in word(),
        beta in prop::array::uniform4(small_rat()),
    ) {
        prop_assume!(beta.iter().any(|b| *b != rat(0, 1)));
        let g = S4Element::from_word(&w);
        let n = build_curve_poly(&quadruple_from_rationals(&beta));
        prop_assume!(n.deg("lambda") >= 1);
        let image = build_curve_poly(&quadruple_from_rationals(&quadruple_action(&g, &beta)));
        prop_assert_eq!(transform_curve(&g, &n).unwrap(), normalize_curve(&image));
    }

    #[test]
    fn residue_vanishes_exactly_on_the_solved_subspace(a in small_rat(), b in small_rat(), shift in small_rat()) {
        let curve = parse_poly("lambda^2 - t").unwrap();
        let plane = solved("lambda^2 - t");
        let inside: [BigRational; 4] = plane.at(&[a.clone(), b.clone()]).try_into().unwrap();
        prop_assert!(pvi_residue(&curve, &quadruple_from_rationals(&inside)).unwrap().is_zero());
        let mut outside = inside.clone();
        outside[0] += &shift;
        prop_assume!(!plane.contains(&outside));
        prop_assert!(!pvi_residue(&curve, &quadruple_from_rationals(&outside)).unwrap().is_zero());
    }

    #[test]
    fn quartic_line_members_solve_pvi(a in small_rat()) {
        let curve: MultiPoly = parse_poly(CURVE_4A).unwrap();
        let line = solved(CURVE_4A);
        prop_assert_eq!(line.dim(), 1);
        let alpha: [BigRational; 4] = line.at(&[a]).try_into().unwrap();
        prop_assert!(pvi_residue(&curve, &quadruple_from_rationals(&alpha)).unwrap().is_zero());
    }

    #[test]
    fn span_of_subspace_points_stays_inside(params in prop::collection::vec((small_rat(), small_rat()), 1..5)) {
        let plane = solved("lambda^2 - 2*lambda + t");
        let pts: Vec<[BigRational; 4]> = params
            .into_iter()
            .map(|(a, b)| plane.at(&[a, b]).try_into().unwrap())
            .collect();
        let span = affine_span(&pts);
        prop_assert!(plane.contains_subspace(&span));
        prop_assert!(span.dim() < pts.len());
    }
}
