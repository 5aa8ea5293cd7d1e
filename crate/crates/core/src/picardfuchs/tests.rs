use super::*;
use crate::exactalg::{parse_poly, rat, MultiPoly, RatFunc};

pub(crate) fn herfurtner(id: u32) -> WeierstrassData {
    let (g2, g3) = match id {
        1 => ("3*(z-1)*(z-a^2)^3", "(z-1)*(z-a^2)^4*(z+a)"),
        2 => ("12*z^2*(z^2+a*z+1)", "4*z^3*(2*z^3+3*a*z^2+3*a*z+2)"),
        3 => ("12*z^2*(z^2+2*a*z+1)", "4*z^3*(2*z^3+3*(a^2+1)*z^2+6*a*z+2)"),
        4 => ("3*z^3*(z+a)", "z^5*(z+1)"),
        5 => ("3*z^3*(z+2*a)", "z^4*(z^2+3*a*z+1)"),
        _ => unreachable!(),
    };
    WeierstrassData::parse(id, g2, g3).unwrap()
}

fn p(s: &str) -> MultiPoly {
    parse_poly(s).unwrap()
}

fn r(n: i64, d: i64) -> crate::exactalg::BigRational {
    rat(n, d)
}

#[test]
fn row4_invariants_match_display() {
    let (big, small) = weierstrass_invariants(&herfurtner(4)).unwrap();
    assert_eq!(big, p("27*z^9*((3*a-2)*z^2+(3*a^2-1)*z+a^3)"));
    assert_eq!(small, p("-3*z^7*((3*a-2)*z+a)"));
    assert_eq!(WeierstrassData::parse(9, "3", "1").unwrap_err(), PfError::DegenerateFamily);
}

#[test]
fn row4_operator_matches_expanded_display() {
    let w = herfurtner(4);
    let ode = scalar_ode(&FuchsianSystem::new(&w, Variant::Pf2).unwrap()).unwrap();
    let printed = ScalarOde {
        p0: p("144*z^2*((3*a-2)*z+a)*((3*a-2)*z^2+(3*a^2-1)*z+a^3)^2"),
        p1: p("144*z*((3*a-2)*z^2+(3*a^2-1)*z+a^3)*(3*(3*a-2)^2*z^3+2*(3*a-2)*(3*a-1)*(a+1)*z^2+a*(3*a^3+7*a^2-3)*z+2*a^4)"),
        p2: p("135*(3*a-2)^3*z^5+(3*a-2)^2*(468*a^2+267*a-164)*z^4+2*(3*a-2)*(189*a^4+522*a^3-48*a^2-208*a+10)*z^3-2*a*(270*a^5-1269*a^4+252*a^3+460*a^2-70)*z^2-a^4*(243*a^3-666*a^2+176)*z+27*a^7"),
        discriminant: ode.discriminant.clone(),
        delta: ode.delta.clone(),
    };
    assert!(ode.equal_up_to_unit(&printed));
}

#[test]
fn closed_form_agrees_with_elimination_on_every_row() {
    for id in 1..=5 {
        let w = herfurtner(id);
        let ode = scalar_ode(&FuchsianSystem::new(&w, Variant::Pf2).unwrap()).unwrap();
        assert!(ode.equal_up_to_unit(&closed_form_ode(&w).unwrap()), "row {id}");
    }
}

#[test]
fn row4_riemann_scheme() {
    let ode = scalar_ode(&FuchsianSystem::new(&herfurtner(4), Variant::Pf2).unwrap()).unwrap();
    let sch = riemann_scheme(&ode).unwrap();
    let get = |l: &Locus| sch.points.iter().find(|x| &x.locus == l).unwrap().exponents.clone();
    assert_eq!(get(&Locus::Root(p("z"))), (r(-1, 4), r(-3, 4)));
    assert_eq!(get(&Locus::Root(p("(3*a-2)*z^2+(3*a^2-1)*z+a^3"))), (r(1, 4), r(-1, 4)));
    assert_eq!(get(&Locus::Infinity), (r(5, 4), r(3, 4)));
    assert_eq!(sch.apparent.len(), 1);
    assert_eq!(sch.apparent[0].locus, Locus::Root(p("(3*a-2)*z+a")));
    assert_eq!(sch.apparent[0].exponents, (r(2, 1), r(0, 1)));
    assert_eq!(sch.apparent[0].log_free, Some(true));
    assert!(sch.fuchs_relation);
}

#[test]
fn row4_renormalization_is_hitchin_parametrization() {
    let d = derive(&herfurtner(4), Variant::Pf2, DEFAULT_ORDER, AlphaConvention::Squared).unwrap();
    let printed_l = RatFunc::new(p("a^2-a+1"), p("a^2*(2-a)")).unwrap();
    let printed_t = RatFunc::new(p("2*a-1"), p("a^3*(2-a)")).unwrap();
    let ren = &d.renormalization;
    let mu = mobius_reparametrization(
        (&ren.lambda, &ren.t, &ren.parametrization.param),
        (&printed_l, &printed_t, "a"),
    );
    assert!(mu.is_some());
    assert_eq!(d.alpha_values, [r(1, 8), r(1, 8), r(1, 8), r(1, 8)]);
    assert!(d.curve.equal_up_to_unit(&p(
        "lambda^4-2*t*lambda^3-2*lambda^3+6*t*lambda^2-2*t^2*lambda-2*t*lambda+t^3-t^2+t"
    )));
    assert!(eliminate_parameter(&printed_l, &printed_t, "a").unwrap().equal_up_to_unit(&d.curve));
}

#[test]
fn eliminating_identity_parametrization() {
    let a = RatFunc::var("a");
    assert_eq!(eliminate_parameter(&a, &a, "a").unwrap(), p("lambda - t"));
}

#[test]
fn printed_pf1_sign_gives_irrational_exponents() {
    let sys = FuchsianSystem::pf1_as_printed(&herfurtner(4)).unwrap();
    let err = riemann_scheme(&scalar_ode(&sys).unwrap()).unwrap_err();
    assert!(matches!(err, PfError::IrrationalExponents { .. } | PfError::NonConstantExponent { .. }), "{err}");
}

#[test]
fn conic_parametrization_squares_discriminant() {
    for disc in ["-(a-1)^3*(3*a+1)", "8*(2*a^2-1)^3", "16*(a-2)*(a+1)", "3*(a-1)*(3*a+5)^3"] {
        let d = p(disc);
        let par = rational_parametrization(&d).unwrap();
        let lhs = RatFunc::from_poly(d).substitute("a", &par.a_of_param).unwrap();
        assert_eq!(lhs, par.sqrt_disc.pow(2), "{disc}");
    }
}

#[test]
fn grid_outputs_solve_pvi() {
    for id in 1..=5 {
        let w = herfurtner(id);
        for v in [Variant::Pf1, Variant::Pf2] {
            let d = derive(&w, v, DEFAULT_ORDER, AlphaConvention::Squared).unwrap();
            assert!(d.scheme.fuchs_relation);
            assert!(d.scheme.apparent.iter().all(|x| x.log_free == Some(true)));
            let alpha = crate::pvi::quadruple_from_rationals(&d.alpha_values);
            assert!(crate::pvi::pvi_residue(&d.curve, &alpha).unwrap().is_zero(), "row {id} {v:?}");
        }
    }
}

#[test]
fn other_orderings_follow_the_s4_action() {
    use crate::symmetry::{all_elements, quadruple_action, transform_curve};
    let w = herfurtner(4);
    let base = derive(&w, Variant::Pf2, DEFAULT_ORDER, AlphaConvention::Squared).unwrap();
    let pf1 = derive(&w, Variant::Pf1, DEFAULT_ORDER, AlphaConvention::Squared).unwrap();
    for g in all_elements().into_iter().step_by(5) {
        let order = quadruple_action(&g, &DEFAULT_ORDER);
        let d = derive(&w, Variant::Pf1, order, AlphaConvention::Squared).unwrap();
        assert_eq!(d.alpha_values, quadruple_action(&g, &pf1.alpha_values));
        let expect = transform_curve(&g, &base.curve).unwrap();
        assert!(d.curve.equal_up_to_unit(&expect), "{g}");
    }
}
