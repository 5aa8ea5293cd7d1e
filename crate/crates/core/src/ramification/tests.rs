use super::*;
use crate::exactalg::{int, parse_poly, MultiPoly};
use crate::pvi::{build_curve_poly, build_reduced_curve_poly, symbolic_beta};

fn p(s: &str) -> MultiPoly {
    parse_poly(s).unwrap()
}

#[test]
fn square_root_branch() {
    let poly = newton_polygon(&p("lambda^2 - t"), &Center::origin()).unwrap();
    assert_eq!(poly.edges.len(), 1);
    assert_eq!(poly.edges[0].slope, crate::exactalg::rat(1, 2));
    let lead = puiseux_leading(&p("lambda^2 - t"), &Center::origin()).unwrap();
    assert_eq!(lead.len(), 1);
    assert_eq!((lead[0].index, lead[0].simple_roots), (2, 1));
}

#[test]
fn generic_edges_at_origin() {
    let n = build_curve_poly(&symbolic_beta());
    let poly = newton_polygon(&n, &Center::origin()).unwrap();
    let ends: Vec<_> = poly.edges.iter().map(|e| (e.from, e.to)).collect();
    assert_eq!(ends, vec![((0, 4), (1, 2)), ((1, 2), (3, 0))]);
    assert!(poly.edges[0].edge_poly.equal_up_to_unit(&p("(b0 - b2)*c^2 + b3 - b1")));
    assert!(poly.edges[1].edge_poly.equal_up_to_unit(&p("(b3 - b1)*c^2 + 2*b1*c - b1")));
}

#[test]
fn reduced_curve_edge_on_b3_zero() {
    let beta = sample_face_beta(&FaceSpec::parse("b3=0").unwrap(), 1).unwrap();
    let n0 = build_reduced_curve_poly(&[0, 1, 2].map(|i| MultiPoly::constant(beta[i].clone())));
    let lead = puiseux_leading(&n0, &Center::origin()).unwrap();
    assert_eq!(lead.len(), 1);
    assert_eq!((lead[0].exponent.clone(), lead[0].index), (crate::exactalg::rat(1, 2), 2));
    let expect = &MultiPoly::constant(beta[1].clone())
        + &(&MultiPoly::constant(&beta[2] - &beta[0]) * &p("c^2"));
    assert!(lead[0].edge_poly.equal_up_to_unit(&expect));
}

#[test]
fn sampler_contract() {
    let g = sample_face_beta(&FaceSpec::generic(), 1).unwrap();
    for i in 0..4 {
        assert_ne!(g[i], int(0));
        for j in 0..i {
            assert_ne!(g[i], g[j]);
        }
    }
    let z = sample_face_beta(&FaceSpec::parse("b3=0").unwrap(), 1).unwrap();
    assert_eq!(z[3], int(0));
    assert!(z[0] != z[1] && z[1] != z[2] && z[0] != z[2] && z[0] != int(0));
    let all = sample_face_beta(&FaceSpec::parse("b0=b1=b2=b3").unwrap(), 7).unwrap();
    assert_eq!(all, [int(1), int(1), int(1), int(1)]);
    assert!(sample_face_beta(&FaceSpec::parse("b0=b1=b2=b3=0").unwrap(), 1).is_err());
    assert_eq!(sample_face_beta(&FaceSpec::generic(), 5).unwrap(), sample_face_beta(&FaceSpec::generic(), 5).unwrap());
}

const TABLE3: [(&str, [&str; 3]); 10] = [
    ("generic", ["1+1+1+1+2", "1+1+1+1+2", "1+1+1+1+2"]),
    ("b0=b2", ["1+1+1+3", "1+1+1+1+2", "1+1+1+1+2"]),
    ("b0=b2,b1=b3", ["1+1+2+2", "1+1+1+1+2", "1+1+1+1+2"]),
    ("b0=b1=b2", ["1+1+1+3", "1+1+1+3", "1+1+1+3"]),
    ("b0=b1=b2=b3", ["1+1+2+2", "1+1+2+2", "1+1+2+2"]),
    ("b3=0", ["1+1+2", "1+1+2", "1+1+2"]),
    ("b0=b2,b3=0", ["1+3", "1+1+2", "1+1+2"]),
    ("b0=b1=b2,b3=0", ["1+3", "1+3", "1+3"]),
    ("b2=b3=0", ["2", "1+1", "2"]),
    ("b2=b3=0,b0=b1", ["2", "1+1", "2"]),
];

#[test]
fn table3_partitions() {
    for (id, expect) in TABLE3 {
        let face = FaceSpec::parse(id).unwrap();
        let expect = parse_partitions(&expect).unwrap();
        for seed in 1..=5 {
            let beta = sample_face_beta(&face, seed).unwrap();
            let got = fiber_partitions(&face_curve(&beta)).unwrap();
            assert_eq!(got, expect, "face {id} seed {seed} beta {beta:?}");
        }
    }
}

#[test]
fn belyi_examples() {
    assert!(belyi_check(&p("lambda^2 - t")).unwrap().belyi);
    assert!(belyi_check(&p("lambda^4 - 4*t*lambda^3 + 6*t*lambda^2 - 4*t*lambda + t^2")).unwrap().belyi);
    let n = build_curve_poly(&crate::pvi::quadruple_from_strs(["1", "2", "3", "4"]).unwrap());
    let r = belyi_check(&n).unwrap();
    assert!(!r.belyi);
    assert!(r.extra_factor.deg("t") > 0);
}
