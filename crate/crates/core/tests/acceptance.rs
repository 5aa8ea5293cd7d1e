//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime budget.
//! Runs without the libtest harness so the lines are always printed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use pvi_core::exactalg::{parse_poly, rat, MultiPoly, RatFunc};
use pvi_core::picardfuchs::{
    derive, eliminate_parameter, mobius_reparametrization, riemann_scheme, scalar_ode, weierstrass_invariants,
    AlphaConvention, FuchsianSystem, Locus, Variant, DEFAULT_ORDER,
};
use pvi_core::pvi::{
    boundary_values, build_curve_poly, face_identity_catalog, quadruple_from_rationals, symbolic_beta,
    verify_face_factorization,
};
use pvi_core::ramification::{
    belyi_check, face_curve, fiber_partitions, newton_polygon, sample_face_beta, Center, FaceSpec,
};
use pvi_core::symmetry::{all_elements, normalize_curve, quadruple_action, transform_curve, S4Element};
use pvi_core::tables::{
    audit_all, calibrate_convention, load_tables, stabilizer_checks, verify_generation, AuditStatus, AuditVerdict,
    Dataset, StabilizerMatch,
};

type Outcome = Result<String, String>;

fn p(s: &str) -> MultiPoly {
    parse_poly(s).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_residues(ds: &Dataset, verdicts: &[AuditVerdict]) -> Outcome {
    let matched = verdicts.iter().filter(|v| v.status == AuditStatus::Match).count();
    ensure(matched >= 26, format!("{matched} MATCH, need at least 26"))?;
    for v in verdicts {
        ensure(v.status != AuditStatus::Fail, format!("{} FAIL", v.key))?;
        ensure(v.residue_zero, format!("{}: residue of the certified pattern is nonzero", v.key))?;
        if v.status == AuditStatus::Corrected {
            let solved = v.solved_subspace.as_ref().ok_or(format!("{}: no solved subspace", v.key))?;
            for table in [4, 5] {
                for pt in ds.points(table, &v.key) {
                    ensure(solved.contains(&pt), format!("{}: Table {table} point outside the solved subspace", v.key))?;
                }
            }
        }
    }
    let corrected: Vec<&str> = verdicts
        .iter()
        .filter(|v| v.status == AuditStatus::Corrected)
        .map(|v| v.key.as_str())
        .collect();
    Ok(format!("{matched} MATCH, {} CORRECTED ({}) of {} rows", corrected.len(), corrected.join(", "), verdicts.len()))
}

fn c2_dimensions(verdicts: &[AuditVerdict]) -> Outcome {
    for v in verdicts {
        let want = if v.key.starts_with(['1', '2']) { 2 } else { 1 };
        let solved = v.solved_subspace.as_ref().ok_or(format!("{}: empty solved subspace", v.key))?;
        ensure(solved.dim() == want, format!("{}: dimension {} != {want}", v.key, solved.dim()))?;
        // MATCH and CORRECTED both mean the (corrected) pattern's subspace equals the solved one
        ensure(v.status != AuditStatus::Fail, format!("{}: pattern disagrees", v.key))?;
    }
    Ok(format!("{} rows: planes for 1A-2C, lines for 3A-5L", verdicts.len()))
}

fn c3_table3(ds: &Dataset) -> Outcome {
    let mut samples = 0;
    for row in &ds.table3 {
        let mut seen = Vec::new();
        for seed in 1..=5u64 {
            let beta = sample_face_beta(&row.face, seed).map_err(|e| e.to_string())?;
            let got = fiber_partitions(&face_curve(&beta)).map_err(|e| e.to_string())?;
            ensure(got == row.partitions, format!("{} seed {seed}: {got:?}", row.key))?;
            if !seen.contains(&beta) {
                seen.push(beta);
            }
            samples += 1;
        }
        // a face that is a single projective point has only one sample to offer
        ensure(seen.len() == 5 || seen.len() == 1, format!("{}: seeds repeat a sample", row.key))?;
    }
    Ok(format!("{} faces, {samples} seeded samples, all partitions reproduced", ds.table3.len()))
}

fn c4_puiseux() -> Outcome {
    let n = build_curve_poly(&symbolic_beta());
    let poly = newton_polygon(&n, &Center::origin()).map_err(|e| e.to_string())?;
    let displays = [p("(b3 - b1)*c^2 + 2*b1*c - b1"), p("(b0 - b2)*c^2 + b3 - b1")];
    for d in &displays {
        ensure(
            poly.edges.iter().any(|e| e.edge_poly.equal_up_to_unit(d)),
            format!("no edge polynomial equals {d}"),
        )?;
    }
    Ok(format!("{} edges at (0,0), both displays reproduced", poly.edges.len()))
}

fn c5_worked_example(ds: &Dataset) -> Outcome {
    let w = ds.weierstrass(4).map_err(|e| e.to_string())?;
    let (big, small) = weierstrass_invariants(w).map_err(|e| e.to_string())?;
    ensure(big == p("27*z^9*((3*a-2)*z^2+(3*a^2-1)*z+a^3)"), "Δ display")?;
    ensure(small == p("-3*z^7*((3*a-2)*z+a)"), "δ display")?;

    let ode = scalar_ode(&FuchsianSystem::new(w, Variant::Pf2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let quad = "((3*a-2)*z^2+(3*a^2-1)*z+a^3)";
    let p0 = p(&format!("144*z^2*((3*a-2)*z+a)*{quad}^2"));
    let p1 = p(&format!(
        "144*z*{quad}*(3*(3*a-2)^2*z^3+2*(3*a-2)*(3*a-1)*(a+1)*z^2+a*(3*a^3+7*a^2-3)*z+2*a^4)"
    ));
    let p2 = p("135*(3*a-2)^3*z^5+(3*a-2)^2*(468*a^2+267*a-164)*z^4+2*(3*a-2)*(189*a^4+522*a^3-48*a^2-208*a+10)*z^3-2*a*(270*a^5-1269*a^4+252*a^3+460*a^2-70)*z^2-a^4*(243*a^3-666*a^2+176)*z+27*a^7");
    let printed = pvi_core::picardfuchs::ScalarOde {
        p0,
        p1,
        p2,
        discriminant: ode.discriminant.clone(),
        delta: ode.delta.clone(),
    };
    ensure(ode.equal_up_to_unit(&printed), "expanded operator differs from the display")?;

    let sch = riemann_scheme(&ode).map_err(|e| e.to_string())?;
    let pair = |a: (i64, i64), b: (i64, i64)| {
        let (x, y) = (rat(a.0, a.1), rat(b.0, b.1));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let sorted = |e: &(BigRational, BigRational)| if e.0 <= e.1 { e.clone() } else { (e.1.clone(), e.0.clone()) };
    // a quadratic locus stands for both of its roots
    let mut got: Vec<_> = sch
        .points
        .iter()
        .flat_map(|x| std::iter::repeat_n(sorted(&x.exponents), x.locus.count()))
        .collect();
    got.sort();
    let mut want = vec![pair((-3, 4), (-1, 4)), pair((1, 4), (-1, 4)), pair((1, 4), (-1, 4)), pair((5, 4), (3, 4))];
    want.sort();
    ensure(sch.singular_point_count() == 4, format!("{} singular points", sch.singular_point_count()))?;
    ensure(got == want, format!("exponents {got:?}"))?;
    ensure(
        sch.apparent.len() == 1 && sorted(&sch.apparent[0].exponents) == pair((0, 1), (2, 1)),
        "apparent singularity (0,2)",
    )?;
    ensure(sch.apparent[0].locus == Locus::Root(p("(3*a-2)*z+a")), "apparent locus")?;

    let d = derive(w, Variant::Pf2, DEFAULT_ORDER, AlphaConvention::Squared).map_err(|e| e.to_string())?;
    let printed_l = RatFunc::new(p("a^2-a+1"), p("a^2*(2-a)")).unwrap();
    let printed_t = RatFunc::new(p("2*a-1"), p("a^3*(2-a)")).unwrap();
    let ren = &d.renormalization;
    let mu = mobius_reparametrization((&ren.lambda, &ren.t, &ren.parametrization.param), (&printed_l, &printed_t, "a"));
    ensure(mu.is_some(), "λ(a), t(a) not a reparametrization of the display")?;
    let eighth = rat(1, 8);
    ensure(d.alpha_values.iter().all(|x| *x == eighth), format!("alpha {:?}", d.alpha))?;
    let row4a = &ds.row("4A").map_err(|e| e.to_string())?.curve;
    ensure(d.curve.equal_up_to_unit(row4a), "eliminated quartic differs from 4A")?;
    let from_display = eliminate_parameter(&printed_l, &printed_t, "a").map_err(|e| e.to_string())?;
    ensure(from_display.equal_up_to_unit(row4a), "displayed parametrization does not eliminate to 4A")?;
    Ok("Δ, δ, operator, exponents, (4A) parametrization, α=(1/8,1/8,1/8,1/8), quartic 4A".into())
}

fn c6_grid(ds: &Dataset, verdicts: &[AuditVerdict]) -> Outcome {
    let cal = calibrate_convention(ds, verdicts).map_err(|e| e.to_string())?;
    let r = &cal.report;
    ensure(r.named.len() == 23, format!("{} named solutions", r.named.len()))?;
    ensure(r.unmatched_curves == 0, format!("{} orbit curves match no Table 1 row", r.unmatched_curves))?;
    let bad: Vec<String> = r
        .comparisons
        .iter()
        .filter(|c| !c.matches)
        .map(|c| format!("{}/T{}", c.key, c.table))
        .collect();
    ensure(bad.is_empty(), format!("mismatched {}", bad.join(" ")))?;
    ensure(r.pf1_4c == ["(1/8,0,0,0)"], format!("pf1 4C = {:?}", r.pf1_4c))?;
    ensure(r.certified() == Some(true), "a grid output has nonzero residue")?;
    Ok(format!(
        "23 named, {}/{} table comparisons, pf1 4C (1/8,0,0,0), {} points certified, convention {:?}",
        r.matching_comparisons(),
        r.comparisons.len(),
        r.points.len(),
        cal.chosen
    ))
}

fn c7_generation(ds: &Dataset, verdicts: &[AuditVerdict]) -> Outcome {
    let mut n = 0;
    for v in verdicts.iter().filter(|v| !v.family) {
        let g = verify_generation(ds, v);
        ensure(g.generates && g.members_inside, format!("{}: span {}", v.key, g.span))?;
        n += 1;
    }
    Ok(format!("{n} keys: span of Table 4 and 5 points equals the audited subspace"))
}

fn c8_symmetry(ds: &Dataset, verdicts: &[AuditVerdict]) -> Outcome {
    let els = all_elements();
    ensure(els.len() == 24, "group order")?;
    let gens = [1u8, 2, 3].map(S4Element::generator);
    for (i, g) in gens.iter().enumerate() {
        ensure(g.then(g).is_identity(), "generator is not an involution")?;
        for (j, h) in gens.iter().enumerate() {
            if i != j {
                ensure(g.then(h).order() == 3, "(x_i x_j)^3 = 1 fails")?;
            }
        }
    }
    for g in &els {
        ensure(els.contains(&g.inverse()) && g.then(&g.inverse()).is_identity(), "inverse")?;
    }
    let beta = symbolic_beta();
    let n = build_curve_poly(&beta);
    for g in &gens {
        let lhs = transform_curve(g, &n).map_err(|e| e.to_string())?;
        ensure(lhs == normalize_curve(&build_curve_poly(&quadruple_action(g, &beta))), format!("equivariance {g}"))?;
    }
    let checks = stabilizer_checks(ds, verdicts).map_err(|e| e.to_string())?;
    let bad: Vec<String> = checks.iter().filter(|c| !c.ok()).map(|c| format!("T{} {}", c.table, c.key)).collect();
    ensure(bad.is_empty(), format!("stabilizer mismatch {}", bad.join(" ")))?;
    let cell_set = checks.iter().filter(|c| c.equation == StabilizerMatch::CellSet).count();
    Ok(format!(
        "24 elements, relations, equivariance for 3 generators, {} stabilizer rows ({cell_set} only as cell set stabilizers)",
        checks.len()
    ))
}

fn c9_faces() -> Outcome {
    let catalog = face_identity_catalog();
    let mut scaled = Vec::new();
    for f in &catalog {
        let c = verify_face_factorization(f.id).map_err(|e| e.to_string())?;
        ensure(c.holds_up_to_scalar, format!("{} does not factor", f.id))?;
        if !c.exact {
            scaled.push(format!("{} by {}", f.id, c.scalar_ratio.unwrap_or_default()));
        }
    }
    let [(_, n0), (_, n1), (_, nt), _] = boundary_values();
    ensure(n0 == p("-b1*t^3"), format!("N(0,t) = {n0}"))?;
    ensure(n1 == p("b2*(t-1)^3"), format!("N(1,t) = {n1}"))?;
    ensure(nt == p("-b3*t^3*(t-1)^3"), format!("N(t,t) = {nt}"))?;
    Ok(format!(
        "{} identities (scalar differs: {}), N(0,t), N(1,t), N(t,t)",
        catalog.len(),
        if scaled.is_empty() { "none".into() } else { scaled.join(", ") }
    ))
}

fn c10_belyi(verdicts: &[AuditVerdict]) -> Outcome {
    let samples = [(2, 3), (-5, 7), (11, 4), (1, -9), (13, 6)];
    let mut checked = 0;
    for v in verdicts {
        let curves: Vec<MultiPoly> = if v.family {
            samples.iter().map(|&(a, b)| v.curve.eval("a", &rat(a, 1)).eval("b", &rat(b, 1))).collect()
        } else {
            vec![v.curve.clone()]
        };
        for c in curves {
            let r = belyi_check(&c).map_err(|e| format!("{}: {e}", v.key))?;
            ensure(r.belyi, format!("{}: extra factor {}", v.key, r.extra_factor))?;
            checked += 1;
        }
    }
    let generic = FaceSpec::generic();
    for seed in 1..=20 {
        let beta = sample_face_beta(&generic, seed).map_err(|e| e.to_string())?;
        let r = belyi_check(&build_curve_poly(&quadruple_from_rationals(&beta))).map_err(|e| e.to_string())?;
        ensure(!r.belyi && r.extra_factor.deg("t") > 0, format!("seed {seed}: generic β passes"))?;
    }
    Ok(format!("{checked} table curves Belyi, 20 generic β rejected"))
}

fn main() -> ExitCode {
    let ds = load_tables().expect("embedded tables load");
    let mut verdicts = Vec::new();
    type Job<'a> = Box<dyn FnOnce(&mut Vec<AuditVerdict>) -> Outcome + 'a>;
    let ds_ref = &ds;
    let jobs: Vec<(u8, &str, Option<Duration>, Job)> = vec![
        (
            1,
            "residue verification",
            Some(Duration::from_secs(60)),
            Box::new(move |v: &mut Vec<AuditVerdict>| {
                *v = audit_all(ds_ref).map_err(|e| e.to_string())?;
                c1_residues(ds_ref, v)
            }),
        ),
        (2, "alpha-subspace dimensions", None, Box::new(|v: &mut Vec<AuditVerdict>| c2_dimensions(v))),
        (3, "Table 3 partitions", Some(Duration::from_secs(30)), Box::new(move |_: &mut Vec<AuditVerdict>| c3_table3(ds_ref))),
        (4, "Puiseux edge polynomials", None, Box::new(|_: &mut Vec<AuditVerdict>| c4_puiseux())),
        (5, "Picard-Fuchs worked example", Some(Duration::from_secs(10)), Box::new(move |_: &mut Vec<AuditVerdict>| c5_worked_example(ds_ref))),
        (6, "geometric grid", None, Box::new(move |v: &mut Vec<AuditVerdict>| c6_grid(ds_ref, v))),
        (7, "generation", None, Box::new(move |v: &mut Vec<AuditVerdict>| c7_generation(ds_ref, v))),
        (8, "S4 suite", None, Box::new(move |v: &mut Vec<AuditVerdict>| c8_symmetry(ds_ref, v))),
        (9, "face identities", None, Box::new(|_: &mut Vec<AuditVerdict>| c9_faces())),
        (10, "Belyi checks", None, Box::new(|v: &mut Vec<AuditVerdict>| c10_belyi(v))),
    ];
    let mut failed = 0;
    for (n, name, budget, job) in jobs {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(|| job(&mut verdicts)))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>().cloned().unwrap_or_default())));
        let elapsed = start.elapsed();
        let out = match (out, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), b.as_secs())),
            (o, _) => o,
        };
        let budget = budget.map_or(String::new(), |b| format!(" < {} s", b.as_secs()));
        let secs = elapsed.as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {n:>2} PASS  {name} [{secs:.2} s{budget}]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} [{secs:.2} s{budget}]: {msg}");
            }
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
