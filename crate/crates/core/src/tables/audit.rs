//! Row audits against the residue oracle, affine spans, and the Okamoto relation between 1A and 2A.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{ser_quadruple, Dataset, Table1Row, TableError};
use crate::exactalg::{int, rat, AffineSubspace, MultiPoly, RatFunc};
use crate::pvi::{
    pattern_subspace, pvi_residue, quadruple_from_strs, solve_alpha_subspace,
    solve_alpha_subspace_parametric, Quadruple,
};

/// Parameter values (a, b) at which the curves of rows 1A–1F are solved.
/// The ratios b/a are distinct so the solved lines sweep out the family's plane.
pub const FAMILY_SAMPLES: [(i64, i64); 5] = [(1, 2), (3, 5), (2, 7), (5, 3), (7, 11)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AuditStatus {
    Match,
    Corrected,
    Fail,
}

impl std::fmt::Display for AuditStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AuditStatus::Match => "MATCH",
            AuditStatus::Corrected => "CORRECTED",
            AuditStatus::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectedConstant {
    pub slot: usize,
    pub printed: String,
    pub corrected: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditVerdict {
    pub key: String,
    pub status: AuditStatus,
    /// Curve and pattern the verdict certifies (printed ones unless corrected).
    pub curve: MultiPoly,
    #[serde(serialize_with = "ser_quadruple")]
    pub pattern: Quadruple,
    #[serde(serialize_with = "ser_quadruple")]
    pub printed_pattern: Quadruple,
    pub printed_subspace: AffineSubspace<BigRational>,
    pub solved_subspace: Option<AffineSubspace<BigRational>>,
    pub corrected_constants: Vec<CorrectedConstant>,
    pub corrected_curve: Option<MultiPoly>,
    /// `pvi_residue(curve, pattern)` is the zero polynomial, symbolically in the parameters.
    pub residue_zero: bool,
    /// Rows 1A–1F: the solved subspace is the span over [`FAMILY_SAMPLES`].
    pub family: bool,
    pub note: Option<String>,
}

fn specialize_curve(p: &MultiPoly, a: i64, b: i64) -> MultiPoly {
    p.eval("a", &int(a)).eval("b", &int(b))
}

/// The α-subspace solved by a row's curve; for parametric rows the join of the subspaces
/// solved at the sample parameter values.
fn solve_row(row: &Table1Row, curve: &MultiPoly) -> Result<Option<AffineSubspace<BigRational>>, TableError> {
    if !row.is_family() {
        return Ok(solve_alpha_subspace(curve)?);
    }
    let mut acc: Option<AffineSubspace<BigRational>> = None;
    for (a, b) in FAMILY_SAMPLES {
        let Some(s) = solve_alpha_subspace(&specialize_curve(curve, a, b))? else {
            return Ok(None);
        };
        acc = Some(match acc {
            None => s,
            Some(x) => x.join(&s),
        });
    }
    Ok(acc)
}

/// Replaces mismatching constant slots of the pattern by the solved values, when that
/// reproduces the solved subspace exactly.
fn reconcile(
    pattern: &Quadruple,
    params: &[&str],
    solved: &AffineSubspace<BigRational>,
) -> Option<(Quadruple, Vec<CorrectedConstant>)> {
    if &pattern_subspace(pattern, params) == solved {
        return Some((pattern.clone(), vec![]));
    }
    let mut fixed = pattern.clone();
    let mut changes = Vec::new();
    for slot in 0..4 {
        if !pattern[slot].is_constant() {
            continue;
        }
        if solved.directions().iter().any(|d| !d[slot].is_zero()) {
            return None;
        }
        let value = solved.base()[slot].clone();
        if value != pattern[slot].constant_value() {
            changes.push(CorrectedConstant {
                slot,
                printed: pattern[slot].to_string(),
                corrected: value.to_string(),
            });
            fixed[slot] = MultiPoly::constant(value);
        }
    }
    (!changes.is_empty() && &pattern_subspace(&fixed, params) == solved).then_some((fixed, changes))
}

fn show_subspace(s: &Option<AffineSubspace<BigRational>>) -> String {
    s.as_ref().map_or("empty".to_string(), |x| x.to_string())
}

pub fn audit_row(ds: &Dataset, key: &str) -> Result<AuditVerdict, TableError> {
    let row = ds.row(key)?;
    let params: Vec<&str> = row.params.iter().map(String::as_str).collect();
    let printed_subspace = pattern_subspace(&row.pattern, &params);
    let mut verdict = AuditVerdict {
        key: row.key.clone(),
        status: AuditStatus::Fail,
        curve: row.curve.clone(),
        pattern: row.pattern.clone(),
        printed_pattern: row.pattern.clone(),
        printed_subspace,
        solved_subspace: None,
        corrected_constants: vec![],
        corrected_curve: None,
        residue_zero: false,
        family: row.is_family(),
        note: None,
    };

    let mut candidates = vec![(row.curve.clone(), false)];
    if let Some(pc) = &row.proof_curve {
        candidates.push((pc.clone(), true));
    }
    let mut notes = Vec::new();
    for (curve, is_proof) in candidates {
        let solved = match solve_row(row, &curve) {
            Ok(s) => s,
            Err(e) => {
                notes.push(format!("curve {curve}: {e}"));
                continue;
            }
        };
        if !is_proof {
            verdict.solved_subspace = solved.clone();
        }
        let Some(s) = &solved else {
            notes.push(format!("curve {curve} solves no PVI equation"));
            continue;
        };
        let Some((pattern, changes)) = reconcile(&row.pattern, &params, s) else {
            notes.push(format!("curve {curve} solves {} instead", show_subspace(&solved)));
            continue;
        };
        verdict.status = if changes.is_empty() && !is_proof { AuditStatus::Match } else { AuditStatus::Corrected };
        verdict.curve = curve.clone();
        verdict.pattern = pattern;
        verdict.solved_subspace = solved;
        verdict.corrected_constants = changes;
        if is_proof {
            verdict.corrected_curve = Some(curve);
        }
        break;
    }
    if verdict.status != AuditStatus::Fail {
        verdict.residue_zero = pvi_residue(&verdict.curve, &verdict.pattern)?.is_zero();
        if !verdict.residue_zero {
            notes.push("symbolic residue of the audited pattern is nonzero".into());
            verdict.status = AuditStatus::Fail;
        }
    }
    if !notes.is_empty() {
        verdict.note = Some(notes.join("; "));
    }
    Ok(verdict)
}

/// Audits every Table 1 row, in table order.
pub fn audit_all(ds: &Dataset) -> Result<Vec<AuditVerdict>, TableError> {
    ds.table1.par_iter().map(|r| audit_row(ds, &r.key)).collect()
}

pub fn affine_span(points: &[[BigRational; 4]]) -> AffineSubspace<BigRational> {
    let pts: Vec<Vec<BigRational>> = points.iter().map(|p| p.to_vec()).collect();
    AffineSubspace::span(&pts)
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerationCheck {
    pub key: String,
    pub points: usize,
    pub span: AffineSubspace<BigRational>,
    pub audited: Option<AffineSubspace<BigRational>>,
    /// Every listed point lies in the audited subspace.
    pub members_inside: bool,
    pub generates: bool,
}

/// Whether the Table 4 and Table 5 points of a key span its audited Table 1 subspace.
pub fn verify_generation(ds: &Dataset, verdict: &AuditVerdict) -> GenerationCheck {
    let mut points = ds.points(4, &verdict.key);
    for p in ds.points(5, &verdict.key) {
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let span = affine_span(&points);
    let audited = (verdict.status != AuditStatus::Fail).then(|| verdict.solved_subspace.clone()).flatten();
    let members_inside = audited.as_ref().is_some_and(|s| points.iter().all(|p| s.contains(p)));
    let generates = audited.as_ref() == Some(&span);
    GenerationCheck { key: verdict.key.clone(), points: points.len(), span, audited, members_inside, generates }
}

#[derive(Debug, Clone, Serialize)]
pub struct OkamotoCheck {
    /// The image quadruple written in the fresh parameter s.
    pub image: [String; 4],
    pub image_has_pattern_aabb: bool,
    pub image_solves_2a: bool,
    pub source_solves_1a: bool,
    pub source_in_solved_1a: bool,
    pub origin_in_2a: bool,
    pub holds: bool,
}

/// Parameter-level check of the Okamoto transformation relating 1A to 2A: the image
/// (s², s², (1−s)², (1−s)²) with s = (√(2a) − √(2b))/(2√2) is read as a polynomial in s.
pub fn okamoto_remark_check(ds: &Dataset) -> Result<OkamotoCheck, TableError> {
    let image = quadruple_from_strs(["s^2", "s^2", "(1-s)^2", "(1-s)^2"])?;
    let two_a = ds.row("2A")?;
    let one_a = ds.row("1A")?;
    let image_has_pattern_aabb = image[0] == image[1] && image[2] == image[3];
    let image_solves_2a = pvi_residue(&two_a.curve, &image)?.is_zero();
    let source = quadruple_from_strs(["a", "b", "1/8", "1/8"])?;
    let source_solves_1a = pvi_residue(&one_a.curve, &source)?.is_zero();
    let source_in_solved_1a = match solve_alpha_subspace_parametric(&one_a.curve)? {
        Some(s) => s.contains(&[RatFunc::var("a"), RatFunc::var("b"), RatFunc::constant(rat(1, 8)), RatFunc::constant(rat(1, 8))]),
        None => false,
    };
    let at_zero: Vec<BigRational> = image.iter().map(|x| x.eval("s", &BigRational::zero()).constant_value()).collect();
    let origin_in_2a = solve_alpha_subspace(&two_a.curve)?.is_some_and(|s| s.contains(&at_zero));
    let holds = image_has_pattern_aabb && image_solves_2a && source_solves_1a && source_in_solved_1a && origin_in_2a;
    Ok(OkamotoCheck {
        image: image.clone().map(|x| x.to_string()),
        image_has_pattern_aabb,
        image_solves_2a,
        source_solves_1a,
        source_in_solved_1a,
        origin_in_2a,
        holds,
    })
}

/// Verdict counts by status.
pub fn tally(verdicts: &[AuditVerdict]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for v in verdicts {
        *out.entry(v.status.to_string()).or_insert(0) += 1;
    }
    out
}
