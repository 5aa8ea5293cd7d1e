//! The Picard-Fuchs grid over Table 6, its S4-orbit, and the stabilizer columns.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::{ser_point, show_point, AuditStatus, AuditVerdict, Dataset, GeometricPoint, TableError};
use crate::exactalg::MultiPoly;
use crate::picardfuchs::{alpha_from_scheme, derive, AlphaConvention, Derivation, Variant, DEFAULT_ORDER};
use crate::pvi::{pvi_residue, quadruple_from_rationals};
use crate::symmetry::{
    all_elements, normalize_curve, quadruple_action, set_stabilizer, stabilizer_of_alpha,
    stabilizer_of_curve, transform_curve,
};

#[derive(Debug, Clone, Serialize)]
pub struct GridDerivation {
    pub row: u32,
    pub variant: Variant,
    pub lambda: String,
    pub t: String,
    pub curve: MultiPoly,
    #[serde(serialize_with = "ser_point")]
    pub alpha: [BigRational; 4],
    /// Table 1 key of the eliminated curve.
    pub key: Option<String>,
}

/// One named solution reached from the grid through the S4 action.
#[derive(Debug, Clone, Serialize)]
pub struct GridPoint {
    pub key: String,
    pub variant: Variant,
    pub row: u32,
    /// Group element applied to the grid output, as a generator word.
    pub element: String,
    #[serde(serialize_with = "ser_point")]
    pub alpha: [BigRational; 4],
    #[serde(skip)]
    pub curve: MultiPoly,
    /// Filled in when the grid is certified by the residue oracle.
    pub residue_zero: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KeyComparison {
    pub key: String,
    pub table: u8,
    pub derived: Vec<String>,
    pub printed: Vec<String>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    pub convention: AlphaConvention,
    pub derivations: Vec<GridDerivation>,
    pub points: Vec<GridPoint>,
    /// Keys reached by some orbit element.
    pub named: Vec<String>,
    /// Orbit curves that match no audited Table 1 curve.
    pub unmatched_curves: usize,
    pub comparisons: Vec<KeyComparison>,
    pub pf1_4c: Vec<String>,
}

impl GridReport {
    pub fn all_tables_match(&self) -> bool {
        self.comparisons.iter().all(|c| c.matches)
    }

    pub fn matching_comparisons(&self) -> usize {
        self.comparisons.iter().filter(|c| c.matches).count()
    }

    /// `Some(true)` when every orbit point has been certified with a zero residue.
    pub fn certified(&self) -> Option<bool> {
        self.points.iter().map(|p| p.residue_zero).collect::<Option<Vec<_>>>().map(|v| v.iter().all(|&x| x))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub chosen: AlphaConvention,
    /// For each candidate convention, the number of (key, table) comparisons that match.
    pub candidates: Vec<(AlphaConvention, usize)>,
    pub total: usize,
    pub report: GridReport,
}

fn derive_grid(ds: &Dataset) -> Result<Vec<Derivation>, TableError> {
    let jobs: Vec<(u32, Variant)> = ds
        .table6
        .iter()
        .flat_map(|w| [(w.id, Variant::Pf1), (w.id, Variant::Pf2)])
        .collect();
    jobs.par_iter()
        .map(|&(id, v)| Ok(derive(ds.weierstrass(id)?, v, DEFAULT_ORDER, AlphaConvention::Squared)?))
        .collect()
}

fn curve_index(verdicts: &[AuditVerdict]) -> BTreeMap<String, String> {
    verdicts
        .iter()
        .filter(|v| !v.family && v.status != AuditStatus::Fail)
        .map(|v| (normalize_curve(&v.curve).to_string(), v.key.clone()))
        .collect()
}

fn grid_from(
    ds: &Dataset,
    verdicts: &[AuditVerdict],
    derivs: &[Derivation],
    convention: AlphaConvention,
    certify: bool,
) -> Result<GridReport, TableError> {
    let index = curve_index(verdicts);
    let mut derivations = Vec::new();
    let mut points: Vec<GridPoint> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut unmatched = BTreeSet::new();
    for d in derivs {
        let alpha = alpha_from_scheme(&d.scheme, &d.renormalization, convention);
        derivations.push(GridDerivation {
            row: d.row,
            variant: d.variant,
            lambda: d.renormalization.lambda.to_string(),
            t: d.renormalization.t.to_string(),
            curve: d.curve.clone(),
            alpha: alpha.clone(),
            key: index.get(&normalize_curve(&d.curve).to_string()).cloned(),
        });
        for g in all_elements() {
            let curve = transform_curve(&g, &d.curve)?;
            let name = curve.to_string();
            let Some(key) = index.get(&name) else {
                unmatched.insert(name);
                continue;
            };
            let image = quadruple_action(&g, &alpha);
            if seen.insert((key.clone(), d.variant, show_point(&image))) {
                points.push(GridPoint {
                    key: key.clone(),
                    variant: d.variant,
                    row: d.row,
                    element: g.to_string(),
                    alpha: image,
                    curve,
                    residue_zero: None,
                });
            }
        }
    }
    if certify {
        let flags: Vec<bool> = points
            .par_iter()
            .map(|p| Ok(pvi_residue(&p.curve, &quadruple_from_rationals(&p.alpha))?.is_zero()))
            .collect::<Result<_, TableError>>()?;
        for (p, f) in points.iter_mut().zip(flags) {
            p.residue_zero = Some(f);
        }
    }
    let order: BTreeMap<String, usize> = ds.table1.iter().enumerate().map(|(i, r)| (r.key.clone(), i)).collect();
    points.sort_by(|a, b| {
        (order[&a.key], a.variant, show_point(&a.alpha)).cmp(&(order[&b.key], b.variant, show_point(&b.alpha)))
    });
    let named: BTreeSet<&String> = points.iter().map(|p| &p.key).collect();
    let mut named: Vec<String> = named.into_iter().cloned().collect();
    named.sort_by_key(|k| order[k]);

    let mut comparisons = Vec::new();
    for key in ds.geometric_keys() {
        for (table, variant) in [(4u8, Variant::Pf1), (5u8, Variant::Pf2)] {
            let mut derived: Vec<String> = points
                .iter()
                .filter(|p| p.key == key && p.variant == variant)
                .map(|p| show_point(&p.alpha))
                .collect();
            let mut printed: Vec<String> = ds.points(table, &key).iter().map(show_point).collect();
            derived.sort();
            printed.sort();
            let matches = derived == printed;
            comparisons.push(KeyComparison { key: key.clone(), table, derived, printed, matches });
        }
    }
    let pf1_4c = points
        .iter()
        .filter(|p| p.key == "4C" && p.variant == Variant::Pf1)
        .map(|p| show_point(&p.alpha))
        .collect();
    Ok(GridReport {
        convention,
        derivations,
        points,
        named,
        unmatched_curves: unmatched.len(),
        comparisons,
        pf1_4c,
    })
}

/// Runs the 5 × 2 grid, expands it by the S4 action, matches the orbit to Table 1 and
/// compares the α-points with Tables 4 and 5; every point is certified by the residue oracle.
pub fn run_grid(ds: &Dataset, verdicts: &[AuditVerdict], convention: AlphaConvention) -> Result<GridReport, TableError> {
    grid_from(ds, verdicts, &derive_grid(ds)?, convention, true)
}

/// Chooses the α convention that reproduces the most table entries, then certifies its grid.
pub fn calibrate_convention(ds: &Dataset, verdicts: &[AuditVerdict]) -> Result<Calibration, TableError> {
    let derivs = derive_grid(ds)?;
    let mut candidates = Vec::new();
    let mut total = 0;
    for conv in [AlphaConvention::Squared, AlphaConvention::ShiftedAtInfinity] {
        let r = grid_from(ds, verdicts, &derivs, conv, false)?;
        total = r.comparisons.len();
        candidates.push((conv, r.matching_comparisons()));
    }
    // first maximum wins, so ties keep the uniform convention
    let chosen = candidates
        .iter()
        .fold(None::<(AlphaConvention, usize)>, |best, &(c, n)| match best {
            Some((_, m)) if m >= n => best,
            _ => Some((c, n)),
        })
        .map(|(c, _)| c)
        .expect("two candidates");
    let report = grid_from(ds, verdicts, &derivs, chosen, true)?;
    Ok(Calibration { chosen, candidates, total, report })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizerMatch {
    /// The printed label is the stabilizer of the single quadruple.
    Pointwise,
    /// Only the stabilizer of the set of quadruples in the printed cell matches.
    CellSet,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerCheck {
    pub table: u8,
    pub key: String,
    #[serde(serialize_with = "ser_point")]
    pub alpha: [BigRational; 4],
    pub printed_solution: String,
    pub computed_solution: String,
    pub printed_equation: String,
    pub pointwise: String,
    pub cell_set: String,
    pub equation: StabilizerMatch,
}

impl StabilizerCheck {
    pub fn ok(&self) -> bool {
        self.printed_solution == self.computed_solution && self.equation != StabilizerMatch::Mismatch
    }
}

/// Compares both stabilizer columns of Tables 4 and 5 with the computed subgroups.
pub fn stabilizer_checks(ds: &Dataset, verdicts: &[AuditVerdict]) -> Result<Vec<StabilizerCheck>, TableError> {
    let keys = ds.geometric_keys();
    let labels: BTreeMap<String, String> = keys
        .par_iter()
        .map(|k| {
            let v = verdicts
                .iter()
                .find(|v| &v.key == k)
                .ok_or_else(|| TableError::UnknownKey(k.clone()))?;
            Ok((k.clone(), stabilizer_of_curve(&v.curve)?.label))
        })
        .collect::<Result<_, TableError>>()?;
    let cell_points = |pts: &[GeometricPoint], cell: &str| -> Vec<[BigRational; 4]> {
        let mut out: Vec<[BigRational; 4]> = Vec::new();
        for p in pts.iter().filter(|p| p.cell == cell) {
            if !out.contains(&p.alpha) {
                out.push(p.alpha.clone());
            }
        }
        out
    };
    let mut out = Vec::new();
    for pts in [&ds.table4, &ds.table5] {
        for p in pts.iter() {
            let pointwise = stabilizer_of_alpha(&p.alpha).label;
            let cell_set = set_stabilizer(&cell_points(pts, &p.cell)).label;
            let equation = if pointwise == p.equation_stabilizer {
                StabilizerMatch::Pointwise
            } else if cell_set == p.equation_stabilizer {
                StabilizerMatch::CellSet
            } else {
                StabilizerMatch::Mismatch
            };
            out.push(StabilizerCheck {
                table: p.table,
                key: p.key.clone(),
                alpha: p.alpha.clone(),
                printed_solution: p.solution_stabilizer.clone(),
                computed_solution: labels[&p.key].clone(),
                printed_equation: p.equation_stabilizer.clone(),
                pointwise,
                cell_set,
                equation,
            });
        }
    }
    Ok(out)
}
