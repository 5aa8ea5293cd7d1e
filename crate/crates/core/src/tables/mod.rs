//! The transcribed tables as embedded data, and the checks run against them.

mod audit;
mod grid;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{parse_poly, parse_rational, AlgError, MultiPoly};
use crate::picardfuchs::{PfError, WeierstrassData};
use crate::pvi::{parameters_of, PviError, Quadruple};
use crate::ramification::{FaceSpec, Partition, RamificationError};

pub use audit::{
    affine_span, audit_all, audit_row, okamoto_remark_check, tally, verify_generation, AuditStatus,
    AuditVerdict, CorrectedConstant, GenerationCheck, OkamotoCheck, FAMILY_SAMPLES,
};
pub use grid::{
    calibrate_convention, run_grid, stabilizer_checks, Calibration, GridDerivation, GridPoint,
    GridReport, KeyComparison, StabilizerCheck, StabilizerMatch,
};

const TABLE1: &str = include_str!("../../tables/table1.txt");
const TABLE3: &str = include_str!("../../tables/table3.txt");
const TABLE4: &str = include_str!("../../tables/table4.txt");
const TABLE5: &str = include_str!("../../tables/table5.txt");
const TABLE6: &str = include_str!("../../tables/table6.txt");

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TableError {
    #[error("table {table}, line {line}: {msg}")]
    Parse { table: u8, line: usize, msg: String },
    #[error("table {table}: {msg}")]
    Consistency { table: u8, msg: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error(transparent)]
    Pvi(#[from] PviError),
    #[error(transparent)]
    Pf(#[from] PfError),
    #[error(transparent)]
    Ramification(#[from] RamificationError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub key: String,
    pub curve: MultiPoly,
    #[serde(serialize_with = "ser_quadruple")]
    pub pattern: Quadruple,
    /// Parameters of the α-pattern, in canonical order.
    pub params: Vec<String>,
    pub proof_curve: Option<MultiPoly>,
}

impl Table1Row {
    /// Rows 1A–1F: the curve itself carries the pattern's parameters.
    pub fn is_family(&self) -> bool {
        self.curve.vars().iter().any(|v| v != "lambda" && v != "t")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table3Row {
    pub key: String,
    pub face: FaceSpec,
    pub stabilizer: String,
    pub partitions: [Partition; 3],
}

/// One α-point of Table 4 or Table 5.
#[derive(Debug, Clone, Serialize)]
pub struct GeometricPoint {
    pub table: u8,
    pub key: String,
    #[serde(serialize_with = "ser_point")]
    pub alpha: [BigRational; 4],
    pub block: String,
    pub cell: String,
    pub solution_stabilizer: String,
    pub equation_stabilizer: String,
    pub inherited: bool,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub table1: Vec<Table1Row>,
    pub table3: Vec<Table3Row>,
    pub table4: Vec<GeometricPoint>,
    pub table5: Vec<GeometricPoint>,
    pub table6: Vec<WeierstrassData>,
}

impl Dataset {
    pub fn row(&self, key: &str) -> Result<&Table1Row, TableError> {
        self.table1
            .iter()
            .find(|r| r.key == key)
            .ok_or_else(|| TableError::UnknownKey(key.to_string()))
    }

    /// Distinct α-points listed for `key` in Table 4 (`table = 4`) or Table 5.
    pub fn points(&self, table: u8, key: &str) -> Vec<[BigRational; 4]> {
        let src = if table == 4 { &self.table4 } else { &self.table5 };
        let mut out: Vec<[BigRational; 4]> = Vec::new();
        for p in src.iter().filter(|p| p.key == key) {
            if !out.contains(&p.alpha) {
                out.push(p.alpha.clone());
            }
        }
        out
    }

    /// Keys 2A..5L, the solutions of geometric origin.
    pub fn geometric_keys(&self) -> Vec<String> {
        self.table1.iter().filter(|r| !r.is_family()).map(|r| r.key.clone()).collect()
    }

    pub fn weierstrass(&self, id: u32) -> Result<&WeierstrassData, TableError> {
        self.table6.iter().find(|w| w.id == id).ok_or_else(|| TableError::UnknownKey(id.to_string()))
    }
}

pub(crate) fn ser_point<S: serde::Serializer>(p: &[BigRational; 4], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_quadruple<S: serde::Serializer>(q: &Quadruple, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(q.iter().map(|x| x.to_string()))
}

pub fn show_point(p: &[BigRational; 4]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

struct Record {
    line: usize,
    key: String,
    fields: BTreeMap<String, String>,
}

fn records(table: u8, text: &str) -> Result<Vec<Record>, TableError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| TableError::Parse { table, line: i + 1, msg };
        let mut parts = line.split('|').map(str::trim);
        let key = parts.next().unwrap_or_default().to_string();
        if key.is_empty() {
            return Err(err("empty key".into()));
        }
        let mut fields = BTreeMap::new();
        for f in parts {
            let Some((name, value)) = f.split_once('=') else {
                return Err(err(format!("field {f:?} has no '='")));
            };
            if fields.insert(name.trim().to_string(), value.trim().to_string()).is_some() {
                return Err(err(format!("duplicate field {name:?}")));
            }
        }
        out.push(Record { line: i + 1, key, fields });
    }
    Ok(out)
}

impl Record {
    fn get(&self, table: u8, name: &str) -> Result<&str, TableError> {
        self.fields.get(name).map(String::as_str).ok_or_else(|| TableError::Parse {
            table,
            line: self.line,
            msg: format!("missing field {name:?}"),
        })
    }

    fn wrap<T, E: std::fmt::Display>(&self, table: u8, r: Result<T, E>) -> Result<T, TableError> {
        r.map_err(|e| TableError::Parse { table, line: self.line, msg: e.to_string() })
    }
}

fn parse_quadruple(s: &str) -> Result<Quadruple, AlgError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(AlgError::Parse { input: s.to_string(), message: "expected four entries".into() });
    }
    Ok([parse_poly(parts[0])?, parse_poly(parts[1])?, parse_poly(parts[2])?, parse_poly(parts[3])?])
}

fn parse_point(s: &str) -> Result<[BigRational; 4], AlgError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(AlgError::Parse { input: s.to_string(), message: "expected four entries".into() });
    }
    Ok([
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
        parse_rational(parts[3])?,
    ])
}

fn unique_keys<'a>(table: u8, keys: impl Iterator<Item = &'a str>) -> Result<(), TableError> {
    let mut seen = BTreeSet::new();
    for k in keys {
        if !seen.insert(k) {
            return Err(TableError::Consistency { table, msg: format!("duplicate key {k}") });
        }
    }
    Ok(())
}

fn load_table1() -> Result<Vec<Table1Row>, TableError> {
    let mut rows = Vec::new();
    for r in records(1, TABLE1)? {
        let curve = r.wrap(1, parse_poly(r.get(1, "curve")?))?;
        let pattern = r.wrap(1, parse_quadruple(r.get(1, "alpha")?))?;
        let proof_curve = match r.fields.get("proof_curve") {
            Some(s) => Some(r.wrap(1, parse_poly(s))?),
            None => None,
        };
        let params = parameters_of(&pattern);
        rows.push(Table1Row { key: r.key, curve, pattern, params, proof_curve });
    }
    unique_keys(1, rows.iter().map(|r| r.key.as_str()))?;
    Ok(rows)
}

fn load_table3() -> Result<Vec<Table3Row>, TableError> {
    let mut rows = Vec::new();
    for r in records(3, TABLE3)? {
        let face = r.wrap(3, FaceSpec::parse(r.get(3, "face")?))?;
        let mut parts = Vec::new();
        for f in ["t0", "t1", "tinf"] {
            parts.push(r.wrap(3, Partition::parse(r.get(3, f)?))?);
        }
        let partitions: [Partition; 3] = parts.try_into().expect("three base points");
        rows.push(Table3Row { key: r.key.clone(), face, stabilizer: r.get(3, "stabilizer")?.into(), partitions });
    }
    unique_keys(3, rows.iter().map(|r| r.key.as_str()))?;
    Ok(rows)
}

fn load_points(table: u8, text: &str) -> Result<Vec<GeometricPoint>, TableError> {
    let mut out = Vec::new();
    for r in records(table, text)? {
        let alpha = r.wrap(table, parse_point(r.get(table, "alpha")?))?;
        let inherited = match r.get(table, "source")? {
            "printed" => false,
            "inherited" => true,
            other => {
                return Err(TableError::Parse { table, line: r.line, msg: format!("bad source {other:?}") })
            }
        };
        out.push(GeometricPoint {
            table,
            key: r.key.clone(),
            alpha,
            block: r.get(table, "block")?.into(),
            cell: r.get(table, "cell")?.into(),
            solution_stabilizer: r.get(table, "solution_stabilizer")?.into(),
            equation_stabilizer: r.get(table, "equation_stabilizer")?.into(),
            inherited,
        });
    }
    Ok(out)
}

fn load_table6() -> Result<Vec<WeierstrassData>, TableError> {
    let mut rows = Vec::new();
    for r in records(6, TABLE6)? {
        let id: u32 = r.wrap(6, r.key.parse::<u32>())?;
        rows.push(r.wrap(6, WeierstrassData::parse(id, r.get(6, "g2")?, r.get(6, "g3")?))?);
    }
    let keys: Vec<String> = rows.iter().map(|w| w.id.to_string()).collect();
    unique_keys(6, keys.iter().map(String::as_str))?;
    Ok(rows)
}

/// Parses the embedded tables and checks cross references.
pub fn load_tables() -> Result<Dataset, TableError> {
    let ds = Dataset {
        table1: load_table1()?,
        table3: load_table3()?,
        table4: load_points(4, TABLE4)?,
        table5: load_points(5, TABLE5)?,
        table6: load_table6()?,
    };
    for p in ds.table4.iter().chain(&ds.table5) {
        let row = ds.row(&p.key).map_err(|_| TableError::Consistency {
            table: p.table,
            msg: format!("key {} is not in table 1", p.key),
        })?;
        if row.is_family() {
            return Err(TableError::Consistency {
                table: p.table,
                msg: format!("key {} is a parametric family", p.key),
            });
        }
    }
    // rows within one cell share their alpha entry
    for pts in [&ds.table4, &ds.table5] {
        for p in pts.iter().filter(|p| p.inherited) {
            let shared = pts.iter().any(|q| !q.inherited && q.cell == p.cell && q.alpha == p.alpha);
            if !shared {
                return Err(TableError::Consistency {
                    table: p.table,
                    msg: format!("inherited point of {} has no printed source in cell {}", p.key, p.cell),
                });
            }
        }
    }
    Ok(ds)
}
