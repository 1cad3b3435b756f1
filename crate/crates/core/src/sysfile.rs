//! JSON files for systems, diagrams and basis exports.
//!
//! A system file is
//! `{"coxeter": {"standard": {"family": "B", "rank": 3}} | {"matrix": [[1, 3], [3, 1]]} | {"complex": "G29"},
//!   "d": [2, 2], "truncation": {"k": 4 | "infinity"} | {"J0": [[1, 2]]}}`.
//! Matrix entries may be the string `"infinity"`.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coxsys::{
    compile, g29_presentation, standard_system, CoxeterMatrix, Cutoff, GeneralPresentation, NilHeckeParams,
    StandardFamily, Truncation,
};
use crate::diagmod::{FigureSystem, ModuleDiagram};
use crate::wordengine::{BasisEnumeration, Status};
use crate::Error;

/// A parsed system file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSpec {
    Coxeter(NilHeckeParams),
    G29 { d: Vec<u32>, k: Cutoff },
}

impl SystemSpec {
    pub fn presentation(&self) -> GeneralPresentation {
        match self {
            SystemSpec::Coxeter(p) => compile(p),
            SystemSpec::G29 { d, k } => g29_presentation(d, *k).expect("validated on load"),
        }
    }

    pub fn params(&self) -> Option<&NilHeckeParams> {
        match self {
            SystemSpec::Coxeter(p) => Some(p),
            SystemSpec::G29 { .. } => None,
        }
    }
}

impl From<FigureSystem> for SystemSpec {
    fn from(f: FigureSystem) -> Self {
        match f {
            FigureSystem::Coxeter(p) => SystemSpec::Coxeter(p),
            FigureSystem::G29 { d, k } => SystemSpec::G29 { d, k },
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::File(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize, Error> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn parse_cutoff(v: &Value) -> Result<Cutoff, Error> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(_) => {
            let k = as_usize(v, "k")?;
            if k == 0 {
                return Err(bad("k must be at least 1"));
            }
            Ok(Cutoff::Finite(k as u32))
        }
        _ => Err(bad("k must be an integer or \"infinity\"")),
    }
}

fn cutoff_json(k: Cutoff) -> Value {
    match k {
        Cutoff::Finite(k) => json!(k),
        Cutoff::Infinite => json!("infinity"),
    }
}

fn parse_matrix(v: &Value) -> Result<CoxeterMatrix, Error> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("matrix rows must be arrays"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Ok(None),
                    _ => {
                        e.as_u64().map(|x| Some(x as u32)).ok_or_else(|| bad(format!("bad matrix entry {e}")))
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    CoxeterMatrix::new(rows)
}

pub fn parse_system(text: &str) -> Result<SystemSpec, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let cox = v.get("coxeter").ok_or_else(|| bad("missing \"coxeter\""))?;
    let k = v.get("truncation");
    if let Some(name) = cox.get("complex") {
        if name != "G29" {
            return Err(bad(format!("unknown complex reflection group {name}")));
        }
        let d = parse_d(&v, 4)?;
        let k = k.and_then(|t| t.get("k")).ok_or_else(|| bad("G29 systems need a truncation k"))?;
        let k = parse_cutoff(k)?;
        g29_presentation(&d, k)?;
        return Ok(SystemSpec::G29 { d, k });
    }
    let matrix = if let Some(s) = cox.get("standard") {
        let family = s.get("family").and_then(Value::as_str).ok_or_else(|| bad("missing family"))?;
        let rank = s.get("rank").map(|r| as_usize(r, "rank")).transpose()?;
        let m = s.get("m").map(|r| as_usize(r, "m").map(|x| x as u32)).transpose()?;
        standard_system(StandardFamily::from_parts(family, rank, m)?)?
    } else if let Some(m) = cox.get("matrix") {
        parse_matrix(m)?
    } else {
        return Err(bad("\"coxeter\" needs \"standard\", \"matrix\" or \"complex\""));
    };
    let d = parse_d(&v, matrix.rank())?;
    let truncation = match k {
        None => Truncation::Cutoff(Cutoff::Infinite),
        Some(t) => {
            if let Some(k) = t.get("k") {
                Truncation::Cutoff(parse_cutoff(k)?)
            } else if let Some(j0) = t.get("J0") {
                let pairs = j0.as_array().ok_or_else(|| bad("J0 must be a list of pairs"))?;
                let mut set = BTreeSet::new();
                for p in pairs {
                    match p.as_array().map(Vec::as_slice) {
                        Some([a, b]) => {
                            let (a, b) = (as_usize(a, "J0 entry")?, as_usize(b, "J0 entry")?);
                            set.insert((a.min(b), a.max(b)));
                        }
                        _ => return Err(bad("J0 entries must be pairs")),
                    }
                }
                Truncation::ExplicitJ0(set)
            } else {
                return Err(bad("truncation needs \"k\" or \"J0\""));
            }
        }
    };
    Ok(SystemSpec::Coxeter(NilHeckeParams::new(matrix, d, truncation)?))
}

fn parse_d(v: &Value, rank: usize) -> Result<Vec<u32>, Error> {
    match v.get("d") {
        None => Ok(vec![2; rank]),
        Some(d) => d
            .as_array()
            .ok_or_else(|| bad("d must be a list"))?
            .iter()
            .map(|x| as_usize(x, "d entry").map(|x| x as u32))
            .collect(),
    }
}

pub fn system_to_json(spec: &SystemSpec) -> Value {
    match spec {
        SystemSpec::G29 { d, k } => {
            json!({"coxeter": {"complex": "G29"}, "d": d, "truncation": {"k": cutoff_json(*k)}})
        }
        SystemSpec::Coxeter(p) => {
            let rows: Vec<Vec<Value>> = p
                .matrix
                .rows()
                .iter()
                .map(|r| r.iter().map(|e| e.map_or(json!("infinity"), |m| json!(m))).collect())
                .collect();
            let truncation = match &p.truncation {
                Truncation::Cutoff(k) => json!({"k": cutoff_json(*k)}),
                Truncation::ExplicitJ0(s) => {
                    json!({"J0": s.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>()})
                }
            };
            json!({"coxeter": {"matrix": rows}, "d": p.d, "truncation": truncation})
        }
    }
}

pub fn parse_diagram(text: &str) -> Result<ModuleDiagram, Error> {
    serde_json::from_str(text).map_err(|e| bad(format!("invalid diagram: {e}")))
}

pub fn read_to_string(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

pub fn load_system(path: &Path) -> Result<SystemSpec, Error> {
    parse_system(&read_to_string(path)?)
}

pub fn load_diagram(path: &Path) -> Result<ModuleDiagram, Error> {
    parse_diagram(&read_to_string(path)?)
}

#[derive(Serialize)]
struct ClassRecord<'a> {
    len: usize,
    canonical: &'a [u8],
    size: u64,
}

/// Basis export: status, dimension when complete, and one record per class.
pub fn basis_to_json(b: &BasisEnumeration) -> Value {
    let classes: Vec<Value> = b
        .levels
        .iter()
        .flatten()
        .map(|c| {
            serde_json::to_value(ClassRecord {
                len: c.canonical.len(),
                canonical: c.canonical.as_slice(),
                size: c.size as u64,
            })
            .expect("serializable")
        })
        .collect();
    match &b.status {
        Status::Complete => json!({"status": "complete", "dimension": b.dimension(), "classes": classes}),
        Status::BudgetExceeded { .. } => json!({"status": "budget_exceeded", "classes": classes}),
    }
}
