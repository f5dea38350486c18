//! Ring and module documents.
//!
//! A ring document is a JSON object in one of two forms:
//!
//! ```text
//! {"order": n, "one": k, "add": [[..]; n], "mul": [[..]; n]}
//! {"fp_algebra": {"p": p, "dim": d, "structure_constants": [[[..]]], "unit_vector": [..]}}
//! ```
//!
//! A module document has `order`, `add` (`m×m`) and `act` (`m×n`, row `x`
//! column `a` holding `x·a`). Unknown fields are rejected.
//! [`serialize_ring`] and [`serialize_module`] emit the canonical table form,
//! one matrix row per line, which parses back to an identical value.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Deserialize;

use crate::builtin::{build_builtin, FpAlgebra, RingSpec};
use crate::error::{Error, Result};
use crate::module::RightModule;
use crate::ring::{validate_ring, FiniteRing, Limits, RawTables};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TablesDoc {
    order: usize,
    one: i64,
    add: Vec<Vec<i64>>,
    mul: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraBody {
    p: u64,
    dim: usize,
    structure_constants: Vec<Vec<Vec<u64>>>,
    unit_vector: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    fp_algebra: AlgebraBody,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    order: usize,
    add: Vec<Vec<i64>>,
    act: Vec<Vec<i64>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("{e} (line {}, column {})", e.line(), e.column()))
}

/// Parses a ring document into a spec without building it.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    let is_algebra = value
        .as_object()
        .ok_or_else(|| Error::Parse("ring document must be an object".into()))?
        .contains_key("fp_algebra");
    if is_algebra {
        let doc: AlgebraDoc = serde_json::from_value(value).map_err(parse_err)?;
        let a = doc.fp_algebra;
        Ok(RingSpec::FpAlgebra(FpAlgebra {
            p: a.p,
            dim: a.dim,
            structure_constants: a.structure_constants,
            unit_vector: a.unit_vector,
        }))
    } else {
        let doc: TablesDoc = serde_json::from_value(value).map_err(parse_err)?;
        Ok(RingSpec::Tables(RawTables {
            order: doc.order,
            one: doc.one,
            add: doc.add,
            mul: doc.mul,
        }))
    }
}

pub fn parse_ring(text: &str, limits: Limits) -> Result<FiniteRing> {
    match parse_ring_spec(text)? {
        RingSpec::Tables(raw) => validate_ring(&raw, limits),
        spec => build_builtin(&spec, limits),
    }
}

fn write_matrix<I, R>(out: &mut String, name: &str, rows: I, last: bool)
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = usize>,
{
    let rows: Vec<String> = rows
        .into_iter()
        .map(|r| {
            let cells: Vec<String> = r.into_iter().map(|v| v.to_string()).collect();
            format!("    [{}]", cells.join(", "))
        })
        .collect();
    let _ = write!(out, "  \"{name}\": [\n{}\n  ]", rows.join(",\n"));
    out.push_str(if last { "\n" } else { ",\n" });
}

/// Canonical ring document.
pub fn serialize_ring(ring: &FiniteRing) -> String {
    let n = ring.order();
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"order\": {n},");
    let _ = writeln!(out, "  \"one\": {},", ring.one());
    write_matrix(&mut out, "add", (0..n).map(|a| (0..n).map(move |b| ring.add(a, b))), false);
    write_matrix(&mut out, "mul", (0..n).map(|a| (0..n).map(move |b| ring.mul(a, b))), true);
    out.push_str("}\n");
    out
}

pub fn serialize_module(m: &RightModule) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"order\": {},", m.order());
    write_matrix(&mut out, "add", m.add_table(), false);
    write_matrix(&mut out, "act", m.act_table(), true);
    out.push_str("}\n");
    out
}

fn to_ids(name: &'static str, rows: Vec<Vec<i64>>, order: usize) -> Result<Vec<Vec<usize>>> {
    rows.into_iter()
        .enumerate()
        .map(|(r, row)| {
            row.into_iter()
                .enumerate()
                .map(|(c, v)| {
                    if v < 0 || v as u64 >= order as u64 {
                        Err(Error::EntryOutOfRange {
                            table: name,
                            row: r,
                            col: c,
                            value: v,
                            order,
                        })
                    } else {
                        Ok(v as usize)
                    }
                })
                .collect()
        })
        .collect()
}

/// Parses and validates a module document over `ring`.
pub fn parse_module(ring: &Arc<FiniteRing>, text: &str) -> Result<RightModule> {
    let doc: ModuleDoc = serde_json::from_str(text).map_err(parse_err)?;
    if doc.add.len() != doc.order {
        return Err(Error::Shape(format!(
            "add has {} rows, expected {}",
            doc.add.len(),
            doc.order
        )));
    }
    let add = to_ids("add", doc.add, doc.order)?;
    let act = to_ids("act", doc.act, doc.order)?;
    RightModule::from_tables(ring.clone(), add, act, Some("file".into()))
}
