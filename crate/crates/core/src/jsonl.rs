//! JSON-lines exchange format for root lists.
//!
//! One root per line:
//!
//! ```text
//! {"system":"e8","family":"A","n":0,"mode":"exact","coords":[["1/1","0/1",…],…]}
//! {"system":"h4","family":"B","n":3,"mode":"numeric","coords":[[0.1,0.7],…]}
//! ```
//!
//! Exact coordinates are 16 reduced `p/q` strings; numeric coordinates are
//! `[re, im]` pairs printed with shortest round-trip formatting. Reading
//! back what was written gives identical values in both modes.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coord::Arithmetic;
use crate::cyclo::CycNum;
use crate::roots::{Family, RootSystemKind, RootVector, Roots};

#[derive(Debug, Error)]
pub enum JsonlError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line}: {reason}")]
    Inconsistent { line: usize, reason: String },
    #[error("no roots in input")]
    Empty,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coords {
    Exact(Vec<CycNum>),
    Numeric(Vec<[f64; 2]>),
}

#[derive(Serialize, Deserialize)]
struct Record {
    system: RootSystemKind,
    family: Family,
    n: u32,
    mode: Arithmetic,
    coords: Coords,
}

fn write_record<W: Write>(out: &mut W, record: &Record) -> Result<(), JsonlError> {
    serde_json::to_writer(&mut *out, record).map_err(|source| JsonlError::Json { line: 0, source })?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_roots<W: Write>(out: &mut W, system: RootSystemKind, roots: &Roots) -> Result<(), JsonlError> {
    match roots {
        Roots::Exact(v) => {
            for r in v {
                let record = Record {
                    system,
                    family: r.family,
                    n: r.index,
                    mode: Arithmetic::Exact,
                    coords: Coords::Exact(r.coords.clone()),
                };
                write_record(out, &record)?;
            }
        }
        Roots::Numeric(v) => {
            for r in v {
                let record = Record {
                    system,
                    family: r.family,
                    n: r.index,
                    mode: Arithmetic::Numeric,
                    coords: Coords::Numeric(r.coords.iter().map(|z| [z.re, z.im]).collect()),
                };
                write_record(out, &record)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn roots_to_string(system: RootSystemKind, roots: &Roots) -> String {
    let mut buf = Vec::new();
    write_roots(&mut buf, system, roots).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Reads a root list written by [`write_roots`]. All lines must agree on
/// system and mode, and carry the coordinate count of that system.
pub fn read_roots<R: BufRead>(input: R) -> Result<(RootSystemKind, Roots), JsonlError> {
    let mut system = None;
    let mut exact: Vec<RootVector<CycNum>> = Vec::new();
    let mut numeric: Vec<RootVector<Complex64>> = Vec::new();
    let mut mode = None;
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line).map_err(|source| JsonlError::Json { line: line_no, source })?;
        let inconsistent = |reason: String| JsonlError::Inconsistent { line: line_no, reason };
        if *system.get_or_insert(record.system) != record.system {
            return Err(inconsistent(format!("system {} after {}", record.system, system.unwrap())));
        }
        if *mode.get_or_insert(record.mode) != record.mode {
            return Err(inconsistent(format!("mode {} after {}", record.mode, mode.unwrap())));
        }
        let dim = record.system.rank_complex();
        match (record.mode, record.coords) {
            (Arithmetic::Exact, Coords::Exact(coords)) if coords.len() == dim => {
                exact.push(RootVector { family: record.family, index: record.n, coords })
            }
            (Arithmetic::Numeric, Coords::Numeric(coords)) if coords.len() == dim => numeric.push(RootVector {
                family: record.family,
                index: record.n,
                coords: coords.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
            }),
            (m, _) => return Err(inconsistent(format!("coords do not match mode {m} with {dim} coordinates"))),
        }
    }
    let system = system.ok_or(JsonlError::Empty)?;
    let roots = match mode {
        Some(Arithmetic::Exact) => Roots::Exact(exact),
        _ => Roots::Numeric(numeric),
    };
    Ok((system, roots))
}
