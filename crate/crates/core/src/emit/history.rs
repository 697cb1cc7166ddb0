//! JSON-lines history files.
//!
//! Line 1 is a header record; every following line holds one generation as
//! `{"gen": t, "x": [[...], ...], "y": [[...], ...]}`. Reals are written with
//! 17 significant digits so they parse back to the identical `f64`. Lines end
//! with LF.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde_json::Value;

use super::fmt_real;
use crate::domain::{DecisionVector, GenerationRecord, Individual, ObjectiveVector, RunHistory};
use crate::error::{Error, Result};
use crate::optimizer::{OperatorConfig, RNG_ALGORITHM};

pub const FORMAT_VERSION: u64 = 1;

fn write_rows(out: &mut String, rows: impl Iterator<Item = impl AsRef<[f64]>>) {
    out.push('[');
    for (i, row) in rows.enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for (j, v) in row.as_ref().iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&fmt_real(*v));
        }
        out.push(']');
    }
    out.push(']');
}

fn header_line(history: &RunHistory) -> String {
    let ops = &history.operators;
    format!(
        "{{\"format_version\":{FORMAT_VERSION},\"problem\":{},\"M\":{},\"D\":{},\"algorithm\":\"{}\",\
         \"population_size\":{},\"evaluation_budget\":{},\"seed\":{},\
         \"crossover_probability\":{},\"mutation_probability\":{},\"sbx_eta\":{},\"pm_eta\":{},\
         \"rng_algorithm\":{}}}",
        Value::String(history.problem_name.clone()),
        history.num_objectives,
        history.num_variables,
        history.algorithm,
        history.population_size,
        history.evaluation_budget,
        history.seed,
        fmt_real(ops.crossover_probability),
        fmt_real(ops.mutation_probability),
        fmt_real(ops.sbx_eta),
        fmt_real(ops.pm_eta),
        Value::String(RNG_ALGORITHM.to_string()),
    )
}

/// Writes the history to any writer.
pub fn write_history_to<W: Write>(history: &RunHistory, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{}", header_line(history))?;
    let mut line = String::new();
    for record in &history.generations {
        line.clear();
        line.push_str(&format!("{{\"gen\":{},\"x\":", record.generation));
        write_rows(&mut line, record.decisions());
        line.push_str(",\"y\":");
        write_rows(&mut line, record.objectives());
        line.push('}');
        writeln!(out, "{line}")?;
    }
    out.flush()
}

pub fn write_history(history: &RunHistory, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_history_to(history, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::Malformed { line, message: message.into() }
}

fn invariant(line: usize, message: impl Into<String>) -> Error {
    Error::Invariant { line, message: message.into() }
}

fn field<'a>(record: &'a Value, key: &str, line: usize) -> Result<&'a Value> {
    record.get(key).ok_or_else(|| malformed(line, format!("missing field '{key}'")))
}

fn uint(record: &Value, key: &str, line: usize) -> Result<u64> {
    field(record, key, line)?
        .as_u64()
        .ok_or_else(|| malformed(line, format!("'{key}' is not a non-negative integer")))
}

fn real(record: &Value, key: &str, line: usize) -> Result<f64> {
    field(record, key, line)?
        .as_f64()
        .ok_or_else(|| malformed(line, format!("'{key}' is not a number")))
}

fn text<'a>(record: &'a Value, key: &str, line: usize) -> Result<&'a str> {
    field(record, key, line)?
        .as_str()
        .ok_or_else(|| malformed(line, format!("'{key}' is not a string")))
}

fn matrix(record: &Value, key: &str, line: usize) -> Result<Vec<Vec<f64>>> {
    let rows = field(record, key, line)?
        .as_array()
        .ok_or_else(|| malformed(line, format!("'{key}' is not an array")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| malformed(line, format!("'{key}' row is not an array")))?
                .iter()
                .map(|v| v.as_f64().ok_or_else(|| malformed(line, format!("'{key}' holds a non-number"))))
                .collect()
        })
        .collect()
}

fn parse(text: &str, line: usize) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(line, e.to_string()))
}

/// Reads a history, validating generation order, population sizes, vector
/// lengths and the unit box.
pub fn read_history_from<R: BufRead>(input: R) -> Result<RunHistory> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines.next().ok_or_else(|| malformed(1, "empty file"))?;
    let first = first.map_err(|e| malformed(1, e.to_string()))?;
    let header = parse(&first, 1)?;
    let version = uint(&header, "format_version", 1)?;
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch { line: 1, found: version, expected: FORMAT_VERSION });
    }
    let as_usize = |key: &str| -> Result<usize> {
        usize::try_from(uint(&header, key, 1)?).map_err(|_| malformed(1, format!("'{key}' is too large")))
    };
    let num_objectives = as_usize("M")?;
    let num_variables = as_usize("D")?;
    let population_size = as_usize("population_size")?;
    let mut history = RunHistory {
        problem_name: text(&header, "problem", 1)?.to_string(),
        num_objectives,
        num_variables,
        algorithm: text(&header, "algorithm", 1)?
            .parse()
            .map_err(|e: Error| malformed(1, e.to_string()))?,
        population_size,
        evaluation_budget: as_usize("evaluation_budget")?,
        seed: uint(&header, "seed", 1)?,
        operators: OperatorConfig {
            crossover_probability: real(&header, "crossover_probability", 1)?,
            mutation_probability: real(&header, "mutation_probability", 1)?,
            sbx_eta: real(&header, "sbx_eta", 1)?,
            pm_eta: real(&header, "pm_eta", 1)?,
        },
        generations: Vec::new(),
    };
    text(&header, "rng_algorithm", 1)?;

    for (line, content) in lines {
        let content = content.map_err(|e| malformed(line, e.to_string()))?;
        if content.is_empty() {
            return Err(malformed(line, "empty line"));
        }
        let record = parse(&content, line)?;
        let generation = usize::try_from(uint(&record, "gen", line)?)
            .map_err(|_| malformed(line, "'gen' is too large"))?;
        let expected = history.generations.len();
        if generation != expected {
            return Err(invariant(line, format!("generation {generation} found where {expected} was expected")));
        }
        let xs = matrix(&record, "x", line)?;
        let ys = matrix(&record, "y", line)?;
        if xs.len() != population_size || ys.len() != population_size {
            return Err(invariant(
                line,
                format!("expected {population_size} members, found {} x and {} y rows", xs.len(), ys.len()),
            ));
        }
        let members = xs
            .into_iter()
            .zip(ys)
            .map(|(x, y)| {
                if x.len() != num_variables || y.len() != num_objectives {
                    return Err(invariant(line, "member has the wrong dimensionality"));
                }
                Ok(Individual {
                    x: DecisionVector::new(x).map_err(|e| invariant(line, e.to_string()))?,
                    y: ObjectiveVector::new(y).map_err(|e| invariant(line, e.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        history.generations.push(GenerationRecord { generation, members });
    }
    history.validate().map_err(|e| invariant(1, e.to_string()))?;
    Ok(history)
}

pub fn read_history(path: impl AsRef<Path>) -> Result<RunHistory> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_history_from(BufReader::new(file))
}
