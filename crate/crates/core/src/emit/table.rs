//! CSV outputs: embeddings (`gen,idx,e1,e2,score,space,stride`) and
//! hypervolume traces (`gen,hv`).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::fmt_real;
use crate::embedding::{Embedding, Space};
use crate::error::{Error, Result};
use crate::metrics::{ExplorationProfile, HypervolumeTrace};

pub const EMBEDDING_HEADER: &str = "gen,idx,e1,e2,score,space,stride";
pub const HV_HEADER: &str = "gen,hv";

/// One row of an embedding file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingRow {
    pub generation: usize,
    pub member_index: usize,
    pub e1: f64,
    pub e2: f64,
    pub score: f64,
    pub space: Space,
    pub stride: usize,
}

/// Joins embedded points with their exploration scores, ordered by
/// (generation, member).
pub fn embedding_rows(embedding: &Embedding, profile: &ExplorationProfile) -> Result<Vec<EmbeddingRow>> {
    let mut rows = embedding
        .points
        .iter()
        .map(|p| {
            let score = profile.score(p.generation, p.member_index).ok_or_else(|| {
                Error::contract(format!(
                    "profile has no score for generation {} member {}",
                    p.generation, p.member_index
                ))
            })?;
            Ok(EmbeddingRow {
                generation: p.generation,
                member_index: p.member_index,
                e1: p.e1,
                e2: p.e2,
                score,
                space: embedding.space,
                stride: embedding.stride,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.generation, r.member_index));
    Ok(rows)
}

pub fn write_embedding_rows_to<W: Write>(rows: &[EmbeddingRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{EMBEDDING_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.generation,
            r.member_index,
            fmt_real(r.e1),
            fmt_real(r.e2),
            fmt_real(r.score),
            r.space,
            r.stride
        )?;
    }
    out.flush()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

pub fn write_embedding(
    embedding: &Embedding,
    profile: &ExplorationProfile,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let rows = embedding_rows(embedding, profile)?;
    write_embedding_rows_to(&rows, create(path)?).map_err(|e| Error::io(path, e))
}

fn cell<T: std::str::FromStr>(value: Option<&str>, name: &str, line: usize) -> Result<T> {
    value
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Malformed { line, message: format!("bad or missing '{name}'") })
}

fn read_csv<R: BufRead, T>(
    input: R,
    header: &str,
    columns: usize,
    mut parse_row: impl FnMut(&[&str], usize) -> Result<T>,
) -> Result<Vec<T>> {
    let mut rows = Vec::new();
    let mut seen_header = false;
    for (i, line) in input.lines().enumerate() {
        let n = i + 1;
        let line = line.map_err(|e| Error::Malformed { line: n, message: e.to_string() })?;
        if n == 1 {
            if line != header {
                return Err(Error::Malformed { line: 1, message: format!("expected header '{header}'") });
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns {
            return Err(Error::Malformed {
                line: n,
                message: format!("expected {columns} columns, found {}", fields.len()),
            });
        }
        rows.push(parse_row(&fields, n)?);
    }
    if !seen_header {
        return Err(Error::Malformed { line: 1, message: "empty file".into() });
    }
    Ok(rows)
}

pub fn read_embedding_from<R: BufRead>(input: R) -> Result<Vec<EmbeddingRow>> {
    read_csv(input, EMBEDDING_HEADER, 7, |f, line| {
        Ok(EmbeddingRow {
            generation: cell(Some(f[0]), "gen", line)?,
            member_index: cell(Some(f[1]), "idx", line)?,
            e1: cell(Some(f[2]), "e1", line)?,
            e2: cell(Some(f[3]), "e2", line)?,
            score: cell(Some(f[4]), "score", line)?,
            space: cell(Some(f[5]), "space", line)?,
            stride: cell(Some(f[6]), "stride", line)?,
        })
    })
}

pub fn read_embedding(path: impl AsRef<Path>) -> Result<Vec<EmbeddingRow>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_embedding_from(BufReader::new(file))
}

pub fn write_hv_trace_to<W: Write>(trace: &HypervolumeTrace, mut out: W) -> std::io::Result<()> {
    writeln!(out, "{HV_HEADER}")?;
    for (g, v) in trace.values.iter().enumerate() {
        writeln!(out, "{g},{}", fmt_real(*v))?;
    }
    out.flush()
}

pub fn write_hv_trace(trace: &HypervolumeTrace, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_hv_trace_to(trace, create(path)?).map_err(|e| Error::io(path, e))
}

/// Reads a trace file. The reference point is not stored in the file, so the
/// returned trace carries an empty one.
pub fn read_hv_trace_from<R: BufRead>(input: R) -> Result<HypervolumeTrace> {
    let mut expected = 0usize;
    let values = read_csv(input, HV_HEADER, 2, |f, line| {
        let g: usize = cell(Some(f[0]), "gen", line)?;
        if g != expected {
            return Err(Error::Invariant { line, message: format!("generation {g} out of order") });
        }
        expected += 1;
        cell(Some(f[1]), "hv", line)
    })?;
    Ok(HypervolumeTrace { reference: Vec::new(), values })
}

pub fn read_hv_trace(path: impl AsRef<Path>) -> Result<HypervolumeTrace> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_hv_trace_from(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::EmbeddedPoint;

    fn fixture() -> (Embedding, ExplorationProfile) {
        let points = vec![
            EmbeddedPoint { e1: 0.1, e2: -0.2, generation: 1, member_index: 1 },
            EmbeddedPoint { e1: -1.0 / 3.0, e2: 0.0, generation: 0, member_index: 0 },
            EmbeddedPoint { e1: 2.5, e2: 1e-300, generation: 1, member_index: 0 },
            EmbeddedPoint { e1: 0.7, e2: 0.7, generation: 0, member_index: 1 },
        ];
        let emb = Embedding {
            space: Space::Objective,
            points,
            stride: 3,
            eigenvalues: (2.0, 1.0),
            degenerate: false,
        };
        let profile = ExplorationProfile::from_distances(
            Space::Search,
            vec![vec![1.0, 3.0], vec![0.5, 0.25]],
        )
        .unwrap();
        (emb, profile)
    }

    #[test]
    fn rows_sorted_and_round_trip() {
        let (emb, prof) = fixture();
        let rows = embedding_rows(&emb, &prof).unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.generation, r.member_index)).collect();
        assert_eq!(keys, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let mut buf = Vec::new();
        write_embedding_rows_to(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("gen,idx,e1,e2,score,space,stride\n"));
        assert_eq!(text.lines().count(), 5);
        assert_eq!(read_embedding_from(text.as_bytes()).unwrap(), rows);
        assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r.score)));
    }

    #[test]
    fn missing_scores_rejected() {
        let (emb, _) = fixture();
        let short = ExplorationProfile::from_distances(Space::Search, vec![vec![1.0, 2.0]]).unwrap();
        assert!(embedding_rows(&emb, &short).is_err());
    }

    #[test]
    fn hv_round_trip() {
        let trace = HypervolumeTrace { reference: vec![1.0, 1.0], values: vec![0.0, 0.1, 0.123456789] };
        let mut buf = Vec::new();
        write_hv_trace_to(&trace, &mut buf).unwrap();
        let back = read_hv_trace_from(buf.as_slice()).unwrap();
        assert_eq!(back.values, trace.values);
    }

    #[test]
    fn bad_header() {
        assert!(matches!(
            read_hv_trace_from("generation,hv\n0,1\n".as_bytes()),
            Err(Error::Malformed { line: 1, .. })
        ));
    }
}
