//! Text form of update streams: one update per line, `+ u v` or `- u v`.

use std::io::{BufRead, BufReader, Read, Write};

use super::StreamError;
use crate::dyngraph::{DynGraph, EdgeUpdate, GraphError};

pub fn write_stream<W: Write>(mut out: W, updates: &[EdgeUpdate]) -> std::io::Result<()> {
    for upd in updates {
        writeln!(out, "{upd}")?;
    }
    out.flush()
}

/// Parses one `+ u v` / `- u v` line.
pub fn parse_update(text: &str) -> Option<EdgeUpdate> {
    let mut fields = text.split_whitespace();
    let op = fields.next()?;
    let u = fields.next()?.parse().ok()?;
    let v = fields.next()?.parse().ok()?;
    if fields.next().is_some() {
        return None;
    }
    match op {
        "+" => Some(EdgeUpdate::insert(u, v)),
        "-" => Some(EdgeUpdate::delete(u, v)),
        _ => None,
    }
}

/// Reads a stream, skipping blank lines.
pub fn read_stream<R: Read>(reader: R) -> Result<Vec<EdgeUpdate>, StreamError> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let upd = parse_update(&line).ok_or_else(|| StreamError::Parse {
            line: i + 1,
            msg: format!("expected '+ u v' or '- u v', got '{line}'"),
        })?;
        out.push(upd);
    }
    Ok(out)
}

/// Applies `updates` to an empty graph on `n` vertices. On failure returns the
/// index of the offending update with the error.
pub fn replay(n: usize, updates: &[EdgeUpdate]) -> Result<DynGraph, (usize, GraphError)> {
    let mut g = DynGraph::new(n).map_err(|e| (0, e))?;
    for (i, upd) in updates.iter().enumerate() {
        g.apply(upd).map_err(|e| (i, e))?;
    }
    Ok(g)
}
