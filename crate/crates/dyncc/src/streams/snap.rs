use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use super::StreamError;
use crate::dyngraph::Vertex;

/// An undirected simple graph read from a SNAP edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnapGraph {
    pub n: usize,
    /// Edges `(u, v)` with `u < v` in remapped ids, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
    /// Original id of each remapped vertex, ascending.
    pub original_ids: Vec<u64>,
}

/// Parses a SNAP edge list: `#` lines are comments, every other non-blank
/// line holds two whitespace-separated non-negative ids. Direction, duplicates
/// and self-loops are dropped; every id that appears (even only in a
/// self-loop) becomes a vertex, remapped to `0..n` in ascending order.
pub fn parse_snap<R: Read>(reader: R) -> Result<SnapGraph, StreamError> {
    let mut ids: BTreeSet<u64> = BTreeSet::new();
    let mut pairs: BTreeSet<(u64, u64)> = BTreeSet::new();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut fields = text.split_whitespace();
        let mut id = |what: &str| -> Result<u64, StreamError> {
            let raw = fields.next().ok_or_else(|| StreamError::Parse {
                line: i + 1,
                msg: format!("missing {what} vertex id"),
            })?;
            raw.parse::<u64>().map_err(|_| StreamError::Parse {
                line: i + 1,
                msg: format!("'{raw}' is not a vertex id"),
            })
        };
        let a = id("first")?;
        let b = id("second")?;
        ids.insert(a);
        ids.insert(b);
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let original_ids: Vec<u64> = ids.into_iter().collect();
    let remap: BTreeMap<u64, Vertex> = original_ids.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut edges: Vec<(Vertex, Vertex)> = pairs.into_iter().map(|(a, b)| (remap[&a], remap[&b])).collect();
    edges.sort_unstable();
    Ok(SnapGraph { n: original_ids.len(), edges, original_ids })
}

pub fn load_snap_edgelist(path: impl AsRef<Path>) -> Result<SnapGraph, StreamError> {
    parse_snap(File::open(path)?)
}
