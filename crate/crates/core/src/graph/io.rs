use std::collections::HashSet;
use std::io::{BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

/// Writes the canonical text form: `n` on the first line, then one `u v`
/// line per edge with `u < v`, lexicographically ordered.
pub fn write_graph<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "{}", g.n())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn read_graph<R: BufRead>(r: R) -> Result<Graph> {
    let mut text = String::new();
    for line in r.lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    parse_graph(&text)
}

/// Parses the text graph format. Lines starting with `#` and blank edge
/// lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let Some(count) = n else {
            n = Some(
                line.parse()
                    .map_err(|_| err(format!("expected vertex count, got {line:?}")))?,
            );
            continue;
        };
        let mut parts = line.split_whitespace();
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(format!("expected \"u v\", got {line:?}")));
        };
        let u: usize = a.parse().map_err(|_| err(format!("bad vertex {a:?}")))?;
        let v: usize = b.parse().map_err(|_| err(format!("bad vertex {b:?}")))?;
        if u >= v {
            return Err(err(format!("edge endpoints must be ascending: {u} {v}")));
        }
        if v >= count {
            return Err(err(format!("vertex {v} out of range for n = {count}")));
        }
        if !seen.insert((u, v)) {
            return Err(err(format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    Graph::from_edges(n, edges)
}
