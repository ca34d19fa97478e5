//! Text edge-list format.
//!
//! ```text
//! # bridgegap-graph v1
//! # n1=<int> n2=<int>
//! <u> <v>
//! ...
//! ```
//!
//! Edges are written with `u < v`, one per line, in lexicographic order.
//! Readers reject any other header.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{CommunityGraph, GraphError};

pub const MAGIC: &str = "# bridgegap-graph v1";

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: expected header `{expected}`")]
    BadHeader { line: usize, expected: &'static str },
    #[error("line {line}: malformed edge `{text}`")]
    BadEdge { line: usize, text: String },
    #[error("line {line}: edge ({u}, {v}) must be written with u < v in sorted order")]
    NotCanonical { line: usize, u: u32, v: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn write<W: Write>(g: &CommunityGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "# n1={} n2={}", g.n1(), g.n2())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn to_string(g: &CommunityGraph) -> String {
    let mut buf = Vec::new();
    write(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn write_file<P: AsRef<Path>>(g: &CommunityGraph, path: P) -> io::Result<()> {
    write(g, BufWriter::new(File::create(path)?))
}

pub fn read<R: BufRead>(input: R) -> Result<CommunityGraph, EdgeListError> {
    let mut lines = input.lines();

    let first = lines.next().transpose()?;
    if first.as_deref() != Some(MAGIC) {
        return Err(EdgeListError::BadHeader {
            line: 1,
            expected: MAGIC,
        });
    }
    let sizes = match lines.next() {
        Some(l) => parse_sizes(&l?),
        None => None,
    };
    let (n1, n2) = sizes.ok_or(EdgeListError::BadHeader {
        line: 2,
        expected: "# n1=<int> n2=<int>",
    })?;

    let mut edges = Vec::new();
    let mut prev: Option<(u32, u32)> = None;
    for (i, line) in lines.enumerate() {
        let line = line?;
        let lineno = i + 3;
        let bad = || EdgeListError::BadEdge {
            line: lineno,
            text: line.clone(),
        };
        let (a, b) = line.split_once(' ').ok_or_else(bad)?;
        let u: u32 = parse_canonical(a).ok_or_else(bad)?;
        let v: u32 = parse_canonical(b).ok_or_else(bad)?;
        if u >= v || prev.is_some_and(|p| p >= (u, v)) {
            return Err(EdgeListError::NotCanonical { line: lineno, u, v });
        }
        prev = Some((u, v));
        edges.push((u, v));
    }
    Ok(CommunityGraph::build(n1, n2, edges)?)
}

pub fn from_str(s: &str) -> Result<CommunityGraph, EdgeListError> {
    read(s.as_bytes())
}

pub fn read_file<P: AsRef<Path>>(path: P) -> Result<CommunityGraph, EdgeListError> {
    read(BufReader::new(File::open(path)?))
}

fn parse_sizes(line: &str) -> Option<(usize, usize)> {
    let rest = line.strip_prefix("# n1=")?;
    let (a, b) = rest.split_once(" n2=")?;
    Some((parse_canonical(a)?, parse_canonical(b)?))
}

/// Plain decimal with no sign, padding or leading zeros.
fn parse_canonical<T: std::str::FromStr>(s: &str) -> Option<T> {
    let ok = !s.is_empty()
        && s.bytes().all(|c| c.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if ok {
        s.parse().ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_text() {
        let g = CommunityGraph::build(2, 1, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(
            to_string(&g),
            "# bridgegap-graph v1\n# n1=2 n2=1\n0 1\n0 2\n"
        );
    }

    #[test]
    fn rejects_other_headers() {
        assert!(matches!(
            from_str("# some-graph v1\n# n1=2 n2=1\n"),
            Err(EdgeListError::BadHeader { line: 1, .. })
        ));
        assert!(matches!(
            from_str("# bridgegap-graph v1\n# n1=2\n"),
            Err(EdgeListError::BadHeader { line: 2, .. })
        ));
        assert!(matches!(
            from_str("# bridgegap-graph v1\n"),
            Err(EdgeListError::BadHeader { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_non_canonical_edges() {
        let head = "# bridgegap-graph v1\n# n1=2 n2=1\n";
        assert!(matches!(
            from_str(&format!("{head}1 0\n")),
            Err(EdgeListError::NotCanonical { line: 3, .. })
        ));
        assert!(matches!(
            from_str(&format!("{head}0 2\n0 1\n")),
            Err(EdgeListError::NotCanonical { line: 4, .. })
        ));
        assert!(matches!(
            from_str(&format!("{head}0  1\n")),
            Err(EdgeListError::BadEdge { line: 3, .. })
        ));
        assert!(matches!(
            from_str(&format!("{head}0 7\n")),
            Err(EdgeListError::Graph(GraphError::IndexOutOfRange { .. }))
        ));
    }
}
