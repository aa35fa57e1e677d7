//! Text form of a marked graph.
//!
//! ```text
//! 2 0 / v1 L - / v2 - M / e v1 v2
//! ```
//!
//! Records are separated by `/` or newlines. The header gives the vertex
//! count and the number of free loops; then come one record per vertex
//! (`<id> <L|-> <M|->`) and any number of edge records (`e <id> <id>`).
//! `#` starts a comment running to the end of the line.

use super::{GraphError, MarkedGraph};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphParseErrorKind {
    #[error("missing header `<vertices> <free loops>`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("expected {expected} vertex records, found {found}")]
    MissingVertices { expected: usize, found: usize },
    #[error("malformed vertex record: {0}")]
    BadVertex(String),
    #[error("malformed edge record: {0}")]
    BadEdge(String),
    #[error("invalid id `{0}` (ids are alphanumeric)")]
    BadId(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct GraphParseError {
    pub line: usize,
    pub column: usize,
    pub kind: GraphParseErrorKind,
}

#[derive(Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

type Record<'a> = Vec<Token<'a>>;

fn flush<'a>(line: &'a str, line_no: usize, start: &mut Option<usize>, end: usize, current: &mut Record<'a>) {
    if let Some(s) = start.take() {
        current.push(Token {
            text: &line[s..end],
            line: line_no + 1,
            column: s + 1,
        });
    }
}

fn records(text: &str) -> Vec<Record<'_>> {
    let mut out = Vec::new();
    let mut current: Record = Vec::new();
    for (line_no, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut start: Option<usize> = None;
        for (pos, ch) in line.char_indices() {
            if ch == '/' {
                flush(line, line_no, &mut start, pos, &mut current);
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            } else if ch.is_whitespace() {
                flush(line, line_no, &mut start, pos, &mut current);
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        flush(line, line_no, &mut start, line.len(), &mut current);
        if !current.is_empty() {
            out.push(std::mem::take(&mut current));
        }
    }
    out
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn err(tok: &Token<'_>, kind: GraphParseErrorKind) -> GraphParseError {
    GraphParseError {
        line: tok.line,
        column: tok.column,
        kind,
    }
}

fn record_text(rec: &Record<'_>) -> String {
    rec.iter().map(|t| t.text).collect::<Vec<_>>().join(" ")
}

pub fn parse(text: &str) -> Result<MarkedGraph, GraphParseError> {
    let recs = records(text);
    let Some(header) = recs.first() else {
        return Err(GraphParseError {
            line: 1,
            column: 1,
            kind: GraphParseErrorKind::MissingHeader,
        });
    };
    let bad_header = || err(&header[0], GraphParseErrorKind::BadHeader(record_text(header)));
    if header.len() != 2 {
        return Err(bad_header());
    }
    let n: usize = header[0].text.parse().map_err(|_| bad_header())?;
    let free_loops: usize = header[1].text.parse().map_err(|_| bad_header())?;

    let mut g = MarkedGraph::free_loops_only(free_loops);
    let vertex_recs = &recs[1..];
    if vertex_recs.len() < n {
        let anchor = recs.last().and_then(|r| r.last()).unwrap_or(&header[0]);
        return Err(err(
            anchor,
            GraphParseErrorKind::MissingVertices {
                expected: n,
                found: vertex_recs.len(),
            },
        ));
    }
    for rec in &vertex_recs[..n] {
        let bad = || err(&rec[0], GraphParseErrorKind::BadVertex(record_text(rec)));
        if rec.len() != 3 {
            return Err(bad());
        }
        if !valid_id(rec[0].text) {
            return Err(err(&rec[0], GraphParseErrorKind::BadId(rec[0].text.into())));
        }
        let looped = match rec[1].text {
            "L" => true,
            "-" => false,
            _ => return Err(bad()),
        };
        let marked = match rec[2].text {
            "M" => true,
            "-" => false,
            _ => return Err(bad()),
        };
        g.add_vertex(rec[0].text, looped, marked)
            .map_err(|e| err(&rec[0], e.into()))?;
    }
    for rec in &recs[n + 1..] {
        if rec.len() != 3 || rec[0].text != "e" {
            return Err(err(&rec[0], GraphParseErrorKind::BadEdge(record_text(rec))));
        }
        g.add_edge(rec[1].text, rec[2].text)
            .map_err(|e| err(&rec[1], e.into()))?;
    }
    Ok(g)
}

impl FromStr for MarkedGraph {
    type Err = GraphParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl fmt::Display for MarkedGraph {
    /// Single-line text form, records joined by ` / `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} /", self.len(), self.free_loops())?;
        for v in self.vertices() {
            write!(
                f,
                " {} {} {} /",
                v.id,
                if v.looped { "L" } else { "-" },
                if v.marked { "M" } else { "-" }
            )?;
        }
        for (i, j) in self.edges() {
            write!(f, " e {} {} /", self.vertex(i).id, self.vertex(j).id)?;
        }
        Ok(())
    }
}
