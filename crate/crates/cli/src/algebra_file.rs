//! Line-oriented algebra descriptions.
//!
//! ```text
//! # Kronecker quiver
//! vertices: 2
//! arrow a: 1 -> 2
//! arrow b: 1 -> 2
//! loewy_bound: 1
//! ```
//!
//! `loewy_bound: L` means all paths of length `L + 1` vanish. It may be
//! omitted for acyclic quivers, in which case the longest path length is used
//! and the algebra is the full path algebra.

use std::collections::HashSet;
use std::fmt;

use repvar::{Arrow, Quiver, TruncatedAlgebra};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// A token together with its 1-based column.
#[derive(Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tok<'a>(line: &'a str, piece: &'a str) -> Tok<'a> {
    let trimmed = piece.trim();
    let offset = piece.as_ptr() as usize - line.as_ptr() as usize;
    let lead = piece.len() - piece.trim_start().len();
    Tok {
        text: trimmed,
        col: offset + lead + 1,
    }
}

fn parse_int(t: Tok<'_>, line: usize, what: &str) -> Result<i64, ParseError> {
    t.text.parse::<i64>().map_err(|_| {
        err(
            line,
            t.col,
            format!("expected an integer for {what}, found `{}`", t.text),
        )
    })
}

struct PendingArrow {
    name: String,
    source: (i64, usize),
    target: (i64, usize),
    line: usize,
}

pub fn parse_algebra(text: &str) -> Result<TruncatedAlgebra, ParseError> {
    let mut vertices: Option<(usize, usize)> = None;
    let mut loewy: Option<usize> = None;
    let mut arrows: Vec<PendingArrow> = Vec::new();
    let mut names = HashSet::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            let t = tok(line, line);
            return Err(err(ln, t.col, format!("expected `key: value`, found `{}`", t.text)));
        };
        let key = tok(line, &line[..colon]);
        let value = tok(line, &line[colon + 1..]);
        if key.text == "vertices" {
            if vertices.is_some() {
                return Err(err(ln, key.col, "`vertices` given twice"));
            }
            let n = parse_int(value, ln, "vertices")?;
            if n < 1 {
                return Err(err(ln, value.col, "a quiver needs at least one vertex"));
            }
            vertices = Some((n as usize, ln));
        } else if key.text == "loewy_bound" {
            if loewy.is_some() {
                return Err(err(ln, key.col, "`loewy_bound` given twice"));
            }
            let l = parse_int(value, ln, "loewy_bound")?;
            if l < 0 {
                return Err(err(
                    ln,
                    value.col,
                    format!("Loewy bound must be non-negative, found {l}"),
                ));
            }
            loewy = Some(l as usize);
        } else if let Some(rest) = key.text.strip_prefix("arrow") {
            let name_piece = &line[..colon][key.col - 1 + 5..];
            let name = tok(line, name_piece);
            if !rest.starts_with(char::is_whitespace) || name.text.is_empty() {
                return Err(err(ln, key.col, "expected `arrow NAME: i -> j`"));
            }
            if name.text.contains(char::is_whitespace) || name.text.contains(['*', ',', ';']) {
                return Err(err(ln, name.col, format!("invalid arrow name `{}`", name.text)));
            }
            if !names.insert(name.text.to_string()) {
                return Err(err(ln, name.col, format!("duplicate arrow name `{}`", name.text)));
            }
            let body = &line[colon + 1..];
            let Some(arrow_at) = body.find("->") else {
                return Err(err(ln, value.col, "expected `i -> j`"));
            };
            let s = tok(line, &body[..arrow_at]);
            let t = tok(line, &body[arrow_at + 2..]);
            arrows.push(PendingArrow {
                name: name.text.to_string(),
                source: (parse_int(s, ln, "arrow source")?, s.col),
                target: (parse_int(t, ln, "arrow target")?, t.col),
                line: ln,
            });
        } else {
            return Err(err(ln, key.col, format!("unknown key `{}`", key.text)));
        }
    }

    let Some((n, _)) = vertices else {
        return Err(err(last_line.max(1), 1, "missing `vertices: n`"));
    };
    let mut built = Vec::with_capacity(arrows.len());
    for a in &arrows {
        for (v, col) in [a.source, a.target] {
            if v < 1 || v as usize > n {
                return Err(err(a.line, col, format!("unknown vertex {v}; vertices are 1..{n}")));
            }
        }
        built.push(Arrow {
            name: a.name.clone(),
            source: a.source.0 as usize - 1,
            target: a.target.0 as usize - 1,
        });
    }
    let quiver = Quiver::new(n, built).map_err(|e| err(1, 1, e.to_string()))?;
    let l = match loewy {
        Some(l) => l,
        None => quiver.longest_path_length().ok_or_else(|| {
            err(
                last_line.max(1),
                1,
                "`loewy_bound` is required when the quiver has an oriented cycle",
            )
        })?,
    };
    Ok(TruncatedAlgebra::new(quiver, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX29: &str = "vertices: 2\narrow a1: 1 -> 2\narrow a2: 1 -> 2\narrow b1: 2 -> 1\narrow b2: 2 -> 1\narrow b3: 2 -> 1\nloewy_bound: 3\n";

    #[test]
    fn two_vertex_fixture() {
        let a = parse_algebra(EX29).unwrap();
        assert_eq!(a.vertex_count(), 2);
        assert_eq!(a.quiver().arrows().len(), 5);
        assert_eq!(a.loewy_bound(), 3);
        assert_eq!(a.quiver().arrow(2).source, 1);
    }

    #[test]
    fn no_arrows_is_semisimple() {
        let a = parse_algebra("vertices: 3\nloewy_bound: 0\n").unwrap();
        assert_eq!(a.quiver().arrows().len(), 0);
        let b = parse_algebra("# nothing but points\nvertices: 2").unwrap();
        assert_eq!(b.loewy_bound(), 0);
    }

    #[test]
    fn diagnostics_point_at_the_token() {
        let e = parse_algebra("vertices: 2\narrow a: 1 -> 9\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        assert!(e.message.contains("unknown vertex 9"));

        let e = parse_algebra("vertices: 2\narrow a: 1 -> 2\narrow  a: 2 -> 1\nloewy_bound: 2").unwrap_err();
        assert_eq!((e.line, e.column), (3, 8));
        assert!(e.message.contains("duplicate"));

        let e = parse_algebra("vertices: 1\nloewy_bound: -1").unwrap_err();
        assert_eq!((e.line, e.column), (2, 14));

        let e = parse_algebra("vertices: 1\narrow x: 1 -> 1\n").unwrap_err();
        assert!(e.message.contains("required"));

        let e = parse_algebra("vertices 2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn acyclic_default_bound() {
        let a = parse_algebra("vertices: 3\narrow a: 1 -> 2\narrow b: 2 -> 3").unwrap();
        assert_eq!(a.loewy_bound(), 2);
    }
}
