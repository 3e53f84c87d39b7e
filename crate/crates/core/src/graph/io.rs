//! Line-oriented text format:
//!
//! ```text
//! # comment
//! n d [weighted]
//! u v [w]
//! ```
//!
//! Ids are 0-based and each undirected edge is listed once.

use std::fs;
use std::path::Path;

use super::{Graph, GraphBuilder, Weight};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_usize(line: usize, field: &str, what: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{field}`")))
}

impl Graph {
    /// Parses the text format, validating every graph invariant.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header `n d [weighted]`"))?;
        let weighted = match header.as_slice() {
            [_, _] => false,
            [_, _, flag] if *flag == "weighted" => true,
            _ => return Err(Error::parse(hline, "header must be `n d [weighted]`")),
        };
        let n = parse_usize(hline, header[0], "vertex count")?;
        let d = parse_usize(hline, header[1], "degree bound")?;

        let mut builder = GraphBuilder::new(n, d, weighted);
        for (line, fields) in lines {
            let (u, v, w) = match (fields.as_slice(), weighted) {
                ([u, v], false) => (u, v, None),
                ([u, v, w], true) => (u, v, Some(w)),
                ([_, _], true) => return Err(Error::parse(line, "weighted graph needs `u v w`")),
                ([_, _, _], false) => {
                    return Err(Error::parse(line, "unweighted graph takes `u v` only"))
                }
                _ => return Err(Error::parse(line, "expected an edge line")),
            };
            let u = parse_usize(line, u, "vertex id")?;
            let v = parse_usize(line, v, "vertex id")?;
            let w = w
                .map(|w| w.parse::<Weight>().map_err(|e| Error::parse(line, e)))
                .transpose()?;
            builder.add(u, v, w).map_err(|e| Error::parse(line, e))?;
        }
        Ok(builder.finish())
    }

    /// Serializes in rank order; equal graphs give identical bytes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}", self.vertex_count(), self.degree_bound()));
        if self.is_weighted() {
            out.push_str(" weighted");
        }
        out.push('\n');
        for (e, w) in self.edges() {
            if self.is_weighted() {
                out.push_str(&format!("{} {} {}\n", e.lo(), e.hi(), w));
            } else {
                out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
            }
        }
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Graph> {
        Graph::parse(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# a path\n3 2\n\n0 1  # first\n1 2\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_weighted());
    }

    #[test]
    fn weighted_round_trip() {
        let text = "3 2 weighted\n0 1 2.5\n1 2 1\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.to_text(), text);
    }

    fn err_line(text: &str) -> usize {
        match Graph::parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(err_line("3 2\n0 1\n1 1\n"), 3);
        assert_eq!(err_line("3 2\n0 1\n\n0 1\n"), 4);
        assert_eq!(err_line("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(err_line("3 2 weighted\n0 1 0.5\n"), 2);
        assert_eq!(err_line("3 2 weighted\n0 1\n"), 2);
        assert_eq!(err_line("3 2\n0 5\n"), 2);
        assert_eq!(err_line("3 x\n"), 1);
        assert_eq!(err_line("# only comments\n"), 1);
    }
}
