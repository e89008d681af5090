//! Plain-text edge lists: one `u v` pair per line, 0-based vertex ids.
//!
//! Output is canonical: `u < v`, lines sorted lexicographically, each line
//! terminated by `\n`. Input accepts either orientation, blank lines and `#`
//! comments, and rejects self-loops and duplicate edges with the offending
//! line number.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::netgen::Graph;

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge lists are ASCII")
}

/// Reads an edge list. The vertex count is one more than the largest id
/// mentioned, or `n` if given and large enough.
pub fn read_edge_list<R: BufRead>(input: R, n: Option<usize>) -> Result<Graph> {
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut max_id = None;
    for (index, line) in input.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!("expected 'u v', found '{text}'")));
        }
        let id = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(format!("'{s}' is not a vertex id")))
        };
        let (u, v) = (id(fields[0])?, id(fields[1])?);
        if u == v {
            return Err(parse_err(format!("self-loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if let Some(first) = seen.insert(key, line_no) {
            return Err(parse_err(format!(
                "duplicate edge {} {} (first seen on line {first})",
                key.0, key.1
            )));
        }
        max_id = max_id.max(Some(key.1));
        edges.push(key);
    }
    let needed = max_id.map_or(0, |m| m + 1);
    let n = match n {
        Some(n) if n < needed => {
            return Err(Error::InvalidGraph(format!(
                "vertex id {} does not fit n = {n}",
                needed - 1
            )))
        }
        Some(n) => n,
        None => needed,
    };
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_output() {
        let g = Graph::from_edges(4, [(2, 0), (3, 1), (1, 0)]).unwrap();
        assert_eq!(edge_list_string(&g), "0 1\n0 2\n1 3\n");
    }

    #[test]
    fn reads_star_with_comments() {
        let text = "# star\n0 1\n\n2 0\n0 3  # hub\n";
        let g = read_edge_list(text.as_bytes(), None).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = read_edge_list("0 1\n1 2\n2 1\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_edge_list("0 1\n4 4\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_edge_list("0 x\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_edge_list("0 1 2\n".as_bytes(), None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_input_is_an_empty_graph() {
        let g = read_edge_list("".as_bytes(), None).unwrap();
        assert_eq!((g.n(), g.edge_count()), (0, 0));
        let g = read_edge_list("0 1\n".as_bytes(), Some(5)).unwrap();
        assert_eq!(g.n(), 5);
        assert!(read_edge_list("0 7\n".as_bytes(), Some(5)).is_err());
    }
}
