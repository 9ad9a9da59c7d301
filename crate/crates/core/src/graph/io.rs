//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `u < v`, 0-indexed, each newline-terminated.

use std::io::{BufRead, Write};

use super::{Graph, GraphError, Result};

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.vertex_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Reads the format written by [`write_edge_list`]. Blank lines are skipped;
/// edges must be written with `u < v`, and duplicates or loops are rejected.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
    let mut lines = input.lines().enumerate().filter_map(|(i, l)| match l {
        Ok(l) if l.trim().is_empty() => None,
        other => Some((i + 1, other)),
    });
    let (line, header) = lines
        .next()
        .ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
    let [n, m] = parse_pair(&header?, line)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines.by_ref().take(m) {
        let [u, v] = parse_pair(&text?, line)?;
        if u >= v {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            return Err(GraphError::Parse { line, msg: format!("edge {u} {v} not written with u < v") });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(GraphError::Parse { line, msg: "trailing content after edges".into() });
    }
    Graph::from_edges(n, &edges)
}

fn parse_pair(text: &str, line: usize) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok([a, b]),
        _ => Err(GraphError::Parse { line, msg: format!("expected two integers, got {text:?}") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::cycle(6);
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert!(String::from_utf8(buf.clone()).unwrap().starts_with("6 6\n0 1\n0 5\n"));
        assert_eq!(read_edge_list(&buf[..]).unwrap(), g);
    }

    #[test]
    fn rejects_duplicates_and_loops() {
        assert_eq!(
            read_edge_list(&b"3 2\n0 1\n0 1\n"[..]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(read_edge_list(&b"3 1\n2 2\n"[..]), Err(GraphError::SelfLoop(2)));
        assert!(read_edge_list(&b"3 2\n0 1\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1\n0 x\n"[..]).is_err());
        assert!(read_edge_list(&b"3 1\n1 0\n"[..]).is_err());
    }
}
