use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{DirectedGraph, VIRTUAL_ROOT_LABEL};
use crate::error::{Error, Result};

/// Reads a SNAP-style edge list.
///
/// Lines starting with `#` are comments. Each data line holds a source and
/// a target label followed by optional columns; the first extra column is
/// kept as the attribute of the source node (or of the target, if the
/// target has not been given one yet) the first time that node is seen.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<DirectedGraph> {
    let mut edges: Vec<(u64, u64)> = Vec::new();
    let mut attrs: HashMap<u64, String> = HashMap::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let src = parse_label(tokens.next(), line_no)?;
        let dst = parse_label(tokens.next(), line_no)?;
        if let Some(extra) = tokens.next() {
            attrs.entry(src).or_insert_with(|| extra.to_string());
            attrs.entry(dst).or_insert_with(|| extra.to_string());
        }
        edges.push((src, dst));
    }
    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }

    let graph = DirectedGraph::from_label_edges(&edges)?;
    if attrs.is_empty() {
        return Ok(graph);
    }
    let attributes = graph.labels().iter().map(|l| attrs.remove(l)).collect();
    graph.with_attributes(attributes)
}

pub fn load_edge_list_path(path: impl AsRef<Path>) -> Result<DirectedGraph> {
    load_edge_list(BufReader::new(File::open(path)?))
}

fn parse_label(token: Option<&str>, line: usize) -> Result<u64> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: "expected two node labels".into(),
    })?;
    let label: u64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("node label {token:?} is not a non-negative integer"),
    })?;
    if label == VIRTUAL_ROOT_LABEL {
        return Err(Error::Parse {
            line,
            message: format!("node label {label} is reserved"),
        });
    }
    Ok(label)
}

/// Writes the graph in the same tab-separated format `load_edge_list` reads.
pub fn write_edge_list<W: Write>(graph: &DirectedGraph, mut out: W) -> Result<()> {
    writeln!(out, "# Directed graph")?;
    writeln!(out, "# Nodes: {} Edges: {}", graph.node_count(), graph.edge_count())?;
    writeln!(out, "# FromNodeId\tToNodeId")?;
    for (u, v) in graph.label_edges() {
        writeln!(out, "{u}\t{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<DirectedGraph> {
        load_edge_list(text.as_bytes())
    }

    #[test]
    fn minimal_chain() {
        let g = load("0 1\n1 2\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn comments_and_duplicates() {
        let g = load("# comment\n5 7\n5 7\n").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(g.labels(), &[5, 7]);
    }

    #[test]
    fn trailing_columns_become_attributes() {
        let g = load("1 2 1082040961\n2 3 1082155839\n").unwrap();
        assert_eq!(g.attributes()[0].as_deref(), Some("1082040961"));
        assert_eq!(g.attributes()[1].as_deref(), Some("1082040961"));
        assert_eq!(g.attributes()[2].as_deref(), Some("1082155839"));
    }

    #[test]
    fn malformed_line_reports_number() {
        match load("0 1\n# ok\n2 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("7\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("-1 2\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(load(""), Err(Error::EmptyInput)));
        assert!(matches!(load("# only\n\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn write_then_read() {
        let g = load("3 1\n1 2\n2 3\n").unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let h = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g.label_edges(), h.label_edges());
    }
}
