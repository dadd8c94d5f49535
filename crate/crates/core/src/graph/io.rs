//! Plain-text graph format.
//!
//! ```text
//! V E
//! u v            (E lines, 0-based ids)
//! DEGREES        (optional)
//! u n(u)         (ambient degree overrides)
//! ```
//!
//! The writer emits edges as `u v` with `u < v` in lexicographic order and a
//! `DEGREES` section listing, in increasing id order, exactly the vertices
//! whose ambient degree differs from their window degree. Writing a parsed
//! canonical file reproduces it byte for byte.

use std::fmt::Write as _;

use super::{GraphBuilder, GraphError, GraphWindow, VertexId};

pub fn write_graph(w: &GraphWindow) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", w.vertex_count(), w.edge_count());
    for (u, v) in w.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    let overrides: Vec<VertexId> = w.vertices().filter(|&v| !w.is_complete(v)).collect();
    if !overrides.is_empty() {
        out.push_str("DEGREES\n");
        for v in overrides {
            let _ = writeln!(out, "{} {}", v, w.ambient_degree(v));
        }
    }
    out
}

pub fn parse_graph(text: &str) -> Result<GraphWindow, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let (v, e) = parse_pair::<usize>(line, header)?;
    let mut builder = GraphBuilder::new(v);
    for _ in 0..e {
        let (line, text) = lines.next().ok_or(GraphError::Parse {
            line,
            message: format!("expected {e} edge lines"),
        })?;
        let (a, b) = parse_pair::<VertexId>(line, text)?;
        builder.add_edge(a, b);
    }
    if let Some((line, text)) = lines.next() {
        if text != "DEGREES" {
            return Err(GraphError::Parse {
                line,
                message: format!("expected DEGREES section, found {text:?}"),
            });
        }
        for (line, text) in lines {
            let (a, d) = parse_pair::<u32>(line, text)?;
            builder.set_ambient_degree(a, d);
        }
    }
    builder.build()
}

fn parse_pair<T: std::str::FromStr>(line: usize, text: &str) -> Result<(T, T), GraphError> {
    let bad = || GraphError::Parse {
        line,
        message: format!("expected two integers, found {text:?}"),
    };
    let mut parts = text.split_whitespace();
    let a = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let b = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((a, b))
}
