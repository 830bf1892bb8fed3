//! Text and JSON graph formats, plus DOT export.
//!
//! Text format: one `u v` edge or a lone `u` vertex per line; blank lines
//! and lines starting with `#` are skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{GraphError, Position, SimplicialGraph};

/// Wire form of a graph: `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl From<&SimplicialGraph> for GraphJson {
    fn from(g: &SimplicialGraph) -> Self {
        GraphJson {
            vertices: g.names().to_vec(),
            edges: g.edge_names(),
        }
    }
}

pub fn parse_text(src: &str) -> Result<SimplicialGraph, GraphError> {
    // vertex -> first position seen, edges with their positions
    let mut vertices: BTreeMap<&str, ()> = BTreeMap::new();
    let mut edges: Vec<(&str, &str, Position)> = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
            tokens.push((&rest[start..start + len], offset + start));
            offset += start + len;
            rest = &rest[start + len..];
        }
        let pos = |col: usize| Position {
            line: ln + 1,
            column: line[..col].chars().count() + 1,
        };
        match tokens.as_slice() {
            [(u, _)] => {
                vertices.insert(u, ());
            }
            [(u, cu), (v, _)] => {
                vertices.insert(u, ());
                vertices.insert(v, ());
                edges.push((u, v, pos(*cu)));
            }
            [_, _, (_, c), ..] => {
                return Err(GraphError::Parse {
                    position: pos(*c),
                    message: "expected `u v` or a single vertex".into(),
                })
            }
            [] => unreachable!(),
        }
    }
    let mut g = SimplicialGraph::new(vertices.keys(), Vec::<(&str, &str)>::new())?;
    for (u, v, p) in edges {
        let i = g.index_of(u).expect("declared above");
        let j = g.index_of(v).expect("declared above");
        g.insert_edge(i, j, Some(p))?;
    }
    Ok(g)
}

pub fn parse_json(src: &str) -> Result<SimplicialGraph, GraphError> {
    let wire: GraphJson = serde_json::from_str(src).map_err(|e| GraphError::Parse {
        position: Position {
            line: e.line(),
            column: e.column(),
        },
        message: e.to_string(),
    })?;
    wire.try_into()
}

impl TryFrom<GraphJson> for SimplicialGraph {
    type Error = GraphError;

    fn try_from(w: GraphJson) -> Result<Self, GraphError> {
        SimplicialGraph::new(&w.vertices, w.edges.iter().map(|(u, v)| (u, v)))
    }
}

/// JSON if the first non-blank character is `{`, edge list otherwise.
pub fn parse_graph(src: &str) -> Result<SimplicialGraph, GraphError> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn to_text(g: &SimplicialGraph) -> String {
    let mut out = String::new();
    for i in 0..g.vertex_count() {
        if g.degree(i) == 0 {
            writeln!(out, "{}", g.name(i)).unwrap();
        }
    }
    for (u, v) in g.edge_names() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(g: &SimplicialGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", dot_id(name));
    for v in g.names() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    for (u, v) in g.edge_names() {
        writeln!(out, "  {} -- {};", dot_id(&u), dot_id(&v)).unwrap();
    }
    out.push_str("}\n");
    out
}
