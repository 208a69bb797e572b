//! Line-based text format for graphs and decompositions, plus DOT export.
//!
//! ```text
//! # comments run to the end of the line
//! graph P
//! vertex w
//! edge a w -> u1
//! subgraph F1 vertices w,u1 edges l,a
//! ```
//!
//! An empty id list in a `subgraph` line is written `-` (or left out).

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgeDecl, Graph, GraphDecl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

/// Everything declared in one file: the host graph and any named subgraphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: GraphDecl,
    pub subgraphs: Vec<SubgraphDecl>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    tokens
}

fn id_list(token: &str) -> Vec<String> {
    if token == "-" {
        return Vec::new();
    }
    token
        .split(',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let mut file = GraphFile::default();
    let mut named = false;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        let Some(head) = tokens.first() else { continue };
        let err = |column: usize, message: String| ParseError {
            line: line_no,
            column,
            message,
        };
        let end_column = content.trim_end().chars().count() + 1;
        let arg = |i: usize, what: &str| -> Result<&str, ParseError> {
            tokens
                .get(i)
                .map(|t| t.text)
                .ok_or_else(|| err(end_column, format!("expected {what}")))
        };
        let expect_len = |n: usize| -> Result<(), ParseError> {
            match tokens.get(n) {
                Some(extra) => Err(err(extra.column, format!("unexpected `{}`", extra.text))),
                None => Ok(()),
            }
        };
        match head.text {
            "graph" => {
                if named {
                    return Err(err(head.column, "second `graph` declaration".into()));
                }
                file.graph.name = arg(1, "graph name")?.to_string();
                expect_len(2)?;
                named = true;
            }
            "vertex" => {
                file.graph.vertices.push(arg(1, "vertex id")?.to_string());
                expect_len(2)?;
            }
            "edge" => {
                let id = arg(1, "edge id")?;
                let src = arg(2, "source vertex")?;
                let arrow = arg(3, "`->`")?;
                if arrow != "->" {
                    return Err(err(
                        tokens[3].column,
                        format!("expected `->`, found `{arrow}`"),
                    ));
                }
                let rng = arg(4, "range vertex")?;
                expect_len(5)?;
                file.graph.edges.push(EdgeDecl {
                    id: id.to_string(),
                    src: src.to_string(),
                    rng: rng.to_string(),
                });
            }
            "subgraph" => {
                let name = arg(1, "subgraph name")?.to_string();
                let mut vertices = Vec::new();
                let mut edges = Vec::new();
                let mut i = 2;
                let mut seen = (false, false);
                while i < tokens.len() {
                    let key = &tokens[i];
                    let list = match tokens.get(i + 1) {
                        Some(t) if t.text != "vertices" && t.text != "edges" => {
                            i += 2;
                            id_list(t.text)
                        }
                        _ => {
                            i += 1;
                            Vec::new()
                        }
                    };
                    match key.text {
                        "vertices" if !seen.0 => {
                            seen.0 = true;
                            vertices = list;
                        }
                        "edges" if !seen.1 => {
                            seen.1 = true;
                            edges = list;
                        }
                        other => {
                            return Err(err(
                                key.column,
                                format!("expected `vertices` or `edges`, found `{other}`"),
                            ))
                        }
                    }
                }
                file.subgraphs.push(SubgraphDecl {
                    name,
                    vertices,
                    edges,
                });
            }
            other => {
                return Err(err(head.column, format!("unknown directive `{other}`")));
            }
        }
    }
    Ok(file)
}

fn list_or_dash<'a>(items: impl Iterator<Item = &'a str>) -> String {
    let joined: Vec<&str> = items.collect();
    if joined.is_empty() {
        "-".to_string()
    } else {
        joined.join(",")
    }
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}", g.name()).unwrap();
    for v in g.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "edge {} {} -> {}",
            e.id,
            g.vertex(e.src),
            g.vertex(e.rng)
        )
        .unwrap();
    }
    out
}

pub fn write_subgraph_line(f: &Graph) -> String {
    format!(
        "subgraph {} vertices {} edges {}",
        f.name(),
        list_or_dash(f.vertices()),
        list_or_dash(f.edges().iter().map(|e| e.id.as_str()))
    )
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(g.name())).unwrap();
    for v in g.vertices() {
        writeln!(out, "  \"{}\";", escape(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            escape(g.vertex(e.src)),
            escape(g.vertex(e.rng)),
            escape(&e.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
