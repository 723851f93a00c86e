//! Graph description files.
//!
//! ```toml
//! vertices = ["u", "w"]
//! edges = [
//!     { tail = "u", head = "w" },
//!     { tail = "w", head = "u" },
//! ]
//! ```
//!
//! Order is preserved; a repeated edge record is a parallel edge.

use std::collections::HashMap;
use std::path::Path;

use linesand::Multidigraph;
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<Spanned<String>>,
    #[serde(default)]
    edges: Vec<EdgeRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    tail: Spanned<String>,
    head: Spanned<String>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

pub fn parse_graph(text: &str, source: &str) -> Result<Multidigraph, CliError> {
    let err = |line: usize, message: String| CliError::Parse {
        file: source.to_string(),
        line,
        message,
    };
    let doc: GraphDoc = toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(1, |s| line_of(text, s.start));
        err(line, e.message().trim().to_string())
    })?;
    if doc.vertices.is_empty() {
        return Err(err(1, "empty vertex list".into()));
    }

    let mut index = HashMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if index.insert(v.get_ref().as_str(), i).is_some() {
            return Err(err(
                line_of(text, v.span().start),
                format!("duplicate vertex name {:?}", v.get_ref()),
            ));
        }
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let resolve = |name: &Spanned<String>| {
            index.get(name.get_ref().as_str()).copied().ok_or_else(|| {
                err(
                    line_of(text, name.span().start),
                    format!("edge refers to undeclared vertex {:?}", name.get_ref()),
                )
            })
        };
        edges.push((resolve(&e.tail)?, resolve(&e.head)?));
    }
    let names = doc.vertices.into_iter().map(Spanned::into_inner).collect();
    Ok(Multidigraph::new(names, edges)?)
}

pub fn read_graph(path: &Path) -> Result<Multidigraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_graph(&text, &path.display().to_string())
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

pub fn emit_graph(g: &Multidigraph) -> String {
    let names = g.vertex_names();
    let vertices: Vec<String> = names.iter().map(|v| quoted(v)).collect();
    let mut out = format!("vertices = [{}]\n", vertices.join(", "));
    if g.edges().is_empty() {
        out.push_str("edges = []\n");
        return out;
    }
    out.push_str("edges = [\n");
    for e in g.edges() {
        out.push_str(&format!(
            "    {{ tail = {}, head = {} }},\n",
            quoted(&names[e.tail]),
            quoted(&names[e.head])
        ));
    }
    out.push_str("]\n");
    out
}
