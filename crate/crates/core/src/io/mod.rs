//! Reading and writing trees, RNA structures and cost tables.

mod bracket;
mod rna;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::{CostError, CostModel, CostTable};
use crate::forest::{ForestError, Label, NodeId, Tree};

pub use bracket::{emit_bracket, parse_bracket};

pub use rna::{parse_dot_bracket, parse_dot_bracket_annotated};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// `{"label": ..., "children": [...]}`. Nesting is limited by the JSON
/// parser's depth limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonTree {
    pub label: String,
    #[serde(default)]
    pub children: Vec<JsonTree>,
}

pub fn parse_json_tree(text: &str) -> Result<Tree, IoError> {
    if text.trim() == "null" {
        return Ok(Tree::empty());
    }
    let doc: JsonTree = serde_json::from_str(text)?;
    let mut labels = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut todo = vec![(&doc, None::<usize>)];
    while let Some((node, parent)) = todo.pop() {
        let v = labels.len();
        labels.push(Label::new(node.label.as_str())?);
        children.push(Vec::new());
        if let Some(p) = parent {
            children[p].push(v);
        }
        todo.extend(node.children.iter().rev().map(|c| (c, Some(v))));
    }
    Ok(Tree::from_children(labels, children, 0)?)
}

pub fn to_json_tree(t: &Tree) -> Option<JsonTree> {
    fn go(t: &Tree, v: NodeId) -> JsonTree {
        JsonTree {
            label: t.label(v).as_str().to_owned(),
            children: t.children(v).iter().map(|&c| go(t, c)).collect(),
        }
    }
    t.root().map(|r| go(t, r))
}

/// Reads a tree file: JSON if it starts with `{` (or is `null`), bracket
/// text otherwise.
pub fn read_tree(text: &str) -> Result<Tree, IoError> {
    let t = text.trim_start();
    if t.starts_with('{') || t.trim_end() == "null" {
        parse_json_tree(text)
    } else {
        parse_bracket(text)
    }
}

/// A label as it would appear in bracket text, quoted only when needed.
pub fn format_label(l: &Label) -> String {
    let mut out = String::new();
    bracket::emit_label(&mut out, l);
    out
}

pub fn load_cost_table(text: &str) -> Result<CostModel, IoError> {
    let table: CostTable =
        serde_json::from_str(text).map_err(|e| CostError::Schema(e.to_string()))?;
    Ok(CostModel::from_table(&table)?)
}
