//! RNA secondary structure in dot-bracket notation.
//!
//! A synthetic `root` holds the structure. Each base pair `(...)` becomes an
//! internal node and each unpaired `.` a leaf, in string order. Plain mode
//! labels them `pair` and `base`; annotated mode, given the sequence, labels
//! pairs `X-Y` and unpaired bases `X`.

use super::IoError;
use crate::forest::{Label, Tree};

fn syntax(pos: usize, msg: impl Into<String>) -> IoError {
    IoError::Syntax { pos, msg: msg.into() }
}

fn convert(structure: &str, mut label: impl FnMut(usize, Option<usize>) -> String) -> Result<Tree, IoError> {
    let chars: Vec<char> = structure.chars().collect();
    // Match every pair first so annotated labels know both ends.
    let mut partner = vec![None; chars.len()];
    let mut open = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' => open.push(i),
            ')' => {
                let j = open.pop().ok_or_else(|| syntax(i, "unbalanced structure: unmatched ')'"))?;
                partner[j] = Some(i);
            }
            '.' => {}
            other => return Err(syntax(i, format!("unexpected {other:?} in dot-bracket string"))),
        }
    }
    if let Some(&i) = open.last() {
        return Err(syntax(i, "unbalanced structure: unclosed '('"));
    }

    let mut labels = vec![Label::new("root").unwrap()];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut parents = vec![0usize];
    for (i, &c) in chars.iter().enumerate() {
        let p = *parents.last().unwrap();
        match c {
            ')' => {
                parents.pop();
                continue;
            }
            '(' => parents.push(labels.len()),
            _ => {}
        }
        children[p].push(labels.len());
        labels.push(Label::new(label(i, partner[i])).map_err(|e| syntax(i, e.to_string()))?);
        children.push(Vec::new());
    }
    Ok(Tree::from_children(labels, children, 0)?)
}

pub fn parse_dot_bracket(structure: &str) -> Result<Tree, IoError> {
    convert(structure.trim(), |_, pair| if pair.is_some() { "pair".into() } else { "base".into() })
}

/// Annotated mode: `sequence` supplies one nucleotide per structure symbol.
pub fn parse_dot_bracket_annotated(sequence: &str, structure: &str) -> Result<Tree, IoError> {
    let seq: Vec<char> = sequence.trim().chars().collect();
    let structure = structure.trim();
    let n = structure.chars().count();
    if seq.len() != n {
        return Err(syntax(
            seq.len().min(n),
            format!("sequence has {} bases but the structure has {n} symbols", seq.len()),
        ));
    }
    convert(structure, |i, pair| match pair {
        Some(j) => format!("{}-{}", seq[i], seq[j]),
        None => seq[i].to_string(),
    })
}
