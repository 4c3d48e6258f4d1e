//! Rooted ordered labeled trees, their traversal indices, and the subforest
//! algebra shared by every decomposition-strategy algorithm.
//!
//! Node ids are preorder positions: the root is `NodeId(0)` and a node's id is
//! smaller than the ids of all of its descendants. Every constructor
//! normalizes to this numbering, so the preorder rank of `v` is always
//! `v.index() + 1`.

mod index;
mod subforest;

use std::fmt;

use thiserror::Error;

pub use index::{build_index, TreeIndex};
pub use subforest::Subforest;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForestError {
    #[error("empty label")]
    EmptyLabel,
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("deletion from empty forest")]
    EmptyForest,
    #[error("node {0} is not in the tree")]
    UnknownNode(usize),
}

/// A node label. Never empty; compared by exact text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self, ForestError> {
        let text = text.into();
        if text.is_empty() {
            return Err(ForestError::EmptyLabel);
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for Label {
    type Error = ForestError;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Label::new(value)
    }
}

/// Preorder position of a node within its tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An immutable rooted ordered labeled tree, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Tree {
    labels: Vec<Label>,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
}

impl Tree {
    /// The empty tree.
    pub fn empty() -> Self {
        Tree::default()
    }

    pub fn leaf(label: &str) -> Self {
        Tree::node(label, Vec::new())
    }

    /// Builds `label(children...)`.
    ///
    /// Panics on an empty label; meant for literals in tests and generators.
    /// Empty child trees are skipped.
    pub fn node(label: &str, children: Vec<Tree>) -> Self {
        let label = Label::new(label).expect("tree literal with empty label");
        let total = 1 + children.iter().map(Tree::len).sum::<usize>();
        let mut labels = Vec::with_capacity(total);
        let mut parents = Vec::with_capacity(total);
        labels.push(label);
        parents.push(None);
        for child in children {
            let offset = labels.len() as u32;
            for (v, l) in child.labels.into_iter().enumerate() {
                labels.push(l);
                parents.push(Some(match child.parent[v] {
                    Some(p) => NodeId(p.0 + offset),
                    None => NodeId(0),
                }));
            }
        }
        Tree::from_preorder_parents(labels, parents).expect("concatenation preserves preorder")
    }

    /// Builds a tree from labels and parent links listed in preorder.
    ///
    /// Node 0 must be the root; every other node's parent must come earlier
    /// and must still be "open" (an ancestor of the previous node), which is
    /// exactly the condition for the listing to be a preorder.
    pub fn from_preorder_parents(
        labels: Vec<Label>,
        parents: Vec<Option<NodeId>>,
    ) -> Result<Self, ForestError> {
        if labels.len() != parents.len() {
            return Err(ForestError::NotATree(format!(
                "{} labels but {} parent entries",
                labels.len(),
                parents.len()
            )));
        }
        let n = labels.len();
        if n > u32::MAX as usize - 1 {
            return Err(ForestError::NotATree("too many nodes".into()));
        }
        let mut children = vec![Vec::new(); n];
        // Stack of currently open nodes (the ancestors of the last node).
        let mut open: Vec<NodeId> = Vec::new();
        for (v, p) in parents.iter().enumerate() {
            match (v, p) {
                (0, None) => {}
                (0, Some(_)) => return Err(ForestError::NotATree("node 0 has a parent".into())),
                (_, None) => {
                    return Err(ForestError::NotATree(format!("node {v} is a second root")))
                }
                (_, Some(p)) => {
                    while open.last().is_some_and(|&top| top != *p) {
                        open.pop();
                    }
                    if open.is_empty() {
                        return Err(ForestError::NotATree(format!(
                            "parent of node {v} is not an open ancestor in preorder"
                        )));
                    }
                    children[p.index()].push(NodeId(v as u32));
                }
            }
            open.push(NodeId(v as u32));
        }
        Ok(Tree {
            labels,
            parent: parents,
            children,
        })
    }

    /// Builds a tree from arbitrary node numbering: `children[v]` lists `v`'s
    /// children in order. Nodes are renumbered into preorder.
    pub fn from_children(
        labels: Vec<Label>,
        children: Vec<Vec<usize>>,
        root: usize,
    ) -> Result<Self, ForestError> {
        let n = labels.len();
        if children.len() != n {
            return Err(ForestError::NotATree("children table size mismatch".into()));
        }
        if n == 0 {
            return Ok(Tree::empty());
        }
        if root >= n {
            return Err(ForestError::UnknownNode(root));
        }
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut new_parent_of = vec![None; n];
        let mut stack = vec![(root, None)];
        while let Some((v, p)) = stack.pop() {
            if v >= n {
                return Err(ForestError::UnknownNode(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ForestError::NotATree(format!("node {v} reached twice")));
            }
            new_parent_of[v] = p;
            let id = NodeId(order.len() as u32);
            order.push(v);
            for &c in children[v].iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        if order.len() != n {
            return Err(ForestError::NotATree("unreachable nodes".into()));
        }
        let mut new_labels = Vec::with_capacity(n);
        let mut parents = Vec::with_capacity(n);
        for &old in &order {
            new_labels.push(labels[old].clone());
            parents.push(new_parent_of[old]);
        }
        Tree::from_preorder_parents(new_labels, parents)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> Option<NodeId> {
        (!self.is_empty()).then_some(NodeId(0))
    }

    pub fn label(&self, v: NodeId) -> &Label {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v.index()]
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v.index()]
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.len()
    }

    /// All node ids in preorder.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len() as u32).map(NodeId)
    }

    /// Child-index path from the root, e.g. `[0, 1]` for the second child of
    /// the root's first child.
    pub fn path_of(&self, v: NodeId) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            let pos = self.children(p).iter().position(|&c| c == cur).unwrap();
            path.push(pos);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Inverse of [`Tree::path_of`].
    pub fn node_at_path(&self, path: &[usize]) -> Option<NodeId> {
        let mut cur = self.root()?;
        for &i in path {
            cur = *self.children(cur).get(i)?;
        }
        Some(cur)
    }

    /// Same tree with labels replaced by `f(label)`.
    pub fn map_labels(&self, mut f: impl FnMut(&Label) -> Label) -> Tree {
        Tree {
            labels: self.labels.iter().map(&mut f).collect(),
            parent: self.parent.clone(),
            children: self.children.clone(),
        }
    }

    /// Same shape with every child list reversed.
    pub fn mirror(&self) -> Tree {
        let children: Vec<Vec<usize>> = self
            .children
            .iter()
            .map(|cs| cs.iter().rev().map(|c| c.index()).collect())
            .collect();
        if self.is_empty() {
            return Tree::empty();
        }
        Tree::from_children(self.labels.clone(), children, 0).expect("mirror of a valid tree")
    }
}
