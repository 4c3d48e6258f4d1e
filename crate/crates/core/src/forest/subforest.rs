use std::fmt;

use super::{ForestError, NodeId, TreeIndex};

/// A forest reachable from a tree by deleting leftmost and rightmost roots.
///
/// Stored as two boundary numbers instead of a node list: `a` is the number of
/// nodes that precede the leftmost root in preorder and `b` the number that
/// follow the rightmost root in postorder. The remaining node set is
/// `{v : pre(v) > a, post(v) <= n - b}`. Because both boundary roots are kept
/// in the set, two subforests with the same nodes always have the same
/// `(a, b)`; the empty subforest is `(n, n)`.
///
/// `a` and `b` are *not* deletion counts: when an ancestor is removed from
/// one side and its descendants from the other, the same node set is reached
/// with different counts, and `n - a - b` then differs from the node count.
#[derive(Clone, Copy)]
pub struct Subforest<'t> {
    index: &'t TreeIndex,
    a: u32,
    b: u32,
}

impl<'t> Subforest<'t> {
    pub(crate) fn from_span(index: &'t TreeIndex, (a, b): (u32, u32)) -> Self {
        Subforest { index, a, b }
    }

    /// The whole tree.
    pub fn whole(index: &'t TreeIndex) -> Self {
        Self::from_span(index, index.whole_span())
    }

    pub fn empty(index: &'t TreeIndex) -> Self {
        Self::from_span(index, index.empty_span())
    }

    /// `F_v`.
    pub fn subtree(index: &'t TreeIndex, v: NodeId) -> Self {
        Self::from_span(index, index.span_subtree(v.0))
    }

    /// `F_v - v`.
    pub fn rootless_subtree(index: &'t TreeIndex, v: NodeId) -> Self {
        Self::from_span(index, index.span_rootless(v.0))
    }

    /// Builds a subforest from boundary numbers, checking that both boundary
    /// roots are present.
    pub fn from_bounds(index: &'t TreeIndex, a: u32, b: u32) -> Result<Self, ForestError> {
        let n = index.len() as u32;
        if a >= n || b >= n {
            return if a == n && b == n {
                Ok(Self::empty(index))
            } else {
                Err(ForestError::NotATree(format!("({a}, {b}) is not a subforest bound")))
            };
        }
        let l = NodeId(a);
        let r = index.node_at_post(n - b);
        if index.post(l) > n - b || r.0 < a {
            return Err(ForestError::NotATree(format!(
                "({a}, {b}) does not name its own boundary roots"
            )));
        }
        Ok(Self::from_span(index, (a, b)))
    }

    pub fn index(&self) -> &'t TreeIndex {
        self.index
    }

    pub fn bounds(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn is_empty(&self) -> bool {
        self.index.span_is_empty(self.a)
    }

    /// Node count (linear scan).
    pub fn len(&self) -> usize {
        self.index.span_len(self.a, self.b)
    }

    /// Remaining nodes in preorder (linear scan).
    pub fn nodes(&self) -> Vec<NodeId> {
        self.index.span_nodes(self.a, self.b)
    }

    pub fn contains(&self, v: NodeId) -> bool {
        !self.is_empty() && v.0 >= self.a && self.index.post(v) <= self.index.len() as u32 - self.b
    }

    fn non_empty(&self) -> Result<(), ForestError> {
        if self.is_empty() {
            Err(ForestError::EmptyForest)
        } else {
            Ok(())
        }
    }

    pub fn leftmost_root(&self) -> Result<NodeId, ForestError> {
        self.non_empty()?;
        Ok(NodeId(self.index.span_left_root(self.a)))
    }

    pub fn rightmost_root(&self) -> Result<NodeId, ForestError> {
        self.non_empty()?;
        Ok(NodeId(self.index.span_right_root(self.b)))
    }

    pub fn is_single_tree(&self) -> Result<bool, ForestError> {
        Ok(self.leftmost_root()? == self.rightmost_root()?)
    }

    /// `|L_F|`.
    pub fn left_tree_size(&self) -> Result<u32, ForestError> {
        Ok(self.index.size(self.leftmost_root()?))
    }

    /// `|R_F|`.
    pub fn right_tree_size(&self) -> Result<u32, ForestError> {
        Ok(self.index.size(self.rightmost_root()?))
    }

    pub fn delete_left(&self) -> Result<Self, ForestError> {
        self.non_empty()?;
        Ok(Self::from_span(self.index, self.index.span_delete_left(self.a, self.b)))
    }

    pub fn delete_right(&self) -> Result<Self, ForestError> {
        self.non_empty()?;
        Ok(Self::from_span(self.index, self.index.span_delete_right(self.a, self.b)))
    }

    /// `F - L_F`.
    pub fn without_left_tree(&self) -> Result<Self, ForestError> {
        self.non_empty()?;
        Ok(Self::from_span(self.index, self.index.span_without_left_tree(self.a, self.b)))
    }

    /// `F - R_F`.
    pub fn without_right_tree(&self) -> Result<Self, ForestError> {
        self.non_empty()?;
        Ok(Self::from_span(self.index, self.index.span_without_right_tree(self.a, self.b)))
    }
}

impl PartialEq for Subforest<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.index, other.index) && self.a == other.a && self.b == other.b
    }
}

impl Eq for Subforest<'_> {}

impl fmt::Debug for Subforest<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "Subforest(empty)")
        } else {
            write!(f, "Subforest(a={}, b={})", self.a, self.b)
        }
    }
}
