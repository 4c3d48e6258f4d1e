use super::{NodeId, Tree};

const NONE: u32 = u32::MAX;

/// Traversal ranks and structural decompositions of one tree.
///
/// Heavy children are the *rightmost* child of maximum subtree size. With
/// Klein's tie rule (recurse left when `|L| <= |R|`) this is the choice that
/// makes the strategy consume every light sibling before it touches the heavy
/// one, so the heavy path seen by the strategy and the one used for
/// `TopLight` coincide.
#[derive(Debug, Clone)]
pub struct TreeIndex {
    n: u32,
    post: Vec<u32>,
    at_post: Vec<u32>,
    size: Vec<u32>,
    parent: Vec<u32>,
    first_child: Vec<u32>,
    last_child: Vec<u32>,
    heavy: Vec<u32>,
    light: Vec<bool>,
    ldepth: Vec<u32>,
    keyroot: Vec<bool>,
    cdepth: Vec<u32>,
    keyroots: Vec<NodeId>,
    toplight: Vec<NodeId>,
}

pub fn build_index(t: &Tree) -> TreeIndex {
    let n = t.len();
    let mut parent = vec![NONE; n];
    let mut depth = vec![0u32; n];
    let mut first_child = vec![NONE; n];
    let mut last_child = vec![NONE; n];
    let mut keyroot = vec![false; n];
    for v in t.nodes() {
        let cs = t.children(v);
        if let (Some(f), Some(l)) = (cs.first(), cs.last()) {
            first_child[v.index()] = f.0;
            last_child[v.index()] = l.0;
        }
        for (i, c) in cs.iter().enumerate() {
            parent[c.index()] = v.0;
            depth[c.index()] = depth[v.index()] + 1;
            keyroot[c.index()] = i > 0;
        }
    }
    if n > 0 {
        keyroot[0] = true;
    }

    // Children have larger ids than their parent, so a reverse sweep sees
    // every subtree before its root.
    let mut size = vec![1u32; n];
    for v in (1..n).rev() {
        size[parent[v] as usize] += size[v];
    }

    let mut post = vec![0u32; n];
    let mut at_post = vec![NONE; n + 1];
    for v in 0..n {
        // pre + size - 1 - depth, with 1-based ranks.
        let rank = v as u32 + size[v] - depth[v];
        post[v] = rank;
        at_post[rank as usize] = v as u32;
    }

    let mut heavy = vec![NONE; n];
    let mut light = vec![false; n];
    for v in t.nodes() {
        let mut best = NONE;
        for &c in t.children(v) {
            if best == NONE || size[c.index()] >= size[best as usize] {
                best = c.0;
            }
        }
        heavy[v.index()] = best;
        for &c in t.children(v) {
            light[c.index()] = c.0 != best;
        }
    }
    if n > 0 {
        light[0] = true;
    }

    let mut ldepth = vec![0u32; n];
    let mut cdepth = vec![0u32; n];
    for v in 0..n {
        let (lp, cp) = match parent[v] {
            NONE => (0, 0),
            p => (ldepth[p as usize], cdepth[p as usize]),
        };
        ldepth[v] = lp + light[v] as u32;
        cdepth[v] = cp + keyroot[v] as u32;
    }

    let keyroots = (0..n as u32).filter(|&v| keyroot[v as usize]).map(NodeId).collect();

    let mut index = TreeIndex {
        n: n as u32,
        post,
        at_post,
        size,
        parent,
        first_child,
        last_child,
        heavy,
        light,
        ldepth,
        keyroot,
        cdepth,
        keyroots,
        toplight: Vec::new(),
    };
    if n > 0 {
        index.toplight = index.toplight_of(NodeId(0));
    }
    index
}

impl TreeIndex {
    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// 1-based preorder rank.
    #[inline]
    pub fn pre(&self, v: NodeId) -> u32 {
        v.0 + 1
    }

    /// 1-based postorder rank.
    #[inline]
    pub fn post(&self, v: NodeId) -> u32 {
        self.post[v.index()]
    }

    /// Node with 1-based postorder rank `rank`.
    pub fn node_at_post(&self, rank: u32) -> NodeId {
        NodeId(self.at_post[rank as usize])
    }

    #[inline]
    pub fn size(&self, v: NodeId) -> u32 {
        self.size[v.index()]
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v.index()] {
            NONE => None,
            p => Some(NodeId(p)),
        }
    }

    pub fn heavy_child(&self, v: NodeId) -> Option<NodeId> {
        match self.heavy[v.index()] {
            NONE => None,
            c => Some(NodeId(c)),
        }
    }

    pub fn is_light(&self, v: NodeId) -> bool {
        self.light[v.index()]
    }

    /// Light nodes: the root and every child that is not its parent's heavy
    /// child.
    pub fn light_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.n).map(NodeId).filter(|&v| self.is_light(v))
    }

    /// Number of light nodes among `v` and its ancestors.
    pub fn ldepth(&self, v: NodeId) -> u32 {
        self.ldepth[v.index()]
    }

    pub fn is_keyroot(&self, v: NodeId) -> bool {
        self.keyroot[v.index()]
    }

    /// The root together with every node that has a left sibling.
    pub fn keyroots(&self) -> &[NodeId] {
        &self.keyroots
    }

    /// Number of keyroots among `v` and its ancestors.
    pub fn cdepth(&self, v: NodeId) -> u32 {
        self.cdepth[v.index()]
    }

    /// Roots left over when the heavy path of the whole tree is removed.
    pub fn toplight(&self) -> &[NodeId] {
        &self.toplight
    }

    /// The heavy path starting at `v`, top to bottom.
    pub fn heavy_path_from(&self, v: NodeId) -> Vec<NodeId> {
        let mut path = vec![v];
        let mut cur = v.0;
        while self.heavy[cur as usize] != NONE {
            cur = self.heavy[cur as usize];
            path.push(NodeId(cur));
        }
        path
    }

    /// `TopLight` of the subtree rooted at `v`: the light children hanging off
    /// the heavy path that starts at `v`, in preorder.
    pub fn toplight_of(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut cur = v.0;
        loop {
            let h = self.heavy[cur as usize];
            if h == NONE {
                break;
            }
            let mut c = self.first_child[cur as usize];
            while c != NONE {
                if c != h {
                    out.push(NodeId(c));
                }
                c = self.next_sibling(c);
            }
            cur = h;
        }
        out.sort_unstable();
        out
    }

    fn next_sibling(&self, c: u32) -> u32 {
        let p = self.parent[c as usize];
        if p == NONE || self.last_child[p as usize] == c {
            NONE
        } else {
            // The next sibling starts right after c's subtree in preorder.
            c + self.size[c as usize]
        }
    }

    // ---- canonical subforest arithmetic -------------------------------
    //
    // A subforest is the node set {v : v >= a, post(v) <= n - b}, stored with
    // `a` = id of its leftmost root and `n - b` = post rank of its rightmost
    // root. Both boundary nodes belong to the set, which makes the pair
    // unique per node set. The empty subforest is (n, n).

    #[inline]
    pub(crate) fn empty_span(&self) -> (u32, u32) {
        (self.n, self.n)
    }

    #[inline]
    pub(crate) fn whole_span(&self) -> (u32, u32) {
        // For the empty tree this coincides with the empty span.
        (0, 0)
    }

    #[inline]
    pub(crate) fn span_is_empty(&self, a: u32) -> bool {
        a >= self.n
    }

    #[inline]
    pub(crate) fn span_left_root(&self, a: u32) -> u32 {
        a
    }

    #[inline]
    pub(crate) fn span_right_root(&self, b: u32) -> u32 {
        self.at_post[(self.n - b) as usize]
    }

    #[inline]
    pub(crate) fn span_subtree(&self, v: u32) -> (u32, u32) {
        (v, self.n - self.post[v as usize])
    }

    /// `F_v - v`.
    #[inline]
    pub(crate) fn span_rootless(&self, v: u32) -> (u32, u32) {
        if self.size[v as usize] == 1 {
            self.empty_span()
        } else {
            (v + 1, self.n - self.post[v as usize] + 1)
        }
    }

    #[inline]
    pub(crate) fn span_node_size(&self, v: u32) -> u32 {
        self.size[v as usize]
    }

    #[inline]
    fn in_span(&self, v: u32, a: u32, b: u32) -> bool {
        v >= a && self.post[v as usize] <= self.n - b
    }

    /// Leftmost root of the part of the span that follows subtree `v` in
    /// preorder. The caller guarantees that such a part exists.
    #[inline]
    fn next_left_root(&self, v: u32, b: u32) -> u32 {
        let mut c = v + self.size[v as usize];
        // Nodes skipped here are ancestors of the rightmost root that were
        // removed from the right; each one's first child is the next candidate.
        while self.post[c as usize] > self.n - b {
            c += 1;
        }
        c
    }

    /// Post rank of the rightmost root of the part of the span that precedes
    /// subtree `v` in postorder.
    #[inline]
    fn prev_right_root_post(&self, v: u32, a: u32) -> u32 {
        let mut q = self.post[v as usize] - self.size[v as usize];
        while self.at_post[q as usize] < a {
            q -= 1;
        }
        q
    }

    /// Delete the leftmost root.
    #[inline]
    pub(crate) fn span_delete_left(&self, a: u32, b: u32) -> (u32, u32) {
        let l = a;
        let r = self.span_right_root(b);
        if self.size[l as usize] > 1 {
            if l == r {
                (a + 1, b + 1)
            } else {
                (a + 1, b)
            }
        } else if l == r {
            self.empty_span()
        } else {
            (self.next_left_root(l, b), b)
        }
    }

    /// Delete the rightmost root.
    #[inline]
    pub(crate) fn span_delete_right(&self, a: u32, b: u32) -> (u32, u32) {
        let l = a;
        let r = self.span_right_root(b);
        if self.size[r as usize] > 1 {
            if l == r {
                (a + 1, b + 1)
            } else {
                (a, b + 1)
            }
        } else if l == r {
            self.empty_span()
        } else {
            (a, self.n - self.prev_right_root_post(r, a))
        }
    }

    /// Remove the whole leftmost tree.
    #[inline]
    pub(crate) fn span_without_left_tree(&self, a: u32, b: u32) -> (u32, u32) {
        let l = a;
        if l == self.span_right_root(b) {
            self.empty_span()
        } else {
            (self.next_left_root(l, b), b)
        }
    }

    /// Remove the whole rightmost tree.
    #[inline]
    pub(crate) fn span_without_right_tree(&self, a: u32, b: u32) -> (u32, u32) {
        let r = self.span_right_root(b);
        if a == r {
            self.empty_span()
        } else {
            (a, self.n - self.prev_right_root_post(r, a))
        }
    }

    /// Node count of a span, by direct scan.
    pub(crate) fn span_len(&self, a: u32, b: u32) -> usize {
        if self.span_is_empty(a) {
            return 0;
        }
        (a..self.n).filter(|&v| self.in_span(v, a, b)).count()
    }

    pub(crate) fn span_nodes(&self, a: u32, b: u32) -> Vec<NodeId> {
        if self.span_is_empty(a) {
            return Vec::new();
        }
        (a..self.n)
            .filter(|&v| self.in_span(v, a, b))
            .map(NodeId)
            .collect()
    }
}
