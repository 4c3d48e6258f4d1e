//! Brute-force edit distance: minimum over every one-to-one mapping that
//! preserves ancestry and sibling order.
//!
//! Shares nothing with the recursion-based solvers beyond the tree type, so it
//! can check them.

use super::AlgoError;
use crate::cost::CostModel;
use crate::forest::{NodeId, Tree};

pub const ORACLE_MAX_NODES: usize = 8;

struct Side<'a> {
    tree: &'a Tree,
    // anc[u][v]: u is a proper ancestor of v.
    anc: Vec<Vec<bool>>,
}

impl<'a> Side<'a> {
    fn new(tree: &'a Tree) -> Self {
        let n = tree.len();
        let mut anc = vec![vec![false; n]; n];
        for v in tree.nodes() {
            let mut cur = tree.parent(v);
            while let Some(u) = cur {
                anc[u.index()][v.index()] = true;
                cur = tree.parent(u);
            }
        }
        Side { tree, anc }
    }
}

struct Search<'a> {
    f: Side<'a>,
    g: Side<'a>,
    del_f: Vec<i64>,
    del_g: Vec<i64>,
    rel: Vec<Vec<i64>>,
    used: Vec<bool>,
    pairs: Vec<(usize, usize)>,
    best: i64,
}

impl Search<'_> {
    fn compatible(&self, v: usize, w: usize) -> bool {
        // Nodes of F are assigned in increasing preorder, so every earlier
        // pair has v' before v; its image must come before w as well. A
        // later node is never an ancestor of an earlier one, so one ancestry
        // check per pair suffices.
        self.pairs
            .iter()
            .all(|&(v2, w2)| w2 < w && self.f.anc[v2][v] == self.g.anc[w2][w])
    }

    fn go(&mut self, v: usize, cost: i64) {
        if cost >= self.best {
            return;
        }
        if v == self.f.tree.len() {
            let unmatched_g: i64 = (0..self.g.tree.len())
                .filter(|&w| !self.used[w])
                .map(|w| self.del_g[w])
                .sum();
            self.best = self.best.min(cost + unmatched_g);
            return;
        }
        self.go(v + 1, cost + self.del_f[v]);
        for w in 0..self.g.tree.len() {
            if self.used[w] || !self.compatible(v, w) {
                continue;
            }
            self.used[w] = true;
            self.pairs.push((v, w));
            // Matching w means it is no longer deleted; account for that
            // only at the leaf of the search.
            self.go(v + 1, cost + self.rel[v][w]);
            self.pairs.pop();
            self.used[w] = false;
        }
    }
}

/// Exact edit distance by exhaustive mapping enumeration. Both trees must have
/// at most [`ORACLE_MAX_NODES`] nodes.
pub fn oracle_distance(f: &Tree, g: &Tree, costs: &CostModel) -> Result<i64, AlgoError> {
    if f.len() > ORACLE_MAX_NODES || g.len() > ORACLE_MAX_NODES {
        return Err(AlgoError::OracleLimit);
    }
    let rel = f
        .nodes()
        .map(|v| g.nodes().map(|w| costs.rel(f.label(v), g.label(w))).collect())
        .collect();
    let mut s = Search {
        f: Side::new(f),
        g: Side::new(g),
        del_f: f.labels().iter().map(|l| costs.del(l)).collect(),
        del_g: g.labels().iter().map(|l| costs.del(l)).collect(),
        rel,
        used: vec![false; g.len()],
        pairs: Vec::new(),
        best: i64::MAX,
    };
    s.go(0, 0);
    Ok(s.best)
}

/// Checks the mapping conditions for an explicit set of pairs.
pub fn is_valid_mapping(f: &Tree, g: &Tree, pairs: &[(NodeId, NodeId)]) -> bool {
    let (sf, sg) = (Side::new(f), Side::new(g));
    for (i, &(v1, w1)) in pairs.iter().enumerate() {
        if !f.contains(v1) || !g.contains(w1) {
            return false;
        }
        for &(v2, w2) in &pairs[i + 1..] {
            if (v1 == v2) != (w1 == w2) {
                return false;
            }
            if (v1 < v2) != (w1 < w2) {
                return false;
            }
            let (a, b) = (v1.index(), v2.index());
            let (c, d) = (w1.index(), w2.index());
            if sf.anc[a][b] != sg.anc[c][d] || sf.anc[b][a] != sg.anc[d][c] {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        let u = CostModel::unit();
        assert_eq!(oracle_distance(&Tree::empty(), &Tree::empty(), &u).unwrap(), 0);
        assert_eq!(oracle_distance(&Tree::leaf("a"), &Tree::leaf("b"), &u).unwrap(), 1);
        assert_eq!(oracle_distance(&Tree::leaf("a"), &Tree::empty(), &u).unwrap(), 1);
    }

    #[test]
    fn drops_one_child() {
        let f = Tree::node("a", vec![Tree::leaf("b"), Tree::leaf("c")]);
        let g = Tree::node("a", vec![Tree::leaf("c")]);
        assert_eq!(oracle_distance(&f, &g, &CostModel::unit()).unwrap(), 1);
    }

    #[test]
    fn ancestry_must_be_preserved() {
        // a(b) vs b(a): matching both pairs would invert ancestry, so the best
        // is two relabels.
        let f = Tree::node("a", vec![Tree::leaf("b")]);
        let g = Tree::node("b", vec![Tree::leaf("a")]);
        assert_eq!(oracle_distance(&f, &g, &CostModel::unit()).unwrap(), 2);
    }

    #[test]
    fn size_guard() {
        let big = crate::instrument::gen_path(9);
        assert_eq!(
            oracle_distance(&big, &Tree::leaf("a"), &CostModel::unit()).unwrap_err().to_string(),
            "oracle size limit"
        );
    }
}
