//! Edit scripts recovered from a filled memo table, and their application.

use thiserror::Error;

use super::solver::{Engine, Pair};
use crate::forest::{build_index, Label, NodeId, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EditOp {
    DeleteFromF(NodeId),
    Relabel(NodeId, NodeId),
    /// Deleting a node of G, i.e. inserting it into F.
    DeleteFromG(NodeId),
}

/// An optimal edit script.
///
/// `ops` lists only operations that change something or cost something: a
/// matched pair with equal labels and zero relabel cost is not listed. The
/// full node correspondence is kept in `mapping`, and `target` records the
/// shape of G so that insertions can be replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
    pub mapping: Vec<(NodeId, NodeId)>,
    pub total_cost: i64,
    pub target: Tree,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("dangling node reference {0}")]
    Dangling(String),
    #[error("node {0} of F is both kept and deleted, or neither")]
    Conflict(NodeId),
    #[error("inserted node {0} cannot be placed: {1}")]
    Misplaced(NodeId, String),
}

pub(crate) fn backtrack(engine: &Engine<'_>) -> EditScript {
    let pr = &engine.problem;
    let mut ops = Vec::new();
    let mut mapping = Vec::new();
    let mut todo = vec![pr.root_pair()];
    while let Some(p) = todo.pop() {
        if pr.is_trivial(p) {
            continue;
        }
        let (cost, dir) = engine.lookup(p).expect("pair on the optimal path is memoized");
        let ex = pr.expand(p, dir);
        let get = |q: Pair| engine.lookup(q).expect("child of a memoized pair").0;

        if let (Some((inner, rest)), Some(v), Some(w)) = (ex.matched, ex.f_root, ex.g_root) {
            let rel = pr.rel(v, w);
            if get(inner) + get(rest) + rel == cost {
                mapping.push((NodeId(v), NodeId(w)));
                if rel != 0 || pr.f.label(NodeId(v)) != pr.g.label(NodeId(w)) {
                    ops.push(EditOp::Relabel(NodeId(v), NodeId(w)));
                }
                todo.push(rest);
                todo.push(inner);
                continue;
            }
        }
        if let (Some(q), Some(v)) = (ex.del_f_child, ex.f_root) {
            if get(q) + pr.del_f(v) == cost {
                ops.push(EditOp::DeleteFromF(NodeId(v)));
                todo.push(q);
                continue;
            }
        }
        if let (Some(q), Some(w)) = (ex.del_g_child, ex.g_root) {
            if get(q) + pr.del_g(w) == cost {
                ops.push(EditOp::DeleteFromG(NodeId(w)));
                todo.push(q);
                continue;
            }
        }
        unreachable!("memoized cost matches none of its options");
    }
    ops.sort();
    mapping.sort();
    let total_cost = engine.lookup(pr.root_pair()).map_or(0, |(c, _)| c);
    EditScript {
        ops,
        mapping,
        total_cost,
        target: pr.g.clone(),
    }
}

impl EditScript {
    /// Sum of operation costs under `costs`, recomputed from the labels.
    pub fn cost_under(&self, f: &Tree, costs: &crate::cost::CostModel) -> i64 {
        self.ops
            .iter()
            .map(|op| match *op {
                EditOp::DeleteFromF(v) => costs.del(f.label(v)),
                EditOp::DeleteFromG(w) => costs.del(self.target.label(w)),
                EditOp::Relabel(v, w) => costs.rel(f.label(v), self.target.label(w)),
            })
            .sum()
    }
}

struct Slot {
    label: Label,
    // The G node this slot stands for once the script is applied.
    image: usize,
    children: Vec<usize>,
}

/// Applies `script` to `f`: deletes the listed F nodes (their children take
/// their place), relabels, then inserts the listed G nodes top-down, each one
/// adopting the consecutive siblings that belong to its subtree in G.
pub fn apply_script(f: &Tree, script: &EditScript) -> Result<Tree, ScriptError> {
    let g = &script.target;
    let gi = build_index(g);
    let (n, m) = (f.len(), g.len());

    let mut deleted = vec![false; n];
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut relabel = vec![false; n];
    let mut g_taken = vec![false; m];
    let mut inserted = Vec::new();
    let check_f = |v: NodeId| {
        if v.index() < n {
            Ok(v.index())
        } else {
            Err(ScriptError::Dangling(format!("F{v}")))
        }
    };
    let check_g = |w: NodeId| {
        if w.index() < m {
            Ok(w.index())
        } else {
            Err(ScriptError::Dangling(format!("G{w}")))
        }
    };
    for &(v, w) in &script.mapping {
        let (v, w) = (check_f(v)?, check_g(w)?);
        if image[v].is_some() || g_taken[w] {
            return Err(ScriptError::Conflict(NodeId(v as u32)));
        }
        image[v] = Some(w);
        g_taken[w] = true;
    }
    for op in &script.ops {
        match *op {
            EditOp::DeleteFromF(v) => {
                let v = check_f(v)?;
                if deleted[v] || image[v].is_some() {
                    return Err(ScriptError::Conflict(NodeId(v as u32)));
                }
                deleted[v] = true;
            }
            EditOp::DeleteFromG(w) => {
                let w = check_g(w)?;
                if g_taken[w] {
                    return Err(ScriptError::Misplaced(NodeId(w as u32), "also matched".into()));
                }
                g_taken[w] = true;
                inserted.push(w);
            }
            EditOp::Relabel(v, w) => {
                let (v, w) = (check_f(v)?, check_g(w)?);
                if image[v] != Some(w) {
                    return Err(ScriptError::Conflict(NodeId(v as u32)));
                }
                relabel[v] = true;
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| !deleted[v] && image[v].is_none()) {
        return Err(ScriptError::Conflict(NodeId(v as u32)));
    }

    // Kept F nodes become slots; deleted ones splice their children upward.
    let mut slots: Vec<Slot> = Vec::with_capacity(m);
    let mut slot_of_g: Vec<Option<usize>> = vec![None; m];
    let mut lifted: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in (0..n).rev() {
        let mut kids = Vec::new();
        for &c in f.children(NodeId(v as u32)) {
            kids.append(&mut lifted[c.index()]);
        }
        if deleted[v] {
            lifted[v] = kids;
        } else {
            let w = image[v].unwrap();
            let label = if relabel[v] {
                g.label(NodeId(w as u32)).clone()
            } else {
                f.label(NodeId(v as u32)).clone()
            };
            slot_of_g[w] = Some(slots.len());
            slots.push(Slot { label, image: w, children: kids });
            lifted[v] = vec![slots.len() - 1];
        }
    }
    let mut top: Vec<usize> = if n > 0 { std::mem::take(&mut lifted[0]) } else { Vec::new() };

    inserted.sort_unstable();
    for w in inserted {
        let wid = NodeId(w as u32);
        let host = match gi.parent(wid) {
            None => None,
            Some(p) => Some(slot_of_g[p.index()].ok_or_else(|| {
                ScriptError::Misplaced(wid, "parent has no counterpart".into())
            })?),
        };
        let lo = w;
        let hi = w + gi.size(wid) as usize;
        let siblings = match host {
            None => &top,
            Some(h) => &slots[h].children,
        };
        let inside: Vec<usize> = siblings
            .iter()
            .enumerate()
            .filter(|&(_, &s)| (lo..hi).contains(&slots[s].image))
            .map(|(i, _)| i)
            .collect();
        let at = match (inside.first(), inside.last()) {
            (Some(&first), Some(&last)) => {
                if last - first + 1 != inside.len() {
                    return Err(ScriptError::Misplaced(wid, "descendants are not consecutive".into()));
                }
                first
            }
            _ => siblings.iter().filter(|&&s| slots[s].image < w).count(),
        };
        let new_slot = slots.len();
        slots.push(Slot {
            label: g.label(wid).clone(),
            image: w,
            children: Vec::new(),
        });
        slot_of_g[w] = Some(new_slot);
        let siblings = match host {
            None => &mut top,
            Some(h) => &mut slots[h].children,
        };
        let adopted: Vec<usize> = siblings.splice(at..at + inside.len(), [new_slot]).collect();
        slots[new_slot].children = adopted;
    }

    match top.len() {
        0 => Ok(Tree::empty()),
        1 => {
            let labels = slots.iter().map(|s| s.label.clone()).collect();
            let children = slots.iter().map(|s| s.children.clone()).collect();
            // Slots unreachable from the root would make this fail, which
            // cannot happen: every slot is in `top` or under a slot.
            Tree::from_children(labels, children, top[0])
                .map_err(|e| ScriptError::Misplaced(NodeId(0), e.to_string()))
        }
        k => Err(ScriptError::Misplaced(NodeId(0), format!("result has {k} roots"))),
    }
}
