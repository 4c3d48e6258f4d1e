//! Memoized evaluation of the root-pair recursion under a strategy.

use rustc_hash::{FxHashMap, FxHashSet};

use super::strategy::{Direction, Strategy};
use super::AlgoError;
use crate::cost::CostModel;
use crate::forest::{build_index, Subforest, Tree, TreeIndex};
use crate::instrument::RunStats;

pub(crate) type Span = (u32, u32);

/// A pair of subforests, one per input tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Pair {
    pub f: Span,
    pub g: Span,
}

/// Two indexed trees plus per-node costs.
pub(crate) struct Problem<'t> {
    pub f: &'t Tree,
    pub g: &'t Tree,
    pub fi: TreeIndex,
    pub gi: TreeIndex,
    del_f: Vec<i64>,
    del_g: Vec<i64>,
    lab_f: Vec<u32>,
    lab_g: Vec<u32>,
    rel_eq: i64,
    rel_neq: i64,
    rel_over: FxHashMap<(u32, u32), i64>,
    f_stride: u64,
    g_stride: u64,
}

impl<'t> Problem<'t> {
    pub fn new(f: &'t Tree, g: &'t Tree, costs: &CostModel) -> Result<Self, AlgoError> {
        let (n, m) = (f.len() as u64, g.len() as u64);
        if (n + 1).checked_mul(m + 1).is_none_or(|p| p > u32::MAX as u64) {
            return Err(AlgoError::TooLarge { n: f.len(), m: g.len() });
        }
        let mut intern: FxHashMap<&str, u32> = FxHashMap::default();
        let mut id_of = |s: &'t str| {
            let next = intern.len() as u32;
            *intern.entry(s).or_insert(next)
        };
        let lab_f: Vec<u32> = f.labels().iter().map(|l| id_of(l.as_str())).collect();
        let lab_g: Vec<u32> = g.labels().iter().map(|l| id_of(l.as_str())).collect();

        let mut rel_over = FxHashMap::default();
        for (x, y, c) in costs.rel_overrides() {
            if let (Some(&ix), Some(&iy)) = (intern.get(x.as_str()), intern.get(y.as_str())) {
                rel_over.insert((ix, iy), c);
            }
        }
        let (rel_eq, rel_neq) = costs.rel_defaults();

        Ok(Problem {
            f,
            g,
            fi: build_index(f),
            gi: build_index(g),
            del_f: f.labels().iter().map(|l| costs.del(l)).collect(),
            del_g: g.labels().iter().map(|l| costs.del(l)).collect(),
            lab_f,
            lab_g,
            rel_eq,
            rel_neq,
            rel_over,
            f_stride: n + 1,
            g_stride: m + 1,
        })
    }

    #[inline]
    pub fn del_f(&self, v: u32) -> i64 {
        self.del_f[v as usize]
    }

    #[inline]
    pub fn del_g(&self, w: u32) -> i64 {
        self.del_g[w as usize]
    }

    #[inline]
    pub fn rel(&self, v: u32, w: u32) -> i64 {
        let (x, y) = (self.lab_f[v as usize], self.lab_g[w as usize]);
        if !self.rel_over.is_empty() {
            if let Some(&c) = self.rel_over.get(&(x, y)) {
                return c;
            }
        }
        if x == y {
            self.rel_eq
        } else {
            self.rel_neq
        }
    }

    #[inline]
    pub fn key(&self, p: Pair) -> u64 {
        let fk = p.f.0 as u64 * self.f_stride + p.f.1 as u64;
        let gk = p.g.0 as u64 * self.g_stride + p.g.1 as u64;
        fk * (self.g_stride * self.g_stride) + gk
    }

    #[inline]
    pub fn unkey(&self, key: u64) -> Pair {
        let gs = self.g_stride * self.g_stride;
        let (fk, gk) = (key / gs, key % gs);
        Pair {
            f: ((fk / self.f_stride) as u32, (fk % self.f_stride) as u32),
            g: ((gk / self.g_stride) as u32, (gk % self.g_stride) as u32),
        }
    }

    pub fn root_pair(&self) -> Pair {
        Pair {
            f: self.fi.whole_span(),
            g: self.gi.whole_span(),
        }
    }

    #[inline]
    pub fn f_sub(&self, s: Span) -> Subforest<'_> {
        Subforest::from_span(&self.fi, s)
    }

    #[inline]
    pub fn g_sub(&self, s: Span) -> Subforest<'_> {
        Subforest::from_span(&self.gi, s)
    }
}

/// One step of the recursion at a non-trivial pair, in a fixed direction.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Expansion {
    /// Root removed from F (and its deletion cost), if F is non-empty.
    pub f_root: Option<u32>,
    pub g_root: Option<u32>,
    pub del_f_child: Option<Pair>,
    pub del_g_child: Option<Pair>,
    /// `(inside the matched roots, beside them)` when both sides are non-empty.
    pub matched: Option<(Pair, Pair)>,
}

impl Problem<'_> {
    #[inline]
    pub fn expand(&self, p: Pair, dir: Direction) -> Expansion {
        let (fi, gi) = (&self.fi, &self.gi);
        let f_empty = fi.span_is_empty(p.f.0);
        let g_empty = gi.span_is_empty(p.g.0);
        let (f_root, del_f_child) = if f_empty {
            (None, None)
        } else {
            match dir {
                Direction::Left => (
                    Some(fi.span_left_root(p.f.0)),
                    Some(Pair { f: fi.span_delete_left(p.f.0, p.f.1), g: p.g }),
                ),
                Direction::Right => (
                    Some(fi.span_right_root(p.f.1)),
                    Some(Pair { f: fi.span_delete_right(p.f.0, p.f.1), g: p.g }),
                ),
            }
        };
        let (g_root, del_g_child) = if g_empty {
            (None, None)
        } else {
            match dir {
                Direction::Left => (
                    Some(gi.span_left_root(p.g.0)),
                    Some(Pair { f: p.f, g: gi.span_delete_left(p.g.0, p.g.1) }),
                ),
                Direction::Right => (
                    Some(gi.span_right_root(p.g.1)),
                    Some(Pair { f: p.f, g: gi.span_delete_right(p.g.0, p.g.1) }),
                ),
            }
        };
        let matched = match (f_root, g_root) {
            (Some(v), Some(w)) => {
                let inner = Pair {
                    f: fi.span_rootless(v),
                    g: gi.span_rootless(w),
                };
                let rest = match dir {
                    Direction::Left => Pair {
                        f: fi.span_without_left_tree(p.f.0, p.f.1),
                        g: gi.span_without_left_tree(p.g.0, p.g.1),
                    },
                    Direction::Right => Pair {
                        f: fi.span_without_right_tree(p.f.0, p.f.1),
                        g: gi.span_without_right_tree(p.g.0, p.g.1),
                    },
                };
                Some((inner, rest))
            }
            _ => None,
        };
        Expansion {
            f_root,
            g_root,
            del_f_child,
            del_g_child,
            matched,
        }
    }

    #[inline]
    pub fn is_trivial(&self, p: Pair) -> bool {
        self.fi.span_is_empty(p.f.0) && self.gi.span_is_empty(p.g.0)
    }
}

/// Memo values pack the cost with the direction used at that pair.
#[inline]
fn pack(cost: i64, dir: Direction) -> u64 {
    ((cost as u64) << 1) | matches!(dir, Direction::Right) as u64
}

#[inline]
pub(crate) fn unpack(v: u64) -> (i64, Direction) {
    let dir = if v & 1 == 1 { Direction::Right } else { Direction::Left };
    ((v >> 1) as i64, dir)
}

/// The shared memo table plus the work stack that fills it.
pub(crate) struct Engine<'t> {
    pub problem: Problem<'t>,
    pub memo: FxHashMap<u64, u64>,
    stack: Vec<Pair>,
}

impl<'t> Engine<'t> {
    pub fn new(problem: Problem<'t>) -> Self {
        Engine {
            problem,
            memo: FxHashMap::default(),
            stack: Vec::new(),
        }
    }

    #[inline]
    pub fn lookup(&self, p: Pair) -> Option<(i64, Direction)> {
        self.memo.get(&self.problem.key(p)).map(|&v| unpack(v))
    }

    /// Evaluates `root` and every pair it depends on that is not yet in the
    /// memo, using `strategy` for each newly expanded pair.
    pub fn solve<S: Strategy>(&mut self, root: Pair, strategy: &S) -> i64 {
        self.stack.push(root);
        while let Some(&p) = self.stack.last() {
            let pr = &self.problem;
            let key = pr.key(p);
            if self.memo.contains_key(&key) {
                self.stack.pop();
                continue;
            }
            if pr.is_trivial(p) {
                self.memo.insert(key, pack(0, Direction::Right));
                self.stack.pop();
                continue;
            }
            let dir = strategy.decide(pr.f_sub(p.f), pr.g_sub(p.g));
            let ex = pr.expand(p, dir);

            let depth = self.stack.len();
            let mut best = i64::MAX;
            let memo = &self.memo;
            let stack = &mut self.stack;
            let mut need = |q: Pair| -> Option<i64> {
                match memo.get(&pr.key(q)) {
                    Some(&v) => Some(unpack(v).0),
                    None => {
                        stack.push(q);
                        None
                    }
                }
            };
            if let (Some(q), Some(v)) = (ex.del_f_child, ex.f_root) {
                if let Some(c) = need(q) {
                    best = best.min(c + pr.del_f(v));
                }
            }
            if let (Some(q), Some(w)) = (ex.del_g_child, ex.g_root) {
                if let Some(c) = need(q) {
                    best = best.min(c + pr.del_g(w));
                }
            }
            if let Some((inner, rest)) = ex.matched {
                let (v, w) = (ex.f_root.unwrap(), ex.g_root.unwrap());
                let ci = need(inner);
                let cr = need(rest);
                if let (Some(ci), Some(cr)) = (ci, cr) {
                    best = best.min(ci + cr + pr.rel(v, w));
                }
            }
            if self.stack.len() == depth {
                self.memo.insert(key, pack(best, dir));
                self.stack.pop();
            }
        }
        self.lookup(root).expect("root solved").0
    }

    pub fn stats(&self) -> RunStats {
        let mut fs = FxHashSet::default();
        let mut gs = FxHashSet::default();
        for &k in self.memo.keys() {
            let p = self.problem.unkey(k);
            fs.insert(p.f);
            gs.insert(p.g);
        }
        RunStats {
            subproblem_count: self.memo.len() as u64,
            peak_memo_entries: self.memo.len() as u64,
            f_subforest_count: fs.len() as u64,
            g_subforest_count: gs.len() as u64,
        }
    }
}
