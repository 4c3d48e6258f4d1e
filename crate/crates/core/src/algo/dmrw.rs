//! The heavy-path recursion that alternates which tree drives Klein's rule.
//!
//! For a call on `(F_x, G_y)` with `F_x` the larger tree, every `TopLight`
//! subtree `F_v` is solved against `G_y` first, then Klein's rule driven by
//! `F_x` finishes the pair. All calls share one memo table, so the final
//! Klein pass never re-expands a pair an earlier call already solved. When
//! `G_y` is larger the roles swap. Memo keys always keep the original
//! (F-subforest, G-subforest) orientation, so a pair solved while G was
//! driving is reused as-is when F drives.

use super::solver::{Engine, Pair};
use super::strategy::{Klein, Side};

enum Task {
    Enter { x: u32, y: u32 },
    Finish { x: u32, y: u32, drive: Side },
}

pub(crate) fn run(engine: &mut Engine<'_>) -> i64 {
    let (n, m) = (engine.problem.fi.len(), engine.problem.gi.len());
    let root = engine.problem.root_pair();
    if n == 0 || m == 0 {
        return engine.solve(root, &Klein::for_sizes(n, m));
    }

    let mut tasks = vec![Task::Enter { x: 0, y: 0 }];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Enter { x, y } => {
                let pr = &engine.problem;
                let pair = Pair {
                    f: pr.fi.span_subtree(x),
                    g: pr.gi.span_subtree(y),
                };
                if engine.lookup(pair).is_some() {
                    continue;
                }
                let fx = crate::forest::NodeId(x);
                let gy = crate::forest::NodeId(y);
                if pr.fi.size(fx) >= pr.gi.size(gy) {
                    tasks.push(Task::Finish { x, y, drive: Side::F });
                    for v in pr.fi.toplight_of(fx).into_iter().rev() {
                        tasks.push(Task::Enter { x: v.0, y });
                    }
                } else {
                    tasks.push(Task::Finish { x, y, drive: Side::G });
                    for w in pr.gi.toplight_of(gy).into_iter().rev() {
                        tasks.push(Task::Enter { x, y: w.0 });
                    }
                }
            }
            Task::Finish { x, y, drive } => {
                let pr = &engine.problem;
                let pair = Pair {
                    f: pr.fi.span_subtree(x),
                    g: pr.gi.span_subtree(y),
                };
                engine.solve(pair, &Klein { drive });
            }
        }
    }
    engine.lookup(root).expect("root solved").0
}
