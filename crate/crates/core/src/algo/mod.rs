//! Edit distance under decomposition strategies.

mod dmrw;
pub mod oracle;
pub mod script;
mod solver;
pub mod strategy;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cost::CostModel;
use crate::forest::{NodeId, Subforest, Tree, TreeIndex};
use crate::instrument::RunStats;
use solver::{Engine, Pair, Problem};

pub use oracle::{is_valid_mapping, oracle_distance, ORACLE_MAX_NODES};
pub use script::{apply_script, EditOp, EditScript, ScriptError};
pub use strategy::{Direction, FnStrategy, Klein, RandomStrategy, RightToLeft, Side, Strategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgoError {
    #[error("input too large for subforest keys: {n} x {m} nodes")]
    TooLarge { n: usize, m: usize },
    #[error("oracle size limit")]
    OracleLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Sz,
    Klein,
    Dmrw,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Sz, Algorithm::Klein, Algorithm::Dmrw];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sz => "sz",
            Algorithm::Klein => "klein",
            Algorithm::Dmrw => "dmrw",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sz" => Ok(Algorithm::Sz),
            "klein" => Ok(Algorithm::Klein),
            "dmrw" | "auto" => Ok(Algorithm::Dmrw),
            other => Err(format!("unknown algorithm '{other}' (expected sz, klein, dmrw or auto)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceResult {
    pub cost: i64,
    pub stats: RunStats,
}

/// A finished computation. Keeps the memo table so that it can be inspected
/// or backtracked into an edit script.
pub struct Computation<'t> {
    engine: Engine<'t>,
    cost: i64,
}

impl<'t> Computation<'t> {
    pub fn run(f: &'t Tree, g: &'t Tree, costs: &CostModel, algo: Algorithm) -> Result<Self, AlgoError> {
        let mut engine = Engine::new(Problem::new(f, g, costs)?);
        let root = engine.problem.root_pair();
        let cost = match algo {
            Algorithm::Sz => engine.solve(root, &RightToLeft),
            Algorithm::Klein => engine.solve(root, &Klein::for_sizes(f.len(), g.len())),
            Algorithm::Dmrw => dmrw::run(&mut engine),
        };
        Ok(Computation { engine, cost })
    }

    pub fn with_strategy<S: Strategy>(
        f: &'t Tree,
        g: &'t Tree,
        costs: &CostModel,
        strategy: &S,
    ) -> Result<Self, AlgoError> {
        let mut engine = Engine::new(Problem::new(f, g, costs)?);
        let root = engine.problem.root_pair();
        let cost = engine.solve(root, strategy);
        Ok(Computation { engine, cost })
    }

    pub fn cost(&self) -> i64 {
        self.cost
    }

    pub fn stats(&self) -> RunStats {
        self.engine.stats()
    }

    pub fn result(&self) -> DistanceResult {
        DistanceResult {
            cost: self.cost,
            stats: self.stats(),
        }
    }

    pub fn f_index(&self) -> &TreeIndex {
        &self.engine.problem.fi
    }

    pub fn g_index(&self) -> &TreeIndex {
        &self.engine.problem.gi
    }

    /// Whether the pair was created as a subproblem. Both subforests must come
    /// from this computation's indices.
    pub fn has_pair(&self, f: Subforest<'_>, g: Subforest<'_>) -> bool {
        assert!(std::ptr::eq(f.index(), self.f_index()) && std::ptr::eq(g.index(), self.g_index()));
        self.engine.lookup(Pair { f: f.bounds(), g: g.bounds() }).is_some()
    }

    /// The solved cost of a pair, if it was created.
    pub fn pair_cost(&self, f: Subforest<'_>, g: Subforest<'_>) -> Option<i64> {
        if !self.has_pair(f, g) {
            return None;
        }
        self.engine.lookup(Pair { f: f.bounds(), g: g.bounds() }).map(|(c, _)| c)
    }

    pub fn has_rootless_pair(&self, v: NodeId, w: NodeId) -> bool {
        let f = Subforest::rootless_subtree(self.f_index(), v);
        let g = Subforest::rootless_subtree(self.g_index(), w);
        self.has_pair(f, g)
    }

    pub fn edit_script(&self) -> EditScript {
        script::backtrack(&self.engine)
    }
}

pub fn distance(f: &Tree, g: &Tree, costs: &CostModel, algo: Algorithm) -> Result<DistanceResult, AlgoError> {
    Computation::run(f, g, costs, algo).map(|c| c.result())
}

pub fn distance_strategy<S: Strategy>(
    f: &Tree,
    g: &Tree,
    costs: &CostModel,
    strategy: &S,
) -> Result<DistanceResult, AlgoError> {
    Computation::with_strategy(f, g, costs, strategy).map(|c| c.result())
}

pub fn distance_sz(f: &Tree, g: &Tree, costs: &CostModel) -> Result<DistanceResult, AlgoError> {
    distance(f, g, costs, Algorithm::Sz)
}

pub fn distance_klein(f: &Tree, g: &Tree, costs: &CostModel) -> Result<DistanceResult, AlgoError> {
    distance(f, g, costs, Algorithm::Klein)
}

pub fn distance_dmrw(f: &Tree, g: &Tree, costs: &CostModel) -> Result<DistanceResult, AlgoError> {
    distance(f, g, costs, Algorithm::Dmrw)
}

pub fn edit_script(f: &Tree, g: &Tree, costs: &CostModel, algo: Algorithm) -> Result<EditScript, AlgoError> {
    Computation::run(f, g, costs, algo).map(|c| c.edit_script())
}
