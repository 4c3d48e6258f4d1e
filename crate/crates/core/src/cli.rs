//! The `ted` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algo::{oracle_distance, Algorithm, Computation, EditOp};
use crate::cost::CostModel;
use crate::forest::{NodeId, Tree};
use crate::instrument;
use crate::io;

pub const DEFAULT_MAX_NODES: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "ted", version, about = "Ordered tree edit distance")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Sz,
    Klein,
    Dmrw,
    Auto,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Sz => Algorithm::Sz,
            AlgoArg::Klein => Algorithm::Klein,
            AlgoArg::Dmrw | AlgoArg::Auto => Algorithm::Dmrw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Comb,
    CombMirror,
    Zigzag,
    Balanced,
    Path,
    Random,
}

#[derive(Debug, clap::Args)]
pub struct Inputs {
    /// First tree: a file path, or bracket text with -e.
    pub f: String,
    /// Second tree.
    pub g: String,
    /// Treat the tree arguments as inline bracket text.
    #[arg(short = 'e', long = "inline")]
    pub inline: bool,
    /// JSON cost table (unit costs when omitted).
    #[arg(long)]
    pub costs: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the edit distance.
    Dist {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algo: AlgoArg,
        /// Also print subproblem statistics.
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Print an optimal edit script, one operation per line.
    Script {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algo: AlgoArg,
    },
    /// Print subproblem counts per algorithm.
    Count {
        #[command(flatten)]
        inputs: Inputs,
        /// Comma-separated algorithms.
        #[arg(long = "algo-list", value_enum, value_delimiter = ',', default_value = "sz,klein,dmrw")]
        algos: Vec<AlgoArg>,
    },
    /// Generate an instance and print it as bracket text.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Node count. For balanced it must be 2^(k+1) - 1.
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fan-out bound for random trees.
        #[arg(long, default_value_t = 4)]
        max_children: usize,
    },
    /// Convert dot-bracket RNA structure to bracket text.
    Rna {
        /// Dot-bracket string, or a file holding one.
        structure: String,
        /// Nucleotide sequence; labels pairs "X-Y" and bases "X".
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Check the algorithms against the brute-force oracle on small inputs.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// An input problem: reported on stderr with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn max_nodes() -> Result<usize, InputError> {
    match std::env::var("TED_MAX_NODES") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| InputError(format!("TED_MAX_NODES is not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_NODES),
    }
}

fn load_tree(arg: &str, inline: bool, limit: usize) -> Result<Tree, InputError> {
    let t = if inline {
        io::parse_bracket(arg).map_err(|e| InputError(format!("tree {arg:?}: {e}")))?
    } else {
        let text = std::fs::read_to_string(arg).map_err(|e| InputError(format!("{arg}: {e}")))?;
        io::read_tree(&text).map_err(|e| InputError(format!("{arg}: {e}")))?
    };
    if t.len() > limit {
        return Err(InputError(format!("{arg}: {} nodes exceeds TED_MAX_NODES={limit}", t.len())));
    }
    Ok(t)
}

fn load_inputs(inp: &Inputs) -> Result<(Tree, Tree, CostModel), InputError> {
    let limit = max_nodes()?;
    let f = load_tree(&inp.f, inp.inline, limit)?;
    let g = load_tree(&inp.g, inp.inline, limit)?;
    let costs = match &inp.costs {
        None => CostModel::unit(),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            io::load_cost_table(&text).map_err(|e| InputError(format!("{}: {e}", p.display())))?
        }
    };
    Ok((f, g, costs))
}

/// Child-index path such as `0.1`; the root is `-`.
pub fn node_path(t: &Tree, v: NodeId) -> String {
    let p = t.path_of(v);
    if p.is_empty() {
        return "-".into();
    }
    p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
}

fn generate(family: Family, size: usize, seed: u64, max_children: usize) -> Result<Tree, InputError> {
    Ok(match family {
        Family::Comb => instrument::gen_comb(size)?,
        Family::CombMirror => instrument::gen_comb_mirror(size)?,
        Family::Zigzag => instrument::gen_zigzag(size)?,
        Family::Balanced => {
            let k = (size + 1).trailing_zeros();
            if size == 0 || (size + 1) != 1 << k {
                return Err(InputError(format!("balanced size must be 2^(k+1) - 1, got {size}")));
            }
            instrument::gen_balanced(k - 1)?
        }
        Family::Path => instrument::gen_path(size),
        Family::Random => instrument::gen_random(size, seed, max_children),
    })
}

fn selftest(seed: u64, out: &mut dyn Write) -> Result<bool, InputError> {
    let u = CostModel::unit();
    let mut cases = 0usize;
    let mut failures = Vec::new();
    let mut check = |f: &Tree, g: &Tree| -> Result<(), InputError> {
        let want = oracle_distance(f, g, &u)?;
        for algo in Algorithm::ALL {
            let got = Computation::run(f, g, &u, algo)?.cost();
            if got != want {
                failures.push(format!(
                    "{algo}: {} vs {}: got {got}, oracle {want}",
                    io::emit_bracket(f),
                    io::emit_bracket(g)
                ));
            }
        }
        cases += 1;
        Ok(())
    };
    for k in 0..=3 {
        for l in 0..=3 {
            for f in instrument::all_shapes(k) {
                for g in instrument::all_shapes(l) {
                    check(&f, &g)?;
                }
            }
        }
    }
    for i in 0..100u64 {
        let s = seed.wrapping_mul(1_000).wrapping_add(i);
        let f = instrument::gen_random_labeled((s % 6) as usize, s, 3, &["a", "b"]);
        let g = instrument::gen_random_labeled((s / 6 % 6) as usize, s ^ 0x5eed, 3, &["a", "b"]);
        check(&f, &g)?;
    }
    for line in &failures {
        writeln!(out, "FAIL {line}")?;
    }
    writeln!(
        out,
        "selftest {}: {cases} pairs, {} mismatches",
        if failures.is_empty() { "ok" } else { "failed" },
        failures.len()
    )?;
    Ok(failures.is_empty())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<u8, InputError> {
    match cmd {
        Command::Dist {
            inputs,
            algo,
            stats,
            format,
        } => {
            let (f, g, costs) = load_inputs(&inputs)?;
            let algo = Algorithm::from(algo);
            let res = Computation::run(&f, &g, &costs, algo)?.result();
            match format {
                Format::Plain => {
                    writeln!(out, "{}", res.cost)?;
                    if stats {
                        let s = res.stats;
                        writeln!(out, "subproblems {}", s.subproblem_count)?;
                        writeln!(out, "memo_entries {}", s.peak_memo_entries)?;
                        writeln!(out, "f_subforests {}", s.f_subforest_count)?;
                        writeln!(out, "g_subforests {}", s.g_subforest_count)?;
                    }
                }
                Format::Json => {
                    let mut doc = json!({
                        "algorithm": algo.name(),
                        "cost": res.cost,
                        "m": g.len(),
                        "n": f.len(),
                        "subproblems": res.stats.subproblem_count,
                    });
                    if stats {
                        doc["stats"] = serde_json::to_value(res.stats)?;
                    }
                    writeln!(out, "{doc}")?;
                }
            }
        }
        Command::Script { inputs, algo } => {
            let (f, g, costs) = load_inputs(&inputs)?;
            let script = Computation::run(&f, &g, &costs, algo.into())?.edit_script();
            for op in &script.ops {
                match *op {
                    EditOp::DeleteFromF(v) => writeln!(out, "del-f {}", node_path(&f, v))?,
                    EditOp::DeleteFromG(w) => writeln!(out, "del-g {}", node_path(&g, w))?,
                    EditOp::Relabel(v, w) => writeln!(
                        out,
                        "rel {} {} {} {}",
                        node_path(&f, v),
                        node_path(&g, w),
                        io::format_label(f.label(v)),
                        io::format_label(g.label(w))
                    )?,
                }
            }
            writeln!(out, "cost {}", script.total_cost)?;
        }
        Command::Count { inputs, algos } => {
            let (f, g, costs) = load_inputs(&inputs)?;
            for a in algos {
                let algo = Algorithm::from(a);
                let res = Computation::run(&f, &g, &costs, algo)?.result();
                writeln!(out, "{algo} {}", res.stats.subproblem_count)?;
            }
        }
        Command::Gen {
            family,
            size,
            seed,
            max_children,
        } => {
            if size > max_nodes()? {
                return Err(InputError(format!("size {size} exceeds TED_MAX_NODES")));
            }
            let t = generate(family, size, seed, max_children)?;
            writeln!(out, "{}", io::emit_bracket(&t))?;
        }
        Command::Rna { structure, sequence } => {
            let path = std::path::Path::new(&structure);
            let text = if path.is_file() {
                std::fs::read_to_string(path)?
            } else {
                structure
            };
            let t = match sequence {
                Some(seq) => io::parse_dot_bracket_annotated(&seq, &text)?,
                None => io::parse_dot_bracket(&text)?,
            };
            writeln!(out, "{}", io::emit_bracket(&t))?;
        }
        Command::Selftest { seed } => {
            return Ok(if selftest(seed, out)? { 0 } else { 1 });
        }
    }
    Ok(0)
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 2 for bad input or usage, 1 when the self-test finds a mismatch.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "ted: {msg}");
            2
        }
    }
}
