//! Subproblem accounting, bound checks and growth measurements.

mod gen;

use std::fmt::Write as _;

use serde::Serialize;

use crate::algo::{distance, AlgoError, Algorithm};
use crate::cost::CostModel;
use crate::forest::{Tree, TreeIndex};

pub use gen::{
    all_shapes, gen_balanced, gen_comb, gen_comb_mirror, gen_path, gen_random, gen_random_labeled,
    gen_zigzag, path_of_str, GenError,
};

/// Counters collected from one memo table.
///
/// The subforest counts include the empty subforest whenever it was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RunStats {
    pub subproblem_count: u64,
    pub peak_memo_entries: u64,
    pub f_subforest_count: u64,
    pub g_subforest_count: u64,
}

/// Σ over keyroots of subtree size.
pub fn keyroot_mass(idx: &TreeIndex) -> u64 {
    idx.keyroots().iter().map(|&v| idx.size(v) as u64).sum()
}

/// Σ over light nodes (the root included) of subtree size.
pub fn light_mass(idx: &TreeIndex) -> u64 {
    idx.light_nodes().map(|v| idx.size(v) as u64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub pass: bool,
    pub count: u64,
    pub limit: f64,
    /// `count / (m² n (1 + log₂(n/m)))` with `n ≥ m`.
    pub empirical_constant: f64,
}

/// Checks a run against `4 (nm)^{3/2}`. When either tree is empty the formula
/// degenerates to 0 while the recursion still visits `max(n,m) + 1` pairs,
/// so empty instances are checked against `n + m + 1` instead.
pub fn check_dmrw_bounds(stats: &RunStats, n: usize, m: usize) -> BoundCheck {
    let (n, m) = if n >= m { (n, m) } else { (m, n) };
    let count = stats.subproblem_count;
    if m == 0 {
        let limit = (n + 1) as f64;
        return BoundCheck {
            pass: count as f64 <= limit,
            count,
            limit,
            empirical_constant: f64::NAN,
        };
    }
    let (nf, mf) = (n as f64, m as f64);
    let limit = 4.0 * (nf * mf).powf(1.5);
    let shape = mf * mf * nf * (1.0 + (nf / mf).log2());
    BoundCheck {
        pass: count as f64 <= limit,
        count,
        limit,
        empirical_constant: count as f64 / shape,
    }
}

/// The comb lower-bound sum `Σ_{i ≤ n/2} Σ_{j ≤ m/2} (min(2i, 2j) − 1)`.
pub fn comb_pair_sum(n: usize, m: usize) -> u64 {
    let mut total = 0u64;
    for i in 1..=(n / 2) as u64 {
        for j in 1..=(m / 2) as u64 {
            total += (2 * i).min(2 * j) - 1;
        }
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: &'static str,
    pub count: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
}

impl GrowthReport {
    /// Counts for one algorithm, in increasing `n`.
    pub fn counts(&self, algo: Algorithm) -> Vec<u64> {
        self.rows.iter().filter(|r| r.algorithm == algo.name()).map(|r| r.count).collect()
    }

    /// Ratios between consecutive counts of one algorithm.
    pub fn ratios(&self, algo: Algorithm) -> Vec<f64> {
        self.counts(algo).windows(2).map(|w| w[1] as f64 / w[0] as f64).collect()
    }

    /// Per-size ratio `count(num) / count(den)`.
    pub fn cross_ratios(&self, num: Algorithm, den: Algorithm) -> Vec<f64> {
        self.counts(num)
            .iter()
            .zip(self.counts(den))
            .map(|(&a, b)| a as f64 / b as f64)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("instance,n,m,algorithm,count\n");
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.instance, r.n, r.m, r.algorithm, r.count).unwrap();
        }
        out
    }
}

/// Runs every algorithm on `family(size)` for every size under unit costs.
pub fn growth_report<F>(
    name: &str,
    family: F,
    sizes: &[usize],
    algorithms: &[Algorithm],
) -> Result<GrowthReport, AlgoError>
where
    F: Fn(usize) -> (Tree, Tree),
{
    let costs = CostModel::unit();
    let mut rows = Vec::new();
    for &size in sizes {
        let (f, g) = family(size);
        for &algo in algorithms {
            let res = distance(&f, &g, &costs, algo)?;
            rows.push(GrowthRow {
                instance: format!("{name}-{size}"),
                n: f.len(),
                m: g.len(),
                algorithm: algo.name(),
                count: res.stats.subproblem_count,
            });
        }
    }
    rows.sort_by_key(|r| (r.algorithm, r.n, r.m));
    Ok(GrowthReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algo::distance_dmrw;
    use crate::forest::build_index;

    #[test]
    fn keyroot_mass_equals_cdepth_sum() {
        for seed in 0..40 {
            let t = gen_random(1 + seed as usize, seed, 4);
            let idx = build_index(&t);
            let by_depth: u64 = t.nodes().map(|v| idx.cdepth(v) as u64).sum();
            assert_eq!(keyroot_mass(&idx), by_depth);
            let by_ldepth: u64 = t.nodes().map(|v| idx.ldepth(v) as u64).sum();
            assert_eq!(light_mass(&idx), by_ldepth);
        }
    }

    #[test]
    fn tiny_runs_pass_the_bound() {
        let u = CostModel::unit();
        let one = gen_path(1);
        let s = distance_dmrw(&one, &one, &u).unwrap().stats;
        assert!(s.subproblem_count >= 1 && s.subproblem_count <= 4);
        assert!(check_dmrw_bounds(&s, 1, 1).pass);
        for k in 1..=5 {
            for f in all_shapes(k) {
                for g in all_shapes(6 - k) {
                    let s = distance_dmrw(&f, &g, &u).unwrap().stats;
                    assert!(check_dmrw_bounds(&s, f.len(), g.len()).pass);
                }
            }
        }
        let s = distance_dmrw(&gen_path(3), &Tree::empty(), &u).unwrap().stats;
        assert_eq!(s.subproblem_count, 4);
        assert!(check_dmrw_bounds(&s, 3, 0).pass);
    }

    #[test]
    fn comb_sum_small_values() {
        assert_eq!(comb_pair_sum(2, 2), 1);
        // i,j ∈ {1,2}: 1 + 1 + 1 + 3
        assert_eq!(comb_pair_sum(4, 4), 6);
    }

    #[test]
    fn report_rows_and_csv() {
        let rep = growth_report("path", |n| (gen_path(n), gen_path(n)), &[4], &[Algorithm::Sz]).unwrap();
        assert_eq!(rep.rows.len(), 1);
        let csv = rep.to_csv();
        assert!(csv.starts_with("instance,n,m,algorithm,count\npath-4,4,4,sz,"));
        let rep = growth_report(
            "comb",
            |n| (gen_comb(n).unwrap(), gen_comb_mirror(n).unwrap()),
            &[4, 8],
            &[Algorithm::Dmrw, Algorithm::Sz],
        )
        .unwrap();
        assert_eq!(rep.rows[0].algorithm, "dmrw");
        assert_eq!(rep.ratios(Algorithm::Dmrw).len(), 1);
    }
}
