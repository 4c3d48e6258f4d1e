//! Acceptance criteria 1-10. Each test writes one `PASS`/`FAIL` line to
//! stderr (bypassing the harness's output capture) and then asserts.

use std::collections::HashMap;
use std::io::Write;
use std::process::Command;
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ted::algo::{
    apply_script, distance, distance_strategy, oracle_distance, Algorithm, Computation, RandomStrategy,
};
use ted::forest::{build_index, Label, Tree};
use ted::instrument::{
    all_shapes, check_dmrw_bounds, comb_pair_sum, gen_balanced, gen_comb, gen_comb_mirror, gen_path,
    gen_random, gen_random_labeled, gen_zigzag, keyroot_mass, light_mass, path_of_str, RunStats,
};
use ted::io::{emit_bracket, parse_bracket, parse_dot_bracket};
use ted::CostModel;

fn report(id: u32, name: &str, pass: bool, detail: impl AsRef<str>) {
    let line = format!(
        "criterion {id:>2} [{}] {name}: {}\n",
        if pass { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn unit() -> CostModel {
    CostModel::unit()
}

fn cost(f: &Tree, g: &Tree, algo: Algorithm) -> i64 {
    distance(f, g, &unit(), algo).unwrap().cost
}

type FamilyCache = HashMap<(String, usize, Algorithm), RunStats>;

// Large family instances are computed once, one at a time.
static FAMILY: Mutex<Option<FamilyCache>> = Mutex::new(None);

fn family(name: &str, size: usize) -> (Tree, Tree) {
    match name {
        "comb" => (gen_comb(size).unwrap(), gen_comb_mirror(size).unwrap()),
        "balanced" => {
            let k = (size + 1).trailing_zeros() - 1;
            (gen_balanced(k).unwrap(), gen_balanced(k).unwrap())
        }
        // F balanced with 2^(k+1)-1 nodes against a zigzag of 2^(k+1) nodes.
        "balanced-zigzag" => {
            let k = (size + 1).trailing_zeros() - 1;
            (gen_balanced(k).unwrap(), gen_zigzag(size + 1).unwrap())
        }
        "zigzag" => (gen_zigzag(size).unwrap(), gen_zigzag(size).unwrap()),
        _ => unreachable!(),
    }
}

fn family_stats(name: &str, size: usize, algo: Algorithm) -> (usize, usize, RunStats) {
    let (f, g) = family(name, size);
    let mut guard = FAMILY.lock().unwrap_or_else(|e| e.into_inner());
    let cache = guard.get_or_insert_with(HashMap::new);
    let stats = *cache
        .entry((name.to_string(), size, algo))
        .or_insert_with(|| distance(&f, &g, &unit(), algo).unwrap().stats);
    (f.len(), g.len(), stats)
}

// Instance sets shared by criteria 1-4.

fn criterion1_pairs() -> Vec<(Tree, Tree)> {
    let mut out = Vec::new();
    let shapes: Vec<Tree> = (0..=4).flat_map(all_shapes).collect();
    for f in &shapes {
        for g in &shapes {
            out.push((f.clone(), g.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let (n, m) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let f = gen_random_labeled(n, rng.gen(), 3, &["a", "b"]);
        let g = gen_random_labeled(m, rng.gen(), 3, &["a", "b"]);
        out.push((f, g));
    }
    out
}

fn relabel_randomly(t: &Tree, rng: &mut ChaCha8Rng, alphabet: &[&str]) -> Tree {
    t.map_labels(|_| Label::new(alphabet[rng.gen_range(0..alphabet.len())]).unwrap())
}

fn mixed_tree(rng: &mut ChaCha8Rng) -> Tree {
    let n = rng.gen_range(1..=80);
    let abc = ["a", "b", "c"];
    match rng.gen_range(0..4) {
        0 => relabel_randomly(&gen_path(n), rng, &abc),
        1 => {
            let c = gen_comb((n + 1) & !1).unwrap();
            if rng.gen() {
                c
            } else {
                relabel_randomly(&c.mirror(), rng, &abc)
            }
        }
        _ => gen_random_labeled(n, rng.gen(), rng.gen_range(1..=5), &abc),
    }
}

fn criterion2_pairs() -> Vec<(Tree, Tree, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..500)
        .map(|_| {
            let f = mixed_tree(&mut rng);
            let g = mixed_tree(&mut rng);
            (f, g, rng.gen())
        })
        .collect()
}

fn criterion3_strings() -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let word = |rng: &mut ChaCha8Rng| -> String {
        let len = rng.gen_range(0..=30);
        (0..len).map(|_| b"acgu"[rng.gen_range(0..4)] as char).collect()
    };
    (0..200).map(|_| (word(&mut rng), word(&mut rng))).collect()
}

fn levenshtein(a: &str, b: &str) -> i64 {
    let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
    let mut d = vec![vec![0i64; b.len() + 1]; a.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i as i64;
    }
    for (j, cell) in d[0].iter_mut().enumerate() {
        *cell = j as i64;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let sub = d[i - 1][j - 1] + (a[i - 1] != b[j - 1]) as i64;
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[a.len()][b.len()]
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let pairs = criterion1_pairs();
    let mut bad = Vec::new();
    for (f, g) in &pairs {
        let want = oracle_distance(f, g, &unit()).unwrap();
        for algo in Algorithm::ALL {
            let got = cost(f, g, algo);
            if got != want {
                bad.push(format!("{algo} {} / {}: {got} != {want}", emit_bracket(f), emit_bracket(g)));
            }
        }
    }
    let pass = bad.is_empty();
    report(
        1,
        "oracle equivalence",
        pass,
        format!("{} pairs, {} mismatches, {:.1?}", pairs.len(), bad.len(), start.elapsed()),
    );
    assert!(pass, "{:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn criterion_02_cross_algorithm_equality() {
    let start = Instant::now();
    let pairs = criterion2_pairs();
    let mut bad = 0;
    for (f, g, seed) in &pairs {
        let sz = cost(f, g, Algorithm::Sz);
        let others = [
            cost(f, g, Algorithm::Klein),
            cost(f, g, Algorithm::Dmrw),
            distance_strategy(f, g, &unit(), &RandomStrategy { seed: *seed }).unwrap().cost,
        ];
        if others.iter().any(|&c| c != sz) {
            bad += 1;
        }
    }
    let pass = bad == 0;
    report(
        2,
        "cross-algorithm equality",
        pass,
        format!("{} pairs, {bad} disagreements, {:.1?}", pairs.len(), start.elapsed()),
    );
    assert!(pass);
}

#[test]
fn criterion_03_string_edit_reduction() {
    let start = Instant::now();
    let strings = criterion3_strings();
    let mut bad = 0;
    for (a, b) in &strings {
        let (f, g) = (path_of_str(a), path_of_str(b));
        let want = levenshtein(a, b);
        if Algorithm::ALL.iter().any(|&algo| cost(&f, &g, algo) != want) {
            bad += 1;
        }
    }
    let pass = bad == 0;
    report(
        3,
        "string edit reduction",
        pass,
        format!("{} string pairs, {bad} mismatches, {:.1?}", strings.len(), start.elapsed()),
    );
    assert!(pass);
}

#[test]
fn criterion_04_dmrw_subproblem_bound() {
    let start = Instant::now();
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut worst = 0.0f64;
    let mut check = |label: String, n: usize, m: usize, stats: RunStats| {
        // The bound is stated for non-empty trees; with an empty side it is 0.
        if n == 0 || m == 0 {
            return;
        }
        let b = check_dmrw_bounds(&stats, n, m);
        worst = worst.max(b.count as f64 / b.limit);
        checked += 1;
        if !b.pass {
            violations.push(format!("{label}: {} > {}", b.count, b.limit));
        }
    };
    let dmrw = |f: &Tree, g: &Tree| distance(f, g, &unit(), Algorithm::Dmrw).unwrap().stats;

    for (f, g) in criterion1_pairs() {
        check(format!("c1 {}", emit_bracket(&f)), f.len(), g.len(), dmrw(&f, &g));
    }
    for (f, g, _) in criterion2_pairs() {
        check("c2".into(), f.len(), g.len(), dmrw(&f, &g));
    }
    for (a, b) in criterion3_strings() {
        let (f, g) = (path_of_str(&a), path_of_str(&b));
        check(format!("c3 {a}/{b}"), f.len(), g.len(), dmrw(&f, &g));
    }
    for size in [8, 16, 32, 64, 128, 256, 512] {
        for name in ["comb", "zigzag"] {
            let (n, m, s) = family_stats(name, size, Algorithm::Dmrw);
            check(format!("{name}-{size}"), n, m, s);
        }
    }
    for size in [7, 15, 31, 63, 127, 255, 511] {
        for name in ["balanced", "balanced-zigzag"] {
            let (n, m, s) = family_stats(name, size, Algorithm::Dmrw);
            check(format!("{name}-{size}"), n, m, s);
        }
    }
    let pass = violations.is_empty();
    report(
        4,
        "subproblem bound 4(nm)^(3/2)",
        pass,
        format!(
            "{checked} non-empty instances, {} violations, max count/bound {worst:.3}, {:.1?}",
            violations.len(),
            start.elapsed()
        ),
    );
    assert!(pass, "{violations:?}");
}

#[test]
fn criterion_05_rootless_pairs_are_relevant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut missing = 0usize;
    let mut checked = 0usize;
    for _ in 0..20 {
        let f = gen_random_labeled(rng.gen_range(1..=12), rng.gen(), 4, &["a", "b"]);
        let g = gen_random_labeled(rng.gen_range(1..=12), rng.gen(), 4, &["a", "b"]);
        for algo in Algorithm::ALL {
            let c = Computation::run(&f, &g, &unit(), algo).unwrap();
            for v in f.nodes() {
                for w in g.nodes() {
                    checked += 1;
                    if !c.has_rootless_pair(v, w) {
                        missing += 1;
                    }
                }
            }
        }
    }
    let pass = missing == 0;
    report(
        5,
        "memo completeness for (F_v - v, G_w - w)",
        pass,
        format!("{checked} node pairs over 3 strategies, {missing} missing"),
    );
    assert!(pass);
}

#[test]
fn criterion_06_decomposition_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    for i in 0..100 {
        let n = rng.gen_range(1..=200);
        let t = gen_random(n, rng.gen(), rng.gen_range(1..=6));
        let idx = build_index(&t);
        let log = 63 - (n as u64).leading_zeros();
        let top = idx.toplight();
        let mass: u32 = top.iter().map(|&v| idx.size(v)).sum();
        if mass as usize > n {
            failures.push(format!("tree {i}: TopLight sizes sum to {mass} > {n}"));
        }
        if let Some(&v) = top.iter().find(|&&v| 2 * idx.size(v) as usize >= n) {
            failures.push(format!("tree {i}: TopLight node of size {} >= n/2", idx.size(v)));
        }
        if let Some(v) = t.nodes().find(|&v| idx.ldepth(v) > log + 1) {
            failures.push(format!("tree {i}: ldepth {} > {}", idx.ldepth(v), log + 1));
        }
        let cdepth_sum: u64 = t.nodes().map(|v| idx.cdepth(v) as u64).sum();
        if keyroot_mass(&idx) != cdepth_sum {
            failures.push(format!("tree {i}: keyroot mass {} != cdepth sum {cdepth_sum}", keyroot_mass(&idx)));
        }
        let ldepth_sum: u64 = t.nodes().map(|v| idx.ldepth(v) as u64).sum();
        if light_mass(&idx) != ldepth_sum {
            failures.push(format!("tree {i}: light mass != ldepth sum"));
        }
    }
    let pass = failures.is_empty();
    report(
        6,
        "decomposition invariants",
        pass,
        format!("100 random trees, {} failures", failures.len()),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_07_growth_separation() {
    let start = Instant::now();
    let combs: Vec<u64> = [64, 128, 256, 512]
        .iter()
        .map(|&n| family_stats("comb", n, Algorithm::Dmrw).2.subproblem_count)
        .collect();
    let ratios: Vec<f64> = combs.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let comb_ok = ratios.iter().all(|r| (6.0..=10.0).contains(r));

    let mut sep = Vec::new();
    for n in [63, 127, 255, 511, 1023] {
        let klein = family_stats("balanced", n, Algorithm::Klein).2.subproblem_count;
        let dmrw = family_stats("balanced", n, Algorithm::Dmrw).2.subproblem_count;
        sep.push(klein as f64 / dmrw as f64);
    }
    let sep_ok = sep.windows(2).all(|w| w[1] >= w[0]);

    let pass = comb_ok && sep_ok;
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", ");
    report(
        7,
        "growth separation",
        pass,
        format!(
            "comb DMRW counts {combs:?}, doubling ratios [{}]; balanced Klein/DMRW [{}], {:.1?}",
            fmt(&ratios),
            fmt(&sep),
            start.elapsed()
        ),
    );
    assert!(comb_ok, "comb ratios {ratios:?}");
    assert!(sep_ok, "balanced ratios {sep:?}");
}

#[test]
fn criterion_08_comb_lower_bound_sum() {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in [16, 32, 64] {
        let (f, g) = (gen_comb(n).unwrap(), gen_comb_mirror(n).unwrap());
        let floor = comb_pair_sum(n, n);
        for algo in Algorithm::ALL {
            let count = distance(&f, &g, &unit(), algo).unwrap().stats.subproblem_count;
            pass &= count >= floor;
            rows.push(format!("{algo}@{n}={count}>={floor}"));
        }
    }
    report(8, "comb lower-bound sum", pass, rows.join(" "));
    assert!(pass, "{rows:?}");
}

#[test]
fn criterion_09_script_validity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut bad = Vec::new();
    for i in 0..200 {
        let f = gen_random_labeled(rng.gen_range(0..=60), rng.gen(), rng.gen_range(1..=5), &["a", "b", "c"]);
        let g = gen_random_labeled(rng.gen_range(0..=60), rng.gen(), rng.gen_range(1..=5), &["a", "b", "c"]);
        let algo = Algorithm::ALL[i % 3];
        let c = Computation::run(&f, &g, &unit(), algo).unwrap();
        let s = c.edit_script();
        if s.total_cost != c.cost() || s.cost_under(&f, &unit()) != c.cost() {
            bad.push(format!("pair {i}: script cost {} vs {}", s.total_cost, c.cost()));
        }
        match apply_script(&f, &s) {
            Ok(h) if h == g => {}
            Ok(h) => bad.push(format!("pair {i}: got {}", emit_bracket(&h))),
            Err(e) => bad.push(format!("pair {i}: {e}")),
        }
    }
    let pass = bad.is_empty();
    report(
        9,
        "edit script validity",
        pass,
        format!("200 pairs, {} failures, {:.1?}", bad.len(), start.elapsed()),
    );
    assert!(pass, "{bad:?}");
}

fn random_dot_bracket(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(0..=120);
    let mut s = String::new();
    let mut depth = 0usize;
    for i in 0..len {
        let left = len - i;
        let c = match rng.gen_range(0..3) {
            _ if depth == left => ')',
            0 if depth + 1 < left => '(',
            1 if depth > 0 => ')',
            _ => '.',
        };
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        s.push(c);
    }
    s
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ted")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn criterion_10_io_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let alphabet = ["a", "B_1", "x.y", "-", "two words", "q\"t", "back\\slash", "ü", "(", ","];
    let mut round_trip_failures = 0;
    for _ in 0..1000 {
        let t = gen_random_labeled(rng.gen_range(0..=50), rng.gen(), 4, &alphabet);
        if parse_bracket(&emit_bracket(&t)).ok().as_ref() != Some(&t) {
            round_trip_failures += 1;
        }
    }

    let mut count_failures = 0;
    for _ in 0..200 {
        let s = random_dot_bracket(&mut rng);
        let pairs = s.matches('(').count();
        let dots = s.matches('.').count();
        match parse_dot_bracket(&s) {
            Ok(t) if t.len() == pairs + dots + 1 => {}
            _ => count_failures += 1,
        }
    }

    let dir = std::env::temp_dir().join(format!("ted-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    };
    let f = write("f.tree", "a(b,c)\n");
    let g = write("g.tree", "a(c)\n");
    let bad = write("bad.tree", "a(b,\n");
    let bad_costs = write("bad.json", r#"{"del_default":1,"rel_default_eq":0}"#);

    let mut smoke = Vec::new();
    let mut expect = |what: &str, got: (i32, String, String), code: i32, stdout: Option<&str>| {
        let ok = got.0 == code && stdout.is_none_or(|s| got.1 == s) && (code == 0 || !got.2.is_empty());
        if !ok {
            smoke.push(format!("{what}: {got:?}"));
        }
    };
    expect("dist", run_cli(&["dist", &f, &g]), 0, Some("1\n"));
    expect("dist same", run_cli(&["dist", &f, &f]), 0, Some("0\n"));
    expect("script", run_cli(&["script", &f, &g, "--algo", "sz"]), 0, Some("del-f 0\ncost 1\n"));
    expect("gen", run_cli(&["gen", "path", "3"]), 0, Some("a(a(a))\n"));
    expect("rna", run_cli(&["rna", "(.)"]), 0, Some("root(pair(base))\n"));
    expect("count", run_cli(&["count", &f, &g, "--algo-list", "dmrw"]), 0, None);
    expect("selftest", run_cli(&["selftest"]), 0, None);
    expect("parse error", run_cli(&["dist", &bad, &g]), 2, Some(""));
    expect("missing file", run_cli(&["dist", &f, "/no/such/file"]), 2, Some(""));
    expect("bad costs", run_cli(&["dist", &f, &g, "--costs", &bad_costs]), 2, Some(""));
    expect("bad gen size", run_cli(&["gen", "comb", "5"]), 2, Some(""));
    expect("bad rna", run_cli(&["rna", "(()"]), 2, Some(""));
    expect("bad usage", run_cli(&["dist"]), 2, Some(""));
    let json = run_cli(&["dist", &f, &g, "--format", "json"]);
    let parsed: Result<serde_json::Value, _> = serde_json::from_str(&json.1);
    if !matches!(&parsed, Ok(v) if v["cost"] == 1 && v["subproblems"].is_u64()) {
        smoke.push(format!("json: {json:?}"));
    }
    let _ = std::fs::remove_dir_all(&dir);

    let pass = round_trip_failures == 0 && count_failures == 0 && smoke.is_empty();
    report(
        10,
        "I/O round trips and CLI contract",
        pass,
        format!(
            "1000 bracket round trips ({round_trip_failures} failed), 200 dot-bracket counts ({count_failures} failed), {} CLI smoke failures",
            smoke.len()
        ),
    );
    assert!(pass, "{smoke:?}");
}
