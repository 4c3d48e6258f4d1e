//! Prints subproblem counts as CSV for the comb and balanced families.
//!
//! cargo run --release --example growth [comb|balanced] [max-size]

use ted::algo::Algorithm;
use ted::instrument::{gen_balanced, gen_comb, gen_comb_mirror, growth_report};

fn main() {
    let mut args = std::env::args().skip(1);
    let family = args.next().unwrap_or_else(|| "comb".into());
    let max: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(256);
    let report = match family.as_str() {
        "comb" => {
            let sizes: Vec<usize> = (4..).map(|k| 1usize << k).take_while(|&n| n <= max).collect();
            growth_report(
                "comb",
                |n| (gen_comb(n).unwrap(), gen_comb_mirror(n).unwrap()),
                &sizes,
                &Algorithm::ALL,
            )
        }
        "balanced" => {
            let sizes: Vec<usize> = (4..).map(|k| (1usize << k) - 1).take_while(|&n| n <= max).collect();
            growth_report(
                "balanced",
                |n| {
                    let k = (n + 1).trailing_zeros() - 1;
                    (gen_balanced(k).unwrap(), gen_balanced(k).unwrap())
                },
                &sizes,
                &Algorithm::ALL,
            )
        }
        other => {
            eprintln!("unknown family {other:?} (expected comb or balanced)");
            std::process::exit(2);
        }
    }
    .expect("sizes fit in subforest keys");
    print!("{}", report.to_csv());
    for algo in Algorithm::ALL {
        let r: Vec<String> = report.ratios(algo).iter().map(|x| format!("{x:.2}")).collect();
        eprintln!("{algo} doubling ratios: {}", r.join(" "));
    }
}
