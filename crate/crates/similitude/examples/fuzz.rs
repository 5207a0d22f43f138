//! Run the seeded equivalence and invariant suites and print a summary.
//! The same machinery backs `similitude fuzz`.
//!
//! ```text
//! cargo run --release --example fuzz
//! ```

use similitude::harness::{run_equivalence, run_invariants, GenConfig};

fn main() {
    let config = GenConfig { seed: 1, cases: 2000, ..GenConfig::default() };
    println!("seed {}, {} cases\n", config.seed, config.cases);

    let equivalence = run_equivalence(&config);
    println!(
        "equivalence: {}/{} passed, max relative deviation {:.3e}",
        equivalence.passed, equivalence.total, equivalence.max_rel_error
    );
    println!(
        "two geometric routes agreed on {}/{} non-dilatation cases (max pairwise {:.3e})",
        equivalence.three_way.agreed,
        equivalence.three_way.checked,
        equivalence.three_way.max_pairwise_rel
    );
    let tally = equivalence.betweenness_tally;
    println!(
        "betweenness configurations along the probe join: inside={} beyond={} before={}",
        tally.case1, tally.case2, tally.case3
    );
    println!("\nper-route error histograms (log10 buckets):");
    for (method, histogram) in &equivalence.histograms {
        let buckets: Vec<String> =
            histogram.buckets.iter().map(|(k, v)| format!("1e{k}:{v}")).collect();
        println!("  {method}: {}", buckets.join(" "));
    }

    let invariants = run_invariants(&config);
    println!("\ninvariants: {}/{} checks passed", invariants.passed, invariants.total);
    for (name, count) in &invariants.invariants {
        println!("  {name}: {}/{}", count.passed, count.total);
    }
}
