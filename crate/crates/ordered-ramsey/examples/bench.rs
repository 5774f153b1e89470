use ordered_ramsey::encode::encode_no_mono;
use ordered_ramsey::model::catalog;
use ordered_ramsey::solver::{solve, SolverConfig};
use std::time::Instant;

fn main() {
    let p = catalog("k4e-miss-0-1").unwrap();
    for n in [10, 11, 12] {
        let f = encode_no_mono(&p, &p, n).unwrap();
        let t = Instant::now();
        let out = solve(&f, &SolverConfig::default());
        println!(
            "N={n}: {:?} in {:.2?}  conflicts={} decisions={} props={}",
            out.verdict, t.elapsed(), out.stats.conflicts, out.stats.decisions, out.stats.propagations
        );
    }
}
