//! Exhaustive maximum edge count on a tiny vertex set, for cross-checking the
//! bounds where they can be computed exactly.

use hypersep::oracle::oracle_max_edges;

fn main() {
    for (n, k, r, min_size) in [(6, 3, 3, 5), (6, 1, 3, 4), (5, 2, 3, 5)] {
        let res = oracle_max_edges(n, k, r, min_size, None).unwrap();
        println!(
            "n={n} k={k} r={r} min size {min_size}: {} edges ({} nodes, {} prunes)",
            res.value, res.nodes, res.prunes
        );
        let edges: Vec<_> = res.witness.iter().map(|e| e.to_vec()).collect();
        println!("  witness {edges:?}");
    }
}
