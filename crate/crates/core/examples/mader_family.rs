//! The clique-chain family: copies of a complete hypergraph sharing a common
//! k-set. Compares the edge count with the conjectured extremal value.

use hypersep::arith::{fmt_rational, rat_int};
use hypersep::bounds::conjecture_bound;
use hypersep::constructions::{mader_graph, mader_hypergraph};
use hypersep::septree::validate_separator_tree;

fn main() {
    let g = mader_graph(3, 2).unwrap();
    println!("graph q=3 k=2: n = {}, edges = {}", g.params.n, g.hypergraph.edge_count());

    for (q, k, r) in [(2, 3, 3), (3, 3, 3), (4, 3, 3), (3, 4, 4)] {
        let out = mader_hypergraph(q, k, r).unwrap();
        let n = out.params.n;
        let conj = conjecture_bound(n, k, r).unwrap();
        let cert = validate_separator_tree(&out.hypergraph, &out.tree, k, &rat_int(1));
        println!(
            "q={q} k={k} r={r}: n = {n}, edges = {}, conjecture {}, certificate valid {}",
            out.hypergraph.edge_count(),
            fmt_rational(&conj.value),
            cert.valid
        );
    }
}
