//! Recomputes the edge count of a construction from its separator tree, term
//! by term, and prints the pieces.

use hypersep::arith::rat;
use hypersep::constructions::example2;
use hypersep::septree::audit_edge_identity;

fn main() {
    let out = example2(1, 3, &rat(1, 6)).unwrap();
    let ledger = audit_edge_identity(&out.hypergraph, &out.tree).unwrap();
    println!("n = {}, k = {}, r = {}, edges = {}", ledger.n, ledger.k, ledger.r, ledger.edges);
    println!("base term      {}", ledger.base);
    println!("atom total     {}", ledger.atom_total);
    println!("separator sum  {}", ledger.separator_total);
    for a in &ledger.atoms {
        println!("  atom {:>3} size {:>2} missing {}", a.node, a.size, a.anti_edges);
    }
    for s in ledger.separators.iter().filter(|s| s.anti_edges > 0) {
        println!(
            "  separator {:>3} missing {:>3} bonded missing {} (direct {}, {:?})",
            s.node, s.anti_edges, s.bonded_anti_edges, s.bonded_anti_edges_direct, s.direct_method
        );
    }
    println!("identity holds: {}", ledger.holds());
}
