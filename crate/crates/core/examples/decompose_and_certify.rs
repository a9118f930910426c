//! Finds a separator tree for a chain of triangles and validates it.
//! Also shows the failure path on a complete hypergraph.

use hypersep::arith::rat_int;
use hypersep::septree::{build_separator_tree, validate_separator_tree};
use hypersep::Hypergraph;

fn main() {
    // a "necklace" of triangles: consecutive edges share one vertex
    let n = 13;
    let edges: Vec<[u32; 3]> = (0..6).map(|i| [2 * i, 2 * i + 1, 2 * i + 2]).collect();
    let h = Hypergraph::new(3, n, edges).unwrap();

    let (k, c) = (1, rat_int(2));
    let tree = build_separator_tree(&h, k, &c).expect("a path of edges decomposes");
    println!("{} nodes, {} atoms", tree.len(), tree.atoms().count());
    for a in tree.atoms() {
        println!("  atom {a}: {:?}", tree.vertices(a));
    }
    let report = validate_separator_tree(&h, &tree, k, &c);
    println!("valid: {}", report.valid);

    let k7 = Hypergraph::complete(3, 7).unwrap();
    match build_separator_tree(&k7, 2, &rat_int(1)) {
        Ok(_) => println!("unexpected tree for the complete hypergraph"),
        Err(fail) => println!("complete hypergraph: stuck on {:?}", fail.vertices),
    }
}
