//! Deletes the tiny atoms of a separator tree, then checks that the edge count
//! stays below the normal-tree bound plus the two correction terms.

use hypersep::arith::{fmt_rational, rat};
use hypersep::bounds::check_deletion_inequality;
use hypersep::constructions::example2;
use hypersep::septree::{abstract_tree, delete_tiny_atoms, free_difference, orient};

fn main() {
    let c = rat(3, 1);
    let out = example2(1, 3, &rat(1, 6)).unwrap();
    let (h, tree, k) = (&out.hypergraph, &out.tree, out.params.k);

    let shape = abstract_tree(tree);
    let d = delete_tiny_atoms(&shape, k).unwrap();
    println!(
        "atoms {} -> {}, tiny vertices removed {}",
        shape.atoms().count(),
        d.tree.atoms().count(),
        d.tiny_vertices_removed()
    );

    let sigma = orient(tree, k);
    let free_total: i128 = d.survivors.iter().map(|&(old, _)| free_difference(h, tree, &sigma, old).unwrap()).sum();
    let chk = check_deletion_inequality(h.edge_count() as u128, &shape, k, 3, &c, free_total).unwrap();
    println!("edges            {}", chk.edges);
    println!("normal bound     {}", fmt_rational(&chk.normal_bound));
    println!("essential diff   {}", chk.essential);
    println!("free diff total  {}", chk.free_total);
    println!("right-hand side  {}  holds: {}", fmt_rational(&chk.rhs), chk.holds);
}
