//! Builds the balanced binary construction, checks its edge count against the
//! closed form and writes the instance plus its certificate as JSON.
//!
//!     cargo run --release --example construct_example1 -- 1 3 1 out.json

use hypersep::arith::fmt_rational;
use hypersep::bounds::bound_special;
use hypersep::constructions::example1;
use hypersep::septree::validate_separator_tree;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, default: usize| args.get(i).map_or(Ok(default), |s| s.parse());
    let (s, r, c) = (num(0, 1)?, num(1, 3)?, num(2, 1)?);

    let out = example1(s, r, c)?;
    let p = &out.params;
    let edges = out.hypergraph.edge_count();
    println!("n = {}, k = {}, r = {}, edges = {edges}, predicted = {}", p.n, p.k, r, out.predicted_edges);
    assert_eq!(edges as u128, out.predicted_edges);

    let cert = validate_separator_tree(&out.hypergraph, &out.tree, p.k, &hypersep::arith::rat_int(c as i64));
    println!("certificate valid: {}", cert.valid);

    let bound = bound_special(p.n - p.k, p.k, r, &hypersep::arith::rat_int(c as i64))?;
    println!("special bound: {} (in regime: {})", fmt_rational(&bound.value), bound.in_regime);

    if let Some(path) = args.get(3) {
        std::fs::write(path, out.to_json())?;
        println!("wrote {path}");
    }
    Ok(())
}
