//! Exact limit of the relative surplus when copies of the binary construction
//! are glued along an independent set.

use hypersep::arith::fmt_rational;
use hypersep::bounds::g_limit_exact;

fn main() {
    for (k, r, c) in [(6, 3, 3), (12, 3, 3), (8, 4, 2)] {
        match g_limit_exact(k, r, c) {
            Ok(g) => println!(
                "k={k} r={r} c={c}: limit {} (leading form {}, correction {})",
                fmt_rational(&g.value),
                fmt_rational(&g.leading_form),
                fmt_rational(&g.correction)
            ),
            Err(e) => println!("k={k} r={r} c={c}: {e}"),
        }
    }
}
