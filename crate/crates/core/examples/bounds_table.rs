//! Prints a CSV table of every edge bound over a small parameter grid.

use hypersep::arith::rat_int;
use hypersep::bounds::{bounds_report, write_csv};

fn main() {
    let mut rows = Vec::new();
    for r in 3..=4 {
        for k in [r, 2 * r, 4 * r] {
            for c in 1..=3 {
                let n = k + (c + 1) * k * 2;
                rows.push(bounds_report(n, k, r, &rat_int(c as i64), None).unwrap());
            }
        }
    }
    write_csv(std::io::stdout().lock(), &rows).unwrap();
}
