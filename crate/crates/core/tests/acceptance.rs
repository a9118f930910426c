//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Large instances are generated once, checked for every criterion that
//! needs them, and dropped before the next one is built.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hypersep::arith::{choose, fmt_rational, rat, rat_int, Rational};
use hypersep::bounds::{
    bound_general, bound_special, check_halving_inequality, check_reach_one_lower_bound, check_doubling_identity, check_deletion_inequality,
    conjecture_bound, g_limit_exact, g_relative, phi, surplus, relative_surplus_bound, x_of_separator,
};
use hypersep::connectivity::contains_k1_connected_subgraph;
use hypersep::constructions::{example1, example1_chain, example2, mader_hypergraph, ConstructionOutput};
use hypersep::oracle::oracle_max_edges;
use hypersep::septree::{
    abstract_tree, audit_edge_identity, delete_tiny_atoms, free_difference, is_normal_size, orient,
    validate_separator_tree,
};
use num_traits::{One, Zero};

/// Failures collected for one criterion.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn line(&self, name: &str, extra: &str) -> (bool, String) {
        let pass = self.failures.is_empty() && self.checked > 0;
        let detail = match self.failures.first() {
            Some(f) => format!("{} of {} checks failed; first: {f}", self.failures.len(), self.checked),
            None => format!("{} checks{extra}", self.checked),
        };
        (pass, format!("{name}: {detail}"))
    }
}

#[derive(Default)]
struct InstanceSuite {
    audit: Tally,
    prediction: Tally,
    deletion: Tally,
    sandwich: Tally,
    in_regime: usize,
}

impl InstanceSuite {
    fn run(&mut self, label: &str, out: &ConstructionOutput, c: &Rational, deletion: bool) {
        let h = &out.hypergraph;
        let (n, k, r) = (h.n(), out.params.k, h.r());

        match audit_edge_identity(h, &out.tree) {
            Ok(l) => self.audit.check(l.holds() && l.k == k, || format!("{label}: ledger rhs {} vs {}", l.rhs, l.edges)),
            Err(e) => self.audit.check(false, || format!("{label}: {e}")),
        }
        let cert = validate_separator_tree(h, &out.tree, k, c);
        self.audit.check(cert.valid, || format!("{label}: certificate {:?}", cert.violations.first()));

        self.prediction.check(out.prediction_holds(), || {
            format!("{label}: {} edges, predicted {}", h.edge_count(), out.predicted_edges)
        });

        if deletion {
            self.deletion_checks(label, out, c);
        }

        let edges = rat_int(h.edge_count() as i64);
        let t = n - k;
        let g = g_relative(n, k, r, surplus(h, k).expect("n > k")).expect("n > k");
        let main = relative_surplus_bound(n, k, r, c).expect("valid parameters");
        if main.in_regime {
            self.in_regime += 1;
            self.sandwich.check(g <= main.value, || {
                format!("{label}: g = {} above {}", fmt_rational(&g), fmt_rational(&main.value))
            });
        }
        for (name, b) in [("general", bound_general(t, k, r, c)), ("special", bound_special(t, k, r, c))] {
            let b = b.expect("valid parameters");
            if b.in_regime {
                self.in_regime += 1;
                self.sandwich.check(edges <= b.value, || {
                    format!("{label}: e = {edges} above the {name} bound {}", fmt_rational(&b.value))
                });
            }
        }
    }

    fn deletion_checks(&mut self, label: &str, out: &ConstructionOutput, c: &Rational) {
        let (h, tree, k, r) = (&out.hypergraph, &out.tree, out.params.k, out.hypergraph.r());
        let at = abstract_tree(tree);
        let sigma = orient(tree, k);
        let d = match delete_tiny_atoms(&at, k) {
            Ok(d) => d,
            Err(e) => return self.deletion.check(false, || format!("{label}: {e}")),
        };
        let tiny: usize = at.atoms().filter(|&a| !is_normal_size(at.size(a), k)).map(|a| at.size(a) - k).sum();
        self.deletion.check(d.tree.is_normal(k) && d.tree.sizes_consistent(), || format!("{label}: result not normal"));
        self.deletion.check(d.tree.vertex_count() + tiny == at.vertex_count(), || {
            format!("{label}: t' = {} but t - tiny = {}", d.tree.vertex_count() - k, at.vertex_count() - k - tiny)
        });
        let after = d.tree.orientation(k);
        for &(old, new) in &d.survivors {
            self.deletion.check(sigma.reach(old) == after.reach(new), || {
                format!("{label}: separator {old} reach {} became {}", sigma.reach(old), after.reach(new))
            });
        }
        let mut free_total = 0i128;
        for &(old, _) in &d.survivors {
            match free_difference(h, tree, &sigma, old) {
                Ok(x) => free_total += x,
                Err(e) => return self.deletion.check(false, || format!("{label}: {e}")),
            }
        }
        match check_deletion_inequality(h.edge_count() as u128, &at, k, r, c, free_total) {
            Ok(chk) => self.deletion.check(chk.holds, || {
                format!("{label}: {} edges above {}", chk.edges, fmt_rational(&chk.rhs))
            }),
            Err(e) => self.deletion.check(false, || format!("{label}: {e}")),
        }
    }
}

fn instance_suite(lines: &mut Vec<(bool, String)>) {
    let mut suite = InstanceSuite::default();
    let mut named = Tally::default();

    for r in [3, 4] {
        for s in [1, 2] {
            for c in [1, 2, 3] {
                let out = example1(s, r, c).expect("example1 parameters are valid");
                let label = format!("example1(s={s},r={r},c={c})");
                suite.run(&label, &out, &rat_int(c as i64), false);
                let expected = match (s, r, c) {
                    (1, 3, 1) => Some(2134),
                    (1, 3, 3) => Some(19718),
                    _ => None,
                };
                if let Some(e) = expected {
                    named.check(out.hypergraph.edge_count() == e, || format!("{label}: {} edges", out.hypergraph.edge_count()));
                }
                let n_special = bound_special(out.params.n - out.params.k, out.params.k, r, &rat_int(c as i64)).unwrap();
                named.check(n_special.value == rat_int(out.hypergraph.edge_count() as i64), || {
                    format!("{label}: N = {}", fmt_rational(&n_special.value))
                });
            }
        }
    }
    for m in 1..=3 {
        let out = example1_chain(1, 4, 2, m).expect("chain parameters are valid");
        suite.run(&format!("example1_chain(m={m})"), &out, &rat_int(2), false);
    }
    for (q, k, r) in [(2, 3, 3), (3, 2, 3), (4, 3, 3), (3, 4, 4)] {
        let out = mader_hypergraph(q, k, r).expect("mader parameters are valid");
        let label = format!("mader_hypergraph({q},{k},{r})");
        match audit_edge_identity(&out.hypergraph, &out.tree) {
            Ok(l) => suite.audit.check(l.holds(), || format!("{label}: ledger")),
            Err(e) => suite.audit.check(false, || format!("{label}: {e}")),
        }
        suite.prediction.check(out.prediction_holds(), || format!("{label}: prediction"));
    }
    let mut example2_count = 0;
    for (s, r) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
        let k = (1usize << s) * r;
        for pk in 1..=k {
            let out = example2(s, r, &rat(pk as i64, k as i64)).expect("admissible p");
            let label = format!("example2(s={s},r={r},pk={pk})");
            if (s, r, pk) == (1, 3, 1) {
                named.check(out.hypergraph.edge_count() == 2826, || format!("{label}: {} edges", out.hypergraph.edge_count()));
            }
            suite.run(&label, &out, &Rational::one(), true);
            example2_count += 1;
        }
    }

    let extra1 = format!(" (incl. {example2_count} Example 2 instances)");
    lines.push(suite.audit.line("edge identity and certificates", &extra1));
    let mut prediction = suite.prediction;
    prediction.checked += named.checked;
    prediction.failures.extend(named.failures);
    lines.push(prediction.line("prediction equality", ""));
    lines.push(suite.deletion.line("deletion operation", ""));
    let extra7 = format!(" ({} in-regime bounds)", suite.in_regime);
    let mut sandwich = suite.sandwich;
    sandwich.check(suite.in_regime > 0, || "no instance was inside any regime".into());
    lines.push(sandwich.line("bound sandwich", &extra7));
}

fn micro_certificate() -> (bool, String) {
    let start = Instant::now();
    let out = mader_hypergraph(2, 3, 3).expect("valid");
    let h = &out.hypergraph;
    let witness = contains_k1_connected_subgraph(h, 3, 5);
    let conj = conjecture_bound(6, 3, 3).expect("valid");
    let elapsed = start.elapsed();
    let pass = witness.is_none()
        && h.edge_count() == 19
        && conj.value == rat_int(19)
        && elapsed < Duration::from_secs(10);
    (pass, format!("micro certificate: witness {witness:?}, e = {}, conjecture {}, {elapsed:?}", h.edge_count(), fmt_rational(&conj.value)))
}

fn exact_limit() -> (bool, String) {
    let mut t = Tally::default();
    match g_limit_exact(6, 3, 3) {
        Ok(g) => {
            t.check(g.value == rat(1651, 216), || format!("limit {}", fmt_rational(&g.value)));
            t.check(g.surplus_formula == rat_int(g.surplus_direct), || "surplus paths disagree".into());
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    let (s, r, c) = (1, 4, 2);
    let k = (1usize << s) * r;
    let ck = choose(k as u64, r as u64) as i128;
    let base = surplus(&example1_chain(s, r, c, 1).unwrap().hypergraph, k).unwrap();
    for m in 1..=3 {
        let sm = surplus(&example1_chain(s, r, c, m).unwrap().hypergraph, k).unwrap();
        let want = m as i128 * base + (m as i128 - 1) * ck;
        t.check(sm == want, || format!("m = {m}: surplus {sm}, expected {want}"));
    }
    t.line("exact limit and chain slope", " (g = 1651/216)")
}

fn inequality_grids() -> (bool, String) {
    let mut t = Tally::default();
    for r in 3..=6 {
        for k in r..=40 {
            for l in 1..=12 {
                for lp in l..=12 {
                    let x = x_of_separator(k, r, l, lp).unwrap();
                    t.check(x >= Rational::zero(), || format!("X({k},{r},{l},{lp}) = {}", fmt_rational(&x)));
                }
            }
        }
    }
    for r in 3..=8 {
        for k in r..=64 {
            for l in (1..=k).take_while(|&l| l * (r - 1) <= k) {
                let x = x_of_separator(k, r, l, l).unwrap();
                t.check(x.is_zero(), || format!("balanced X({k},{r},{l}) = {}", fmt_rational(&x)));
                let eq = check_doubling_identity(k, r, &rat(l as i64, k as i64)).unwrap();
                t.check(eq, || format!("halving identity fails at k = {k}, r = {r}, l = {l}"));
            }
        }
    }
    for r in 3..=6 {
        for k in r..=40 {
            for lp in 2..=12 {
                let (ok, x, rhs) = check_reach_one_lower_bound(k, r, lp).unwrap();
                t.check(ok, || format!("reach-one bound at ({k},{r},1,{lp}): {} < {}", fmt_rational(&x), fmt_rational(&rhs)));
            }
        }
    }
    let (_, x, rhs) = check_reach_one_lower_bound(6, 3, 2).unwrap();
    t.check(x == rat(17, 2) && rhs == rat(17, 2), || format!("(6,3,1,2): {} vs {}", fmt_rational(&x), fmt_rational(&rhs)));
    for r in 3..=8 {
        for k in r..=200 {
            let (ok, slack) = check_halving_inequality(k, r);
            t.check(ok, || format!("halving sum at k = {k}, r = {r}: slack {}", fmt_rational(&slack)));
        }
    }
    for r in 3..=8 {
        for j in 1..=400 {
            let x = rat(j, 8);
            let (lhs, rhs) = (phi(&(&x * rat_int(2)), r), rat_int(2) * phi(&x, r));
            t.check(lhs >= rhs, || format!("phi at x = {}, r = {r}", fmt_rational(&x)));
        }
    }
    t.line("inequality grids", "")
}

fn oracle_determinism() -> (bool, String) {
    let start = Instant::now();
    let one = oracle_max_edges(6, 3, 3, 5, Some(1));
    let two = oracle_max_edges(6, 3, 3, 5, Some(2));
    let default = oracle_max_edges(6, 3, 3, 5, None);
    let elapsed = start.elapsed();
    match (one, two, default) {
        (Ok(a), Ok(b), Ok(c)) => {
            let recheck = contains_k1_connected_subgraph(&a.witness, 3, 5).is_none();
            let pass = a == b && a == c && a.value >= 19 && recheck && elapsed < Duration::from_secs(300);
            (pass, format!("oracle determinism: value {} for 1, 2 and default threads, witness recheck {recheck}, {elapsed:?}", a.value))
        }
        (a, b, c) => (false, format!("oracle determinism: {:?} {:?} {:?}", a.err(), b.err(), c.err())),
    }
}

fn guarded(name: &str, f: impl FnOnce() -> (bool, String)) -> (bool, String) {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| (false, format!("{name}: panicked")))
}

fn main() {
    let mut lines = Vec::new();
    let mut shared = Vec::new();
    if catch_unwind(AssertUnwindSafe(|| instance_suite(&mut shared))).is_err() {
        shared = ["edge identity and certificates", "prediction equality", "deletion operation", "bound sandwich"]
            .iter()
            .map(|n| (false, format!("{n}: panicked")))
            .collect();
    }
    let mut shared = shared.into_iter();
    lines.push(shared.next().unwrap());
    lines.push(shared.next().unwrap());
    lines.push(guarded("micro certificate", micro_certificate));
    lines.push(guarded("exact limit", exact_limit));
    lines.push(guarded("inequality grids", inequality_grids));
    lines.push(shared.next().unwrap());
    lines.push(shared.next().unwrap());
    lines.push(guarded("oracle determinism", oracle_determinism));

    let mut failed = 0;
    for (i, (pass, detail)) in lines.iter().enumerate() {
        println!("{} {}: {detail}", if *pass { "PASS" } else { "FAIL" }, i + 1);
        failed += usize::from(!pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
