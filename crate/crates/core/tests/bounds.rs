use hypersep::arith::{binom_ext, choose, rat, rat_int, Rational};
use hypersep::bounds::{
    bound_general, bound_special, bounds_report, check_halving_inequality, check_doubling_identity, conjecture_bound, f_krl,
    f_krl_naive, g_limit_exact, g_relative, normal_tree_edge_bound, surplus, relative_surplus_bound, write_csv, x_of_separator,
    Grid,
};
use hypersep::constructions::{example1, mader_hypergraph};
use hypersep::septree::{abstract_tree, AbstractTree};
use hypersep::Hypergraph;
use num_traits::Zero;

fn ci(n: u64, r: u64) -> Rational {
    rat_int(choose(n, r) as i64)
}

#[test]
fn f_examples() {
    assert_eq!(f_krl(6, 3, 1), rat(21, 2));
    assert_eq!(f_krl(6, 3, 2), rat(1, 1));
    assert_eq!(f_krl(6, 3, 6), rat(0, 1));
}

#[test]
fn f_is_nonincreasing_and_truncation_is_exact() {
    for r in 3..=5 {
        for k in r..=64 {
            let mut prev = f_krl(k, r, 1);
            for l in 1..=k {
                let f = f_krl(k, r, l);
                assert_eq!(f, f_krl_naive(k, r, l), "k={k} r={r} L={l}");
                assert!(f <= prev, "k={k} r={r} L={l}");
                prev = f;
            }
        }
    }
}

#[test]
fn separator_error_terms() {
    assert_eq!(x_of_separator(6, 3, 1, 1).unwrap(), rat(0, 1));
    assert_eq!(x_of_separator(6, 3, 1, 2).unwrap(), rat(17, 2));
    assert!(x_of_separator(6, 3, 2, 1).is_err());
    assert!(x_of_separator(6, 3, 0, 1).is_err());
}

#[test]
fn tree_bound_values() {
    let g = bound_general(24, 6, 3, &rat_int(1)).unwrap();
    assert_eq!(g.value, rat_int(2036 + 80 + 100 - 42));
    let s = bound_special(72, 6, 3, &rat_int(3)).unwrap();
    assert_eq!(s.value, rat_int(19718));
    // threshold k + 4ck/3 + ck^2/(r-1) = 6 + 24 + 54
    assert!(!s.in_regime);
    assert!(bound_special(84, 6, 3, &rat_int(3)).unwrap().in_regime);
    assert!(!bound_special(83, 6, 3, &rat_int(3)).unwrap().in_regime);
    let s = bound_special(24, 6, 3, &rat_int(1)).unwrap();
    assert_eq!(s.value, rat_int(2134));
    assert!(!s.in_regime);
}

#[test]
fn surplus_values() {
    let k9 = Hypergraph::complete(3, 9).unwrap();
    assert_eq!(surplus(&k9, 3).unwrap(), choose(6, 3) as i128);
    let empty = Hypergraph::empty(3, 9).unwrap();
    assert_eq!(surplus(&empty, 3).unwrap(), choose(6, 3) as i128 - choose(9, 3) as i128);
    let h = example1(1, 3, 3).unwrap().hypergraph;
    assert_eq!(surplus(&h, 6).unwrap(), 3282);
    assert_eq!(g_relative(78, 6, 3, 3282).unwrap(), rat(547, 72));
    assert_eq!(g_relative(78, 6, 3, 0).unwrap(), rat(0, 1));
}

#[test]
fn exact_limit() {
    let g = g_limit_exact(6, 3, 3).unwrap();
    assert_eq!(g.value, rat(1651, 216));
    assert_eq!(g.surplus_direct, 3282);
    assert!(g.correction > Rational::zero());
    assert_eq!(&g.leading_form - &g.correction, g.value);
    // c = 1 fails c^(r-1) >= 2r
    assert!(g_limit_exact(6, 3, 1).is_err());
    assert!(g_limit_exact(9, 3, 3).is_err());
}

#[test]
fn relative_surplus_below_the_main_bound() {
    for (s, r, c) in [(1, 3, 3), (1, 4, 2), (1, 4, 3)] {
        let out = example1(s, r, c).unwrap();
        let (n, k) = (out.params.n, out.params.k);
        let bound = relative_surplus_bound(n, k, r, &rat_int(c as i64)).unwrap();
        assert!(bound.in_regime);
        let g = g_relative(n, k, r, surplus(&out.hypergraph, k).unwrap()).unwrap();
        assert!(g <= bound.value);
    }
}

#[test]
fn halving_sum_bound() {
    let (ok, slack) = check_halving_inequality(6, 3);
    assert!(ok);
    assert_eq!(slack, rat(83, 7));
    let (ok, slack) = check_halving_inequality(8, 3);
    assert!(ok);
    assert_eq!(slack, rat(512, 7) - rat_int(52));
}

#[test]
fn halving_identity() {
    assert!(check_doubling_identity(6, 3, &rat(1, 6)).unwrap());
    assert!(check_doubling_identity(8, 3, &rat(1, 8)).unwrap());
    assert!(check_doubling_identity(8, 3, &rat(1, 2)).unwrap());
    assert!(check_doubling_identity(8, 3, &rat(51, 100)).is_err());
}

#[test]
fn normal_tree_bound() {
    for (s, r, c) in [(1, 3, 1), (1, 3, 3), (2, 3, 1), (1, 4, 2)] {
        let out = example1(s, r, c).unwrap();
        let k = out.params.k;
        let value = normal_tree_edge_bound(&abstract_tree(&out.tree), k, r, &rat_int(c as i64)).unwrap();
        assert!(rat_int(out.hypergraph.edge_count() as i64) <= value);
    }
    // a single atom of ck + k vertices gives C(ck + k, r)
    assert_eq!(normal_tree_edge_bound(&AbstractTree::atom(12), 6, 3, &rat_int(1)).unwrap(), ci(12, 3));
    // balanced binary trees over 2^j atoms lose nothing to the error terms
    let four = {
        let two = || AbstractTree::split(8, AbstractTree::atom(16), AbstractTree::atom(16));
        AbstractTree::split(8, two(), two())
    };
    let sigma = four.orientation(8);
    for s in sigma.separators() {
        assert_eq!(x_of_separator(8, 3, s.reach, s.reach_plus).unwrap(), rat(0, 1));
    }
    let t = four.vertex_count() - 8;
    let expected = bound_special(t, 8, 3, &rat_int(1)).unwrap().value + f_krl(8, 3, 4);
    assert_eq!(normal_tree_edge_bound(&four, 8, 3, &rat_int(1)).unwrap(), expected);
}

#[test]
fn conjecture_values() {
    assert_eq!(conjecture_bound(6, 3, 3).unwrap().value, rat_int(19));
    assert_eq!(conjecture_bound(9, 3, 3).unwrap().value, rat_int(65));
    assert!(!conjecture_bound(10, 3, 3).unwrap().in_regime);
    for (q, k, r) in [(2, 3, 3), (3, 3, 3), (4, 2, 3), (3, 4, 4), (5, 2, 3)] {
        let h = mader_hypergraph(q, k, r).unwrap().hypergraph;
        assert_eq!(conjecture_bound(q * k, k, r).unwrap().value, rat_int(h.edge_count() as i64));
    }
}

#[test]
fn extended_binomial_examples() {
    assert_eq!(binom_ext(&rat_int(5), 3), rat_int(10));
    assert_eq!(binom_ext(&rat(3, 2), 3), rat(0, 1));
    assert_eq!(binom_ext(&rat(5, 2), 3), rat(5, 16));
}

#[test]
fn report_and_csv() {
    let rep = bounds_report(30, 6, 3, &rat_int(1), None).unwrap();
    assert_eq!(rep.n_bound.value, "2134/1");
    assert!(!rep.n_bound.in_regime);
    let defaults = Grid { n: vec![30], k: vec![6], r: vec![3], c: vec![rat_int(1)] };
    let grid = Grid::parse("n=30..40:10,c=1|3/2", &defaults).unwrap();
    let reps: Vec<_> = grid.points().into_iter().map(|(n, k, r, c)| bounds_report(n, k, r, &c, None).unwrap()).collect();
    assert_eq!(reps.len(), 4);
    let mut buf = Vec::new();
    write_csv(&mut buf, &reps).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().next().unwrap().starts_with("n,k,r,c,"));
}
