//! Closed-form edge bounds in exact rational arithmetic, and numeric checks of
//! the inequalities they rest on.

use std::io::Write;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{binom_ext, choose_i, factorial, fmt_rational, parse_rational, rat_int, rpow, Rational};
use crate::hypergraph::Hypergraph;
use crate::septree::{delete_tiny_atoms, essential_difference, is_normal_size, AbstractTree};
use crate::{param, precondition, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A bound value together with whether its parameters lie in the regime
/// where the bound is proven.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluated {
    pub value: Rational,
    pub in_regime: bool,
}

fn ci(n: usize, r: usize) -> Rational {
    rat_int(choose_i(n as i128, r as u64))
}

fn ck(k: usize, c: &Rational) -> Rational {
    c * rat_int(k as i64)
}

/// `sum_{i>=0} binom_ext(x/2^i, r)`, stopping at the first vanishing term.
pub fn sum_halvings(x: &Rational, r: usize) -> Rational {
    let floor = rat_int(r as i64 - 1);
    let mut total = Rational::zero();
    let mut y = x.clone();
    while y >= floor && y.is_positive() {
        total += binom_ext(&y, r as u64);
        y /= rat_int(2);
    }
    total
}

/// Last index `i` with `k/(2^i L) >= r-1`, or `None` when even `i = 0` fails.
pub fn truncation_index(k: usize, r: usize, l: &Rational) -> Option<u32> {
    let ratio = rat_int(k as i64) / (l * rat_int(r as i64 - 1));
    if ratio < Rational::one() {
        return None;
    }
    let mut i = 0;
    while ratio >= rpow(&rat_int(2), i + 1) {
        i += 1;
    }
    Some(i)
}

/// `f(k,r,L) = (L/2) sum_{i>=0} binom_ext(k/(2^i L), r)` for rational `L > 0`.
pub fn f_krl_rational(k: usize, r: usize, l: &Rational) -> Rational {
    let Some(ix) = truncation_index(k, r, l) else {
        return Rational::zero();
    };
    let base = rat_int(k as i64) / l;
    let sum: Rational = (0..=ix).map(|i| binom_ext(&(&base / rpow(&rat_int(2), i)), r as u64)).sum();
    l * sum / rat_int(2)
}

pub fn f_krl(k: usize, r: usize, l: usize) -> Rational {
    f_krl_rational(k, r, &rat_int(l as i64))
}

/// The same sum without the truncation index: every term down to an
/// argument below `1/2` is added.
pub fn f_krl_naive(k: usize, r: usize, l: usize) -> Rational {
    let l = rat_int(l as i64);
    let mut y = rat_int(k as i64) / &l;
    let mut sum = Rational::zero();
    while y >= Rational::new(1.into(), 2.into()) {
        sum += binom_ext(&y, r as u64);
        y /= rat_int(2);
    }
    l * sum / rat_int(2)
}

/// Branch-error term `f(l+l+) - f(l) - f(l+) + l binom_ext(k/l, r)`.
pub fn x_of_separator(k: usize, r: usize, l: usize, l_plus: usize) -> Result<Rational> {
    if l == 0 || l > l_plus {
        return Err(param(format!("need 1 <= l <= l+, got l = {l}, l+ = {l_plus}")));
    }
    Ok(f_krl(k, r, l + l_plus) - f_krl(k, r, l) - f_krl(k, r, l_plus)
        + rat_int(l as i64) * binom_ext(&Rational::new((k as i64).into(), (l as i64).into()), r as u64))
}

/// Shared shape of the normal-tree bounds with the `C(k,r)` coefficient
/// `t/(ck) * mult - 1`.
fn tree_form(t: usize, k: usize, r: usize, c: &Rational, mult: &Rational) -> Result<Rational> {
    if k == 0 || !c.is_positive() {
        return Err(param("need k >= 1 and c > 0"));
    }
    let ckv = ck(k, c);
    let ratio = rat_int(t as i64) / &ckv;
    Ok(ci(t + k, r) - ci(t, r) + &ratio * binom_ext(&ckv, r as u64) + (&ratio * mult - Rational::one()) * ci(k, r)
        - &ratio / rat_int(2) * sum_halvings(&rat_int(k as i64), r))
}

/// General tree bound; proven for `t >= 2^r/(2^r-1) ck` and `k >= r`.
pub fn bound_general(t: usize, k: usize, r: usize, c: &Rational) -> Result<Evaluated> {
    let value = tree_form(t, k, r, c, &Rational::new(3.into(), 2.into()))?;
    let p = rpow(&rat_int(2), r as u32);
    let threshold = &p / (&p - Rational::one()) * ck(k, c);
    Ok(Evaluated { value, in_regime: rat_int(t as i64) >= threshold && k >= r && r >= 3 })
}

/// `c >= (2r)^(1/(r-1))`, decided as `c^(r-1) >= 2r`.
pub fn special_c_in_regime(c: &Rational, r: usize) -> bool {
    r >= 2 && rpow(c, r as u32 - 1) >= rat_int(2 * r as i64)
}

/// Sharp tree bound; proven for `t >= k + 4ck/3 + ck^2/(r-1)`,
/// `c^(r-1) >= 2r` and `k >= 2(r-1)`.
pub fn bound_special(t: usize, k: usize, r: usize, c: &Rational) -> Result<Evaluated> {
    let value = tree_form(t, k, r, c, &Rational::one())?;
    let kr = rat_int(k as i64);
    let threshold = &kr + rat_int(4) * ck(k, c) / rat_int(3) + ck(k, c) * &kr / rat_int(r as i64 - 1);
    let in_regime = rat_int(t as i64) >= threshold && special_c_in_regime(c, r) && k >= 2 * (r - 1) && r >= 3;
    Ok(Evaluated { value, in_regime })
}

/// `N_{n,k,r}`: the sharp tree bound at `t = n - k`.
pub fn n_bound(n: usize, k: usize, r: usize, c: &Rational) -> Result<Evaluated> {
    bound_special(checked_t(n, k)?, k, r, c)
}

/// `M_{n,k,r}`: the general tree bound at `c = 1`, `t = n - k`.
pub fn m_bound(n: usize, k: usize, r: usize) -> Result<Evaluated> {
    bound_general(checked_t(n, k)?, k, r, &Rational::one())
}

fn checked_t(n: usize, k: usize) -> Result<usize> {
    n.checked_sub(k).filter(|&t| t > 0).ok_or_else(|| param(format!("need n > k, got n = {n}, k = {k}")))
}

/// Upper bound on the relative surplus:
/// `c^(r-1) + (1/c)(1 - 1/(2^(r+1)-2)) - k/(n-k)`.
pub fn relative_surplus_bound(n: usize, k: usize, r: usize, c: &Rational) -> Result<Evaluated> {
    let t = checked_t(n, k)?;
    if !c.is_positive() || r < 2 {
        return Err(param("need c > 0 and r >= 2"));
    }
    let p = rpow(&rat_int(2), r as u32);
    let value = rpow(c, r as u32 - 1)
        + (Rational::one() - Rational::one() / (rat_int(2) * &p - rat_int(2))) / c
        - Rational::new((k as i64).into(), (t as i64).into());
    let min_n = (&p * c / (&p - Rational::one()) + Rational::one()) * rat_int(k as i64);
    let in_regime = k >= r && r >= 3 && *c >= Rational::one() && rat_int(n as i64) >= min_n;
    Ok(Evaluated { value, in_regime })
}

/// Leading form of the exact limit, without its `O(1/k)` correction:
/// `c^(r-1) + (1/(2c))(1 - 1/(2^r-1))`.
pub fn limit_leading_form(r: usize, c: &Rational) -> Result<Rational> {
    if !c.is_positive() || r < 2 {
        return Err(param("need c > 0 and r >= 2"));
    }
    let p = rpow(&rat_int(2), r as u32);
    Ok(rpow(c, r as u32 - 1) + (Rational::one() - Rational::one() / (p - Rational::one())) / (rat_int(2) * c))
}

/// `C(n,r) - C(n-k,r) + (n/k - 2) C(k,r)`; out of regime when `k` does not
/// divide `n`.
pub fn conjecture_bound(n: usize, k: usize, r: usize) -> Result<Evaluated> {
    checked_t(n, k)?;
    let value = ci(n, r) - ci(n - k, r)
        + (Rational::new((n as i64).into(), (k as i64).into()) - rat_int(2)) * ci(k, r);
    Ok(Evaluated { value, in_regime: n % k == 0 })
}

pub fn surplus_of(n: usize, k: usize, r: usize, edges: u128) -> i128 {
    edges as i128 - choose_i(n as i128, r as u64) + choose_i(n as i128 - k as i128, r as u64)
}

/// `e(H) - C(n,r) + C(n-k,r)`.
pub fn surplus(h: &Hypergraph, k: usize) -> Result<i128> {
    checked_t(h.n(), k)?;
    Ok(surplus_of(h.n(), k, h.r(), h.edge_count() as u128))
}

/// `r! surplus / (k^(r-1) (n-k))`.
pub fn g_relative(n: usize, k: usize, r: usize, surplus: i128) -> Result<Rational> {
    let t = checked_t(n, k)?;
    Ok(Rational::from_integer(factorial(r as u64) * surplus)
        / (rpow(&rat_int(k as i64), r as u32 - 1) * rat_int(t as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLimit {
    pub value: Rational,
    /// Surplus of the base instance from its edge count.
    pub surplus_direct: i128,
    /// The same surplus from the closed form.
    pub surplus_formula: Rational,
    pub leading_form: Rational,
    /// `leading_form - value`.
    pub correction: Rational,
}

/// Exact limit of the relative surplus along the chain of copies glued on an
/// independent `k`-set, for `k = 2^s r` and integer `c` with `c^(r-1) >= 2r`.
pub fn g_limit_exact(k: usize, r: usize, c: usize) -> Result<GLimit> {
    let s = exponent_of(k, r).ok_or_else(|| precondition(format!("k = {k} is not 2^s * {r} with s >= 1")))?;
    let cr = rat_int(c as i64);
    if !special_c_in_regime(&cr, r) {
        return Err(precondition(format!("c = {c} fails c^(r-1) >= 2r at r = {r}")));
    }
    let base = crate::constructions::example1(s, r, c)?;
    let h = &base.hypergraph;
    let direct = surplus(h, k)?;
    let formula = n_bound(h.n(), k, r, &cr)?.value - ci(h.n(), r) + ci(h.n() - k, r);
    if formula != rat_int(direct) {
        return Err(crate::Error::LedgerMismatch(format!(
            "surplus {direct} from the edge count but {} from the closed form",
            fmt_rational(&formula)
        )));
    }
    // the gluing set is independent, so each added copy contributes C(k,r) more
    let per_copy = rat_int(direct) + ci(k, r);
    let value = Rational::from_integer(factorial(r as u64)) * per_copy
        / (rpow(&rat_int(k as i64), r as u32 - 1) * rat_int(2 * c as i64 * (k * k) as i64) / rat_int(r as i64));
    let leading_form = limit_leading_form(r, &cr)?;
    Ok(GLimit { correction: &leading_form - &value, value, surplus_direct: direct, surplus_formula: formula, leading_form })
}

fn exponent_of(k: usize, r: usize) -> Option<usize> {
    if r == 0 || k % r != 0 {
        return None;
    }
    let q = k / r;
    (q.is_power_of_two() && q >= 2).then(|| q.trailing_zeros() as usize)
}

/// `phi(x) = x^r/r! - binom_ext(x, r)`.
pub fn phi(x: &Rational, r: usize) -> Rational {
    rpow(x, r as u32) / Rational::from_integer(factorial(r as u64)) - binom_ext(x, r as u64)
}

/// Checks `C(k,r) - sum_{i>=1} binom_ext(k/2^i, r) <= (k^r/r!)(1 - 1/(2^r-1))`
/// and returns the slack `rhs - lhs`.
pub fn check_halving_inequality(k: usize, r: usize) -> (bool, Rational) {
    let kr = rat_int(k as i64);
    let lhs = ci(k, r) - sum_halvings(&(&kr / rat_int(2)), r);
    let p = rpow(&rat_int(2), r as u32);
    let rhs = rpow(&kr, r as u32) / Rational::from_integer(factorial(r as u64))
        * (Rational::one() - Rational::one() / (p - Rational::one()));
    let slack = rhs - lhs;
    (!slack.is_negative(), slack)
}

/// `2g(x) = g(2x) + x k binom_ext(1/x, r)` with `g(x) = f(k, r, kx)`, for
/// `0 < x <= 1/(r-1)`.
pub fn check_doubling_identity(k: usize, r: usize, x: &Rational) -> Result<bool> {
    if !x.is_positive() || *x > Rational::new(1.into(), (r as i64 - 1).into()) {
        return Err(precondition(format!("x = {} is outside (0, 1/(r-1)]", fmt_rational(x))));
    }
    let kr = rat_int(k as i64);
    let g = |y: &Rational| f_krl_rational(k, r, &(&kr * y));
    let lhs = rat_int(2) * g(x);
    let rhs = g(&(x * rat_int(2))) + x * &kr * binom_ext(&(Rational::one() / x), r as u64);
    Ok(lhs == rhs)
}

/// `X(S) >= C(k,r)/2 - (3/2) binom_ext(k/2, r)` for reach 1 against
/// `l+ >= 2`. Returns `(holds, X, rhs)`.
pub fn check_reach_one_lower_bound(k: usize, r: usize, l_plus: usize) -> Result<(bool, Rational, Rational)> {
    if l_plus < 2 {
        return Err(param("need l+ >= 2"));
    }
    let x = x_of_separator(k, r, 1, l_plus)?;
    let rhs = ci(k, r) / rat_int(2)
        - Rational::new(3.into(), 2.into()) * binom_ext(&Rational::new((k as i64).into(), 2.into()), r as u64);
    Ok((x >= rhs, x, rhs))
}

/// Evaluates the normal-tree edge bound on a normal abstract tree with
/// `t + k` vertices:
/// `C(t+k) - C(t) + (t/ck) binom_ext(ck) + (t/ck - 1) C(k) - (t/2ck) sum + f(k,r,L) - X`.
pub fn normal_tree_edge_bound(tree: &AbstractTree, k: usize, r: usize, c: &Rational) -> Result<Rational> {
    if let Some(a) = tree.atoms().find(|&a| !is_normal_size(tree.size(a), k)) {
        return Err(precondition(format!("atom {a} of size {} is not normal", tree.size(a))));
    }
    let t = tree.vertex_count().checked_sub(k).ok_or_else(|| param("tree has fewer than k vertices"))?;
    let sigma = tree.orientation(k);
    let l = tree.atoms().count();
    let mut x = Rational::zero();
    for s in sigma.separators() {
        x += x_of_separator(k, r, s.reach, s.reach_plus)?;
    }
    Ok(tree_form(t, k, r, c, &Rational::one())? + f_krl(k, r, l) - x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionCheck {
    pub edges: u128,
    /// Normal-tree bound of the tree after deletion.
    pub normal_bound: Rational,
    pub essential: i128,
    /// Sum of free differences over surviving separators.
    pub free_total: i128,
    pub rhs: Rational,
    pub holds: bool,
}

/// `e(H) <= e(T') + E(T) + sum D_f(S)`, with the free differences of the
/// surviving separators supplied by the caller.
pub fn check_deletion_inequality(
    edges: u128,
    tree: &AbstractTree,
    k: usize,
    r: usize,
    c: &Rational,
    free_total: i128,
) -> Result<DeletionCheck> {
    let deleted = delete_tiny_atoms(tree, k)?;
    let normal_bound = normal_tree_edge_bound(&deleted.tree, k, r, c)?;
    let essential = essential_difference(tree, k, r)?;
    let rhs = &normal_bound + rat_int(essential) + rat_int(free_total);
    Ok(DeletionCheck { edges, holds: rat_int(edges as i64) <= rhs, normal_bound, essential, free_total, rhs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub value: String,
    pub in_regime: bool,
}

impl From<&Evaluated> for BoundValue {
    fn from(e: &Evaluated) -> Self {
        BoundValue { value: fmt_rational(&e.value), in_regime: e.in_regime }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurplusEntry {
    pub edges: String,
    pub surplus: String,
    pub g: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub c: String,
    pub n_bound: BoundValue,
    pub m_bound: BoundValue,
    pub general_bound: BoundValue,
    pub special_bound: BoundValue,
    pub relative_surplus_bound: BoundValue,
    /// Leading form of the limit only; the `O(1/k)` term is omitted.
    pub limit_leading_form: String,
    pub conjecture_bound: BoundValue,
    pub halving_slack: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<SurplusEntry>,
}

pub fn bounds_report(n: usize, k: usize, r: usize, c: &Rational, h: Option<&Hypergraph>) -> Result<BoundsReport> {
    let t = checked_t(n, k)?;
    if r < 3 || k < r {
        return Err(param(format!("need k >= r >= 3, got k = {k}, r = {r}")));
    }
    let special = bound_special(t, k, r, c)?;
    let hypergraph = match h {
        Some(h) => {
            if h.n() != n || h.r() != r {
                return Err(param(format!("hypergraph has n = {}, r = {}; report is for n = {n}, r = {r}", h.n(), h.r())));
            }
            let s = surplus(h, k)?;
            Some(SurplusEntry {
                edges: h.edge_count().to_string(),
                surplus: s.to_string(),
                g: fmt_rational(&g_relative(n, k, r, s)?),
            })
        }
        None => None,
    };
    Ok(BoundsReport {
        schema_version: SCHEMA_VERSION,
        n,
        k,
        r,
        c: fmt_rational(c),
        n_bound: (&special).into(),
        m_bound: (&m_bound(n, k, r)?).into(),
        general_bound: (&bound_general(t, k, r, c)?).into(),
        special_bound: (&special).into(),
        relative_surplus_bound: (&relative_surplus_bound(n, k, r, c)?).into(),
        limit_leading_form: fmt_rational(&limit_leading_form(r, c)?),
        conjecture_bound: (&conjecture_bound(n, k, r)?).into(),
        halving_slack: fmt_rational(&check_halving_inequality(k, r).1),
        hypergraph,
    })
}

/// Parameter grid: comma-separated `name=values` for `n`, `k`, `r`, `c`,
/// where values are `A..B` or `A..B:STEP` (inclusive, integers) or a
/// `|`-separated list. `c` accepts rationals in list form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub r: Vec<usize>,
    pub c: Vec<Rational>,
}

fn parse_ints(name: &str, v: &str) -> Result<Vec<usize>> {
    let bad = || param(format!("bad values for {name}: {v:?}"));
    if let Some((lo, rest)) = v.split_once("..") {
        let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
        let (lo, hi, step): (usize, usize, usize) =
            (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?, step.parse().map_err(|_| bad())?);
        if step == 0 || lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).step_by(step).collect());
    }
    v.split('|').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

impl Grid {
    /// Unset parameters take the values in `defaults`.
    pub fn parse(spec: &str, defaults: &Grid) -> Result<Grid> {
        let mut g = defaults.clone();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, v) = part.split_once('=').ok_or_else(|| param(format!("expected name=values, got {part:?}")))?;
            match name.trim() {
                "n" => g.n = parse_ints("n", v)?,
                "k" => g.k = parse_ints("k", v)?,
                "r" => g.r = parse_ints("r", v)?,
                "c" => {
                    g.c = v
                        .split('|')
                        .map(|x| parse_rational(x).ok_or_else(|| param(format!("bad rational {x:?}"))))
                        .collect::<Result<_>>()?
                }
                other => return Err(param(format!("unknown grid parameter {other:?}"))),
            }
        }
        Ok(g)
    }

    /// Points in `n`, `k`, `r`, `c` order, skipping those with `n <= k` or `k < r`.
    pub fn points(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &k in &self.k {
                for &r in &self.r {
                    for c in &self.c {
                        if n > k && k >= r && r >= 3 {
                            out.push((n, k, r, c.clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "n",
    "k",
    "r",
    "c",
    "n_bound",
    "special_in_regime",
    "m_bound",
    "general_bound",
    "general_in_regime",
    "relative_surplus_bound",
    "relative_surplus_bound_in_regime",
    "conjecture_bound",
    "halving_slack",
];

pub fn write_csv<W: Write>(out: W, reports: &[BoundsReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rep in reports {
        w.write_record([
            rep.n.to_string(),
            rep.k.to_string(),
            rep.r.to_string(),
            rep.c.clone(),
            rep.n_bound.value.clone(),
            rep.special_bound.in_regime.to_string(),
            rep.m_bound.value.clone(),
            rep.general_bound.value.clone(),
            rep.general_bound.in_regime.to_string(),
            rep.relative_surplus_bound.value.clone(),
            rep.relative_surplus_bound.in_regime.to_string(),
            rep.conjecture_bound.value.clone(),
            rep.halving_slack.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
