//! Generators for the explicit extremal families. Each returns the
//! hypergraph, a separator tree read off the construction, and the edge
//! count predicted by its closed form.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binom_ext, choose_i, fmt_rational, rat_int, Rational};
use crate::bounds::{n_bound, sum_halvings};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::septree::index::TreeIndex;
use crate::septree::{oriented, SeparatorTree};
use crate::subsets::{difference, is_subset};
use crate::{param, precondition, Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// `p` as `num/den`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionOutput {
    pub hypergraph: Hypergraph,
    pub tree: SeparatorTree,
    pub predicted_edges: u128,
    pub params: Params,
}

impl ConstructionOutput {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("construction output serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn prediction_holds(&self) -> bool {
        self.hypergraph.edge_count() as u128 == self.predicted_edges
    }
}

fn ci(n: usize, r: usize) -> i128 {
    choose_i(n as i128, r as u64)
}

fn to_count(x: &Rational, what: &str) -> Result<u128> {
    if !x.is_integer() || *x < Rational::zero() {
        return Err(Error::LedgerMismatch(format!("{what} is {}, not a count", fmt_rational(x))));
    }
    x.to_integer().try_into().map_err(|_| Error::ScaleLimit(format!("{what} does not fit in 128 bits")))
}

/// The hypergraph whose atoms are complete and in which an `r`-set lying in
/// neither child of a separator is an edge exactly when it meets the
/// separator. `capacity` is a hint for the number of edges.
pub fn glue_closure(r: usize, n: usize, tree: &SeparatorTree, capacity: usize) -> Result<Hypergraph> {
    if tree.root_vertices().len() != n || tree.root_vertices().last().is_some_and(|&v| v as usize >= n) {
        return Err(precondition("tree root must be 0..n"));
    }
    if tree.len() > 64 {
        let index = TreeIndex::new(tree, n);
        let (mut and, mut or) = (vec![0; index.words], vec![0; index.words]);
        return Ok(Hypergraph::from_predicate(r, n, |e| {
            index.masks(e, &mut and, &mut or);
            crate::septree::index::glue_closure_member(tree, &and, &or)
        })?);
    }
    let codec = Hypergraph::empty(r, n)?.codec();
    let mut vmask = vec![0u64; n];
    for id in 0..tree.len() {
        for &v in tree.vertices(id) {
            vmask[v as usize] |= 1 << id;
        }
    }
    let split: Vec<Option<(usize, usize, usize)>> = (0..tree.len())
        .map(|id| tree.child(id).map(|s| {
            let (a, b) = tree.branches(s).expect("separator");
            (s, a, b)
        }))
        .collect();
    let member = |and: u64, or: u64| {
        let mut node = 0;
        loop {
            match split[node] {
                None => return true,
                Some((s, a, b)) => {
                    if and >> a & 1 == 1 {
                        node = a;
                    } else if and >> b & 1 == 1 {
                        node = b;
                    } else {
                        return or >> s & 1 == 1;
                    }
                }
            }
        }
    };
    let mut gen = Gen { n, r, bits: codec.bits(), vmask: &vmask, member, keys: Vec::with_capacity(capacity) };
    gen.walk(0, 0, 0, u64::MAX, 0);
    Ok(Hypergraph::from_sorted_keys(r, n, gen.keys)?)
}

struct Gen<'a, F> {
    n: usize,
    r: usize,
    bits: u32,
    vmask: &'a [u64],
    member: F,
    keys: Vec<u64>,
}

impl<F: Fn(u64, u64) -> bool> Gen<'_, F> {
    fn walk(&mut self, depth: usize, start: usize, key: u64, and: u64, or: u64) {
        let last = self.n - (self.r - depth);
        for v in start..=last {
            let m = self.vmask[v];
            let k = key << self.bits | v as u64;
            if depth + 1 == self.r {
                if (self.member)(and & m, or | m) {
                    self.keys.push(k);
                }
            } else {
                self.walk(depth + 1, v + 1, k, and & m, or | m);
            }
        }
    }
}

/// Label map for a second copy: vertices of `keep` stay, the others move to
/// `offset, offset + 1, ...` in increasing order.
fn copy_map(n: usize, keep: &[Vertex], offset: usize) -> Vec<Vertex> {
    let mut next = offset as Vertex;
    (0..n as Vertex)
        .map(|v| {
            if keep.binary_search(&v).is_ok() {
                v
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

/// Two copies of a labelled tree joined along `sep`.
struct Doubling {
    tree: SeparatorTree,
    n: usize,
    used: Vec<bool>,
}

impl Doubling {
    fn new(tree: SeparatorTree, n: usize) -> Self {
        Doubling { tree, n, used: vec![false; n] }
    }

    /// The first `per` unused vertices of `pool`, marked used.
    fn take(&mut self, pool: &[Vertex], per: usize) -> Result<Vec<Vertex>> {
        let picked: Vec<Vertex> = pool.iter().copied().filter(|&v| !self.used[v as usize]).take(per).collect();
        if picked.len() < per {
            return Err(precondition("not enough unused vertices for the next separator"));
        }
        for &v in &picked {
            self.used[v as usize] = true;
        }
        Ok(picked)
    }

    /// Glues a copy along `sep` and returns the label map of the copy.
    fn double(&mut self, mut sep: Vec<Vertex>) -> Vec<Vertex> {
        sep.sort_unstable();
        let map = copy_map(self.n, &sep, self.n);
        let new_n = 2 * self.n - sep.len();
        let mut used = vec![false; new_n];
        for v in 0..self.n {
            if self.used[v] {
                used[v] = true;
                used[map[v] as usize] = true;
            }
        }
        let copy = self.tree.relabel(|v| map[v as usize]);
        let tree = std::mem::replace(&mut self.tree, SeparatorTree::atom(vec![]));
        self.tree = SeparatorTree::split(sep, tree, copy);
        self.n = new_n;
        self.used = used;
        map
    }
}

fn power_of_two_k(s: usize, r: usize) -> Result<usize> {
    if s == 0 || r < 3 {
        return Err(param(format!("need s >= 1 and r >= 3, got s = {s}, r = {r}")));
    }
    if s > 20 {
        return Err(Error::ScaleLimit(format!("s = {s} is far beyond enumerable size")));
    }
    Ok(r << s)
}

fn example1_tree(s: usize, r: usize, c: usize) -> Result<(SeparatorTree, usize, usize)> {
    let k = power_of_two_k(s, r)?;
    if c == 0 {
        return Err(param("need c >= 1"));
    }
    let size0 = k + c * k;
    let mut d = Doubling::new(SeparatorTree::atom((0..size0 as Vertex).collect()), size0);
    for i in 1..=s + 1 {
        let per = k >> (i - 1);
        let atoms: Vec<Vec<Vertex>> = d.tree.atoms().map(|a| d.tree.vertices(a).to_vec()).collect();
        let mut sep = Vec::with_capacity(k);
        for atom in &atoms {
            sep.extend(d.take(atom, per)?);
        }
        d.double(sep);
    }
    Ok((d.tree, d.n, k))
}

fn finish(r: usize, n: usize, k: usize, tree: SeparatorTree, predicted: u128, params: Params) -> Result<ConstructionOutput> {
    let capacity = usize::try_from(predicted).unwrap_or(0);
    let hypergraph = glue_closure(r, n, &tree, capacity)?;
    Ok(ConstructionOutput { hypergraph, tree: oriented(&tree, k), predicted_edges: predicted, params })
}

/// Repeated doubling of `K_{k+ck}` with `k = 2^s r`: level `i` separators take
/// `k/2^i` fresh vertices from each of the `2^i` atoms. `n = k + 2^(s+1) ck`.
pub fn example1(s: usize, r: usize, c: usize) -> Result<ConstructionOutput> {
    let (tree, n, k) = example1_tree(s, r, c)?;
    let predicted = to_count(&n_bound(n, k, r, &rat_int(c as i64))?.value, "predicted edge count")?;
    let params = Params { family: "example1".into(), n, k, r, s: Some(s), c: Some(c), ..Default::default() };
    finish(r, n, k, tree, predicted, params)
}

/// Independent `k`-set of an Example 1 tree: fresh atom vertices, `r/2` from
/// every atom, alternating `⌈r/2⌉` and `⌊r/2⌋` when `r` is odd.
pub fn independent_gluing_set(tree: &SeparatorTree, r: usize) -> Vec<Vertex> {
    let mut in_sep = std::collections::BTreeSet::new();
    for s in tree.separators() {
        in_sep.extend(tree.vertices(s).iter().copied());
    }
    let mut out = Vec::new();
    for (j, a) in tree.atoms().enumerate() {
        let take = if j % 2 == 0 { r.div_ceil(2) } else { r / 2 };
        out.extend(tree.vertices(a).iter().copied().filter(|v| !in_sep.contains(v)).take(take));
    }
    out.sort_unstable();
    out
}

/// `e(H_m)` for `m` copies of an `n`-vertex `H` glued on a `k`-set spanning
/// `e_s` edges, with every cross `r`-set meeting the set added.
pub fn edge_gluing_count(e_h: u128, e_s: u128, n: usize, k: usize, r: usize, m: usize) -> i128 {
    let (m_i, t) = (m as i128, n - k);
    let total = k + m * t;
    m_i * e_h as i128 - (m_i - 1) * e_s as i128 + ci(total, r) - ci(total - k, r) - ci(k, r)
        - m_i * (ci(t + k, r) - ci(t, r) - ci(k, r))
}

/// `m` copies of the Example 1 hypergraph glued on an independent `k`-set.
pub fn example1_chain(s: usize, r: usize, c: usize, m: usize) -> Result<ConstructionOutput> {
    if m == 0 {
        return Err(param("need m >= 1"));
    }
    let (tree, n, k) = example1_tree(s, r, c)?;
    let set = independent_gluing_set(&tree, r);
    debug_assert_eq!(set.len(), k);
    let total = k + m * (n - k);
    let mut copies = vec![tree.clone()];
    for j in 1..m {
        let map = copy_map(n, &set, n + (j - 1) * (n - k));
        copies.push(tree.relabel(|v| map[v as usize]));
    }
    let mut chain = copies.pop().expect("m >= 1");
    while let Some(t) = copies.pop() {
        chain = SeparatorTree::split(set.clone(), t, chain);
    }
    let predicted = to_count(&n_bound(total, k, r, &rat_int(c as i64))?.value, "predicted edge count")?;
    let params = Params { family: "example1-chain".into(), n: total, k, r, s: Some(s), c: Some(c), m: Some(m), ..Default::default() };
    finish(r, total, k, chain, predicted, params)
}

/// Closed form for Example 2 at `c = 1`, `pk` tiny vertices per small atom.
pub fn example2_prediction(s: usize, r: usize, pk: usize) -> Result<u128> {
    let k = power_of_two_k(s, r)?;
    let n = k + (2 << s) * (k + pk);
    let two_s = rat_int(1i64 << s);
    let c = |x: usize| rat_int(ci(x, r));
    let value = c(n) - c(n - k) + rat_int(2) * &two_s * c(k) + rat_int(2) * &two_s * c(pk)
        + (rat_int(3) * &two_s - Rational::one()) * c(k)
        - &two_s * sum_halvings(&rat_int(k as i64), r)
        - &two_s * (c(k - pk) + c(pk));
    to_count(&value, "predicted edge count")
}

/// `K_{2k}` glued to `K_{k+pk}` along a complete `k`-set `S`, doubled along a
/// separator of `pk` vertices from the small side and `k - pk` from the large,
/// then doubled `s` more times along fresh vertices of the copies of `S`.
/// `c = 1`, `k = 2^s r`, `n = k + 2^(s+1)(1+p)k`.
pub fn example2(s: usize, r: usize, p: &Rational) -> Result<ConstructionOutput> {
    let k = power_of_two_k(s, r)?;
    let pk_r = p * rat_int(k as i64);
    if !pk_r.is_integer() || pk_r <= Rational::zero() || pk_r > rat_int(k as i64) {
        return Err(param(format!("pk = {} must be an integer in 1..={k}", fmt_rational(&pk_r))));
    }
    let pk: usize = pk_r.to_integer().try_into().expect("pk <= k");
    let kv = k as Vertex;
    let sset: Vec<Vertex> = (0..kv).collect();
    let h0 = SeparatorTree::atom((0..2 * kv).collect());
    let mut g0 = sset.clone();
    g0.extend(2 * kv..2 * kv + pk as Vertex);
    let mut d = Doubling::new(SeparatorTree::split(sset.clone(), SeparatorTree::atom(g0), h0), 2 * k + pk);

    let mut s0: Vec<Vertex> = (2 * kv..2 * kv + pk as Vertex).collect();
    s0.extend(kv..2 * kv - pk as Vertex);
    for &v in &s0 {
        d.used[v as usize] = true;
    }
    let mut copies = vec![sset];
    let map = d.double(s0);
    copies.push(copies[0].iter().map(|&v| map[v as usize]).collect());
    for i in 2..=s + 1 {
        let per = k >> (i - 1);
        let mut sep = Vec::with_capacity(k);
        for copy in &copies {
            sep.extend(d.take(copy, per)?);
        }
        let map = d.double(sep);
        let moved: Vec<Vec<Vertex>> = copies
            .iter()
            .map(|c| {
                let mut m: Vec<Vertex> = c.iter().map(|&v| map[v as usize]).collect();
                m.sort_unstable();
                m
            })
            .collect();
        copies.extend(moved);
    }
    let predicted = example2_prediction(s, r, pk)?;
    let params = Params {
        family: "example2".into(),
        n: d.n,
        k,
        r,
        s: Some(s),
        c: Some(1),
        p: Some(fmt_rational(p)),
        ..Default::default()
    };
    finish(r, d.n, k, d.tree, predicted, params)
}

/// `n = qk` split into `V_0, ..., V_{q-1}` of size `k`: every `r`-set except
/// those inside `V_0` and those avoiding `V_0` without lying in one part.
pub fn mader_hypergraph(q: usize, k: usize, r: usize) -> Result<ConstructionOutput> {
    if q < 2 || k == 0 || q * k < r {
        return Err(param(format!("need q >= 2, k >= 1 and qk >= r, got q = {q}, k = {k}, r = {r}")));
    }
    let n = q * k;
    let part = |v: Vertex| v as usize / k;
    let hypergraph = Hypergraph::from_predicate(r, n, |e| {
        let first = part(e[0]);
        if first == 0 {
            part(e[r - 1]) != 0
        } else {
            e.iter().all(|&v| part(v) == first)
        }
    })?;
    let v0: Vec<Vertex> = (0..k as Vertex).collect();
    let with = |i: usize| {
        let mut a = v0.clone();
        a.extend((i * k) as Vertex..((i + 1) * k) as Vertex);
        SeparatorTree::atom(a)
    };
    let mut tree = with(q - 1);
    for i in (1..q - 1).rev() {
        tree = SeparatorTree::split(v0.clone(), with(i), tree);
    }
    let predicted = ci(n, r) - ci(n - k, r) + (q as i128 - 2) * ci(k, r);
    let family = if r == 2 { "mader-graph" } else { "mader-hyper" };
    let params = Params { family: family.into(), n, k, r, q: Some(q), ..Default::default() };
    Ok(ConstructionOutput { hypergraph, tree: oriented(&tree, k), predicted_edges: predicted as u128, params })
}

/// The graph case: `V_0` independent, the other parts cliques, `V_0` joined
/// to everything else.
pub fn mader_graph(q: usize, k: usize) -> Result<ConstructionOutput> {
    mader_hypergraph(q, k, 2)
}

/// Glues `h2` onto `h1` identifying `s2[i]` with `s1[i]`, and adds every
/// `r`-set meeting the common set and both private parts. Vertices of `h1`
/// keep their labels; the rest of `h2` follows in increasing order.
pub fn glue(h1: &Hypergraph, h2: &Hypergraph, s1: &[Vertex], s2: &[Vertex]) -> Result<Hypergraph> {
    let r = h1.r();
    if h2.r() != r || s1.len() != s2.len() {
        return Err(param("glued hypergraphs need equal uniformity and equal-size gluing sets"));
    }
    let distinct = |s: &[Vertex], n: usize| {
        let mut t = s.to_vec();
        t.sort_unstable();
        t.dedup();
        t.len() == s.len() && s.iter().all(|&v| (v as usize) < n)
    };
    if !distinct(s1, h1.n()) || !distinct(s2, h2.n()) {
        return Err(param("gluing sets must be distinct in-range vertices"));
    }
    // position of each h2 vertex in the glued labelling
    let mut to_glued = vec![Vertex::MAX; h2.n()];
    for (a, b) in s1.iter().zip(s2) {
        to_glued[*b as usize] = *a;
    }
    let mut next = h1.n() as Vertex;
    for slot in to_glued.iter_mut().filter(|x| **x == Vertex::MAX) {
        *slot = next;
        next += 1;
    }
    let mut from_glued = vec![Vertex::MAX; next as usize];
    for (v, &g) in to_glued.iter().enumerate() {
        from_glued[g as usize] = v as Vertex;
    }
    let mut s1_sorted = s1.to_vec();
    s1_sorted.sort_unstable();
    let back = |e: &[Vertex]| {
        let mut t: Vec<Vertex> = e.iter().map(|&v| from_glued[v as usize]).collect();
        t.sort_unstable();
        t
    };
    let mut mismatch = false;
    let _ = crate::subsets::for_each_subset(&s1_sorted, r, |e| {
        if h1.contains(e) != h2.contains(&back(e)) {
            mismatch = true;
            return std::ops::ControlFlow::Break(());
        }
        std::ops::ControlFlow::Continue(())
    });
    if mismatch {
        return Err(precondition("the gluing sets induce different subhypergraphs"));
    }
    let n1 = h1.n() as Vertex;
    let in_s = |v: &Vertex| s1_sorted.binary_search(v).is_ok();
    Ok(Hypergraph::from_predicate(r, next as usize, |e| {
        let in_a = e.iter().all(|&v| v < n1);
        let in_b = e.iter().all(|&v| v >= n1 || in_s(&v));
        if in_a {
            h1.contains(e)
        } else if in_b {
            h2.contains(&back(e))
        } else {
            e.iter().any(in_s)
        }
    })?)
}

/// `m` copies of `h` identified along `set`; an `r`-set reaching into two or
/// more copies is an edge exactly when it meets `set`.
pub fn glue_copies(h: &Hypergraph, set: &[Vertex], m: usize) -> Result<Hypergraph> {
    let (n, r) = (h.n(), h.r());
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if m == 0 || set.last().is_some_and(|&v| v as usize >= n) {
        return Err(param("need m >= 1 and the gluing set inside V(H)"));
    }
    let t = n - set.len();
    let private = difference(&(0..n as Vertex).collect::<Vec<_>>(), &set);
    let total = n + (m - 1) * t;
    let origin = |v: Vertex| -> (usize, Vertex) {
        let v = v as usize;
        if v < n {
            (0, v as Vertex)
        } else {
            ((v - n) / t + 1, private[(v - n) % t])
        }
    };
    let in_set = |v: Vertex| v < n as Vertex && set.binary_search(&v).is_ok();
    let mut buf = Vec::with_capacity(r);
    Ok(Hypergraph::from_predicate(r, total, |e| {
        let mut copy = None;
        let mut cross = false;
        for &v in e {
            if in_set(v) {
                continue;
            }
            let c = origin(v).0;
            match copy {
                None => copy = Some(c),
                Some(x) if x != c => cross = true,
                _ => {}
            }
        }
        if cross {
            return e.iter().any(|&v| in_set(v));
        }
        buf.clear();
        buf.extend(e.iter().map(|&v| if in_set(v) { v } else { origin(v).1 }));
        buf.sort_unstable();
        h.contains(&buf)
    })?)
}

/// Adds vertex `n` with every `r`-set through it that meets `set`.
pub fn extend_by_vertex(h: &Hypergraph, set: &[Vertex]) -> Result<Hypergraph> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.last().is_some_and(|&v| v as usize >= h.n()) {
        return Err(param("extension set must lie inside V(H)"));
    }
    let v = h.n() as Vertex;
    Ok(Hypergraph::from_predicate(h.r(), h.n() + 1, |e| {
        if e[e.len() - 1] == v {
            e.iter().any(|u| set.binary_search(u).is_ok())
        } else {
            h.contains(e)
        }
    })?)
}

/// Separator tree for [`extend_by_vertex`]: the new vertex sits in an atom
/// `set + v` split off the old tree along `set`.
pub fn extend_certificate(tree: &SeparatorTree, set: &[Vertex]) -> Result<SeparatorTree> {
    let mut set = set.to_vec();
    set.sort_unstable();
    if !is_subset(&set, tree.root_vertices()) {
        return Err(param("extension set must lie inside the tree's root"));
    }
    let v = tree.root_vertices().last().map_or(0, |&x| x + 1);
    let mut atom = set.clone();
    atom.push(v);
    Ok(SeparatorTree::split(set, SeparatorTree::atom(atom), tree.clone()))
}

/// `binom_ext(k/2^i, r)` free-count target of an Example 1 level-`i` separator.
pub fn example1_free_count(k: usize, r: usize, level: u32) -> Rational {
    rat_int(ci(k, r)) - rat_int(1i64 << level) * binom_ext(&(rat_int(k as i64) / rat_int(1i64 << level)), r as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::septree::{audit_edge_identity, validate_separator_tree};

    #[test]
    fn example1_small_instances() {
        let out = example1(1, 3, 1).unwrap();
        assert_eq!(out.hypergraph.n(), 30);
        assert_eq!(out.hypergraph.edge_count(), 2134);
        assert!(out.prediction_holds());
        assert!(validate_separator_tree(&out.hypergraph, &out.tree, 6, &rat_int(1)).valid);
        let out = example1(1, 3, 3).unwrap();
        assert_eq!((out.hypergraph.n(), out.hypergraph.edge_count()), (78, 19718));
    }

    #[test]
    fn example1_ledger_has_no_anti_edges_in_atoms() {
        let out = example1(1, 3, 1).unwrap();
        let l = audit_edge_identity(&out.hypergraph, &out.tree).unwrap();
        assert!(l.atoms.iter().all(|a| a.anti_edges == 0));
        assert!(l.separators.iter().all(|s| s.bonded_anti_edges == 0));
    }

    #[test]
    fn example2_instance() {
        let out = example2(1, 3, &rat(1, 6)).unwrap();
        assert_eq!(out.hypergraph.n(), 34);
        assert_eq!(out.predicted_edges, 2826);
        assert!(out.prediction_holds());
        let sizes: Vec<usize> = out.tree.atoms().map(|a| out.tree.vertices(a).len()).collect();
        assert_eq!(sizes.iter().filter(|&&x| x == 12).count(), 4);
        assert_eq!(sizes.iter().filter(|&&x| x == 7).count(), 4);
        assert!(validate_separator_tree(&out.hypergraph, &out.tree, 6, &rat_int(1)).valid);
        assert!(example2(1, 3, &rat(1, 4)).is_err());
        assert!(example2(1, 3, &rat(7, 6)).is_err());
    }

    #[test]
    fn mader_families() {
        let g = mader_graph(2, 2).unwrap();
        assert_eq!(g.hypergraph.edge_count(), 5);
        let h = mader_hypergraph(2, 3, 3).unwrap();
        assert_eq!((h.hypergraph.edge_count(), h.predicted_edges), (19, 19));
        let h = mader_hypergraph(3, 2, 3).unwrap();
        assert_eq!((h.hypergraph.edge_count(), h.predicted_edges), (16, 16));
        assert!(validate_separator_tree(&h.hypergraph, &h.tree, 2, &rat_int(1)).valid);
    }

    #[test]
    fn glue_two_complete() {
        let k6 = Hypergraph::complete(3, 6).unwrap();
        let g = glue(&k6, &k6, &[0, 1, 2], &[3, 4, 5]).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 66);
        let e = Hypergraph::new(3, 6, [[0, 1, 2]]).unwrap();
        assert!(glue(&k6, &e, &[0, 1, 2], &[3, 4, 5]).is_err());
    }

    #[test]
    fn glue_copies_matches_gluing_count() {
        let k6 = Hypergraph::complete(3, 6).unwrap();
        assert_eq!(glue_copies(&k6, &[0, 1, 2], 1).unwrap(), k6);
        let g = glue_copies(&k6, &[0, 1, 2], 3).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(g.edge_count() as i128, edge_gluing_count(20, 1, 6, 3, 3, 3));
    }

    #[test]
    fn extension_delta() {
        let h = mader_hypergraph(3, 2, 3).unwrap();
        let x = extend_by_vertex(&h.hypergraph, &[0, 1]).unwrap();
        let d = ci(7, 3) - ci(6, 3) - ci(5, 3) + ci(4, 3);
        assert_eq!(x.edge_count() as i128 - 16, d);
        let t = extend_certificate(&h.tree, &[0, 1]).unwrap();
        assert!(validate_separator_tree(&x, &t, 2, &rat_int(1)).valid);
    }

    #[test]
    fn chain_of_one_is_example1() {
        let a = example1(1, 3, 1).unwrap();
        let b = example1_chain(1, 3, 1, 1).unwrap();
        assert_eq!(a.hypergraph, b.hypergraph);
    }

    #[test]
    fn output_json_shape() {
        let out = mader_hypergraph(2, 3, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["hypergraph", "params", "predicted_edges", "tree"]);
        assert_eq!(ConstructionOutput::from_json(&out.to_json()).unwrap(), out);
    }
}
