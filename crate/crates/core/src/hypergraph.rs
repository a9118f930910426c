//! Uniform hypergraphs with canonical, compactly packed edge storage.
//!
//! Vertices are labelled `0..n`. Each edge is an ascending `r`-tuple packed
//! into a `u64` with the first vertex in the most significant field, so the
//! sorted key vector is exactly the lexicographic edge order.

use std::fmt;
use std::ops::{ControlFlow, Deref};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::choose;
use crate::subsets::for_each_subset;

pub type Vertex = u32;

/// Largest supported uniformity.
pub const MAX_UNIFORMITY: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("invalid hypergraph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("r = {r} with n = {n} does not fit the packed edge encoding (r * bits(n) > 64)")]
    TooWide { r: usize, n: usize },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// One broken hypergraph invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    UniformityOutOfRange { r: usize },
    NoVertices,
    WrongEdgeSize { edge: usize, len: usize },
    RepeatedVertex { edge: usize, vertex: Vertex },
    VertexOutOfRange { edge: usize, vertex: Vertex },
    NotAscending { edge: usize },
    NotSorted { edge: usize },
    DuplicateEdge { edge: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UniformityOutOfRange { r } => {
                write!(f, "uniformity r = {r} outside 2..={MAX_UNIFORMITY}")
            }
            Violation::NoVertices => write!(f, "n must be at least 1"),
            Violation::WrongEdgeSize { edge, len } => write!(f, "edge #{edge} has {len} vertices"),
            Violation::RepeatedVertex { edge, vertex } => {
                write!(f, "edge #{edge} repeats vertex {vertex}")
            }
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge #{edge} uses vertex {vertex} outside 0..n")
            }
            Violation::NotAscending { edge } => write!(f, "edge #{edge} is not in ascending order"),
            Violation::NotSorted { edge } => {
                write!(f, "edge #{edge} breaks the lexicographic edge order")
            }
            Violation::DuplicateEdge { edge } => write!(f, "edge #{edge} is a duplicate"),
        }
    }
}

/// The wire form of a hypergraph, exactly as it appears in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHypergraph {
    pub r: usize,
    pub n: usize,
    pub edges: Vec<Vec<Vertex>>,
}

/// Lists every violated invariant of a raw hypergraph; empty iff valid.
pub fn validate_hypergraph(raw: &RawHypergraph) -> Vec<Violation> {
    let mut out = Vec::new();
    if raw.r < 2 || raw.r > MAX_UNIFORMITY {
        out.push(Violation::UniformityOutOfRange { r: raw.r });
    }
    if raw.n == 0 {
        out.push(Violation::NoVertices);
    }
    let mut prev: Option<&Vec<Vertex>> = None;
    for (i, e) in raw.edges.iter().enumerate() {
        if e.len() != raw.r {
            out.push(Violation::WrongEdgeSize { edge: i, len: e.len() });
        }
        for &v in e {
            if v as usize >= raw.n {
                out.push(Violation::VertexOutOfRange { edge: i, vertex: v });
            }
        }
        let mut sorted = e.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            out.push(Violation::RepeatedVertex { edge: i, vertex: w[0] });
        } else if sorted != *e {
            out.push(Violation::NotAscending { edge: i });
        }
        if let Some(p) = prev {
            match p.cmp(e) {
                std::cmp::Ordering::Equal => out.push(Violation::DuplicateEdge { edge: i }),
                std::cmp::Ordering::Greater => out.push(Violation::NotSorted { edge: i }),
                std::cmp::Ordering::Less => {}
            }
        }
        prev = Some(e);
    }
    out
}

/// Packs ascending vertex tuples into `u64` keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCodec {
    r: usize,
    bits: u32,
}

impl EdgeCodec {
    pub fn new(r: usize, n: usize) -> Result<Self, HypergraphError> {
        let bits = if n <= 2 { 1 } else { usize::BITS - (n - 1).leading_zeros() };
        if r == 0 || r > MAX_UNIFORMITY || r as u32 * bits > 64 {
            return Err(HypergraphError::TooWide { r, n });
        }
        Ok(EdgeCodec { r, bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn encode(&self, e: &[Vertex]) -> u64 {
        debug_assert_eq!(e.len(), self.r);
        e.iter().fold(0u64, |acc, &v| (acc << self.bits) | v as u64)
    }

    #[inline]
    pub fn decode(&self, key: u64) -> Edge {
        let mask = (1u64 << self.bits) - 1;
        let mut out = Edge { len: self.r as u8, v: [0; MAX_UNIFORMITY] };
        let mut k = key;
        for i in (0..self.r).rev() {
            out.v[i] = (k & mask) as Vertex;
            k >>= self.bits;
        }
        out
    }
}

/// A decoded edge (ascending vertex tuple).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    len: u8,
    v: [Vertex; MAX_UNIFORMITY],
}

impl Deref for Edge {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.v[..self.len as usize]
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// An `n`-vertex `r`-uniform hypergraph.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    codec: EdgeCodec,
    keys: Vec<u64>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("r", &self.r)
            .field("n", &self.n)
            .field("edges", &self.keys.len())
            .finish()
    }
}

impl Hypergraph {
    /// Builds a hypergraph from edges in any order; each edge is sorted
    /// internally. Repeated vertices, out-of-range labels, wrong sizes and
    /// duplicate edges are rejected.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut raw: Vec<Vec<Vertex>> = edges
            .into_iter()
            .map(|e| {
                let mut e = e.as_ref().to_vec();
                e.sort_unstable();
                e
            })
            .collect();
        raw.sort();
        Self::try_from(RawHypergraph { r, n, edges: raw })
    }

    pub fn empty(r: usize, n: usize) -> Result<Self, HypergraphError> {
        Self::new::<_, [Vertex; 0]>(r, n, [])
    }

    pub fn complete(r: usize, n: usize) -> Result<Self, HypergraphError> {
        Self::from_predicate(r, n, |_| true)
    }

    /// All `r`-subsets of `0..n` accepted by `keep`, enumerated lexicographically.
    pub fn from_predicate<F>(r: usize, n: usize, mut keep: F) -> Result<Self, HypergraphError>
    where
        F: FnMut(&[Vertex]) -> bool,
    {
        let codec = Self::checked_codec(r, n)?;
        let pool: Vec<Vertex> = (0..n as Vertex).collect();
        let mut keys = Vec::new();
        let _ = for_each_subset(&pool, r, |e| {
            if keep(e) {
                keys.push(codec.encode(e));
            }
            ControlFlow::Continue(())
        });
        Ok(Hypergraph { r, n, codec, keys })
    }

    /// Builds from keys the caller guarantees are strictly increasing.
    pub(crate) fn from_sorted_keys(r: usize, n: usize, keys: Vec<u64>) -> Result<Self, HypergraphError> {
        let codec = Self::checked_codec(r, n)?;
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        Ok(Hypergraph { r, n, codec, keys })
    }

    fn checked_codec(r: usize, n: usize) -> Result<EdgeCodec, HypergraphError> {
        let mut bad = Vec::new();
        if !(2..=MAX_UNIFORMITY).contains(&r) {
            bad.push(Violation::UniformityOutOfRange { r });
        }
        if n == 0 {
            bad.push(Violation::NoVertices);
        }
        if !bad.is_empty() {
            return Err(HypergraphError::Invalid(bad));
        }
        EdgeCodec::new(r, n)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.keys.len()
    }

    pub fn codec(&self) -> EdgeCodec {
        self.codec
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        let codec = self.codec;
        self.keys.iter().map(move |&k| codec.decode(k))
    }

    /// Membership test for an ascending `r`-tuple.
    pub fn contains(&self, e: &[Vertex]) -> bool {
        if e.len() != self.r || e.iter().any(|&v| v as usize >= self.n) {
            return false;
        }
        self.keys.binary_search(&self.codec.encode(e)).is_ok()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.n as Vertex).collect()
    }

    /// Number of edges fully inside the sorted vertex set `w`.
    pub fn edges_within(&self, w: &[Vertex]) -> u128 {
        let mut inside = vec![false; self.n];
        for &v in w {
            inside[v as usize] = true;
        }
        self.iter().filter(|e| e.iter().all(|&v| inside[v as usize])).count() as u128
    }

    /// `H[W]` relabelled onto `0..|W|`, together with the label map
    /// (`map[new] = old`).
    pub fn induced_subgraph(&self, w: &[Vertex]) -> (Hypergraph, Vec<Vertex>) {
        let mut map: Vec<Vertex> = w.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut relabel = vec![u32::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            relabel[v as usize] = i as Vertex;
        }
        let n = map.len().max(1);
        let codec = EdgeCodec::new(self.r, n).expect("sub-hypergraph of a packable hypergraph");
        let mut buf = [0 as Vertex; MAX_UNIFORMITY];
        let mut keys = Vec::new();
        'edges: for e in self.iter() {
            for (i, &v) in e.iter().enumerate() {
                let nv = relabel[v as usize];
                if nv == u32::MAX {
                    continue 'edges;
                }
                buf[i] = nv;
            }
            // relabelling is monotone, so keys stay sorted
            keys.push(codec.encode(&buf[..self.r]));
        }
        let h = Hypergraph { r: self.r, n, codec, keys };
        (h, map)
    }

    /// Anti-edges inside `w`: `C(|W|, r) - e(H[W])`.
    pub fn anti_edge_count(&self, w: &[Vertex]) -> u128 {
        choose(w.len() as u64, self.r as u64) - self.edges_within(w)
    }

    /// Adds or removes nothing; returns the edges as plain vectors.
    pub fn to_raw(&self) -> RawHypergraph {
        RawHypergraph {
            r: self.r,
            n: self.n,
            edges: self.iter().map(|e| e.to_vec()).collect(),
        }
    }

    /// Canonical JSON encoding.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, crate::Error> {
        let raw: RawHypergraph = serde_json::from_str(s)?;
        Ok(Hypergraph::try_from(raw)?)
    }
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = HypergraphError;

    fn try_from(raw: RawHypergraph) -> Result<Self, Self::Error> {
        let violations = validate_hypergraph(&raw);
        if !violations.is_empty() {
            return Err(HypergraphError::Invalid(violations));
        }
        let codec = EdgeCodec::new(raw.r, raw.n)?;
        let keys = raw.edges.iter().map(|e| codec.encode(e)).collect();
        Ok(Hypergraph { r: raw.r, n: raw.n, codec, keys })
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Edges<'a>(&'a Hypergraph);
        impl Serialize for Edges<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_seq(self.0.iter().map(|e| e.to_vec()))
            }
        }
        let mut st = s.serialize_struct("Hypergraph", 3)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &Edges(self))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(d)?;
        Hypergraph::try_from(raw).map_err(serde::de::Error::custom)
    }
}
