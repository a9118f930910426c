use serde::{Deserialize, Serialize};

use crate::hypergraph::Vertex;
use crate::subsets::{difference, union};
use crate::{Error, Result};

/// Index of a node in preorder (subgraph node, its separator, then the
/// `small` subtree followed by the `big` subtree).
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Subgraph { vertices: Vec<Vertex>, child: Option<NodeId> },
    Separator { vertices: Vec<Vertex>, small: NodeId, big: NodeId },
}

impl Node {
    pub fn vertices(&self) -> &[Vertex] {
        match self {
            Node::Subgraph { vertices, .. } | Node::Separator { vertices, .. } => vertices,
        }
    }
}

/// Alternating tree of subgraph and separator nodes. The two children of a
/// separator are stored as `small` and `big`; that stored order is what the
/// JSON form records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorTree {
    nodes: Vec<Node>,
    parent: Vec<Option<NodeId>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Wire {
    Subgraph { vertices: Vec<Vertex>, child: Option<Box<Wire>> },
    Separator { vertices: Vec<Vertex>, small: Box<Wire>, big: Box<Wire> },
}

impl SeparatorTree {
    /// A single atom.
    pub fn atom(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        SeparatorTree {
            nodes: vec![Node::Subgraph { vertices, child: None }],
            parent: vec![None],
        }
    }

    /// Joins two trees along `separator`; the new root holds the union of the
    /// two child roots.
    pub fn split(mut separator: Vec<Vertex>, small: SeparatorTree, big: SeparatorTree) -> Self {
        separator.sort_unstable();
        separator.dedup();
        let root = union(small.root_vertices(), big.root_vertices());
        let mut nodes = Vec::with_capacity(2 + small.len() + big.len());
        let mut parent = Vec::with_capacity(nodes.capacity());
        let small_at = 2;
        let big_at = 2 + small.len();
        nodes.push(Node::Subgraph { vertices: root, child: Some(1) });
        parent.push(None);
        nodes.push(Node::Separator { vertices: separator, small: small_at, big: big_at });
        parent.push(Some(0));
        for (offset, sub) in [(small_at, small), (big_at, big)] {
            for (i, node) in sub.nodes.into_iter().enumerate() {
                nodes.push(shift(node, offset));
                parent.push(Some(sub.parent[i].map_or(1, |p| p + offset)));
            }
        }
        SeparatorTree { nodes, parent }
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn vertices(&self, id: NodeId) -> &[Vertex] {
        self.nodes[id].vertices()
    }

    pub fn root_vertices(&self) -> &[Vertex] {
        self.vertices(0)
    }

    pub fn is_atom(&self, id: NodeId) -> bool {
        matches!(self.nodes[id], Node::Subgraph { child: None, .. })
    }

    pub fn is_separator(&self, id: NodeId) -> bool {
        matches!(self.nodes[id], Node::Separator { .. })
    }

    /// The separator below a subgraph node, if any.
    pub fn child(&self, id: NodeId) -> Option<NodeId> {
        match self.nodes[id] {
            Node::Subgraph { child, .. } => child,
            Node::Separator { .. } => None,
        }
    }

    /// `(small, big)` children of a separator node.
    pub fn branches(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id] {
            Node::Separator { small, big, .. } => Some((small, big)),
            Node::Subgraph { .. } => None,
        }
    }

    pub fn atoms(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&i| self.is_atom(i))
    }

    pub fn separators(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).filter(|&i| self.is_separator(i))
    }

    /// The separator directly above a subgraph node.
    pub fn separator_above(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id].filter(|&p| self.is_separator(p))
    }

    /// Vertices of a subgraph node outside the separator directly above it.
    pub fn private_part(&self, id: NodeId) -> Vec<Vertex> {
        match self.separator_above(id) {
            Some(s) => difference(self.vertices(id), self.vertices(s)),
            None => self.vertices(id).to_vec(),
        }
    }

    /// Copy with every vertex renamed through `f`; vertex lists are re-sorted.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> SeparatorTree {
        let nodes = self
            .nodes
            .iter()
            .map(|node| {
                let mut node = node.clone();
                let vs = match &mut node {
                    Node::Subgraph { vertices, .. } | Node::Separator { vertices, .. } => vertices,
                };
                for v in vs.iter_mut() {
                    *v = f(*v);
                }
                vs.sort_unstable();
                node
            })
            .collect();
        SeparatorTree { nodes, parent: self.parent.clone() }
    }

    /// Copy with the children of every separator in `flip` exchanged.
    pub fn with_flips(&self, flip: &[bool]) -> SeparatorTree {
        self.rebuild(0, &|id| flip.get(id).copied().unwrap_or(false))
    }

    fn rebuild(&self, id: NodeId, flip: &dyn Fn(NodeId) -> bool) -> SeparatorTree {
        match self.child(id) {
            None => SeparatorTree::atom(self.vertices(id).to_vec()),
            Some(s) => {
                let (a, b) = self.branches(s).expect("separator");
                let (a, b) = if flip(s) { (b, a) } else { (a, b) };
                let mut t = SeparatorTree::split(
                    self.vertices(s).to_vec(),
                    self.rebuild(a, flip),
                    self.rebuild(b, flip),
                );
                // keep the stored root label even if it is not the union of the children
                if let Node::Subgraph { vertices, .. } = &mut t.nodes[0] {
                    *vertices = self.vertices(id).to_vec();
                }
                t
            }
        }
    }

    /// Subtree rooted at the subgraph node `id`, renumbered from 0.
    pub fn subtree(&self, id: NodeId) -> SeparatorTree {
        self.rebuild(id, &|_| false)
    }

    fn to_wire(&self, id: NodeId) -> Wire {
        match &self.nodes[id] {
            Node::Subgraph { vertices, child } => Wire::Subgraph {
                vertices: vertices.clone(),
                child: child.map(|c| Box::new(self.to_wire(c))),
            },
            Node::Separator { vertices, small, big } => Wire::Separator {
                vertices: vertices.clone(),
                small: Box::new(self.to_wire(*small)),
                big: Box::new(self.to_wire(*big)),
            },
        }
    }

    fn push_wire(&mut self, w: Wire, parent: Option<NodeId>) -> Result<NodeId> {
        let id = self.nodes.len();
        match w {
            Wire::Subgraph { vertices, child } => {
                self.nodes.push(Node::Subgraph { vertices, child: None });
                self.parent.push(parent);
                if let Some(c) = child {
                    if !matches!(*c, Wire::Separator { .. }) {
                        return Err(Error::TreeShape("the child of a subgraph node must be a separator".into()));
                    }
                    let cid = self.push_wire(*c, Some(id))?;
                    if let Node::Subgraph { child, .. } = &mut self.nodes[id] {
                        *child = Some(cid);
                    }
                }
            }
            Wire::Separator { vertices, small, big } => {
                if !matches!(*small, Wire::Subgraph { .. }) || !matches!(*big, Wire::Subgraph { .. }) {
                    return Err(Error::TreeShape("the children of a separator must be subgraph nodes".into()));
                }
                self.nodes.push(Node::Separator { vertices, small: 0, big: 0 });
                self.parent.push(parent);
                let s = self.push_wire(*small, Some(id))?;
                let b = self.push_wire(*big, Some(id))?;
                if let Node::Separator { small, big, .. } = &mut self.nodes[id] {
                    *small = s;
                    *big = b;
                }
            }
        }
        Ok(id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire(0)).expect("tree serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(s)?;
        Self::from_wire(wire)
    }

    fn from_wire(wire: Wire) -> Result<Self> {
        if !matches!(wire, Wire::Subgraph { .. }) {
            return Err(Error::TreeShape("the root must be a subgraph node".into()));
        }
        let mut t = SeparatorTree { nodes: Vec::new(), parent: Vec::new() };
        t.push_wire(wire, None)?;
        Ok(t)
    }
}

fn shift(node: Node, offset: usize) -> Node {
    match node {
        Node::Subgraph { vertices, child } => Node::Subgraph { vertices, child: child.map(|c| c + offset) },
        Node::Separator { vertices, small, big } => {
            Node::Separator { vertices, small: small + offset, big: big + offset }
        }
    }
}

impl Serialize for SeparatorTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire(0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeparatorTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = Wire::deserialize(d)?;
        SeparatorTree::from_wire(wire).map_err(serde::de::Error::custom)
    }
}
