//! Truncated, wired directed covers stored as breadth-first arenas.
//!
//! Node ids are assigned level by level in child order, so the nodes of the
//! height-`h` cover are a prefix of the nodes of any taller cover with the
//! same root type. Depth-`h` nodes are absorbing leaves (the up sink) and the
//! root's parent is a virtual down sink that is never allocated.

use std::fmt;
use std::io::{self, Write};
use std::ops::Range;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::analysis::level_counts;
use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};

/// Default limit on the number of nodes a cover may allocate.
pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub ty: TypeId,
    pub depth: u32,
    pub parent: Option<NodeId>,
    first_child: u32,
    child_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTree {
    root_type: TypeId,
    height: u32,
    nodes: Vec<Node>,
    /// `level_start[n]` is the id of the first depth-`n` node; one extra
    /// entry holds the node count.
    level_start: Vec<u32>,
    max_degree: usize,
}

/// Builds the cover of `graph` rooted at `root_type`, truncated at `height`.
pub fn build_cover(graph: &BaseGraph, root_type: TypeId, height: u32) -> Result<CoverTree> {
    build_cover_with_cap(graph, root_type, height, DEFAULT_NODE_CAP)
}

pub fn build_cover_with_cap(graph: &BaseGraph, root_type: TypeId, height: u32, cap: u64) -> Result<CoverTree> {
    if height == 0 {
        return Err(Error::Domain("cover height must be at least 1".into()));
    }
    if root_type.index() >= graph.type_count() {
        return Err(Error::Domain(format!("root type {root_type} not in graph")));
    }
    let projected: BigUint = (0..=height).map(|n| level_counts(graph, n).total(root_type)).sum();
    let limit = cap.min(u32::MAX as u64);
    if projected > BigUint::from(limit) {
        return Err(Error::Capacity {
            what: "cover tree nodes",
            requested: projected.to_string(),
            limit,
        });
    }
    let total: usize = u64::try_from(&projected).expect("checked against cap") as usize;

    let mut nodes = Vec::with_capacity(total);
    let mut level_start = vec![0u32];
    nodes.push(Node { ty: root_type, depth: 0, parent: None, first_child: 0, child_count: 0 });
    for depth in 0..height {
        let (begin, end) = (*level_start.last().unwrap() as usize, nodes.len());
        level_start.push(end as u32);
        for id in begin..end {
            let ty = nodes[id].ty;
            let first = nodes.len() as u32;
            for &child in graph.children(ty) {
                nodes.push(Node {
                    ty: child,
                    depth: depth + 1,
                    parent: Some(NodeId(id as u32)),
                    first_child: 0,
                    child_count: 0,
                });
            }
            nodes[id].first_child = first;
            nodes[id].child_count = graph.degree(ty) as u32;
        }
    }
    level_start.push(nodes.len() as u32);
    debug_assert_eq!(nodes.len(), total);

    Ok(CoverTree { root_type, height, nodes, level_start, max_degree: graph.max_degree() })
}

impl CoverTree {
    pub fn root_type(&self) -> TypeId {
        self.root_type
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, &Node)> {
        self.nodes.iter().enumerate().map(|(i, n)| (NodeId(i as u32), n))
    }

    /// Nodes strictly above depth `h`; these carry rotors. They form the id
    /// prefix `0..internal_count()`.
    pub fn internal_count(&self) -> usize {
        self.level_start[self.height as usize] as usize
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        id.index() >= self.internal_count()
    }

    /// Depth-`h` leaves, the up sink.
    pub fn leaves(&self) -> Range<usize> {
        self.internal_count()..self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.len() - self.internal_count()
    }

    pub fn level(&self, depth: u32) -> Range<usize> {
        let d = depth as usize;
        self.level_start[d] as usize..self.level_start[d + 1] as usize
    }

    /// Child count of a node (zero for leaves).
    pub fn degree(&self, id: NodeId) -> usize {
        self.nodes[id.index()].child_count as usize
    }

    pub fn children(&self, id: NodeId) -> impl ExactSizeIterator<Item = NodeId> {
        let n = &self.nodes[id.index()];
        (n.first_child..n.first_child + n.child_count).map(NodeId)
    }

    /// `k`-th child, `1 ≤ k ≤ degree`.
    pub fn child(&self, id: NodeId, k: usize) -> NodeId {
        let n = &self.nodes[id.index()];
        debug_assert!(k >= 1 && k <= n.child_count as usize);
        NodeId(n.first_child + k as u32 - 1)
    }

    /// Follows 1-based child indices from the root.
    pub fn node_at_path(&self, path: &[usize]) -> Result<NodeId> {
        let mut id = NodeId::ROOT;
        for (step, &k) in path.iter().enumerate() {
            let children = self.degree(id);
            if k == 0 || k > children {
                return Err(Error::Path { step, index: k, children });
            }
            id = self.child(id, k);
        }
        Ok(id)
    }

    /// Depth-`n` node counts by type.
    pub fn level_census(&self, depth: u32, types: usize) -> Vec<u64> {
        let mut census = vec![0u64; types];
        for id in self.level(depth) {
            census[self.nodes[id].ty.index()] += 1;
        }
        census
    }

    /// Edge list export: one line `parent child child_type depth` per edge,
    /// ids in breadth-first order, types 1-based.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (id, node) in self.nodes().skip(1) {
            let parent = node.parent.expect("non-root has a parent");
            writeln!(out, "{} {} {} {}", parent, id, node.ty, node.depth)?;
        }
        Ok(())
    }
}
