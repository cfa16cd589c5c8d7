//! Finite generating graphs with an ordered generation function.
//!
//! A [`BaseGraph`] stores, for every type `i`, the ordered list of child
//! types of a type-`i` vertex. The order is the planar embedding of the
//! cover: rotor position `k` at a type-`i` vertex points at its `k`-th child,
//! whose type is `child_lists[i][k - 1]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex type of the base graph. Stored 0-based, displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TypeId(u32);

impl TypeId {
    /// Type from its 1-based label. Panics on 0.
    pub fn new(label: usize) -> Self {
        assert!(label >= 1, "type labels are 1-based");
        TypeId((label - 1) as u32)
    }

    pub(crate) fn from_index(index: usize) -> Self {
        TypeId(index as u32)
    }

    /// 0-based position for indexing rows and columns.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based label.
    #[inline]
    pub fn label(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseGraph {
    child_lists: Vec<Vec<TypeId>>,
}

/// Result of [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl BaseGraph {
    /// Builds a graph from 1-based child lists, rejecting labels outside `1..=m`.
    /// Structural assumptions are checked separately by [`validate`].
    pub fn from_labels<L: AsRef<[usize]>>(child_lists: &[L]) -> Result<Self> {
        let m = child_lists.len();
        if m == 0 {
            return Err(Error::InvalidGraph("graph has no types".into()));
        }
        let mut lists = Vec::with_capacity(m);
        for (i, list) in child_lists.iter().enumerate() {
            let mut row = Vec::with_capacity(list.as_ref().len());
            for (k, &label) in list.as_ref().iter().enumerate() {
                if label == 0 || label > m {
                    return Err(Error::InvalidGraph(format!(
                        "type {label} out of range 1..={m} at children[{i}][{k}]"
                    )));
                }
                row.push(TypeId::new(label));
            }
            lists.push(row);
        }
        Ok(BaseGraph { child_lists: lists })
    }

    /// Builds and validates, turning any violation into an error.
    pub fn checked<L: AsRef<[usize]>>(child_lists: &[L]) -> Result<Self> {
        let graph = Self::from_labels(child_lists)?;
        let report = validate(&graph);
        if report.ok {
            Ok(graph)
        } else {
            Err(Error::InvalidGraph(report.violations.join("; ")))
        }
    }

    /// Single-type graph whose vertices have `b` children: the `b`-ary
    /// homogeneous cover (the half-line for `b = 1`).
    pub fn homogeneous(b: usize) -> Self {
        BaseGraph {
            child_lists: vec![vec![TypeId::new(1); b]],
        }
    }

    /// Number of types `m`.
    pub fn type_count(&self) -> usize {
        self.child_lists.len()
    }

    pub fn types(&self) -> impl Iterator<Item = TypeId> + '_ {
        (0..self.type_count()).map(TypeId::from_index)
    }

    /// Ordered child types of a type-`i` vertex.
    pub fn children(&self, i: TypeId) -> &[TypeId] {
        &self.child_lists[i.index()]
    }

    /// Child count `d_i`.
    pub fn degree(&self, i: TypeId) -> usize {
        self.child_lists[i.index()].len()
    }

    /// `D_max = max_i d_i`.
    pub fn max_degree(&self) -> usize {
        self.child_lists.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Child lists as 1-based labels, the external representation.
    pub fn to_labels(&self) -> Vec<Vec<usize>> {
        self.child_lists
            .iter()
            .map(|row| row.iter().map(|t| t.label()).collect())
            .collect()
    }

    /// Relabels types: type `i` becomes `perm[i]` (0-based permutation).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let m = self.type_count();
        assert_eq!(perm.len(), m);
        let mut lists = vec![Vec::new(); m];
        for (i, row) in self.child_lists.iter().enumerate() {
            lists[perm[i]] = row.iter().map(|t| TypeId::from_index(perm[t.index()])).collect();
        }
        BaseGraph { child_lists: lists }
    }

    /// Replaces the embedding of type `i` with another ordering of its children.
    pub fn with_children(&self, i: TypeId, order: Vec<TypeId>) -> Self {
        let mut g = self.clone();
        g.child_lists[i.index()] = order;
        g
    }
}

/// Adjacency matrix `D`: entry `(i, j)` is the multiplicity of `j` in the
/// child list of `i`.
pub fn adjacency_matrix(graph: &BaseGraph) -> Vec<Vec<u64>> {
    let m = graph.type_count();
    let mut d = vec![vec![0u64; m]; m];
    for i in graph.types() {
        for child in graph.children(i) {
            d[i.index()][child.index()] += 1;
        }
    }
    d
}

/// Checks every type has a child and the graph is strongly connected.
pub fn validate(graph: &BaseGraph) -> ValidationReport {
    let mut violations = Vec::new();
    for i in graph.types() {
        if graph.degree(i) == 0 {
            violations.push(format!("type {i} has an empty child list"));
        }
    }

    let m = graph.type_count();
    let reach_from = |start: usize, forward: bool| {
        let mut seen = vec![false; m];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for v in 0..m {
                let edge = if forward {
                    graph.child_lists[u].iter().any(|t| t.index() == v)
                } else {
                    graph.child_lists[v].iter().any(|t| t.index() == u)
                };
                if edge && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    };
    let forward = reach_from(0, true);
    let backward = reach_from(0, false);
    for v in 0..m {
        if !forward[v] {
            violations.push(format!(
                "not strongly connected: type {} is unreachable from type 1",
                v + 1
            ));
        } else if !backward[v] {
            violations.push(format!(
                "not strongly connected: type 1 is unreachable from type {}",
                v + 1
            ));
        }
    }

    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Well-known graphs used throughout tests and examples.
pub mod catalog {
    use super::BaseGraph;

    /// Fibonacci tree: type 1 has one type-2 child, type 2 has children (2, 1).
    pub fn fibonacci() -> BaseGraph {
        BaseGraph::checked(&[vec![2], vec![2, 1]]).unwrap()
    }

    /// Generalized Fibonacci tree with `alpha` type-2 children under type 1.
    pub fn generalized_fibonacci(alpha: usize) -> BaseGraph {
        BaseGraph::checked(&[vec![2; alpha], vec![2, 1]]).unwrap()
    }

    /// `(alpha, beta)` bi-regular tree.
    pub fn bi_regular(alpha: usize, beta: usize) -> BaseGraph {
        BaseGraph::checked(&[vec![2; alpha], vec![1; beta]]).unwrap()
    }

    /// The three embeddings of `D = [[0,1],[2,1]]`: type 2 has children
    /// (2,1,1), (1,2,1) and (1,1,2) respectively.
    pub fn embedding_a() -> BaseGraph {
        BaseGraph::checked(&[vec![2], vec![2, 1, 1]]).unwrap()
    }

    pub fn embedding_b() -> BaseGraph {
        BaseGraph::checked(&[vec![2], vec![1, 2, 1]]).unwrap()
    }

    pub fn embedding_c() -> BaseGraph {
        BaseGraph::checked(&[vec![2], vec![1, 1, 2]]).unwrap()
    }
}
