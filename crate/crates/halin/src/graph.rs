//! Plane trees, Halin graphs, vertex classification and bounded faces.
//!
//! Conventions used throughout the crate:
//!
//! * Vertices are `0..n` indices. A [`PlaneTree`] stores, for every vertex,
//!   its neighbours in counter-clockwise rotation order; the adjacency lists
//!   *are* the embedding.
//! * Face traversal follows the rule: after walking edge `(u, v)`, the next
//!   edge is `(v, w)` where `w` is the cyclic successor of `u` in the
//!   rotation of `v`. A tree has a single face, and the leaves appear on it
//!   in cycle order.
//! * The leaf cycle of a Halin graph is always derived by that traversal and
//!   normalised to start at the smallest leaf index.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Vertex index into the adjacency lists of a [`PlaneTree`].
pub type Vertex = usize;

/// Ways an adjacency structure can fail to be the tree of a Halin graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidTree {
    #[error("vertex count {0} is below the minimum of 4")]
    TooSmall(usize),
    #[error("vertex {0} lists itself as a neighbour")]
    SelfLoop(Vertex),
    #[error("vertex {0} lists neighbour {1} more than once")]
    DuplicateNeighbour(Vertex, Vertex),
    #[error("vertex {0} lists out-of-range neighbour {1}")]
    NeighbourOutOfRange(Vertex, Vertex),
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    Asymmetric(Vertex, Vertex),
    #[error("{edges} edges where a tree on {vertices} vertices needs {}", .vertices - 1)]
    WrongEdgeCount { edges: usize, vertices: usize },
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(Vertex),
    #[error("vertex {0} has degree 2")]
    DegreeTwo(Vertex),
}

/// A tree embedded in the plane, given by counter-clockwise rotations.
///
/// Invariants enforced by [`PlaneTree::new`]: at least 4 vertices, symmetric
/// simple adjacency, connected, exactly `n - 1` edges, no degree-2 vertex.
/// Such a tree always has at least three leaves, so it extends to a Halin
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneTree {
    rotations: Vec<Vec<Vertex>>,
}

impl PlaneTree {
    /// Validates `rotations` and wraps it. Returns the first violation found.
    pub fn new(rotations: Vec<Vec<Vertex>>) -> Result<Self, InvalidTree> {
        match tree_violations(&rotations).into_iter().next() {
            Some(v) => Err(v),
            None => Ok(PlaneTree { rotations }),
        }
    }

    /// Wraps rotations that are already known to satisfy the invariants.
    /// Checked in debug builds; intended for internal construction paths
    /// that transform one valid tree into another.
    pub(crate) fn from_rotations_unchecked(rotations: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(tree_violations(&rotations).is_empty());
        PlaneTree { rotations }
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    /// Counter-clockwise neighbour order of `v`.
    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotations
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations[v].len()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.degree(v) == 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.rotations.len()
    }

    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices().filter(|&v| self.is_leaf(v))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.rotations[u].contains(&v)
    }

    /// Tree edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.n() - 1);
        for u in self.vertices() {
            for &v in &self.rotations[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Leaves in the order they appear around the unique face of the tree,
    /// starting from the smallest leaf index.
    pub fn leaf_cycle(&self) -> Vec<Vertex> {
        let start = self.leaves().next().expect("a valid plane tree has leaves");
        let mut order = vec![start];
        let mut u = start;
        let mut v = self.rotations[start][0];
        // The face walk visits every directed edge exactly once before
        // returning to the start leaf.
        while v != start {
            let rot = &self.rotations[v];
            let i = rot.iter().position(|&x| x == u).expect("symmetric edge");
            let w = rot[(i + 1) % rot.len()];
            u = v;
            v = w;
            if v != start && self.rotations[v].len() == 1 {
                order.push(v);
            }
        }
        order
    }

    /// Unique path between two vertices, endpoints included.
    pub fn path_between(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let mut parent = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::from([from]);
        parent[from] = from;
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in &self.rotations[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

/// Collects every violation detectable in `rotations`, in a fixed order:
/// size, local list problems, symmetry, then (only when those hold) edge
/// count, connectivity and the degree-2 ban.
fn tree_violations(rotations: &[Vec<Vertex>]) -> Vec<InvalidTree> {
    let n = rotations.len();
    let mut out = Vec::new();
    if n < 4 {
        out.push(InvalidTree::TooSmall(n));
    }
    let mut local_ok = true;
    for (u, rot) in rotations.iter().enumerate() {
        for (i, &v) in rot.iter().enumerate() {
            if v >= n {
                out.push(InvalidTree::NeighbourOutOfRange(u, v));
                local_ok = false;
            } else if v == u {
                out.push(InvalidTree::SelfLoop(u));
                local_ok = false;
            } else if rot[..i].contains(&v) {
                out.push(InvalidTree::DuplicateNeighbour(u, v));
                local_ok = false;
            }
        }
    }
    if local_ok {
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if !rotations[v].contains(&u) {
                    out.push(InvalidTree::Asymmetric(u, v));
                    local_ok = false;
                }
            }
        }
    }
    if !local_ok || n == 0 {
        return out;
    }
    let edges: usize = rotations.iter().map(Vec::len).sum::<usize>() / 2;
    if edges != n - 1 {
        out.push(InvalidTree::WrongEdgeCount { edges, vertices: n });
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &rotations[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        out.push(InvalidTree::Disconnected(v));
    }
    for (v, rot) in rotations.iter().enumerate() {
        if rot.len() == 2 {
            out.push(InvalidTree::DegreeTwo(v));
        }
    }
    out
}

/// Structural role of a vertex inside the tree of a Halin graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexClass {
    /// Tree degree 1; lies on the outer cycle.
    Leaf,
    /// Non-leaf whose tree neighbours are all non-leaves.
    Interior,
    /// Non-leaf with at most one non-leaf tree neighbour.
    Branching,
    /// Non-leaf with at least one leaf neighbour and at least two non-leaf
    /// neighbours.
    SemiBranching,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VertexClass::Leaf => "leaf",
            VertexClass::Interior => "interior",
            VertexClass::Branching => "branching",
            VertexClass::SemiBranching => "semi-branching",
        };
        f.write_str(s)
    }
}

/// A bounded face of a Halin graph: one outer-cycle edge plus the tree path
/// joining its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFace {
    /// The unique outer-cycle edge on this face, oriented along the cycle.
    pub cycle_edge: (Vertex, Vertex),
    /// Face boundary in order: the two cycle endpoints, then the interior
    /// of the tree path from the second endpoint back to the first.
    pub boundary: Vec<Vertex>,
}

impl BoundedFace {
    /// Number of edges (equivalently vertices) on the face boundary.
    pub fn size(&self) -> usize {
        self.boundary.len()
    }

    /// Tree edges on this face, as unordered `(min, max)` pairs.
    pub fn tree_edges(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.boundary.len();
        (1..k)
            .map(|i| {
                let a = self.boundary[i];
                let b = self.boundary[(i + 1) % k];
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

/// A Halin graph: a plane tree together with the cycle through its leaves.
///
/// The leaf cycle and the combined adjacency are derived from the tree on
/// construction and kept only as conveniences; the tree is the single source
/// of truth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalinGraph {
    tree: PlaneTree,
    leaf_cycle: Vec<Vertex>,
    adjacency: Vec<Vec<Vertex>>,
}

impl HalinGraph {
    /// Builds the Halin graph over a validated plane tree.
    pub fn from_tree(tree: PlaneTree) -> Self {
        let leaf_cycle = tree.leaf_cycle();
        let mut adjacency: Vec<Vec<Vertex>> = tree.rotations().to_vec();
        let m = leaf_cycle.len();
        for i in 0..m {
            let a = leaf_cycle[i];
            let b = leaf_cycle[(i + 1) % m];
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        HalinGraph {
            tree,
            leaf_cycle,
            adjacency,
        }
    }

    /// Validates raw rotations and builds the Halin graph over them.
    pub fn from_rotations(rotations: Vec<Vec<Vertex>>) -> Result<Self, InvalidTree> {
        Ok(Self::from_tree(PlaneTree::new(rotations)?))
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    /// Leaves in cycle order, starting at the smallest leaf index.
    pub fn leaf_cycle(&self) -> &[Vertex] {
        &self.leaf_cycle
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_cycle.len()
    }

    /// Edge count of the Halin graph: `(n - 1)` tree edges plus one cycle
    /// edge per leaf.
    pub fn edge_count(&self) -> usize {
        self.n() - 1 + self.leaf_count()
    }

    /// Combined adjacency (tree plus cycle), each list sorted ascending.
    pub fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adjacency
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for &v in &self.adjacency[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_tree_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.tree.has_edge(u, v)
    }

    pub fn is_cycle_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.has_edge(u, v) && !self.is_tree_edge(u, v)
    }

    /// Classifies every vertex by its tree neighbourhood.
    pub fn classify_vertices(&self) -> Vec<VertexClass> {
        let tree = &self.tree;
        (0..self.n())
            .map(|v| {
                if tree.is_leaf(v) {
                    return VertexClass::Leaf;
                }
                let non_leaf = tree
                    .rotation(v)
                    .iter()
                    .filter(|&&w| !tree.is_leaf(w))
                    .count();
                let leaf = tree.degree(v) - non_leaf;
                if leaf == 0 {
                    VertexClass::Interior
                } else if non_leaf <= 1 {
                    VertexClass::Branching
                } else {
                    VertexClass::SemiBranching
                }
            })
            .collect()
    }

    /// The bounded faces, one per outer-cycle edge, in cycle order.
    ///
    /// Every tree edge lies on exactly two bounded faces, so face sizes obey
    /// `sum(size - 1) = 2 (n - 1)`.
    pub fn bounded_faces(&self) -> Vec<BoundedFace> {
        let m = self.leaf_cycle.len();
        (0..m)
            .map(|i| {
                let a = self.leaf_cycle[i];
                let b = self.leaf_cycle[(i + 1) % m];
                let path = self.tree.path_between(b, a);
                let mut boundary = vec![a, b];
                boundary.extend_from_slice(&path[1..path.len() - 1]);
                BoundedFace {
                    cycle_edge: (a, b),
                    boundary,
                }
            })
            .collect()
    }

    /// The two bounded faces whose boundary uses tree edge `(u, v)`.
    /// Returns `None` when `(u, v)` is not a tree edge.
    pub fn faces_of_tree_edge(&self, u: Vertex, v: Vertex) -> Option<(BoundedFace, BoundedFace)> {
        if !self.is_tree_edge(u, v) {
            return None;
        }
        let key = (u.min(v), u.max(v));
        let mut found: Vec<BoundedFace> = self
            .bounded_faces()
            .into_iter()
            .filter(|f| f.tree_edges().contains(&key))
            .collect();
        debug_assert_eq!(found.len(), 2, "tree edge lies on exactly two faces");
        let second = found.pop()?;
        let first = found.pop()?;
        Some((first, second))
    }

    /// Self-check; clean by construction, useful as a debug assertion after
    /// transformations.
    pub fn validate(&self) -> ValidationReport {
        validate_parts(self.tree.rotations(), &self.leaf_cycle)
    }
}

/// One problem found while validating a purported Halin graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("tree: {0}")]
    Tree(#[from] InvalidTree),
    #[error("claimed cycle has {claimed} vertices but the tree has {leaves} leaves")]
    CycleLengthMismatch { claimed: usize, leaves: usize },
    #[error("claimed cycle visits {0} more than once")]
    CycleRepeatsVertex(Vertex),
    #[error("claimed cycle contains {0}, which is not a leaf of the tree")]
    CycleVertexNotLeaf(Vertex),
    #[error("leaf {0} is missing from the claimed cycle")]
    CycleMissingLeaf(Vertex),
    #[error("claimed cycle order {claimed:?} does not match the embedding order {expected:?}")]
    CycleOrderMismatch {
        claimed: Vec<Vertex>,
        expected: Vec<Vertex>,
    },
}

/// Exhaustive validation result: every detected violation, not just the
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid Halin graph");
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

/// Checks a purported Halin graph given as raw rotations plus a claimed
/// leaf cycle, reporting every violation found.
///
/// Cycle checks run only when the tree itself is sound, since the reference
/// cycle is derived from the embedding. Two cycles are considered the same
/// when they agree up to rotation and reflection.
pub fn validate_parts(rotations: &[Vec<Vertex>], claimed_cycle: &[Vertex]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let tree_problems = tree_violations(rotations);
    let tree_ok = tree_problems.is_empty();
    report
        .violations
        .extend(tree_problems.into_iter().map(Violation::Tree));
    if !tree_ok {
        return report;
    }
    let tree = PlaneTree::from_rotations_unchecked(rotations.to_vec());
    let leaves: Vec<Vertex> = tree.leaves().collect();
    if claimed_cycle.len() != leaves.len() {
        report.violations.push(Violation::CycleLengthMismatch {
            claimed: claimed_cycle.len(),
            leaves: leaves.len(),
        });
    }
    let mut seen = vec![false; tree.n()];
    for &v in claimed_cycle {
        if v >= tree.n() || !tree.is_leaf(v) {
            report.violations.push(Violation::CycleVertexNotLeaf(v));
        } else if seen[v] {
            report.violations.push(Violation::CycleRepeatsVertex(v));
        } else {
            seen[v] = true;
        }
    }
    for &l in &leaves {
        if !seen[l] {
            report.violations.push(Violation::CycleMissingLeaf(l));
        }
    }
    if !report.is_valid() {
        return report;
    }
    let expected = tree.leaf_cycle();
    if !same_cycle(claimed_cycle, &expected) {
        report.violations.push(Violation::CycleOrderMismatch {
            claimed: claimed_cycle.to_vec(),
            expected,
        });
    }
    report
}

/// True when `a` and `b` describe the same cyclic sequence up to rotation
/// and reflection.
fn same_cycle(a: &[Vertex], b: &[Vertex]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let m = a.len();
    (0..m).any(|shift| {
        (0..m).all(|i| a[(shift + i) % m] == b[i]) || (0..m).all(|i| a[(shift + m - i) % m] == b[i])
    })
}
