//! Graph surgeries that shrink a C4-free Halin graph while accounting for
//! every lost edge, plus the longest-path analyzer used to locate sites.
//!
//! Each operation validates its structural preconditions, performs the
//! surgery on the tree (the outer cycle follows, being derived), and
//! returns the relabelled result together with the edge bookkeeping. On a
//! C4-free input the result is again C4-free; the edge deltas are exact:
//! leaf removal −2, smoothing −3, contraction −1.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{BoundedFace, HalinGraph, PlaneTree, Vertex, VertexClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionRule {
    LeafRemoval,
    Smoothing,
    Contraction,
}

impl ReductionRule {
    pub const ALL: [ReductionRule; 3] = [
        ReductionRule::LeafRemoval,
        ReductionRule::Smoothing,
        ReductionRule::Contraction,
    ];

    /// Exact edge loss of a successful application.
    pub fn edge_delta(self) -> usize {
        match self {
            ReductionRule::LeafRemoval => 2,
            ReductionRule::Smoothing => 3,
            ReductionRule::Contraction => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ReductionRule::LeafRemoval => "leaf-removal",
            ReductionRule::Smoothing => "smoothing",
            ReductionRule::Contraction => "contraction",
        }
    }
}

impl fmt::Display for ReductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "leaf-removal" => Ok(ReductionRule::LeafRemoval),
            "smoothing" => Ok(ReductionRule::Smoothing),
            "contraction" => Ok(ReductionRule::Contraction),
            other => Err(format!(
                "unknown rule `{other}` (expected leaf-removal, smoothing or contraction)"
            )),
        }
    }
}

/// Where a rule applies, in the vertex ids of the input graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionSite {
    LeafRemoval { vertex: Vertex, leaf: Vertex },
    Smoothing { path: [Vertex; 3] },
    Contraction { edge: (Vertex, Vertex) },
}

impl ReductionSite {
    pub fn rule(&self) -> ReductionRule {
        match self {
            ReductionSite::LeafRemoval { .. } => ReductionRule::LeafRemoval,
            ReductionSite::Smoothing { .. } => ReductionRule::Smoothing,
            ReductionSite::Contraction { .. } => ReductionRule::Contraction,
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        match *self {
            ReductionSite::LeafRemoval { vertex, leaf } => vec![vertex, leaf],
            ReductionSite::Smoothing { path } => path.to_vec(),
            ReductionSite::Contraction { edge } => vec![edge.0, edge.1],
        }
    }
}

/// A successful application: the rule, where it fired, and the before/after
/// edge counts (differing by exactly the rule's delta).
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub rule: ReductionRule,
    pub site: ReductionSite,
    pub before_edges: usize,
    pub after_edges: usize,
    pub result: HalinGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PreconditionFailed {
    #[error("vertex {0} does not exist")]
    NoSuchVertex(Vertex),
    #[error("({0}, {1}) is not a tree edge")]
    NotATreeEdge(Vertex, Vertex),
    #[error("({0}, {1}, {2}) is not a path in the tree")]
    NotATreePath(Vertex, Vertex, Vertex),
    #[error("vertex {vertex} is {class}, the rule needs a semi-branching vertex")]
    NotSemiBranching { vertex: Vertex, class: VertexClass },
    #[error("vertex {vertex} has degree {degree}, the rule needs degree {needed}")]
    WrongDegree {
        vertex: Vertex,
        degree: usize,
        needed: &'static str,
    },
    #[error("{leaf} is not a leaf neighbour of {vertex}")]
    NotALeafNeighbour { vertex: Vertex, leaf: Vertex },
    #[error("path endpoint {0} is a leaf; the path must run through the two non-leaf neighbours")]
    PathEndpointIsLeaf(Vertex),
    #[error("edge endpoint {0} is a leaf")]
    LeafEndpoint(Vertex),
    #[error("an incident bounded face has size {size}, the rule needs at least {needed}")]
    FaceTooSmall { size: usize, needed: usize },
}

/// Drops the vertices in `remove` (already spliced out of every kept
/// rotation) and renumbers the rest densely, preserving order.
fn compact(rotations: &[Vec<Vertex>], remove: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut new_id = vec![usize::MAX; rotations.len()];
    let mut next = 0;
    for (v, id) in new_id.iter_mut().enumerate() {
        if !remove.contains(&v) {
            *id = next;
            next += 1;
        }
    }
    rotations
        .iter()
        .enumerate()
        .filter(|(v, _)| !remove.contains(v))
        .map(|(_, rot)| rot.iter().map(|&w| new_id[w]).collect())
        .collect()
}

fn check_vertex(g: &HalinGraph, v: Vertex) -> Result<(), PreconditionFailed> {
    if v >= g.n() {
        return Err(PreconditionFailed::NoSuchVertex(v));
    }
    Ok(())
}

fn finish(
    g: &HalinGraph,
    rule: ReductionRule,
    site: ReductionSite,
    rotations: Vec<Vec<Vertex>>,
    removed: &[Vertex],
) -> ReductionStep {
    let result = HalinGraph::from_tree(PlaneTree::from_rotations_unchecked(compact(
        &rotations, removed,
    )));
    debug_assert!(result.validate().is_valid());
    let step = ReductionStep {
        rule,
        site,
        before_edges: g.edge_count(),
        after_edges: result.edge_count(),
        result,
    };
    debug_assert_eq!(step.before_edges - step.after_edges, rule.edge_delta());
    step
}

/// Deletes leaf `u` from a semi-branching vertex `v` of degree >= 4.
/// Loses the pendant edge and one cycle edge: delta 2.
pub fn leaf_removal(
    g: &HalinGraph,
    v: Vertex,
    u: Vertex,
) -> Result<ReductionStep, PreconditionFailed> {
    check_vertex(g, v)?;
    check_vertex(g, u)?;
    let tree = g.tree();
    let class = g.classify_vertices()[v];
    if class != VertexClass::SemiBranching {
        return Err(PreconditionFailed::NotSemiBranching { vertex: v, class });
    }
    if tree.degree(v) < 4 {
        return Err(PreconditionFailed::WrongDegree {
            vertex: v,
            degree: tree.degree(v),
            needed: "at least 4",
        });
    }
    if !tree.is_leaf(u) || !tree.has_edge(v, u) {
        return Err(PreconditionFailed::NotALeafNeighbour { vertex: v, leaf: u });
    }
    let mut rotations = tree.rotations().to_vec();
    rotations[v].retain(|&x| x != u);
    let site = ReductionSite::LeafRemoval { vertex: v, leaf: u };
    Ok(finish(g, ReductionRule::LeafRemoval, site, rotations, &[u]))
}

/// The bounded face whose boundary uses both tree edges `uv` and `vw`:
/// the face on the far side of the path from `v`'s remaining neighbour.
fn face_of_path(g: &HalinGraph, u: Vertex, v: Vertex, w: Vertex) -> BoundedFace {
    let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
    g.bounded_faces()
        .into_iter()
        .find(|f| {
            let edges = f.tree_edges();
            edges.contains(&key(u, v)) && edges.contains(&key(v, w))
        })
        .expect("a tree path of length 2 lies on exactly one bounded face")
}

/// Smooths away a degree-3 semi-branching vertex `v`: the path `(u, v, w)`
/// through its two non-leaf neighbours becomes the edge `uw`, and `v`'s
/// pendant leaf goes with it, its cycle neighbours closing ranks. Requires
/// the face along the path to have size >= 6. Loses the pendant edge, one
/// cycle edge, and one path edge: delta 3.
pub fn smoothing(
    g: &HalinGraph,
    path: (Vertex, Vertex, Vertex),
) -> Result<ReductionStep, PreconditionFailed> {
    let (u, v, w) = path;
    for x in [u, v, w] {
        check_vertex(g, x)?;
    }
    let tree = g.tree();
    if u == w || !tree.has_edge(u, v) || !tree.has_edge(v, w) {
        return Err(PreconditionFailed::NotATreePath(u, v, w));
    }
    let class = g.classify_vertices()[v];
    if class != VertexClass::SemiBranching {
        return Err(PreconditionFailed::NotSemiBranching { vertex: v, class });
    }
    if tree.degree(v) != 3 {
        return Err(PreconditionFailed::WrongDegree {
            vertex: v,
            degree: tree.degree(v),
            needed: "exactly 3",
        });
    }
    for x in [u, w] {
        if tree.is_leaf(x) {
            return Err(PreconditionFailed::PathEndpointIsLeaf(x));
        }
    }
    let face = face_of_path(g, u, v, w);
    if face.size() < 6 {
        return Err(PreconditionFailed::FaceTooSmall {
            size: face.size(),
            needed: 6,
        });
    }
    // Degree 3 with two non-leaf neighbours forces the third to be a leaf.
    let pendant = *tree
        .rotation(v)
        .iter()
        .find(|&&x| x != u && x != w)
        .expect("degree-3 vertex has a third neighbour");
    debug_assert!(tree.is_leaf(pendant));
    let mut rotations = tree.rotations().to_vec();
    for (end, other) in [(u, w), (w, u)] {
        let slot = rotations[end].iter().position(|&x| x == v).unwrap();
        rotations[end][slot] = other;
    }
    let site = ReductionSite::Smoothing { path: [u, v, w] };
    Ok(finish(
        g,
        ReductionRule::Smoothing,
        site,
        rotations,
        &[v, pendant],
    ))
}

/// Contracts a tree edge between two non-leaves whose two incident bounded
/// faces both have size >= 6; the merged vertex keeps both rotations
/// spliced at the edge. Loses just the contracted edge: delta 1.
pub fn contraction(
    g: &HalinGraph,
    edge: (Vertex, Vertex),
) -> Result<ReductionStep, PreconditionFailed> {
    let (a, b) = edge;
    check_vertex(g, a)?;
    check_vertex(g, b)?;
    let tree = g.tree();
    if !tree.has_edge(a, b) {
        return Err(PreconditionFailed::NotATreeEdge(a, b));
    }
    for x in [a, b] {
        if tree.is_leaf(x) {
            return Err(PreconditionFailed::LeafEndpoint(x));
        }
    }
    let (f1, f2) = g.faces_of_tree_edge(a, b).expect("checked tree edge");
    for f in [&f1, &f2] {
        if f.size() < 6 {
            return Err(PreconditionFailed::FaceTooSmall {
                size: f.size(),
                needed: 6,
            });
        }
    }
    let mut rotations = tree.rotations().to_vec();
    // b's neighbours after a in cyclic order, to splice into a's slot.
    let rot_b = &rotations[b];
    let ib = rot_b.iter().position(|&x| x == a).unwrap();
    let spliced: Vec<Vertex> = (1..rot_b.len())
        .map(|j| rot_b[(ib + j) % rot_b.len()])
        .collect();
    let ia = rotations[a].iter().position(|&x| x == b).unwrap();
    rotations[a].splice(ia..=ia, spliced.iter().copied());
    for &x in &spliced {
        let slot = rotations[x].iter().position(|&y| y == b).unwrap();
        rotations[x][slot] = a;
    }
    let site = ReductionSite::Contraction { edge: (a, b) };
    Ok(finish(g, ReductionRule::Contraction, site, rotations, &[b]))
}

/// Applies the rule named by `site` at its location.
pub fn apply_at(g: &HalinGraph, site: &ReductionSite) -> Result<ReductionStep, PreconditionFailed> {
    match *site {
        ReductionSite::LeafRemoval { vertex, leaf } => leaf_removal(g, vertex, leaf),
        ReductionSite::Smoothing { path } => smoothing(g, (path[0], path[1], path[2])),
        ReductionSite::Contraction { edge } => contraction(g, edge),
    }
}

/// First site where `rule` applies, scanning candidates in ascending
/// vertex/edge order. Deterministic.
pub fn find_reduction_of(g: &HalinGraph, rule: ReductionRule) -> Option<ReductionSite> {
    let tree = g.tree();
    let classes = g.classify_vertices();
    let candidates: Vec<ReductionSite> = match rule {
        ReductionRule::LeafRemoval => tree
            .vertices()
            .filter(|&v| classes[v] == VertexClass::SemiBranching && tree.degree(v) >= 4)
            .filter_map(|v| {
                let u = tree
                    .rotation(v)
                    .iter()
                    .copied()
                    .filter(|&u| tree.is_leaf(u))
                    .min()?;
                Some(ReductionSite::LeafRemoval { vertex: v, leaf: u })
            })
            .collect(),
        ReductionRule::Contraction => tree
            .edges()
            .into_iter()
            .filter(|&(a, b)| !tree.is_leaf(a) && !tree.is_leaf(b))
            .map(|edge| ReductionSite::Contraction { edge })
            .collect(),
        ReductionRule::Smoothing => tree
            .vertices()
            .filter(|&v| classes[v] == VertexClass::SemiBranching && tree.degree(v) == 3)
            .map(|v| {
                let mut ends = tree
                    .rotation(v)
                    .iter()
                    .copied()
                    .filter(|&x| !tree.is_leaf(x));
                let (u, w) = (ends.next().unwrap(), ends.next().unwrap());
                ReductionSite::Smoothing {
                    path: [u.min(w), v, u.max(w)],
                }
            })
            .collect(),
    };
    candidates
        .into_iter()
        .find(|site| apply_at(g, site).is_ok())
}

/// First applicable site over all rules in a fixed order: leaf removal,
/// then contraction, then smoothing.
pub fn find_reduction(g: &HalinGraph) -> Option<(ReductionRule, ReductionSite)> {
    [
        ReductionRule::LeafRemoval,
        ReductionRule::Contraction,
        ReductionRule::Smoothing,
    ]
    .into_iter()
    .find_map(|rule| find_reduction_of(g, rule).map(|site| (rule, site)))
}

/// A longest path in the characteristic tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPathReport {
    /// The lexicographically least longest path (comparing the sequence
    /// against its reverse as well).
    pub path: Vec<Vertex>,
    /// Length in edges.
    pub k: usize,
    /// The second and second-to-last vertices of the path.
    pub semi_pendants: (Vertex, Vertex),
}

/// Longest path in the tree; both endpoints are leaves. Ties broken by the
/// lexicographically least vertex sequence over both directions.
pub fn longest_path(g: &HalinGraph) -> LongestPathReport {
    let tree = g.tree();
    let leaves: Vec<Vertex> = tree.leaves().collect();
    let mut best: Option<Vec<Vertex>> = None;
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            let path = tree.path_between(a.min(b), a.max(b));
            let better = match &best {
                None => true,
                Some(cur) => path.len() > cur.len() || (path.len() == cur.len() && path < *cur),
            };
            if better {
                best = Some(path);
            }
        }
    }
    let path = best.expect("plane trees have at least three leaves");
    let k = path.len() - 1;
    let semi_pendants = (path[1], path[k - 1]);
    LongestPathReport {
        path,
        k,
        semi_pendants,
    }
}
