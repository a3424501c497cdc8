//! Cycle queries on Halin graphs.
//!
//! All searches are deterministic: candidate vertices are tried in
//! ascending order, so a returned witness is the lexicographically least
//! one of its kind and repeated runs agree byte for byte.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{HalinGraph, Vertex};

/// A cycle found in the graph, listed in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub length: usize,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotInGraph(Vertex, Vertex),
}

/// Searches for a cycle of length exactly `k` (`k >= 3`).
///
/// Returns the witness whose vertex sequence is lexicographically least
/// among all `k`-cycles written starting at their smallest vertex, or
/// `None` when the graph has no `k`-cycle.
pub fn contains_cycle(g: &HalinGraph, k: usize) -> Option<Vec<Vertex>> {
    assert!(k >= 3, "cycles have at least 3 vertices");
    if k > g.n() {
        return None;
    }
    let adj = g.adjacency();
    for s in 0..g.n() {
        let dist = bfs_distances(adj, s);
        let mut search = CycleSearch {
            adj,
            dist: &dist,
            k,
            s,
            used: vec![false; g.n()],
            path: Vec::with_capacity(k),
        };
        search.used[s] = true;
        search.path.push(s);
        if search.extend() {
            return Some(search.path);
        }
    }
    None
}

struct CycleSearch<'a> {
    adj: &'a [Vec<Vertex>],
    dist: &'a [u32],
    k: usize,
    s: Vertex,
    used: Vec<bool>,
    path: Vec<Vertex>,
}

impl CycleSearch<'_> {
    /// Depth-first extension by ascending neighbour, restricted to vertices
    /// above the anchor `s` so each cycle is found once, rooted at its
    /// minimum.
    fn extend(&mut self) -> bool {
        let v = *self.path.last().unwrap();
        if self.path.len() == self.k {
            return self.adj[v].binary_search(&self.s).is_ok();
        }
        let remaining = self.k - self.path.len();
        for i in 0..self.adj[v].len() {
            let w = self.adj[v][i];
            if w <= self.s || self.used[w] {
                continue;
            }
            // Must still reach s in `remaining` more edges after stepping.
            if self.dist[w] as usize > remaining {
                continue;
            }
            self.used[w] = true;
            self.path.push(w);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.used[w] = false;
        }
        false
    }
}

fn bfs_distances(adj: &[Vec<Vertex>], from: Vertex) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Shortest cycle using the edge `(a, b)`: the edge itself plus a shortest
/// `b`-to-`a` path avoiding it. Such a path always exists in a Halin graph.
/// The witness starts `a, b, ...` and is the lexicographically least
/// shortest one.
pub fn shortest_cycle_through_edge(
    g: &HalinGraph,
    edge: (Vertex, Vertex),
) -> Result<CycleWitness, CycleError> {
    let (a, b) = edge;
    if a >= g.n() || b >= g.n() || !g.has_edge(a, b) {
        return Err(CycleError::EdgeNotInGraph(a, b));
    }
    // BFS from `a` in the graph minus the edge (a, b).
    let adj = g.adjacency();
    let skip = |x: Vertex, y: Vertex| (x == a && y == b) || (x == b && y == a);
    let mut dist = vec![u32::MAX; g.n()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == u32::MAX && !skip(x, y) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    debug_assert_ne!(dist[b], u32::MAX, "Halin graphs are 2-edge-connected");
    // Greedy descent by smallest neighbour yields the lexicographically
    // least shortest path.
    let mut vertices = vec![a, b];
    let mut cur = b;
    while dist[cur] > 1 {
        let next = adj[cur]
            .iter()
            .copied()
            .find(|&w| !skip(cur, w) && dist[w] == dist[cur] - 1)
            .expect("BFS predecessor exists");
        vertices.push(next);
        cur = next;
    }
    Ok(CycleWitness {
        length: vertices.len(),
        vertices,
    })
}

/// Length of a shortest cycle, with a witness. Halin graphs always contain
/// a triangle, so this returns 3 with the first triangle found in edge
/// order; the implementation still scans so the witness stays tied to the
/// actual graph.
pub fn girth(g: &HalinGraph) -> CycleWitness {
    let mut best: Option<CycleWitness> = None;
    for (u, v) in g.edges() {
        let w = shortest_cycle_through_edge(g, (u, v)).expect("edges() yields real edges");
        let better = match &best {
            None => true,
            Some(b) => w.length < b.length,
        };
        if better {
            let at_floor = w.length == 3;
            best = Some(w);
            if at_floor {
                break;
            }
        }
    }
    best.expect("graphs have at least one edge")
}
