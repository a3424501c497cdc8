//! Independent oracles for the acceptance gate, sharing no graph machinery
//! with the library: plane trees are regrown from scratch out of labeled
//! trees, and 4-cycles are found by testing vertex subsets.

use std::collections::BTreeSet;

use halin::HalinGraph;

/// Number of distinct plane trees (up to rotation and reflection) with no
/// degree-2 vertex on `n` vertices, grown the slow way: decode every
/// Prüfer sequence, embed each labeled tree in all possible ways, and
/// quotient by symmetry with a string code computed from first principles.
pub fn plane_tree_count(n: usize) -> usize {
    assert!(
        (4..=8).contains(&n),
        "labeled brute force is sized for n <= 8"
    );
    let mut seen = BTreeSet::new();
    each_prufer_sequence(n, |seq| {
        let adj = tree_from_prufer(seq, n);
        if adj.iter().any(|nbrs| nbrs.len() == 2) {
            return;
        }
        for rotations in embeddings(&adj) {
            seen.insert(symmetry_min_code(&rotations));
        }
    });
    seen.len()
}

fn each_prufer_sequence(n: usize, mut f: impl FnMut(&[usize])) {
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        f(&seq);
        let mut i = 0;
        while i < len {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == len {
            return;
        }
    }
}

/// Standard decoding, joining the smallest current leaf to each sequence
/// entry in turn.
fn tree_from_prufer(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut deg = vec![1usize; n];
    for &x in seq {
        deg[x] += 1;
    }
    let mut adj = vec![Vec::new(); n];
    for &x in seq {
        let leaf = (0..n).find(|&v| deg[v] == 1).expect("a leaf remains");
        adj[leaf].push(x);
        adj[x].push(leaf);
        deg[leaf] = 0;
        deg[x] -= 1;
    }
    let mut ends = (0..n).filter(|&v| deg[v] == 1);
    let (a, b) = (ends.next().unwrap(), ends.next().unwrap());
    adj[a].push(b);
    adj[b].push(a);
    adj
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Every embedding of a labeled tree: each vertex independently picks a
/// cyclic neighbour order, represented with its smallest neighbour first.
fn embeddings(adj: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let options: Vec<Vec<Vec<usize>>> = adj
        .iter()
        .map(|nbrs| {
            let mut sorted = nbrs.clone();
            sorted.sort_unstable();
            if sorted.len() <= 2 {
                return vec![sorted];
            }
            permutations(&sorted[1..])
                .into_iter()
                .map(|tail| {
                    let mut rot = vec![sorted[0]];
                    rot.extend(tail);
                    rot
                })
                .collect()
        })
        .collect();
    let mut combined: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(combined.len() * opts.len());
        for partial in &combined {
            for opt in &opts {
                let mut grown = partial.clone();
                grown.push(opt.clone());
                next.push(grown);
            }
        }
        combined = next;
    }
    combined
}

/// The lexicographically least parenthesis string over every non-leaf
/// root, starting neighbour, and traversal direction: equal exactly when
/// two embeddings are the same plane tree up to rotation and reflection.
fn symmetry_min_code(rotations: &[Vec<usize>]) -> String {
    let mut best: Option<String> = None;
    for root in 0..rotations.len() {
        let d = rotations[root].len();
        if d == 1 {
            continue;
        }
        for flip in [false, true] {
            for start in 0..d {
                let mut code = String::from("(");
                for t in 0..d {
                    let idx = if flip {
                        (start + d - t) % d
                    } else {
                        (start + t) % d
                    };
                    write_subtree(rotations, rotations[root][idx], root, flip, &mut code);
                }
                code.push(')');
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.expect("a tree on >= 4 vertices has a non-leaf")
}

fn write_subtree(rotations: &[Vec<usize>], v: usize, parent: usize, flip: bool, out: &mut String) {
    out.push('(');
    let rot = &rotations[v];
    let d = rot.len();
    let i = rot
        .iter()
        .position(|&x| x == parent)
        .expect("parent adjacent");
    for t in 1..d {
        let idx = if flip { (i + d - t) % d } else { (i + t) % d };
        write_subtree(rotations, rot[idx], v, flip, out);
    }
    out.push(')');
}

/// 4-cycle test by brute force: each 4-vertex subset admits three pairings
/// into a cyclic order.
pub fn has_c4_by_subsets(g: &HalinGraph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    for (p, q, r, s) in [(a, b, c, d), (a, c, b, d), (a, b, d, c)] {
                        if g.has_edge(p, q)
                            && g.has_edge(q, r)
                            && g.has_edge(r, s)
                            && g.has_edge(s, p)
                        {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}
