//! Exhaustive generation of all Halin graphs on `n` vertices, one per
//! plane-tree symmetry class, and the exact extremal searches built on it.
//!
//! Generation works over preorder child-count sequences of rooted plane
//! trees (root takes at least 3 children, other internal vertices at least
//! 2, so no vertex has degree 2). Each completed rooted tree is kept only
//! when its own code is the canonical code of its underlying unrooted tree,
//! which quotients away root choice, rotation and reflection without
//! storing anything. Work splits into independent subtasks at the first two
//! child-count choices; results are merged in subtask order, so output
//! order is deterministic under any thread schedule.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::is_canonical_form;
use crate::codec;
use crate::cycles::contains_cycle;
use crate::graph::{HalinGraph, PlaneTree, Vertex};
use crate::reductions::longest_path;

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_LIMIT: usize = 18;
/// Hard ceiling for overrides; beyond this the search is out of scope.
pub const MAX_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("n = {n} is above the enumeration limit {limit}")]
    LimitExceeded { n: usize, limit: usize },
    #[error("Halin graphs need at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("forbidden cycle length must be at least 3, got {0}")]
    CycleTooShort(usize),
    #[error("no audited claims for n = {0}; the audited sizes are 16, 17 and 18")]
    NotABaseCase(usize),
}

fn check_n(n: usize, limit: usize) -> Result<(), EnumerationError> {
    if n < 4 {
        Err(EnumerationError::TooSmall(n))
    } else if n > limit {
        Err(EnumerationError::LimitExceeded { n, limit })
    } else {
        Ok(())
    }
}

/// Extends a partial child-count sequence to every completion of a valid
/// rooted tree on `n` vertices, calling `emit` for each. `open` counts the
/// child slots promised but not yet filled.
fn extend(counts: &mut Vec<usize>, open: usize, n: usize, emit: &mut impl FnMut(&[usize])) {
    let used = counts.len();
    if used == n {
        if open == 0 {
            emit(counts);
        }
        return;
    }
    if open == 0 {
        return;
    }
    // The next vertex fills one slot; it may be a leaf only if that leaves
    // either nothing or at least one slot for the remaining vertices.
    let rest = n - used - 1;
    let after_leaf = open - 1;
    if (after_leaf == 0) == (rest == 0) {
        counts.push(0);
        extend(counts, after_leaf, n, emit);
        counts.pop();
    }
    // Internal vertices take at least 2 children; every open slot still
    // needs a vertex of its own, which caps the count.
    let max_c = (n - used).saturating_sub(open);
    for c in 2..=max_c {
        counts.push(c);
        extend(counts, open - 1 + c, n, emit);
        counts.pop();
    }
}

/// The first two child counts (root degree, first child) of every valid
/// sequence: the grains of parallel work.
fn partitions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for c0 in 3..n {
        let rest = n - 2;
        let after_leaf = c0 - 1;
        if (after_leaf == 0) == (rest == 0) {
            out.push((c0, 0));
        }
        let max_c = (n - 1).saturating_sub(c0);
        for c1 in 2..=max_c {
            out.push((c0, c1));
        }
    }
    out
}

/// Balanced-parenthesis code of a child-count sequence, reused buffer.
fn parens_into(counts: &[usize], out: &mut Vec<u8>) {
    out.clear();
    let mut stack: Vec<usize> = Vec::with_capacity(counts.len());
    for &c in counts {
        out.push(b'(');
        stack.push(c);
        while let Some(top) = stack.last_mut() {
            if *top > 0 {
                break;
            }
            stack.pop();
            out.push(b')');
            if let Some(parent) = stack.last_mut() {
                *parent -= 1;
            }
        }
    }
    debug_assert!(stack.is_empty());
}

/// Rotation system of a child-count sequence: vertices in preorder, each
/// non-root rotation starting with the parent.
fn rotations_into(counts: &[usize], rot: &mut Vec<Vec<Vertex>>) {
    rot.resize_with(counts.len(), Vec::new);
    for list in rot.iter_mut() {
        list.clear();
    }
    let mut stack: Vec<(Vertex, usize)> = vec![(0, counts[0])];
    for v in 1..counts.len() {
        while stack.last().expect("slots remain").1 == 0 {
            stack.pop();
        }
        let top = stack.last_mut().expect("slots remain");
        let parent = top.0;
        top.1 -= 1;
        rot[parent].push(v);
        rot[v].push(parent);
        stack.push((v, counts[v]));
    }
}

/// Runs `visit` once per canonical plane tree on `n` vertices, handing it
/// the rotations and the canonical code, and returns the collected values
/// in a deterministic order. Callers must have checked `n` already.
fn drive<T: Send>(n: usize, visit: impl Fn(&[Vec<Vertex>], &[u8]) -> T + Sync) -> Vec<T> {
    let chunks: Vec<Vec<T>> = partitions(n)
        .into_par_iter()
        .map(|(c0, c1)| {
            let mut found = Vec::new();
            let mut counts = Vec::with_capacity(n);
            counts.push(c0);
            counts.push(c1);
            let mut parens = Vec::with_capacity(2 * n);
            let mut rotations: Vec<Vec<Vertex>> = Vec::with_capacity(n);
            extend(&mut counts, c0 - 1 + c1, n, &mut |counts| {
                parens_into(counts, &mut parens);
                rotations_into(counts, &mut rotations);
                if is_canonical_form(&rotations, &parens) {
                    found.push(visit(&rotations, &parens));
                }
            });
            found
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

fn build(rotations: &[Vec<Vertex>]) -> HalinGraph {
    HalinGraph::from_tree(PlaneTree::from_rotations_unchecked(rotations.to_vec()))
}

fn code_line(parens: &[u8]) -> String {
    format!(
        "{} {}",
        codec::HEADER,
        std::str::from_utf8(parens).expect("parens are ascii")
    )
}

/// Every Halin graph on `n` vertices, exactly one per symmetry class of its
/// plane tree, in a deterministic order.
pub fn enumerate_halin(n: usize, limit: usize) -> Result<Vec<HalinGraph>, EnumerationError> {
    check_n(n, limit)?;
    Ok(drive(n, |rot, _| build(rot)))
}

/// The same enumeration as serialized `halin1` lines.
pub fn enumerate_codes(n: usize, limit: usize) -> Result<Vec<String>, EnumerationError> {
    check_n(n, limit)?;
    Ok(drive(n, |_, parens| code_line(parens)))
}

/// Number of Halin graphs on `n` vertices up to plane-tree symmetry.
pub fn count_halin(n: usize, limit: usize) -> Result<u64, EnumerationError> {
    check_n(n, limit)?;
    Ok(drive(n, |_, _| ()).len() as u64)
}

/// The exact answer to "how many edges can a C_k-free Halin graph on `n`
/// vertices have", with the graphs that attain it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub k: usize,
    /// `None` when every Halin graph on `n` vertices contains a C_k.
    pub max_edges: Option<usize>,
    pub num_extremal: u64,
    /// `halin1` lines of the extremal graphs, sorted.
    pub witnesses: Vec<String>,
    /// Total number of canonical Halin graphs on `n` vertices.
    pub enumerated_total: u64,
}

enum Outcome {
    /// Edge count already below the best known C_k-free value, so the
    /// cycle check was skipped; such a graph can never be extremal.
    Skipped,
    HasCycle,
    Free {
        edges: usize,
        line: String,
    },
}

/// Exhaustively computes `ex_H(n, C_k)` with witnesses.
pub fn extremal_number(
    n: usize,
    k: usize,
    limit: usize,
) -> Result<ExtremalRecord, EnumerationError> {
    check_n(n, limit)?;
    if k < 3 {
        return Err(EnumerationError::CycleTooShort(k));
    }
    // Monotone lower bound on the final maximum, shared across subtasks:
    // e = (n - 1) + leaf count is known before any cycle work, so graphs
    // that cannot reach the bound skip the C_k test entirely.
    let floor = AtomicUsize::new(0);
    let outcomes = drive(n, |rot, parens| {
        let leaves = rot.iter().filter(|r| r.len() == 1).count();
        let edges = n - 1 + leaves;
        if edges < floor.load(Ordering::Relaxed) {
            return Outcome::Skipped;
        }
        let g = build(rot);
        if contains_cycle(&g, k).is_some() {
            Outcome::HasCycle
        } else {
            floor.fetch_max(edges, Ordering::Relaxed);
            Outcome::Free {
                edges,
                line: code_line(parens),
            }
        }
    });
    let enumerated_total = outcomes.len() as u64;
    let max_edges = outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Free { edges, .. } => Some(*edges),
            _ => None,
        })
        .max();
    let mut witnesses: Vec<String> = outcomes
        .into_iter()
        .filter_map(|o| match o {
            Outcome::Free { edges, line } if Some(edges) == max_edges => Some(line),
            _ => None,
        })
        .collect();
    witnesses.sort();
    debug_assert!(max_edges.is_none_or(|e| e <= 2 * (n - 1)));
    Ok(ExtremalRecord {
        n,
        k,
        max_edges,
        num_extremal: witnesses.len() as u64,
        witnesses,
        enumerated_total,
    })
}

/// Aggregate over the C4-free graphs whose longest tree path has
/// `longest_path` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub longest_path: usize,
    pub count: u64,
    pub min_edges: usize,
    pub max_edges: usize,
}

/// One checked statement about the structure of the C4-free graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub holds: bool,
    pub observed: String,
}

/// Structure audit for one of the three smallest sizes covered by the
/// extremal theorem: the C4-free graphs grouped by longest-path length,
/// with every per-class claim checked against the enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub enumerated_total: u64,
    pub c4_free_total: u64,
    pub classes: Vec<ClassSummary>,
    pub claims: Vec<ClaimCheck>,
    pub all_hold: bool,
}

/// Checks the known per-class facts for `n` in 16..=18: which longest-path
/// lengths occur among C4-free graphs and what edge counts each class
/// allows.
pub fn base_case_audit(n: usize, limit: usize) -> Result<AuditReport, EnumerationError> {
    if !(16..=18).contains(&n) {
        return Err(EnumerationError::NotABaseCase(n));
    }
    check_n(n, limit)?;
    let items = drive(n, |rot, _| {
        let g = build(rot);
        if contains_cycle(&g, 4).is_some() {
            None
        } else {
            Some((longest_path(&g).k, g.edge_count()))
        }
    });
    let enumerated_total = items.len() as u64;
    let mut by_k: BTreeMap<usize, (u64, usize, usize)> = BTreeMap::new();
    for (k, e) in items.into_iter().flatten() {
        let entry = by_k.entry(k).or_insert((0, e, e));
        entry.0 += 1;
        entry.1 = entry.1.min(e);
        entry.2 = entry.2.max(e);
    }
    let classes: Vec<ClassSummary> = by_k
        .into_iter()
        .map(|(k, (count, lo, hi))| ClassSummary {
            longest_path: k,
            count,
            min_edges: lo,
            max_edges: hi,
        })
        .collect();
    let c4_free_total = classes.iter().map(|c| c.count).sum();
    let claims = audit_claims(n, &classes);
    let all_hold = claims.iter().all(|c| c.holds);
    Ok(AuditReport {
        n,
        enumerated_total,
        c4_free_total,
        classes,
        claims,
        all_hold,
    })
}

fn class_observed(classes: &[ClassSummary], k: usize) -> String {
    match classes.iter().find(|c| c.longest_path == k) {
        None => format!("no C4-free graphs with longest path {k}"),
        Some(c) => format!(
            "{} graph(s) with longest path {}, edges {}..{}",
            c.count, k, c.min_edges, c.max_edges
        ),
    }
}

fn audit_claims(n: usize, classes: &[ClassSummary]) -> Vec<ClaimCheck> {
    let class = |k: usize| classes.iter().find(|c| c.longest_path == k);
    let empty = |k: usize| class(k).is_none();
    let exactly =
        |k: usize, e: usize| class(k).is_none_or(|c| c.min_edges == e && c.max_edges == e);
    let at_most = |k: usize, e: usize| class(k).is_none_or(|c| c.max_edges <= e);
    let max_k = classes.last().map_or(0, |c| c.longest_path);
    let path_cap = |cap: usize| ClaimCheck {
        claim: match cap {
            6 => "every C4-free graph has longest path at most 6",
            _ => "every C4-free graph has longest path at most 7",
        },
        holds: max_k <= cap,
        observed: format!("largest longest-path length observed: {max_k}"),
    };
    match n {
        16 => vec![
            path_cap(6),
            ClaimCheck {
                claim: "no C4-free graph has longest path 5",
                holds: empty(5),
                observed: class_observed(classes, 5),
            },
            ClaimCheck {
                claim: "every C4-free graph with longest path 6 has exactly 24 edges",
                holds: exactly(6, 24),
                observed: class_observed(classes, 6),
            },
            ClaimCheck {
                claim: "every C4-free graph with longest path 4 has exactly 25 edges",
                holds: exactly(4, 25),
                observed: class_observed(classes, 4),
            },
        ],
        17 => vec![
            path_cap(6),
            ClaimCheck {
                claim: "no C4-free graph has longest path 4",
                holds: empty(4),
                observed: class_observed(classes, 4),
            },
            ClaimCheck {
                claim: "every C4-free graph with longest path 5 has exactly 26 edges",
                holds: exactly(5, 26),
                observed: class_observed(classes, 5),
            },
            ClaimCheck {
                claim: "every C4-free graph with longest path 6 has exactly 26 edges",
                holds: exactly(6, 26),
                observed: class_observed(classes, 6),
            },
        ],
        18 => vec![
            path_cap(7),
            ClaimCheck {
                claim: "no C4-free graph has longest path 4",
                holds: empty(4),
                observed: class_observed(classes, 4),
            },
            ClaimCheck {
                claim: "no C4-free graph has longest path 5",
                holds: empty(5),
                observed: class_observed(classes, 5),
            },
            ClaimCheck {
                claim: "every C4-free graph with longest path 7 has exactly 27 edges",
                holds: exactly(7, 27),
                observed: class_observed(classes, 7),
            },
            ClaimCheck {
                claim: "every C4-free graph with longest path 6 has at most 28 edges",
                holds: at_most(6, 28),
                observed: class_observed(classes, 6),
            },
        ],
        _ => unreachable!("audited sizes are checked on entry"),
    }
}

/// One size of the C6 bound probe: the exact extremal value next to the
/// conjectured bound `8(n-1)/5`, compared in exact integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub enumerated_total: u64,
    pub ck_free_count: u64,
    /// `ex_H(n, C_k)`; `None` when no C_k-free Halin graph exists.
    pub max_edges: Option<usize>,
    /// The conjectured cap as the exact fraction `bound_num / bound_den`.
    pub bound_num: usize,
    pub bound_den: usize,
    /// `5 * max_edges > 8 * (n - 1)`; always false when `max_edges` is
    /// `None`.
    pub exceeds_bound: bool,
    /// `8(n-1) - 5*max_edges`: negative means the bound is exceeded.
    pub gap_fifths: Option<i64>,
    /// The conjecture is stated for n at least 21; smaller sizes are
    /// reported but flagged as outside that range.
    pub in_stated_range: bool,
}

/// Probes the conjectured bound `ex_H(n, C_6) <= 8(n-1)/5` across a range
/// of sizes. `k` selects the forbidden cycle (6 for the conjecture as
/// stated); the reported bound is the 8/5 line regardless, since that is
/// the statement being probed.
pub fn conjecture_scan(
    k: usize,
    ns: RangeInclusive<usize>,
    limit: usize,
) -> Result<Vec<ConjectureRow>, EnumerationError> {
    if k < 3 {
        return Err(EnumerationError::CycleTooShort(k));
    }
    for n in ns.clone() {
        check_n(n, limit)?;
    }
    Ok(ns
        .map(|n| {
            let free_edges = drive(n, |rot, _| {
                let g = build(rot);
                if contains_cycle(&g, k).is_some() {
                    None
                } else {
                    Some(g.edge_count())
                }
            });
            let enumerated_total = free_edges.len() as u64;
            let frees: Vec<usize> = free_edges.into_iter().flatten().collect();
            let max_edges = frees.iter().copied().max();
            ConjectureRow {
                n,
                enumerated_total,
                ck_free_count: frees.len() as u64,
                max_edges,
                bound_num: 8 * (n - 1),
                bound_den: 5,
                exceeds_bound: max_edges.is_some_and(|e| 5 * e > 8 * (n - 1)),
                gap_fifths: max_edges.map(|e| 8 * (n as i64 - 1) - 5 * e as i64),
                in_stated_range: n >= 21,
            }
        })
        .collect())
}
