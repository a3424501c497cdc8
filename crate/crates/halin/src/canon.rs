//! Canonical form for plane trees.
//!
//! A plane tree rooted at `r`, with a chosen first neighbour and a chosen
//! orientation, reads off as a balanced-parenthesis string: each vertex
//! emits `(`, then its children in rotation order away from the parent,
//! then `)`. The canonical code of an unrooted plane tree is the
//! lexicographically smallest such string over all non-leaf roots, all
//! starting positions in the root's rotation, and both orientations, so two
//! trees get the same code exactly when some rotation-preserving or
//! rotation-reversing relabelling maps one to the other.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::{PlaneTree, Vertex};

/// Canonical balanced-parenthesis code of a plane tree (no header).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One rooting of a tree: a root, an index into its rotation where reading
/// starts, and whether the rotation is read reversed.
#[derive(Debug, Clone, Copy)]
struct Rooting {
    root: Vertex,
    start: usize,
    reflect: bool,
}

/// Emits the code of `rooting` byte by byte into `sink`; stops early when
/// `sink` returns `false`.
fn walk(rotations: &[Vec<Vertex>], rooting: Rooting, sink: &mut impl FnMut(u8) -> bool) {
    // (vertex, child index) drives an explicit preorder; `enter` is the
    // rotation position we arrived from (the parent), or the start offset
    // at the root where every rotation slot is a child.
    fn rec(
        rotations: &[Vec<Vertex>],
        v: Vertex,
        enter: usize,
        is_root: bool,
        reflect: bool,
        sink: &mut impl FnMut(u8) -> bool,
    ) -> bool {
        if !sink(b'(') {
            return false;
        }
        let rot = &rotations[v];
        let d = rot.len();
        let child_count = if is_root { d } else { d - 1 };
        for j in 0..child_count {
            let off = if is_root { j } else { j + 1 };
            let idx = if reflect {
                (enter + d - off) % d
            } else {
                (enter + off) % d
            };
            let w = rot[idx];
            let enter_w = rotations[w]
                .iter()
                .position(|&x| x == v)
                .expect("symmetric edge");
            if !rec(rotations, w, enter_w, false, reflect, sink) {
                return false;
            }
        }
        sink(b')')
    }
    rec(
        rotations,
        rooting.root,
        rooting.start,
        true,
        rooting.reflect,
        sink,
    );
}

fn all_rootings(rotations: &[Vec<Vertex>]) -> impl Iterator<Item = Rooting> + '_ {
    rotations
        .iter()
        .enumerate()
        .filter(|(_, rot)| rot.len() > 1)
        .flat_map(|(root, rot)| {
            (0..rot.len()).flat_map(move |start| {
                [false, true].into_iter().map(move |reflect| Rooting {
                    root,
                    start,
                    reflect,
                })
            })
        })
}

/// Compares the code of `rooting` against `reference`, aborting at the
/// first differing byte. Both strings have length `2n`, so no length
/// tie-break is needed.
fn compare_rooting(rotations: &[Vec<Vertex>], rooting: Rooting, reference: &[u8]) -> Ordering {
    let mut pos = 0usize;
    let mut verdict = Ordering::Equal;
    walk(rotations, rooting, &mut |b| {
        let expect = reference[pos];
        pos += 1;
        if b == expect {
            true
        } else {
            verdict = b.cmp(&expect);
            false
        }
    });
    verdict
}

fn emit_rooting(rotations: &[Vec<Vertex>], rooting: Rooting, buf: &mut Vec<u8>) {
    buf.clear();
    walk(rotations, rooting, &mut |b| {
        buf.push(b);
        true
    });
}

/// Canonical code of the tree underlying `tree`'s rotation system.
pub fn canonical_code(tree: &PlaneTree) -> CanonicalCode {
    CanonicalCode(String::from_utf8(canonical_bytes(tree.rotations())).expect("parens are ascii"))
}

/// Canonical code over raw rotations (already-valid plane tree).
pub(crate) fn canonical_bytes(rotations: &[Vec<Vertex>]) -> Vec<u8> {
    let mut rootings = all_rootings(rotations);
    let mut best = Vec::with_capacity(2 * rotations.len());
    emit_rooting(
        rotations,
        rootings.next().expect("plane trees have a non-leaf"),
        &mut best,
    );
    let mut scratch = Vec::with_capacity(best.len());
    for r in rootings {
        if compare_rooting(rotations, r, &best) == Ordering::Less {
            emit_rooting(rotations, r, &mut scratch);
            std::mem::swap(&mut best, &mut scratch);
        }
    }
    best
}

/// True when no rooting of `rotations` reads lexicographically below
/// `reference`. The enumerator calls this with the code of the rooted form
/// it just generated, so `true` means that form is the canonical one.
pub(crate) fn is_canonical_form(rotations: &[Vec<Vertex>], reference: &[u8]) -> bool {
    all_rootings(rotations).all(|r| compare_rooting(rotations, r, reference) != Ordering::Less)
}
