//! Text round-tripping for Halin graphs.
//!
//! The format is one line: the header `halin1`, whitespace, then the
//! balanced-parenthesis code of the plane tree. The code is written from
//! the canonical rooting (see [`crate::canon`]), children in embedding
//! order, each leaf as `()`; the leaf cycle is implied by the embedding and
//! never written. Parsing numbers vertices in preorder of the code, root
//! first, so a parsed graph's labels are determined by the text alone.
//!
//! Example: `halin1 (()()())` is the wheel on four vertices (K4).

use std::fmt;

use thiserror::Error;

use crate::canon::canonical_code;
use crate::graph::{HalinGraph, PlaneTree, Vertex};

/// Header that opens every serialised graph.
pub const HEADER: &str = "halin1";

/// What went wrong at [`ParseError::offset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `{HEADER}`")]
    MissingHeader,
    #[error("expected `(` opening the tree code")]
    MissingCode,
    #[error("unexpected byte {0:?}")]
    UnexpectedByte(char),
    #[error("`)` without a matching `(`")]
    UnbalancedClose,
    #[error("input ends with {0} unclosed `(`")]
    Unclosed(usize),
    #[error("trailing input after the tree code")]
    TrailingInput,
    #[error("root has {0} children, a Halin tree needs at least 3")]
    RootChildCount(usize),
    #[error("internal vertex with a single child would have degree 2")]
    SingleChild,
}

/// Parse failure, located by byte offset into the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

/// Serialises a Halin graph as its canonical one-line form.
pub fn serialize(g: &HalinGraph) -> String {
    format!("{HEADER} {}", canonical_code(g.tree()))
}

impl fmt::Display for HalinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

/// Parses the one-line form. Vertices are numbered in preorder of the code;
/// the code need not be canonical, but must describe a valid Halin tree
/// (root with at least three children, no other vertex with exactly one).
pub fn parse(text: &str) -> Result<HalinGraph, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() && (bytes[pos] as char).is_ascii_whitespace() {
        pos += 1;
    }
    if !text[pos..].starts_with(HEADER) {
        return Err(ParseError::at(pos, ParseErrorKind::MissingHeader));
    }
    pos += HEADER.len();
    let code_start = pos;
    while pos < bytes.len() && matches!(bytes[pos], b' ' | b'\t') {
        pos += 1;
    }
    if pos == code_start || pos >= bytes.len() || bytes[pos] != b'(' {
        return Err(ParseError::at(pos, ParseErrorKind::MissingCode));
    }

    // Preorder construction: opening a paren creates a vertex under the
    // current stack top; child counts are checked as vertices close.
    let mut rotations: Vec<Vec<Vertex>> = Vec::new();
    let mut stack: Vec<(Vertex, usize, usize)> = Vec::new(); // (vertex, children so far, open offset)
    loop {
        if pos >= bytes.len() {
            return Err(ParseError::at(pos, ParseErrorKind::Unclosed(stack.len())));
        }
        match bytes[pos] {
            b'(' => {
                let v = rotations.len();
                match stack.last_mut() {
                    Some((parent, count, _)) => {
                        *count += 1;
                        let parent = *parent;
                        rotations[parent].push(v);
                        rotations.push(vec![parent]);
                    }
                    None => {
                        if v != 0 {
                            return Err(ParseError::at(pos, ParseErrorKind::TrailingInput));
                        }
                        rotations.push(vec![]);
                    }
                }
                stack.push((v, 0, pos));
            }
            b')' => {
                let Some((v, children, open)) = stack.pop() else {
                    return Err(ParseError::at(pos, ParseErrorKind::UnbalancedClose));
                };
                if v == 0 && children < 3 {
                    return Err(ParseError::at(
                        open,
                        ParseErrorKind::RootChildCount(children),
                    ));
                }
                if v != 0 && children == 1 {
                    return Err(ParseError::at(open, ParseErrorKind::SingleChild));
                }
                if stack.is_empty() {
                    pos += 1;
                    break;
                }
            }
            other => {
                return Err(ParseError::at(
                    pos,
                    ParseErrorKind::UnexpectedByte(other as char),
                ));
            }
        }
        pos += 1;
    }
    while pos < bytes.len() && (bytes[pos] as char).is_ascii_whitespace() {
        pos += 1;
    }
    if pos < bytes.len() {
        return Err(ParseError::at(pos, ParseErrorKind::TrailingInput));
    }
    Ok(HalinGraph::from_tree(PlaneTree::from_rotations_unchecked(
        rotations,
    )))
}
