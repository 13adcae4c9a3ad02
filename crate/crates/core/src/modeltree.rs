//! Model decompositions `D⁴ = A ∪ B` as recursive trees, and their symbolic
//! Kirby handle structures.
//!
//! A `Leaf(S)` gives side `S` the whole 2-handle (the other side is a collar
//! on its attaching curve). A `Stage(S, g, pairs)` says the attaching curve of
//! side `S` bounds a genus-`g` surface; the other side is then the collar with
//! zero-framed 2-handles on the Bing doubles of `g` parallel copies of the
//! core. Each symplectic pair of basis curves `(α_i, β_i)` of the surface is
//! dual to the two handles of one Bing double, and the two children of the
//! pair are the decompositions of those two handles, with the child's
//! `S`-portion attached to the basis curve.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diag::Diagnostic;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(Error::InvalidDecomposition(format!(
                "unknown side {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DecompTree {
    Leaf {
        owner: Side,
    },
    Stage {
        owner: Side,
        genus: usize,
        pairs: Vec<(DecompTree, DecompTree)>,
    },
}

/// Address of a node: one `(pair, child)` step per stage from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TreePath(pub Vec<(usize, usize)>);

impl TreePath {
    pub fn child(&self, pair: usize, child: usize) -> TreePath {
        let mut v = self.0.clone();
        v.push((pair, child));
        TreePath(v)
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for (p, c) in &self.0 {
            write!(f, "/{p}.{c}")?;
        }
        Ok(())
    }
}

impl DecompTree {
    pub fn leaf(owner: Side) -> Self {
        DecompTree::Leaf { owner }
    }

    /// A stage whose genus is the number of pairs.
    pub fn stage(owner: Side, pairs: Vec<(DecompTree, DecompTree)>) -> Self {
        DecompTree::Stage {
            owner,
            genus: pairs.len(),
            pairs,
        }
    }

    pub fn owner(&self) -> Side {
        match self {
            DecompTree::Leaf { owner } | DecompTree::Stage { owner, .. } => *owner,
        }
    }

    /// Same decomposition with the roles of `A` and `B` exchanged.
    pub fn swap_owners(&self) -> DecompTree {
        match self {
            DecompTree::Leaf { owner } => DecompTree::leaf(owner.opposite()),
            DecompTree::Stage {
                owner,
                genus,
                pairs,
            } => DecompTree::Stage {
                owner: owner.opposite(),
                genus: *genus,
                pairs: pairs
                    .iter()
                    .map(|(x, y)| (x.swap_owners(), y.swap_owners()))
                    .collect(),
            },
        }
    }

    pub fn leaf_count(&self, side: Side) -> usize {
        match self {
            DecompTree::Leaf { owner } => usize::from(*owner == side),
            DecompTree::Stage { pairs, .. } => pairs
                .iter()
                .map(|(x, y)| x.leaf_count(side) + y.leaf_count(side))
                .sum(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecompTree::Leaf { .. } => 1,
            DecompTree::Stage { pairs, .. } => {
                1 + pairs
                    .iter()
                    .map(|(x, y)| x.node_count() + y.node_count())
                    .sum::<usize>()
            }
        }
    }
}

/// Structural problems with a tree; empty means valid.
pub fn validate(t: &DecompTree) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    validate_at(t, &TreePath::default(), &mut out);
    out
}

fn validate_at(t: &DecompTree, path: &TreePath, out: &mut Vec<Diagnostic>) {
    if let DecompTree::Stage { genus, pairs, .. } = t {
        if *genus < 1 {
            out.push(Diagnostic::new(path.to_string(), "genus ≥ 1 required"));
        }
        if pairs.len() != *genus {
            out.push(Diagnostic::new(
                path.to_string(),
                format!("genus {genus} stage has {} symplectic pairs", pairs.len()),
            ));
        }
        for (p, (x, y)) in pairs.iter().enumerate() {
            validate_at(x, &path.child(p, 0), out);
            validate_at(y, &path.child(p, 1), out);
        }
    }
}

pub(crate) fn ensure_valid(t: &DecompTree) -> Result<()> {
    let diags = validate(t);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDecomposition(crate::diag::summarize(&diags)))
    }
}

/// Number of nested surface stages: a leaf has height 0.
pub fn height(t: &DecompTree) -> usize {
    match t {
        DecompTree::Leaf { .. } => 0,
        DecompTree::Stage { pairs, .. } => {
            1 + pairs
                .iter()
                .map(|(x, y)| height(x).max(height(y)))
                .max()
                .unwrap_or(0)
        }
    }
}

/// Named decompositions from the worked examples.
///
/// The height-3 pair is a reconstruction from the drawn spines: `a3b3`
/// iterates the grope choice of `a2b2` once more, `a3b3prime` alternates
/// owners `A, B, A` down the first branch the way `a2b2prime` alternates
/// `A, B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    A1B1(usize),
    A2B2,
    A2B2Prime,
    A3B3,
    A3B3Prime,
}

impl Fixture {
    /// Representative list (genus 1 for the height-1 family).
    pub fn all() -> Vec<Fixture> {
        vec![
            Fixture::A1B1(1),
            Fixture::A2B2,
            Fixture::A2B2Prime,
            Fixture::A3B3,
            Fixture::A3B3Prime,
        ]
    }

    pub fn tree(self) -> DecompTree {
        fixture(self)
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::A1B1(g) => write!(f, "a1b1:{g}"),
            Fixture::A2B2 => f.write_str("a2b2"),
            Fixture::A2B2Prime => f.write_str("a2b2prime"),
            Fixture::A3B3 => f.write_str("a3b3"),
            Fixture::A3B3Prime => f.write_str("a3b3prime"),
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let unknown = || Error::UnknownFixture(s.to_string());
        match lower.as_str() {
            "a1b1" => return Ok(Fixture::A1B1(1)),
            "a2b2" => return Ok(Fixture::A2B2),
            "a2b2prime" | "a2b2'" => return Ok(Fixture::A2B2Prime),
            "a3b3" => return Ok(Fixture::A3B3),
            "a3b3prime" | "a3b3'" => return Ok(Fixture::A3B3Prime),
            _ => {}
        }
        let arg = lower
            .strip_prefix("a1b1:")
            .or_else(|| {
                lower
                    .strip_prefix("a1b1(")
                    .and_then(|x| x.strip_suffix(')'))
            })
            .ok_or_else(unknown)?;
        match arg.trim().parse::<usize>() {
            Ok(g) if g >= 1 => Ok(Fixture::A1B1(g)),
            _ => Err(unknown()),
        }
    }
}

pub fn fixture(name: Fixture) -> DecompTree {
    use DecompTree as T;
    use Side::{A, B};
    let la = || T::leaf(A);
    let lb = || T::leaf(B);
    let bare = |owner: Side, other: fn() -> DecompTree| T::stage(owner, vec![(other(), other())]);
    match name {
        Fixture::A1B1(g) => T::stage(A, (0..g).map(|_| (lb(), lb())).collect()),
        Fixture::A2B2 => T::stage(A, vec![(bare(A, lb), lb())]),
        Fixture::A2B2Prime => T::stage(A, vec![(bare(B, la), lb())]),
        Fixture::A3B3 => T::stage(A, vec![(T::stage(A, vec![(bare(A, lb), lb())]), lb())]),
        Fixture::A3B3Prime => T::stage(A, vec![(T::stage(B, vec![(bare(A, lb), la())]), lb())]),
    }
}

/// One step into the solid-torus pattern: parallel copy `copy` of the core,
/// Bing-double component (equivalently basis curve) `component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternStep {
    pub copy: usize,
    pub component: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PatternPosition(pub Vec<PatternStep>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum HandleKind {
    ZeroFramed,
    Dotted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum StageKind {
    /// A surface stage of the side being drawn (its 1-handles).
    Surface,
    /// The other side's surface seen from this side: parallel copies of the
    /// core, each Bing-doubled.
    BingDouble,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "camelCase")]
pub enum PatternNode {
    Slot {
        handle: HandleKind,
    },
    Stage {
        kind: StageKind,
        genus: usize,
        copies: Vec<(PatternNode, PatternNode)>,
    },
}

impl PatternNode {
    fn dual(&self) -> PatternNode {
        match self {
            PatternNode::Slot { handle } => PatternNode::Slot {
                handle: match handle {
                    HandleKind::ZeroFramed => HandleKind::Dotted,
                    HandleKind::Dotted => HandleKind::ZeroFramed,
                },
            },
            PatternNode::Stage {
                kind,
                genus,
                copies,
            } => PatternNode::Stage {
                kind: match kind {
                    StageKind::Surface => StageKind::BingDouble,
                    StageKind::BingDouble => StageKind::Surface,
                },
                genus: *genus,
                copies: copies.iter().map(|(x, y)| (x.dual(), y.dual())).collect(),
            },
        }
    }

    fn collect(&self, pos: &mut Vec<PatternStep>, out: &mut Vec<(PatternPosition, HandleKind)>) {
        match self {
            PatternNode::Slot { handle } => out.push((PatternPosition(pos.clone()), *handle)),
            PatternNode::Stage { copies, .. } => {
                for (copy, (x, y)) in copies.iter().enumerate() {
                    for (component, node) in [x, y].into_iter().enumerate() {
                        pos.push(PatternStep { copy, component });
                        node.collect(pos, out);
                        pos.pop();
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoHandle {
    pub framing: i64,
    pub position: PatternPosition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DottedCircle {
    pub position: PatternPosition,
}

/// Symbolic Kirby data of one side, drawn in the solid torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HandleStructure {
    pub side: Side,
    pub dotted_circles: Vec<DottedCircle>,
    pub two_handles: Vec<TwoHandle>,
    pub pattern: PatternNode,
}

impl HandleStructure {
    fn from_pattern(side: Side, pattern: PatternNode) -> Self {
        let mut slots = Vec::new();
        pattern.collect(&mut Vec::new(), &mut slots);
        let mut dotted_circles = Vec::new();
        let mut two_handles = Vec::new();
        for (position, kind) in slots {
            match kind {
                HandleKind::ZeroFramed => two_handles.push(TwoHandle {
                    framing: 0,
                    position,
                }),
                HandleKind::Dotted => dotted_circles.push(DottedCircle { position }),
            }
        }
        HandleStructure {
            side,
            dotted_circles,
            two_handles,
            pattern,
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for h in &self.two_handles {
            if h.framing != 0 {
                out.push(Diagnostic::new(
                    format!("{:?}", h.position.0),
                    format!("2-handle framing {} (must be 0)", h.framing),
                ));
            }
        }
        let mut seen = BTreeSet::new();
        let positions = self
            .two_handles
            .iter()
            .map(|h| &h.position)
            .chain(self.dotted_circles.iter().map(|d| &d.position));
        for p in positions {
            if !seen.insert(p) {
                out.push(Diagnostic::new(
                    format!("{:?}", p.0),
                    "duplicate pattern position",
                ));
            }
        }
        out
    }
}

fn pattern_of(t: &DecompTree, side: Side) -> PatternNode {
    match t {
        DecompTree::Leaf { owner } => PatternNode::Slot {
            handle: if *owner == side {
                HandleKind::ZeroFramed
            } else {
                HandleKind::Dotted
            },
        },
        DecompTree::Stage {
            owner,
            genus,
            pairs,
        } => PatternNode::Stage {
            kind: if *owner == side {
                StageKind::Surface
            } else {
                StageKind::BingDouble
            },
            genus: *genus,
            copies: pairs
                .iter()
                .map(|(x, y)| (pattern_of(x, side), pattern_of(y, side)))
                .collect(),
        },
    }
}

/// Kirby data for side `side`: a zero-framed 2-handle for each leaf the side
/// owns, a dotted circle for each leaf the other side owns.
pub fn handle_structure(t: &DecompTree, side: Side) -> HandleStructure {
    HandleStructure::from_pattern(side, pattern_of(t, side))
}

/// Exchanges dots and zeros over the same pattern; the result describes the
/// complementary side.
pub fn dualize(h: &HandleStructure) -> HandleStructure {
    HandleStructure::from_pattern(h.side.opposite(), h.pattern.dual())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HandleCounts {
    pub two_handles_a: usize,
    pub one_handles_a: usize,
    pub two_handles_b: usize,
    pub one_handles_b: usize,
}

pub fn handle_counts(t: &DecompTree) -> HandleCounts {
    let a = handle_structure(t, Side::A);
    let b = handle_structure(t, Side::B);
    HandleCounts {
        two_handles_a: a.two_handles.len(),
        one_handles_a: a.dotted_circles.len(),
        two_handles_b: b.two_handles.len(),
        one_handles_b: b.dotted_circles.len(),
    }
}
