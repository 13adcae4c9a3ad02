//! Gropes, their class, and the tree-level complement correspondence with
//! model Bing cells.
//!
//! The complement is computed on trees only: a genus-`g` surface stage is
//! traded for a body with `g` Bing-doubled parallel copies of the core, and a
//! grope attached to a basis curve turns the handle dual to that curve into
//! a deeper cell stage. Embeddings are not modelled.

use serde::{Deserialize, Serialize};

use crate::bingcell::{BingCellTree, CellShape};
use crate::diag::Diagnostic;
use crate::error::{Error, Result};
use crate::modeltree::{DecompTree, Side, TreePath};

fn one() -> usize {
    1
}

fn is_one(x: &usize) -> bool {
    *x == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GropeTree {
    Circle,
    /// `copies` parallel copies of a genus-`genus` surface on the attaching
    /// curve; `pairs[i]` are the gropes on `(α_i, β_i)`.
    Surface {
        genus: usize,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        copies: usize,
        pairs: Vec<(GropeTree, GropeTree)>,
    },
}

impl GropeTree {
    pub fn surface(pairs: Vec<(GropeTree, GropeTree)>) -> Self {
        GropeTree::Surface {
            genus: pairs.len(),
            copies: 1,
            pairs,
        }
    }

    /// Genus-`g` surface with bare circles on every basis curve.
    pub fn bare(genus: usize) -> Self {
        GropeTree::surface(vec![(GropeTree::Circle, GropeTree::Circle); genus])
    }
}

pub fn validate(t: &GropeTree) -> Vec<Diagnostic> {
    fn walk(t: &GropeTree, loc: String, out: &mut Vec<Diagnostic>) {
        if let GropeTree::Surface {
            genus,
            copies,
            pairs,
        } = t
        {
            if *genus < 1 {
                out.push(Diagnostic::new(&loc, "genus ≥ 1 required"));
            }
            if pairs.len() != *genus {
                out.push(Diagnostic::new(
                    &loc,
                    format!("genus {genus} surface has {} pairs", pairs.len()),
                ));
            }
            if *copies < 1 {
                out.push(Diagnostic::new(&loc, "at least one copy required"));
            }
            for (p, (a, b)) in pairs.iter().enumerate() {
                walk(a, format!("{loc}/{p}.0"), out);
                walk(b, format!("{loc}/{p}.1"), out);
            }
        }
    }
    let mut out = Vec::new();
    walk(t, String::new(), &mut out);
    for d in &mut out {
        if d.location.is_empty() {
            d.location = "/".into();
        }
    }
    out
}

fn ensure_valid(t: &GropeTree) -> Result<()> {
    let diags = validate(t);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidGrope(crate::diag::summarize(&diags)))
    }
}

/// Class: a circle has class 1, a surface the minimum over its symplectic
/// pairs of the summed classes of the two attached gropes. Parallel copies
/// do not change the class.
pub fn grope_class(t: &GropeTree) -> usize {
    match t {
        GropeTree::Circle => 1,
        GropeTree::Surface { pairs, .. } => pairs
            .iter()
            .map(|(a, b)| grope_class(a) + grope_class(b))
            .min()
            .unwrap_or(1),
    }
}

/// Why a side of a decomposition is not a grope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotAGrope {
    pub path: TreePath,
    pub reason: String,
}

/// The grope formed by side `side` when every stage on it belongs to `side`
/// and every leaf to the other side.
pub fn from_decomp_side(t: &DecompTree, side: Side) -> std::result::Result<GropeTree, NotAGrope> {
    fn walk(
        t: &DecompTree,
        side: Side,
        path: TreePath,
    ) -> std::result::Result<GropeTree, NotAGrope> {
        match t {
            DecompTree::Leaf { owner } if *owner != side => Ok(GropeTree::Circle),
            DecompTree::Leaf { .. } => Err(NotAGrope {
                path,
                reason: format!("side {side} caps this curve with a 2-handle"),
            }),
            DecompTree::Stage { owner, .. } if *owner != side => Err(NotAGrope {
                path,
                reason: format!("the surface here belongs to side {owner}"),
            }),
            DecompTree::Stage { pairs, genus, .. } => {
                let pairs = pairs
                    .iter()
                    .enumerate()
                    .map(|(p, (x, y))| {
                        Ok((
                            walk(x, side, path.child(p, 0))?,
                            walk(y, side, path.child(p, 1))?,
                        ))
                    })
                    .collect::<std::result::Result<Vec<_>, NotAGrope>>()?;
                Ok(GropeTree::Surface {
                    genus: *genus,
                    copies: 1,
                    pairs,
                })
            }
        }
    }
    walk(t, side, TreePath::default())
}

fn complement_shape(t: &GropeTree) -> CellShape {
    match t {
        GropeTree::Circle => CellShape::Handle,
        GropeTree::Surface { copies, pairs, .. } => CellShape::Body(
            (0..*copies)
                .flat_map(|_| pairs.iter())
                .map(|(a, b)| CellShape::Link(vec![complement_shape(a), complement_shape(b)]))
                .collect(),
        ),
    }
}

/// Cell tree of the complement of a (generalized) grope. A bare circle's
/// complement is a disk.
pub fn grope_complement(t: &GropeTree) -> Result<BingCellTree> {
    ensure_valid(t)?;
    BingCellTree::from_shape(&complement_shape(t))
}
