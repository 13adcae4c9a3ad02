//! Associated trees of Bing cells.
//!
//! A cell of height one has a planar body with `k + 1` boundary circles; its
//! tree is the cone on `k + 1` points (the body vertex), rooted at the
//! attaching circle, with one marked vertex per Bing-double link and one
//! handle leaf per link component. Taller cells replace handle leaves by
//! the trees of height-one cells, so a marked vertex may carry sub-cell body
//! vertices as well as handles.
//!
//! Body vertices, handles, and the root are unmarked; link vertices are
//! marked. Two surfaces may intersect iff their first common ancestor is
//! unmarked. For a body and one of its own descendants the first common
//! ancestor is the body itself, which is unmarked, so such pairs are
//! allowed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diag::Diagnostic;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VertexKind {
    Root,
    /// Planar surface with `boundary` boundary circles.
    Body {
        boundary: usize,
    },
    /// Bing-double link with `components` components.
    Link {
        components: usize,
    },
    Handle,
}

impl VertexKind {
    pub fn is_marked(self) -> bool {
        matches!(self, VertexKind::Link { .. })
    }

    pub fn is_surface(self) -> bool {
        matches!(self, VertexKind::Body { .. } | VertexKind::Handle)
    }

    fn name(self) -> &'static str {
        match self {
            VertexKind::Root => "root",
            VertexKind::Body { .. } => "body",
            VertexKind::Link { .. } => "link",
            VertexKind::Handle => "handle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub parent: Option<usize>,
    #[serde(flatten)]
    pub kind: VertexKind,
}

/// Recursive description of a cell below its root. A `Body` with no
/// children is a disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CellShape {
    Handle,
    Body(Vec<CellShape>),
    Link(Vec<CellShape>),
}

impl CellShape {
    pub fn disk() -> Self {
        CellShape::Body(Vec::new())
    }
}

/// Vertex ids are assigned in construction order (depth-first preorder for
/// built trees), and every parent id is smaller than its child's id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCellTree", into = "RawCellTree")]
pub struct BingCellTree {
    vertices: Vec<Vertex>,
    children: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawCellTree {
    vertices: Vec<Vertex>,
}

impl TryFrom<RawCellTree> for BingCellTree {
    type Error = Error;
    fn try_from(raw: RawCellTree) -> Result<Self> {
        BingCellTree::from_vertices(raw.vertices)
    }
}

impl From<BingCellTree> for RawCellTree {
    fn from(t: BingCellTree) -> Self {
        RawCellTree {
            vertices: t.vertices,
        }
    }
}

impl BingCellTree {
    /// Checks only what makes the vertex list a forest; everything else is
    /// reported by [`validate_tree`].
    pub fn from_vertices(vertices: Vec<Vertex>) -> Result<Self> {
        let mut children = vec![Vec::new(); vertices.len()];
        for (ix, v) in vertices.iter().enumerate() {
            if v.id != ix {
                return Err(Error::MalformedCellTree(format!(
                    "vertex at position {ix} has id {}",
                    v.id
                )));
            }
            if let Some(p) = v.parent {
                if p >= ix {
                    return Err(Error::MalformedCellTree(format!(
                        "vertex {ix} has parent {p}, parents must precede children"
                    )));
                }
                children[p].push(ix);
            }
        }
        Ok(BingCellTree { vertices, children })
    }

    /// Tree for a cell whose top is `shape`. Bare disks are normalized: a
    /// disk on a link component is a handle, a handle on a body is a disk.
    pub fn from_shape(shape: &CellShape) -> Result<Self> {
        let mut vertices = vec![Vertex {
            id: 0,
            parent: None,
            kind: VertexKind::Root,
        }];
        let top = match shape {
            CellShape::Handle => CellShape::disk(),
            CellShape::Link(_) => {
                return Err(Error::MalformedCellTree(
                    "a cell must start with a body".into(),
                ))
            }
            body => body.clone(),
        };
        push_shape(&mut vertices, 0, &top, false);
        BingCellTree::from_vertices(vertices)
    }

    pub fn to_shape(&self) -> CellShape {
        match self.children.first().and_then(|c| c.first()) {
            Some(&top) => self.shape_at(top),
            None => CellShape::disk(),
        }
    }

    fn shape_at(&self, id: usize) -> CellShape {
        let kids = || {
            self.children[id]
                .iter()
                .map(|&c| self.shape_at(c))
                .collect()
        };
        match self.vertices[id].kind {
            VertexKind::Handle => CellShape::Handle,
            VertexKind::Link { .. } => CellShape::Link(kids()),
            VertexKind::Body { .. } | VertexKind::Root => CellShape::Body(kids()),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> Result<&Vertex> {
        self.vertices.get(id).ok_or(Error::UnknownVertex(id))
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn valence(&self, id: usize) -> usize {
        self.children[id].len() + usize::from(self.vertices[id].parent.is_some())
    }

    /// Handle leaves in id order.
    pub fn handles(&self) -> Vec<usize> {
        self.ids_where(|k| k == VertexKind::Handle)
    }

    pub fn bodies(&self) -> Vec<usize> {
        self.ids_where(|k| matches!(k, VertexKind::Body { .. }))
    }

    pub fn marked(&self) -> Vec<usize> {
        self.ids_where(VertexKind::is_marked)
    }

    fn ids_where(&self, pred: impl Fn(VertexKind) -> bool) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| pred(v.kind))
            .map(|v| v.id)
            .collect()
    }

    /// `id` followed by its ancestors up to the root.
    pub fn ancestors(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut cur = id;
        while let Some(p) = self.vertices[cur].parent {
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn first_common_ancestor(&self, a: usize, b: usize) -> Result<usize> {
        self.vertex(a)?;
        self.vertex(b)?;
        let up: BTreeSet<usize> = self.ancestors(a).into_iter().collect();
        self.ancestors(b)
            .into_iter()
            .find(|x| up.contains(x))
            .ok_or_else(|| {
                Error::MalformedCellTree(format!("vertices {a} and {b} lie in different trees"))
            })
    }

    /// Replaces handle `id` by the cell `sub`, keeping ids in preorder.
    pub fn replace_handle(&self, id: usize, sub: &CellShape) -> Result<BingCellTree> {
        if self.vertex(id)?.kind != VertexKind::Handle {
            return Err(Error::NotASurface(id));
        }
        let sub = match sub {
            CellShape::Link(_) => {
                return Err(Error::MalformedCellTree(
                    "a cell must start with a body".into(),
                ))
            }
            s => s.clone(),
        };
        let shape = self.replace_in(self.children[0][0], id, &sub);
        BingCellTree::from_shape(&shape)
    }

    fn replace_in(&self, at: usize, target: usize, sub: &CellShape) -> CellShape {
        if at == target {
            return sub.clone();
        }
        let kids = self.children[at]
            .iter()
            .map(|&c| self.replace_in(c, target, sub))
            .collect();
        match self.vertices[at].kind {
            VertexKind::Handle => CellShape::Handle,
            VertexKind::Link { .. } => CellShape::Link(kids),
            _ => CellShape::Body(kids),
        }
    }
}

fn push_shape(vertices: &mut Vec<Vertex>, parent: usize, shape: &CellShape, on_link: bool) {
    let id = vertices.len();
    let (kind, kids): (VertexKind, &[CellShape]) = match shape {
        CellShape::Body(kids) if kids.is_empty() && on_link => (VertexKind::Handle, &[]),
        CellShape::Handle if on_link => (VertexKind::Handle, &[]),
        CellShape::Handle => (VertexKind::Body { boundary: 1 }, &[]),
        CellShape::Body(kids) => (
            VertexKind::Body {
                boundary: kids.len() + 1,
            },
            kids,
        ),
        CellShape::Link(kids) => (
            VertexKind::Link {
                components: kids.len(),
            },
            kids,
        ),
    };
    vertices.push(Vertex {
        id,
        parent: Some(parent),
        kind,
    });
    let child_on_link = kind.is_marked();
    for k in kids {
        push_shape(vertices, id, k, child_on_link);
    }
}

fn valid_link_size(c: usize) -> bool {
    c >= 2 && c.is_power_of_two()
}

/// Height-one model cell: a body with `boundary` circles and one Bing-double
/// link per non-attaching circle, `links[i]` components each.
pub fn model_cell(boundary: usize, links: &[usize]) -> Result<BingCellTree> {
    if boundary == 0 {
        return Err(Error::InvalidCellCounts(
            "a body needs at least one boundary circle".into(),
        ));
    }
    if links.len() + 1 != boundary {
        return Err(Error::InvalidCellCounts(format!(
            "{boundary} boundary circles need {} links, got {}",
            boundary - 1,
            links.len()
        )));
    }
    if let Some(bad) = links.iter().find(|&&c| !valid_link_size(c)) {
        return Err(Error::InvalidCellCounts(format!(
            "a Bing-double link has 2^d ≥ 2 components, got {bad}"
        )));
    }
    let shape = CellShape::Body(
        links
            .iter()
            .map(|&c| CellShape::Link(vec![CellShape::Handle; c]))
            .collect(),
    );
    BingCellTree::from_shape(&shape)
}

/// Maximal number of marked vertices on a root-to-leaf path.
pub fn height_of(t: &BingCellTree) -> usize {
    let mut marked_depth = vec![0usize; t.len()];
    let mut best = 0;
    for v in t.vertices() {
        let above = v.parent.map_or(0, |p| marked_depth[p]);
        marked_depth[v.id] = above + usize::from(v.kind.is_marked());
        if t.children(v.id).is_empty() {
            best = best.max(marked_depth[v.id]);
        }
    }
    best
}

/// Whether surfaces `a` and `b` may intersect (self-plumbing when equal).
pub fn allowed_intersection(t: &BingCellTree, a: usize, b: usize) -> Result<bool> {
    for id in [a, b] {
        if !t.vertex(id)?.kind.is_surface() {
            return Err(Error::NotASurface(id));
        }
    }
    if a == b {
        return Ok(true);
    }
    let c = t.first_common_ancestor(a, b)?;
    Ok(!t.vertices[c].kind.is_marked())
}

/// Declared intersections among the surfaces of a cell.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingPattern {
    #[serde(default)]
    pub surfaces: BTreeSet<usize>,
    pub intersections: BTreeSet<(usize, usize)>,
}

impl PlumbingPattern {
    pub fn new(intersections: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let intersections: BTreeSet<_> = intersections
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let surfaces = intersections.iter().flat_map(|&(a, b)| [a, b]).collect();
        PlumbingPattern {
            surfaces,
            intersections,
        }
    }
}

pub fn validate_plumbing(t: &BingCellTree, p: &PlumbingPattern) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for &s in &p.surfaces {
        match t.vertex(s) {
            Err(_) => out.push(Diagnostic::new(format!("vertex {s}"), "unknown vertex")),
            Ok(v) if !v.kind.is_surface() => out.push(Diagnostic::new(
                format!("vertex {s}"),
                format!("{} vertex is not a surface", v.kind.name()),
            )),
            Ok(_) => {}
        }
    }
    for &(a, b) in &p.intersections {
        let loc = format!("intersection ({a},{b})");
        if !p.surfaces.is_empty() && (!p.surfaces.contains(&a) || !p.surfaces.contains(&b)) {
            out.push(Diagnostic::new(
                &loc,
                "endpoint not among the declared surfaces",
            ));
        }
        match allowed_intersection(t, a, b) {
            Ok(true) => {}
            Ok(false) => {
                let c = t.first_common_ancestor(a, b).expect("ids checked");
                out.push(Diagnostic::new(
                    &loc,
                    format!("surfaces must be disjoint: first common ancestor {c} is marked"),
                ));
            }
            Err(e) => out.push(Diagnostic::new(&loc, e.to_string())),
        }
    }
    out
}

/// Checks the valence and adjacency rules; empty means valid.
pub fn validate_tree(t: &BingCellTree) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut bad = |id: usize, msg: String| out.push(Diagnostic::new(format!("vertex {id}"), msg));
    if t.is_empty() {
        out.push(Diagnostic::new("tree", "no vertices"));
        return out;
    }
    for v in t.vertices() {
        let id = v.id;
        let valence = t.valence(id);
        let parent_kind = v.parent.map(|p| t.vertices[p].kind);
        let child_kinds: Vec<VertexKind> =
            t.children(id).iter().map(|&c| t.vertices[c].kind).collect();
        match v.kind {
            VertexKind::Root => {
                if id != 0 {
                    bad(id, "root must be vertex 0".into());
                }
                if !matches!(child_kinds.as_slice(), [VertexKind::Body { .. }]) {
                    bad(id, "root must have exactly one child, a body".into());
                }
            }
            VertexKind::Body { boundary } => {
                if boundary == 0 {
                    bad(id, "body with no boundary circles".into());
                }
                if valence != boundary {
                    bad(
                        id,
                        format!("body with {boundary} boundary circles has valence {valence}"),
                    );
                }
                if !matches!(
                    parent_kind,
                    Some(VertexKind::Root | VertexKind::Link { .. } | VertexKind::Body { .. })
                ) {
                    bad(id, "body must hang from the root, a link, or a body".into());
                }
                if child_kinds
                    .iter()
                    .any(|k| !matches!(k, VertexKind::Link { .. } | VertexKind::Body { .. }))
                {
                    bad(id, "body children must be links or bodies".into());
                }
            }
            VertexKind::Link { components } => {
                if !valid_link_size(components) {
                    bad(id, format!("Bing-double link with {components} components"));
                }
                if valence != components + 1 {
                    bad(
                        id,
                        format!(
                            "link with {components} components has valence {valence}, expected {}",
                            components + 1
                        ),
                    );
                }
                if !matches!(parent_kind, Some(VertexKind::Body { .. })) {
                    bad(id, "link must hang from a body".into());
                }
                if child_kinds
                    .iter()
                    .any(|k| !matches!(k, VertexKind::Handle | VertexKind::Body { .. }))
                {
                    bad(id, "link children must be handles or bodies".into());
                }
            }
            VertexKind::Handle => {
                if !child_kinds.is_empty() {
                    bad(id, "handle must be a leaf".into());
                }
                if !matches!(parent_kind, Some(VertexKind::Link { .. })) {
                    bad(id, "handle must hang from a link".into());
                }
            }
        }
        if id != 0 && v.parent.is_none() {
            bad(id, "detached vertex".into());
        }
    }
    out
}
