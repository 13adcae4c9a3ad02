//! Graphviz renderings. Marked vertices are filled squares, unmarked
//! vertices circles, handle leaves double circles.

use std::fmt::Write;

use abslice_core::bingcell::{BingCellTree, VertexKind};
use abslice_core::grope::GropeTree;
use abslice_core::modeltree::DecompTree;

const HEADER: &str = "  node [fontname=\"Helvetica\"];\n  edge [arrowhead=none];\n";

pub fn cell_tree(t: &BingCellTree) -> String {
    let mut s = String::from("digraph cell {\n");
    s.push_str(HEADER);
    for v in t.vertices() {
        let (label, attrs) = match v.kind {
            VertexKind::Root => (String::new(), "shape=point"),
            VertexKind::Body { boundary } => (format!("{}: body {boundary}", v.id), "shape=circle"),
            VertexKind::Link { components } => (
                format!("{}: link {components}", v.id),
                "shape=square, style=filled, fillcolor=gray30, fontcolor=white",
            ),
            VertexKind::Handle => (format!("h{}", v.id), "shape=doublecircle"),
        };
        writeln!(s, "  v{} [label=\"{label}\", {attrs}];", v.id).unwrap();
    }
    for v in t.vertices() {
        if let Some(p) = v.parent {
            writeln!(s, "  v{p} -> v{};", v.id).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

pub fn decomp_tree(t: &DecompTree) -> String {
    fn walk(t: &DecompTree, next: &mut usize, s: &mut String) -> usize {
        let id = *next;
        *next += 1;
        match t {
            DecompTree::Leaf { owner } => {
                writeln!(s, "  n{id} [label=\"{owner}\", shape=doublecircle];").unwrap();
            }
            DecompTree::Stage {
                owner,
                genus,
                pairs,
            } => {
                writeln!(s, "  n{id} [label=\"{owner} g={genus}\", shape=circle];").unwrap();
                for (p, (x, y)) in pairs.iter().enumerate() {
                    for (c, child) in [x, y].into_iter().enumerate() {
                        let k = walk(child, next, s);
                        writeln!(s, "  n{id} -> n{k} [label=\"{p}.{c}\"];").unwrap();
                    }
                }
            }
        }
        id
    }
    let mut s = String::from("digraph decomposition {\n");
    s.push_str(HEADER);
    walk(t, &mut 0, &mut s);
    s.push_str("}\n");
    s
}

pub fn grope(t: &GropeTree) -> String {
    fn walk(t: &GropeTree, next: &mut usize, s: &mut String) -> usize {
        let id = *next;
        *next += 1;
        match t {
            GropeTree::Circle => {
                writeln!(s, "  n{id} [label=\"\", shape=doublecircle];").unwrap();
            }
            GropeTree::Surface {
                genus,
                copies,
                pairs,
            } => {
                let label = if *copies == 1 {
                    format!("g={genus}")
                } else {
                    format!("g={genus} x{copies}")
                };
                writeln!(s, "  n{id} [label=\"{label}\", shape=circle];").unwrap();
                for (p, (a, b)) in pairs.iter().enumerate() {
                    for (c, child) in [a, b].into_iter().enumerate() {
                        let k = walk(child, next, s);
                        let curve = if c == 0 { "α" } else { "β" };
                        writeln!(s, "  n{id} -> n{k} [label=\"{curve}{}\"];", p + 1).unwrap();
                    }
                }
            }
        }
        id
    }
    let mut s = String::from("digraph grope {\n");
    s.push_str(HEADER);
    walk(t, &mut 0, &mut s);
    s.push_str("}\n");
    s
}
