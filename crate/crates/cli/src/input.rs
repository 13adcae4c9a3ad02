//! Resolving command-line arguments to values: catalog shorthands first,
//! then JSON files, with `-` meaning stdin.

use std::fs;
use std::io::Read;

use abslice_core::abslice::ABSliceInstance;
use abslice_core::bingcell::{model_cell, BingCellTree, PlumbingPattern};
use abslice_core::grope::GropeTree;
use abslice_core::linkhom::{catalog, CatalogLink, LinkPresentation};
use abslice_core::modeltree::{self, DecompTree, Fixture};
use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;

fn read_json<T: DeserializeOwned>(source: &str, what: &str) -> Result<T> {
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(source).with_context(|| format!("reading {what} file {source}"))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what} from {source}"))
}

fn is_file_like(s: &str) -> bool {
    s == "-" || std::path::Path::new(s).exists()
}

pub fn decomposition(arg: &str) -> Result<DecompTree> {
    if !is_file_like(arg) {
        return Ok(arg.parse::<Fixture>()?.tree());
    }
    let t: DecompTree = read_json(arg, "decomposition")?;
    let diags = modeltree::validate(&t);
    if !diags.is_empty() {
        for d in &diags {
            eprintln!("{d}");
        }
        bail!("invalid decomposition in {arg}");
    }
    Ok(t)
}

pub fn link(arg: &str) -> Result<LinkPresentation> {
    if !is_file_like(arg) {
        return Ok(catalog(&arg.parse::<CatalogLink>()?)?);
    }
    let l: LinkPresentation = read_json(arg, "link")?;
    for w in l.diagnostics() {
        eprintln!("warning: {w}");
    }
    Ok(l)
}

pub fn grope(arg: &str) -> Result<GropeTree> {
    if let Some(g) = arg.strip_prefix("bare:") {
        let g: usize = g.parse().with_context(|| format!("bad genus in {arg}"))?;
        if g == 0 {
            bail!("genus ≥ 1 required");
        }
        return Ok(GropeTree::bare(g));
    }
    read_json(arg, "grope")
}

/// `model:B:L1,L2,...` builds a height-one model cell.
pub fn cell(arg: &str) -> Result<BingCellTree> {
    if let Some(spec) = arg.strip_prefix("model:") {
        let (b, links) = spec.split_once(':').unwrap_or((spec, ""));
        let b: usize = b
            .parse()
            .with_context(|| format!("bad boundary count in {arg}"))?;
        let links = links
            .split(',')
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<usize>()
                    .with_context(|| format!("bad link size {x:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(model_cell(b, &links)?);
    }
    read_json(arg, "cell")
}

pub fn plumbing(arg: &str) -> Result<PlumbingPattern> {
    let p: PlumbingPattern = read_json(arg, "plumbing pattern")?;
    Ok(PlumbingPattern {
        surfaces: p.surfaces,
        intersections: p
            .intersections
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect(),
    })
}

pub fn instance(arg: &str) -> Result<ABSliceInstance> {
    let raw: ABSliceInstance = read_json(arg, "instance")?;
    Ok(ABSliceInstance::new(raw.link, raw.decompositions)?)
}
