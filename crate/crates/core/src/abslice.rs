//! Obstruction certificates: a link is not A-B slice through a given set of
//! model decompositions when the link is homotopically essential.
//!
//! Each decomposition has exactly one side whose attaching curve bounds a
//! Bing cell. Disjoint embeddings with the required boundary data would make
//! those curves a copy of the link bounding disjoint Bing cells, forcing it
//! to be homotopically trivial. The isotopy between the collection of curves
//! and the link is a geometric step recorded in the narrative, not computed.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bingcell::{height_of, validate_tree};
use crate::diag::Diagnostic;
use crate::error::{Error, Result};
use crate::lambda::{eval_lambda, side_report, SideReport};
use crate::linkhom::{
    essential_certificate, mu_distinct, parallel_copy, LinkPresentation, MuCertificate,
    TRIVIAL_REPORT,
};
use crate::modeltree::{self, DecompTree};
use crate::word::magnus_reduced;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABSliceInstance {
    pub link: LinkPresentation,
    pub decompositions: Vec<DecompTree>,
}

impl ABSliceInstance {
    pub fn new(link: LinkPresentation, decompositions: Vec<DecompTree>) -> Result<Self> {
        let inst = ABSliceInstance {
            link,
            decompositions,
        };
        inst.check()?;
        Ok(inst)
    }

    fn check(&self) -> Result<()> {
        if self.decompositions.len() != self.link.components() {
            return Err(Error::DecompositionCount {
                components: self.link.components(),
                decompositions: self.decompositions.len(),
            });
        }
        for t in &self.decompositions {
            modeltree::ensure_valid(t)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    Obstructed,
    Inconclusive,
}

impl Conclusion {
    /// Process exit status for scripting: 0 obstructed, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::Obstructed => 0,
            Conclusion::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ABSliceVerdict {
    pub essentialness: Option<MuCertificate>,
    pub per_decomposition: Vec<SideReport>,
    pub conclusion: Conclusion,
    pub narrative: Vec<String>,
    /// Components of the link with untwisted parallel copies added: one
    /// boundary region per piece `A_i`, `B_i`.
    pub doubled_link_components: usize,
}

pub fn check_obstruction(inst: &ABSliceInstance) -> Result<ABSliceVerdict> {
    inst.check()?;
    let essentialness = essential_certificate(&inst.link)?;
    let per_decomposition = inst
        .decompositions
        .iter()
        .map(side_report)
        .collect::<Result<Vec<_>>>()?;
    let doubled_link_components = parallel_copy(&inst.link).components();
    let conclusion = if essentialness.is_some() {
        Conclusion::Obstructed
    } else {
        Conclusion::Inconclusive
    };

    let n = inst.link.components();
    let mut narrative = Vec::new();
    match &essentialness {
        Some(c) => narrative.push(format!(
            "link is homotopically essential: {c} is a first non-vanishing invariant of order {}",
            c.order
        )),
        None => narrative.push(format!("link is {TRIVIAL_REPORT}")),
    }
    narrative.push(format!(
        "boundary data: {n} components plus untwisted parallel copies give {doubled_link_components} attaching regions"
    ));
    for (i, r) in per_decomposition.iter().enumerate() {
        let w = r.lambda().winner().expect("reports are complementary");
        narrative.push(format!(
            "decomposition {}: I_λ(A) = {}, I_λ(B) = {}; the attaching curve γ_{} of side {w} bounds a Bing cell of height {} ({} vertices); side {} is robust",
            i + 1,
            r.i_a,
            r.i_b,
            i + 1,
            height_of(&r.witness),
            r.witness.len(),
            r.robust_side
        ));
    }
    match conclusion {
        Conclusion::Obstructed => {
            narrative.push(format!(
                "since the attaching curves of the pieces form the link and its parallel copy, the curves (γ_1, ..., γ_{n}) are isotopic to the link (geometric step, cited)"
            ));
            narrative.push(
                "disjoint Bing cells bounded by the link's components would make it homotopically trivial, contradicting the certificate: the link is not A-B slice with these model decompositions"
                    .into(),
            );
        }
        Conclusion::Inconclusive => narrative.push(
            "no obstruction: without an essentialness certificate nothing is concluded, in particular not that the link is A-B slice"
                .into(),
        ),
    }

    Ok(ABSliceVerdict {
        essentialness,
        per_decomposition,
        conclusion,
        narrative,
        doubled_link_components,
    })
}

fn check_certificate(link: &LinkPresentation, c: &MuCertificate, out: &mut Vec<Diagnostic>) {
    let loc = "essentialness";
    if c.value.is_zero() {
        out.push(Diagnostic::new(loc, "certificate value is zero"));
    }
    if c.order != c.index_seq.len() {
        out.push(Diagnostic::new(
            loc,
            format!(
                "order {} does not match index sequence length {}",
                c.order,
                c.index_seq.len()
            ),
        ));
    }
    match mu_distinct(link, &c.index_seq) {
        Ok(v) if v == c.value => {}
        Ok(v) => out.push(Diagnostic::new(
            loc,
            format!("recomputed value {v} differs from certified {}", c.value),
        )),
        Err(e) => {
            out.push(Diagnostic::new(loc, e.to_string()));
            return;
        }
    }
    if !c.first_non_vanishing {
        out.push(Diagnostic::new(
            loc,
            "certificate is not flagged first non-vanishing",
        ));
        return;
    }
    // every distinct-index invariant of lower order must vanish
    for (jx, l) in link.longitudes().iter().enumerate() {
        let Ok(e) = magnus_reduced(l, link.components()) else {
            out.push(Diagnostic::new(loc, "longitude does not expand"));
            return;
        };
        let j = crate::word::GenIndex::new(jx as u32 + 1).expect("nonzero");
        let lower = e.terms().find(|(m, v)| {
            m.degree() >= 1 && m.degree() + 1 < c.order && !m.contains(j) && **v != BigInt::zero()
        });
        if let Some((m, _)) = lower {
            out.push(Diagnostic::new(
                loc,
                format!(
                    "lower-order invariant {m} of longitude {} is nonzero",
                    jx + 1
                ),
            ));
        }
    }
}

fn check_report(t: &DecompTree, r: &SideReport, i: usize, out: &mut Vec<Diagnostic>) {
    let loc = format!("decomposition {}", i + 1);
    if u16::from(r.i_a) + u16::from(r.i_b) != 1 {
        out.push(Diagnostic::new(
            &loc,
            format!("I_λ(A) + I_λ(B) = {} + {}", r.i_a, r.i_b),
        ));
    }
    match eval_lambda(t) {
        Ok(l) if l == r.lambda() => {}
        Ok(l) => out.push(Diagnostic::new(
            &loc,
            format!(
                "reported ({}, {}) but the tree gives ({}, {})",
                r.i_a, r.i_b, l.i_a, l.i_b
            ),
        )),
        Err(e) => out.push(Diagnostic::new(&loc, e.to_string())),
    }
    if r.lambda().get(r.robust_side) != 0 {
        out.push(Diagnostic::new(
            &loc,
            format!("robust side {} has I_λ = 1", r.robust_side),
        ));
    }
    for d in validate_tree(&r.witness) {
        out.push(Diagnostic::new(&loc, format!("witness {d}")));
    }
    if height_of(&r.witness) > modeltree::height(t) {
        out.push(Diagnostic::new(
            &loc,
            "witness taller than the decomposition",
        ));
    }
}

/// Re-checks every claim of a verdict against the instance.
pub fn verify_details(v: &ABSliceVerdict, inst: &ABSliceInstance) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if let Err(e) = inst.check() {
        out.push(Diagnostic::new("instance", e.to_string()));
        return out;
    }
    if v.per_decomposition.len() != inst.decompositions.len() {
        out.push(Diagnostic::new(
            "perDecomposition",
            format!(
                "{} reports for {} decompositions",
                v.per_decomposition.len(),
                inst.decompositions.len()
            ),
        ));
    }
    for (i, (t, r)) in inst
        .decompositions
        .iter()
        .zip(&v.per_decomposition)
        .enumerate()
    {
        check_report(t, r, i, &mut out);
    }
    if let Some(c) = &v.essentialness {
        check_certificate(&inst.link, c, &mut out);
    }
    let expected = if v.essentialness.is_some() {
        Conclusion::Obstructed
    } else {
        Conclusion::Inconclusive
    };
    if v.conclusion != expected {
        out.push(Diagnostic::new(
            "conclusion",
            format!("{:?} does not follow from the certificate", v.conclusion),
        ));
    }
    if v.doubled_link_components != 2 * inst.link.components() {
        out.push(Diagnostic::new(
            "doubledLinkComponents",
            format!("expected {}", 2 * inst.link.components()),
        ));
    }
    out
}

pub fn verify_verdict(v: &ABSliceVerdict, inst: &ABSliceInstance) -> bool {
    verify_details(v, inst).is_empty()
}
