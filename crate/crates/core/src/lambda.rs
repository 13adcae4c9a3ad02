//! The link-group invariant `I_λ` on model decompositions, with explicit
//! Bing-cell witnesses.
//!
//! For a stage owned by side `S` with pairs `(c_{i,1}, c_{i,2})`:
//!
//! * `S` wins iff every pair has a child that `S` wins. Surgering the surface
//!   along one winning curve per pair leaves a planar body with `1 + 2g`
//!   boundary circles, capped by two copies of each chosen child's cell. The
//!   copies meet at an unmarked vertex, so their intersections are allowed.
//! * Otherwise some pair has both children won by the other side `O`. The
//!   annulus over the Bing double of that pair's core, with the two child
//!   cells on its components, is a cell for `O`; the children meet at a
//!   marked vertex, matching the disjointness of the two handles.
//!
//! Exactly one side wins every tree, so `I_A + I_B = 1`.
//!
//! Ties are broken toward the lowest pair index and then the first child.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bingcell::{BingCellTree, CellShape};
use crate::error::Result;
use crate::modeltree::{ensure_valid, DecompTree, Side, TreePath};

/// Values of `I_λ` on the two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lambda {
    #[serde(rename = "iA")]
    pub i_a: u8,
    #[serde(rename = "iB")]
    pub i_b: u8,
}

impl Lambda {
    fn won_by(side: Side) -> Self {
        match side {
            Side::A => Lambda { i_a: 1, i_b: 0 },
            Side::B => Lambda { i_a: 0, i_b: 1 },
        }
    }

    pub fn get(self, side: Side) -> u8 {
        match side {
            Side::A => self.i_a,
            Side::B => self.i_b,
        }
    }

    /// The side with `I_λ = 1`, if exactly one.
    pub fn winner(self) -> Option<Side> {
        match (self.i_a, self.i_b) {
            (1, 0) => Some(Side::A),
            (0, 1) => Some(Side::B),
            _ => None,
        }
    }
}

/// Side whose attaching curve bounds a Bing cell. Assumes a valid tree.
pub(crate) fn winner(t: &DecompTree) -> Side {
    match t {
        DecompTree::Leaf { owner } => *owner,
        DecompTree::Stage { owner, pairs, .. } => {
            if pairs
                .iter()
                .all(|(x, y)| winner(x) == *owner || winner(y) == *owner)
            {
                *owner
            } else {
                owner.opposite()
            }
        }
    }
}

pub fn eval_lambda(t: &DecompTree) -> Result<Lambda> {
    ensure_valid(t)?;
    Ok(Lambda::won_by(winner(t)))
}

/// The side with `I_λ = 0`, i.e. the robust one.
pub fn robust_side(t: &DecompTree) -> Result<Side> {
    ensure_valid(t)?;
    Ok(winner(t).opposite())
}

/// How a witness was assembled at one stage.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "join", rename_all = "camelCase")]
pub enum Choice {
    /// The stage's owner lost: pair `pair` was Bing-doubled, both children
    /// joined at a marked vertex.
    Marked {
        path: TreePath,
        owner: Side,
        pair: usize,
    },
    /// The owner won: `children[i]` is the child chosen in pair `i`, doubled
    /// and joined at an unmarked body.
    Unmarked {
        path: TreePath,
        owner: Side,
        children: Vec<usize>,
    },
}

fn qualifying_pairs(
    pairs: &[(DecompTree, DecompTree)],
    side: Side,
) -> impl Iterator<Item = usize> + '_ {
    pairs
        .iter()
        .enumerate()
        .filter(move |(_, (x, y))| winner(x) == side && winner(y) == side)
        .map(|(i, _)| i)
}

fn winning_children(
    pair: &(DecompTree, DecompTree),
    side: Side,
) -> impl Iterator<Item = (usize, &DecompTree)> {
    [&pair.0, &pair.1]
        .into_iter()
        .enumerate()
        .filter(move |(_, c)| winner(c) == side)
}

fn build(t: &DecompTree, path: TreePath, log: &mut Vec<Choice>) -> CellShape {
    match t {
        DecompTree::Leaf { .. } => CellShape::disk(),
        DecompTree::Stage { owner, pairs, .. } => {
            let w = winner(t);
            if w != *owner {
                let pair = qualifying_pairs(pairs, w)
                    .next()
                    .expect("a losing owner has a pair won twice by the other side");
                log.push(Choice::Marked {
                    path: path.clone(),
                    owner: *owner,
                    pair,
                });
                let (x, y) = &pairs[pair];
                let cx = build(x, path.child(pair, 0), log);
                let cy = build(y, path.child(pair, 1), log);
                CellShape::Body(vec![CellShape::Link(vec![cx, cy])])
            } else {
                let picks: Vec<usize> = pairs
                    .iter()
                    .map(|p| {
                        winning_children(p, w)
                            .next()
                            .expect("a winning owner wins a child of every pair")
                            .0
                    })
                    .collect();
                log.push(Choice::Unmarked {
                    path: path.clone(),
                    owner: *owner,
                    children: picks.clone(),
                });
                let mut body = Vec::with_capacity(2 * pairs.len());
                for (i, (&c, p)) in picks.iter().zip(pairs).enumerate() {
                    let child = if c == 0 { &p.0 } else { &p.1 };
                    let sub = build(child, path.child(i, c), log);
                    body.push(sub.clone());
                    body.push(sub);
                }
                CellShape::Body(body)
            }
        }
    }
}

/// Everything the invariant says about one decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    #[serde(rename = "iA")]
    pub i_a: u8,
    #[serde(rename = "iB")]
    pub i_b: u8,
    #[serde(rename = "robust")]
    pub robust_side: Side,
    /// Cell bounded by the attaching curve of the side with `I_λ = 1`.
    pub witness: BingCellTree,
    #[serde(rename = "choices")]
    pub choice_log: Vec<Choice>,
}

impl SideReport {
    pub fn lambda(&self) -> Lambda {
        Lambda {
            i_a: self.i_a,
            i_b: self.i_b,
        }
    }
}

pub fn side_report(t: &DecompTree) -> Result<SideReport> {
    ensure_valid(t)?;
    let w = winner(t);
    let mut log = Vec::new();
    let shape = build(t, TreePath::default(), &mut log);
    let lambda = Lambda::won_by(w);
    Ok(SideReport {
        i_a: lambda.i_a,
        i_b: lambda.i_b,
        robust_side: w.opposite(),
        witness: BingCellTree::from_shape(&shape)?,
        choice_log: log,
    })
}

pub fn witness(t: &DecompTree) -> Result<BingCellTree> {
    Ok(side_report(t)?.witness)
}

type Enumerated = Vec<(CellShape, Vec<Choice>)>;

fn enumerate(t: &DecompTree, path: TreePath) -> Enumerated {
    match t {
        DecompTree::Leaf { .. } => vec![(CellShape::disk(), Vec::new())],
        DecompTree::Stage { owner, pairs, .. } => {
            let w = winner(t);
            let mut out = Vec::new();
            if w != *owner {
                for pair in qualifying_pairs(pairs, w) {
                    let (x, y) = &pairs[pair];
                    let xs = enumerate(x, path.child(pair, 0));
                    let ys = enumerate(y, path.child(pair, 1));
                    for (cx, lx) in &xs {
                        for (cy, ly) in &ys {
                            let mut log = vec![Choice::Marked {
                                path: path.clone(),
                                owner: *owner,
                                pair,
                            }];
                            log.extend(lx.iter().cloned());
                            log.extend(ly.iter().cloned());
                            out.push((
                                CellShape::Body(vec![CellShape::Link(vec![
                                    cx.clone(),
                                    cy.clone(),
                                ])]),
                                log,
                            ));
                        }
                    }
                }
            } else {
                // options[i]: (child index, cell, log) for pair i
                let options: Vec<Vec<(usize, CellShape, Vec<Choice>)>> = pairs
                    .iter()
                    .enumerate()
                    .map(|(i, p)| {
                        winning_children(p, w)
                            .flat_map(|(c, child)| {
                                enumerate(child, path.child(i, c))
                                    .into_iter()
                                    .map(move |(s, l)| (c, s, l))
                            })
                            .collect()
                    })
                    .collect();
                let mut combo = vec![0usize; options.len()];
                loop {
                    let picks: Vec<usize> =
                        combo.iter().zip(&options).map(|(&k, o)| o[k].0).collect();
                    let mut log = vec![Choice::Unmarked {
                        path: path.clone(),
                        owner: *owner,
                        children: picks,
                    }];
                    let mut body = Vec::new();
                    for (&k, o) in combo.iter().zip(&options) {
                        let (_, s, l) = &o[k];
                        body.push(s.clone());
                        body.push(s.clone());
                        log.extend(l.iter().cloned());
                    }
                    out.push((CellShape::Body(body), log));
                    // odometer with the first pair most significant
                    let mut pos = combo.len();
                    loop {
                        if pos == 0 {
                            return out;
                        }
                        pos -= 1;
                        combo[pos] += 1;
                        if combo[pos] < options[pos].len() {
                            break;
                        }
                        combo[pos] = 0;
                    }
                }
            }
            out
        }
    }
}

/// Every witness over every admissible choice, in tie-break order: the first
/// item is [`witness`]. Materializes the whole set; see [`witness_count`]
/// before calling on large trees.
pub fn all_witnesses(t: &DecompTree) -> Result<impl Iterator<Item = BingCellTree>> {
    Ok(all_witness_reports(t)?.into_iter().map(|(w, _)| w))
}

/// Like [`all_witnesses`], paired with each witness's choice log.
pub fn all_witness_reports(t: &DecompTree) -> Result<Vec<(BingCellTree, Vec<Choice>)>> {
    ensure_valid(t)?;
    enumerate(t, TreePath::default())
        .into_iter()
        .map(|(s, l)| Ok((BingCellTree::from_shape(&s)?, l)))
        .collect()
}

/// Number of distinct choice logs, without enumerating them.
pub fn witness_count(t: &DecompTree) -> Result<BigUint> {
    fn count(t: &DecompTree) -> BigUint {
        match t {
            DecompTree::Leaf { .. } => BigUint::one(),
            DecompTree::Stage { owner, pairs, .. } => {
                let w = winner(t);
                if w != *owner {
                    qualifying_pairs(pairs, w)
                        .map(|i| count(&pairs[i].0) * count(&pairs[i].1))
                        .fold(BigUint::zero(), |a, b| a + b)
                } else {
                    pairs
                        .iter()
                        .map(|p| {
                            winning_children(p, w)
                                .map(|(_, c)| count(c))
                                .fold(BigUint::zero(), |a, b| a + b)
                        })
                        .fold(BigUint::one(), |a, b| a * b)
                }
            }
        }
    }
    ensure_valid(t)?;
    Ok(count(t))
}
