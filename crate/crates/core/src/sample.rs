//! Seeded random inputs for the randomized checks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bingcell::CellShape;
use crate::grope::GropeTree;
use crate::modeltree::{DecompTree, Side};
use crate::word::{FreeWord, GenIndex, Letter};

/// Environment variable overriding the default seed of [`rng`].
pub const SEED_VAR: &str = "ABSLICE_SEED";

/// Seed from `ABSLICE_SEED` if set and numeric, otherwise `default`.
pub fn seed(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(default: u64) -> StdRng {
    StdRng::seed_from_u64(seed(default))
}

fn side<R: Rng>(rng: &mut R) -> Side {
    if rng.gen() {
        Side::A
    } else {
        Side::B
    }
}

// Stage probability 0.9 / (depth + 1).
fn stage_here<R: Rng>(rng: &mut R, depth: usize, max_height: usize) -> bool {
    depth < max_height && rng.gen_bool(0.9 / (depth + 1) as f64)
}

/// Valid decomposition tree of height at most `max_height` with stage genus
/// in `1..=max_genus`.
pub fn decomp_tree<R: Rng>(rng: &mut R, max_height: usize, max_genus: usize) -> DecompTree {
    fn go<R: Rng>(rng: &mut R, depth: usize, h: usize, g: usize) -> DecompTree {
        if !stage_here(rng, depth, h) {
            return DecompTree::leaf(side(rng));
        }
        let owner = side(rng);
        let genus = rng.gen_range(1..=g);
        let pairs = (0..genus)
            .map(|_| (go(rng, depth + 1, h, g), go(rng, depth + 1, h, g)))
            .collect();
        DecompTree::stage(owner, pairs)
    }
    go(rng, 0, max_height, max_genus.max(1))
}

/// Decomposition whose `side` is a grope: every stage owned by `side`, every
/// leaf by the other side. Always at least one stage.
pub fn pure_grope_tree<R: Rng>(
    rng: &mut R,
    side: Side,
    max_height: usize,
    max_genus: usize,
) -> DecompTree {
    fn go<R: Rng>(rng: &mut R, side: Side, depth: usize, h: usize, g: usize) -> DecompTree {
        if depth > 0 && !stage_here(rng, depth, h) {
            return DecompTree::leaf(side.opposite());
        }
        let genus = rng.gen_range(1..=g);
        let pairs = (0..genus)
            .map(|_| {
                (
                    go(rng, side, depth + 1, h, g),
                    go(rng, side, depth + 1, h, g),
                )
            })
            .collect();
        DecompTree::stage(side, pairs)
    }
    go(rng, side, 0, max_height.max(1), max_genus.max(1))
}

/// Grope of at most `max_height` surface levels; the top is always a surface.
pub fn grope<R: Rng>(
    rng: &mut R,
    max_height: usize,
    max_genus: usize,
    max_copies: usize,
) -> GropeTree {
    fn go<R: Rng>(rng: &mut R, depth: usize, h: usize, g: usize, c: usize) -> GropeTree {
        if depth > 0 && !stage_here(rng, depth, h) {
            return GropeTree::Circle;
        }
        let genus = rng.gen_range(1..=g);
        GropeTree::Surface {
            genus,
            copies: rng.gen_range(1..=c),
            pairs: (0..genus)
                .map(|_| (go(rng, depth + 1, h, g, c), go(rng, depth + 1, h, g, c)))
                .collect(),
        }
    }
    go(
        rng,
        0,
        max_height.max(1),
        max_genus.max(1),
        max_copies.max(1),
    )
}

/// Shape of a valid model cell with at most `max_height` marked levels.
/// Links have 2 or 4 components.
pub fn cell_shape<R: Rng>(rng: &mut R, max_height: usize) -> CellShape {
    fn body<R: Rng>(rng: &mut R, depth: usize, h: usize) -> CellShape {
        if depth >= h {
            return CellShape::disk();
        }
        let links = rng.gen_range(1..=3);
        CellShape::Body(
            (0..links)
                .map(|_| {
                    let k = if rng.gen_bool(0.8) { 2 } else { 4 };
                    CellShape::Link(
                        (0..k)
                            .map(|_| {
                                if rng.gen_bool(0.5 / (depth + 1) as f64) {
                                    body(rng, depth + 1, h)
                                } else {
                                    CellShape::Handle
                                }
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
    body(rng, 0, max_height)
}

/// Unreduced word of length at most `max_len` in generators `1..=n`.
pub fn word<R: Rng>(rng: &mut R, n: u32, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    FreeWord::from_letters(
        (0..len)
            .map(|_| Letter {
                gen: GenIndex::new(rng.gen_range(1..=n)).expect("n ≥ 1"),
                inverse: rng.gen(),
            })
            .collect(),
    )
}
