//! Reference computations sharing no code with the library. Words are signed
//! generator lists; polynomials are maps from index sequences to `i64`.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Poly = BTreeMap<Vec<u32>, i64>;

fn has_repeat(seq: &[u32]) -> bool {
    seq.iter()
        .enumerate()
        .any(|(i, x)| seq[i + 1..].contains(x))
}

/// Naive product, dropping every monomial with a repeated index.
pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().chain(mb).copied().collect();
            if !has_repeat(&m) {
                *out.entry(m).or_default() += ca * cb;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `x ↦ 1 + X`, `x⁻¹ ↦ 1 - X` (higher powers vanish).
pub fn letter(v: i32) -> Poly {
    let g = v.unsigned_abs();
    Poly::from([(vec![], 1), (vec![g], v.signum() as i64)])
}

/// Reduced expansion by multiplying letter images left to right.
pub fn expand(w: &[i32]) -> Poly {
    w.iter()
        .fold(Poly::from([(vec![], 1)]), |acc, &v| mul(&acc, &letter(v)))
}

/// Coefficient of `X_{s_1}…X_{s_k}` (distinct indices) by summing signs over
/// every matching subsequence of letters.
pub fn coefficient(w: &[i32], seq: &[u32]) -> i64 {
    // ways[j]: signed count of matches of seq[..j] in the prefix read so far
    let mut ways = vec![0i64; seq.len() + 1];
    ways[0] = 1;
    for &v in w {
        let g = v.unsigned_abs();
        for j in (0..seq.len()).rev() {
            if seq[j] == g {
                ways[j + 1] += ways[j] * v.signum() as i64;
            }
        }
    }
    ways[seq.len()]
}

/// Every sequence of distinct indices in `1..=n` of length `1..=max_len`.
pub fn distinct_sequences(n: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for g in 1..=n {
                if !s.contains(&g) {
                    let mut t: Vec<u32> = s.clone();
                    t.push(g);
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// `μ(i_1 … i_k j)` read off the `j`-th longitude.
pub fn mu(longitudes: &[Vec<i32>], seq: &[u32]) -> i64 {
    let (j, front) = seq.split_last().expect("nonempty");
    coefficient(&longitudes[*j as usize - 1], front)
}

/// Reduced free-group word, for comparing presentations.
pub fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &v in w {
        if out.last() == Some(&-v) {
            out.pop();
        } else {
            out.push(v);
        }
    }
    out
}
