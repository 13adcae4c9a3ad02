//! Free-group words on meridian generators and the reduced Magnus expansion.
//!
//! The reduced Magnus algebra is the quotient of the noncommutative integer
//! polynomial ring in `X_1..X_n` by the two-sided ideal spanned by monomials
//! with a repeated index. It is finite-dimensional, so all arithmetic here is
//! exact: nothing is truncated except the repeated-index monomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest generator count the reduced algebra accepts.
pub const MAX_GENERATORS: usize = 128;

/// 1-based index of a link component (and of its meridian).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct GenIndex(u32);

impl GenIndex {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(Error::ZeroGenerator);
        }
        Ok(GenIndex(value))
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn ix(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) fn from_ix(ix: usize) -> Self {
        GenIndex(ix as u32 + 1)
    }

    pub fn check(self, n: usize) -> Result<Self> {
        if self.0 as usize > n {
            return Err(Error::GeneratorOutOfRange { gen: self.0, n });
        }
        Ok(self)
    }
}

impl TryFrom<u32> for GenIndex {
    type Error = Error;
    fn try_from(value: u32) -> Result<Self> {
        GenIndex::new(value)
    }
}

impl From<GenIndex> for u32 {
    fn from(g: GenIndex) -> u32 {
        g.0
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenIndex,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: GenIndex, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    /// `+i` for `m_i`, `-i` for `m_i^{-1}`.
    pub fn from_signed(v: i64) -> Result<Self> {
        let abs = u32::try_from(v.unsigned_abs()).map_err(|_| Error::GeneratorOutOfRange {
            gen: u32::MAX,
            n: u32::MAX as usize,
        })?;
        Ok(Letter::new(GenIndex::new(abs)?, v < 0))
    }

    pub fn to_signed(self) -> i64 {
        let v = i64::from(self.gen.0);
        if self.inverse {
            -v
        } else {
            v
        }
    }

    pub fn inv(self) -> Self {
        Letter::new(self.gen, !self.inverse)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word in the free group on the meridians, stored letter by letter.
///
/// Words are not required to be reduced; every operation that builds a new
/// word returns its freely reduced form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    pub fn generator(gen: GenIndex) -> Self {
        FreeWord {
            letters: vec![Letter::new(gen, false)],
        }
    }

    pub fn from_signed(values: &[i64]) -> Result<Self> {
        let letters = values
            .iter()
            .map(|&v| Letter::from_signed(v))
            .collect::<Result<_>>()?;
        Ok(FreeWord { letters })
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Freely reduced form, computed with a single stack pass.
    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        FreeWord { letters: out }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Reduced product `self · rhs`.
    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        FreeWord { letters }.reduce()
    }

    /// Reduced `w · self · w⁻¹`.
    pub fn conjugate_by(&self, w: &FreeWord) -> FreeWord {
        w.mul(self).mul(&w.inverse())
    }

    /// Sum of the exponents of `gen`.
    pub fn exponent_sum(&self, gen: GenIndex) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    pub fn max_generator(&self) -> Option<GenIndex> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Homomorphic image under `images`; generators without an image are
    /// fixed.
    pub fn substitute(&self, images: &BTreeMap<GenIndex, FreeWord>) -> FreeWord {
        let mut letters = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            match images.get(&l.gen) {
                Some(img) if l.inverse => letters.extend(img.inverse().letters),
                Some(img) => letters.extend_from_slice(&img.letters),
                None => letters.push(*l),
            }
        }
        FreeWord { letters }.reduce()
    }
}

impl TryFrom<Vec<i64>> for FreeWord {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        FreeWord::from_signed(&v)
    }
}

impl From<FreeWord> for Vec<i64> {
    fn from(w: FreeWord) -> Vec<i64> {
        w.to_signed()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l.inverse {
                write!(f, "m{}^-1", l.gen)?;
            } else {
                write!(f, "m{}", l.gen)?;
            }
        }
        Ok(())
    }
}

/// Reduced commutator `a b a⁻¹ b⁻¹`.
pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// A square-free monomial `X_{i_1} ... X_{i_k}` (indices pairwise distinct).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u8; 8]>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn new(indices: &[GenIndex]) -> Result<Self> {
        let mut seen = 0u128;
        let mut out = SmallVec::new();
        for g in indices {
            let ix = g.ix();
            if ix >= MAX_GENERATORS {
                return Err(Error::TooManyGenerators {
                    n: ix + 1,
                    max: MAX_GENERATORS,
                });
            }
            if seen & (1 << ix) != 0 {
                return Err(Error::RepeatedIndex(
                    indices.iter().map(|g| g.get()).collect(),
                ));
            }
            seen |= 1 << ix;
            out.push(ix as u8);
        }
        Ok(Monomial(out))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = GenIndex> + '_ {
        self.0.iter().map(|&ix| GenIndex::from_ix(ix as usize))
    }

    pub fn contains(&self, g: GenIndex) -> bool {
        self.0.iter().any(|&ix| ix as usize == g.ix())
    }

    fn support(&self) -> u128 {
        self.0.iter().fold(0u128, |m, &ix| m | (1 << ix))
    }

    fn concat(&self, rhs: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    /// Graded order: by degree, then lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for g in self.indices() {
            write!(f, "X{g}")?;
        }
        Ok(())
    }
}

/// Element of the reduced Magnus algebra with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReducedPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ReducedPoly {
    pub fn zero() -> Self {
        ReducedPoly::default()
    }

    pub fn one() -> Self {
        ReducedPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = ReducedPoly::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    /// Builds a polynomial from `(indices, coefficient)` pairs, summing
    /// duplicates.
    pub fn from_terms<I, C>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = ReducedPoly::zero();
        for (idx, c) in terms {
            let gens = idx
                .into_iter()
                .map(GenIndex::new)
                .collect::<Result<Vec<_>>>()?;
            p.add_term(Monomial::new(&gens)?, c.into());
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &ReducedPoly) -> ReducedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Product in the reduced algebra: monomials with a repeated index vanish.
    pub fn mul(&self, rhs: &ReducedPoly) -> ReducedPoly {
        // Group the right factor by support so that overlapping supports are
        // rejected once per bucket rather than once per term.
        let mut buckets: HashMap<u128, Vec<(&Monomial, &BigInt)>> = HashMap::new();
        for (m, c) in &rhs.terms {
            buckets.entry(m.support()).or_default().push((m, c));
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (a, ca) in &self.terms {
            let sa = a.support();
            for (sb, list) in &buckets {
                if sa & sb != 0 {
                    continue;
                }
                for (b, cb) in list {
                    *acc.entry(a.concat(b)).or_default() += ca * *cb;
                }
            }
        }
        ReducedPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// In-place right multiplication by `1 + X_g` (or `1 - X_g` when
    /// `inverse`).
    fn mul_letter(&mut self, l: Letter) {
        let gen_bit = 1u128 << l.gen.ix();
        let mut extra = Vec::new();
        for (m, c) in &self.terms {
            if m.support() & gen_bit == 0 {
                let mut next = m.0.clone();
                next.push(l.gen.ix() as u8);
                let c = if l.inverse { -c.clone() } else { c.clone() };
                extra.push((Monomial(next), c));
            }
        }
        for (m, c) in extra {
            self.add_term(m, c);
        }
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}{m}")?;
            }
        }
        Ok(())
    }
}

/// Reduced Magnus expansion `m_i ↦ 1 + X_i`, `m_i⁻¹ ↦ 1 - X_i`.
pub fn magnus_reduced(w: &FreeWord, n: usize) -> Result<ReducedPoly> {
    if n > MAX_GENERATORS {
        return Err(Error::TooManyGenerators {
            n,
            max: MAX_GENERATORS,
        });
    }
    let mut p = ReducedPoly::one();
    for &l in w.letters() {
        l.gen.check(n)?;
        p.mul_letter(l);
    }
    Ok(p)
}
