//! Link presentations by longitudes, distinct-index Milnor invariants and
//! Bing doubling.
//!
//! A link with `n` components is recorded by its longitudes `l_1..l_n`, each a
//! word in the meridians `m_1..m_n`. The invariant `μ(i_1 ... i_k j)` is the
//! coefficient of `X_{i_1} ... X_{i_k}` in the reduced Magnus expansion of
//! `l_j`. Only distinct-index invariants are computed; for those, a nonzero
//! value at the first non-vanishing order obstructs homotopy triviality, and
//! vanishing of all of them through order `n` characterizes homotopically
//! trivial links (Milnor). That completeness is classical and is not
//! re-derived here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intser;
use crate::word::{commutator, magnus_reduced, FreeWord, GenIndex, Monomial, ReducedPoly};

/// Wording used when no essentialness certificate exists.
pub const TRIVIAL_REPORT: &str = "homotopically trivial (distinct-index μ̄ complete, Milnor)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct LinkPresentation {
    n: usize,
    longitudes: Vec<FreeWord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
}

#[derive(Deserialize)]
struct RawPresentation {
    n: usize,
    longitudes: Vec<FreeWord>,
    #[serde(default)]
    labels: Vec<String>,
}

impl TryFrom<RawPresentation> for LinkPresentation {
    type Error = Error;
    fn try_from(raw: RawPresentation) -> Result<Self> {
        LinkPresentation::with_labels(raw.n, raw.longitudes, raw.labels)
    }
}

impl LinkPresentation {
    pub fn new(n: usize, longitudes: Vec<FreeWord>) -> Result<Self> {
        LinkPresentation::with_labels(n, longitudes, Vec::new())
    }

    /// `labels` is either empty or has one entry per component.
    pub fn with_labels(n: usize, longitudes: Vec<FreeWord>, labels: Vec<String>) -> Result<Self> {
        if longitudes.len() != n {
            return Err(Error::LongitudeCount {
                declared: n,
                found: longitudes.len(),
            });
        }
        if !labels.is_empty() && labels.len() != n {
            return Err(Error::LabelCount {
                labels: labels.len(),
                n,
            });
        }
        for l in &longitudes {
            if let Some(g) = l.max_generator() {
                g.check(n)?;
            }
        }
        Ok(LinkPresentation {
            n,
            longitudes,
            labels,
        })
    }

    pub fn components(&self) -> usize {
        self.n
    }

    pub fn longitudes(&self) -> &[FreeWord] {
        &self.longitudes
    }

    pub fn longitude(&self, i: GenIndex) -> Result<&FreeWord> {
        i.check(self.n)?;
        Ok(&self.longitudes[i.ix()])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Non-fatal problems with the presentation, currently only an asymmetric
    /// linking matrix.
    pub fn diagnostics(&self) -> Vec<String> {
        let lk = linking_matrix(self);
        let mut out = Vec::new();
        for (i, row) in lk.iter().enumerate() {
            for (j, &x) in row.iter().enumerate().skip(i + 1) {
                if x != lk[j][i] {
                    out.push(format!(
                        "linking matrix not symmetric: lk({},{}) = {} but lk({},{}) = {}",
                        i + 1,
                        j + 1,
                        x,
                        j + 1,
                        i + 1,
                        lk[j][i]
                    ));
                }
            }
        }
        out
    }

    /// Relabels component `i` as `perm[i-1]`, rewriting every longitude.
    pub fn permute(&self, perm: &[GenIndex]) -> Result<LinkPresentation> {
        if perm.len() != self.n {
            return Err(Error::MalformedSchedule(format!(
                "permutation of length {} for {} components",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for p in perm {
            p.check(self.n)?;
            if std::mem::replace(&mut seen[p.ix()], true) {
                return Err(Error::RepeatedIndex(perm.iter().map(|g| g.get()).collect()));
            }
        }
        let images: BTreeMap<GenIndex, FreeWord> = perm
            .iter()
            .enumerate()
            .map(|(ix, &p)| (GenIndex::from_ix(ix), FreeWord::generator(p)))
            .collect();
        let mut longitudes = vec![FreeWord::identity(); self.n];
        let mut labels = vec![String::new(); self.labels.len()];
        for (ix, &p) in perm.iter().enumerate() {
            longitudes[p.ix()] = self.longitudes[ix].substitute(&images);
            if !self.labels.is_empty() {
                labels[p.ix()] = self.labels[ix].clone();
            }
        }
        LinkPresentation::with_labels(self.n, longitudes, labels)
    }

    /// Replaces longitude `i` by `w · l_i · w⁻¹`.
    pub fn conjugate_longitude(&self, i: GenIndex, w: &FreeWord) -> Result<LinkPresentation> {
        i.check(self.n)?;
        let mut out = self.clone();
        out.longitudes[i.ix()] = self.longitudes[i.ix()].conjugate_by(w);
        if let Some(g) = w.max_generator() {
            g.check(self.n)?;
        }
        Ok(out)
    }
}

/// Named links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogLink {
    Unlink(usize),
    Hopf,
    Borromean,
    /// Bing doubling applied to the Hopf link, one component index per step.
    BingTower(Vec<u32>),
}

impl FromStr for CatalogLink {
    type Err = Error;

    /// Accepts `unlink:N`, `unlink(N)`, `hopf`, `borromean`, and
    /// `bing:i,j,...` / `bingtower:i,j,...`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (head, arg) = match lower.split_once(':') {
            Some((h, a)) => (h.to_string(), Some(a.to_string())),
            None => match lower.strip_suffix(')').and_then(|x| x.split_once('(')) {
                Some((h, a)) => (h.to_string(), Some(a.to_string())),
                None => (lower.clone(), None),
            },
        };
        match (head.as_str(), arg) {
            ("hopf", None) => Ok(CatalogLink::Hopf),
            ("borromean", None) => Ok(CatalogLink::Borromean),
            ("unlink", Some(a)) => a
                .trim()
                .parse()
                .map(CatalogLink::Unlink)
                .map_err(|_| Error::UnknownLink(s.to_string())),
            ("bing" | "bingtower", Some(a)) => {
                let steps = a
                    .split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| {
                        x.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::MalformedSchedule(format!("bad step {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CatalogLink::BingTower(steps))
            }
            _ => Err(Error::UnknownLink(s.to_string())),
        }
    }
}

impl fmt::Display for CatalogLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogLink::Unlink(n) => write!(f, "unlink:{n}"),
            CatalogLink::Hopf => write!(f, "hopf"),
            CatalogLink::Borromean => write!(f, "borromean"),
            CatalogLink::BingTower(steps) => {
                let s: Vec<String> = steps.iter().map(|x| x.to_string()).collect();
                write!(f, "bing:{}", s.join(","))
            }
        }
    }
}

fn gen(i: u32) -> GenIndex {
    GenIndex::new(i).expect("catalog indices are nonzero")
}

pub fn catalog(name: &CatalogLink) -> Result<LinkPresentation> {
    match name {
        CatalogLink::Unlink(n) => LinkPresentation::new(*n, vec![FreeWord::identity(); *n]),
        CatalogLink::Hopf => LinkPresentation::new(
            2,
            vec![FreeWord::generator(gen(2)), FreeWord::generator(gen(1))],
        ),
        CatalogLink::Borromean => {
            let m = |i| FreeWord::generator(gen(i));
            LinkPresentation::new(
                3,
                vec![
                    commutator(&m(2), &m(3)),
                    commutator(&m(3), &m(1)),
                    commutator(&m(1), &m(2)),
                ],
            )
        }
        CatalogLink::BingTower(steps) => {
            let mut link = catalog(&CatalogLink::Hopf)?;
            for (k, &step) in steps.iter().enumerate() {
                let i = GenIndex::new(step)
                    .and_then(|i| i.check(link.n))
                    .map_err(|_| {
                        Error::MalformedSchedule(format!(
                            "step {} doubles component {step} of a {}-component link",
                            k + 1,
                            link.n
                        ))
                    })?;
                link = bing_double(&link, i)?;
            }
            Ok(link)
        }
    }
}

/// Exponent sum of `m_j` in `l_i` at `(i, j)`, zero on the diagonal.
pub fn linking_matrix(link: &LinkPresentation) -> Vec<Vec<i64>> {
    (0..link.n)
        .map(|i| {
            (0..link.n)
                .map(|j| {
                    if i == j {
                        0
                    } else {
                        link.longitudes[i].exponent_sum(GenIndex::from_ix(j))
                    }
                })
                .collect()
        })
        .collect()
}

fn check_index_sequence(link: &LinkPresentation, seq: &[GenIndex]) -> Result<()> {
    if seq.len() < 2 {
        return Err(Error::IndexSequenceTooShort(seq.len()));
    }
    for g in seq {
        g.check(link.n)?;
    }
    let mut sorted = seq.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedIndex(seq.iter().map(|g| g.get()).collect()));
    }
    Ok(())
}

/// Raw distinct-index invariant `μ(i_1 ... i_k j)`: the coefficient of
/// `X_{i_1} ... X_{i_k}` in the expansion of `l_j`.
pub fn mu_distinct(link: &LinkPresentation, seq: &[GenIndex]) -> Result<BigInt> {
    check_index_sequence(link, seq)?;
    let (last, head) = seq.split_last().expect("length checked");
    let expansion = magnus_reduced(&link.longitudes[last.ix()], link.n)?;
    Ok(expansion.coefficient(&Monomial::new(head)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MuCertificate {
    pub index_seq: Vec<GenIndex>,
    #[serde(with = "intser")]
    pub value: BigInt,
    pub order: usize,
    pub first_non_vanishing: bool,
}

impl fmt::Display for MuCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index_seq.iter().map(|g| g.to_string()).collect();
        write!(f, "μ({}) = {}", idx.join(","), self.value)
    }
}

fn expansions(link: &LinkPresentation) -> Result<Vec<ReducedPoly>> {
    link.longitudes
        .iter()
        .map(|l| magnus_reduced(l, link.n))
        .collect()
}

/// All nonzero distinct-index invariants of the lowest order at which any is
/// nonzero, in lexicographic order of index sequence. `None` when every
/// distinct-index invariant through order `n` vanishes.
pub fn first_non_vanishing_mu(link: &LinkPresentation) -> Result<Option<Vec<MuCertificate>>> {
    let exps = expansions(link)?;
    for order in 2..=link.n {
        let mut certs = Vec::new();
        for (jx, e) in exps.iter().enumerate() {
            let j = GenIndex::from_ix(jx);
            for (m, c) in e.terms() {
                if m.degree() + 1 != order || m.contains(j) || c.is_zero() {
                    continue;
                }
                let mut index_seq: Vec<GenIndex> = m.indices().collect();
                index_seq.push(j);
                certs.push(MuCertificate {
                    index_seq,
                    value: c.clone(),
                    order,
                    first_non_vanishing: true,
                });
            }
        }
        if !certs.is_empty() {
            certs.sort_by(|a, b| a.index_seq.cmp(&b.index_seq));
            return Ok(Some(certs));
        }
    }
    Ok(None)
}

/// A certificate that the link is homotopically essential, if one exists:
/// the first (lexicographic) first-non-vanishing invariant, preferring
/// values of absolute value one.
pub fn essential_certificate(link: &LinkPresentation) -> Result<Option<MuCertificate>> {
    Ok(first_non_vanishing_mu(link)?.and_then(|certs| {
        let unit = certs.iter().position(|c| c.value.abs() == BigInt::from(1));
        let pick = unit.unwrap_or(0);
        certs.into_iter().nth(pick)
    }))
}

/// Replaces component `i` by its untwisted Bing double.
///
/// The new components take indices `i` and `n + 1`. In every other longitude
/// the old meridian `m_i` becomes the commutator `[m_i, m_{n+1}]`, and the
/// two new longitudes are `[m_{n+1}, l_i]` and `[l_i, m_i]`, with `l_i` the
/// old longitude after the same substitution. With this convention doubling
/// a Hopf component gives exactly the Borromean presentation.
pub fn bing_double(link: &LinkPresentation, i: GenIndex) -> Result<LinkPresentation> {
    i.check(link.n)?;
    let n = link.n;
    let partner = GenIndex::from_ix(n);
    let images = BTreeMap::from([(
        i,
        commutator(&FreeWord::generator(i), &FreeWord::generator(partner)),
    )]);
    let mut longitudes: Vec<FreeWord> = link
        .longitudes
        .iter()
        .map(|l| l.substitute(&images))
        .collect();
    let core = longitudes[i.ix()].clone();
    longitudes[i.ix()] = commutator(&FreeWord::generator(partner), &core);
    longitudes.push(commutator(&core, &FreeWord::generator(i)));
    let labels = if link.labels.is_empty() {
        Vec::new()
    } else {
        let mut labels = link.labels.clone();
        let base = labels[i.ix()].clone();
        labels[i.ix()] = format!("{base}.0");
        labels.push(format!("{base}.1"));
        labels
    };
    LinkPresentation::with_labels(n + 1, longitudes, labels)
}

/// Homotopy-level model of `D(L)`: component `i` keeps index `i` and its
/// untwisted parallel copy gets index `n + i`. Both receive `l_i` with every
/// `m_j` followed by `m_{n+j}`. A longitude free of `m_i` stays free of
/// `m_{n+i}`, so a component and its copy have linking number zero.
pub fn parallel_copy(link: &LinkPresentation) -> LinkPresentation {
    let n = link.n;
    let images: BTreeMap<GenIndex, FreeWord> = (0..n)
        .map(|jx| {
            let m = FreeWord::generator(GenIndex::from_ix(jx));
            let copy = FreeWord::generator(GenIndex::from_ix(n + jx));
            (GenIndex::from_ix(jx), m.mul(&copy))
        })
        .collect();
    let doubled: Vec<FreeWord> = link
        .longitudes
        .iter()
        .map(|l| l.substitute(&images))
        .collect();
    let mut longitudes = doubled.clone();
    longitudes.extend(doubled);
    let labels = if link.labels.is_empty() {
        Vec::new()
    } else {
        let mut labels = link.labels.clone();
        labels.extend(link.labels.iter().map(|l| format!("{l}'")));
        labels
    };
    LinkPresentation::with_labels(2 * n, longitudes, labels)
        .expect("parallel copy stays within 2n generators")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32) -> GenIndex {
        GenIndex::new(i).unwrap()
    }

    fn seq(v: &[u32]) -> Vec<GenIndex> {
        v.iter().map(|&i| g(i)).collect()
    }

    fn cat(s: &str) -> LinkPresentation {
        catalog(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn catalog_parse() {
        assert_eq!(
            "unlink:3".parse::<CatalogLink>().unwrap(),
            CatalogLink::Unlink(3)
        );
        assert_eq!(
            "unlink(3)".parse::<CatalogLink>().unwrap(),
            CatalogLink::Unlink(3)
        );
        assert_eq!("Hopf".parse::<CatalogLink>().unwrap(), CatalogLink::Hopf);
        assert_eq!(
            "bing:2,3".parse::<CatalogLink>().unwrap(),
            CatalogLink::BingTower(vec![2, 3])
        );
        assert!("trefoil".parse::<CatalogLink>().is_err());
        assert!("bing:2,x".parse::<CatalogLink>().is_err());
    }

    #[test]
    fn catalog_contents() {
        assert!(cat("unlink:3").longitudes().iter().all(|l| l.is_empty()));
        let hopf = cat("hopf");
        assert_eq!(hopf.longitudes()[0], FreeWord::from_signed(&[2]).unwrap());
        assert_eq!(hopf.longitudes()[1], FreeWord::from_signed(&[1]).unwrap());
        let bor = cat("borromean");
        assert_eq!(
            bor.longitudes()[2],
            FreeWord::from_signed(&[1, 2, -1, -2]).unwrap()
        );
    }

    #[test]
    fn malformed_schedule() {
        assert!(matches!(
            catalog(&CatalogLink::BingTower(vec![2, 7])),
            Err(Error::MalformedSchedule(_))
        ));
        assert!(matches!(
            catalog(&CatalogLink::BingTower(vec![0])),
            Err(Error::MalformedSchedule(_))
        ));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(
            mu_distinct(&cat("unlink:3"), &seq(&[1, 2, 3])).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            mu_distinct(&cat("hopf"), &seq(&[2, 1])).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            mu_distinct(&cat("borromean"), &seq(&[1, 2, 3]))
                .unwrap()
                .abs(),
            BigInt::from(1)
        );
    }

    #[test]
    fn mu_errors() {
        let bor = cat("borromean");
        assert!(matches!(
            mu_distinct(&bor, &seq(&[1, 1, 3])),
            Err(Error::RepeatedIndex(_))
        ));
        assert!(matches!(
            mu_distinct(&bor, &seq(&[1, 4])),
            Err(Error::GeneratorOutOfRange { .. })
        ));
        assert_eq!(
            mu_distinct(&bor, &seq(&[1])),
            Err(Error::IndexSequenceTooShort(1))
        );
    }

    #[test]
    fn first_non_vanishing_examples() {
        assert_eq!(first_non_vanishing_mu(&cat("unlink:4")).unwrap(), None);

        let hopf = first_non_vanishing_mu(&cat("hopf")).unwrap().unwrap();
        let got: Vec<_> = hopf
            .iter()
            .map(|c| (c.index_seq.clone(), c.value.clone(), c.order))
            .collect();
        assert_eq!(
            got,
            vec![
                (seq(&[1, 2]), BigInt::from(1), 2),
                (seq(&[2, 1]), BigInt::from(1), 2)
            ]
        );

        let bor = first_non_vanishing_mu(&cat("borromean")).unwrap().unwrap();
        assert_eq!(bor.len(), 6);
        assert!(bor
            .iter()
            .all(|c| c.order == 3 && c.value.abs() == BigInt::from(1)));
    }

    #[test]
    fn essential_examples() {
        let c = essential_certificate(&cat("borromean")).unwrap().unwrap();
        assert_eq!(c.value.abs(), BigInt::from(1));
        assert!(c.first_non_vanishing);
        assert_eq!(essential_certificate(&cat("unlink:3")).unwrap(), None);
        let c = essential_certificate(&cat("bing:2")).unwrap().unwrap();
        assert_eq!(c.order, 3);
    }

    #[test]
    fn bing_double_of_hopf_is_borromean() {
        assert_eq!(bing_double(&cat("hopf"), g(2)).unwrap(), cat("borromean"));
    }

    #[test]
    fn bing_double_of_unlink_is_trivial() {
        let d = bing_double(&cat("unlink:2"), g(1)).unwrap();
        assert_eq!(d.components(), 3);
        assert_eq!(first_non_vanishing_mu(&d).unwrap(), None);
    }

    #[test]
    fn iterated_double_order_four() {
        let d = cat("bing:2,3");
        assert_eq!(d.components(), 4);
        let certs = first_non_vanishing_mu(&d).unwrap().unwrap();
        assert!(certs[0].order >= 4);
        assert!(certs.iter().all(|c| !c.value.is_zero()));
    }

    #[test]
    fn bing_double_errors() {
        assert!(matches!(
            bing_double(&cat("hopf"), g(3)),
            Err(Error::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn linking_matrices() {
        assert_eq!(
            linking_matrix(&cat("unlink:2")),
            vec![vec![0, 0], vec![0, 0]]
        );
        assert_eq!(linking_matrix(&cat("hopf")), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(linking_matrix(&cat("borromean")), vec![vec![0; 3]; 3]);
    }

    #[test]
    fn parallel_copies() {
        assert_eq!(parallel_copy(&cat("unlink:1")), cat("unlink:2"));

        let d = parallel_copy(&cat("hopf"));
        assert_eq!(d.components(), 4);
        let lk = linking_matrix(&d);
        // indices: 1, 2, 1' = 3, 2' = 4
        for (a, b) in [(0, 1), (0, 3), (2, 1), (2, 3)] {
            assert_eq!(lk[a][b], 1);
            assert_eq!(lk[b][a], 1);
        }
        assert_eq!(lk[0][2], 0);
        assert_eq!(lk[1][3], 0);
        assert!(d.diagnostics().is_empty());

        let d = parallel_copy(&cat("borromean"));
        assert_eq!(d.components(), 6);
        assert_eq!(linking_matrix(&d), vec![vec![0; 6]; 6]);
    }

    #[test]
    fn asymmetric_linking_is_a_warning() {
        let l = LinkPresentation::new(
            2,
            vec![FreeWord::from_signed(&[2]).unwrap(), FreeWord::identity()],
        )
        .unwrap();
        assert_eq!(l.diagnostics().len(), 1);
    }

    #[test]
    fn presentation_validation() {
        assert!(matches!(
            LinkPresentation::new(2, vec![FreeWord::identity()]),
            Err(Error::LongitudeCount { .. })
        ));
        assert!(matches!(
            LinkPresentation::new(1, vec![FreeWord::from_signed(&[2]).unwrap()]),
            Err(Error::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn json_schema() {
        let bor = cat("borromean");
        let json = serde_json::to_string(&bor).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"longitudes":[[2,3,-2,-3],[3,1,-3,-1],[1,2,-1,-2]]}"#
        );
        assert_eq!(
            serde_json::from_str::<LinkPresentation>(&json).unwrap(),
            bor
        );
        assert!(serde_json::from_str::<LinkPresentation>(r#"{"n":1,"longitudes":[[2]]}"#).is_err());
        let labelled: LinkPresentation =
            serde_json::from_str(r#"{"n":2,"longitudes":[[2],[1]],"labels":["a","b"]}"#).unwrap();
        assert_eq!(labelled.labels(), ["a", "b"]);
        let doubled = bing_double(&labelled, g(1)).unwrap();
        assert_eq!(doubled.labels(), ["a.0", "b", "a.1"]);
    }
}
