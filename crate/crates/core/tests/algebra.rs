mod oracle;

use std::collections::BTreeMap;

use abslice_core::word::{commutator, magnus_reduced, FreeWord, GenIndex, ReducedPoly};
use proptest::prelude::*;

fn signed_word(n: i64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1..=n, any::<bool>()), 0..=max_len).prop_map(|v| {
        v.into_iter()
            .map(|(g, inv)| if inv { -g } else { g })
            .collect()
    })
}

fn word(v: &[i64]) -> FreeWord {
    FreeWord::from_signed(v).unwrap()
}

fn as_i32(w: &FreeWord) -> Vec<i32> {
    w.to_signed().into_iter().map(|v| v as i32).collect()
}

fn to_oracle(p: &ReducedPoly) -> oracle::Poly {
    p.terms()
        .map(|(m, c)| {
            (
                m.indices().map(GenIndex::get).collect(),
                i64::try_from(c).unwrap(),
            )
        })
        .collect()
}

/// Deletes cancelling adjacent pairs in the order given by `picks` until the
/// word is reduced.
fn reduce_by_schedule(w: &FreeWord, picks: &[usize]) -> FreeWord {
    let mut letters = w.letters().to_vec();
    let mut k = 0;
    loop {
        let spots: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i].cancels(letters[i + 1]))
            .collect();
        if spots.is_empty() {
            return FreeWord::from_letters(letters);
        }
        let i = spots[picks.get(k).copied().unwrap_or(0) % spots.len()];
        k += 1;
        letters.drain(i..i + 2);
    }
}

proptest! {
    #[test]
    fn reduction_is_confluent(v in signed_word(3, 30), picks in prop::collection::vec(any::<usize>(), 30)) {
        let w = word(&v);
        let r = w.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(&reduce_by_schedule(&w, &picks), &r);
        prop_assert_eq!(&r.reduce(), &r);
        prop_assert_eq!(as_i32(&r), oracle::reduce(&as_i32(&w)));
    }

    #[test]
    fn inverse_cancels(v in signed_word(5, 20)) {
        let w = word(&v);
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert_eq!(magnus_reduced(&w.mul(&w.inverse()), 5).unwrap(), ReducedPoly::one());
        let unreduced = FreeWord::from_letters(
            w.letters().iter().copied().chain(w.inverse().letters().iter().copied()).collect(),
        );
        prop_assert_eq!(magnus_reduced(&unreduced, 5).unwrap(), ReducedPoly::one());
    }

    #[test]
    fn magnus_is_multiplicative(u in signed_word(6, 20), v in signed_word(6, 20)) {
        let (u, v) = (word(&u), word(&v));
        let lhs = magnus_reduced(&u.mul(&v), 6).unwrap();
        let rhs = magnus_reduced(&u, 6).unwrap().mul(&magnus_reduced(&v, 6).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn magnus_matches_oracle(v in signed_word(4, 16)) {
        let w = word(&v);
        let p = magnus_reduced(&w, 4).unwrap();
        let sv = as_i32(&w);
        prop_assert_eq!(to_oracle(&p), oracle::expand(&sv));
        for seq in oracle::distinct_sequences(4, 4) {
            let m: Vec<GenIndex> = seq.iter().map(|&g| GenIndex::new(g).unwrap()).collect();
            let c = p.coefficient(&abslice_core::word::Monomial::new(&m).unwrap());
            prop_assert_eq!(i64::try_from(&c).unwrap(), oracle::coefficient(&sv, &seq));
        }
    }

    #[test]
    fn terms_are_square_free(v in signed_word(6, 20)) {
        let p = magnus_reduced(&word(&v), 6).unwrap();
        for (m, c) in p.terms() {
            let idx: Vec<u32> = m.indices().map(GenIndex::get).collect();
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), idx.len());
            prop_assert!(c != &num_bigint::BigInt::from(0));
        }
    }

    #[test]
    fn poly_mul_associative(a in signed_word(4, 10), b in signed_word(4, 10), c in signed_word(4, 10)) {
        // arbitrary sums of expansions, so not only group-like elements
        let p = |v: &[i64], s: &[i64]| {
            magnus_reduced(&word(v), 4).unwrap().add(&magnus_reduced(&word(s), 4).unwrap())
        };
        let (x, y, z) = (p(&a, &b), p(&b, &c), p(&c, &a));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn substitution_is_a_homomorphism(u in signed_word(3, 10), v in signed_word(3, 10), img in signed_word(4, 6)) {
        let images = BTreeMap::from([(GenIndex::new(2).unwrap(), word(&img))]);
        let (u, v) = (word(&u), word(&v));
        prop_assert_eq!(
            u.mul(&v).substitute(&images),
            u.substitute(&images).mul(&v.substitute(&images))
        );
    }

    #[test]
    fn commutators_start_in_degree_two(a in signed_word(4, 8), b in signed_word(4, 8)) {
        let c = commutator(&word(&a), &word(&b));
        let p = magnus_reduced(&c, 4).unwrap();
        for (m, coeff) in p.terms() {
            prop_assert!(m.degree() != 1, "degree-one term {} with coefficient {}", m, coeff);
        }
        prop_assert_eq!(p.coefficient(&abslice_core::word::Monomial::unit()), 1.into());
    }
}

#[test]
fn oracle_self_check() {
    // hand-expanded: (1+X1)(1+X2)(1-X1)(1-X2)
    let p = oracle::expand(&[1, 2, -1, -2]);
    let want = oracle::Poly::from([(vec![], 1), (vec![1, 2], 1), (vec![2, 1], -1)]);
    assert_eq!(p, want);
    assert_eq!(oracle::coefficient(&[1, 2, -1, -2], &[1, 2]), 1);
    assert_eq!(oracle::coefficient(&[1, 1, 1], &[1]), 3);
    assert_eq!(oracle::distinct_sequences(3, 3).len(), 3 + 6 + 6);
}
