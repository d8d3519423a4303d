#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;
use qcone::cone::{ConeElement, ConeMonomial};
use qcone::{CalcElement, DiscElement, DiscMonomial, Scalar};

pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (
        -3i64..=3,
        0i32..=2,
        0i32..=1,
        -2i64..=2,
        -1i32..=1,
        0usize..4,
    )
        .prop_map(|(c, qe, ge, c2, qe2, den)| {
            let num = Scalar::from_int(c) * Scalar::q_pow(qe) * Scalar::gamma().pow(ge).unwrap()
                + Scalar::from_int(c2) * Scalar::q_pow(qe2);
            let den = match den {
                0 => Scalar::one(),
                1 => Scalar::one() - Scalar::q(),
                2 => Scalar::one() + Scalar::q(),
                _ => Scalar::q() + Scalar::gamma(),
            };
            num / den
        })
}

pub fn arb_nonzero_scalar() -> impl Strategy<Value = Scalar> {
    arb_scalar().prop_filter("nonzero", |s| !s.is_zero())
}

/// Disc elements with up to four terms of total degree at most `max_deg`.
pub fn arb_disc(max_deg: u32) -> impl Strategy<Value = DiscElement> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, arb_scalar()), 1..=4).prop_map(move |v| {
        DiscElement::from_terms(v.into_iter().map(|(i, j, c)| {
            let i = i.min(max_deg);
            let j = j.min(max_deg - i);
            (DiscMonomial::new(i, j), c)
        }))
    })
}

pub fn arb_calc(max_deg: u32) -> impl Strategy<Value = CalcElement> {
    (
        arb_disc(max_deg),
        arb_disc(max_deg),
        arb_disc(max_deg),
        arb_disc(max_deg),
        0u8..16,
    )
        .prop_map(|(a, b, c, d, mask)| {
            let pick = |e: DiscElement, bit: u8| {
                if mask & (1 << bit) != 0 {
                    e
                } else {
                    DiscElement::zero()
                }
            };
            CalcElement::new(pick(a, 0), pick(b, 1), pick(c, 2), pick(d, 3))
        })
}

/// A form of pure degree `k`.
pub fn arb_form(k: u32, max_deg: u32) -> impl Strategy<Value = CalcElement> {
    (arb_disc(max_deg), arb_disc(max_deg)).prop_map(move |(f, g)| match k {
        0 => CalcElement::function(f),
        1 => &CalcElement::dz_form(f) + &CalcElement::dzs_form(g),
        _ => CalcElement::omega_form(f),
    })
}

pub fn arb_cone(n: u32) -> impl Strategy<Value = ConeElement> {
    prop::collection::vec((-1i32..=1, 0u32..=2, arb_scalar()), 1..=3).prop_map(move |v| {
        v.into_iter().fold(ConeElement::zero(n), |acc, (b, a, c)| {
            &acc + &ConeElement::term(n, c, ConeMonomial::new(b, a))
        })
    })
}

/// Draw `count` values from a strategy with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, count: usize) -> Vec<S::Value> {
    let mut runner = TestRunner::deterministic();
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).unwrap().current())
        .collect()
}

/// Word in the letters `z` (false) and `z*` (true).
pub type Word = Vec<bool>;

/// Normal ordering by repeated single-step rewriting of the leftmost
/// `z* z` with `z* z -> c1 z z* + c0`.
pub fn rewrite_normal_form(start: BTreeMap<Word, Scalar>, c1: &Scalar, c0: &Scalar) -> DiscElement {
    let mut pending = start;
    let mut done = DiscElement::zero();
    while let Some((word, c)) = pending.pop_first() {
        match word.windows(2).position(|w| w[0] && !w[1]) {
            None => {
                let i = word.iter().filter(|x| !**x).count() as u32;
                let j = word.len() as u32 - i;
                done = &done + &DiscElement::term(c, DiscMonomial::new(i, j));
            }
            Some(p) => {
                let mut swapped = word.clone();
                swapped.swap(p, p + 1);
                let mut shorter = word.clone();
                shorter.drain(p..p + 2);
                for (w, k) in [(swapped, &c * c1), (shorter, &c * c0)] {
                    if k.is_zero() {
                        continue;
                    }
                    let e = pending.entry(w).or_insert_with(Scalar::zero);
                    *e = &*e + &k;
                }
                pending.retain(|_, v| !v.is_zero());
            }
        }
    }
    done
}

pub fn word(i: u32, j: u32) -> Word {
    let mut w = vec![false; i as usize];
    w.extend(std::iter::repeat_n(true, j as usize));
    w
}

pub fn disc_to_words(u: &DiscElement) -> BTreeMap<Word, Scalar> {
    u.terms()
        .map(|(m, c)| (word(m.i, m.j), c.clone()))
        .collect()
}

/// Product of two disc elements through the rewriting oracle.
pub fn oracle_multiply(u: &DiscElement, v: &DiscElement) -> DiscElement {
    oracle_multiply_with(u, v, &Scalar::q(), &Scalar::gamma())
}

/// Product through the rewriting oracle with the rule `z* z -> c1 z z* + c0`.
pub fn oracle_multiply_with(
    u: &DiscElement,
    v: &DiscElement,
    c1: &Scalar,
    c0: &Scalar,
) -> DiscElement {
    let mut words = BTreeMap::new();
    for (m1, c1) in u.terms() {
        for (m2, c2) in v.terms() {
            let mut w = word(m1.i, m1.j);
            w.extend(word(m2.i, m2.j));
            let e = words.entry(w).or_insert_with(Scalar::zero);
            *e = &*e + &(c1 * c2);
        }
    }
    words.retain(|_, v: &mut Scalar| !v.is_zero());
    rewrite_normal_form(words, c1, c0)
}
