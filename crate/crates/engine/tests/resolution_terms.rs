//! Computed resolution terms against the closed-form expected terms, over
//! a full period and into the twisted range.

use hh_engine::algebra::Algebra;
use hh_engine::field::Field;
use hh_engine::quiver::Family;
use hh_engine::resolution::{predicted, Resolution};
use std::sync::Arc;

fn check(family: Family, s: usize, p: u64, max_deg: usize) {
    let alg = Arc::new(Algebra::build(family, s, Field::new(p).unwrap()).unwrap());
    let res = Resolution::build(alg, max_deg);
    assert!(res.verify_dd_zero(), "{family} s={s} char {p}: d.d != 0");
    assert!(res.verify_minimality(), "{family} s={s}: non-minimal entry");
    for (m, ker, rank) in res.exactness_rows() {
        assert_eq!(ker, rank, "{family} s={s} exactness at {m}");
    }
    for m in 0..=max_deg {
        let mut computed = res.term_multiset(m);
        computed.sort();
        let mut expect = predicted::terms(family, s, m);
        expect.sort();
        assert_eq!(computed, expect, "{family} s={s} char {p}: Q_{m}");
    }
}

#[test]
fn e7_s1_full_period_and_twist() {
    // one degree past the period exercises the twist rule
    check(Family::E7, 1, 2, 18);
}

#[test]
fn e7_s2_first_period() {
    check(Family::E7, 2, 3, 17);
}

#[test]
fn e8_s1_full_period_and_twist() {
    check(Family::E8, 1, 2, 30);
}
