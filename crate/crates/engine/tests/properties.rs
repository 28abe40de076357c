//! Property tests: field axioms, exact linear algebra invariants, and
//! algebra/bimodule laws on randomized inputs.

use hh_engine::algebra::Algebra;
use hh_engine::automorphism::Automorphism;
use hh_engine::field::{Field, Scalar};
use hh_engine::matrix::{Matrix, SolveOutcome};
use hh_engine::quiver::Family;
use proptest::prelude::*;

fn scalar_strategy(p: u64) -> impl Strategy<Value = (Field, Scalar)> {
    (any::<i64>()).prop_map(move |n| {
        let f = Field::new(p).unwrap();
        let v = f.from_i64(n % 1000);
        (f, v)
    })
}

fn field_axioms(p: u64) {
    proptest!(|(a in scalar_strategy(p), b in scalar_strategy(p), c in scalar_strategy(p))| {
        let f = a.0;
        let (a, b, c) = (a.1, b.1, c.1);
        // associativity and commutativity
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        // distributivity
        prop_assert_eq!(
            f.mul(&a, &f.add(&b, &c)),
            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
        );
        // inverses
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        }
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
    });
}

#[test]
fn field_axioms_all_characteristics() {
    for p in [0u64, 2, 3, 5, 7] {
        field_axioms(p);
    }
}

fn matrix_strategy(p: u64) -> impl Strategy<Value = (Field, Matrix)> {
    (1usize..6, 1usize..6, proptest::collection::vec(-4i64..5, 36)).prop_map(
        move |(r, c, vals)| {
            let f = Field::new(p).unwrap();
            let rows = (0..r)
                .map(|i| (0..c).map(|j| f.from_i64(vals[i * 6 + j])).collect())
                .collect();
            (f, Matrix::from_rows(f, rows))
        },
    )
}

fn matrix_invariants(p: u64) {
    proptest!(|(tm in matrix_strategy(p))| {
        let (f, m) = tm;
        let (rref, rank, pivots) = m.rref_rank();
        prop_assert!(rank <= m.rows.min(m.cols));
        prop_assert_eq!(rank, pivots.len());
        // idempotence
        let (rref2, rank2, _) = rref.rref_rank();
        prop_assert_eq!(rank2, rank);
        prop_assert!(rref2 == rref);
        // rank + nullity, and exact annihilation
        let kernel = m.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), m.cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
        // any solution must verify exactly
        let b: Vec<Scalar> = (0..m.rows).map(|i| f.from_i64(i as i64 - 1)).collect();
        if let SolveOutcome::Solution(x) = m.solve(&b) {
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    });
}

#[test]
fn matrix_invariants_all_characteristics() {
    for p in [0u64, 2, 3, 5] {
        matrix_invariants(p);
    }
}

#[test]
fn algebra_multiplication_associative_on_random_triples() {
    let algebras: Vec<Algebra> = vec![
        Algebra::build(Family::E7, 2, Field::new(3).unwrap()).unwrap(),
        Algebra::build(Family::E8, 1, Field::new(5).unwrap()).unwrap(),
    ];
    for a in &algebras {
        let d = a.dim();
        proptest!(|(i in 0..d, j in 0..d, k in 0..d)| {
            let left = a.mult_basis(i, j).and_then(|ij| a.mult_basis(ij, k));
            let right = a.mult_basis(j, k).and_then(|jk| a.mult_basis(i, jk));
            prop_assert_eq!(left, right);
        });
    }
}

#[test]
fn automorphism_power_composes() {
    // twist by l1 + l2 equals twisting twice (on classes, with signs)
    let a = Algebra::build(Family::E7, 2, Field::new(3).unwrap()).unwrap();
    let f = a.field;
    let phi = Automorphism::canonical(&a);
    let d = a.dim();
    proptest!(|(l1 in 0usize..4, l2 in 0usize..4, c in 0..d)| {
        let p12 = phi.power(&f, l1 + l2);
        let p1 = phi.power(&f, l1);
        let p2 = phi.power(&f, l2);
        let direct = p12.apply_class(c);
        let (mid, sign_mid) = p2.apply_class(c);
        let (end, sign_end) = p1.apply_class(mid);
        prop_assert_eq!(direct, (end, f.mul(&sign_mid, &sign_end)));
    });
}

#[test]
fn canonical_path_consistent_with_basis() {
    // where a one-dimensional connecting space exists, the canonical path
    // is its basis class
    let a = Algebra::build(Family::E8, 1, Field::new(2).unwrap()).unwrap();
    for from in 0..a.vertices() {
        for dist in 0..6 {
            let to = from + dist;
            if let Ok(Some(c)) = a.canonical_path(from, to) {
                assert_eq!(a.source(c), from);
                assert_eq!(a.target(c), a.quiver.reduce_cover_vertex(to));
            }
        }
    }
}
