//! Acceptance suite: one test per headline criterion, each printing one
//! pass/fail line per required check at exact (integer / field identity)
//! tolerance.
//!
//! Criterion 3 compares against the published additive table for the
//! second family at s = 1 *as published*. The engine's computed values
//! disagree with that table at a handful of rows where the table also
//! disagrees with the published Hom/coboundary propositions (which the
//! engine reproduces exactly); those rows are printed with their
//! adjudication and the test fails honestly rather than encoding the
//! corrected values.

use hh_engine::algebra::Algebra;
use hh_engine::automorphism::{published_order, Automorphism};
use hh_engine::cohomology::CochainComplex;
use hh_engine::expected::{
    expected_hh, expected_hom, expected_im, generator_degrees, period_m, ParityReading,
};
use hh_engine::field::Field;
use hh_engine::matrix::{Matrix, SolveOutcome};
use hh_engine::periodicity;
use hh_engine::quiver::Family;
use hh_engine::resolution::{predicted, Resolution};
use hh_engine::ring::{default_window, product_is_lift_independent, RingCtx, RingVerifier};
use hh_engine::simples;
use std::sync::Arc;

fn build(family: Family, s: usize, p: u64, depth: usize) -> (Arc<Algebra>, Resolution) {
    let alg = Arc::new(Algebra::build(family, s, Field::new(p).unwrap()).unwrap());
    let res = Resolution::build(alg.clone(), depth);
    (alg, res)
}

/// Criterion 1: first-family additive structure at s = 1 over the stated
/// windows and characteristics.
#[test]
fn criterion_1_e7_s1_additive() {
    let mut failures = 0;
    for (p, tmax) in [(2u64, 34usize), (3, 40), (0, 40)] {
        let (_alg, res) = build(Family::E7, 1, p, tmax + 1);
        let cx = CochainComplex::build(&res, tmax + 1);
        for t in 0..=tmax {
            let got = cx.hh_dim(t);
            let want = expected_hh(Family::E7, 1, p, t, ParityReading::EllPlusM);
            let ok = got == want;
            if !ok {
                failures += 1;
                println!("criterion 1: FAIL char {p} t={t}: hh {got} != {want}");
            }
        }
        println!("criterion 1: char {p} degrees 0..={tmax} checked");
    }
    println!(
        "criterion 1: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 2: first-family Hom and coboundary dimension propositions at
/// s in {2, 3} for characteristics {0, 2, 3}, under at least one parity
/// reading, with the adjudicated reading constant per case.
#[test]
fn criterion_2_e7_dimension_propositions() {
    let tmax = 34;
    let mut failures = 0;
    for s in [2usize, 3] {
        for p in [0u64, 2, 3] {
            let (_alg, res) = build(Family::E7, s, p, tmax + 1);
            let cx = CochainComplex::build(&res, tmax + 1);
            // per-case set of readings that match every degree of the case
            let cases: Vec<Vec<usize>> = vec![
                vec![0, 7, 8, 15, 16],
                vec![1, 14],
                vec![2, 13],
                vec![3, 12],
                vec![4, 11],
                vec![5, 10],
                vec![6, 9],
            ];
            for t in 0..=tmax {
                let hom = cx.hom_dim(t);
                let want = expected_hom(Family::E7, s, t);
                if hom != want {
                    failures += 1;
                    println!("criterion 2: FAIL s={s} char {p} t={t}: hom {hom} != {want}");
                }
            }
            for case in &cases {
                let mut consistent = Vec::new();
                for reading in [ParityReading::EllPlusM, ParityReading::Ell] {
                    let all = (0..=tmax)
                        .filter(|t| case.contains(&(t % 17)))
                        .all(|t| cx.image_dim(t) == expected_im(Family::E7, s, p, t, reading));
                    if all {
                        consistent.push(reading.to_string());
                    }
                }
                if consistent.is_empty() {
                    failures += 1;
                    println!(
                        "criterion 2: FAIL s={s} char {p} case {case:?}: no constant reading"
                    );
                } else {
                    println!(
                        "criterion 2: s={s} char {p} case {case:?}: reading(s) {}",
                        consistent.join("+")
                    );
                }
            }
        }
    }
    println!(
        "criterion 2: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 3: second-family additive structure at s = 1 against the
/// published table, as stated. See the module docs: the known
/// inconsistent rows are printed with the propositions-based adjudication
/// and fail honestly.
#[test]
fn criterion_3_e8_s1_additive() {
    let mut failures = 0;
    for (p, tmax) in [(2u64, 29usize), (3, 35), (5, 35)] {
        let (_alg, res) = build(Family::E8, 1, p, tmax + 1);
        let cx = CochainComplex::build(&res, tmax + 1);
        for t in 0..=tmax {
            let got = cx.hh_dim(t);
            let want = expected_hh(Family::E8, 1, p, t, ParityReading::EllPlusM);
            if got != want {
                failures += 1;
                // adjudicate against the published hom/im propositions
                let hom = cx.hom_dim(t);
                let im_t = cx.image_dim(t);
                let im_prev = if t == 0 { 0 } else { cx.image_dim(t - 1) };
                let hom_pub = expected_hom(Family::E8, 1, t);
                let im_pub = expected_im(Family::E8, 1, p, t, ParityReading::EllPlusM);
                println!(
                    "criterion 3: FAIL char {p} t={t}: hh {got} != additive table {want} \
                     [hom {hom} (published {hom_pub}), im {im_t} (published {im_pub}), \
                     hom-im-im = {}]",
                    hom - im_t - im_prev
                );
                // the failure must be the table contradicting its own
                // propositions, never the engine contradicting the props
                assert_eq!(hom, hom_pub, "hom must match the published proposition");
                assert_eq!(im_t, im_pub, "im must match the published proposition");
                assert_eq!(got, hom - im_t - im_prev);
            }
        }
        println!("criterion 3: char {p} degrees 0..={tmax} checked");
    }
    println!(
        "criterion 3: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(
        failures, 0,
        "the published s=1 additive table disagrees with its own \
         hom/coboundary propositions at the printed rows; the engine sides \
         with the propositions (see the dims report adjudication)"
    );
}

/// Criterion 4: resolution terms equal the closed-form predictions and
/// the Ext-multiplicity table, for both families at s in {1, 2}.
#[test]
fn criterion_4_resolution_terms() {
    let mut failures = 0;
    for (family, s) in [
        (Family::E7, 1usize),
        (Family::E7, 2),
        (Family::E8, 1),
        (Family::E8, 2),
    ] {
        let mmax = family.base_period() - 1;
        let (alg, res) = build(family, s, 2, mmax + 1);
        let ext = simples::ext_table(&alg, mmax);
        for m in 0..=mmax {
            let mut computed = res.term_multiset(m);
            computed.sort();
            let mut formula = predicted::terms(family, s, m);
            formula.sort();
            let happel = simples::happel_multiset(&ext, m);
            if computed != formula {
                failures += 1;
                println!("criterion 4: FAIL {family} s={s} Q_{m} vs formula");
            }
            if computed != happel {
                failures += 1;
                println!("criterion 4: FAIL {family} s={s} Q_{m} vs ext multiplicities");
            }
        }
        println!("criterion 4: {family} s={s} m <= {mmax} checked");
    }
    println!(
        "criterion 4: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 5: exactness and minimality of every computed differential.
#[test]
fn criterion_5_exactness_minimality() {
    let mut failures = 0;
    for (family, s, p, depth) in [
        (Family::E7, 1usize, 2u64, 20usize),
        (Family::E7, 2, 3, 20),
        (Family::E8, 1, 5, 31),
        (Family::E8, 2, 2, 31),
    ] {
        let (_alg, res) = build(family, s, p, depth);
        if !res.verify_dd_zero() {
            failures += 1;
            println!("criterion 5: FAIL {family} s={s} char {p}: d.d != 0");
        }
        if !res.verify_minimality() {
            failures += 1;
            println!("criterion 5: FAIL {family} s={s} char {p}: entry outside the radical");
        }
        for (m, ker, rank) in res.exactness_rows() {
            if ker != rank {
                failures += 1;
                println!(
                    "criterion 5: FAIL {family} s={s} char {p} degree {m}: ker {ker} != im {rank}"
                );
            }
        }
        println!("criterion 5: {family} s={s} char {p} checked to degree {depth}");
    }
    println!(
        "criterion 5: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 6: every syzygy-period claim for every residue at s in {1, 2}.
#[test]
fn criterion_6_syzygy_lemmas() {
    let mut failures = 0;
    for family in [Family::E7, Family::E8] {
        for s in [1usize, 2] {
            let alg = Algebra::build(family, s, Field::new(2).unwrap()).unwrap();
            let checks = simples::verify_syzygy_lemmas(&alg);
            for c in &checks {
                if !c.ok {
                    failures += 1;
                    println!(
                        "criterion 6: FAIL {family} s={s} vertex {}: power {} expected {} got {:?} (terms {})",
                        c.vertex, c.power, c.expected_vertex, c.computed_vertex, c.terms_match
                    );
                }
            }
            println!(
                "criterion 6: {family} s={s}: {} claims checked",
                checks.len()
            );
        }
    }
    println!(
        "criterion 6: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 7: explicit twisted syzygy isomorphisms, automorphism orders
/// across the stated grid, and the minimal period.
#[test]
fn criterion_7_periodicity() {
    let mut failures = 0;
    // automorphism orders across the grid (no resolution needed)
    for (family, s_list) in [(Family::E7, vec![1usize, 2, 3, 9]), (Family::E8, vec![1, 2, 5])] {
        for &s in &s_list {
            for p in [0u64, 2, 3] {
                let field = Field::new(p).unwrap();
                let alg = Algebra::build(family, s, field).unwrap();
                let phi = Automorphism::canonical(&alg);
                let got = phi.order(&field);
                let want = published_order(family, s, p);
                if got != want {
                    failures += 1;
                    println!(
                        "criterion 7: FAIL order {family} s={s} char {p}: {got} != {want}"
                    );
                }
            }
        }
        println!("criterion 7: {family} order grid checked");
    }
    // explicit isomorphism + minimal period on the resolution grid
    for (family, s, p) in [
        (Family::E7, 1usize, 2u64),
        (Family::E7, 1, 3),
        (Family::E7, 1, 0),
        (Family::E7, 2, 2),
        (Family::E8, 1, 2),
        (Family::E8, 1, 3),
        (Family::E8, 1, 5),
    ] {
        let depth = family.base_period() + 2;
        let (_alg, res) = build(family, s, p, depth);
        let report = periodicity::verify(&res);
        if !report.ok {
            failures += 1;
            println!("criterion 7: FAIL {family} s={s} char {p}: {report:?}");
        } else {
            println!(
                "criterion 7: {family} s={s} char {p}: iso {}, period {} (= published)",
                report.syzygy_iso_found == Some(true),
                report.period
            );
        }
    }
    println!(
        "criterion 7: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 8: ring presentation verification across the full grid.
#[test]
fn criterion_8_ring_presentation() {
    let mut failures = 0;
    for (family, s, p) in [
        (Family::E7, 1usize, 2u64),
        (Family::E7, 1, 3),
        (Family::E7, 2, 2),
        (Family::E7, 2, 3),
        (Family::E8, 1, 2),
        (Family::E8, 1, 3),
        (Family::E8, 1, 5),
    ] {
        let window = default_window(family, s, p);
        let (_alg, res) = build(family, s, p, window + 2);
        let cx = CochainComplex::build(&res, window + 1);
        let verifier = RingVerifier::new(&res, &cx, window).expect("generator selection");
        let report = verifier.verify();
        let cells_bad = report
            .cells
            .iter()
            .chain(report.socle_cells.iter())
            .filter(|c| matches!(c.status, hh_engine::ring::CellStatus::Mismatch(_)))
            .count();
        if cells_bad > 0 || !report.ok {
            failures += 1;
            println!(
                "criterion 8: FAIL {family} s={s} char {p}: {cells_bad} bad cells, \
                 scaling {} generation {} commutativity {} associativity {} unit {}",
                report.scaling_consistent,
                report.generation_ok,
                report.commutativity_ok,
                report.associativity_ok,
                report.unit_law_ok
            );
            for c in report.cells.iter().chain(report.socle_cells.iter()) {
                if let hh_engine::ring::CellStatus::Mismatch(why) = &c.status {
                    println!(
                        "  cell ({}, {}) at degrees ({}, {}): {} [{}]",
                        c.a, c.b, c.degree_a, c.degree_b, c.expected, why
                    );
                }
            }
        } else {
            println!(
                "criterion 8: {family} s={s} char {p} window {window}: all checks pass"
            );
        }
    }
    println!(
        "criterion 8: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Criterion 9: the paper-independent property suite.
#[test]
fn criterion_9_property_suite() {
    let mut failures = 0;

    // cup products: lift independence, representative independence, unit
    // law on every generator class (two small configurations)
    for (family, s, p) in [(Family::E7, 1usize, 3u64), (Family::E8, 1, 2)] {
        let window = 10;
        let (_alg, res) = build(family, s, p, window + 2);
        let cx = CochainComplex::build(&res, window + 1);
        let ctx = RingCtx::new(&res, &cx);
        // two classes with product inside the window
        let slots: Vec<(usize, usize)> = generator_degrees(family, s, p)
            .into_iter()
            .filter(|&(_, t)| t > 0 && t <= 4 && cx.hh_dim(t) >= 1)
            .collect();
        for &(_, t1) in slots.iter().take(2) {
            for &(_, t2) in slots.iter().take(2) {
                if t1 + t2 + 1 > window {
                    continue;
                }
                let f1 = cx.cocycle_basis(t1)[0].clone();
                let f2 = cx.cocycle_basis(t2)[0].clone();
                if !product_is_lift_independent(&ctx, t1, &f1, t2, &f2) {
                    failures += 1;
                    println!(
                        "criterion 9: FAIL lift independence {family} s={s} t1={t1} t2={t2}"
                    );
                }
                // representative independence: add a coboundary to f1
                let f = res.algebra.field;
                let perturbed = {
                    let mut v = f1.clone();
                    if t1 >= 1 && cx.hom_dim(t1 - 1) > 0 {
                        let mut g = vec![f.zero(); cx.hom_dim(t1 - 1)];
                        g[0] = f.one();
                        let db = cx.delta[t1 - 1].mul_vec(&g);
                        for (x, y) in v.iter_mut().zip(&db) {
                            *x = f.add(x, y);
                        }
                    }
                    v
                };
                let step0 = ctx.lift_step0(t2, &f2, false).unwrap();
                let la = ctx.lift(t1, &f1, t2, false).unwrap();
                let lb = ctx.lift(t1, &perturbed, t2, false).unwrap();
                let pa = ctx.product_cochain(&step0, t2, &la.translates[t2], t1 + t2);
                let pb = ctx.product_cochain(&step0, t2, &lb.translates[t2], t1 + t2);
                let diff: Vec<_> = pa.iter().zip(&pb).map(|(x, y)| f.sub(x, y)).collect();
                if cx.reduce_class(t1 + t2, &diff).iter().any(|x| !f.is_zero(x)) {
                    failures += 1;
                    println!(
                        "criterion 9: FAIL representative independence {family} t1={t1} t2={t2}"
                    );
                }
            }
        }
        println!("criterion 9: {family} s={s} char {p} product properties checked");
    }

    // exact linear algebra properties on seeded pseudo-random matrices
    let mut seed = 0x12345678u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for p in [2u64, 3, 5, 0] {
        let field = Field::new(p).unwrap();
        for trial in 0..20 {
            let rows = 1 + (next() % 6) as usize;
            let cols = 1 + (next() % 6) as usize;
            let m = Matrix::from_rows(
                field,
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| field.from_i64((next() % 7) as i64 - 3))
                            .collect()
                    })
                    .collect(),
            );
            let (rref, rank, _) = m.rref_rank();
            // rank + nullity
            let kernel = m.kernel_basis();
            if rank + kernel.len() != cols {
                failures += 1;
                println!("criterion 9: FAIL rank+nullity char {p} trial {trial}");
            }
            for v in &kernel {
                if m.mul_vec(v).iter().any(|x| !field.is_zero(x)) {
                    failures += 1;
                    println!("criterion 9: FAIL kernel vector char {p} trial {trial}");
                }
            }
            // rref idempotence
            let (rref2, rank2, _) = rref.rref_rank();
            if rref2 != rref || rank2 != rank {
                failures += 1;
                println!("criterion 9: FAIL rref idempotence char {p} trial {trial}");
            }
            // solve check
            let b: Vec<_> = (0..rows).map(|_| field.from_i64((next() % 5) as i64 - 2)).collect();
            if let SolveOutcome::Solution(x) = m.solve(&b) {
                if m.mul_vec(&x) != b {
                    failures += 1;
                    println!("criterion 9: FAIL solve check char {p} trial {trial}");
                }
            }
        }
    }
    println!("criterion 9: exact linear algebra properties checked");

    // cache round-trip and tamper rejection
    {
        let (_alg, res) = build(Family::E7, 1, 5, 4);
        let dir = std::env::temp_dir().join(format!("hh-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("acceptance.json");
        hh_engine::cache::store(&res, &path).unwrap();
        let alg2 = Arc::new(Algebra::build(Family::E7, 1, Field::new(5).unwrap()).unwrap());
        match hh_engine::cache::load(alg2.clone(), &path) {
            Ok(loaded) => {
                if loaded.max_degree() != res.max_degree() || loaded.terms != res.terms {
                    failures += 1;
                    println!("criterion 9: FAIL cache round-trip structure");
                }
            }
            Err(e) => {
                failures += 1;
                println!("criterion 9: FAIL cache round-trip: {e}");
            }
        }
        // tamper: flip a coefficient
        let raw = std::fs::read_to_string(&path).unwrap();
        let mut file: serde_json::Value = serde_json::from_str(&raw).unwrap();
        let slot = &mut file["diffs"][0]["entries"][0]["terms"][0][4];
        *slot = serde_json::Value::String(if slot.as_str() == Some("1") { "2" } else { "1" }.into());
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        if hh_engine::cache::load(alg2, &path).is_ok() {
            failures += 1;
            println!("criterion 9: FAIL tampered cache accepted");
        }
        std::fs::remove_dir_all(&dir).ok();
        println!("criterion 9: cache round-trip and tamper rejection checked");
    }

    println!(
        "criterion 9: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    );
    assert_eq!(failures, 0);
}

/// Periodicity of the cohomology dimensions over a long window (part of
/// criterion 7's confirmation).
#[test]
fn criterion_7b_hh_dims_periodic_window() {
    let (_alg, res) = build(Family::E7, 1, 2, 36);
    let cx = CochainComplex::build(&res, 36);
    let dims: Vec<usize> = (0..=35).map(|t| cx.hh_dim(t)).collect();
    let m = period_m(Family::E7, 1, 2);
    assert!(periodicity::hh_dims_periodic(&dims, m));
    println!("criterion 7: hh dimension sequence repeats with period {m} over the window");
}
