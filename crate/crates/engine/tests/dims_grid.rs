//! Regression grid: computed hom/im/hh dimensions against the published
//! tables over full windows, with the documented adjudicated rows pinned.

use hh_engine::algebra::Algebra;
use hh_engine::cohomology::CochainComplex;
use hh_engine::expected::{expected_hh, expected_hom, expected_im, ParityReading};
use hh_engine::field::Field;
use hh_engine::quiver::Family;
use hh_engine::resolution::Resolution;
use std::sync::Arc;

fn run(family: Family, s: usize, p: u64, tmax: usize) -> Vec<String> {
    let alg = Arc::new(Algebra::build(family, s, Field::new(p).unwrap()).unwrap());
    let res = Resolution::build(alg, tmax + 1);
    let cx = CochainComplex::build(&res, tmax + 1);
    let mut bad = Vec::new();
    for t in 0..=tmax {
        let hom = cx.hom_dim(t);
        let im = cx.image_dim(t);
        let hh = cx.hh_dim(t);
        let ehom = expected_hom(family, s, t);
        let eim_lit = expected_im(family, s, p, t, ParityReading::EllPlusM);
        let eim_alt = expected_im(family, s, p, t, ParityReading::Ell);
        let ehh_lit = expected_hh(family, s, p, t, ParityReading::EllPlusM);
        let ehh_alt = expected_hh(family, s, p, t, ParityReading::Ell);
        if hom != ehom {
            bad.push(format!("{family} s={s} p={p} t={t}: hom {hom} != {ehom}"));
        }
        if im != eim_lit && im != eim_alt {
            bad.push(format!(
                "{family} s={s} p={p} t={t}: im {im} != lit {eim_lit} / alt {eim_alt}"
            ));
        }
        if hh != ehh_lit && hh != ehh_alt {
            bad.push(format!(
                "{family} s={s} p={p} t={t}: hh {hh} != lit {ehh_lit} / alt {ehh_alt}"
            ));
        }
    }
    bad
}

#[test]
fn dims_grid_with_known_adjudications() {
    let mut all = Vec::new();
    all.extend(run(Family::E7, 1, 2, 35));
    all.extend(run(Family::E7, 1, 3, 40));
    all.extend(run(Family::E7, 2, 2, 34));
    all.extend(run(Family::E7, 2, 3, 34));
    all.extend(run(Family::E7, 3, 2, 34));
    all.extend(run(Family::E8, 1, 2, 29));
    all.extend(run(Family::E8, 1, 3, 35));
    all.extend(run(Family::E8, 1, 5, 35));
    for line in &all {
        eprintln!("MISMATCH {line}");
    }
    // Known rows where the published E8 s=1 additive table disagrees with
    // the paper's own hom/im propositions (the engine sides with the
    // propositions, which it reproduces exactly):
    //   t=0: center has dimension 9, additive table says 8;
    //   t=10: the class lives in characteristic 5 (type with r=10, cong 1),
    //         the additive table lists it under characteristic 3;
    //   t=29: no generator type has r=0 with the cong-1 condition, and
    //         hom - im - im = 16 - 8 - 8 = 0, the additive table says 1.
    let known = [
        "e8 s=1 p=2 t=0: hh 9",
        "e8 s=1 p=3 t=0: hh 9",
        "e8 s=1 p=5 t=0: hh 9",
        "e8 s=1 p=3 t=10: hh 0",
        "e8 s=1 p=5 t=10: hh 1",
        "e8 s=1 p=3 t=29: hh 0",
        "e8 s=1 p=5 t=29: hh 0",
    ];
    assert!(
        all.iter().all(|l| known.iter().any(|k| l.starts_with(k))),
        "unexpected mismatches beyond the documented E8 s=1 rows"
    );
    assert_eq!(all.len(), known.len());
}
