//! Job orchestration: build what a configuration needs in dependency
//! order (algebra, resolution, cochain complex, ring data) and assemble
//! the verification report.

use crate::algebra::{Algebra, AlgebraError};
use crate::automorphism::{published_order, Automorphism};
use crate::cache;
use crate::cohomology::{CochainComplex, DegreeSplit};
use crate::expected::{self, ParityReading};
use crate::field::{Field, FieldError};
use crate::gens;
use crate::periodicity;
use crate::quiver::Family;
use crate::report::*;
use crate::resolution::{predicted, Resolution};
use crate::ring::{default_window, RingVerifier};
use crate::simples;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Check {
    Build,
    Terms,
    Dims,
    Syzygies,
    Period,
    Products,
}

impl Check {
    pub fn all() -> Vec<Check> {
        vec![
            Check::Build,
            Check::Terms,
            Check::Dims,
            Check::Syzygies,
            Check::Period,
            Check::Products,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Check::Build => "build",
            Check::Terms => "terms",
            Check::Dims => "dims",
            Check::Syzygies => "syzygies",
            Check::Period => "period",
            Check::Products => "products",
        }
    }
}

#[derive(Clone)]
pub struct JobConfig {
    pub family: Family,
    pub s: usize,
    pub characteristic: u64,
    /// verification depth; None picks a default per requested check
    pub max_degree: Option<usize>,
    pub checks: Vec<Check>,
    pub parity: Option<ParityReading>,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug)]
pub enum RunError {
    Field(FieldError),
    Algebra(AlgebraError),
    Internal(String),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Field(e) => write!(f, "{e}"),
            RunError::Algebra(e) => write!(f, "{e}"),
            RunError::Internal(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

pub fn run(config: &JobConfig) -> Result<VerificationReport, RunError> {
    let field = Field::new(config.characteristic).map_err(RunError::Field)?;
    let family = config.family;
    let s = config.s;
    let p = config.characteristic;
    let base = family.base_period();
    // --max-deg acts as a budget cap on the default product window and as
    // the depth of the dimension tables
    let window = match config.max_degree {
        Some(d) => default_window(family, s, p).min(d),
        None => default_window(family, s, p),
    };
    let mut depth = 2;
    for c in &config.checks {
        let need = match c {
            Check::Build => 0,
            Check::Terms => base + 2,
            Check::Dims => window + 1,
            Check::Syzygies => 0,
            Check::Period => base + 2,
            Check::Products => window + 2,
        };
        depth = depth.max(need);
    }
    if let Some(d) = config.max_degree {
        depth = depth.max(d + 2);
    }
    let max_degree = config.max_degree.unwrap_or(depth.saturating_sub(2));

    let mut report = VerificationReport::new(ConfigEcho {
        family: family.to_string(),
        s,
        characteristic: p,
        max_degree,
        checks: config.checks.iter().map(|c| c.name().to_string()).collect(),
        parity_reading: config
            .parity
            .map_or("both".to_string(), |r| r.to_string()),
    });

    let t0 = Instant::now();
    let algebra = Arc::new(Algebra::build(family, s, field).map_err(RunError::Algebra)?);
    report.timings.push(("algebra".into(), t0.elapsed().as_secs_f64()));

    if config.checks.contains(&Check::Build) {
        let phi = Automorphism::canonical(&algebra);
        report.build = Some(BuildInfo {
            vertices: algebra.vertices(),
            arrows: algebra.quiver.arrows.len(),
            dimension: algebra.dim(),
            automorphism_order: phi.order(&algebra.field),
            published_order: published_order(family, s, p),
            content_hash: format!("{:016x}", algebra.content_hash()),
        });
    }

    let needs_resolution = config.checks.iter().any(|c| {
        matches!(
            c,
            Check::Terms | Check::Dims | Check::Period | Check::Products
        )
    });
    let resolution = if needs_resolution {
        let t = Instant::now();
        let res = load_or_build(config, algebra.clone(), depth, &mut report);
        report
            .timings
            .push(("resolution".into(), t.elapsed().as_secs_f64()));
        Some(res)
    } else {
        None
    };

    if config.checks.contains(&Check::Terms) {
        let res = resolution.as_ref().unwrap();
        let t = Instant::now();
        report.terms = Some(terms_check(res, max_degree.min(res.max_degree() - 1)));
        report.timings.push(("terms".into(), t.elapsed().as_secs_f64()));
    }

    let complex = if config
        .checks
        .iter()
        .any(|c| matches!(c, Check::Dims | Check::Products))
    {
        let res = resolution.as_ref().unwrap();
        let t = Instant::now();
        let cx = CochainComplex::build(res, res.max_degree() - 1);
        report
            .timings
            .push(("complex".into(), t.elapsed().as_secs_f64()));
        Some(cx)
    } else {
        None
    };

    if config.checks.contains(&Check::Dims) {
        let cx = complex.as_ref().unwrap();
        let t = Instant::now();
        let upto = max_degree.min(cx.max_degree() - 1);
        report.dims = Some(dims_check(family, s, p, cx, upto, config.parity));
        report.timings.push(("dims".into(), t.elapsed().as_secs_f64()));
    }

    if config.checks.contains(&Check::Syzygies) {
        let t = Instant::now();
        report.syzygies = Some(simples::verify_syzygy_lemmas(&algebra));
        report
            .timings
            .push(("syzygies".into(), t.elapsed().as_secs_f64()));
    }

    if config.checks.contains(&Check::Period) {
        let res = resolution.as_ref().unwrap();
        let t = Instant::now();
        report.periodicity = Some(periodicity::verify(res));
        report
            .timings
            .push(("period".into(), t.elapsed().as_secs_f64()));
    }

    if config.checks.contains(&Check::Products) {
        let res = resolution.as_ref().unwrap();
        let cx = complex.as_ref().unwrap();
        let t = Instant::now();
        let w = window.min(res.max_degree().saturating_sub(2));
        let verifier = RingVerifier::new(res, cx, w)
            .map_err(|e| RunError::Internal(e.to_string()))?;
        report.presentation = Some(verifier.verify());
        // published matrix gate for every generator slot in range
        let mut gate_rows = Vec::new();
        for (ty, t_deg) in expected::generator_degrees(family, s, p) {
            if t_deg + 1 > cx.max_degree() {
                continue;
            }
            let computed = verifier
                .generators
                .get(&(ty, t_deg))
                .map(|g| g.cochain.as_slice());
            gate_rows.push(gens::gate(res, cx, ty, t_deg, computed));
        }
        report.generator_gate = Some(gate_rows);
        report
            .timings
            .push(("products".into(), t.elapsed().as_secs_f64()));
    }

    Ok(report)
}

fn load_or_build(
    config: &JobConfig,
    algebra: Arc<Algebra>,
    depth: usize,
    report: &mut VerificationReport,
) -> Resolution {
    if let Some(dir) = &config.cache_dir {
        std::fs::create_dir_all(dir).ok();
        let path = dir.join(cache::cache_file_name(
            config.family,
            config.s,
            config.characteristic,
            depth,
        ));
        if path.exists() {
            match cache::load(algebra.clone(), &path) {
                Ok(res) => {
                    report.cache = Some(CacheInfo {
                        path: path.display().to_string(),
                        action: "loaded".into(),
                    });
                    return res;
                }
                Err(e) => {
                    report.cache = Some(CacheInfo {
                        path: path.display().to_string(),
                        action: format!("rejected ({e}); rebuilt"),
                    });
                }
            }
        }
        let res = Resolution::build(algebra, depth);
        match cache::store(&res, &path) {
            Ok(()) => {
                let action = match &report.cache {
                    Some(info) => format!("{}; stored", info.action),
                    None => "stored".to_string(),
                };
                report.cache = Some(CacheInfo {
                    path: path.display().to_string(),
                    action,
                });
            }
            Err(e) => {
                report.cache = Some(CacheInfo {
                    path: path.display().to_string(),
                    action: format!("store failed: {e}"),
                });
            }
        }
        return res;
    }
    Resolution::build(algebra, depth)
}

fn terms_check(res: &Resolution, max_degree: usize) -> TermsCheck {
    let family = res.algebra.family();
    let s = res.algebra.s();
    let dd_zero = res.verify_dd_zero();
    let minimal = res.verify_minimality();
    let exact = res.exactness_rows().iter().all(|(_, k, r)| k == r);
    let ext = simples::ext_table(&res.algebra, max_degree);
    let mut rows = Vec::new();
    for m in 0..=max_degree {
        let mut computed = res.term_multiset(m);
        computed.sort();
        let mut formula = predicted::terms(family, s, m);
        formula.sort();
        let mut alt = expected::predicted_terms_alt(family, s, m);
        alt.sort();
        let happel = simples::happel_multiset(&ext, m);
        rows.push(TermRow {
            degree: m,
            summands: computed.len(),
            matches_formula: computed == formula,
            matches_alt_data: computed == alt,
            matches_happel: computed == happel,
        });
    }
    // adjudicate the ambiguous odd-beta reading for e8
    let e8_beta_reading = if family == Family::E8 {
        let mut standard_all = true;
        let mut seven_all = true;
        for m in (1..=max_degree.min(family.base_period() - 1)).step_by(2) {
            let mut computed = res.term_multiset(m);
            computed.sort();
            let mut standard =
                predicted::terms_with_reading(family, s, m, predicted::E8BetaReading::BlockTimesEight);
            standard.sort();
            let mut seven =
                predicted::terms_with_reading(family, s, m, predicted::E8BetaReading::BlockTimesSeven);
            seven.sort();
            standard_all &= computed == standard;
            seven_all &= computed == seven;
        }
        Some(match (standard_all, seven_all) {
            (true, true) => "both (indistinguishable at this s)".to_string(),
            (true, false) => "block-times-eight".to_string(),
            (false, true) => "block-times-seven".to_string(),
            (false, false) => "neither".to_string(),
        })
    } else {
        None
    };
    let ok = dd_zero
        && minimal
        && exact
        && rows
            .iter()
            .all(|r| r.matches_formula && r.matches_alt_data && r.matches_happel);
    TermsCheck {
        dd_zero,
        minimal,
        exact,
        rows,
        e8_beta_reading,
        ok,
    }
}

fn dims_check(
    family: Family,
    s: usize,
    p: u64,
    cx: &CochainComplex,
    max_degree: usize,
    parity: Option<ParityReading>,
) -> DimsCheck {
    let readings: Vec<ParityReading> = match parity {
        Some(r) => vec![r],
        None => vec![ParityReading::EllPlusM, ParityReading::Ell],
    };
    let period = family.base_period();
    let mut rows = Vec::new();
    for t in 0..=max_degree {
        let split = DegreeSplit::new(period, t);
        let hom = cx.hom_dim(t);
        let im = cx.image_dim(t);
        let hh = cx.hh_dim(t);
        let expected_hom = expected::expected_hom(family, s, t);
        let eim_lit = expected::expected_im(family, s, p, t, ParityReading::EllPlusM);
        let eim_alt = expected::expected_im(family, s, p, t, ParityReading::Ell);
        let ehh_lit = expected::expected_hh(family, s, p, t, ParityReading::EllPlusM);
        let ehh_alt = expected::expected_hh(family, s, p, t, ParityReading::Ell);
        let im_readings: Vec<String> = readings
            .iter()
            .filter(|r| expected::expected_im(family, s, p, t, **r) == im)
            .map(|r| r.to_string())
            .collect();
        let hh_readings: Vec<String> = readings
            .iter()
            .filter(|r| expected::expected_hh(family, s, p, t, **r) == hh)
            .map(|r| r.to_string())
            .collect();
        rows.push(DimRow {
            t,
            ell: split.ell,
            r: split.r,
            m: split.m,
            hom,
            im,
            hh,
            expected_hom,
            expected_im_lit: eim_lit,
            expected_im_alt: eim_alt,
            expected_hh_lit: ehh_lit,
            expected_hh_alt: ehh_alt,
            hom_match: hom == expected_hom,
            im_readings: im_readings.clone(),
            hh_match: !hh_readings.is_empty(),
            hh_readings,
        });
    }
    // per-case adjudication: for each published image case, the readings
    // that match at every computed degree of the case
    let mut adjudication = Vec::new();
    for case_rs in im_case_residues(family) {
        let mut consistent: Vec<String> = Vec::new();
        for r in &readings {
            let all_match = rows
                .iter()
                .filter(|row| case_rs.contains(&row.r))
                .all(|row| expected::expected_im(family, s, p, row.t, *r) == row.im);
            if all_match {
                consistent.push(r.to_string());
            }
        }
        adjudication.push(CaseAdjudication {
            case_rs,
            im_readings: consistent,
        });
    }
    let m_period = expected::period_m(family, s, p);
    let hh_dims: Vec<usize> = rows.iter().map(|r| r.hh).collect();
    let hh_periodic = periodicity::hh_dims_periodic(&hh_dims, m_period);
    let square_zero = cx.verify_square_zero();
    let ok = rows
        .iter()
        .all(|r| r.hom_match && !r.im_readings.is_empty() && r.hh_match)
        && hh_periodic
        && square_zero;
    DimsCheck {
        rows,
        adjudication,
        hh_periodic,
        ok,
    }
}

fn im_case_residues(family: Family) -> Vec<Vec<usize>> {
    match family {
        Family::E7 => vec![
            vec![0, 7, 8, 15, 16],
            vec![1, 14],
            vec![2, 13],
            vec![3, 12],
            vec![4, 11],
            vec![5, 10],
            vec![6, 9],
        ],
        Family::E8 => vec![
            vec![0, 7, 20, 27],
            vec![1, 26],
            vec![2, 25],
            vec![3, 24],
            vec![4, 8, 19, 23],
            vec![5, 22],
            vec![6, 21],
            vec![9, 18],
            vec![10, 17],
            vec![11, 16],
            vec![12, 15],
            vec![13, 14, 28],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_verify_run() {
        let config = JobConfig {
            family: Family::E7,
            s: 1,
            characteristic: 2,
            max_degree: Some(6),
            checks: vec![Check::Build, Check::Terms, Check::Dims, Check::Syzygies],
            parity: None,
            cache_dir: None,
        };
        let report = run(&config).unwrap();
        assert_eq!(report.mismatch_count(), 0, "{}", report.to_markdown());
        // deterministic serialization
        let report2 = run(&config).unwrap();
        assert_eq!(report.to_json(), report2.to_json());
        assert_eq!(report.to_csv(), report2.to_csv());
    }

    #[test]
    fn unknown_family_is_a_usage_error() {
        assert!(Family::parse("e9").is_none());
    }
}
