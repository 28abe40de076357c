//! Verification report: a lossless, machine-readable record of every
//! requested check, with deterministic JSON / CSV / markdown renderings.
//!
//! The serialized output is byte-identical for a fixed configuration:
//! wall-clock timings are kept out of the serialized structs and printed
//! to stderr by the CLI instead.

use crate::gens::GateReport;
use crate::periodicity::PeriodicityReport;
use crate::ring::{CellStatus, PresentationReport};
use crate::simples::SyzygyCheck;
use serde::Serialize;

#[derive(Serialize, Clone)]
pub struct ConfigEcho {
    pub family: String,
    pub s: usize,
    pub characteristic: u64,
    pub max_degree: usize,
    pub checks: Vec<String>,
    pub parity_reading: String,
}

#[derive(Serialize, Clone)]
pub struct BuildInfo {
    pub vertices: usize,
    pub arrows: usize,
    pub dimension: usize,
    pub automorphism_order: usize,
    pub published_order: usize,
    pub content_hash: String,
}

#[derive(Serialize, Clone)]
pub struct TermRow {
    pub degree: usize,
    pub summands: usize,
    pub matches_formula: bool,
    pub matches_alt_data: bool,
    pub matches_happel: bool,
}

#[derive(Serialize, Clone)]
pub struct TermsCheck {
    pub dd_zero: bool,
    pub minimal: bool,
    pub exact: bool,
    pub rows: Vec<TermRow>,
    /// which reading of the ambiguous odd-beta index matches (e8 only)
    pub e8_beta_reading: Option<String>,
    pub ok: bool,
}

#[derive(Serialize, Clone)]
pub struct DimRow {
    pub t: usize,
    pub ell: usize,
    pub r: usize,
    pub m: usize,
    pub hom: usize,
    pub im: usize,
    pub hh: usize,
    pub expected_hom: usize,
    pub expected_im_lit: usize,
    pub expected_im_alt: usize,
    pub expected_hh_lit: usize,
    pub expected_hh_alt: usize,
    pub hom_match: bool,
    /// readings under which the image dimension matches
    pub im_readings: Vec<String>,
    pub hh_readings: Vec<String>,
    pub hh_match: bool,
}

#[derive(Serialize, Clone)]
pub struct CaseAdjudication {
    pub case_rs: Vec<usize>,
    /// readings consistent across every computed degree of the case
    pub im_readings: Vec<String>,
}

#[derive(Serialize, Clone)]
pub struct DimsCheck {
    pub rows: Vec<DimRow>,
    pub adjudication: Vec<CaseAdjudication>,
    pub hh_periodic: bool,
    pub ok: bool,
}

#[derive(Serialize, Clone)]
pub struct CacheInfo {
    pub path: String,
    pub action: String,
}

#[derive(Serialize)]
pub struct VerificationReport {
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<TermsCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<DimsCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syzygies: Option<Vec<SyzygyCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodicity: Option<PeriodicityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_gate: Option<Vec<GateReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<CacheInfo>,
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn new(config: ConfigEcho) -> VerificationReport {
        VerificationReport {
            config,
            build: None,
            terms: None,
            dims: None,
            syzygies: None,
            periodicity: None,
            presentation: None,
            generator_gate: None,
            cache: None,
            timings: Vec::new(),
        }
    }

    /// Count of mismatches across all present sections; the CLI exit code
    /// is nonzero iff this is nonzero. Rejected generator transcriptions
    /// are recorded outcomes, not mismatches.
    pub fn mismatch_count(&self) -> usize {
        let mut n = 0;
        if let Some(b) = &self.build {
            if b.automorphism_order != b.published_order {
                n += 1;
            }
        }
        if let Some(t) = &self.terms {
            if !t.dd_zero {
                n += 1;
            }
            if !t.minimal {
                n += 1;
            }
            if !t.exact {
                n += 1;
            }
            n += t
                .rows
                .iter()
                .filter(|r| !(r.matches_formula && r.matches_alt_data && r.matches_happel))
                .count();
        }
        if let Some(d) = &self.dims {
            n += d.rows.iter().filter(|r| !r.hom_match).count();
            n += d.rows.iter().filter(|r| r.im_readings.is_empty()).count();
            n += d.rows.iter().filter(|r| !r.hh_match).count();
            if !d.hh_periodic {
                n += 1;
            }
        }
        if let Some(s) = &self.syzygies {
            n += s.iter().filter(|c| !c.ok).count();
        }
        if let Some(p) = &self.periodicity {
            if !p.ok {
                n += 1;
            }
        }
        if let Some(p) = &self.presentation {
            n += p
                .cells
                .iter()
                .chain(p.socle_cells.iter())
                .filter(|c| matches!(c.status, CellStatus::Mismatch(_)))
                .count();
            if !p.scaling_consistent {
                n += 1;
            }
            if !p.generation_ok {
                n += 1;
            }
            if !p.commutativity_ok {
                n += 1;
            }
            if !p.associativity_ok {
                n += 1;
            }
            if !p.unit_law_ok {
                n += 1;
            }
        }
        n
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV of the dimension rows, column order:
    /// family,s,char,t,ell,r,m,hom,im,hh,expected_hh,match
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,s,char,t,ell,r,m,hom,im,hh,expected_hh,match\n");
        if let Some(d) = &self.dims {
            for row in &d.rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    self.config.family,
                    self.config.s,
                    self.config.characteristic,
                    row.t,
                    row.ell,
                    row.r,
                    row.m,
                    row.hom,
                    row.im,
                    row.hh,
                    row.expected_hh_lit,
                    row.hh_match
                ));
            }
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut md = String::new();
        let c = &self.config;
        md.push_str(&format!(
            "# Verification report: {} s={} char={}\n\n",
            c.family, c.s, c.characteristic
        ));
        md.push_str(&format!(
            "checks: {}; max degree {}; parity reading {}\n\n",
            c.checks.join(", "),
            c.max_degree,
            c.parity_reading
        ));
        if let Some(b) = &self.build {
            md.push_str("## Algebra\n\n");
            md.push_str(&format!(
                "- vertices {}, arrows {}, dimension {}\n- automorphism order {} (published {}) {}\n- content hash `{}`\n\n",
                b.vertices,
                b.arrows,
                b.dimension,
                b.automorphism_order,
                b.published_order,
                check(b.automorphism_order == b.published_order),
                b.content_hash
            ));
        }
        if let Some(t) = &self.terms {
            md.push_str("## Resolution terms\n\n");
            md.push_str(&format!(
                "- d.d = 0: {}  minimal: {}  exact: {}\n",
                check(t.dd_zero),
                check(t.minimal),
                check(t.exact)
            ));
            if let Some(reading) = &t.e8_beta_reading {
                md.push_str(&format!("- odd beta-group index reading: {reading}\n"));
            }
            md.push_str("\n| degree | summands | formula | data table | happel |\n|---|---|---|---|---|\n");
            for r in &t.rows {
                md.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.degree,
                    r.summands,
                    check(r.matches_formula),
                    check(r.matches_alt_data),
                    check(r.matches_happel)
                ));
            }
            md.push('\n');
        }
        if let Some(d) = &self.dims {
            md.push_str("## Dimensions\n\n");
            md.push_str("| t | ell | r | m | hom | im | hh | hom ok | im readings | hh expected (lit/alt) | hh ok |\n");
            md.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
            for r in &d.rows {
                md.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {}/{} | {} |\n",
                    r.t,
                    r.ell,
                    r.r,
                    r.m,
                    r.hom,
                    r.im,
                    r.hh,
                    check(r.hom_match),
                    if r.im_readings.is_empty() {
                        "none".to_string()
                    } else {
                        r.im_readings.join("+")
                    },
                    r.expected_hh_lit,
                    r.expected_hh_alt,
                    check(r.hh_match)
                ));
            }
            // residue-major layout: one row per residue, observed hh at
            // each computed multiple of the base period
            let period = d.rows.iter().map(|r| r.r).max().map_or(0, |mx| mx + 1);
            let max_ell = d.rows.iter().map(|r| r.ell).max().unwrap_or(0);
            md.push_str("\nBy residue (computed hh at each ell):\n\n| r |");
            for ell in 0..=max_ell {
                md.push_str(&format!(" ell={ell} |"));
            }
            md.push_str("\n|---|");
            for _ in 0..=max_ell {
                md.push_str("---|");
            }
            md.push('\n');
            for r in 0..period {
                md.push_str(&format!("| {r} |"));
                for ell in 0..=max_ell {
                    match d.rows.iter().find(|row| row.r == r && row.ell == ell) {
                        Some(row) => md.push_str(&format!(
                            " {}{} |",
                            row.hh,
                            if row.hh_match { "" } else { "!" }
                        )),
                        None => md.push_str(" - |"),
                    }
                }
                md.push('\n');
            }
            md.push_str("\nPer-case image-dimension adjudication:\n\n");
            for a in &d.adjudication {
                md.push_str(&format!(
                    "- r in {:?}: consistent reading(s): {}\n",
                    a.case_rs,
                    if a.im_readings.is_empty() {
                        "none".to_string()
                    } else {
                        a.im_readings.join(", ")
                    }
                ));
            }
            md.push_str(&format!(
                "\nhh dimensions periodic over the window: {}\n\n",
                check(d.hh_periodic)
            ));
        }
        if let Some(s) = &self.syzygies {
            md.push_str("## Syzygy checks\n\n| vertex | power | expected | computed | terms | ok |\n|---|---|---|---|---|---|\n");
            for r in s {
                md.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    r.vertex,
                    r.power,
                    r.expected_vertex,
                    r.computed_vertex
                        .map_or("-".to_string(), |v| v.to_string()),
                    check(r.terms_match),
                    check(r.ok)
                ));
            }
            md.push('\n');
        }
        if let Some(p) = &self.periodicity {
            md.push_str("## Periodicity\n\n");
            md.push_str(&format!(
                "- automorphism order {} (published {}) {}\n- twist multiplicative: {}\n- syzygy twist isomorphism: {}\n- least inner power {} (= order: {})\n- period {} (published {}) {}\n\n",
                p.computed_order,
                p.published_order,
                check(p.order_ok),
                check(p.twist_multiplicative),
                p.syzygy_iso_found
                    .map_or("not attempted".to_string(), |b| check(b).to_string()),
                p.min_inner_power,
                check(p.min_inner_is_order),
                p.period,
                p.published_period,
                check(p.period == p.published_period)
            ));
        }
        if let Some(p) = &self.presentation {
            md.push_str("## Ring presentation\n\n");
            md.push_str(&format!(
                "- window {} (period M = {})\n- generators: {:?}\n- scaling: {} ({})\n- generation: {}  commutativity: {}  associativity: {}  unit law: {}\n\n",
                p.window,
                p.period_m,
                p.generators,
                check(p.scaling_consistent),
                p.scaling_detail,
                check(p.generation_ok),
                check(p.commutativity_ok),
                check(p.associativity_ok),
                check(p.unit_law_ok)
            ));
            // compact grid over the table types, mirroring the published
            // product tables cell by cell
            let mut types: Vec<usize> = p
                .cells
                .iter()
                .flat_map(|c| [c.a, c.b])
                .collect();
            types.sort();
            types.dedup();
            md.push_str("Cell grid (ok = matches, x = mismatch, . = out of window, blank = no published cell):\n\n");
            md.push_str("| |");
            for t in &types {
                md.push_str(&format!(" {t} |"));
            }
            md.push('\n');
            md.push_str("|---|");
            for _ in &types {
                md.push_str("---|");
            }
            md.push('\n');
            for a in &types {
                md.push_str(&format!("| **{a}** |"));
                for b in &types {
                    let cell = p
                        .cells
                        .iter()
                        .find(|c| (c.a == *a && c.b == *b) || (c.a == *b && c.b == *a));
                    let mark = match cell.map(|c| &c.status) {
                        Some(CellStatus::Match) => "ok",
                        Some(CellStatus::OutOfWindow) => ".",
                        Some(CellStatus::Mismatch(_)) => "x",
                        None => " ",
                    };
                    md.push_str(&format!(" {mark} |"));
                }
                md.push('\n');
            }
            md.push('\n');
            if !p.skipped_slots.is_empty() {
                md.push_str("Skipped generator slots (budget window):\n");
                for slot in &p.skipped_slots {
                    md.push_str(&format!("- {slot}\n"));
                }
                md.push('\n');
            }
            md.push_str("| a | b | deg a | deg b | expected | status | observed | commutes |\n|---|---|---|---|---|---|---|---|\n");
            for cell in p.cells.iter().chain(p.socle_cells.iter()) {
                let status = match &cell.status {
                    CellStatus::Match => check(true).to_string(),
                    CellStatus::OutOfWindow => "out of window".to_string(),
                    CellStatus::Mismatch(m) => format!("MISMATCH: {m}"),
                };
                md.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    cell.a,
                    cell.b,
                    cell.degree_a,
                    cell.degree_b,
                    cell.expected,
                    status,
                    cell.observed.as_deref().unwrap_or("-"),
                    cell.commutes.map_or("-".to_string(), |b| check(b).to_string())
                ));
            }
            md.push('\n');
        }
        if let Some(g) = &self.generator_gate {
            md.push_str("## Published generator matrices\n\n| type | degree | outcome |\n|---|---|---|\n");
            for r in g {
                let outcome = match &r.outcome {
                    crate::gens::GateOutcome::ConfirmsComputed => "validated, confirms computed".to_string(),
                    crate::gens::GateOutcome::CocycleOtherClass => {
                        "validated, different class line".to_string()
                    }
                    crate::gens::GateOutcome::CocycleExact => {
                        "validated, class vanishes (coboundary here)".to_string()
                    }
                    crate::gens::GateOutcome::Rejected(why) => format!("rejected: {why}"),
                };
                md.push_str(&format!("| {} | {} | {} |\n", r.gen_type, r.degree, outcome));
            }
            md.push('\n');
        }
        md.push_str(&format!("\nTotal mismatches: {}\n", self.mismatch_count()));
        md
    }
}

fn check(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
