//! On-disk resolution cache: versioned, self-describing, revalidated on
//! load.
//!
//! A cache file records the algebra descriptor hash, the terms, and every
//! differential entry (path classes stored as traversal words so the file
//! does not depend on internal class ids). Loading rejects version or
//! hash mismatches and anything that fails the d.d = 0 revalidation, so a
//! corrupt or tampered file can never masquerade as a computed
//! resolution. Writes go through a temp file and an atomic rename.

use crate::algebra::Algebra;
use crate::bimodule::{BimoduleMap, ProjSum};
use crate::field::Scalar;
use crate::quiver::Family;
use crate::resolution::Resolution;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

pub const FORMAT: &str = "resolution-cache/v1";

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    Json(serde_json::Error),
    WrongFormat(String),
    AlgebraMismatch(String),
    Corrupt(String),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache io error: {e}"),
            CacheError::Json(e) => write!(f, "cache parse error: {e}"),
            CacheError::WrongFormat(v) => write!(f, "unsupported cache format {v:?}"),
            CacheError::AlgebraMismatch(d) => write!(f, "cache does not match the algebra: {d}"),
            CacheError::Corrupt(d) => write!(f, "cache failed revalidation: {d}"),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

impl From<serde_json::Error> for CacheError {
    fn from(e: serde_json::Error) -> Self {
        CacheError::Json(e)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRec {
    k: usize,
    l: usize,
    /// (left word source, left arrows, right word source, right arrows, coeff)
    terms: Vec<(usize, Vec<usize>, usize, Vec<usize>, String)>,
}

#[derive(Serialize, Deserialize)]
struct DiffRec {
    entries: Vec<EntryRec>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    family: String,
    s: usize,
    characteristic: u64,
    algebra_hash: String,
    max_degree: usize,
    terms: Vec<Vec<(usize, usize)>>,
    diffs: Vec<DiffRec>,
}

/// Canonical file name for a configuration inside a cache directory.
pub fn cache_file_name(family: Family, s: usize, characteristic: u64, max_degree: usize) -> String {
    format!("{family}-s{s}-p{characteristic}-deg{max_degree}.json")
}

pub fn store(res: &Resolution, path: &Path) -> Result<(), CacheError> {
    let alg = &res.algebra;
    let mut diffs = Vec::with_capacity(res.diffs.len());
    for d in &res.diffs {
        let mut entries = Vec::new();
        for (k, row) in d.entries.iter().enumerate() {
            for (l, entry) in row.iter().enumerate() {
                if entry.is_empty() {
                    continue;
                }
                let terms = entry
                    .iter()
                    .map(|(u, v, c)| {
                        let wu = alg.basis_word(*u);
                        let wv = alg.basis_word(*v);
                        (
                            wu.source,
                            wu.arrows.clone(),
                            wv.source,
                            wv.arrows.clone(),
                            c.canonical_string(),
                        )
                    })
                    .collect();
                entries.push(EntryRec { k, l, terms });
            }
        }
        diffs.push(DiffRec { entries });
    }
    let file = CacheFile {
        format: FORMAT.to_string(),
        family: alg.family().to_string(),
        s: alg.s(),
        characteristic: alg.field.characteristic(),
        algebra_hash: format!("{:016x}", alg.content_hash()),
        max_degree: res.max_degree(),
        terms: res.terms.iter().map(|t| t.summands.clone()).collect(),
        diffs,
    };
    let json = serde_json::to_string(&file)?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, json)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Load and revalidate. The algebra is rebuilt by the caller and passed
/// in; its content hash must match, and the reconstructed differentials
/// must satisfy d.d = 0 and minimality before the resolution is trusted.
pub fn load(algebra: Arc<Algebra>, path: &Path) -> Result<Resolution, CacheError> {
    let raw = std::fs::read_to_string(path)?;
    let file: CacheFile = serde_json::from_str(&raw)?;
    if file.format != FORMAT {
        return Err(CacheError::WrongFormat(file.format));
    }
    if file.family != algebra.family().to_string()
        || file.s != algebra.s()
        || file.characteristic != algebra.field.characteristic()
    {
        return Err(CacheError::AlgebraMismatch(format!(
            "file is for {} s={} char={}",
            file.family, file.s, file.characteristic
        )));
    }
    let hash = format!("{:016x}", algebra.content_hash());
    if file.algebra_hash != hash {
        return Err(CacheError::AlgebraMismatch(format!(
            "algebra hash {} vs file {}",
            hash, file.algebra_hash
        )));
    }
    if file.terms.len() != file.diffs.len() + 1 {
        return Err(CacheError::Corrupt("term/differential count mismatch".into()));
    }
    let terms: Vec<ProjSum> = file
        .terms
        .iter()
        .map(|t| ProjSum {
            summands: t.clone(),
        })
        .collect();
    let mut diffs = Vec::with_capacity(file.diffs.len());
    for (m, drec) in file.diffs.iter().enumerate() {
        let mut map = BimoduleMap::zero(terms[m + 1].clone(), terms[m].clone());
        for rec in &drec.entries {
            if rec.k >= terms[m].len() || rec.l >= terms[m + 1].len() {
                return Err(CacheError::Corrupt(format!(
                    "entry ({}, {}) outside differential {m}",
                    rec.k, rec.l
                )));
            }
            for (usrc, uarr, vsrc, varr, cstr) in &rec.terms {
                let u = algebra
                    .class_of_word(*usrc, uarr)
                    .ok_or_else(|| CacheError::Corrupt("left word is not a basis class".into()))?;
                let v = algebra
                    .class_of_word(*vsrc, varr)
                    .ok_or_else(|| CacheError::Corrupt("right word is not a basis class".into()))?;
                let c = Scalar::parse(&algebra.field, cstr)
                    .ok_or_else(|| CacheError::Corrupt(format!("bad scalar {cstr:?}")))?;
                map.entries[rec.k][rec.l].push((u, v, c));
            }
        }
        diffs.push(map);
    }
    let res = Resolution::from_parts(algebra, terms, diffs);
    if !res.verify_dd_zero() {
        return Err(CacheError::Corrupt("d.d != 0 after reload".into()));
    }
    if !res.verify_minimality() {
        return Err(CacheError::Corrupt("non-minimal entry after reload".into()));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn small_resolution() -> Resolution {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(3).unwrap()).unwrap());
        Resolution::build(alg, 4)
    }

    #[test]
    fn round_trip_preserves_structure() {
        let res = small_resolution();
        let dir = std::env::temp_dir().join(format!("hh-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.json");
        store(&res, &path).unwrap();
        let alg2 = Arc::new(Algebra::build(Family::E7, 1, Field::new(3).unwrap()).unwrap());
        let loaded = load(alg2, &path).unwrap();
        assert_eq!(loaded.max_degree(), res.max_degree());
        for m in 0..=res.max_degree() {
            assert_eq!(loaded.terms[m], res.terms[m]);
        }
        for m in 0..res.diffs.len() {
            for k in 0..res.terms[m].len() {
                for l in 0..res.terms[m + 1].len() {
                    assert_eq!(
                        format!("{:?}", sorted(&res.diffs[m].entries[k][l])),
                        format!("{:?}", sorted(&loaded.diffs[m].entries[k][l])),
                    );
                }
            }
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    fn sorted(entry: &[(usize, usize, Scalar)]) -> Vec<(usize, usize, String)> {
        let mut v: Vec<(usize, usize, String)> = entry
            .iter()
            .map(|(u, vv, c)| (*u, *vv, c.canonical_string()))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn tampered_coefficient_is_rejected() {
        let res = small_resolution();
        let dir = std::env::temp_dir().join(format!("hh-cache-tamper-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tampered.json");
        store(&res, &path).unwrap();
        // flip one coefficient: 1 -> 2 in the first differential entry
        let raw = std::fs::read_to_string(&path).unwrap();
        let mut file: serde_json::Value = serde_json::from_str(&raw).unwrap();
        let t = &mut file["diffs"][0]["entries"][0]["terms"][0][4];
        *t = serde_json::Value::String(if t.as_str() == Some("1") { "2" } else { "1" }.into());
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        let alg2 = Arc::new(Algebra::build(Family::E7, 1, Field::new(3).unwrap()).unwrap());
        match load(alg2, &path) {
            Err(CacheError::Corrupt(_)) => {}
            Err(other) => panic!("tampered cache must be rejected as corrupt, got {other}"),
            Ok(_) => panic!("tampered cache must be rejected"),
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn wrong_configuration_is_rejected() {
        let res = small_resolution();
        let dir = std::env::temp_dir().join(format!("hh-cache-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.json");
        store(&res, &path).unwrap();
        // stored for E7 char 3; loading against E8 or another char must fail
        let other = Arc::new(Algebra::build(Family::E8, 1, Field::new(3).unwrap()).unwrap());
        match load(other, &path) {
            Err(CacheError::AlgebraMismatch(_)) => {}
            Err(other) => panic!("expected an algebra mismatch, got {other}"),
            Ok(_) => panic!("wrong family must be rejected"),
        }
        let other_char = Arc::new(Algebra::build(Family::E7, 1, Field::new(5).unwrap()).unwrap());
        match load(other_char, &path) {
            Err(CacheError::AlgebraMismatch(_)) => {}
            Err(other) => panic!("expected an algebra mismatch, got {other}"),
            Ok(_) => panic!("wrong characteristic must be rejected"),
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn wrong_version_is_rejected() {
        let res = small_resolution();
        let dir = std::env::temp_dir().join(format!("hh-cache-ver-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("version.json");
        store(&res, &path).unwrap();
        let raw = std::fs::read_to_string(&path).unwrap();
        let mut file: serde_json::Value = serde_json::from_str(&raw).unwrap();
        file["format"] = serde_json::Value::String("resolution-cache/v0".into());
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        let alg2 = Arc::new(Algebra::build(Family::E7, 1, Field::new(3).unwrap()).unwrap());
        match load(alg2, &path) {
            Err(CacheError::WrongFormat(_)) => {}
            Err(other) => panic!("wrong version must be rejected, got {other}"),
            Ok(_) => panic!("wrong version must be rejected"),
        }
        std::fs::remove_dir_all(&dir).ok();
    }
}
