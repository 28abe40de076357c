//! Transcriptions of the published generator matrices (maps Q_t -> Q_0
//! described entrywise as `c * w_{x -> y} (x) e_x`), and the validation
//! gate that decides whether each transcription is usable against the
//! engine's own resolution.
//!
//! Rows index Q_0 and columns Q_t, both in the canonical position-major
//! order (index = position * s + block). The gate checks entry typing
//! against the expected summands, resolves canonical paths, matches
//! expected summands to the computed ones, and finally tests
//! delta-closedness under the engine differentials. Any failure is a
//! `Rejected` outcome with a diagnostic; since the published matrices were
//! written against a different chain-level basis, rejections are an
//! expected and recorded result, not an error.

use crate::algebra::AlgebraError;
use crate::cohomology::CochainComplex;
use crate::field::Scalar;
use crate::quiver::Family;
use crate::resolution::{predicted, Resolution};
use serde::Serialize;

/// One published entry: coefficient, row, column, and the canonical path
/// endpoints in covering-quiver coordinates (the right tensor factor is
/// always the idempotent at the path's source).
#[derive(Clone, Debug)]
pub struct EntrySpec {
    pub row: i64,
    pub col: i64,
    pub coeff: i64,
    pub from: i64,
    pub to: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub enum GateOutcome {
    /// validated cochain agrees with a computed generator class up to a
    /// nonzero scalar
    ConfirmsComputed,
    /// validated cochain is a cocycle but spans a different class line
    CocycleOtherClass,
    /// validated cochain is a cocycle but its class vanishes (it is a
    /// coboundary under the engine differentials)
    CocycleExact,
    Rejected(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct GateReport {
    pub gen_type: usize,
    pub degree: usize,
    pub outcome: GateOutcome,
}

fn e(row: i64, col: i64, coeff: i64, from: i64, to: i64) -> EntrySpec {
    EntrySpec {
        row,
        col,
        coeff,
        from,
        to,
    }
}

/// (-k)_s: smallest nonnegative residue of -k modulo s.
fn neg_res(k: i64, s: i64) -> i64 {
    (-k).rem_euclid(s)
}

/// Published entry list for one generator type.
pub fn entries(family: Family, gen_type: usize, s: usize) -> Option<Vec<EntrySpec>> {
    let s = s as i64;
    let mut v: Vec<EntrySpec> = Vec::new();
    match family {
        Family::E7 => match gen_type {
            1 => {
                for j in 0..7 * s {
                    let j2 = j / s;
                    v.push(e(j, j, 1, 7 * j + j2, 7 * j + j2));
                }
            }
            2 => v.push(e(0, 0, 1, 0, 7)),
            3 => {
                v.push(e(0, 0, 1, 0, 1));
                v.push(e(0, s, 1, 0, 4));
            }
            4 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 7 * j, 7 * j + 2));
                }
                for j in s..2 * s {
                    v.push(e(j - s, j, -1, 7 * j, 7 * j + 5));
                }
                for j in 4 * s..5 * s {
                    v.push(e(j - s, j, 1, 7 * j + 3, 7 * (j + 1)));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j - s, j, 1, 7 * j + 6, 7 * (j + 1) + 1));
                }
            }
            5 => v.push(e(0, 0, 1, 0, 6)),
            6 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 7 * j, 7 * j + 4));
                }
                for j in s..2 * s {
                    v.push(e(j - s, j, -1, 7 * j, 7 * j + 3));
                }
                for j in 6 * s..7 * s {
                    v.push(e(j - 2 * s, j, 1, 7 * j + 4, 7 * (j + 1)));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j - 2 * s, j, 1, 7 * j + 5, 7 * j + 6));
                }
                for j in 9 * s..10 * s {
                    v.push(e(j - 3 * s, j, -1, 7 * j + 6, 7 * (j + 1) + 5));
                }
            }
            7 => v.push(e(6 * s, 10 * s, 1, 6, 13)),
            8 => {
                for j in 2 * s..3 * s {
                    v.push(e(j - 2 * s, j, 1, 7 * j, 7 * j + 4));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j - 2 * s, j, 1, 7 * j + 5, 7 * j + 6));
                }
                for j in 9 * s..10 * s {
                    v.push(e(j - 3 * s, j, 1, 7 * j + 6, 7 * (j + 1) + 4));
                }
            }
            9 => {
                for j in s..2 * s {
                    v.push(e(j - s, j, 1, 7 * j, 7 * j));
                }
                for j in 2 * s..3 * s {
                    v.push(e(j - s, j, -1, 7 * j + 1, 7 * j + 1));
                }
                for j in 4 * s..5 * s {
                    v.push(e(j - 2 * s, j, -1, 7 * j + 2, 7 * j + 2));
                }
                for j in 5 * s..6 * s {
                    v.push(e(j - 2 * s, j, -1, 7 * j + 3, 7 * j + 3));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - 4 * s, j, 1, 7 * j + 4, 7 * j + 5));
                }
                for j in 11 * s..12 * s {
                    v.push(e(j - 5 * s, j, 1, 7 * j + 6, 7 * j + 6));
                }
                for j in 12 * s..13 * s {
                    v.push(e(j - 6 * s, j, -1, 7 * j + 6, 7 * (j + 1)));
                }
            }
            10 => v.push(e(0, 0, -1, 0, 6)),
            11 => {
                v.push(e(0, 0, 1, 0, 5));
                v.push(e(0, 2 * s, 1, 0, 1));
                let j = neg_res(1, s);
                v.push(e(
                    (j - 4 * s).rem_euclid(7 * s),
                    10 * s + neg_res(1, s),
                    1,
                    7 * j + 6,
                    7 * (j + 1) + 5,
                ));
            }
            12 => {
                for j in s..2 * s {
                    v.push(e(j - s, j, 1, 7 * j, 7 * j));
                }
                for j in 2 * s..3 * s {
                    v.push(e(j - s, j, 1, 7 * j + 1, 7 * j + 2));
                }
                for j in 3 * s..4 * s {
                    v.push(e(j - s, j, 1, 7 * j + 2, 7 * j + 3));
                }
                for j in 6 * s..7 * s {
                    v.push(e(j - 2 * s, j, 1, 7 * j + 4, 7 * j + 4));
                }
                for j in 9 * s..10 * s {
                    v.push(e(j - 4 * s, j, 1, 7 * j + 5, 7 * j + 5));
                }
                for j in 10 * s..11 * s {
                    v.push(e(j - 4 * s, j, 1, 7 * j + 6, 7 * j + 6));
                }
            }
            13 => {
                v.push(e(s, 2 * s, 1, 1, 7));
                v.push(e(4 * s, 5 * s, 1, 4, 7));
            }
            14 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 7 * j, 7 * j));
                }
                for j in s..2 * s {
                    v.push(e(j, j, 1, 7 * j + 1, 7 * j + 3));
                }
                for j in 6 * s..7 * s {
                    v.push(e(j - 2 * s, j, -1, 7 * j + 4, 7 * j + 5));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - 2 * s, j, 1, 7 * j + 6, 7 * j + 6));
                }
            }
            15 => {
                v.push(e(0, 0, 1, 0, 3));
                v.push(e(0, s, 1, 0, 5));
            }
            16 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 7 * j, 7 * j + 6));
                }
                for j in 4 * s..5 * s {
                    v.push(e(j, j, -1, 7 * j + 4, 7 * (j + 1)));
                }
                for j in 5 * s..6 * s {
                    v.push(e(j, j, 1, 7 * j + 5, 7 * (j + 1) + 4));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j - s, j, -1, 7 * j + 6, 7 * (j + 1) + 5));
                }
            }
            17 => {
                for j in 0..4 * s {
                    let j2 = j / s;
                    v.push(e(j, j, 1, 7 * j + j2, 7 * j + j2));
                }
                for j in 6 * s..7 * s {
                    v.push(e(j, j, 1, 7 * j + 6, 7 * j + 6));
                }
            }
            18 => v.push(e(0, 0, -1, 0, 7)),
            19 => v.push(e(0, 0, 1, 0, 7)),
            20 => v.push(e(4 * s, 4 * s, 1, 4, 11)),
            21 => v.push(e(5 * s, 5 * s, 1, 5, 12)),
            22 => v.push(e(3 * s, 3 * s, 1, 3, 10)),
            23 => v.push(e(s, s, 1, 1, 8)),
            24 => v.push(e(2 * s, 2 * s, 1, 2, 9)),
            25 => v.push(e(6 * s, 6 * s, 1, 6, 13)),
            _ => return None,
        },
        Family::E8 => match gen_type {
            1 => {
                for j in 0..8 * s {
                    let j2 = j / s;
                    v.push(e(j, j, 1, 8 * j + j2, 8 * j + j2));
                }
            }
            2 => {
                v.push(e(0, 0, 1, 0, 1));
                v.push(e(0, s, 1, 0, 5));
            }
            3 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 8 * j, 8 * j + 2));
                }
                for j in s..2 * s {
                    v.push(e(j - s, j, -1, 8 * j, 8 * j + 6));
                }
                for j in 5 * s..6 * s {
                    v.push(e(j - s, j, 1, 8 * j + 4, 8 * (j + 1)));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - s, j, 1, 8 * j + 7, 8 * (j + 1) + 1));
                }
            }
            4 => v.push(e(0, 0, 1, 0, 7)),
            5 => {
                for j in 0..3 * s {
                    let j2 = j / s;
                    v.push(e(j % s, j, 1 - 2 * i64::from(j2 == 2), 8 * j, 8 * j + 5 - 2 * j2));
                }
                for j in 5 * s..8 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(
                        j - 2 * s,
                        j,
                        sign,
                        8 * j + j2 - 2,
                        8 * (j + 1) - i64::from(j2 == 6),
                    ));
                }
            }
            6 => v.push(e(0, 0, 1, 0, 7)),
            7 => {
                for j in s..2 * s {
                    v.push(e(j - s, j, 1, 8 * j, 8 * j + 4));
                }
                for j in 3 * s..4 * s {
                    v.push(e(j - 3 * s, j, 1, 8 * j, 8 * j + 5));
                }
                for j in 9 * s..10 * s {
                    v.push(e(j - 3 * s, j, 1, 8 * j + 6, 8 * j + 7));
                }
                for j in 11 * s..12 * s {
                    v.push(e(j - 4 * s, j, 1, 8 * j + 7, 8 * (j + 1) + 5));
                }
            }
            8 => v.push(e(0, 0, -1, 0, 7)),
            9 => {
                for j in 0..3 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(
                        j % s,
                        j,
                        sign,
                        8 * j,
                        8 * j + 3 * j2 + 5 * i64::from(j2 == 0),
                    ));
                }
                for j in 5 * s..8 * s {
                    let j2 = j / s;
                    v.push(e(
                        j - 3 * s,
                        j,
                        1 + i64::from(j2 == 6),
                        8 * j + j2 - 3,
                        8 * j + 7 + i64::from(j2 == 6),
                    ));
                }
                for j in 9 * s..10 * s {
                    v.push(e(j - 4 * s, j, 1, 8 * j + 5, 8 * (j + 1)));
                }
                for j in 12 * s..14 * s {
                    let j2 = j / s;
                    v.push(e(
                        7 * s + j % s,
                        j,
                        1 + 2 * i64::from(j2 == 13),
                        8 * j + 7,
                        8 * (j + 1) + 2 * (j2 - 11),
                    ));
                }
            }
            10 => {
                for j in s..3 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(j % s, j, sign, 8 * j, 8 * j));
                }
                for j in 4 * s..7 * s {
                    let j2 = j / s;
                    v.push(e(
                        j - 3 * s,
                        j,
                        -1 + 2 * i64::from(j2 == 4),
                        8 * j + j2 - 3,
                        8 * j + j2 - 3,
                    ));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - 4 * s, j, -1, 8 * j + 4, 8 * j + 4));
                }
                for j in 10 * s..11 * s {
                    v.push(e(j - 5 * s, j, 1, 8 * j + 5, 8 * j + 5));
                }
                for j in 14 * s..15 * s {
                    v.push(e(j - 8 * s, j, 1, 8 * j + 6, 8 * j + 6));
                }
                for j in 16 * s..19 * s {
                    let j2 = j / s;
                    let sign = if j2 % 2 == 0 { 1 } else { -1 };
                    v.push(e(
                        7 * s + j % s,
                        j,
                        sign,
                        8 * j + 7,
                        8 * j + 7 + i64::from(j2 == 18),
                    ));
                }
            }
            11 => {
                v.push(e(0, s, 1, 0, 8));
                v.push(e(0, 2 * s, 1, 0, 8));
            }
            12 => {
                for (row_off, col_off, coeff, from_off, to_off, kk) in [
                    (0, 0, 1, 0, 2, 5i64),
                    (0, 0, -1, 0, 2, 4),
                    (0, 0, 1, 0, 2, 3),
                    (0, 0, -1, 0, 2, 2),
                    (0, s, -1, 0, 6, 6),
                    (0, s, 1, 0, 6, 2),
                    (2 * s, 6 * s, -1, 2, 8, 5),
                    (2 * s, 6 * s, 1, 2, 8, 4),
                    (2 * s, 6 * s, -1, 2, 8, 3),
                    (3 * s, 7 * s, -1, 3, 7, 6),
                    (3 * s, 7 * s, 1, 3, 7, 5),
                    (3 * s, 7 * s, -1, 3, 7, 4),
                    (3 * s, 7 * s, 1, 3, 7, 3),
                    (4 * s, 8 * s, -1, 4, 7, 2),
                    (5 * s, 10 * s, 1, 5, 7, 6),
                    (5 * s, 10 * s, -1, 5, 7, 5),
                    (5 * s, 10 * s, 1, 5, 7, 4),
                    (5 * s, 10 * s, -1, 5, 7, 3),
                    (5 * s, 10 * s, -1, 5, 7, 2),
                ] {
                    let j = neg_res(kk, s);
                    // to_off counts within the block; 8 means the next
                    // block bottom
                    let to = 8 * j + to_off;
                    v.push(e(row_off + j, col_off + j, coeff, 8 * j + from_off, to));
                }
            }
            13 => {
                for j in s..2 * s {
                    v.push(e(j - s, j, 1, 8 * j, 8 * j));
                }
                for j in 3 * s..5 * s {
                    let j2 = j / s;
                    v.push(e(j - 2 * s, j, -1, 8 * j + j2 - 2, 8 * j + j2 - 1));
                }
                for j in 6 * s..7 * s {
                    v.push(e(j - 3 * s, j, -1, 8 * j + 3, 8 * j + 4));
                }
                for j in 11 * s..12 * s {
                    v.push(e(j - 6 * s, j, 1, 8 * j + 5, 8 * j + 6));
                }
                for j in 12 * s..14 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(j - 7 * s, j, sign, 8 * j + j2 - 7, 8 * j + j2 - 7));
                }
                for j in 16 * s..17 * s {
                    v.push(e(j - 9 * s, j, 1, 8 * j + 7, 8 * j + 7));
                }
                for j in 18 * s..19 * s {
                    v.push(e(j - 11 * s, j, 1, 8 * j + 7, 8 * (j + 1)));
                }
            }
            14 => {
                let j3 = neg_res(3, s);
                v.push(e(j3, s + j3, 1, 8 * j3, 8 * j3 + 3));
                v.push(e(s + j3, 4 * s + j3, -1, 8 * j3 + 1, 8 * j3 + 8));
                v.push(e(5 * s + j3, 9 * s + j3, 1, 8 * j3 + 5, 8 * j3 + 7));
                let j4 = neg_res(4, s);
                v.push(e(7 * s + j4, 14 * s + j4, 1, 8 * j4 + 7, 8 * (j4 + 1) + 6));
            }
            15 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 8 * j, 8 * j + 3));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - 5 * s, j, -1, 8 * j + 3, 8 * (j + 1)));
                }
                for j in 10 * s..11 * s {
                    v.push(e(j - 5 * s, j, -1, 8 * j + 5, 8 * j + 7));
                }
                for j in 14 * s..15 * s {
                    v.push(e(j - 7 * s, j, 1, 8 * j + 7, 8 * (j + 1) + 2));
                }
            }
            16 => v.push(e(0, 0, 1, 0, 8)),
            17 => {
                for j in s..2 * s {
                    v.push(e(j - s, j, -1, 8 * j, 8 * j + 4));
                }
                for j in 3 * s..4 * s {
                    v.push(e(j - 3 * s, j, 1, 8 * j, 8 * j + 5));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j - 4 * s, j, -1, 8 * j + 3, 8 * j + 7));
                }
                for j in 9 * s..10 * s {
                    v.push(e(j - 4 * s, j, -1, 8 * j + 5, 8 * (j + 1)));
                }
                for j in 13 * s..14 * s {
                    v.push(e(j - 6 * s, j, 1, 8 * j + 7, 8 * (j + 1) + 3));
                }
            }
            18 => {
                for j in s..2 * s {
                    v.push(e(j - s, j, 1, 8 * j, 8 * j));
                }
                for j in 2 * s..3 * s {
                    v.push(e(j - 2 * s, j, 2, 8 * j, 8 * j));
                }
                for j in 4 * s..6 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 2 } else { -2 };
                    v.push(e(j - 3 * s, j, sign, 8 * j + j2 - 3, 8 * j + j2 - 3));
                }
                for j in 7 * s..9 * s {
                    let j2 = j / s;
                    v.push(e(j - 4 * s, j, 2, 8 * j + j2 - 4, 8 * j + j2 - 4));
                }
                for j in 11 * s..12 * s {
                    v.push(e(j - 6 * s, j, 2, 8 * j + 5, 8 * j + 6));
                }
                for j in 12 * s..14 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(j - 7 * s, j, sign, 8 * j + j2 - 7, 8 * j + j2 - 7));
                }
                for j in 16 * s..17 * s {
                    v.push(e(j - 9 * s, j, 1, 8 * j + 7, 8 * j + 7));
                }
                for j in 18 * s..19 * s {
                    v.push(e(j - 11 * s, j, 2, 8 * j + 7, 8 * j + 7));
                }
            }
            19 => v.push(e(0, 0, 1, 0, 8)),
            20 => {
                let j3 = neg_res(3, s);
                let j2r = neg_res(2, s);
                let j4 = neg_res(4, s);
                v.push(e(j3, s + j3, -1, 8 * j3, 8 * j3 + 6));
                v.push(e(j2r, s + j2r, -1, 8 * j2r, 8 * j2r + 6));
                v.push(e(s + j4, 4 * s + j4, -1, 8 * j4 + 1, 8 * (j4 + 1)));
                v.push(e(2 * s + j3, 5 * s + j3, 1, 8 * j3 + 2, 8 * j3 + 7));
                v.push(e(2 * s + j2r, 5 * s + j2r, 1, 8 * j2r + 2, 8 * j2r + 7));
                v.push(e(5 * s + j4, 9 * s + j4, 1, 8 * j4 + 5, 8 * (j4 + 1)));
            }
            21 => {
                for j in s..3 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(j - s, j, sign, 8 * j + j2 - 1, 8 * j + 2 * (j2 - 1)));
                }
                for j in 4 * s..6 * s {
                    let j2 = j / s;
                    v.push(e(j - 2 * s, j, -1, 8 * j + j2 - 2, 8 * j + j2 - 1));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - 3 * s, j, -1, 8 * j + 5, 8 * j + 6));
                }
                for j in 13 * s..15 * s {
                    let j2 = j / s;
                    let sign = if (j2 + 1) % 2 == 0 { 1 } else { -1 };
                    v.push(e(7 * s + j % s, j, sign, 8 * j + 7, 8 * j + j2 - 6));
                }
            }
            22 => {
                for kk in [7i64, 6, 5] {
                    let j = neg_res(kk, s);
                    let sign = if kk == 6 { 1 } else { -1 };
                    v.push(e(3 * s + j, 5 * s + j, sign, 8 * j + 3, 8 * j + 7));
                }
                for kk in [7i64, 6, 5] {
                    let j = neg_res(kk, s);
                    let sign = if kk == 6 { 1 } else { -1 };
                    v.push(e(5 * s + j, 7 * s + j, sign, 8 * j + 5, 8 * j + 7));
                }
            }
            23 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 8 * j, 8 * j));
                }
                for j in 2 * s..4 * s {
                    let j2 = j / s;
                    v.push(e(j - s, j, -1, 8 * j + j2 - 1, 8 * j + j2 + 1));
                }
                for j in 8 * s..9 * s {
                    v.push(e(j - 3 * s, j, -1, 8 * j + 5, 8 * j + 5));
                }
                for j in 10 * s..12 * s {
                    let j2 = j / s;
                    v.push(e(j - 4 * s, j, 1, 8 * j + j2 - 4, 8 * j + j2 - 4));
                }
                for j in 12 * s..13 * s {
                    v.push(e(j - 5 * s, j, 1, 8 * j + 7, 8 * (j + 1)));
                }
            }
            24 => {
                let j2r = neg_res(2, s);
                let j3 = neg_res(3, s);
                let j4 = neg_res(4, s);
                v.push(e(6 * s + j2r, 7 * s + j2r, 1, 8 * j2r + 6, 8 * j2r + 7));
                v.push(e(6 * s + j3, 7 * s + j3, 1, 8 * j3 + 6, 8 * j3 + 7));
                v.push(e(7 * s + j4, 9 * s + j4, 1, 8 * j4 + 7, 8 * (j4 + 1) + 4));
                v.push(e(7 * s + j3, 9 * s + j3, 1, 8 * j3 + 7, 8 * (j3 + 1) + 4));
            }
            25 => {
                for j in 0..s {
                    v.push(e(j, j, 1, 8 * j, 8 * j));
                }
                for j in s..2 * s {
                    v.push(e(j, j, 1, 8 * j + 1, 8 * j + 4));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j - 2 * s, j, -1, 8 * j + 5, 8 * j + 6));
                }
                for j in 10 * s..11 * s {
                    v.push(e(j - 3 * s, j, -1, 8 * j + 7, 8 * j + 7));
                }
            }
            26 => {
                v.push(e(0, 0, 1, 0, 4));
                v.push(e(0, s, 1, 0, 6));
            }
            27 => {
                for j in 0..5 * s {
                    let j2 = j / s;
                    v.push(e(j, j, 1, 8 * j + j2, 8 * j + 7 + j2));
                }
                for j in 7 * s..8 * s {
                    v.push(e(j, j, -1, 8 * j + 7, 8 * (j + 1) + 4));
                }
            }
            28 => v.push(e(0, 0, -1, 0, 8)),
            29..=36 => {
                let vtx = (gen_type - 29) as i64;
                v.push(e(vtx * s, vtx * s, 1, vtx, vtx + 8));
            }
            _ => return None,
        },
    }
    Some(v)
}

/// Validate a published generator matrix against the computed resolution,
/// and compare with the computed class when validation succeeds.
pub fn gate(
    res: &Resolution,
    cx: &CochainComplex,
    gen_type: usize,
    degree: usize,
    computed_class: Option<&[Scalar]>,
) -> GateReport {
    let outcome = gate_outcome(res, cx, gen_type, degree, computed_class);
    GateReport {
        gen_type,
        degree,
        outcome,
    }
}

fn gate_outcome(
    res: &Resolution,
    cx: &CochainComplex,
    gen_type: usize,
    degree: usize,
    computed_class: Option<&[Scalar]>,
) -> GateOutcome {
    let alg = &res.algebra;
    let f = alg.field;
    let family = alg.family();
    let s = alg.s();
    let Some(specs) = entries(family, gen_type, s) else {
        return GateOutcome::Rejected("no transcription for this type".into());
    };
    let expect = predicted::terms(family, s, degree);
    let computed_order: Vec<(usize, usize)> = res.terms[degree].summands.clone();
    // shape check against the expected column count
    let ncols = expect.len();
    let nrows = alg.vertices();
    for spec in &specs {
        if spec.col < 0 || spec.col >= ncols as i64 {
            return GateOutcome::Rejected(format!(
                "column {} outside the expected {} summands",
                spec.col, ncols
            ));
        }
        if spec.row < 0 || spec.row >= nrows as i64 {
            return GateOutcome::Rejected(format!("row {} outside Q_0", spec.row));
        }
    }
    // resolve entries: row vertex, column expected summand, path class
    struct Resolved {
        col: usize,
        u_class: usize,
        coeff: i64,
    }
    let n = alg.quiver.n();
    let mut resolved = Vec::with_capacity(specs.len());
    for spec in &specs {
        let row = spec.row as usize;
        let row_vertex = n * (row % s) + row / s;
        let (ea, eb) = expect[spec.col as usize];
        let from_red = alg.quiver.reduce_cover_vertex(spec.from.rem_euclid((n * s) as i64) as usize);
        if eb != from_red || row_vertex != from_red {
            return GateOutcome::Rejected(format!(
                "entry typing at ({}, {}): path source {} vs row vertex {} vs summand right {}",
                spec.row, spec.col, from_red, row_vertex, eb
            ));
        }
        let from = spec.from.rem_euclid((n * s) as i64) as usize;
        let dist = (spec.to - spec.from) as usize;
        let u = match alg.canonical_path(from, from + dist) {
            Ok(Some(c)) => c,
            Ok(None) => {
                return GateOutcome::Rejected(format!(
                    "path {} -> {} vanishes",
                    spec.from, spec.to
                ))
            }
            Err(AlgebraError::AmbiguousPath { .. }) => {
                return GateOutcome::Rejected(format!(
                    "path {} -> {} ambiguous",
                    spec.from, spec.to
                ))
            }
            Err(_) => return GateOutcome::Rejected("path resolution failed".into()),
        };
        if alg.target(u) != ea {
            return GateOutcome::Rejected(format!(
                "entry at ({}, {}): path target {} vs summand left {}",
                spec.row,
                spec.col,
                alg.target(u),
                ea
            ));
        }
        resolved.push(Resolved {
            col: spec.col as usize,
            u_class: u,
            coeff: spec.coeff,
        });
    }
    // match expected summands to computed summands; try the permutations
    // of duplicated pairs until a matching produces a cocycle
    let matchings = summand_matchings(&expect, &computed_order, 5000);
    let Some(matchings) = matchings else {
        return GateOutcome::Rejected("too many summand matchings to try".into());
    };
    for matching in &matchings {
        let mut cochain = vec![f.zero(); cx.coords[degree].len()];
        let mut ok = true;
        for rsv in &resolved {
            let l = matching[rsv.col];
            let Some(pos) = cx.coords[degree]
                .iter()
                .position(|&(k, x)| k == l && x == rsv.u_class)
            else {
                ok = false;
                break;
            };
            cochain[pos] = f.add(&cochain[pos], &f.from_i64(rsv.coeff));
        }
        if !ok {
            continue;
        }
        if cx.is_cocycle(degree, &cochain) {
            let reduced = cx.reduce_class(degree, &cochain);
            if reduced.iter().all(|x| f.is_zero(x)) {
                return GateOutcome::CocycleExact;
            }
            // compare with the computed class
            if let Some(target) = computed_class {
                return match cx.collinear_factor(degree, &cochain, target) {
                    Some(mu) if !f.is_zero(&mu) => GateOutcome::ConfirmsComputed,
                    _ => GateOutcome::CocycleOtherClass,
                };
            }
            return GateOutcome::ConfirmsComputed;
        }
    }
    GateOutcome::Rejected("no summand matching yields a cocycle under the engine differentials".into())
}

/// All ways to assign expected summand indices to computed ones matching
/// the (left, right) pairs; None when the count exceeds the cap.
fn summand_matchings(
    expect: &[(usize, usize)],
    computed: &[(usize, usize)],
    cap: usize,
) -> Option<Vec<Vec<usize>>> {
    use std::collections::HashMap;
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &p) in computed.iter().enumerate() {
        by_pair.entry(p).or_default().push(i);
    }
    let mut slot_choices: Vec<Vec<usize>> = Vec::with_capacity(expect.len());
    for &p in expect {
        match by_pair.get(&p) {
            Some(v) => slot_choices.push(v.clone()),
            None => return Some(Vec::new()),
        }
    }
    // backtracking over choices without reusing a computed index
    let mut out = Vec::new();
    let mut current = vec![usize::MAX; expect.len()];
    let mut used = vec![false; computed.len()];
    fn rec(
        i: usize,
        slot_choices: &[Vec<usize>],
        used: &mut [bool],
        current: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if out.len() >= cap {
            return false;
        }
        if i == slot_choices.len() {
            out.push(current.to_vec());
            return true;
        }
        for &c in &slot_choices[i] {
            if !used[c] {
                used[c] = true;
                current[i] = c;
                if !rec(i + 1, slot_choices, used, current, out, cap) {
                    return false;
                }
                used[c] = false;
            }
        }
        true
    }
    if !rec(0, &slot_choices, &mut used, &mut current, &mut out, cap) {
        return None;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::field::Field;
    use std::sync::Arc;

    #[test]
    fn unit_matrix_confirms_computed_unit() {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(2).unwrap()).unwrap());
        let res = Resolution::build(alg, 3);
        let cx = CochainComplex::build(&res, 2);
        let unit = cx.unit_cocycle(&res);
        let report = gate(&res, &cx, 1, 0, Some(&unit));
        assert_eq!(report.outcome, GateOutcome::ConfirmsComputed, "{report:?}");
    }

    #[test]
    fn degree_one_matrix_validates() {
        // the degree-1 type: two arrow entries; Q_1 is basis-canonical so
        // the transcription should validate and match the computed class
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(2).unwrap()).unwrap());
        let res = Resolution::build(alg, 3);
        let cx = CochainComplex::build(&res, 2);
        let class = cx.cocycle_basis(1)[0].clone();
        let report = gate(&res, &cx, 3, 1, Some(&class));
        assert!(
            matches!(
                report.outcome,
                GateOutcome::ConfirmsComputed | GateOutcome::CocycleOtherClass
            ),
            "{report:?}"
        );
    }

    #[test]
    fn thirteen_column_matrix_is_rejected_by_shape() {
        // the published type-11 matrix for E7 claims more columns than the
        // degree-9 term has summands; the gate must reject, not panic
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(2).unwrap()).unwrap());
        let res = Resolution::build(alg, 10);
        let cx = CochainComplex::build(&res, 10);
        let report = gate(&res, &cx, 11, 9, None);
        assert!(matches!(report.outcome, GateOutcome::Rejected(_)), "{report:?}");
    }
}
