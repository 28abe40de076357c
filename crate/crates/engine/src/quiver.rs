//! The two quiver families.
//!
//! Each family has `s` blocks of `n` vertices (n = 7 or 8). Block `r`
//! carries a long `alpha` chain and a short `beta` chain from the block
//! bottom `n*r` to the block top `n*r + n - 1`, and a single `gamma`
//! arrow from the top to the bottom of the next block (mod `n*s`):
//!
//! * E7: alpha 7r -> 7r+1 -> 7r+2 -> 7r+3 -> 7r+6, beta 7r -> 7r+4 -> 7r+5 -> 7r+6
//! * E8: alpha 8r -> ... -> 8r+4 -> 8r+7, beta 8r -> 8r+5 -> 8r+6 -> 8r+7
//!
//! Arrow ids are assigned alpha-first, so lexicographic comparisons on
//! words prefer alpha spellings.
//!
//! The orientation is pinned by the one-sided resolution shapes encoded
//! in `simples`: the cover of the radical of the projective at a block
//! bottom is P at the two chain successors (so both chains leave the
//! bottom), and the gamma arrow leaves the block top (its simple's first
//! syzygy is covered by the next block bottom). Any other orientation
//! breaks those shapes, which the syzygy tests verify for every vertex.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    E7,
    E8,
}

impl Family {
    /// Vertices per block.
    pub fn block_size(&self) -> usize {
        match self {
            Family::E7 => 7,
            Family::E8 => 8,
        }
    }

    /// Paths of this length (and longer) vanish in the quotient algebra.
    pub fn path_len_bound(&self) -> usize {
        match self {
            Family::E7 => 6,
            Family::E8 => 7,
        }
    }

    /// Number of arrows in the alpha chain of one block.
    pub fn alpha_len(&self) -> usize {
        match self {
            Family::E7 => 4,
            Family::E8 => 5,
        }
    }

    /// Number of arrows in the beta chain of one block (both families).
    pub fn beta_len(&self) -> usize {
        3
    }

    /// Period of the bimodule resolution before twisting.
    pub fn base_period(&self) -> usize {
        match self {
            Family::E7 => 17,
            Family::E8 => 29,
        }
    }

    /// Block shift of the distinguished automorphism (9 for E7, 15 for E8).
    pub fn twist_block_shift(&self) -> usize {
        match self {
            Family::E7 => 9,
            Family::E8 => 15,
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "e7" => Some(Family::E7),
            "e8" => Some(Family::E8),
            _ => None,
        }
    }

    /// Vertex position within its block along the alpha chain, as an offset
    /// from the block bottom. Positions `1..alpha_len()` are alpha-interior,
    /// `alpha_len()..n-1` beta-interior, `n-1` the block top.
    pub fn alpha_chain_positions(&self) -> Vec<usize> {
        match self {
            Family::E7 => vec![0, 1, 2, 3, 6],
            Family::E8 => vec![0, 1, 2, 3, 4, 7],
        }
    }

    pub fn beta_chain_positions(&self) -> Vec<usize> {
        match self {
            Family::E7 => vec![0, 4, 5, 6],
            Family::E8 => vec![0, 5, 6, 7],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::E7 => write!(f, "e7"),
            Family::E8 => write!(f, "e8"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ArrowKind {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub kind: ArrowKind,
    /// Block the arrow belongs to (for gamma: the block it leaves).
    pub block: usize,
    /// Position along its chain (0-based; gamma always 0).
    pub pos: usize,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub family: Family,
    pub s: usize,
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    out_arrows: Vec<Vec<usize>>,
}

/// Smallest nonnegative residue of `a` modulo `t`.
pub fn residue(a: i64, t: usize) -> usize {
    a.rem_euclid(t as i64) as usize
}

impl QuiverSpec {
    pub fn new(family: Family, s: usize) -> QuiverSpec {
        assert!(s >= 1, "s must be positive");
        let n = family.block_size();
        let vertices = n * s;
        let mut arrows = Vec::new();
        let alpha_pos = family.alpha_chain_positions();
        let beta_pos = family.beta_chain_positions();
        // alpha arrows for all blocks, then beta, then gamma
        for blk in 0..s {
            for pos in 0..alpha_pos.len() - 1 {
                arrows.push(Arrow {
                    id: arrows.len(),
                    kind: ArrowKind::Alpha,
                    block: blk,
                    pos,
                    source: n * blk + alpha_pos[pos],
                    target: n * blk + alpha_pos[pos + 1],
                });
            }
        }
        for blk in 0..s {
            for pos in 0..beta_pos.len() - 1 {
                arrows.push(Arrow {
                    id: arrows.len(),
                    kind: ArrowKind::Beta,
                    block: blk,
                    pos,
                    source: n * blk + beta_pos[pos],
                    target: n * blk + beta_pos[pos + 1],
                });
            }
        }
        for blk in 0..s {
            arrows.push(Arrow {
                id: arrows.len(),
                kind: ArrowKind::Gamma,
                block: blk,
                pos: 0,
                source: n * blk + n - 1,
                target: n * ((blk + 1) % s),
            });
        }
        let mut out_arrows = vec![Vec::new(); vertices];
        for a in &arrows {
            out_arrows[a.source].push(a.id);
        }
        // alpha before beta before gamma out of every vertex
        for v in &mut out_arrows {
            v.sort();
        }
        QuiverSpec {
            family,
            s,
            vertices,
            arrows,
            out_arrows,
        }
    }

    pub fn n(&self) -> usize {
        self.family.block_size()
    }

    pub fn out_arrows(&self, v: usize) -> &[usize] {
        &self.out_arrows[v]
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    /// Arrow id by (kind, block, chain position).
    pub fn arrow_id(&self, kind: ArrowKind, block: usize, pos: usize) -> usize {
        let s = self.s;
        let alpha_n = self.family.alpha_len();
        let beta_n = self.family.beta_len();
        match kind {
            ArrowKind::Alpha => block * alpha_n + pos,
            ArrowKind::Beta => s * alpha_n + block * beta_n + pos,
            ArrowKind::Gamma => s * alpha_n + s * beta_n + block,
        }
    }

    /// Reduce a covering-quiver vertex (any nonnegative integer, blocks
    /// continuing past `s`) to the actual vertex.
    pub fn reduce_cover_vertex(&self, v: usize) -> usize {
        let n = self.n();
        let blk = v / n;
        let pos = v % n;
        n * (blk % self.s) + pos
    }

    /// Arrows out of a covering vertex, as (arrow id, next cover vertex).
    ///
    /// Cover arrows strictly increase the cover index, so path search over
    /// the cover terminates.
    pub fn cover_out(&self, v: usize) -> Vec<(usize, usize)> {
        let n = self.n();
        let blk = v / n;
        let pos = v % n;
        let alpha_pos = self.family.alpha_chain_positions();
        let beta_pos = self.family.beta_chain_positions();
        let real_blk = blk % self.s;
        let mut out = Vec::new();
        if let Some(i) = alpha_pos.iter().position(|&p| p == pos) {
            if i + 1 < alpha_pos.len() {
                out.push((
                    self.arrow_id(ArrowKind::Alpha, real_blk, i),
                    n * blk + alpha_pos[i + 1],
                ));
            }
        }
        if let Some(i) = beta_pos.iter().position(|&p| p == pos) {
            if i + 1 < beta_pos.len() {
                out.push((
                    self.arrow_id(ArrowKind::Beta, real_blk, i),
                    n * blk + beta_pos[i + 1],
                ));
            }
        }
        if pos == n - 1 {
            out.push((self.arrow_id(ArrowKind::Gamma, real_blk, 0), n * (blk + 1)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e7_block_structure() {
        let q = QuiverSpec::new(Family::E7, 2);
        assert_eq!(q.vertices, 14);
        assert_eq!(q.arrows.len(), 16); // 8 per block
        // gamma of the last block wraps around
        let g = q.arrow(q.arrow_id(ArrowKind::Gamma, 1, 0));
        assert_eq!((g.source, g.target), (13, 0));
        // alpha skips to the block top
        let a3 = q.arrow(q.arrow_id(ArrowKind::Alpha, 0, 3));
        assert_eq!((a3.source, a3.target), (3, 6));
    }

    #[test]
    fn e8_block_structure() {
        let q = QuiverSpec::new(Family::E8, 1);
        assert_eq!(q.vertices, 8);
        assert_eq!(q.arrows.len(), 9);
        let a4 = q.arrow(q.arrow_id(ArrowKind::Alpha, 0, 4));
        assert_eq!((a4.source, a4.target), (4, 7));
        let b0 = q.arrow(q.arrow_id(ArrowKind::Beta, 0, 0));
        assert_eq!((b0.source, b0.target), (0, 5));
    }

    #[test]
    fn cover_walk_increases() {
        let q = QuiverSpec::new(Family::E7, 1);
        for v in 0..20 {
            for (_, w) in q.cover_out(v) {
                assert!(w > v);
            }
        }
    }
}
