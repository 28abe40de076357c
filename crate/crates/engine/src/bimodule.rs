//! Projective bimodules, ordered direct sums and maps between them.
//!
//! `P_{i,j}` is the projective bimodule on the generator `e_i (x) e_j`;
//! its elements are spanned by pairs `(p, q)` with `p` a path starting at
//! `i` and `q` a path ending at `j`. Everything is graded by the pair
//! (target of `p`, source of `q`), and every map in the engine preserves
//! that grading, so all linear algebra runs blockwise.
//!
//! A map between direct sums is stored as a grid of tensor entries: the
//! entry at (target summand `k`, source summand `l`) is a combination of
//! pairs `(u, v)` where `u` is a path from the left vertex of `k` to the
//! left vertex of `l` and `v` a path from the right vertex of `l` to the
//! right vertex of `k`. Rows index target summands, columns source
//! summands.

use crate::algebra::Algebra;
use crate::field::Scalar;
use crate::matrix::Matrix;
use std::collections::HashMap;

/// Ordered direct sum of projective bimodules, as (left, right) vertex pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjSum {
    pub summands: Vec<(usize, usize)>,
}

impl ProjSum {
    pub fn diagonal(vertices: usize) -> ProjSum {
        ProjSum {
            summands: (0..vertices).map(|v| (v, v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Multiset of summands (sorted), for order-insensitive comparison.
    pub fn multiset(&self) -> Vec<(usize, usize)> {
        let mut v = self.summands.clone();
        v.sort();
        v
    }

    /// Replace every summand (i, j) by (phi(i), j).
    pub fn twist_left(&self, vertex_map: &[usize]) -> ProjSum {
        ProjSum {
            summands: self
                .summands
                .iter()
                .map(|&(i, j)| (vertex_map[i], j))
                .collect(),
        }
    }

    pub fn total_dim(&self, algebra: &Algebra) -> usize {
        let verts = algebra.vertices();
        self.summands
            .iter()
            .map(|&(i, j)| {
                let left: usize = (0..verts).map(|a| algebra.paths_from_to(i, a).len()).sum();
                let right: usize = (0..verts).map(|b| algebra.paths_from_to(b, j).len()).sum();
                left * right
            })
            .sum()
    }
}

/// Basis triples (summand, left path class, right path class) of one
/// grading block of a `ProjSum`.
#[derive(Clone, Default)]
pub struct BlockBasis {
    pub triples: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl BlockBasis {
    pub fn dim(&self) -> usize {
        self.triples.len()
    }

    pub fn position(&self, triple: (usize, usize, usize)) -> Option<usize> {
        self.index.get(&triple).copied()
    }
}

/// All grading blocks of a `ProjSum`.
pub struct SumBasis {
    pub blocks: Vec<Vec<BlockBasis>>,
    pub dim: usize,
}

impl SumBasis {
    pub fn new(algebra: &Algebra, sum: &ProjSum) -> SumBasis {
        let verts = algebra.vertices();
        let mut blocks: Vec<Vec<BlockBasis>> = vec![vec![BlockBasis::default(); verts]; verts];
        let mut dim = 0;
        for (k, &(i, j)) in sum.summands.iter().enumerate() {
            for a in 0..verts {
                for &p in algebra.paths_from_to(i, a) {
                    for b in 0..verts {
                        for &q in algebra.paths_from_to(b, j) {
                            let blk = &mut blocks[a][b];
                            blk.index.insert((k, p, q), blk.triples.len());
                            blk.triples.push((k, p, q));
                            dim += 1;
                        }
                    }
                }
            }
        }
        SumBasis { blocks, dim }
    }

    pub fn block(&self, a: usize, b: usize) -> &BlockBasis {
        &self.blocks[a][b]
    }
}

/// A block-homogeneous element of a `ProjSum`: dense coordinates over the
/// `BlockBasis` of its grading block.
#[derive(Clone, Debug)]
pub struct BlockElement {
    pub block: (usize, usize),
    pub coords: Vec<Scalar>,
}

pub type TensorEntry = Vec<(usize, usize, Scalar)>;

/// Map of direct sums of projective bimodules as a grid of tensor entries.
#[derive(Clone)]
pub struct BimoduleMap {
    pub source: ProjSum,
    pub target: ProjSum,
    /// entries[k][l]: target summand k, source summand l
    pub entries: Vec<Vec<TensorEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimoduleError {
    ShapeMismatch,
    BlockMismatch,
}

impl std::fmt::Display for BimoduleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BimoduleError::ShapeMismatch => write!(f, "map shapes are not composable"),
            BimoduleError::BlockMismatch => write!(f, "element lies outside the map's source"),
        }
    }
}

impl std::error::Error for BimoduleError {}

impl BimoduleMap {
    pub fn zero(source: ProjSum, target: ProjSum) -> BimoduleMap {
        let entries = vec![vec![Vec::new(); source.len()]; target.len()];
        BimoduleMap {
            source,
            target,
            entries,
        }
    }

    pub fn identity(algebra: &Algebra, sum: &ProjSum) -> BimoduleMap {
        let mut m = BimoduleMap::zero(sum.clone(), sum.clone());
        for (k, &(i, j)) in sum.summands.iter().enumerate() {
            m.entries[k][k].push((
                algebra.idempotent(i),
                algebra.idempotent(j),
                algebra.field.one(),
            ));
        }
        m
    }

    /// Image of a block-homogeneous element (coordinates over `src_basis`).
    pub fn apply(
        &self,
        algebra: &Algebra,
        src_basis: &SumBasis,
        tgt_basis: &SumBasis,
        x: &BlockElement,
    ) -> Result<BlockElement, BimoduleError> {
        let f = &algebra.field;
        let (a, b) = x.block;
        let src_blk = src_basis.block(a, b);
        if x.coords.len() != src_blk.dim() {
            return Err(BimoduleError::BlockMismatch);
        }
        let tgt_blk = tgt_basis.block(a, b);
        let mut out = vec![f.zero(); tgt_blk.dim()];
        for (ci, c) in x.coords.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (l, p, q) = src_blk.triples[ci];
            for (k, entry) in self.entries.iter().map(|row| &row[l]).enumerate() {
                for (u, v, cu) in entry {
                    let Some(pu) = algebra.mult_basis(p, *u) else {
                        continue;
                    };
                    let Some(vq) = algebra.mult_basis(*v, q) else {
                        continue;
                    };
                    let pos = tgt_blk
                        .position((k, pu, vq))
                        .expect("image triple is in the target block basis");
                    out[pos] = f.add(&out[pos], &f.mul(c, cu));
                }
            }
        }
        Ok(BlockElement {
            block: (a, b),
            coords: out,
        })
    }

    /// Composite `self` after `first` (so `self . first`).
    pub fn compose(
        &self,
        algebra: &Algebra,
        first: &BimoduleMap,
    ) -> Result<BimoduleMap, BimoduleError> {
        if first.target != self.source {
            return Err(BimoduleError::ShapeMismatch);
        }
        let f = &algebra.field;
        let mut out = BimoduleMap::zero(first.source.clone(), self.target.clone());
        for k in 0..self.target.len() {
            for l in 0..first.source.len() {
                let mut acc: HashMap<(usize, usize), Scalar> = HashMap::new();
                for m in 0..self.source.len() {
                    for (u2, v2, c2) in &self.entries[k][m] {
                        for (u1, v1, c1) in &first.entries[m][l] {
                            let Some(u) = algebra.mult_basis(*u1, *u2) else {
                                continue;
                            };
                            let Some(v) = algebra.mult_basis(*v2, *v1) else {
                                continue;
                            };
                            let c = f.mul(c1, c2);
                            let slot = acc.entry((u, v)).or_insert_with(|| f.zero());
                            *slot = f.add(slot, &c);
                        }
                    }
                }
                let mut entry: TensorEntry = acc
                    .into_iter()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|((u, v), c)| (u, v, c))
                    .collect();
                entry.sort_by_key(|&(u, v, _)| (u, v));
                out.entries[k][l] = entry;
            }
        }
        Ok(out)
    }

    /// Apply an automorphism to all left tensor components, renaming left
    /// summand vertices accordingly.
    pub fn twist_left(
        &self,
        algebra: &Algebra,
        phi: &crate::automorphism::Automorphism,
    ) -> BimoduleMap {
        let f = &algebra.field;
        let source = self.source.twist_left(&phi.vertex_map);
        let target = self.target.twist_left(&phi.vertex_map);
        let entries = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| {
                        entry
                            .iter()
                            .map(|(u, v, c)| {
                                let (u2, sign) = phi.apply_class(*u);
                                (u2, *v, f.mul(c, &sign))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        BimoduleMap {
            source,
            target,
            entries,
        }
    }

    /// Dense matrix of the map on one grading block (rows: target basis).
    pub fn flatten_block(
        &self,
        algebra: &Algebra,
        src_basis: &SumBasis,
        tgt_basis: &SumBasis,
        a: usize,
        b: usize,
    ) -> Matrix {
        let f = algebra.field;
        let src_blk = src_basis.block(a, b);
        let tgt_blk = tgt_basis.block(a, b);
        let mut m = Matrix::zero(f, tgt_blk.dim(), src_blk.dim());
        for (col, &(l, p, q)) in src_blk.triples.iter().enumerate() {
            for (k, entry) in self.entries.iter().map(|row| &row[l]).enumerate() {
                for (u, v, cu) in entry {
                    let Some(pu) = algebra.mult_basis(p, *u) else {
                        continue;
                    };
                    let Some(vq) = algebra.mult_basis(*v, q) else {
                        continue;
                    };
                    let row = tgt_blk
                        .position((k, pu, vq))
                        .expect("image triple indexed in target block");
                    m.add_to(row, col, cu);
                }
            }
        }
        m
    }
}

/// The augmentation `Q_0 -> R`, `p (x) q -> p q`. Flattened blockwise with
/// rows indexed by `paths_from_to(b, a)`.
pub struct Augmentation;

impl Augmentation {
    /// Matrix of the multiplication map on the (a, b) block.
    pub fn flatten_block(algebra: &Algebra, q0_basis: &SumBasis, a: usize, b: usize) -> Matrix {
        let f = algebra.field;
        let rows = algebra.paths_from_to(b, a);
        let src_blk = q0_basis.block(a, b);
        let mut m = Matrix::zero(f, rows.len(), src_blk.dim());
        for (col, &(_k, p, q)) in src_blk.triples.iter().enumerate() {
            if let Some(pq) = algebra.mult_basis(p, q) {
                let row = rows
                    .iter()
                    .position(|&c| c == pq)
                    .expect("product path lies in the block row space");
                m.add_to(row, col, &f.one());
            }
        }
        m
    }
}
