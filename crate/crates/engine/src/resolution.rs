//! Minimal projective bimodule resolution by iterated projective covers.
//!
//! `Q_0` is the diagonal sum covering the algebra through the
//! multiplication map. At each step the kernel of the previous
//! differential is computed blockwise, a minimal generating set is lifted
//! from the kernel modulo its radical (one generator per cover summand,
//! each inside a single grading block), and the next differential reads
//! off the generators. Pivoting is deterministic everywhere, so the whole
//! resolution is reproducible bit for bit.
//!
//! `predicted` holds the closed-form description of the terms: explicit
//! vertex formulas for the first period and the left-twist rule beyond it.

use crate::algebra::Algebra;
use crate::automorphism::Automorphism;
use crate::bimodule::{Augmentation, BimoduleMap, BlockElement, ProjSum, SumBasis};
use crate::exec;
use crate::field::Scalar;
use crate::matrix::{Echelon, Matrix, SolveOutcome};
use crate::quiver::Family;
use std::sync::{Arc, OnceLock};

pub struct Resolution {
    pub algebra: Arc<Algebra>,
    /// Q_0 .. Q_max
    pub terms: Vec<ProjSum>,
    pub bases: Vec<SumBasis>,
    /// diffs[m] = d_m : Q_{m+1} -> Q_m
    pub diffs: Vec<BimoduleMap>,
    /// flat[m][a][b]: matrix of d_m on the (a, b) block
    pub flat: Vec<Vec<Vec<Matrix>>>,
    /// augmentation blocks (rows indexed by paths b -> a)
    pub eps_flat: Vec<Vec<Matrix>>,
    /// lazily built solvers for the flattened blocks
    solvers: Vec<Vec<Vec<OnceLock<Echelon>>>>,
    eps_solvers: Vec<Vec<OnceLock<Echelon>>>,
}

#[derive(Debug)]
pub struct ResolutionError(pub String);

impl std::fmt::Display for ResolutionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "resolution fault: {}", self.0)
    }
}

impl std::error::Error for ResolutionError {}

impl Resolution {
    /// Build the resolution through `Q_max_degree`.
    pub fn build(algebra: Arc<Algebra>, max_degree: usize) -> Resolution {
        let verts = algebra.vertices();
        let q0 = ProjSum::diagonal(verts);
        let b0 = SumBasis::new(&algebra, &q0);
        let eps_flat: Vec<Vec<Matrix>> = (0..verts)
            .map(|a| {
                (0..verts)
                    .map(|b| Augmentation::flatten_block(&algebra, &b0, a, b))
                    .collect()
            })
            .collect();

        let mut res = Resolution {
            algebra: algebra.clone(),
            terms: vec![q0],
            bases: vec![b0],
            diffs: Vec::new(),
            flat: Vec::new(),
            eps_flat,
            solvers: Vec::new(),
            eps_solvers: (0..verts)
                .map(|_| (0..verts).map(|_| OnceLock::new()).collect())
                .collect(),
        };

        // kernel of the augmentation, blockwise
        let mut kernel: Vec<Vec<Vec<Vec<Scalar>>>> = (0..verts)
            .map(|a| {
                (0..verts)
                    .map(|b| res.eps_flat[a][b].kernel_basis())
                    .collect()
            })
            .collect();

        for _m in 0..max_degree {
            let gens = res.minimal_generators(&kernel);
            let (next_term, diff) = res.cover_from_generators(&gens);
            let next_basis = SumBasis::new(&res.algebra, &next_term);
            let last_basis = res.bases.last().unwrap();
            let pairs: Vec<(usize, usize)> = (0..verts)
                .flat_map(|a| (0..verts).map(move |b| (a, b)))
                .collect();
            let alg = &res.algebra;
            let flat_blocks: Vec<Matrix> = exec::map_collect(pairs.clone(), |(a, b)| {
                diff.flatten_block(alg, &next_basis, last_basis, a, b)
            });
            let mut flat: Vec<Vec<Matrix>> = Vec::with_capacity(verts);
            let mut it = flat_blocks.into_iter();
            for _ in 0..verts {
                flat.push((0..verts).map(|_| it.next().unwrap()).collect());
            }
            // next kernel, blockwise (parallel over blocks)
            let kern_blocks: Vec<Vec<Vec<Scalar>>> =
                exec::map_collect(pairs, |(a, b)| flat[a][b].kernel_basis());
            let mut next_kernel: Vec<Vec<Vec<Vec<Scalar>>>> = Vec::with_capacity(verts);
            let mut it = kern_blocks.into_iter();
            for _ in 0..verts {
                next_kernel.push((0..verts).map(|_| it.next().unwrap()).collect());
            }
            res.solvers.push(
                (0..verts)
                    .map(|_| (0..verts).map(|_| OnceLock::new()).collect())
                    .collect(),
            );
            res.terms.push(next_term);
            res.bases.push(next_basis);
            res.diffs.push(diff);
            res.flat.push(flat);
            kernel = next_kernel;
        }
        res
    }

    pub fn max_degree(&self) -> usize {
        self.terms.len() - 1
    }

    /// Minimal generators of the kernel: per block, a complement of
    /// rad = J.K + K.J inside K, lifted to the original kernel vectors.
    fn minimal_generators(
        &self,
        kernel: &[Vec<Vec<Vec<Scalar>>>],
    ) -> Vec<((usize, usize), Vec<Scalar>)> {
        let alg = &self.algebra;
        let f = &alg.field;
        let verts = alg.vertices();
        let basis = self.bases.last().unwrap();
        let mut gens = Vec::new();
        for a in 0..verts {
            for b in 0..verts {
                if kernel[a][b].is_empty() {
                    continue;
                }
                let dim = basis.block(a, b).dim();
                let mut span = RowSpan::new(*f, dim);
                // radical part: arrow actions into this block
                for arrow in alg.quiver.arrows.iter() {
                    // left action by an arrow a' -> a
                    if arrow.target == a {
                        let g = alg
                            .class_of_word(arrow.source, &[arrow.id])
                            .expect("arrow class");
                        for x in &kernel[arrow.source][b] {
                            let img = self.left_arrow_action(basis, arrow.source, b, g, x);
                            span.insert(img);
                        }
                    }
                    // right action by an arrow b -> b'
                    if arrow.source == b {
                        let g = alg
                            .class_of_word(arrow.source, &[arrow.id])
                            .expect("arrow class");
                        for x in &kernel[a][arrow.target] {
                            let img = self.right_arrow_action(basis, a, arrow.target, g, x);
                            span.insert(img);
                        }
                    }
                }
                for x in &kernel[a][b] {
                    if span.insert(x.clone()) {
                        gens.push(((a, b), x.clone()));
                    }
                }
            }
        }
        gens
    }

    /// Image of a kernel vector x (in block (a', b)) under left action by
    /// the arrow class g: a' -> a, landing in block (a, b).
    fn left_arrow_action(
        &self,
        basis: &SumBasis,
        a_src: usize,
        b: usize,
        g: usize,
        x: &[Scalar],
    ) -> Vec<Scalar> {
        let alg = &self.algebra;
        let f = &alg.field;
        let a_dst = alg.target(g);
        let src_blk = basis.block(a_src, b);
        let dst_blk = basis.block(a_dst, b);
        let mut out = vec![f.zero(); dst_blk.dim()];
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (k, p, q) = src_blk.triples[i];
            if let Some(gp) = alg.mult_basis(g, p) {
                let pos = dst_blk.position((k, gp, q)).expect("arrow image indexed");
                out[pos] = f.add(&out[pos], c);
            }
        }
        out
    }

    /// Image of a kernel vector x (in block (a, b')) under right action by
    /// the arrow class g: b -> b', landing in block (a, b).
    fn right_arrow_action(
        &self,
        basis: &SumBasis,
        a: usize,
        b_src: usize,
        g: usize,
        x: &[Scalar],
    ) -> Vec<Scalar> {
        let alg = &self.algebra;
        let f = &alg.field;
        let b_dst = alg.source(g);
        let src_blk = basis.block(a, b_src);
        let dst_blk = basis.block(a, b_dst);
        let mut out = vec![f.zero(); dst_blk.dim()];
        for (i, c) in x.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (k, p, q) = src_blk.triples[i];
            if let Some(qg) = alg.mult_basis(q, g) {
                let pos = dst_blk.position((k, p, qg)).expect("arrow image indexed");
                out[pos] = f.add(&out[pos], c);
            }
        }
        out
    }

    /// Next term and differential from the chosen kernel generators.
    fn cover_from_generators(
        &self,
        gens: &[((usize, usize), Vec<Scalar>)],
    ) -> (ProjSum, BimoduleMap) {
        let alg = &self.algebra;
        let f = &alg.field;
        let basis = self.bases.last().unwrap();
        let target = self.terms.last().unwrap().clone();
        let source = ProjSum {
            summands: gens.iter().map(|(blk, _)| *blk).collect(),
        };
        let mut diff = BimoduleMap::zero(source.clone(), target.clone());
        for (l, ((a, b), vec)) in gens.iter().enumerate() {
            let blk = basis.block(*a, *b);
            for (i, c) in vec.iter().enumerate() {
                if f.is_zero(c) {
                    continue;
                }
                let (k, p, q) = blk.triples[i];
                // block-homogeneity of the generator is structural; a
                // violation would mean the engine is broken
                assert!(
                    alg.target(p) == *a && alg.source(q) == *b,
                    "kernel generator not block-homogeneous"
                );
                diff.entries[k][l].push((p, q, c.clone()));
            }
        }
        (source, diff)
    }

    /// d_m o d_{m+1} = 0 for every computed pair, and eps o d_0 = 0.
    pub fn verify_dd_zero(&self) -> bool {
        let verts = self.algebra.vertices();
        for a in 0..verts {
            for b in 0..verts {
                if !self.flat.is_empty() {
                    let prod = self.eps_flat[a][b].mul_mat(&self.flat[0][a][b]);
                    if !prod.is_zero() {
                        return false;
                    }
                }
                for m in 0..self.flat.len().saturating_sub(1) {
                    let prod = self.flat[m][a][b].mul_mat(&self.flat[m + 1][a][b]);
                    if !prod.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every differential entry lies in the radical (no pair of idempotent
    /// tensor factors).
    pub fn verify_minimality(&self) -> bool {
        for d in &self.diffs {
            for row in &d.entries {
                for entry in row {
                    for (u, v, _) in entry {
                        if self.algebra.basis_len(*u) == 0 && self.algebra.basis_len(*v) == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// (m, dim ker d_{m-1}, rank d_m) for every computed m: full exactness
    /// (kernel dimensions recovered from ranks).
    pub fn exactness_rows(&self) -> Vec<(usize, usize, usize)> {
        let verts = self.algebra.vertices();
        let block_rank = |mats: &Vec<Vec<Matrix>>| -> usize {
            (0..verts)
                .flat_map(|a| (0..verts).map(move |b| (a, b)))
                .map(|(a, b)| mats[a][b].rank())
                .sum()
        };
        let eps_rank = block_rank(&self.eps_flat);
        let mut rows = Vec::new();
        for m in 0..self.flat.len() {
            let prev_rank = if m == 0 {
                eps_rank
            } else {
                block_rank(&self.flat[m - 1])
            };
            let ker = self.bases[m].dim - prev_rank;
            rows.push((m, ker, block_rank(&self.flat[m])));
        }
        rows
    }

    /// Rebuild a resolution from terms and differentials (used by the
    /// cache loader). Recomputes all derived structures; the caller is
    /// responsible for validating d.d = 0 afterwards.
    pub fn from_parts(
        algebra: Arc<Algebra>,
        terms: Vec<ProjSum>,
        diffs: Vec<BimoduleMap>,
    ) -> Resolution {
        let verts = algebra.vertices();
        assert_eq!(terms.len(), diffs.len() + 1);
        let bases: Vec<SumBasis> = terms.iter().map(|t| SumBasis::new(&algebra, t)).collect();
        let eps_flat: Vec<Vec<Matrix>> = (0..verts)
            .map(|a| {
                (0..verts)
                    .map(|b| Augmentation::flatten_block(&algebra, &bases[0], a, b))
                    .collect()
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..verts)
            .flat_map(|a| (0..verts).map(move |b| (a, b)))
            .collect();
        let mut flat = Vec::with_capacity(diffs.len());
        for (m, d) in diffs.iter().enumerate() {
            let blocks: Vec<Matrix> = exec::map_collect(pairs.clone(), |(a, b)| {
                d.flatten_block(&algebra, &bases[m + 1], &bases[m], a, b)
            });
            let mut grid: Vec<Vec<Matrix>> = Vec::with_capacity(verts);
            let mut it = blocks.into_iter();
            for _ in 0..verts {
                grid.push((0..verts).map(|_| it.next().unwrap()).collect());
            }
            flat.push(grid);
        }
        let solvers = (0..diffs.len())
            .map(|_| {
                (0..verts)
                    .map(|_| (0..verts).map(|_| OnceLock::new()).collect())
                    .collect()
            })
            .collect();
        let eps_solvers = (0..verts)
            .map(|_| (0..verts).map(|_| OnceLock::new()).collect())
            .collect();
        Resolution {
            algebra,
            terms,
            bases,
            diffs,
            flat,
            eps_flat,
            solvers,
            eps_solvers,
        }
    }

    pub fn term_multiset(&self, m: usize) -> Vec<(usize, usize)> {
        self.terms[m].multiset()
    }

    /// Kernel vectors of d_{m-1} per block (kernel of the augmentation at
    /// m = 0). Recomputed on demand.
    pub fn kernel_blocks(&self, m: usize) -> Vec<Vec<Vec<Vec<Scalar>>>> {
        let verts = self.algebra.vertices();
        (0..verts)
            .map(|a| {
                (0..verts)
                    .map(|b| {
                        if m == 0 {
                            self.eps_flat[a][b].kernel_basis()
                        } else {
                            self.flat[m - 1][a][b].kernel_basis()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Cached solver for the block (a, b) of d_m.
    pub fn solver(&self, m: usize, a: usize, b: usize) -> &Echelon {
        self.solvers[m][a][b].get_or_init(|| Echelon::new(&self.flat[m][a][b]))
    }

    pub fn eps_solver(&self, a: usize, b: usize) -> &Echelon {
        self.eps_solvers[a][b].get_or_init(|| Echelon::new(&self.eps_flat[a][b]))
    }

    /// Solve d_m(x) = rhs inside one block; a failure is an engine fault.
    pub fn solve_diff(
        &self,
        m: usize,
        rhs: &BlockElement,
    ) -> Result<BlockElement, ResolutionError> {
        let (a, b) = rhs.block;
        match self.solver(m, a, b).solve(&rhs.coords) {
            SolveOutcome::Solution(x) => Ok(BlockElement {
                block: (a, b),
                coords: x,
            }),
            SolveOutcome::NoSolution => Err(ResolutionError(format!(
                "no preimage under d_{m} in block ({a},{b})"
            ))),
        }
    }
}

/// Incrementally maintained row-reduced span, used for the cover
/// complement computation and echelon class reduction.
pub struct RowSpan {
    field: crate::field::Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: crate::field::Field, width: usize) -> RowSpan {
        RowSpan {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the span in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                let c = v[p].clone();
                for j in 0..self.width {
                    v[j] = f.sub(&v[j], &f.mul(&c, &row[j]));
                }
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        let f = self.field;
        self.reduce(&mut v);
        let Some(p) = (0..self.width).find(|&j| !f.is_zero(&v[j])) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep fully reduced: eliminate p from existing rows
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = row[p].clone();
                for j in 0..self.width {
                    row[j] = f.sub(&row[j], &f.mul(&c, &v[j]));
                }
            }
        }
        // insertion sorted by pivot keeps reduction deterministic
        let at = self.pivots.partition_point(|&x| x < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }
}

/// Closed-form expected resolution terms.
pub mod predicted {
    use super::*;

    fn eq(x: i64, y: i64) -> i64 {
        (x == y) as i64
    }

    fn rg(x: i64, lo: i64, hi: i64) -> i64 {
        (lo <= x && x <= hi) as i64
    }

    /// Reading of the second index of the odd beta-group terms for E8,
    /// where the published formula is ambiguous. `BlockTimesEight` is the
    /// reading consistent with the rest of the structure; the verification
    /// reports which one matches the computed resolution.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    pub enum E8BetaReading {
        BlockTimesEight,
        BlockTimesSeven,
    }

    /// Expected summands of Q_m in canonical order: for each summand
    /// position of the block formula, blocks 0..s.
    pub fn terms(family: Family, s: usize, m: usize) -> Vec<(usize, usize)> {
        terms_with_reading(family, s, m, E8BetaReading::BlockTimesEight)
    }

    pub fn terms_with_reading(
        family: Family,
        s: usize,
        m: usize,
        reading: E8BetaReading,
    ) -> Vec<(usize, usize)> {
        let period = family.base_period();
        let r = m % period;
        let ell = m / period;
        let base = base_terms(family, s, r, reading);
        if ell == 0 {
            return base;
        }
        // left twist: shift left vertices by ell * (block shift)
        let n = family.block_size();
        let shift = (family.twist_block_shift() * ell % s) * n;
        base.into_iter()
            .map(|(i, j)| ((i + shift) % (n * s), j))
            .collect()
    }

    /// One position of the formula: the (left vertex, right vertex) pairs
    /// for all blocks.
    fn base_terms(
        family: Family,
        s: usize,
        r: usize,
        reading: E8BetaReading,
    ) -> Vec<(usize, usize)> {
        let m = (r / 2) as i64;
        let even = r % 2 == 0;
        let n = family.block_size() as i64;
        let modulus = (n as usize) * s;
        let mut positions: Vec<(Box<dyn Fn(i64) -> i64>, i64)> = Vec::new();
        // Each position is (left vertex as function of the block index,
        // right vertex offset within the block).
        match (family, even) {
            (Family::E7, true) => {
                for i in 0..=rg(m, 2, 5) {
                    positions.push((e7_b0(m, i), 0));
                }
                for j in 0..=2 {
                    for i in 0..=(eq(m + j, 4) + eq(m + j, 6)) {
                        positions.push((e7_b1(m, i, j), j + 1));
                    }
                }
                for j in 0..=1 {
                    for i in 0..=rg(m + j, 3, 6) {
                        positions.push((e7_b2(m, i, j), j + 4));
                    }
                }
                for i in 0..=rg(m, 3, 6) {
                    positions.push((e7_b3(m, i), 6));
                }
            }
            (Family::E7, false) => {
                for i in 0..=(1 + rg(m, 2, 4) - eq(m, 7)) {
                    positions.push((e7_b4(m, i), 0));
                }
                for j in 0..=2 {
                    positions.push((e7_b5(m, j), j + 1));
                }
                for j in 0..=1 {
                    for i in 0..=eq(m + j, 4) {
                        positions.push((e7_b6(m, i, j), j + 4));
                    }
                }
                for i in 0..=(1 + rg(m, 3, 5) - eq(m, 0)) {
                    positions.push((e7_b7(m, i), 6));
                }
            }
            (Family::E8, true) => {
                for i in 0..=(rg(m, 2, 11) + rg(m, 4, 9)) {
                    positions.push((e8_b0(m, i), 0));
                }
                for j in 0..=3 {
                    for i in 0..=(eq(m + j, 5) + rg(m + j, 7, 10) + eq(m + j, 12)) {
                        positions.push((e8_b1(m, i, j), j + 1));
                    }
                }
                for j in 0..=1 {
                    for i in 0..=(rg(m + j, 3, 12) + rg(m + j, 5, 10)) {
                        positions.push((e8_b2(m, i, j), j + 5));
                    }
                }
                for i in 0..=(rg(m, 3, 12) + rg(m, 5, 10)) {
                    positions.push((e8_b3(m, i), 7));
                }
            }
            (Family::E8, false) => {
                for i in 0..=(rg(m, 0, 12) + rg(m, 2, 10) + rg(m, 3, 9) + eq(m, 5) + eq(m, 7)) {
                    positions.push((e8_b4(m, i), 0));
                }
                for j in 0..=3 {
                    for i in 0..=eq(m + j, 8) {
                        positions.push((e8_b5(m, i, j), j + 1));
                    }
                }
                for j in 0..=1 {
                    for i in 0..=rg(m + j, 4, 10) {
                        positions.push((e8_b6(m, i, j), j + 5));
                    }
                }
                for i in 0..=(rg(m, 1, 13) + rg(m, 3, 11) + rg(m, 4, 10) + eq(m, 6) + eq(m, 8)) {
                    positions.push((e8_b7(m, i), 7));
                }
            }
        }
        let mut out = Vec::new();
        let seven_reading = reading == E8BetaReading::BlockTimesSeven && family == Family::E8 && !even;
        for (left_fn, right_off) in &positions {
            for blk in 0..s as i64 {
                let left = left_fn(blk).rem_euclid(modulus as i64) as usize;
                // the ambiguous published reading scales the block by 7
                // instead of 8 in the beta group of the odd terms
                let right_base = if seven_reading && (*right_off == 5 || *right_off == 6) {
                    7 * blk
                } else {
                    n * blk
                };
                let right = (right_base + right_off).rem_euclid(modulus as i64) as usize;
                out.push((left, right));
            }
        }
        out
    }

    fn e7_b0(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| 7 * (r + m) - eq(i, 0) * (1 - eq(m, 0) - eq(m, 6) - eq(m, 8)))
    }

    fn e7_b1(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            7 * (r + m) + m + 1 + j
                - 4 * eq(i, 0) * rg(m + j, 4, 5)
                - eq(m + j, 6) * (eq(i, 0) + 3)
                - 3 * eq(m + j, 7)
                - 8 * rg(m + j, 8, 10)
        })
    }

    fn e7_b2(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            7 * (r + m) + m + 4 + j
                - 5 * eq(m + j, 2)
                - rg(m + j, 3, 4) * (2 * eq(i, 0) + 3)
                - eq(m + j, 5) * (3 * eq(i, 1) + 5)
                - eq(m + j, 6) * (3 * eq(i, 0) + 5)
                - 8 * rg(m + j, 7, 9)
        })
    }

    fn e7_b3(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| 7 * (r + m) + 6 + eq(i, 0) * (eq(m, 1) + eq(m, 7)) + eq(i, 1))
    }

    fn e7_b4(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            7 * (r + m) + m + 1
                + 3 * eq(i, 1) * rg(m, 0, 1)
                + eq(m, 2) * (eq(i, 0) - 2 * eq(i, 2))
                + eq(m, 3) * (eq(i, 1) - 2 * eq(i, 0))
                - 2 * eq(m, 4) * (eq(i, 1) + 2 * eq(i, 2))
                - 2 * rg(m, 5, 6) * (1 + eq(i, 0))
                - 2 * eq(m, 7)
        })
    }

    fn e7_b5(m: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| 7 * (r + m) + m + j + 2 + 2 * rg(m + j, 2, 3) - 2 * rg(m + j, 6, 9))
    }

    fn e7_b6(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            7 * (r + m) + m + j + 5
                - 2 * eq(m + j, 3)
                - eq(m + j, 4) * (2 + eq(i, 0))
                - 3 * eq(m + j, 5)
                - 5 * (eq(m + j, 6) + eq(m + j, 7))
                - 2 * eq(m + j, 8)
        })
    }

    fn e7_b7(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            7 * (r + m + 1) + m
                + 3 * rg(m, 1, 2) * eq(i, 1)
                + eq(m, 3) * (eq(i, 0) - 2 * eq(i, 2))
                + eq(m, 4) * (eq(i, 1) - 2 * eq(i, 0))
                - 2 * eq(m, 5) * (eq(i, 1) + 2 * eq(i, 2))
                - 2 * rg(m, 6, 7) * (2 * eq(i, 0) + eq(i, 1))
        })
    }

    fn e8_b0(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m)
                - eq(i, 0) * (rg(m, 1, 10) + eq(m, 13))
                - eq(i, 1) * (eq(m, 4) + eq(m, 11))
                - eq(i, 2) * (eq(m, 6) + eq(m, 8))
        })
    }

    fn e8_b1(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m) + m + j + 1
                - eq(i, 0)
                    * (5 * rg(m + j, 6, 9)
                        + 9 * rg(m + j, 10, 12)
                        + 8 * eq(m + j, 13)
                        + 14 * rg(m + j, 14, 17))
                - eq(i, 1)
                    * (5 * eq(m + j, 5)
                        + 3 * rg(m + j, 7, 8)
                        + 9 * eq(m + j, 9)
                        + 5 * eq(m + j, 10)
                        + 8 * eq(m + j, 12))
        })
    }

    fn e8_b2(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m) + m + j - 1
                + 6 * rg(m + j, 0, 1)
                + eq(i, 0)
                    * (eq(m + j, 5) - 3 * eq(m + j, 6) - 5 * rg(m + j, 8, 9) - 3 * eq(m + j, 10)
                        - 8 * rg(m + j, 11, 15))
                + eq(i, 1)
                    * (3 * rg(m + j, 3, 4) + eq(m + j, 6)
                        - 3 * rg(m + j, 7, 8)
                        - 2 * eq(m + j, 9)
                        - 5 * rg(m + j, 10, 12))
                - eq(i, 2)
                    * (3 * eq(m + j, 5)
                        + 5 * eq(m + j, 7)
                        + 2 * eq(m + j, 8)
                        + 3 * eq(m + j, 9)
                        + 8 * eq(m + j, 10))
        })
    }

    fn e8_b3(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m + 1)
                - eq(i, 0) * (eq(m, 0) + rg(m, 2, 11) + eq(m, 14))
                - eq(i, 1) * (eq(m, 5) + eq(m, 12))
                - eq(i, 2) * (eq(m, 7) + eq(m, 9))
        })
    }

    fn e8_b4(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m)
                + eq(i, 0)
                    * (2 - eq(m, 0) + 3 * eq(m, 2) + 3 * eq(m, 4) + eq(m, 7) + eq(m, 9) + eq(m, 11)
                        + 2 * eq(m, 12)
                        + 5 * eq(m, 13)
                        + 6 * eq(m, 14))
                + eq(i, 1)
                    * (6 - eq(m, 0)
                        - 3 * eq(m, 2)
                        - 2 * eq(m, 3)
                        - 3 * eq(m, 4)
                        - 3 * eq(m, 6)
                        - 2 * eq(m, 8)
                        - 2 * eq(m, 10)
                        - eq(m, 11))
                + eq(i, 2) * (6 - 5 * eq(m, 2) - 2 * eq(m, 5) - 2 * eq(m, 7) - 5 * eq(m, 9))
                + eq(i, 3) * (5 - 4 * rg(m, 4, 5) - 4 * eq(m, 7))
                + 5 * eq(i, 4)
        })
    }

    fn e8_b5(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m) + 7 - 5 * eq(m + j, 0) - 4 * eq(m + j, 1) - 3 * eq(m + j, 2)
                + eq(m + j, 4)
                + eq(m + j, 6)
                + eq(m + j, 9)
                + eq(m + j, 11)
                + eq(m + j, 13)
                + 2 * eq(m + j, 14)
                + 3 * eq(m + j, 15)
                + 4 * eq(m + j, 16)
                + eq(i, 1) * eq(m + j, 8)
        })
    }

    fn e8_b6(m: i64, i: i64, j: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m) + 7 - eq(m + j, 0)
                + eq(m + j, 2)
                + eq(m + j, 8)
                + eq(m + j, 11)
                + eq(m + j, 13)
                + 6 * eq(m + j, 14)
                + eq(i, 1) * (1 - 2 * eq(m + j, 8))
        })
    }

    fn e8_b7(m: i64, i: i64) -> Box<dyn Fn(i64) -> i64> {
        Box::new(move |r| {
            8 * (r + m + 1)
                + eq(i, 0)
                    * (2 - 2 * eq(m, 0) - eq(m, 1)
                        + 3 * eq(m, 3)
                        + 3 * eq(m, 5)
                        + eq(m, 8)
                        + eq(m, 10)
                        + eq(m, 12)
                        + 2 * eq(m, 13)
                        + 5 * eq(m, 14))
                + eq(i, 1)
                    * (6 - eq(m, 1)
                        - 3 * eq(m, 3)
                        - 2 * eq(m, 4)
                        - 3 * eq(m, 5)
                        - 3 * eq(m, 7)
                        - 2 * eq(m, 9)
                        - 2 * eq(m, 11)
                        - eq(m, 12))
                + eq(i, 2) * (6 - 5 * eq(m, 3) - 2 * eq(m, 6) - 2 * eq(m, 8) - 5 * eq(m, 10))
                + eq(i, 3) * (5 - 4 * rg(m, 5, 6) - 4 * eq(m, 8))
                + 5 * eq(i, 4)
        })
    }

    /// The helper indicator used in the published formulas, exposed for
    /// tests: two-argument form is equality, three-argument a range test.
    pub fn indicator_eq(x: i64, y: i64) -> i64 {
        eq(x, y)
    }

    pub fn indicator_range(x: i64, lo: i64, hi: i64) -> i64 {
        rg(x, lo, hi)
    }
}

/// Twist a full term list by the canonical automorphism power (summands
/// only; used for periodicity structure checks).
pub fn twist_summands(algebra: &Algebra, phi: &Automorphism, sum: &ProjSum) -> ProjSum {
    let _ = algebra;
    sum.twist_left(&phi.vertex_map)
}

#[cfg(test)]
mod tests {
    use super::predicted::*;
    use super::*;
    use crate::field::Field;

    #[test]
    fn indicator_examples() {
        assert_eq!(indicator_range(3, 2, 5), 1);
        assert_eq!(indicator_eq(3, 4), 0);
    }

    #[test]
    fn q0_is_diagonal() {
        for family in [Family::E7, Family::E8] {
            for s in [1usize, 2, 3] {
                let t = terms(family, s, 0);
                let n = family.block_size();
                assert_eq!(t.len(), n * s);
                // position-major: position p, block blk -> vertex n*blk + p
                for (idx, &(i, j)) in t.iter().enumerate() {
                    let p = idx / s;
                    let blk = idx % s;
                    assert_eq!(i, n * blk + p);
                    assert_eq!(j, n * blk + p);
                }
            }
        }
    }

    #[test]
    fn q1_matches_arrows() {
        // Q_1 must have one summand P_{target, source} per arrow
        for family in [Family::E7, Family::E8] {
            for s in [1usize, 2] {
                let alg = Algebra::build(family, s, Field::new(2).unwrap()).unwrap();
                let mut expect: Vec<(usize, usize)> = alg
                    .quiver
                    .arrows
                    .iter()
                    .map(|a| (a.target, a.source))
                    .collect();
                expect.sort();
                let mut got = terms(family, s, 1);
                got.sort();
                assert_eq!(got, expect, "{family} s={s}");
            }
        }
    }

    #[test]
    fn builds_first_degrees_e7_s1() {
        let alg = Arc::new(Algebra::build(Family::E7, 1, Field::new(2).unwrap()).unwrap());
        let res = Resolution::build(alg.clone(), 4);
        assert!(res.verify_dd_zero());
        assert!(res.verify_minimality());
        for m in 0..=4 {
            let mut computed = res.term_multiset(m);
            computed.sort();
            let mut expect = terms(Family::E7, 1, m);
            expect.sort();
            assert_eq!(computed, expect, "Q_{m}");
        }
        for (m, ker, rank) in res.exactness_rows() {
            assert_eq!(ker, rank, "exactness at degree {m}");
        }
    }
}
