//! Dense exact matrices with deterministic Gaussian elimination.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! reduced form, kernel basis and solution is reproducible bit for bit
//! across runs and platforms.

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Outcome of `Matrix::solve`. `NoSolution` is a value, not a fault.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solution(Vec<Scalar>),
    NoSolution,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            field,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.field.add(self.get(r, c), v);
        self.set(r, c, cur);
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    let x = self.get(r, c);
                    if !self.field.is_zero(x) && !self.field.is_zero(&v[c]) {
                        acc = self.field.add(&acc, &self.field.mul(x, &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !f.is_zero(b) {
                        let v = f.mul(a, b);
                        out.add_to(r, c, &v);
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns (rank, pivot columns).
    pub fn rref_in_place(&mut self) -> (usize, Vec<usize>) {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // first nonzero entry at or below `row`
            let mut pivot = None;
            for r in row..self.rows {
                if !f.is_zero(self.get(r, col)) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, p * self.cols + c);
                }
            }
            let inv = f.inv(self.get(row, col));
            for c in col..self.cols {
                let v = f.mul(self.get(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.get(r, col)) {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = f.sub(self.get(r, c), &f.mul(&factor, self.get(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (row, pivots)
    }

    /// Reduced row echelon form, rank and pivot columns of a copy.
    pub fn rref_rank(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let (rank, pivots) = m.rref_in_place();
        (m, rank, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_rank().1
    }

    /// Basis of the right null space `{v : M v = 0}`.
    ///
    /// The basis is the standard one read off the reduced echelon form: one
    /// vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (rref, _rank, pivots) = self.rref_rank();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (prow, pcol) in pivots.iter().enumerate() {
                // pivot row: x_pcol + sum over free columns = 0
                v[*pcol] = f.neg(rref.get(prow, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = b` exactly; `NoSolution` iff `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> SolveOutcome {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let f = self.field;
        let mut aug = Matrix::zero(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (_rank, pivots) = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return SolveOutcome::NoSolution;
        }
        let mut x = vec![f.zero(); self.cols];
        for (prow, pcol) in pivots.iter().enumerate() {
            x[*pcol] = aug.get(prow, self.cols).clone();
        }
        SolveOutcome::Solution(x)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A row-reduced copy of a matrix kept around for repeated solves against
/// many right-hand sides. Used heavily when lifting cocycles to chain maps.
pub struct Echelon {
    field: Field,
    cols: usize,
    /// reduced nonzero rows of [M | I], split as (row of M, row of I)
    reduced: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &Matrix) -> Echelon {
        let f = m.field();
        let rows = m.rows;
        let cols = m.cols;
        let mut aug = Matrix::zero(f, rows, cols + rows);
        for r in 0..rows {
            for c in 0..cols {
                aug.set(r, c, m.get(r, c).clone());
            }
            aug.set(r, cols + r, f.one());
        }
        // eliminate on the first `cols` columns only
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let mut pivot = None;
            for r in row..rows {
                if !f.is_zero(aug.get(r, col)) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..cols + rows {
                    aug.data.swap(row * aug.cols + c, p * aug.cols + c);
                }
            }
            let inv = f.inv(aug.get(row, col));
            for c in 0..cols + rows {
                let v = f.mul(aug.get(row, c), &inv);
                aug.set(row, c, v);
            }
            for r in 0..rows {
                if r != row && !f.is_zero(aug.get(r, col)) {
                    let factor = aug.get(r, col).clone();
                    for c in 0..cols + rows {
                        let v = f.sub(aug.get(r, c), &f.mul(&factor, aug.get(row, c)));
                        aug.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let mut reduced = Vec::with_capacity(rows);
        for r in 0..rows {
            let mrow: Vec<Scalar> = (0..cols).map(|c| aug.get(r, c).clone()).collect();
            let irow: Vec<Scalar> = (0..rows).map(|c| aug.get(r, cols + c).clone()).collect();
            reduced.push((mrow, irow));
        }
        Echelon {
            field: f,
            cols,
            reduced,
            pivots,
        }
    }

    /// Solve `M x = b` using the precomputed reduction.
    pub fn solve(&self, b: &[Scalar]) -> SolveOutcome {
        let f = self.field;
        let nrows = self.reduced.len();
        assert_eq!(b.len(), nrows);
        // transformed rhs: T b where T is the recorded row operation matrix
        let tb: Vec<Scalar> = (0..nrows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..nrows {
                    let t = &self.reduced[r].1[c];
                    if !f.is_zero(t) && !f.is_zero(&b[c]) {
                        acc = f.add(&acc, &f.mul(t, &b[c]));
                    }
                }
                acc
            })
            .collect();
        // consistency: rows beyond the pivot rows must transform to zero
        for r in self.pivots.len()..nrows {
            if !f.is_zero(&tb[r]) {
                return SolveOutcome::NoSolution;
            }
        }
        let mut x = vec![f.zero(); self.cols];
        for (prow, pcol) in self.pivots.iter().enumerate() {
            x[*pcol] = tb[prow].clone();
        }
        SolveOutcome::Solution(x)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::new(p).unwrap()
    }

    fn mat(f: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_rank_over_gf3() {
        let m = Matrix::identity(gf(3), 2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn zero_matrix_rank() {
        let m = Matrix::zero(gf(7), 3, 5);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 5);
    }

    #[test]
    fn dependent_rows_over_gf5() {
        // [[1,2],[2,4]] over GF(5): second row is twice the first.
        let m = mat(gf(5), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_ones_row_gf2_matches_enumeration() {
        let f = gf(2);
        let m = mat(f, &[&[1, 1, 0]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
        // independent oracle: enumerate all 8 vectors of GF(2)^3
        let mut kernel_count = 0;
        for bits in 0..8u32 {
            let v: Vec<Scalar> = (0..3).map(|i| f.from_i64(((bits >> i) & 1) as i64)).collect();
            if m.mul_vec(&v).iter().all(|x| f.is_zero(x)) {
                kernel_count += 1;
            }
        }
        assert_eq!(kernel_count, 4, "kernel has dimension 2 over GF(2)");
    }

    #[test]
    fn solve_identity_and_unsolvable() {
        let f = gf(5);
        let id = Matrix::identity(f, 3);
        let b = vec![f.from_i64(1), f.from_i64(4), f.from_i64(2)];
        assert_eq!(id.solve(&b), SolveOutcome::Solution(b.clone()));
        let z = Matrix::zero(f, 2, 2);
        let bad = vec![f.from_i64(1), f.zero()];
        assert_eq!(z.solve(&bad), SolveOutcome::NoSolution);
    }

    #[test]
    fn solve_scalar_congruence_gf5() {
        // 2x = 1 mod 5 -> x = 3, checked by multiplying back.
        let f = gf(5);
        let m = mat(f, &[&[2]]);
        match m.solve(&[f.one()]) {
            SolveOutcome::Solution(x) => {
                assert_eq!(x, vec![f.from_i64(3)]);
                assert_eq!(m.mul_vec(&x), vec![f.one()]);
            }
            SolveOutcome::NoSolution => panic!("2x=1 is solvable mod 5"),
        }
    }

    #[test]
    fn echelon_solver_agrees_with_direct_solve() {
        let f = gf(3);
        let m = mat(f, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        let ech = Echelon::new(&m);
        for bits in 0..27 {
            let b = vec![
                f.from_i64(bits % 3),
                f.from_i64((bits / 3) % 3),
                f.from_i64((bits / 9) % 3),
            ];
            let direct = m.solve(&b);
            let cached = ech.solve(&b);
            match (&direct, &cached) {
                (SolveOutcome::NoSolution, SolveOutcome::NoSolution) => {}
                (SolveOutcome::Solution(_), SolveOutcome::Solution(x)) => {
                    assert_eq!(m.mul_vec(x), b);
                }
                _ => panic!("solvers disagree"),
            }
        }
    }
}
