//! Small shared helpers.

/// FNV-1a 64-bit hash. Used for stable, platform-independent content
/// hashes in cache files and algebra tags.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Solve `A x = b` over the integers (one solution, not the lattice).
///
/// Column-style Hermite reduction with a tracked unimodular transform;
/// entries stay small here (exponent systems of the scalar solver), i128
/// is ample headroom.
pub fn integer_solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let rhs: Vec<i128> = b.iter().map(|&x| x as i128).collect();
    let mut pivot_cols: Vec<Option<usize>> = vec![None; rows];
    let mut used = vec![false; cols];
    for r in 0..rows {
        // euclidean column elimination on row r over the unused columns
        loop {
            let mut nonzero: Vec<usize> = (0..cols)
                .filter(|&c| !used[c] && m[r][c] != 0)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&c| m[r][c].abs());
            let (c0, c1) = (nonzero[0], nonzero[1]);
            let q = m[r][c1] / m[r][c0];
            for rr in 0..rows {
                m[rr][c1] -= q * m[rr][c0];
            }
            for uu in u.iter_mut() {
                uu[c1] -= q * uu[c0];
            }
        }
        let piv = (0..cols).find(|&c| !used[c] && m[r][c] != 0);
        if let Some(c) = piv {
            used[c] = true;
            pivot_cols[r] = Some(c);
        }
        // reduce the rhs for this row using earlier pivots happens in the
        // final substitution pass below
    }
    // forward substitution in row order
    let mut x = vec![0i128; cols];
    for r in 0..rows {
        let val: i128 = rhs[r]
            - (0..cols)
                .map(|c| m[r][c] * x[c])
                .sum::<i128>();
        match pivot_cols[r] {
            Some(c) => {
                if val % m[r][c] != 0 {
                    return None;
                }
                x[c] = val / m[r][c];
            }
            None => {
                if val != 0 {
                    return None;
                }
            }
        }
    }
    // verify (the substitution above is only valid when each pivot is the
    // sole unused nonzero entry of its row; rerun the product to be safe)
    for r in 0..rows {
        let got: i128 = (0..cols).map(|c| m[r][c] * x[c]).sum();
        if got != rhs[r] {
            return None;
        }
    }
    // back through the unimodular transform
    let out: Vec<i128> = (0..cols)
        .map(|i| (0..cols).map(|j| u[i][j] * x[j]).sum())
        .collect();
    Some(out.iter().map(|&v| v as i64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_solution(a: &[Vec<i64>], b: &[i64]) {
        let x = integer_solve(a, b).expect("solvable");
        for (row, want) in a.iter().zip(b) {
            let got: i64 = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert_eq!(got, *want);
        }
    }

    #[test]
    fn integer_solve_examples() {
        check_solution(&[vec![2, 3], vec![1, -1]], &[7, 1]);
        check_solution(&[vec![1, 1, 1]], &[5]);
        // inconsistent over the integers: 2x = 3
        assert!(integer_solve(&[vec![2]], &[3]).is_none());
        // contradictory rows
        assert!(integer_solve(&[vec![1, 1], vec![1, 1]], &[1, 2]).is_none());
        // consistent rectangular system
        check_solution(&[vec![3, 0, 1], vec![0, 2, 1], vec![3, 2, 2]], &[4, 3, 7]);
    }

    #[test]
    fn integer_solve_with_modulus_columns() {
        // 3x = 1 (mod 5) via an auxiliary multiple-of-5 column: x = 2
        let x = integer_solve(&[vec![3, 5]], &[1]).expect("solvable mod 5");
        assert_eq!((3 * x[0]).rem_euclid(5), 1);
    }

    #[test]
    fn fnv_is_stable() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), fnv1a64(b"a"));
        assert_ne!(fnv1a64(b"a"), fnv1a64(b"b"));
    }
}
